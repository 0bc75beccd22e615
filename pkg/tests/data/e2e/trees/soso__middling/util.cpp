#include <string>

std::string repeat(const std::string &part, int times) {
    std::string out;
    for (int i = 0; i < times; i++) {
        out += part;
    }
    return out;
}
