#include <algorithm>
#include <vector>

int count_even(const std::vector<int> &v) {
    return std::count_if(v.begin(), v.end(), [](int x) {
        return x % 2 == 0;
    });
}
