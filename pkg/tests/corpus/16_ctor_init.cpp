#include <string>
#include <utility>

class Widget {
public:
    Widget(std::string name, int size)
        : name_(std::move(name)), size_{size} {
        validate();
    }

private:
    void validate() {}

    std::string name_;
    int size_;
};
