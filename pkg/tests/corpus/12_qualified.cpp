#include "counter.h"

namespace util {

int Registry::size() const {
    return entries_;
}

Registry::~Registry() {
    clear();
}

}  // namespace util
