#include "hdj/format.hpp"

#include <cstdio>

namespace hdj {

std::string format_sci(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

}  // namespace hdj
