#include "permprime/limits.hpp"

#include <stdexcept>

namespace permprime {

Limits Limits::preset(std::string_view name) {
    Limits l;
    if (name == "default" || name.empty()) {
        l.name = "default";
        return l;
    }
    if (name == "quick") {
        l.max_permutations = 1000;
        l.max_digits = 64;
        l.search_max_digits = 5;
        l.scan_max_digits = 24;
        l.factor_effort = 20000;
        l.probable_rounds = 41;
        l.name = "quick";
        return l;
    }
    if (name == "deep") {
        l.max_permutations = 2000000;
        l.max_digits = 20000;
        l.search_max_digits = 8;
        l.scan_max_digits = 400;
        l.factor_effort = 5000000;
        l.probable_rounds = 64;
        l.name = "deep";
        return l;
    }
    throw std::invalid_argument("unknown limits preset: " + std::string(name));
}

} // namespace permprime
