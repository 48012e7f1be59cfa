#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace permprime {

// Work budgets. Anything that would blow past them yields an explicit
// Unknown or a thrown budget error, never a silent skip.
struct Limits {
    uint64_t max_permutations = 100000; // exhaustive testing cap per multiset
    uint32_t max_digits = 4096;         // largest number we will primality-test
    uint32_t search_max_digits = 7;     // enumerate_absolute_primes cap
    uint32_t scan_max_digits = 40;      // scan_near_repunits cap
    uint64_t factor_effort = 500000;    // rho iteration budget
    unsigned probable_rounds = 41;      // Miller-Rabin rounds above the proven range
    unsigned threads = 1;
    std::string name = "default";

    static Limits preset(std::string_view name); // default | quick | deep
};

} // namespace permprime
