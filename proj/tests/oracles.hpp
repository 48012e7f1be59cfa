// Slow reference implementations the production code is tested against.
// Nothing here shares arithmetic with the library: primality is plain trial
// division and residues are computed through strings.
#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "permprime/digits.hpp"

namespace oracle {

inline bool slow_prime(uint64_t x) {
    if (x < 2) return false;
    for (uint64_t d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

// Absolute primality by definition: every distinct permutation, read as a
// value (leading zeros shorten it), must be prime.
inline bool absolute_prime(const permprime::DigitMultiset& ms) {
    bool all = permprime::for_each_permutation(ms, [&](const permprime::DigitString& s) {
        mpz_class v = permprime::value_of(s);
        if (!v.fits_ulong_p()) throw std::invalid_argument("oracle handles word-size values");
        return slow_prime(v.get_ui());
    });
    return all;
}

inline bool absolute_prime_value(uint64_t x) {
    return absolute_prime(
        permprime::DigitMultiset::parse(std::to_string(x)));
}

// Digit-string residue through GMP's division; shares no code with the
// library's Horner or vector kernels.
inline uint32_t string_residue(const std::string& digits, uint32_t m) {
    mpz_class v(digits, 10);
    mpz_class r = v % m;
    return static_cast<uint32_t>(r.get_ui());
}

} // namespace oracle
