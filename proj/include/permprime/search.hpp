#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "permprime/certify.hpp"
#include "permprime/digits.hpp"
#include "permprime/limits.hpp"
#include "permprime/modular.hpp"

namespace permprime {

// One absolute-prime permutation class, reported by its smallest member.
struct FoundEntry {
    mpz_class value;
    DigitMultiset digits;
    std::string status; // "prime", or "probable_prime" if any member was only that
};

struct ScanRow {
    uint8_t a = 0;
    uint8_t b = 0;
    uint32_t n = 0;
    Certificate certificate;
};

struct SearchReport {
    std::vector<std::pair<std::string, std::string>> parameters;
    uint64_t candidates = 0; // multisets (or rows) examined
    std::vector<FoundEntry> found;
    std::map<std::string, uint64_t> tallies; // per-certificate-kind and verdict counts
    std::vector<std::string> unknowns;       // human-readable, one per Unknown verdict
    std::vector<ScanRow> rows;               // scan_near_repunits only
    double elapsed_seconds = 0.0;
};

// Judges every digit multiset of the given length. Lengths up to 3 range
// over all digits; beyond that only {1,3,7,9} can participate, which the
// report records. A found entry is the full permutation class, reported by
// its smallest no-leading-zero value.
SearchReport enumerate_absolute_primes(uint32_t n, const Limits& limits = Limits{});

// The same question answered the slow way: test every n-digit number
// directly, no structural filters. Used to cross-check the search.
std::vector<uint64_t> brute_force_absolute_primes(uint32_t n);

// One certified compositeness row per digit pair (a, b) and length in
// [n_lo, n_hi]. Asserts nothing slips through uncertified; a row that
// somehow survives every filter lands in found, never silently dropped.
SearchReport scan_near_repunits(uint32_t n_lo, uint32_t n_hi, const Limits& limits = Limits{});

// Primes p <= limit (p >= 7) with 10 a primitive root mod p, ascending.
std::vector<OrderRecord> useful_primes(uint64_t limit);

} // namespace permprime
