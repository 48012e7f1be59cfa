#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace permprime {

// Verdicts carry their own evidence: a Composite result names a factor or a
// compositeness witness, a ProbablePrime result reports how many rounds it
// survived.
struct PrimalityVerdict {
    enum class Status { Prime, ProbablePrime, Composite };

    Status status = Status::Composite;
    std::optional<mpz_class> factor;  // a divisor, when one was seen
    std::optional<mpz_class> witness; // Miller-Rabin base that proved compositeness
    unsigned rounds = 0;              // rounds survived (probable tier only)
    std::string note;

    bool prime_or_probable() const {
        return status == Status::Prime || status == Status::ProbablePrime;
    }
};

// Below this bound the Miller-Rabin bases {2,3,5,7,11,13,17} are a proof,
// not a heuristic (Jaeschke 1993), so verdicts there say Prime. Above it the
// test runs randomized rounds from a fixed seed and says ProbablePrime.
inline constexpr uint64_t kDeterministicBound = 341550071728321ull;
inline constexpr std::array<uint64_t, 7> kDeterministicBases{2, 3, 5, 7, 11, 13, 17};

// 41 rounds push the error rate below 4^-41 = 2^-82.
inline constexpr unsigned kDefaultProbableRounds = 41;

PrimalityVerdict is_prime(const mpz_class& x, unsigned rounds = kDefaultProbableRounds);

// Exact answer for any 64-bit integer (twelve fixed bases). Used internally
// where a true/false answer is required, e.g. to vet factors.
bool is_prime_u64(uint64_t x);

// Primes <= limit, ascending. limit >= 2.
std::vector<uint32_t> sieve_primes(uint32_t limit);

} // namespace permprime
