#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace permprime {

// The order of 10 in (Z/p)*, with the primitive-root flag that drives the
// length bounds. Only defined for primes p with gcd(p, 10) = 1.
struct OrderRecord {
    uint64_t p = 0;
    uint64_t h = 0;
    bool primitive_root_10 = false;
};

struct Factorization {
    mpz_class base;
    // Ascending primes with exponents; the product reconstructs base.
    std::vector<std::pair<mpz_class, unsigned>> factors;
    mpz_class reconstruct() const;
};

// Thrown when the factoring budget runs out with a composite cofactor left.
struct incomplete_factorization : std::runtime_error {
    mpz_class cofactor;
    explicit incomplete_factorization(mpz_class c)
        : std::runtime_error("factoring effort exhausted with composite cofactor " +
                             c.get_str()),
          cofactor(std::move(c)) {}
};

inline constexpr uint64_t kDefaultFactorEffort = 500000;

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m); // m >= 2

// p must be an odd prime other than 5 (so that 10 is a unit mod p).
OrderRecord multiplicative_order_10(uint64_t p);
bool is_primitive_root_10(uint64_t p);

// Whether p divides the repunit of length n, decided through the order of
// 10 mod p. Requires a prime p >= 7: 2 and 5 divide 10, and 3 shares a
// factor with 9, which breaks the order criterion. n >= 1.
bool repunit_divisible(uint64_t n, uint64_t p);

// Complete factorization by trial division plus Pollard rho (Brent variant,
// deterministic parameters). effort caps the total rho iterations; running
// out raises incomplete_factorization.
Factorization factorize(const mpz_class& x, uint64_t effort = kDefaultFactorEffort);

// One prime factor of x (x >= 2), found within the effort budget, or nullopt
// if the budget ran out before any split. Deterministic for a given x.
std::optional<mpz_class> some_prime_factor(const mpz_class& x,
                                           uint64_t effort = kDefaultFactorEffort);

// A nontrivial divisor of composite x, prime or not, within the budget.
std::optional<mpz_class> some_divisor(const mpz_class& x,
                                      uint64_t effort = kDefaultFactorEffort);

} // namespace permprime
