#include <doctest.h>

#include "permprime/digits.hpp"
#include "permprime/primality.hpp"

#include "oracles.hpp"

using namespace permprime;

TEST_CASE("verdicts agree with trial division through one million") {
    int checked = 0;
    for (uint64_t x = 0; x <= 1000000; x += (x < 1000 ? 1 : 97)) {
        PrimalityVerdict v = is_prime(mpz_class(static_cast<unsigned long>(x)));
        CHECK(v.prime_or_probable() == oracle::slow_prime(x));
        // Everything this small is decided, never merely probable.
        CHECK(v.status != PrimalityVerdict::Status::ProbablePrime);
        ++checked;
    }
    CHECK(checked > 10000);
}

TEST_CASE("composite verdicts carry checkable evidence") {
    PrimalityVerdict v = is_prime(mpz_class(91));
    REQUIRE(v.status == PrimalityVerdict::Status::Composite);
    REQUIRE(v.factor.has_value());
    CHECK(91 % v.factor->get_ui() == 0);

    // A Carmichael number: trial division alone cannot be the whole story.
    PrimalityVerdict c = is_prime(mpz_class(561));
    CHECK(c.status == PrimalityVerdict::Status::Composite);

    PrimalityVerdict below = is_prime(mpz_class(1));
    CHECK(below.status == PrimalityVerdict::Status::Composite);
    CHECK(!below.note.empty());
    CHECK(is_prime(mpz_class(0)).status == PrimalityVerdict::Status::Composite);
}

TEST_CASE("the proven tier ends at the published base-set bound") {
    // 341550071728321 is the first composite passing bases {2,3,5,7,11,13,17};
    // everything below must come back Prime, everything above ProbablePrime.
    mpz_class below("341550071728289"); // largest prime below the bound
    PrimalityVerdict v = is_prime(below);
    CHECK(v.status == PrimalityVerdict::Status::Prime);

    mpz_class repunit19 = Repunit(19).value();
    CHECK(repunit19 > kDeterministicBound);
    PrimalityVerdict pp = is_prime(repunit19);
    CHECK(pp.status == PrimalityVerdict::Status::ProbablePrime);
    CHECK(pp.rounds >= 40);
}

TEST_CASE("probable tier is reproducible and correct on known values") {
    mpz_class p64("18446744073709551629"); // prime just above 2^64
    CHECK(is_prime(p64).status == PrimalityVerdict::Status::ProbablePrime);

    mpz_class c64 = p64 * mpz_class("18446744073709551653");
    PrimalityVerdict v = is_prime(c64);
    CHECK(v.status == PrimalityVerdict::Status::Composite);
    REQUIRE(v.witness.has_value());

    // Same input, same verdict object, byte for byte.
    PrimalityVerdict again = is_prime(c64);
    CHECK(again.witness == v.witness);

    mpz_class mersenne127 = (mpz_class(1) << 127) - 1;
    CHECK(is_prime(mersenne127).status == PrimalityVerdict::Status::ProbablePrime);
}

TEST_CASE("exact word-size primality helper") {
    for (uint64_t x = 0; x < 2000; ++x) CHECK(is_prime_u64(x) == oracle::slow_prime(x));
    CHECK(is_prime_u64(341550071728321ull) == false); // strong pseudoprime to 7 bases
    CHECK(is_prime_u64(3825123056546413051ull) == false); // to 9 bases
    CHECK(is_prime_u64(18446744073709551557ull) == true); // largest 64-bit prime
}

TEST_CASE("sieve agrees with trial division") {
    auto primes = sieve_primes(10000);
    CHECK(primes.front() == 2);
    CHECK(primes.back() == 9973);
    CHECK(primes.size() == 1229);
    for (uint32_t p : primes) CHECK(oracle::slow_prime(p));
    CHECK_THROWS_AS(sieve_primes(1), std::invalid_argument);
}
