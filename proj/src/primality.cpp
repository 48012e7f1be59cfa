#include "permprime/primality.hpp"

#include <stdexcept>

namespace permprime {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Strong probable-prime test to one base; n odd, n > 2.
bool sprp_u64(uint64_t n, uint64_t base) {
    base %= n;
    if (base == 0) return true;
    uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    uint64_t x = powmod_u64(base, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Strong test to one base for bignums; n odd, n > 2, with n-1 = q * 2^s.
bool sprp_mpz(const mpz_class& n, const mpz_class& base, const mpz_class& q, unsigned long s) {
    mpz_class b = base % n;
    if (b == 0) return true;
    mpz_class x;
    mpz_powm(x.get_mpz_t(), b.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    mpz_class nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = (x * x) % n;
        if (x == nm1) return true;
    }
    return false;
}

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> table = sieve_primes(1000);
    return table;
}

} // namespace

bool is_prime_u64(uint64_t x) {
    if (x < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (x == p) return true;
        if (x % p == 0) return false;
    }
    // These twelve bases decide primality for every 64-bit integer.
    for (uint64_t base : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (!sprp_u64(x, base)) return false;
    return true;
}

PrimalityVerdict is_prime(const mpz_class& x, unsigned rounds) {
    PrimalityVerdict v;
    if (x < 2) {
        v.status = PrimalityVerdict::Status::Composite;
        v.note = "0 and 1 are not prime by convention";
        return v;
    }
    if (x == 2) {
        v.status = PrimalityVerdict::Status::Prime;
        return v;
    }
    if (mpz_even_p(x.get_mpz_t())) {
        v.status = PrimalityVerdict::Status::Composite;
        v.factor = 2;
        return v;
    }
    for (uint32_t p : small_primes()) {
        if (x == p) {
            v.status = PrimalityVerdict::Status::Prime;
            return v;
        }
        if (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
            v.status = PrimalityVerdict::Status::Composite;
            v.factor = p;
            return v;
        }
    }
    if (x <= kDeterministicBound) {
        uint64_t n = mpz_get_ui(x.get_mpz_t());
        for (uint64_t base : kDeterministicBases) {
            if (!sprp_u64(n, base)) {
                v.status = PrimalityVerdict::Status::Composite;
                v.witness = base;
                return v;
            }
        }
        v.status = PrimalityVerdict::Status::Prime;
        return v;
    }

    if (rounds == 0) rounds = 1;
    mpz_class q = x - 1;
    unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);

    // Base 2 first, then random bases from a generator seeded by the input
    // so repeated runs see the same rounds.
    if (!sprp_mpz(x, 2, q, s)) {
        v.status = PrimalityVerdict::Status::Composite;
        v.witness = 2;
        return v;
    }
    gmp_randclass rng(gmp_randinit_mt);
    {
        mpz_class seed = (x % mpz_class("281474976710597")) * mpz_class("2862933555777941757");
        seed += 3037000493UL;
        rng.seed(seed);
    }
    mpz_class span = x - 4; // bases drawn from [2, x-2]
    for (unsigned r = 1; r < rounds; ++r) {
        mpz_class base = rng.get_z_range(span) + 2;
        if (!sprp_mpz(x, base, q, s)) {
            v.status = PrimalityVerdict::Status::Composite;
            v.witness = base;
            return v;
        }
    }
    v.status = PrimalityVerdict::Status::ProbablePrime;
    v.rounds = rounds;
    return v;
}

std::vector<uint32_t> sieve_primes(uint32_t limit) {
    if (limit < 2) throw std::invalid_argument("sieve limit must be >= 2");
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    std::vector<uint32_t> primes;
    for (uint32_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (uint64_t j = static_cast<uint64_t>(i) * i; j <= limit; j += i)
            composite[static_cast<std::size_t>(j)] = true;
    }
    return primes;
}

} // namespace permprime
