#include "permprime/modular.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "permprime/primality.hpp"

namespace permprime {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

// Trial-divides p-1; p-1 <= 2^63 so rho is never needed here.
std::vector<std::pair<uint64_t, unsigned>> factor_u64(uint64_t x) {
    std::vector<std::pair<uint64_t, unsigned>> fs;
    for (uint64_t p = 2; p * p <= x; p += (p == 2 ? 1 : 2)) {
        if (x % p) continue;
        unsigned e = 0;
        while (x % p == 0) {
            x /= p;
            ++e;
        }
        fs.emplace_back(p, e);
    }
    if (x > 1) fs.emplace_back(x, 1);
    return fs;
}

} // namespace

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
    if (m < 2) throw std::invalid_argument("modulus must be >= 2");
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

OrderRecord multiplicative_order_10(uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("order of 10 requires a prime modulus");
    if (p == 2 || p == 5) throw std::invalid_argument("10 is not a unit mod " + std::to_string(p));

    // Read-mostly memo; recomputation would be idempotent anyway.
    static std::mutex lock;
    static std::unordered_map<uint64_t, OrderRecord> memo;
    {
        std::scoped_lock g(lock);
        auto it = memo.find(p);
        if (it != memo.end()) return it->second;
    }

    // Start from h = p-1 and strip every prime of p-1 while the power stays 1.
    uint64_t h = p - 1;
    for (auto [q, e] : factor_u64(p - 1)) {
        (void)e;
        while (h % q == 0 && pow_mod(10, h / q, p) == 1) h /= q;
    }
    OrderRecord rec{p, h, h == p - 1};

    std::scoped_lock g(lock);
    memo.emplace(p, rec);
    return rec;
}

bool is_primitive_root_10(uint64_t p) {
    return multiplicative_order_10(p).primitive_root_10;
}

bool repunit_divisible(uint64_t n, uint64_t p) {
    if (n == 0) throw std::invalid_argument("repunit length must be >= 1");
    if (p < 7 || !is_prime_u64(p))
        throw std::invalid_argument("repunit divisibility needs a prime p >= 7");
    return n % multiplicative_order_10(p).h == 0;
}

mpz_class Factorization::reconstruct() const {
    mpz_class v = 1;
    for (const auto& [p, e] : factors) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

namespace {

const std::vector<uint32_t>& trial_primes() {
    static const std::vector<uint32_t> table = sieve_primes(100000);
    return table;
}

// Probable-prime check for bignum cofactors; fixed bases keep it
// deterministic. A false positive would surface as a failed reconstruct.
bool looks_prime(const mpz_class& x) {
    if (mpz_fits_ulong_p(x.get_mpz_t())) return is_prime_u64(mpz_get_ui(x.get_mpz_t()));
    return mpz_probab_prime_p(x.get_mpz_t(), 40) != 0;
}

// Brent-variant Pollard rho with fixed starting points. Returns a proper
// divisor of composite n, or nullopt when the iteration budget is spent.
// `budget` is decremented in place across calls.
std::optional<mpz_class> rho_split(const mpz_class& n, uint64_t& budget) {
    if (mpz_even_p(n.get_mpz_t())) return mpz_class(2);
    for (unsigned long c = 1; budget > 0; ++c) {
        mpz_class y = 2, r = 1, q = 1, g = 1, x = 0, ys = 2;
        while (g == 1 && budget > 0) {
            x = y;
            for (mpz_class i = 0; i < r; ++i) y = (y * y + c) % n;
            mpz_class k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                unsigned long chunk = 128;
                for (unsigned long i = 0; i < chunk && k + i < r; ++i) {
                    y = (y * y + c) % n;
                    mpz_class d = x - y;
                    q = (q * abs(d)) % n;
                }
                if (budget < chunk) budget = 0; else budget -= chunk;
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += chunk;
            }
            r *= 2;
        }
        if (g == n) {
            // Backtrack one step at a time to recover the divisor.
            do {
                ys = (ys * ys + c) % n;
                mpz_class d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
        // g == n: cycle degenerated; retry with the next polynomial.
    }
    return std::nullopt;
}

void factor_into(const mpz_class& x, uint64_t& budget,
                 std::map<mpz_class, unsigned>& out) {
    if (x == 1) return;
    if (looks_prime(x)) {
        ++out[x];
        return;
    }
    auto d = rho_split(x, budget);
    if (!d) throw incomplete_factorization(x);
    factor_into(*d, budget, out);
    factor_into(x / *d, budget, out);
}

} // namespace

Factorization factorize(const mpz_class& x, uint64_t effort) {
    if (x < 1) throw std::invalid_argument("factorize needs x >= 1");
    Factorization f;
    f.base = x;
    mpz_class work = x;
    std::map<mpz_class, unsigned> found;
    for (uint32_t p : trial_primes()) {
        if (work == 1) break;
        if (mpz_class(p) * p > work) break;
        while (mpz_divisible_ui_p(work.get_mpz_t(), p)) {
            mpz_divexact_ui(work.get_mpz_t(), work.get_mpz_t(), p);
            ++found[p];
        }
    }
    if (work > 1) {
        uint64_t budget = effort;
        factor_into(work, budget, found);
    }
    f.factors.assign(found.begin(), found.end());
    if (f.reconstruct() != x) throw std::logic_error("factorization failed to reconstruct");
    return f;
}

std::optional<mpz_class> some_prime_factor(const mpz_class& x, uint64_t effort) {
    if (x < 2) throw std::invalid_argument("some_prime_factor needs x >= 2");
    mpz_class work = x;
    for (uint32_t p : trial_primes()) {
        if (mpz_divisible_ui_p(work.get_mpz_t(), p)) return mpz_class(p);
        if (mpz_class(p) * p > work) return work; // work itself is prime
    }
    uint64_t budget = effort;
    while (!looks_prime(work)) {
        auto d = rho_split(work, budget);
        if (!d) return std::nullopt;
        // Recurse into the smaller side; it reaches a prime fastest.
        mpz_class other = work / *d;
        work = (*d < other) ? *d : other;
    }
    return work;
}

std::optional<mpz_class> some_divisor(const mpz_class& x, uint64_t effort) {
    if (x < 4) throw std::invalid_argument("some_divisor needs a composite x");
    for (uint32_t p : trial_primes()) {
        if (mpz_divisible_ui_p(x.get_mpz_t(), p) && x != p) return mpz_class(p);
        if (mpz_class(p) * p > x) return std::nullopt;
    }
    uint64_t budget = effort;
    if (looks_prime(x)) return std::nullopt;
    return rho_split(x, budget);
}

} // namespace permprime
