#include "permprime/certify.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <limits>
#include <stdexcept>

#include "permprime/kernels.hpp"

namespace permprime {

namespace {

// Four-digit tails over {1,3,7,9} covering every residue mod 7:
// kTail7[i] has value congruent to i.
constexpr std::array<std::array<uint8_t, 4>, 7> kTail7{{
    {7, 9, 3, 1}, // 7931 = 7 * 1133
    {1, 7, 9, 3}, // 1793 = 7 * 256 + 1
    {9, 1, 3, 7}, // 9137
    {7, 9, 1, 3}, // 7913
    {7, 1, 9, 3}, // 7193
    {1, 9, 3, 7}, // 1937
    {7, 1, 3, 9}, // 7139
}};

// Offset pairs (i, j) with 10^i + 10^j congruent to the index mod 7.
constexpr std::array<std::pair<unsigned, unsigned>, 7> kPair7{{
    {4, 1}, {3, 2}, {3, 1}, {2, 0}, {1, 0}, {4, 0}, {4, 2},
}};

constexpr std::array<uint32_t, 7> kInv7{0, 1, 4, 5, 2, 3, 6}; // inverses mod 7
constexpr std::array<uint32_t, 6> kPow10Mod7{1, 3, 2, 6, 4, 5};

uint32_t residue_raw(std::span<const uint8_t> digits, uint32_t m) {
    if (digits.empty()) return 0;
    return kernels::residue_mod(digits, m);
}

std::vector<uint8_t> ascending_minus(const DigitMultiset& ms,
                                     std::initializer_list<std::pair<uint8_t, uint32_t>> takes) {
    std::array<uint32_t, 10> counts{};
    for (uint8_t d = 0; d < 10; ++d) counts[d] = ms.count(d);
    for (auto [d, k] : takes) {
        if (counts[d] < k) throw std::logic_error("multiset underflow");
        counts[d] -= k;
    }
    std::vector<uint8_t> out;
    for (uint8_t d = 0; d < 10; ++d) out.insert(out.end(), counts[d], d);
    return out;
}

Certificate make_cert(CertKind kind, std::string rule, std::vector<uint8_t> witness,
                      mpz_class divisor, std::string note = {}) {
    return Certificate{kind, std::move(rule), DigitString(std::move(witness)),
                       std::move(divisor), std::move(note)};
}

} // namespace

std::string_view kind_tag(CertKind k) {
    switch (k) {
        case CertKind::UnitsPlace: return "units_place";
        case CertKind::PermutationDivisor: return "permutation_divisor";
        case CertKind::DigitSum3: return "digit_sum_3";
        case CertKind::AlgebraicFactor: return "algebraic_factor";
        case CertKind::TrivialFactor: return "trivial_factor";
    }
    return "?";
}

CertCheck check_certificate(const Certificate& c, const DigitMultiset& input) {
    if (multiset_of(c.witness) != input)
        return {false, "witness is not a permutation of the input"};
    mpz_class value = c.value();

    if (c.divisor == 1) {
        // The only divisor-1 certificate is the below-two convention.
        if (c.kind == CertKind::TrivialFactor && value < 2) return {true, {}};
        return {false, "divisor 1 is only valid for values below 2"};
    }
    if (c.divisor < 2) return {false, "divisor must be at least 2"};
    if (!mpz_divisible_p(value.get_mpz_t(), c.divisor.get_mpz_t()))
        return {false, "divisor does not divide the witness value"};
    if (value <= c.divisor) return {false, "divisor is not a proper divisor"};

    switch (c.kind) {
        case CertKind::UnitsPlace: {
            uint8_t last = c.witness[c.witness.size() - 1];
            if (c.divisor == 2 && last % 2 == 0) return {true, {}};
            if (c.divisor == 5 && (last == 0 || last == 5)) return {true, {}};
            return {false, "units digit does not match the claimed divisor"};
        }
        case CertKind::DigitSum3: {
            if (c.divisor != 3) return {false, "digit-sum certificates must claim 3"};
            if (digit_sum(c.witness) % 3 != 0) return {false, "digit sum is not divisible by 3"};
            return {true, {}};
        }
        case CertKind::PermutationDivisor: {
            if (!is_prime(c.divisor).prime_or_probable())
                return {false, "claimed divisor is not prime"};
            return {true, {}};
        }
        case CertKind::AlgebraicFactor:
        case CertKind::TrivialFactor:
            return {true, {}};
    }
    return {false, "unknown certificate kind"};
}

std::optional<Certificate> certify_digit_set(const DigitMultiset& ms) {
    if (ms.total() < 2) return std::nullopt;
    if (ms.count(0) == ms.total()) return std::nullopt; // no positive value to certify
    // 0 first: it guarantees a nonzero digit lands ahead of the units place.
    for (uint8_t d : {uint8_t{0}, uint8_t{2}, uint8_t{4}, uint8_t{5}, uint8_t{6}, uint8_t{8}}) {
        if (ms.count(d) == 0) continue;
        std::vector<uint8_t> w = ascending_minus(ms, {{d, 1}});
        w.push_back(d);
        mpz_class divisor = (d == 5) ? 5 : 2;
        auto cert = make_cert(CertKind::UnitsPlace, "digit-set", std::move(w), divisor);
        assert(check_certificate(cert, ms).ok);
        return cert;
    }
    return std::nullopt;
}

std::optional<Certificate> certify_four_digits(const DigitMultiset& ms) {
    if (ms.count(1) == 0 || ms.count(3) == 0 || ms.count(7) == 0 || ms.count(9) == 0)
        return std::nullopt;
    std::vector<uint8_t> prefix = ascending_minus(ms, {{1, 1}, {3, 1}, {7, 1}, {9, 1}});
    uint32_t r = residue_raw(prefix, 7);
    // Need prefix * 10^4 + tail divisible by 7; 10^4 is 4 mod 7.
    uint32_t i = (7 - (r * 4) % 7) % 7;
    std::vector<uint8_t> w = std::move(prefix);
    w.insert(w.end(), kTail7[i].begin(), kTail7[i].end());
    auto cert = make_cert(CertKind::PermutationDivisor, "four-digits", std::move(w), 7);
    assert(residue(cert.witness, 7) == 0);
    assert(check_certificate(cert, ms).ok);
    return cert;
}

std::optional<Certificate> certify_three_two(const DigitMultiset& ms) {
    for (uint8_t a = 0; a <= 9; ++a) {
        for (uint8_t b = 0; b <= 9; ++b) {
            if (a == b || ms.count(a) < 3 || ms.count(b) < 2) continue;
            int diff = static_cast<int>(b) - static_cast<int>(a);
            if (diff % 7 == 0) continue;
            std::vector<uint8_t> prefix = ascending_minus(ms, {{a, 3}, {b, 2}});
            // value = prefix * 10^5 + a * 11111 + (b-a) * (10^i + 10^j);
            // 10^5 is 5 and 11111 is 2 mod 7.
            uint32_t base = (residue_raw(prefix, 7) * 5 + a * 2) % 7;
            uint32_t delta = static_cast<uint32_t>(((diff % 7) + 7) % 7);
            uint32_t s = ((7 - base) % 7) * kInv7[delta] % 7;
            auto [i, j] = kPair7[s];
            std::vector<uint8_t> w = std::move(prefix);
            std::size_t tail = w.size();
            w.insert(w.end(), 5, a);
            w[tail + 4 - i] = b;
            w[tail + 4 - j] = b;
            auto cert = make_cert(CertKind::PermutationDivisor, "three-two", std::move(w), 7);
            assert(residue(cert.witness, 7) == 0);
            assert(check_certificate(cert, ms).ok);
            return cert;
        }
    }
    return std::nullopt;
}

std::optional<Certificate> lemma4_filter(const DigitString& prefix, uint8_t a, uint8_t b) {
    if (a > 9 || b > 9 || a == b)
        throw std::invalid_argument("displacement digits must be distinct members of 0..9");
    uint32_t r = residue_raw(prefix.span(), 7);
    if (r == 0) return std::nullopt; // divisibility of the prefix defeats the placement
    // Want prefix * 10^6 + a * 111111 + (b-a) * 10^i divisible by 7; both
    // 10^6 and 111111 are 1 and 0 mod 7, so the target is -prefix residue.
    int diff = static_cast<int>(b) - static_cast<int>(a);
    uint32_t delta = static_cast<uint32_t>(((diff % 7) + 7) % 7);
    for (uint32_t i = 0; i < 6; ++i) {
        if ((r + delta * kPow10Mod7[i]) % 7 != 0) continue;
        std::vector<uint8_t> w(prefix.digits());
        std::size_t tail = w.size();
        w.insert(w.end(), 6, a);
        w[tail + 5 - i] = b;
        auto cert =
            make_cert(CertKind::PermutationDivisor, "prefix-displacement", std::move(w), 7);
        assert(residue(cert.witness, 7) == 0);
        return cert;
    }
    return std::nullopt; // 7 divides b - a
}

CandidateClass classify(const DigitMultiset& ms) {
    if (ms.total() == 0) throw std::invalid_argument("cannot classify an empty multiset");
    CandidateClass out;
    out.n = ms.total();

    if (ms.total() == 1) {
        out.kind = CandidateClass::Kind::SingleDigit;
        return out;
    }
    if (ms.count(1) == ms.total()) {
        out.kind = CandidateClass::Kind::RepunitForm;
        return out;
    }
    if (auto c = certify_digit_set(ms)) {
        out.kind = CandidateClass::Kind::Excluded;
        out.certificate = std::move(c);
        return out;
    }
    // From here every digit is in {1, 3, 7, 9}.
    for (uint8_t a : {uint8_t{3}, uint8_t{7}, uint8_t{9}}) {
        if (ms.count(a) != ms.total()) continue;
        auto cert = make_cert(CertKind::TrivialFactor, "uniform",
                              std::vector<uint8_t>(ms.total(), a), Repunit(ms.total()).value());
        assert(check_certificate(cert, ms).ok);
        out.kind = CandidateClass::Kind::Excluded;
        out.certificate = std::move(cert);
        return out;
    }
    if (auto c = certify_four_digits(ms)) {
        out.kind = CandidateClass::Kind::Excluded;
        out.certificate = std::move(c);
        return out;
    }
    if (auto c = certify_three_two(ms)) {
        out.kind = CandidateClass::Kind::Excluded;
        out.certificate = std::move(c);
        return out;
    }
    if (ms.total() > 6 && ms.distinct() == 3) {
        // With the two filters above exhausted the counts must be (n-2, 1, 1).
        uint8_t dominant = 0;
        std::array<uint8_t, 2> single{};
        std::size_t nsingle = 0;
        for (uint8_t d : {uint8_t{1}, uint8_t{3}, uint8_t{7}, uint8_t{9}}) {
            if (ms.count(d) == 1)
                single[nsingle++] = d;
            else if (ms.count(d) > 1)
                dominant = d;
        }
        if (nsingle == 2 && ms.count(dominant) == ms.total() - 2) {
            // Fix one single in the prefix, displace the other; the two
            // prefixes differ mod 7, so at most one has residue zero.
            std::vector<uint8_t> p1(ms.total() - 7, dominant);
            p1.push_back(single[1]);
            if (auto c = lemma4_filter(DigitString(p1), dominant, single[0])) {
                out.kind = CandidateClass::Kind::Excluded;
                out.certificate = std::move(c);
                return out;
            }
            std::vector<uint8_t> p2(ms.total() - 7, dominant);
            p2.push_back(single[0]);
            if (auto c = lemma4_filter(DigitString(p2), dominant, single[1])) {
                out.kind = CandidateClass::Kind::Excluded;
                out.certificate = std::move(c);
                return out;
            }
            throw std::logic_error("three-distinct exclusion failed to certify");
        }
    }
    if (ms.distinct() == 2) {
        uint8_t lo = 0, hi = 0;
        for (uint8_t d : {uint8_t{1}, uint8_t{3}, uint8_t{7}, uint8_t{9}}) {
            if (ms.count(d) == 0) continue;
            if (lo == 0)
                lo = d;
            else
                hi = d;
        }
        if (ms.count(lo) == 1 || ms.count(hi) == 1) {
            out.kind = CandidateClass::Kind::NearRepunitForm;
            if (ms.total() == 2) {
                out.a = lo; // two-digit case is symmetric; smaller digit leads
                out.b = hi;
            } else if (ms.count(hi) == 1) {
                out.a = lo;
                out.b = hi;
            } else {
                out.a = hi;
                out.b = lo;
            }
            return out;
        }
    }
    out.kind = CandidateClass::Kind::General;
    return out;
}

Lemma6Result lemma6_constraint(uint8_t a, uint8_t b, uint32_t n, uint64_t p) {
    NearRepunit shape(a, b, n); // validates a, b, n
    if (!is_prime_u64(p)) throw std::invalid_argument("order constraint needs a prime p");

    Lemma6Result res;
    if (p == 2 || p == 5) {
        res.reason = "10 is not a unit mod " + std::to_string(p);
        return res;
    }
    OrderRecord rec = multiplicative_order_10(p);
    if (!rec.primitive_root_10) {
        res.reason = "10 is not a primitive root mod " + std::to_string(p);
        return res;
    }
    if (a % p == 0) {
        res.reason = "repeated digit shares a factor with p";
        return res;
    }
    uint64_t delta = ((static_cast<int64_t>(b) - a) % static_cast<int64_t>(p) + p) % p;
    if (delta == 0) {
        res.reason = "digit difference vanishes mod p";
        return res;
    }
    if (n <= p - 1) {
        res.reason = "needs length above p-1";
        return res;
    }
    if (n % (p - 1) == 0) {
        // p divides the all-a part, so no displacement lands on 0 mod p.
        res.status = Lemma6Result::Status::Satisfied;
        res.reason = "length divisible by p-1";
        return res;
    }
    // repunit(n) mod p through the geometric sum; p > 3 so 9 is invertible.
    uint64_t rep = pow_mod(10, n, p);
    rep = (rep + p - 1) % p;
    rep = (static_cast<__uint128_t>(rep) * pow_mod(9, p - 2, p)) % p;
    uint64_t base = (static_cast<__uint128_t>(a % p) * rep) % p;
    // base != 0 here, and 10^i sweeps every nonzero residue, so a hit exists.
    uint64_t pw = 1;
    for (uint32_t i = 0; i + 1 < p; ++i) {
        if ((base + static_cast<__uint128_t>(delta) * pw) % p == 0) {
            DigitString witness = shape.with_b_at_offset(i);
            assert(residue(witness, static_cast<uint32_t>(p)) == 0);
            res.status = Lemma6Result::Status::Certified;
            res.certificate = Certificate{CertKind::PermutationDivisor, "order-constraint",
                                          witness, mpz_class(static_cast<unsigned long>(p)), {}};
            assert(check_certificate(*res.certificate, multiset_of(shape.digits())).ok);
            res.reason = "displacement divisible by p";
            return res;
        }
        pw = (static_cast<__uint128_t>(pw) * 10) % p;
    }
    throw std::logic_error("order constraint failed to locate a displacement");
}

mpz_class theorem2_bound(std::vector<OrderRecord> records, uint64_t start,
                         std::vector<BoundStep>* chain) {
    if (start < 1) throw std::invalid_argument("starting bound must be >= 1");
    std::sort(records.begin(), records.end(),
              [](const OrderRecord& x, const OrderRecord& y) { return x.p < y.p; });
    records.erase(std::unique(records.begin(), records.end(),
                              [](const OrderRecord& x, const OrderRecord& y) {
                                  return x.p == y.p;
                              }),
                  records.end());

    mpz_class modulus = 1;
    mpz_class lower = start;
    for (const OrderRecord& given : records) {
        OrderRecord rec = multiplicative_order_10(given.p); // throws unless p is a valid prime
        if (given.h != 0 && given.h != rec.h)
            throw std::invalid_argument("record for " + std::to_string(given.p) +
                                        " carries the wrong order");
        if (!rec.primitive_root_10)
            throw std::invalid_argument("10 is not a primitive root mod " +
                                        std::to_string(given.p));
        if (lower <= rec.p - 1)
            throw std::invalid_argument(
                "prime " + std::to_string(rec.p) + " is not justified: proven bound " +
                lower.get_str() + " does not exceed " + std::to_string(rec.p - 1));
        mpz_class pm1(static_cast<unsigned long>(rec.p - 1));
        mpz_lcm(modulus.get_mpz_t(), modulus.get_mpz_t(), pm1.get_mpz_t());
        // Raise the bound to the next multiple of the lcm.
        mpz_class q;
        mpz_cdiv_q(q.get_mpz_t(), lower.get_mpz_t(), modulus.get_mpz_t());
        lower = q * modulus;
        if (chain) chain->push_back({rec.p, modulus, lower});
    }
    return modulus;
}

Theorem3Outcome theorem3_certificate(uint8_t a, uint8_t b, uint32_t n) {
    NearRepunit shape(a, b, n);
    if (n <= 3) throw std::invalid_argument("pair certificates start at length 4");

    Theorem3Outcome out;
    auto unmet = [&](std::string why) {
        out.status = Theorem3Outcome::Status::HypothesisUnmet;
        out.missing = std::move(why);
        return out;
    };
    auto digit_sum_cert = [&]() {
        out.status = Theorem3Outcome::Status::Certified;
        out.certificate =
            Certificate{CertKind::DigitSum3, "digit-pair", shape.digits(), 3, {}};
        assert(check_certificate(*out.certificate, multiset_of(shape.digits())).ok);
        return out;
    };

    if ((a == 1 && b == 7) || (a == 7 && b == 1)) {
        // digit sum is n+6 resp. 7n-6; both need 3 | n
        if (n % 3 != 0) return unmet("length must be divisible by 3");
        return digit_sum_cert();
    }
    if ((a == 3 && b == 9) || (a == 9 && b == 3)) {
        // digit sums 3n+6 and 9n-6 are always multiples of 3
        return digit_sum_cert();
    }
    if (a == 9 && b == 7) {
        if (n % 2 != 0) return unmet("length must be even");
        uint32_t m = n, r = 1;
        while (m % 2 == 0) {
            m /= 2;
            r *= 2;
        }
        if (m == 1) return unmet("length is a power of two; an odd part above 1 is needed");
        // value = 10^n - 1 - 2*10^r and 10^r is -1 mod 10^r + 1; the odd
        // exponent n/r makes 10^n land on -1 as well.
        mpz_class divisor;
        mpz_ui_pow_ui(divisor.get_mpz_t(), 10, r);
        divisor += 1;
        DigitString witness = shape.with_b_at_offset(r);
        out.status = Theorem3Outcome::Status::Certified;
        out.certificate =
            Certificate{CertKind::AlgebraicFactor, "digit-pair", witness, divisor, {}};
        assert(check_certificate(*out.certificate, multiset_of(shape.digits())).ok);
        return out;
    }
    if (a == 9 && b == 1) {
        if (n % 2 != 0) return unmet("length must be even");
        // value = 10^n - 9 = (10^(n/2) - 3)(10^(n/2) + 3)
        mpz_class divisor;
        mpz_ui_pow_ui(divisor.get_mpz_t(), 10, n / 2);
        divisor -= 3;
        out.status = Theorem3Outcome::Status::Certified;
        out.certificate =
            Certificate{CertKind::AlgebraicFactor, "digit-pair", shape.digits(), divisor, {}};
        assert(check_certificate(*out.certificate, multiset_of(shape.digits())).ok);
        return out;
    }
    out.status = Theorem3Outcome::Status::NotInList;
    return out;
}

namespace {

Verdict compose_composite(Certificate cert) {
    Verdict v;
    v.kind = Verdict::Kind::Composite;
    v.certificate = std::move(cert);
    return v;
}

Verdict compose_unknown(std::string what, mpz_class permutations, uint32_t len) {
    Verdict v;
    v.kind = Verdict::Kind::Unknown;
    v.unknown = UnknownReason{std::move(what), std::move(permutations), len};
    return v;
}

// Tests every distinct permutation in lexicographic order; the certificate,
// when one arises, belongs to the first failing permutation.
Verdict exhaustive_verdict(const DigitMultiset& ms, const Limits& limits) {
    mpz_class perms = permutation_count(ms);
    if (ms.total() > limits.max_digits)
        return compose_unknown("digit length exceeds the budget", perms, ms.total());
    if (perms > static_cast<unsigned long>(
                    std::min<uint64_t>(limits.max_permutations,
                                       std::numeric_limits<unsigned long>::max())))
        return compose_unknown("permutation count exceeds the budget", perms, ms.total());

    Verdict v;
    PermutationStream stream(ms);
    while (auto s = stream.next()) {
        mpz_class value = value_of(*s);
        if (value < 2) {
            Certificate cert{CertKind::TrivialFactor, "convention", *s, 1,
                             "values below 2 are not prime"};
            return compose_composite(std::move(cert));
        }
        PrimalityVerdict pv = is_prime(value, limits.probable_rounds);
        if (pv.status == PrimalityVerdict::Status::Composite) {
            std::optional<mpz_class> divisor = pv.factor;
            if (!divisor) divisor = some_prime_factor(value, limits.factor_effort);
            if (divisor) {
                Certificate cert{CertKind::PermutationDivisor, "direct", *s, *divisor, {}};
                return compose_composite(std::move(cert));
            }
            if (auto d = some_divisor(value, limits.factor_effort)) {
                Certificate cert{CertKind::AlgebraicFactor, "direct", *s, *d, {}};
                return compose_composite(std::move(cert));
            }
            return compose_unknown("composite permutation resisted factoring within the budget",
                                   perms, ms.total());
        }
        v.evidence.emplace_back(*s, pv);
    }
    v.kind = Verdict::Kind::AbsolutePrime;
    return v;
}

// Smallest prime factor of a machine word by trial division.
uint32_t least_factor_u32(uint32_t n) {
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

} // namespace

Verdict verdict(const DigitMultiset& ms, const Limits& limits) {
    if (ms.total() == 0) throw std::invalid_argument("cannot judge an empty multiset");
    CandidateClass cls = classify(ms);

    switch (cls.kind) {
        case CandidateClass::Kind::Excluded:
            return compose_composite(std::move(*cls.certificate));

        case CandidateClass::Kind::RepunitForm: {
            uint32_t n = cls.n;
            uint32_t d = least_factor_u32(n);
            if (d != n) {
                // A shorter repunit divides evenly whenever its length does.
                Certificate cert{CertKind::TrivialFactor, "repunit-length",
                                 repunit_digits(n), Repunit(d).value(), {}};
                return compose_composite(std::move(cert));
            }
            if (n > limits.max_digits)
                return compose_unknown("digit length exceeds the budget", 1, n);
            PrimalityVerdict pv = is_prime(Repunit(n).value(), limits.probable_rounds);
            if (pv.prime_or_probable()) {
                Verdict v;
                v.kind = Verdict::Kind::AbsolutePrime;
                v.evidence.emplace_back(repunit_digits(n), std::move(pv));
                return v;
            }
            std::optional<mpz_class> divisor = pv.factor;
            if (!divisor) divisor = some_prime_factor(Repunit(n).value(), limits.factor_effort);
            if (!divisor) divisor = some_divisor(Repunit(n).value(), limits.factor_effort);
            if (divisor) {
                Certificate cert{CertKind::AlgebraicFactor, "direct", repunit_digits(n),
                                 *divisor, {}};
                return compose_composite(std::move(cert));
            }
            return compose_unknown("composite repunit resisted factoring within the budget", 1, n);
        }

        case CandidateClass::Kind::NearRepunitForm: {
            if (cls.n > 3) {
                auto t3 = theorem3_certificate(cls.a, cls.b, cls.n);
                if (t3.status == Theorem3Outcome::Status::Certified)
                    return compose_composite(std::move(*t3.certificate));
                for (uint64_t p : {7ull, 17ull, 19ull, 23ull, 29ull}) {
                    auto r = lemma6_constraint(cls.a, cls.b, cls.n, p);
                    if (r.status == Lemma6Result::Status::Certified)
                        return compose_composite(std::move(*r.certificate));
                }
            }
            return exhaustive_verdict(ms, limits);
        }

        case CandidateClass::Kind::SingleDigit:
        case CandidateClass::Kind::General:
            return exhaustive_verdict(ms, limits);
    }
    throw std::logic_error("unreachable candidate class");
}

} // namespace permprime
