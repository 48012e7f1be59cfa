#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "permprime/digits.hpp"
#include "permprime/limits.hpp"
#include "permprime/modular.hpp"
#include "permprime/primality.hpp"

namespace permprime {

// Every compositeness claim is carried by a checkable certificate: a
// concrete permutation together with a divisor (or the digit-sum rule).
// check_certificate re-verifies the claim from scratch.
enum class CertKind {
    UnitsPlace,         // some arrangement ends in 0,2,4,5,6,8
    PermutationDivisor, // named permutation divisible by the named prime
    DigitSum3,          // digit sum divisible by 3, so every arrangement is
    AlgebraicFactor,    // named arrangement with a (possibly composite) factor
    TrivialFactor,      // repunit-style divisor, or the below-two convention
};

std::string_view kind_tag(CertKind k); // "units_place", ...

struct Certificate {
    CertKind kind;
    std::string rule;   // which filter produced it: "digit-set", "four-digits", ...
    DigitString witness;
    mpz_class divisor;
    std::string note;

    mpz_class value() const { return value_of(witness); }
};

struct CertCheck {
    bool ok = false;
    std::string why; // first failed condition, for diagnostics
};

// Re-derives every claim in the certificate against the input multiset:
// witness digits must be a permutation of the input and the divisor must
// really divide a value strictly larger than it. The only divisor-1
// certificate accepted is the below-two convention.
CertCheck check_certificate(const Certificate& c, const DigitMultiset& input);

// A unit digit outside {1,3,7,9} dooms some arrangement to end in it.
std::optional<Certificate> certify_digit_set(const DigitMultiset& ms);

// Multisets containing 1, 3, 7 and 9 all at once admit an arrangement
// divisible by 7, built from a four-digit tail covering every residue.
std::optional<Certificate> certify_four_digits(const DigitMultiset& ms);

// Three copies of a and two of b (7 not dividing b-a) admit an arrangement
// divisible by 7 via a five-digit tail with a chosen displacement pair.
std::optional<Certificate> certify_three_two(const DigitMultiset& ms);

// Given a fixed prefix with nonzero residue mod 7 and six more digits (five
// a's and one b), places b so the whole string is divisible by 7.
std::optional<Certificate> lemma4_filter(const DigitString& prefix, uint8_t a, uint8_t b);

struct CandidateClass {
    enum class Kind {
        SingleDigit,     // one digit; brute force settles it
        RepunitForm,     // all ones
        NearRepunitForm, // n-1 copies of a and one b over {1,3,7,9}
        General,         // no structural filter applies; exhaustive testing
        Excluded,        // a certificate already rules it out
    };
    Kind kind = Kind::General;
    uint32_t n = 0;
    uint8_t a = 0;
    uint8_t b = 0;
    std::optional<Certificate> certificate; // present exactly for Excluded
};

CandidateClass classify(const DigitMultiset& ms);

// Order constraint for primes p where 10 is a primitive root: when
// n > p - 1 and p does not divide n's repunit residue pattern, one of the
// b-displacements is divisible by p unless (p-1) | n.
struct Lemma6Result {
    enum class Status {
        Satisfied,     // (p-1) | n: the constraint holds, no certificate
        Certified,     // a displacement divisible by p was found
        NotApplicable, // hypotheses unmet (10 not primitive, gcd(a,p) > 1, n too small)
    };
    Status status = Status::NotApplicable;
    std::optional<Certificate> certificate;
    std::string reason;
};

Lemma6Result lemma6_constraint(uint8_t a, uint8_t b, uint32_t n, uint64_t p);

struct BoundStep {
    uint64_t p;
    mpz_class modulus; // lcm accumulated so far
    mpz_class lower;   // proven lower bound after absorbing p
};

// Chains primitive-root primes into an lcm divisibility bound on the length
// of any further near-repunit absolute prime. `start` is the already-proven
// lower bound on the length. Each record must have primitive_root_10 set
// and must be justified by the bound proven so far (lower > p - 1), else
// the offending prime is named in the thrown error.
mpz_class theorem2_bound(std::vector<OrderRecord> records, uint64_t start,
                         std::vector<BoundStep>* chain = nullptr);

// Closed-form certificates for the six digit pairs whose near-repunits are
// composite at every allowed length.
struct Theorem3Outcome {
    enum class Status { Certified, NotInList, HypothesisUnmet };
    Status status = Status::NotInList;
    std::optional<Certificate> certificate;
    std::string missing; // which hypothesis failed, for HypothesisUnmet
};

Theorem3Outcome theorem3_certificate(uint8_t a, uint8_t b, uint32_t n);

struct UnknownReason {
    std::string what;
    mpz_class permutations;
    uint32_t digit_length = 0;
};

// The full decision for one multiset. AbsolutePrime verdicts carry a
// primality verdict per distinct permutation; Composite verdicts carry a
// certificate; Unknown verdicts explain which budget was exceeded.
struct Verdict {
    enum class Kind { AbsolutePrime, Composite, Unknown };
    Kind kind = Kind::Unknown;
    std::vector<std::pair<DigitString, PrimalityVerdict>> evidence;
    std::optional<Certificate> certificate;
    std::optional<UnknownReason> unknown;
};

Verdict verdict(const DigitMultiset& ms, const Limits& limits = Limits{});

} // namespace permprime
