#include "permprime/digits.hpp"

#include <stdexcept>

#include "permprime/kernels.hpp"

namespace permprime {

DigitString::DigitString(std::vector<uint8_t> digits) : digits_(std::move(digits)) {
    if (digits_.empty()) throw std::invalid_argument("digit string must not be empty");
    for (uint8_t d : digits_)
        if (d > 9) throw std::invalid_argument("digit out of range 0..9");
}

DigitString DigitString::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("digit string must not be empty");
    std::vector<uint8_t> ds;
    ds.reserve(text.size());
    for (char c : text) {
        if (c < '0' || c > '9')
            throw std::invalid_argument("digit string may contain only 0..9");
        ds.push_back(static_cast<uint8_t>(c - '0'));
    }
    return DigitString(std::move(ds));
}

std::string DigitString::str() const {
    std::string s;
    s.reserve(digits_.size());
    for (uint8_t d : digits_) s.push_back(static_cast<char>('0' + d));
    return s;
}

DigitMultiset::DigitMultiset(const std::array<uint32_t, 10>& counts) : counts_(counts) {
    for (uint32_t c : counts_) total_ += c;
}

DigitMultiset DigitMultiset::of(const DigitString& s) {
    std::array<uint32_t, 10> counts{};
    for (uint8_t d : s.digits()) ++counts[d];
    return DigitMultiset(counts);
}

DigitMultiset DigitMultiset::parse(std::string_view text) {
    return of(DigitString::parse(text));
}

unsigned DigitMultiset::distinct() const {
    unsigned k = 0;
    for (uint32_t c : counts_)
        if (c > 0) ++k;
    return k;
}

bool DigitMultiset::contains_only(std::initializer_list<uint8_t> allowed) const {
    for (uint8_t d = 0; d < 10; ++d) {
        if (counts_[d] == 0) continue;
        bool ok = false;
        for (uint8_t a : allowed)
            if (a == d) ok = true;
        if (!ok) return false;
    }
    return true;
}

std::vector<uint8_t> DigitMultiset::ascending() const {
    std::vector<uint8_t> ds;
    ds.reserve(total_);
    for (uint8_t d = 0; d < 10; ++d)
        ds.insert(ds.end(), counts_[d], d);
    return ds;
}

std::string DigitMultiset::str() const {
    std::string s = "{";
    bool first = true;
    for (uint8_t d = 0; d < 10; ++d) {
        if (counts_[d] == 0) continue;
        if (!first) s += ", ";
        first = false;
        s += static_cast<char>('0' + d);
        s += ':';
        s += std::to_string(counts_[d]);
    }
    s += '}';
    return s;
}

Repunit::Repunit(uint32_t n_) : n(n_) {
    if (n == 0) throw std::invalid_argument("repunit length must be >= 1");
}

DigitString Repunit::digits() const {
    return DigitString(std::vector<uint8_t>(n, 1));
}

mpz_class Repunit::value() const {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), 10, n);
    v -= 1;
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), 9);
    return v;
}

namespace {

bool allowed_near_repunit_digit(uint8_t d) {
    return d == 1 || d == 3 || d == 7 || d == 9;
}

} // namespace

NearRepunit::NearRepunit(uint8_t a_, uint8_t b_, uint32_t n_) : a(a_), b(b_), n(n_) {
    if (!allowed_near_repunit_digit(a) || !allowed_near_repunit_digit(b))
        throw std::invalid_argument("near-repunit digits must be in {1, 3, 7, 9}");
    if (a == b) throw std::invalid_argument("near-repunit digits must differ");
    if (n < 2) throw std::invalid_argument("near-repunit length must be >= 2");
}

DigitString NearRepunit::with_b_at_offset(uint32_t i) const {
    if (i >= n) throw std::invalid_argument("offset must be below the length");
    std::vector<uint8_t> ds(n, a);
    ds[n - 1 - i] = b;
    return DigitString(std::move(ds));
}

mpz_class NearRepunit::value() const {
    return value_of(digits());
}

DigitString repunit_digits(uint32_t n) { return Repunit(n).digits(); }

DigitString near_repunit_digits(uint8_t a, uint8_t b, uint32_t n) {
    return NearRepunit(a, b, n).digits();
}

DigitMultiset multiset_of(const DigitString& s) { return DigitMultiset::of(s); }

uint32_t residue(const DigitString& s, uint32_t m) {
    if (m < 2 || m >= (1u << 31))
        throw std::invalid_argument("modulus must be in [2, 2^31)");
    return kernels::residue_mod(s.span(), m);
}

mpz_class value_of(const DigitString& s) {
    mpz_class v;
    if (mpz_set_str(v.get_mpz_t(), s.str().c_str(), 10) != 0)
        throw std::invalid_argument("unparseable digit string");
    return v;
}

uint64_t digit_sum(const DigitString& s) {
    uint64_t t = 0;
    for (uint8_t d : s.digits()) t += d;
    return t;
}

mpz_class permutation_count(const DigitMultiset& ms) {
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), ms.total());
    for (uint8_t d = 0; d < 10; ++d) {
        if (ms.count(d) < 2) continue;
        mpz_class den;
        mpz_fac_ui(den.get_mpz_t(), ms.count(d));
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    }
    return num;
}

PermutationStream::PermutationStream(const DigitMultiset& ms) : current_(ms.ascending()) {
    if (current_.empty()) done_ = true;
}

std::optional<DigitString> PermutationStream::next() {
    if (done_) return std::nullopt;
    if (first_) {
        first_ = false;
        return DigitString(current_);
    }
    if (!std::next_permutation(current_.begin(), current_.end())) {
        done_ = true;
        return std::nullopt;
    }
    return DigitString(current_);
}

std::vector<DigitString> all_permutations(const DigitMultiset& ms) {
    std::vector<DigitString> out;
    for_each_permutation(ms, [&](const DigitString& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

} // namespace permprime
