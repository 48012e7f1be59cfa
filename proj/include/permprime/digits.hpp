#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace permprime {

// A fixed-length base-10 digit sequence, most significant digit first.
// Leading zeros are allowed; the represented value is the usual positional
// reading, so "07" and "70" share a multiset but not a value.
class DigitString {
public:
    DigitString() = default;
    explicit DigitString(std::vector<uint8_t> digits);
    static DigitString parse(std::string_view text);

    const std::vector<uint8_t>& digits() const { return digits_; }
    std::span<const uint8_t> span() const { return digits_; }
    std::size_t size() const { return digits_.size(); }
    uint8_t operator[](std::size_t i) const { return digits_[i]; }

    std::string str() const;

    friend bool operator==(const DigitString&, const DigitString&) = default;
    friend std::strong_ordering operator<=>(const DigitString& a, const DigitString& b) {
        return std::lexicographical_compare_three_way(
            a.digits_.begin(), a.digits_.end(), b.digits_.begin(), b.digits_.end());
    }

private:
    std::vector<uint8_t> digits_;
};

// Counts per digit value; the unit of work for permutation questions.
class DigitMultiset {
public:
    DigitMultiset() = default;
    explicit DigitMultiset(const std::array<uint32_t, 10>& counts);
    static DigitMultiset of(const DigitString& s);
    static DigitMultiset parse(std::string_view text); // same syntax as DigitString

    uint32_t count(uint8_t d) const { return counts_[d]; }
    uint32_t total() const { return total_; }
    unsigned distinct() const;
    bool contains_only(std::initializer_list<uint8_t> allowed) const;

    // Ascending digit vector, e.g. {1:2, 3:1} -> 1,1,3.
    std::vector<uint8_t> ascending() const;
    std::string str() const; // "{1:2, 3:1}"

    friend bool operator==(const DigitMultiset&, const DigitMultiset&) = default;

private:
    std::array<uint32_t, 10> counts_{};
    uint32_t total_ = 0;
};

// The integer with n ones, (10^n - 1) / 9.
struct Repunit {
    uint32_t n;
    explicit Repunit(uint32_t n);
    DigitString digits() const;
    mpz_class value() const;
};

// n - 1 copies of digit a and a single b, canonically with b in the units
// place. a and b must be distinct members of {1, 3, 7, 9} and n >= 2.
struct NearRepunit {
    uint8_t a;
    uint8_t b;
    uint32_t n;
    NearRepunit(uint8_t a, uint8_t b, uint32_t n);
    DigitString digits() const { return with_b_at_offset(0); }
    // b at units-place offset i (offset 0 is the canonical form), i < n.
    DigitString with_b_at_offset(uint32_t i) const;
    mpz_class value() const;
};

DigitString repunit_digits(uint32_t n);
DigitString near_repunit_digits(uint8_t a, uint8_t b, uint32_t n);
DigitMultiset multiset_of(const DigitString& s);

// Positional value mod m, 2 <= m < 2^31. Dispatches to the fastest
// available digit kernel.
uint32_t residue(const DigitString& s, uint32_t m);

mpz_class value_of(const DigitString& s);
uint64_t digit_sum(const DigitString& s);

// Number of distinct arrangements (the multinomial coefficient).
mpz_class permutation_count(const DigitMultiset& ms);

// Distinct permutations in lexicographic order of the digit string.
class PermutationStream {
public:
    explicit PermutationStream(const DigitMultiset& ms);
    std::optional<DigitString> next();

private:
    std::vector<uint8_t> current_;
    bool first_ = true;
    bool done_ = false;
};

// Visits every distinct permutation in lexicographic order; stops early when
// the visitor returns false. Returns true iff the walk completed.
template <typename F>
bool for_each_permutation(const DigitMultiset& ms, F&& visit) {
    std::vector<uint8_t> cur = ms.ascending();
    if (cur.empty()) return true;
    do {
        if (!visit(DigitString(cur))) return false;
    } while (std::next_permutation(cur.begin(), cur.end()));
    return true;
}

std::vector<DigitString> all_permutations(const DigitMultiset& ms);

} // namespace permprime
