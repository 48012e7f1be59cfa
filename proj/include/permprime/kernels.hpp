#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace permprime::kernels {

// Vector kernels take the dot-product route: value(d) mod m equals
// sum(d[j] * w[j]) mod m with w[j] = 10^(len-1-j) mod m. They require
// m < kVectorModulusLimit so weights fit 15 bits; wider moduli and short
// strings stay on the scalar Horner route.
inline constexpr uint32_t kVectorModulusLimit = 1u << 15;
inline constexpr std::size_t kVectorMinDigits = 16;

// Positional weights 10^(len-1-j) mod m for a fixed string length, reused
// across a batch of same-length strings. Only valid for m < 2^15.
class WeightTable {
public:
    WeightTable(std::size_t len, uint32_t m);

    uint32_t modulus() const { return m_; }
    std::size_t length() const { return w_.size(); }
    const uint16_t* data() const { return w_.data(); }

private:
    uint32_t m_;
    std::vector<uint16_t> w_;
};

// Scalar reference: Horner evaluation, one digit at a time. Accepts any
// 2 <= m < 2^31.
uint32_t residue_horner(std::span<const uint8_t> digits, uint32_t m);

// Second scalar route through the weight table; used to cross-check the
// vector kernels and as their tail handler.
uint32_t residue_dot_scalar(std::span<const uint8_t> digits, const WeightTable& weights);

#if defined(__x86_64__) || defined(_M_X64)
// AVX2 variant. Call only when simd_available(); digits.size() must equal
// weights.length().
uint32_t residue_dot_avx2(std::span<const uint8_t> digits, const WeightTable& weights);
#endif
#if defined(__aarch64__)
uint32_t residue_dot_neon(std::span<const uint8_t> digits, const WeightTable& weights);
#endif

bool simd_available();
std::string_view active_kernel(); // "avx2", "neon" or "scalar"

// Runtime-dispatched residue of one digit string, 2 <= m < 2^31.
uint32_t residue_mod(std::span<const uint8_t> digits, uint32_t m);

// Residues of `count` contiguous rows of `len` digits each, sharing one
// weight table. out must hold `count` entries.
void residue_batch(const uint8_t* rows, std::size_t count, std::size_t len,
                   uint32_t m, uint32_t* out);

} // namespace permprime::kernels
