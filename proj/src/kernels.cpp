#include "permprime/kernels.hpp"

#include <cassert>
#include <stdexcept>

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace permprime::kernels {

WeightTable::WeightTable(std::size_t len, uint32_t m) : m_(m), w_(len) {
    if (m < 2 || m >= kVectorModulusLimit)
        throw std::invalid_argument("weight table modulus must be in [2, 2^15)");
    uint32_t w = 1 % m;
    for (std::size_t j = len; j-- > 0;) {
        w_[j] = static_cast<uint16_t>(w);
        w = (w * 10u) % m;
    }
}

uint32_t residue_horner(std::span<const uint8_t> digits, uint32_t m) {
    if (m < 2 || m >= (1u << 31))
        throw std::invalid_argument("modulus must be in [2, 2^31)");
    // r < 2^31 keeps r*10+9 well inside uint64_t.
    uint64_t r = 0;
    for (uint8_t d : digits) r = (r * 10 + d) % m;
    return static_cast<uint32_t>(r);
}

uint32_t residue_dot_scalar(std::span<const uint8_t> digits, const WeightTable& weights) {
    assert(digits.size() == weights.length());
    const uint16_t* w = weights.data();
    uint64_t acc = 0; // max 9 * 2^15 * len, safe far beyond any digit budget
    for (std::size_t j = 0; j < digits.size(); ++j)
        acc += static_cast<uint64_t>(digits[j]) * w[j];
    return static_cast<uint32_t>(acc % weights.modulus());
}

#if defined(__aarch64__)
uint32_t residue_dot_neon(std::span<const uint8_t> digits, const WeightTable& weights) {
    assert(digits.size() == weights.length());
    const uint8_t* d = digits.data();
    const uint16_t* w = weights.data();
    std::size_t n = digits.size();
    std::size_t i = 0;
    uint64_t total = 0;
    uint32x4_t acc0 = vdupq_n_u32(0);
    uint32x4_t acc1 = vdupq_n_u32(0);
    std::size_t block = 0;
    for (; i + 8 <= n; i += 8) {
        uint16x8_t dv = vmovl_u8(vld1_u8(d + i));
        uint16x8_t wv = vld1q_u16(w + i);
        acc0 = vmlal_u16(acc0, vget_low_u16(dv), vget_low_u16(wv));
        acc1 = vmlal_u16(acc1, vget_high_u16(dv), vget_high_u16(wv));
        // Each step adds at most 9 * (2^15 - 1) < 2^19 per lane; fold before
        // a uint32 lane can wrap.
        if (++block == 4096) {
            total += vaddvq_u32(acc0);
            total += vaddvq_u32(acc1);
            acc0 = vdupq_n_u32(0);
            acc1 = vdupq_n_u32(0);
            block = 0;
        }
    }
    total += vaddvq_u32(acc0);
    total += vaddvq_u32(acc1);
    for (; i < n; ++i) total += static_cast<uint64_t>(d[i]) * w[i];
    return static_cast<uint32_t>(total % weights.modulus());
}
#endif

bool simd_available() {
#if defined(__x86_64__) || defined(_M_X64)
    static const bool ok = __builtin_cpu_supports("avx2");
    return ok;
#elif defined(__aarch64__)
    return true;
#else
    return false;
#endif
}

std::string_view active_kernel() {
#if defined(__x86_64__) || defined(_M_X64)
    return simd_available() ? "avx2" : "scalar";
#elif defined(__aarch64__)
    return "neon";
#else
    return "scalar";
#endif
}

namespace {

uint32_t residue_dot_dispatch(std::span<const uint8_t> digits, const WeightTable& weights) {
#if defined(__x86_64__) || defined(_M_X64)
    if (simd_available()) return residue_dot_avx2(digits, weights);
#elif defined(__aarch64__)
    return residue_dot_neon(digits, weights);
#endif
    return residue_dot_scalar(digits, weights);
}

} // namespace

uint32_t residue_mod(std::span<const uint8_t> digits, uint32_t m) {
    if (m < kVectorModulusLimit && digits.size() >= kVectorMinDigits && simd_available()) {
        WeightTable weights(digits.size(), m);
        return residue_dot_dispatch(digits, weights);
    }
    return residue_horner(digits, m);
}

void residue_batch(const uint8_t* rows, std::size_t count, std::size_t len,
                   uint32_t m, uint32_t* out) {
    if (len == 0) throw std::invalid_argument("residue_batch needs len >= 1");
    if (m >= 2 && m < kVectorModulusLimit && len >= kVectorMinDigits) {
        WeightTable weights(len, m);
        for (std::size_t r = 0; r < count; ++r)
            out[r] = residue_dot_dispatch({rows + r * len, len}, weights);
        return;
    }
    for (std::size_t r = 0; r < count; ++r)
        out[r] = residue_horner({rows + r * len, len}, m);
}

} // namespace permprime::kernels
