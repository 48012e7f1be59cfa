// Compiled with -mavx2; callers must gate on simd_available().
#include "permprime/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cassert>

namespace permprime::kernels {

namespace {

uint64_t hsum_epi32(__m256i v) {
    // Lanes are nonnegative products of 15-bit weights, never near INT32_MAX.
    alignas(32) uint32_t lane[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lane), v);
    uint64_t s = 0;
    for (uint32_t x : lane) s += x;
    return s;
}

} // namespace

uint32_t residue_dot_avx2(std::span<const uint8_t> digits, const WeightTable& weights) {
    assert(digits.size() == weights.length());
    const uint8_t* d = digits.data();
    const uint16_t* w = weights.data();
    std::size_t n = digits.size();
    std::size_t i = 0;
    uint64_t total = 0;
    __m256i acc = _mm256_setzero_si256();
    std::size_t block = 0;
    for (; i + 16 <= n; i += 16) {
        __m256i dv = _mm256_cvtepu8_epi16(
            _mm_loadu_si128(reinterpret_cast<const __m128i*>(d + i)));
        __m256i wv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + i));
        // madd pairs: each i32 lane gains at most 2 * 9 * (2^15 - 1) < 2^20,
        // so 2048 blocks stay below 2^31.
        acc = _mm256_add_epi32(acc, _mm256_madd_epi16(dv, wv));
        if (++block == 2048) {
            total += hsum_epi32(acc);
            acc = _mm256_setzero_si256();
            block = 0;
        }
    }
    total += hsum_epi32(acc);
    for (; i < n; ++i) total += static_cast<uint64_t>(d[i]) * w[i];
    return static_cast<uint32_t>(total % weights.modulus());
}

} // namespace permprime::kernels

#endif
