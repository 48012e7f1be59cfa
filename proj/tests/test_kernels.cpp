#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "permprime/kernels.hpp"

#include "oracles.hpp"

using namespace permprime;

namespace {

std::vector<uint8_t> random_digits(std::mt19937& rng, std::size_t len) {
    std::uniform_int_distribution<int> d(0, 9);
    std::vector<uint8_t> out(len);
    for (auto& x : out) x = static_cast<uint8_t>(d(rng));
    return out;
}

std::string to_string(const std::vector<uint8_t>& ds) {
    std::string s;
    for (uint8_t d : ds) s.push_back(static_cast<char>('0' + d));
    return s;
}

} // namespace

TEST_CASE("horner residue matches the string oracle") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t len = 1 + rng() % 80;
        auto ds = random_digits(rng, len);
        for (uint32_t m : {2u, 3u, 7u, 17u, 97u, 65521u, 1000000007u}) {
            CAPTURE(to_string(ds));
            CAPTURE(m);
            CHECK(kernels::residue_horner(ds, m) == oracle::string_residue(to_string(ds), m));
        }
    }
}

TEST_CASE("weight-table scalar route agrees with horner") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t len = 1 + rng() % 120;
        auto ds = random_digits(rng, len);
        for (uint32_t m : {2u, 7u, 19u, 9973u, 32749u}) {
            kernels::WeightTable wt(len, m);
            CHECK(kernels::residue_dot_scalar(ds, wt) == kernels::residue_horner(ds, m));
        }
    }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernel matches the scalar kernels exactly") {
    if (!kernels::simd_available()) return;
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t len = 1 + rng() % 300;
        auto ds = random_digits(rng, len);
        for (uint32_t m : {2u, 3u, 7u, 17u, 19u, 23u, 29u, 9973u, 32749u}) {
            kernels::WeightTable wt(len, m);
            uint32_t simd = kernels::residue_dot_avx2(ds, wt);
            CHECK(simd == kernels::residue_dot_scalar(ds, wt));
            CHECK(simd == kernels::residue_horner(ds, m));
        }
    }
}

TEST_CASE("avx2 kernel handles long strings across fold boundaries") {
    if (!kernels::simd_available()) return;
    // 40000 digits of 9 stresses the in-register accumulator folding.
    std::vector<uint8_t> nines(40000, 9);
    for (uint32_t m : {7u, 32749u}) {
        kernels::WeightTable wt(nines.size(), m);
        CHECK(kernels::residue_dot_avx2(nines, wt) == kernels::residue_horner(nines, m));
    }
}
#endif

TEST_CASE("dispatching residue_mod agrees with horner on every width") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t len = 1 + rng() % 200;
        auto ds = random_digits(rng, len);
        for (uint32_t m : {2u, 7u, 32767u, 32768u, 1000003u}) {
            CHECK(kernels::residue_mod(ds, m) == kernels::residue_horner(ds, m));
        }
    }
}

TEST_CASE("batch residues match per-row calls") {
    std::mt19937 rng(4242);
    std::size_t count = 17, len = 33;
    std::vector<uint8_t> rows;
    for (std::size_t i = 0; i < count; ++i) {
        auto ds = random_digits(rng, len);
        rows.insert(rows.end(), ds.begin(), ds.end());
    }
    for (uint32_t m : {7u, 17u, 19u, 12289u}) {
        std::vector<uint32_t> out(count);
        kernels::residue_batch(rows.data(), count, len, m, out.data());
        for (std::size_t i = 0; i < count; ++i) {
            std::span<const uint8_t> row(rows.data() + i * len, len);
            CHECK(out[i] == kernels::residue_horner(row, m));
        }
    }
}

TEST_CASE("kernel preconditions are enforced") {
    std::vector<uint8_t> ds{1, 2, 3};
    CHECK_THROWS_AS((void)kernels::residue_horner(ds, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)kernels::residue_mod(ds, 0), std::invalid_argument);
    CHECK_THROWS_AS(kernels::WeightTable(4, 1u << 15), std::invalid_argument);
    CHECK(!kernels::active_kernel().empty());
}
