#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "permprime/search.hpp"

#include "oracles.hpp"

using namespace permprime;

namespace {

std::vector<uint64_t> found_values(const SearchReport& r) {
    std::vector<uint64_t> out;
    for (const FoundEntry& e : r.found) out.push_back(e.value.get_ui());
    std::sort(out.begin(), out.end());
    return out;
}

uint64_t tally_sum(const SearchReport& r) {
    uint64_t s = 0;
    for (const auto& [k, v] : r.tallies) s += v;
    return s;
}

} // namespace

TEST_CASE("search agrees with the unfiltered brute force") {
    for (uint32_t n : {1u, 2u, 3u}) {
        SearchReport rep = enumerate_absolute_primes(n);
        // Brute force reports every qualifying value; collapse to one class
        // representative (the smallest member) to compare.
        std::map<std::string, uint64_t> classes;
        for (uint64_t v : brute_force_absolute_primes(n)) {
            std::string key = std::to_string(v);
            std::sort(key.begin(), key.end());
            auto [it, fresh] = classes.emplace(key, v);
            if (!fresh && v < it->second) it->second = v;
        }
        std::vector<uint64_t> brute;
        for (const auto& [k, v] : classes) brute.push_back(v);
        std::sort(brute.begin(), brute.end());
        CAPTURE(n);
        CHECK(found_values(rep) == brute);
        CHECK(tally_sum(rep) == rep.candidates);
        CHECK(rep.unknowns.empty());
    }
}

TEST_CASE("search: the known small classes") {
    CHECK(found_values(enumerate_absolute_primes(1)) ==
          std::vector<uint64_t>{2, 3, 5, 7});
    CHECK(found_values(enumerate_absolute_primes(2)) ==
          std::vector<uint64_t>{11, 13, 17, 37, 79});
    CHECK(found_values(enumerate_absolute_primes(3)) ==
          std::vector<uint64_t>{113, 199, 337});
}

TEST_CASE("search: lengths four through six are empty") {
    for (uint32_t n : {4u, 5u, 6u}) {
        SearchReport rep = enumerate_absolute_primes(n);
        CAPTURE(n);
        CHECK(rep.found.empty());
        CHECK(rep.unknowns.empty());
        CHECK(rep.candidates > 0);
        CHECK(tally_sum(rep) == rep.candidates);
        CHECK(brute_force_absolute_primes(n).empty());
    }
}

TEST_CASE("search: candidate counts match the combinatorics") {
    // Length 4 over {1,3,7,9}: multisets with repetition, C(4+3,3) = 35.
    CHECK(enumerate_absolute_primes(4).candidates == 35);
    // Length 2 over all digits: C(2+9,9) = 55.
    CHECK(enumerate_absolute_primes(2).candidates == 55);
}

TEST_CASE("search: found entries re-validate under the full verdict") {
    SearchReport rep = enumerate_absolute_primes(2);
    REQUIRE(rep.found.size() == 5);
    for (const FoundEntry& e : rep.found) {
        Verdict v = verdict(e.digits);
        CHECK(v.kind == Verdict::Kind::AbsolutePrime);
        CHECK(e.status == "prime");
        // Smallest member has no leading zero.
        CHECK(oracle::absolute_prime_value(e.value.get_ui()));
    }
}

TEST_CASE("search: thread count does not change the answer") {
    Limits single;
    single.threads = 1;
    Limits quad;
    quad.threads = 4;
    SearchReport a = enumerate_absolute_primes(4, single);
    SearchReport b = enumerate_absolute_primes(4, quad);
    CHECK(found_values(a) == found_values(b));
    CHECK(a.candidates == b.candidates);
    CHECK(a.tallies == b.tallies);
}

TEST_CASE("search: over-budget lengths throw") {
    Limits quick = Limits::preset("quick");
    CHECK_THROWS_AS(enumerate_absolute_primes(quick.search_max_digits + 1, quick),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerate_absolute_primes(0), std::invalid_argument);
}

TEST_CASE("scan: every row in 7..16 is certified") {
    SearchReport rep = scan_near_repunits(7, 16);
    // 12 ordered pairs over {1,3,7,9}, 10 lengths each.
    CHECK(rep.candidates == 120);
    REQUIRE(rep.rows.size() == 120);
    CHECK(rep.found.empty());
    CHECK(rep.unknowns.empty());

    std::set<std::tuple<int, int, uint32_t>> seen;
    for (const ScanRow& row : rep.rows) {
        DigitMultiset ms = multiset_of(near_repunit_digits(row.a, row.b, row.n));
        CertCheck chk = check_certificate(row.certificate, ms);
        CAPTURE(int(row.a));
        CAPTURE(int(row.b));
        CAPTURE(row.n);
        CAPTURE(chk.why);
        CHECK(chk.ok);
        seen.insert({row.a, row.b, row.n});
    }
    CHECK(seen.size() == 120);

    // The pipeline only ever needs the small primes at these lengths; a
    // direct prime factor is the permitted fallback.
    for (const ScanRow& row : rep.rows) {
        const mpz_class& d = row.certificate.divisor;
        bool small = (d == 3 || d == 7 || d == 17 || d == 19);
        if (!small) CHECK(is_prime(d).prime_or_probable());
    }
}

TEST_CASE("scan: tallies split by certificate rule") {
    SearchReport rep = scan_near_repunits(7, 16);
    uint64_t rows = 0;
    for (const auto& [k, v] : rep.tallies) rows += v;
    CHECK(rows == 120);
    CHECK(rep.tallies.count("digit_sum_3") == 1);
    CHECK(rep.tallies.at("digit_sum_3") == 42);
}

TEST_CASE("scan: bad ranges throw") {
    CHECK_THROWS_AS(scan_near_repunits(3, 10), std::invalid_argument);
    CHECK_THROWS_AS(scan_near_repunits(10, 9), std::invalid_argument);
    Limits quick = Limits::preset("quick");
    CHECK_THROWS_AS(scan_near_repunits(7, quick.scan_max_digits + 1, quick),
                    std::invalid_argument);
}

TEST_CASE("useful primes to 100") {
    std::vector<OrderRecord> ups = useful_primes(100);
    std::vector<uint64_t> ps;
    for (const OrderRecord& r : ups) {
        ps.push_back(r.p);
        CHECK(r.primitive_root_10);
        CHECK(r.h == r.p - 1);
    }
    CHECK(ps == std::vector<uint64_t>{7, 17, 19, 23, 29, 47, 59, 61, 97});
}

TEST_CASE("useful primes: independent definition check") {
    // Recompute by definition for every prime in range.
    std::vector<OrderRecord> ups = useful_primes(500);
    std::set<uint64_t> claimed;
    for (const OrderRecord& r : ups) claimed.insert(r.p);
    for (uint64_t p = 7; p <= 500; ++p) {
        if (!oracle::slow_prime(p)) continue;
        uint64_t x = 10 % p, h = 1;
        while (x != 1) {
            x = x * 10 % p;
            ++h;
        }
        CHECK((h == p - 1) == claimed.count(p));
    }
    CHECK_THROWS_AS(useful_primes(5), std::invalid_argument);
    CHECK_THROWS_AS(useful_primes(200000000), std::invalid_argument);
}
