#include "permprime/search.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <future>
#include <stdexcept>

#include "permprime/kernels.hpp"
#include "permprime/primality.hpp"

namespace permprime {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// All digit multisets of size n over the given pool, ascending digit order.
std::vector<DigitMultiset> multisets_of_size(uint32_t n, const std::vector<uint8_t>& pool) {
    std::vector<DigitMultiset> out;
    std::array<uint32_t, 10> counts{};
    auto rec = [&](auto&& self, std::size_t from, uint32_t left) -> void {
        if (left == 0) {
            out.push_back(DigitMultiset(counts));
            return;
        }
        if (from >= pool.size()) return;
        for (uint32_t take = 0; take <= left; ++take) {
            counts[pool[from]] = take;
            self(self, from + 1, left - take);
        }
        counts[pool[from]] = 0;
    };
    rec(rec, 0, n);
    return out;
}

std::string weakest_status(const Verdict& v) {
    for (const auto& [perm, pv] : v.evidence)
        if (pv.status == PrimalityVerdict::Status::ProbablePrime) return "probable_prime";
    return "prime";
}

mpz_class smallest_member(const DigitMultiset& ms) {
    mpz_class best = -1;
    for_each_permutation(ms, [&](const DigitString& s) {
        mpz_class v = value_of(s);
        if (best < 0 || v < best) best = v;
        return true;
    });
    return best;
}

struct Tally {
    std::map<std::string, uint64_t> counts;
    std::vector<FoundEntry> found;
    std::vector<std::string> unknowns;
};

void judge_into(const DigitMultiset& ms, const Limits& limits, Tally& t) {
    Verdict v = verdict(ms, limits);
    switch (v.kind) {
        case Verdict::Kind::AbsolutePrime:
            ++t.counts["absolute_prime"];
            t.found.push_back({smallest_member(ms), ms, weakest_status(v)});
            break;
        case Verdict::Kind::Composite:
            ++t.counts[std::string(kind_tag(v.certificate->kind))];
            break;
        case Verdict::Kind::Unknown:
            ++t.counts["unknown"];
            t.unknowns.push_back(ms.str() + ": " + v.unknown->what);
            break;
    }
}

} // namespace

SearchReport enumerate_absolute_primes(uint32_t n, const Limits& limits) {
    if (n == 0) throw std::invalid_argument("length must be >= 1");
    if (n > limits.search_max_digits)
        throw std::invalid_argument("length exceeds the search budget (" +
                                    std::to_string(limits.search_max_digits) + ")");
    auto t0 = Clock::now();

    std::vector<uint8_t> pool;
    bool restricted = n > 3;
    if (restricted)
        pool = {1, 3, 7, 9}; // other digits cannot survive past three digits
    else
        pool = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<DigitMultiset> universe = multisets_of_size(n, pool);

    SearchReport report;
    report.parameters = {{"digits", std::to_string(n)},
                         {"digit_pool", restricted ? "1379" : "0123456789"},
                         {"limits", limits.name}};
    report.candidates = universe.size();

    unsigned workers = limits.threads == 0 ? 1 : limits.threads;
    if (universe.size() < workers)
        workers = static_cast<unsigned>(std::max<std::size_t>(universe.size(), 1));
    std::vector<Tally> parts(workers);
    if (workers <= 1) {
        for (const auto& ms : universe) judge_into(ms, limits, parts[0]);
    } else {
        std::vector<std::future<void>> futs;
        std::size_t chunk = (universe.size() + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::size_t lo = w * chunk;
            std::size_t hi = std::min(universe.size(), lo + chunk);
            futs.push_back(std::async(std::launch::async, [&, lo, hi, w] {
                for (std::size_t i = lo; i < hi; ++i)
                    judge_into(universe[i], limits, parts[w]);
            }));
        }
        for (auto& f : futs) f.get();
    }
    for (auto& part : parts) {
        for (auto& [k, c] : part.counts) report.tallies[k] += c;
        report.found.insert(report.found.end(), part.found.begin(), part.found.end());
        report.unknowns.insert(report.unknowns.end(), part.unknowns.begin(),
                               part.unknowns.end());
    }
    std::sort(report.found.begin(), report.found.end(),
              [](const FoundEntry& x, const FoundEntry& y) { return x.value < y.value; });

    // Every candidate must land in exactly one bucket.
    uint64_t total = 0;
    for (const auto& [k, c] : report.tallies) total += c;
    if (total != report.candidates)
        throw std::logic_error("tally buckets do not add up to the candidate count");

    report.elapsed_seconds = seconds_since(t0);
    return report;
}

std::vector<uint64_t> brute_force_absolute_primes(uint32_t n) {
    if (n == 0 || n > 9) throw std::invalid_argument("brute force handles 1..9 digits");

    // Trial-division primality, independent of the tuned test.
    auto slow_prime = [](uint64_t x) {
        if (x < 2) return false;
        for (uint64_t d = 2; d * d <= x; ++d)
            if (x % d == 0) return false;
        return true;
    };

    uint64_t lo = 1;
    for (uint32_t i = 1; i < n; ++i) lo *= 10;
    if (n == 1) lo = 0;
    uint64_t hi = lo == 0 ? 10 : lo * 10;

    std::vector<uint64_t> out;
    for (uint64_t v = lo; v < hi; ++v) {
        if (!slow_prime(v)) continue;
        DigitMultiset ms = DigitMultiset::of(DigitString::parse(std::to_string(v)));
        bool all = for_each_permutation(ms, [&](const DigitString& s) {
            mpz_class pv = value_of(s);
            // Shorter values from leading zeros still have to be prime.
            return pv.fits_ulong_p() && slow_prime(pv.get_ui());
        });
        if (all) out.push_back(v);
    }
    return out;
}

namespace {

// The divisor hunt for one (a, b, n) row: try each prime against all n
// displacements of b through the digit-residue kernels.
std::optional<Certificate> displacement_divisor(const NearRepunit& shape,
                                                const std::vector<uint32_t>& prime_order) {
    uint32_t n = shape.n;
    std::vector<uint8_t> rows(static_cast<std::size_t>(n) * n, shape.a);
    for (uint32_t i = 0; i < n; ++i)
        rows[static_cast<std::size_t>(i) * n + (n - 1 - i)] = shape.b;
    std::vector<uint32_t> residues(n);
    for (uint32_t p : prime_order) {
        kernels::residue_batch(rows.data(), n, n, p, residues.data());
        for (uint32_t i = 0; i < n; ++i) {
            if (residues[i] != 0) continue;
            DigitString witness = shape.with_b_at_offset(i);
            if (value_of(witness) <= p) continue; // the displacement IS p
            return Certificate{CertKind::PermutationDivisor, "displacement-scan", witness,
                               mpz_class(p), {}};
        }
    }
    return std::nullopt;
}

} // namespace

SearchReport scan_near_repunits(uint32_t n_lo, uint32_t n_hi, const Limits& limits) {
    if (n_lo < 4) throw std::invalid_argument("scan starts at length 4");
    if (n_lo > n_hi) throw std::invalid_argument("empty scan range");
    if (n_hi > limits.scan_max_digits)
        throw std::invalid_argument("scan range exceeds the budget (" +
                                    std::to_string(limits.scan_max_digits) + ")");
    auto t0 = Clock::now();

    SearchReport report;
    report.parameters = {{"from", std::to_string(n_lo)},
                         {"to", std::to_string(n_hi)},
                         {"limits", limits.name}};

    // Divisors that do the bulk of the work first, then the small primes.
    std::vector<uint32_t> prime_order = {3, 17, 19};
    for (uint32_t p : sieve_primes(100)) {
        if (p == 2 || p == 3 || p == 5 || p == 17 || p == 19) continue;
        prime_order.push_back(p);
    }

    constexpr std::array<uint8_t, 4> digits{1, 3, 7, 9};
    for (uint8_t a : digits) {
        for (uint8_t b : digits) {
            if (a == b) continue;
            for (uint32_t n = n_lo; n <= n_hi; ++n) {
                ++report.candidates;
                NearRepunit shape(a, b, n);
                DigitMultiset ms = multiset_of(shape.digits());

                // Digit sum settles a pair outright when 3 divides it.
                if ((static_cast<uint64_t>(a) * (n - 1) + b) % 3 == 0) {
                    Certificate cert{CertKind::DigitSum3, "digit-sum", shape.digits(), 3, {}};
                    assert(check_certificate(cert, ms).ok);
                    ++report.tallies[std::string(kind_tag(cert.kind))];
                    report.rows.push_back({a, b, n, std::move(cert)});
                    continue;
                }
                // Order constraints for the small primitive-root primes.
                bool done = false;
                for (uint64_t p : {7ull, 17ull, 19ull}) {
                    auto r = lemma6_constraint(a, b, n, p);
                    if (r.status == Lemma6Result::Status::Certified) {
                        assert(check_certificate(*r.certificate, ms).ok);
                        ++report.tallies[std::string(kind_tag(r.certificate->kind))];
                        report.rows.push_back({a, b, n, std::move(*r.certificate)});
                        done = true;
                        break;
                    }
                }
                if (done) continue;
                // Sweep the displacements against small primes directly.
                if (auto cert = displacement_divisor(shape, prime_order)) {
                    assert(check_certificate(*cert, ms).ok);
                    ++report.tallies[std::string(kind_tag(cert->kind))];
                    report.rows.push_back({a, b, n, std::move(*cert)});
                    continue;
                }
                // Last resort: test and factor each displacement.
                Verdict v = verdict(ms, limits);
                if (v.kind == Verdict::Kind::Composite) {
                    ++report.tallies[std::string(kind_tag(v.certificate->kind))];
                    report.rows.push_back({a, b, n, std::move(*v.certificate)});
                } else if (v.kind == Verdict::Kind::AbsolutePrime) {
                    ++report.tallies["absolute_prime"];
                    report.found.push_back({smallest_member(ms), ms, weakest_status(v)});
                } else {
                    ++report.tallies["unknown"];
                    report.unknowns.push_back(ms.str() + ": " + v.unknown->what);
                }
            }
        }
    }
    report.elapsed_seconds = seconds_since(t0);
    return report;
}

std::vector<OrderRecord> useful_primes(uint64_t limit) {
    if (limit < 7) throw std::invalid_argument("limit must be >= 7");
    if (limit > 100000000) throw std::invalid_argument("limit above 10^8 is not supported");
    std::vector<OrderRecord> out;
    for (uint32_t p : sieve_primes(static_cast<uint32_t>(limit))) {
        if (p < 7) continue;
        OrderRecord rec = multiplicative_order_10(p);
        if (rec.primitive_root_10) out.push_back(rec);
    }
    return out;
}

} // namespace permprime
