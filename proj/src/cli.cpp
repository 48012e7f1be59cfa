#include "permprime/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "permprime/certify.hpp"
#include "permprime/digits.hpp"
#include "permprime/document.hpp"
#include "permprime/limits.hpp"
#include "permprime/modular.hpp"
#include "permprime/primality.hpp"
#include "permprime/search.hpp"

namespace permprime::cli {

namespace {

struct Options {
    std::string format = "text";
    std::string limits_name;
    bool stable = false;
    bool strict = false;
    unsigned threads = 0;
};

Limits resolve_limits(const Options& opt) {
    std::string name = opt.limits_name;
    if (name.empty()) {
        if (const char* env = std::getenv("PERMPRIME_LIMITS")) name = env;
    }
    Limits limits = Limits::preset(name.empty() ? "default" : name);
    if (opt.threads > 0)
        limits.threads = opt.threads;
    else
        limits.threads = std::max(1u, std::thread::hardware_concurrency());
    return limits;
}

bool structured(const Options& opt) { return opt.format == "structured"; }

std::string status_tag(PrimalityVerdict::Status s) {
    switch (s) {
        case PrimalityVerdict::Status::Prime: return "prime";
        case PrimalityVerdict::Status::ProbablePrime: return "probable_prime";
        case PrimalityVerdict::Status::Composite: return "composite";
    }
    return "?";
}

std::string verdict_tag(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::AbsolutePrime: return "absolute_prime";
        case Verdict::Kind::Composite: return "composite";
        case Verdict::Kind::Unknown: return "unknown";
    }
    return "?";
}

void put_certificate(OutputDocument& doc, const std::string& prefix, const Certificate& c) {
    doc.add(prefix + ".kind", kind_tag(c.kind));
    doc.add(prefix + ".rule", c.rule);
    doc.add(prefix + ".witness", c.witness.str());
    doc.add(prefix + ".divisor", c.divisor.get_str());
    if (c.divisor >= 2) {
        mpz_class cofactor = c.value() / c.divisor;
        doc.add(prefix + ".cofactor", cofactor.get_str());
    }
    if (!c.note.empty()) doc.add(prefix + ".note", c.note);
}

void text_certificate(std::ostream& out, const Certificate& c) {
    out << "certificate: witness " << c.witness.str();
    if (c.divisor >= 2) {
        out << ", divisor " << c.divisor.get_str();
    }
    out << " (" << kind_tag(c.kind) << ", rule " << c.rule << ")\n";
    if (c.divisor >= 2) {
        mpz_class cofactor = c.value() / c.divisor;
        out << "  " << c.value().get_str() << " = " << c.divisor.get_str() << " × "
            << cofactor.get_str() << "\n";
    }
    if (!c.note.empty()) out << "  " << c.note << "\n";
}

void put_verdict(OutputDocument& doc, const Verdict& v) {
    doc.add("result.verdict", verdict_tag(v.kind));
    switch (v.kind) {
        case Verdict::Kind::Composite:
            put_certificate(doc, "result.certificate", *v.certificate);
            break;
        case Verdict::Kind::AbsolutePrime: {
            doc.add("result.permutations",
                    static_cast<unsigned long long>(v.evidence.size()));
            for (std::size_t i = 0; i < v.evidence.size(); ++i) {
                const auto& [perm, pv] = v.evidence[i];
                std::string p = "result.evidence." + std::to_string(i);
                doc.add(p + ".permutation", perm.str());
                doc.add(p + ".status", status_tag(pv.status));
                if (pv.status == PrimalityVerdict::Status::ProbablePrime)
                    doc.add(p + ".rounds", static_cast<unsigned long long>(pv.rounds));
            }
            break;
        }
        case Verdict::Kind::Unknown:
            doc.add("result.unknown.reason", v.unknown->what);
            doc.add("result.unknown.permutations", v.unknown->permutations.get_str());
            doc.add("result.unknown.digits",
                    static_cast<unsigned long long>(v.unknown->digit_length));
            break;
    }
}

void text_verdict(std::ostream& out, const Verdict& v) {
    out << "verdict: " << verdict_tag(v.kind) << "\n";
    switch (v.kind) {
        case Verdict::Kind::Composite:
            text_certificate(out, *v.certificate);
            break;
        case Verdict::Kind::AbsolutePrime:
            out << "permutations: " << v.evidence.size() << "\n";
            for (const auto& [perm, pv] : v.evidence) {
                out << "  " << perm.str() << ": " << status_tag(pv.status);
                if (pv.status == PrimalityVerdict::Status::ProbablePrime)
                    out << " (" << pv.rounds << " rounds)";
                out << "\n";
            }
            break;
        case Verdict::Kind::Unknown:
            out << "reason: " << v.unknown->what << "\n";
            out << "permutations: " << v.unknown->permutations.get_str() << "\n";
            out << "digit length: " << v.unknown->digit_length << "\n";
            break;
    }
}

void put_report(OutputDocument& doc, const SearchReport& report) {
    doc.add("result.candidates", static_cast<unsigned long long>(report.candidates));
    doc.add("result.found.count", static_cast<unsigned long long>(report.found.size()));
    for (std::size_t i = 0; i < report.found.size(); ++i) {
        std::string p = "result.found." + std::to_string(i);
        doc.add(p + ".value", report.found[i].value.get_str());
        doc.add(p + ".digits", report.found[i].digits.str());
        doc.add(p + ".status", report.found[i].status);
    }
    if (!report.rows.empty()) {
        doc.add("result.rows.count", static_cast<unsigned long long>(report.rows.size()));
        for (std::size_t i = 0; i < report.rows.size(); ++i) {
            std::string p = "result.rows." + std::to_string(i);
            const ScanRow& row = report.rows[i];
            doc.add(p + ".a", static_cast<unsigned long long>(row.a));
            doc.add(p + ".b", static_cast<unsigned long long>(row.b));
            doc.add(p + ".length", static_cast<unsigned long long>(row.n));
            put_certificate(doc, p + ".certificate", row.certificate);
        }
    }
    for (const auto& [k, c] : report.tallies)
        doc.add("result.tally." + k, static_cast<unsigned long long>(c));
    doc.add("result.unknowns.count", static_cast<unsigned long long>(report.unknowns.size()));
    for (std::size_t i = 0; i < report.unknowns.size(); ++i)
        doc.add("result.unknowns." + std::to_string(i), report.unknowns[i]);
}

void text_report(std::ostream& out, const SearchReport& report) {
    out << "candidates: " << report.candidates << "\n";
    for (const ScanRow& row : report.rows) {
        out << "pair (" << int(row.a) << "," << int(row.b) << ") length " << row.n
            << ": witness " << row.certificate.witness.str() << " divisible by "
            << row.certificate.divisor.get_str() << " (" << kind_tag(row.certificate.kind)
            << ")\n";
    }
    out << "absolute primes: " << report.found.size() << "\n";
    for (const FoundEntry& f : report.found)
        out << "  " << f.value.get_str() << " (digits " << f.digits.str() << ", " << f.status
            << ")\n";
    if (!report.tallies.empty()) {
        out << "tally:";
        for (const auto& [k, c] : report.tallies) out << " " << k << "=" << c;
        out << "\n";
    }
    out << "unknowns: " << report.unknowns.size() << "\n";
    for (const std::string& u : report.unknowns) out << "  " << u << "\n";
}

struct Command {
    OutputDocument doc;
    std::ostringstream text;
    int code = 0;
};

int emit(Command& c, const Options& opt, std::ostream& out,
         std::chrono::steady_clock::time_point t0) {
    if (structured(opt)) {
        if (!opt.stable) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            c.doc.add("elapsed_ms", static_cast<long long>(ms));
        }
        out << c.doc.serialize();
    } else {
        out << c.text.str();
        if (!opt.stable) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            out << "elapsed: " << ms << " ms\n";
        }
    }
    return c.code;
}

int verdict_exit_code(const Verdict& v, const Options& opt) {
    return (v.kind == Verdict::Kind::Unknown && opt.strict) ? 2 : 0;
}

Command cmd_check(const std::string& number, const Options& opt, const Limits& limits) {
    DigitMultiset ms = DigitMultiset::parse(number);
    Verdict v = verdict(ms, limits);
    Command c;
    c.doc = OutputDocument("check");
    c.doc.add("input.number", number);
    c.doc.add("input.limits", limits.name);
    put_verdict(c.doc, v);
    c.text << "number: " << number << "\n";
    c.text << "digits: " << ms.str() << "\n";
    text_verdict(c.text, v);
    c.code = verdict_exit_code(v, opt);
    return c;
}

Command cmd_certify(const std::string& number, const Options& opt, const Limits& limits) {
    DigitMultiset ms = DigitMultiset::parse(number);
    Verdict v = verdict(ms, limits);
    Command c;
    c.doc = OutputDocument("certify");
    c.doc.add("input.number", number);
    c.doc.add("input.limits", limits.name);
    c.text << "number: " << number << "\n";
    if (v.kind == Verdict::Kind::Composite) {
        put_certificate(c.doc, "result.certificate", *v.certificate);
        text_certificate(c.text, *v.certificate);
    } else {
        c.doc.add("result.verdict", verdict_tag(v.kind));
        if (v.kind == Verdict::Kind::AbsolutePrime) {
            c.text << "no compositeness certificate: every permutation is prime\n";
        } else {
            c.doc.add("result.unknown.reason", v.unknown->what);
            c.text << "no certificate: " << v.unknown->what << "\n";
        }
        c.code = verdict_exit_code(v, opt);
    }
    return c;
}

Command cmd_search(uint32_t digits, const Options& opt, const Limits& limits) {
    SearchReport report = enumerate_absolute_primes(digits, limits);
    Command c;
    c.doc = OutputDocument("search");
    for (const auto& [k, v] : report.parameters) c.doc.add("input." + k, v);
    put_report(c.doc, report);
    c.text << "search: " << digits << "-digit multisets\n";
    for (const auto& [k, v] : report.parameters) c.text << k << ": " << v << "\n";
    text_report(c.text, report);
    if (opt.strict && !report.unknowns.empty()) c.code = 2;
    return c;
}

Command cmd_scan(uint32_t from, uint32_t to, const Options& opt, const Limits& limits) {
    SearchReport report = scan_near_repunits(from, to, limits);
    Command c;
    c.doc = OutputDocument("scan");
    for (const auto& [k, v] : report.parameters) c.doc.add("input." + k, v);
    put_report(c.doc, report);
    c.text << "scan: lengths " << from << ".." << to << "\n";
    text_report(c.text, report);
    if (opt.strict && !report.unknowns.empty()) c.code = 2;
    return c;
}

Command cmd_order(uint64_t p) {
    OrderRecord rec = multiplicative_order_10(p);
    Command c;
    c.doc = OutputDocument("order");
    c.doc.add("input.p", static_cast<unsigned long long>(p));
    c.doc.add("result.p", static_cast<unsigned long long>(rec.p));
    c.doc.add("result.order", static_cast<unsigned long long>(rec.h));
    c.doc.add("result.primitive_root", rec.primitive_root_10 ? "true" : "false");
    c.text << "p: " << rec.p << "\n";
    c.text << "order of 10: " << rec.h << "\n";
    c.text << "primitive root: " << (rec.primitive_root_10 ? "yes" : "no") << "\n";
    return c;
}

Command cmd_repunit(uint32_t n, bool factor, const Options& opt, const Limits& limits) {
    Command c;
    c.doc = OutputDocument("repunit");
    c.doc.add("input.n", static_cast<unsigned long long>(n));
    c.doc.add("input.factor", factor ? "true" : "false");
    c.doc.add("input.limits", limits.name);
    mpz_class value = Repunit(n).value();
    PrimalityVerdict pv = is_prime(value, limits.probable_rounds);
    c.doc.add("result.n", static_cast<unsigned long long>(n));
    c.doc.add("result.value", value.get_str());
    c.doc.add("result.status", status_tag(pv.status));
    if (pv.status == PrimalityVerdict::Status::ProbablePrime)
        c.doc.add("result.rounds", static_cast<unsigned long long>(pv.rounds));
    c.text << "length: " << n << "\n";
    c.text << "value: " << value.get_str() << "\n";
    c.text << "status: " << status_tag(pv.status);
    if (pv.status == PrimalityVerdict::Status::ProbablePrime)
        c.text << " (" << pv.rounds << " rounds)";
    c.text << "\n";
    if (factor) {
        Factorization f = factorize(value, limits.factor_effort);
        c.doc.add("result.factors.count", static_cast<unsigned long long>(f.factors.size()));
        std::string line;
        for (std::size_t i = 0; i < f.factors.size(); ++i) {
            std::string p = "result.factors." + std::to_string(i);
            c.doc.add(p + ".prime", f.factors[i].first.get_str());
            c.doc.add(p + ".exponent", static_cast<unsigned long long>(f.factors[i].second));
            if (!line.empty()) line += " × ";
            line += f.factors[i].first.get_str();
            if (f.factors[i].second > 1) line += "^" + std::to_string(f.factors[i].second);
        }
        c.text << "factors: " << line << "\n";
    }
    (void)opt;
    return c;
}

Command cmd_bound(const std::vector<uint64_t>& primes, std::optional<uint64_t> up_to,
                  uint64_t start) {
    std::vector<OrderRecord> records;
    std::string primes_echo;
    if (up_to) {
        records = useful_primes(*up_to);
    } else {
        for (uint64_t p : primes) records.push_back(multiplicative_order_10(p));
    }
    for (const OrderRecord& r : records) {
        if (!primes_echo.empty()) primes_echo += ",";
        primes_echo += std::to_string(r.p);
    }
    std::vector<BoundStep> chain;
    mpz_class modulus = theorem2_bound(records, start, &chain);

    Command c;
    c.doc = OutputDocument("bound");
    if (up_to) c.doc.add("input.up_to", static_cast<unsigned long long>(*up_to));
    c.doc.add("input.primes", primes_echo);
    c.doc.add("input.start", static_cast<unsigned long long>(start));
    c.doc.add("result.modulus", modulus.get_str());
    c.doc.add("result.chain.count", static_cast<unsigned long long>(chain.size()));
    for (std::size_t i = 0; i < chain.size(); ++i) {
        std::string p = "result.chain." + std::to_string(i);
        c.doc.add(p + ".p", static_cast<unsigned long long>(chain[i].p));
        c.doc.add(p + ".modulus", chain[i].modulus.get_str());
        c.doc.add(p + ".lower", chain[i].lower.get_str());
    }
    c.text << "start: " << start << "\n";
    for (const BoundStep& s : chain)
        c.text << "p=" << s.p << ": lcm=" << s.modulus.get_str()
               << " bound=" << s.lower.get_str() << "\n";
    c.text << "modulus: " << modulus.get_str() << "\n";
    return c;
}

Command cmd_useful_primes(uint64_t up_to) {
    std::vector<OrderRecord> records = useful_primes(up_to);
    Command c;
    c.doc = OutputDocument("useful-primes");
    c.doc.add("input.up_to", static_cast<unsigned long long>(up_to));
    c.doc.add("result.count", static_cast<unsigned long long>(records.size()));
    for (std::size_t i = 0; i < records.size(); ++i) {
        std::string p = "result." + std::to_string(i);
        c.doc.add(p + ".p", static_cast<unsigned long long>(records[i].p));
        c.doc.add(p + ".order", static_cast<unsigned long long>(records[i].h));
    }
    c.text << "primes up to " << up_to << " with 10 a primitive root: " << records.size()
           << "\n";
    for (const OrderRecord& r : records) c.text << "  " << r.p << " (order " << r.h << ")\n";
    return c;
}

} // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"digit-permutation primality toolkit"};
    app.name("permprime");
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--limits", opt.limits_name, "work budget preset (default|quick|deep)");
    app.add_flag("--stable", opt.stable, "suppress timing for byte-identical reruns");
    app.add_flag("--strict", opt.strict, "exit 2 on Unknown verdicts");
    app.add_option("--threads", opt.threads, "worker threads (0 = automatic)");

    std::string number;
    auto* check = app.add_subcommand("check", "judge a number's digit multiset");
    check->add_option("number", number, "decimal digit string")->required();
    check->fallthrough();

    std::string certify_number;
    auto* certify = app.add_subcommand("certify", "first compositeness certificate only");
    certify->add_option("number", certify_number, "decimal digit string")->required();
    certify->fallthrough();

    uint32_t search_digits = 0;
    auto* search = app.add_subcommand("search", "judge every multiset of a given size");
    search->add_option("--digits", search_digits, "digit count")->required();
    search->fallthrough();

    uint32_t scan_from = 0, scan_to = 0;
    auto* scan = app.add_subcommand("scan", "certify near-repunit rows composite");
    scan->add_option("--from", scan_from, "first length")->required();
    scan->add_option("--to", scan_to, "last length")->required();
    scan->fallthrough();

    uint64_t order_p = 0;
    auto* order = app.add_subcommand("order", "multiplicative order of 10 mod p");
    order->add_option("p", order_p, "prime modulus")->required();
    order->fallthrough();

    uint32_t repunit_n = 0;
    bool repunit_factor = false;
    auto* repunit = app.add_subcommand("repunit", "status of the all-ones number");
    repunit->add_option("n", repunit_n, "length")->required()->check(CLI::PositiveNumber);
    repunit->add_flag("--factor", repunit_factor, "also factorize");
    repunit->fallthrough();

    std::string bound_primes;
    uint64_t bound_up_to = 0;
    uint64_t bound_start = 17;
    auto* bound = app.add_subcommand("bound", "lcm divisibility bound from primes");
    auto* bp = bound->add_option("--primes", bound_primes, "comma-separated prime list");
    auto* bu = bound->add_option("--up-to", bound_up_to, "use all useful primes up to L");
    bound->add_option("--start", bound_start, "already-proven lower bound on the length");
    bp->excludes(bu);
    bound->fallthrough();

    uint64_t useful_up_to = 0;
    auto* useful = app.add_subcommand("useful-primes", "primes with 10 a primitive root");
    useful->add_option("--up-to", useful_up_to, "upper limit")->required();
    useful->fallthrough();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        Limits limits = resolve_limits(opt);
        Command c;
        if (app.got_subcommand(check)) {
            c = cmd_check(number, opt, limits);
        } else if (app.got_subcommand(certify)) {
            c = cmd_certify(certify_number, opt, limits);
        } else if (app.got_subcommand(search)) {
            c = cmd_search(search_digits, opt, limits);
        } else if (app.got_subcommand(scan)) {
            c = cmd_scan(scan_from, scan_to, opt, limits);
        } else if (app.got_subcommand(order)) {
            c = cmd_order(order_p);
        } else if (app.got_subcommand(repunit)) {
            if (repunit_n > limits.max_digits) {
                err << "error: length " << repunit_n << " exceeds the digit budget ("
                    << limits.max_digits << ")\n";
                return 2;
            }
            c = cmd_repunit(repunit_n, repunit_factor, opt, limits);
        } else if (app.got_subcommand(bound)) {
            std::vector<uint64_t> primes;
            if (bound_primes.empty() && bound_up_to == 0) {
                err << "error: bound needs --primes or --up-to\n";
                return 1;
            }
            if (!bound_primes.empty()) {
                std::stringstream ss(bound_primes);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    if (item.empty()) continue;
                    primes.push_back(std::stoull(item));
                }
            }
            c = cmd_bound(primes,
                          bound_up_to ? std::optional<uint64_t>(bound_up_to) : std::nullopt,
                          bound_start);
        } else if (app.got_subcommand(useful)) {
            c = cmd_useful_primes(useful_up_to);
        } else {
            err << "error: no subcommand\n";
            return 1;
        }
        return emit(c, opt, out, t0);
    } catch (const incomplete_factorization& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace permprime::cli
