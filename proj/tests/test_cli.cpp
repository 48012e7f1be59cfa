#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "permprime/cli.hpp"
#include "permprime/document.hpp"

using namespace permprime;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string field(const std::string& doc_text, std::string_view key) {
    OutputDocument doc = OutputDocument::parse(doc_text);
    const std::string* v = doc.find(key);
    return v ? *v : std::string("<missing>");
}

} // namespace

TEST_CASE("check: composite input reports the witness") {
    RunResult r = run({"check", "19", "--format", "structured", "--stable"});
    CHECK(r.code == 0);
    CHECK(field(r.out, "schema_version") == "1");
    CHECK(field(r.out, "result.verdict") == "composite");
    CHECK(field(r.out, "result.certificate.witness") == "91");
    CHECK(field(r.out, "result.certificate.divisor") == "7");
    CHECK(field(r.out, "result.certificate.cofactor") == "13");
    CHECK(r.err.empty());
}

TEST_CASE("check: absolute prime input lists the evidence") {
    RunResult r = run({"check", "373", "--format", "structured", "--stable"});
    CHECK(r.code == 0);
    CHECK(field(r.out, "result.verdict") == "absolute_prime");
    CHECK(field(r.out, "result.permutations") == "3");
}

TEST_CASE("check: text format prints the division equation") {
    RunResult r = run({"check", "19", "--stable"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict: composite") != std::string::npos);
    CHECK(r.out.find("91 = 7 × 13") != std::string::npos);
    CHECK(r.out.find("elapsed") == std::string::npos);
}

TEST_CASE("certify: emits only the certificate") {
    RunResult r = run({"certify", "1379", "--format", "structured", "--stable"});
    CHECK(r.code == 0);
    CHECK(field(r.out, "result.certificate.rule") == "four-digits");
    CHECK(field(r.out, "result.certificate.witness") == "7931");
    CHECK(field(r.out, "result.verdict") == "<missing>");
}

TEST_CASE("search: three digits yields the three classes") {
    RunResult r = run({"search", "--digits", "3", "--format", "structured", "--stable"});
    CHECK(r.code == 0);
    CHECK(field(r.out, "result.candidates") == "220");
    CHECK(field(r.out, "result.found.count") == "3");
    CHECK(field(r.out, "result.found.0.value") == "113");
    CHECK(field(r.out, "result.found.1.value") == "199");
    CHECK(field(r.out, "result.found.2.value") == "337");
    CHECK(field(r.out, "result.unknowns.count") == "0");
}

TEST_CASE("scan: structured rows carry certificates") {
    RunResult r = run({"scan", "--from", "7", "--to", "9", "--format", "structured",
                       "--stable"});
    CHECK(r.code == 0);
    CHECK(field(r.out, "result.candidates") == "36");
    CHECK(field(r.out, "result.rows.count") == "36");
    CHECK(field(r.out, "result.found.count") == "0");
    CHECK(field(r.out, "result.rows.0.certificate.kind") == "digit_sum_3");
}

TEST_CASE("order and useful-primes") {
    RunResult r = run({"order", "239", "--format", "structured", "--stable"});
    CHECK(r.code == 0);
    CHECK(field(r.out, "result.order") == "7");
    CHECK(field(r.out, "result.primitive_root") == "false");

    RunResult u = run({"useful-primes", "--up-to", "100", "--format", "structured",
                       "--stable"});
    CHECK(u.code == 0);
    CHECK(field(u.out, "result.count") == "9");
    CHECK(field(u.out, "result.0.p") == "7");
    CHECK(field(u.out, "result.8.p") == "97");
}

TEST_CASE("repunit: factoring output") {
    RunResult r = run({"repunit", "7", "--factor", "--format", "structured", "--stable"});
    CHECK(r.code == 0);
    CHECK(field(r.out, "result.status") == "composite");
    CHECK(field(r.out, "result.factors.0.prime") == "239");
    CHECK(field(r.out, "result.factors.1.prime") == "4649");
}

TEST_CASE("bound: documented chain") {
    RunResult r = run({"bound", "--primes", "17,19,23,29", "--format", "structured",
                       "--stable"});
    CHECK(r.code == 0);
    CHECK(field(r.out, "result.modulus") == "11088");
    CHECK(field(r.out, "result.chain.0.modulus") == "16");
    CHECK(field(r.out, "result.chain.0.lower") == "32");
    CHECK(field(r.out, "result.chain.3.lower") == "11088");

    RunResult u = run({"bound", "--up-to", "30", "--format", "structured", "--stable"});
    CHECK(u.code == 0);
    CHECK(field(u.out, "result.modulus") == "11088");
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 1);
    CHECK(run({"check"}).code == 1);
    CHECK(run({"check", "12x"}).code == 1);
    CHECK(run({"nonsense"}).code == 1);
    CHECK(run({"check", "19", "--format", "yaml"}).code == 1);
    CHECK(run({"scan", "--from", "3", "--to", "9"}).code == 1);

    // Budget overruns are distinct from usage errors.
    RunResult budget = run({"repunit", "97", "--limits", "quick"});
    CHECK(budget.code == 2);
    CHECK(budget.err.find("budget") != std::string::npos);

    std::string r71(71, '1');
    RunResult lax = run({"check", r71, "--limits", "quick", "--format", "structured",
                         "--stable"});
    CHECK(lax.code == 0);
    CHECK(field(lax.out, "result.verdict") == "unknown");
    RunResult strict = run({"check", r71, "--limits", "quick", "--strict"});
    CHECK(strict.code == 2);
}

TEST_CASE("stable output is byte-identical across runs") {
    for (std::vector<std::string> args :
         {std::vector<std::string>{"check", "1379", "--format", "structured", "--stable"},
          {"search", "--digits", "4", "--format", "structured", "--stable"},
          {"bound", "--primes", "17,19,23,29", "--format", "structured", "--stable"},
          {"scan", "--from", "7", "--to", "10", "--format", "structured", "--stable"}}) {
        RunResult a = run(args);
        RunResult b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK(!a.out.empty());
    }
}

TEST_CASE("timing appears exactly without --stable") {
    RunResult timed = run({"check", "19", "--format", "structured"});
    OutputDocument doc = OutputDocument::parse(timed.out);
    CHECK(doc.find("elapsed_ms") != nullptr);
    CHECK(doc.fields().back().first == "elapsed_ms");
    RunResult stable = run({"check", "19", "--format", "structured", "--stable"});
    CHECK(OutputDocument::parse(stable.out).find("elapsed_ms") == nullptr);
}

TEST_CASE("limits: env default, flag precedence") {
    setenv("PERMPRIME_LIMITS", "quick", 1);
    RunResult env = run({"check", "19", "--format", "structured", "--stable"});
    CHECK(field(env.out, "input.limits") == "quick");
    RunResult flag = run({"check", "19", "--limits", "deep", "--format", "structured",
                          "--stable"});
    CHECK(field(flag.out, "input.limits") == "deep");
    setenv("PERMPRIME_LIMITS", "bogus", 1);
    CHECK(run({"check", "19"}).code == 1);
    unsetenv("PERMPRIME_LIMITS");
    RunResult plain = run({"check", "19", "--format", "structured", "--stable"});
    CHECK(field(plain.out, "input.limits") == "default");
}

TEST_CASE("document round-trip") {
    OutputDocument doc("demo");
    doc.add("alpha", "one two three");
    doc.add("beta", 42LL);
    doc.add("gamma.0.delta", 7ULL);
    std::string text = doc.serialize();
    OutputDocument back = OutputDocument::parse(text);
    REQUIRE(back.fields().size() == doc.fields().size());
    CHECK(back.fields() == doc.fields());
    CHECK(back.serialize() == text);
    CHECK(*back.find("alpha") == "one two three");
    CHECK(back.find("nope") == nullptr);
}
