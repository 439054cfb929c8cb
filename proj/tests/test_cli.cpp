#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "verinum/rational.hpp"

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// Runs the CLI with stdout captured and stderr merged into it.
Run run(const std::string& args)
{
    const std::string cmd = std::string("\"") + VERINUM_CLI + "\" " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), got);
    }
    const int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string corpus(const std::string& name) { return std::string("\"") + CORPUS_DIR + "/" + name + "\""; }

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::size_t count(const std::string& hay, const std::string& needle)
{
    std::size_t n = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

} // namespace

TEST_CASE("check: exit codes follow the verdicts")
{
    const Run lemmas = run("check " + corpus("lemmas.vn"));
    INFO(lemmas.out);
    CHECK(lemmas.status == 0);
    CHECK(count(lemmas.out, ": Proved") == 6);
    CHECK(lemmas.out.find("tr35: Proved") != std::string::npos);
    CHECK(lemmas.out.find("enclosure:   [3.05965431, 3.05965432]") != std::string::npos);

    const Run atan = run("check " + corpus("fair_atan.vn"));
    INFO(atan.out);
    CHECK(atan.status == 0);
    CHECK(count(atan.out, ": Proved") == 3);

    const Run refuted = run("check " + corpus("refuted.vn"));
    INFO(refuted.out);
    CHECK(refuted.status == 2);
    CHECK(refuted.out.find("too_high: Refuted") != std::string::npos);
    CHECK(refuted.out.find("witness:") != std::string::npos);

    const Run unknown = run("check " + corpus("unknown.vn"));
    INFO(unknown.out);
    CHECK(unknown.status == 1);
    CHECK(unknown.out.find("naive: Unknown") != std::string::npos);
    CHECK(unknown.out.find("undecided:") != std::string::npos);

    const Run malformed = run("check " + corpus("malformed.vn"));
    CHECK(malformed.status == 3);
    CHECK(malformed.out.find("line 2") != std::string::npos);

    CHECK(run("check does-not-exist.vn").status == 3);
    CHECK(run("frobnicate").status == 3);
    CHECK(run("").status == 3);
}

TEST_CASE("check: command-line parameters")
{
    // Splitting from the command line decides the naive form.
    const Run split = run("check --split 16 " + corpus("unknown.vn"));
    CHECK(split.status == 1);
    const Run taylor = run("check --taylor 2 " + corpus("unknown.vn"));
    INFO(taylor.out);
    CHECK(taylor.status == 0);
    CHECK(taylor.out.find("method=taylor(2,per-tile)") != std::string::npos);

    write_file("cli_escalate.vn", "assert tr35: (9.8*tan(35*pi/180)/(250*0.514))*180/pi in [3, 3.1]\n");
    CHECK(run("check --approx 0 cli_escalate.vn").status == 1);
    const Run esc = run("check --approx 0 --escalate 8 cli_escalate.vn");
    INFO(esc.out);
    CHECK(esc.status == 0);
    CHECK(esc.out.find("approx=1") != std::string::npos);

    const Run rounded = run("check --round-bits 30 --parallel 2 " + corpus("lemmas.vn"));
    CHECK(rounded.status == 0);
    CHECK(rounded.out.find("round_bits=30") != std::string::npos);
    CHECK(run("check --split 0 " + corpus("lemmas.vn")).status == 3);
}

TEST_CASE("check --json output replays with verify")
{
    for (const char* name : {"lemmas.vn", "fair_atan.vn", "refuted.vn", "unknown.vn"}) {
        INFO(name);
        const Run j = run("check --json " + corpus(name));
        REQUIRE(j.status <= 2);
        const nlohmann::json doc = nlohmann::json::parse(j.out);
        REQUIRE(doc.contains("certificates"));
        CHECK_FALSE(doc["certificates"].empty());
        CHECK(doc["certificates"][0].contains("line"));
        write_file("cli_certs.json", j.out);
        const Run v = run("verify cli_certs.json");
        INFO(v.out);
        CHECK(v.status == 0);
        CHECK(count(v.out, "reproduced") == doc["certificates"].size());

        nlohmann::json forged = doc;
        forged["certificates"][0]["enclosure"]["ub"] = "1000";
        write_file("cli_forged.json", forged.dump());
        const Run bad = run("verify cli_forged.json");
        CHECK(bad.status == 1);
        CHECK(bad.out.find("MISMATCH") != std::string::npos);
    }
    write_file("cli_garbage.json", "{ not json");
    CHECK(run("verify cli_garbage.json").status == 3);
}

TEST_CASE("eval")
{
    const Run pi = run("eval pi");
    INFO(pi.out);
    CHECK(pi.status == 0);
    CHECK(pi.out.find("3.14159") != std::string::npos);

    const Run one = run("eval \"exp(0)\"");
    CHECK(one.status == 0);
    CHECK(one.out.rfind("[1, 1]", 0) == 0);

    const Run exact = run("eval \"sin(pi/6)\"");
    CHECK(exact.out.rfind("[1/2, 1/2]", 0) == 0);
    const Run raw = run("eval --no-rewrites \"sin(pi/6)\"");
    CHECK(raw.out.rfind("[1/2, 1/2]", 0) != 0);

    const Run undefined = run("eval \"ln(0)\"");
    CHECK(undefined.status == 1);
    CHECK(undefined.out.find("empty") != std::string::npos);

    CHECK(run("eval \"x + 1\"").status == 3);
    CHECK(run("eval \"sin(\"").status == 3);
}

TEST_CASE("eval: decimal output is rounded outward")
{
    const Run r = run("eval --approx 6 --digits 6 \"sqrt(2)\"");
    INFO(r.out);
    REQUIRE(r.status == 0);
    std::istringstream lines(r.out);
    std::string exact_line;
    std::string decimal_line;
    std::getline(lines, exact_line);
    std::getline(lines, decimal_line);
    const auto endpoints = [](const std::string& line) {
        const auto comma = line.find(',');
        return std::make_pair(verinum::Rational::parse(line.substr(1, comma - 1)),
                              verinum::Rational::parse(line.substr(comma + 2, line.size() - comma - 3)));
    };
    const auto [elb, eub] = endpoints(exact_line);
    const auto [dlb, dub] = endpoints(decimal_line);
    CHECK(dlb <= elb);
    CHECK(eub <= dub);
    CHECK(decimal_line.rfind("[1.414213, 1.414214]", 0) == 0);
}
