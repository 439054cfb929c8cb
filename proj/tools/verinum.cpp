// verinum: check proposition files, evaluate constant expressions with
// guaranteed enclosures, and replay proof certificates.

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "verinum/certificate.hpp"
#include "verinum/parser.hpp"
#include "verinum/script.hpp"
#include "verinum/symbolic.hpp"

using namespace verinum;

namespace {

constexpr int exit_proved = 0;
constexpr int exit_unknown = 1;
constexpr int exit_refuted = 2;
constexpr int exit_error = 3;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string decimal(const Interval& x, int digits)
{
    if (x.is_empty()) {
        return "empty";
    }
    return "[" + x.lb().to_decimal(digits, RoundDir::down) + ", " + x.ub().to_decimal(digits, RoundDir::up) + "]";
}

std::string method_summary(const ProofOutcome& o)
{
    if (o.tiles.empty()) {
        return "-";
    }
    std::string m = to_string(o.tiles.front().method);
    if (m == "taylor") {
        m += "(" + std::to_string(o.config.taylor_degree) + (o.global_taylor ? ",global" : ",per-tile") + ")";
    }
    return m;
}

struct CheckFlags {
    std::string file;
    std::optional<unsigned> approx;
    std::optional<unsigned> split;
    std::optional<unsigned> taylor;
    std::optional<unsigned> round_bits;
    unsigned parallel = 0;
    bool json = false;
    std::optional<unsigned> escalate;
    int digits = 8;
};

int run_check(const CheckFlags& f)
{
    ProverConfig base;
    if (f.approx) {
        base.approx = *f.approx;
    }
    if (f.split) {
        base.default_splits = *f.split;
    }
    if (f.taylor) {
        base.taylor_degree = *f.taylor;
    }
    base.round_bits = f.round_bits;
    base.parallel_tiles = f.parallel;

    const std::vector<Assertion> asserts = parse_script(read_file(f.file), base);

    nlohmann::json certificates = nlohmann::json::array();
    bool any_refuted = false;
    bool any_unknown = false;
    for (const auto& a : asserts) {
        ProverConfig cfg = a.config;
        ProofOutcome o = decide(a.proposition, a.context, cfg);
        while (f.escalate && o.verdict == Verdict::unknown && cfg.approx < *f.escalate) {
            cfg.approx = std::min(*f.escalate, cfg.approx == 0 ? 1U : cfg.approx * 2);
            o = decide(a.proposition, a.context, cfg);
        }
        any_refuted = any_refuted || o.verdict == Verdict::refuted;
        any_unknown = any_unknown || o.verdict == Verdict::unknown;
        if (f.json) {
            nlohmann::json c = to_certificate(o);
            c["line"] = a.line;
            if (!a.label.empty()) {
                c["label"] = a.label;
            }
            certificates.push_back(std::move(c));
            continue;
        }
        std::cout << f.file << ":" << a.line << ": " << (a.label.empty() ? "" : a.label + ": ") << to_string(o.verdict)
                  << "\n";
        std::cout << "  proposition: " << to_string(a.proposition) << "\n";
        // Exact endpoints can run to thousands of digits; --json keeps them.
        const std::string exact = o.enclosure.str();
        std::cout << "  enclosure:   " << decimal(o.enclosure, f.digits) << "\n";
        if (exact.size() <= 160) {
            std::cout << "  exact:       " << exact << "\n";
        }
        std::cout << "  parameters:  approx=" << cfg.approx << " tiles=" << o.tiles.size()
                  << " method=" << method_summary(o);
        if (cfg.round_bits) {
            std::cout << " round_bits=" << *cfg.round_bits;
        }
        std::cout << " time=" << o.timing_ms << "ms\n";
        if (o.verdict == Verdict::refuted) {
            const auto& all = o.tiles;
            auto it = std::find_if(all.begin(), all.end(), [](const TileRecord& t) { return t.check == Check::violated; });
            const TileRecord& witness = it != all.end() ? *it : o.probes.back();
            std::cout << "  witness:     ";
            for (const auto& [name, x] : witness.box) {
                std::cout << name << " in " << x.str() << " ";
            }
            std::cout << "gives " << witness.enclosure.str() << "\n";
        } else if (o.verdict == Verdict::unknown) {
            for (const auto& t : o.tiles) {
                if (t.check != Check::holds) {
                    std::cout << "  undecided:   ";
                    for (const auto& [name, x] : t.box) {
                        std::cout << name << " in " << x.str() << " ";
                    }
                    std::cout << "gives " << t.enclosure.str() << " (" << to_string(t.check) << ")\n";
                    break;
                }
            }
        }
    }
    if (f.json) {
        std::cout << nlohmann::json{{"certificates", certificates}}.dump(2) << "\n";
    }
    if (any_refuted) {
        return exit_refuted;
    }
    return any_unknown ? exit_unknown : exit_proved;
}

int run_eval(const std::string& text, unsigned approx, int digits, bool rewrites)
{
    Expr e = parse(text);
    if (const auto vars = free_vars(e); !vars.empty()) {
        throw std::invalid_argument("expression has free variable '" + *vars.begin() + "'");
    }
    if (rewrites) {
        e = simplify(rewrite_exact(e));
    }
    const Interval x = eval_interval(e, Context{}, approx);
    if (x.is_empty()) {
        std::cout << "empty (side condition violated)\n";
        return exit_unknown;
    }
    std::cout << x.str() << "\n" << decimal(x, digits) << "\n";
    return exit_proved;
}

int run_verify(const std::string& path)
{
    const nlohmann::json doc = nlohmann::json::parse(read_file(path));
    std::vector<nlohmann::json> certs;
    if (doc.is_array()) {
        certs.assign(doc.begin(), doc.end());
    } else if (doc.contains("certificates")) {
        certs.assign(doc.at("certificates").begin(), doc.at("certificates").end());
    } else {
        certs.push_back(doc);
    }
    bool all_ok = true;
    for (std::size_t i = 0; i < certs.size(); ++i) {
        const ReplayReport r = replay_certificate(certs[i]);
        std::cout << "certificate " << i;
        if (certs[i].contains("line")) {
            std::cout << " (line " << certs[i]["line"] << ")";
        }
        std::cout << ": " << (r.reproduced ? "reproduced" : "MISMATCH") << ", " << to_string(r.verdict) << ", "
                  << r.tiles_checked << " tiles replayed\n";
        for (const auto& m : r.mismatches) {
            std::cout << "  " << m << "\n";
        }
        all_ok = all_ok && r.reproduced;
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"verinum: guaranteed interval enclosures and proofs of numerical propositions"};
    app.require_subcommand(1);

    CheckFlags flags;
    auto* check = app.add_subcommand("check", "check every assertion of a proposition file");
    check->add_option("file", flags.file, "proposition file")->required();
    check->add_option("--approx", flags.approx, "approximation parameter n (default 3)");
    check->add_option("--split", flags.split, "tiles per variable")->check(CLI::PositiveNumber);
    check->add_option("--taylor", flags.taylor, "Taylor form degree (0 = off)");
    check->add_option("--round-bits", flags.round_bits, "outward-round enclosures to this many fraction bits")
        ->check(CLI::PositiveNumber);
    check->add_option("--parallel", flags.parallel, "concurrent tile evaluations (default: all cores)");
    check->add_flag("--json", flags.json, "print certificates as JSON");
    check->add_option("--escalate", flags.escalate, "retry Unknown results with doubled n up to this cap");
    check->add_option("--digits", flags.digits, "decimal digits in reports")->check(CLI::NonNegativeNumber);

    std::string expr_text;
    unsigned eval_approx = 3;
    int eval_digits = 12;
    bool no_rewrites = false;
    auto* eval = app.add_subcommand("eval", "enclose a constant expression");
    eval->add_option("expr", expr_text, "expression without free variables")->required();
    eval->add_option("--approx", eval_approx, "approximation parameter n (default 3)");
    eval->add_option("--digits", eval_digits, "decimal digits (default 12)")->check(CLI::NonNegativeNumber);
    eval->add_flag("--no-rewrites", no_rewrites, "skip exact-value rewrites and simplification");

    std::string cert_path;
    auto* verify = app.add_subcommand("verify", "replay certificates produced by check --json");
    verify->add_option("certificate", cert_path, "certificate JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_error;
    }

    try {
        if (check->parsed()) {
            return run_check(flags);
        }
        if (eval->parsed()) {
            return run_eval(expr_text, eval_approx, eval_digits, !no_rewrites);
        }
        return run_verify(cert_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
}
