#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "verinum/expr.hpp"
#include "verinum/taylor.hpp"

namespace verinum {

// lhs REL rhs, for all points of the context.
struct Relational {
    Expr lhs;
    Rel rel;
    Expr rhs;
};

// expr in target, for all points of the context.
struct Membership {
    Expr expr;
    Interval target;
};

using Proposition = std::variant<Relational, Membership>;

std::string to_string(const Proposition& p);

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class TaylorScope {
    per_tile, // each tile gets its own form centred at the tile midpoint
    global,   // one form over the whole domain, reused by every tile
};

struct ProverConfig {
    ApproxParam approx = 3;
    std::map<std::string, unsigned> splits; // per-variable tile counts
    unsigned default_splits = 1;            // for variables absent from `splits`
    unsigned taylor_degree = 0;             // 0 disables Taylor forms
    std::optional<std::string> taylor_var;  // inferred when the expression is univariate
    std::optional<Rational> taylor_center;  // forces global scope
    TaylorScope taylor_scope = TaylorScope::per_tile;
    std::optional<unsigned> round_bits;
    bool rewrite_exact = true;
    bool simplify = true;
    unsigned parallel_tiles = 0; // 0 = hardware concurrency
    bool probe_points = true;    // look for a refuting point when undecided

    unsigned tiles_for(const std::string& var) const;
};

enum class Verdict { proved, refuted, unknown };
enum class Method { direct, taylor, point };
enum class Check { holds, violated, undecided, side_condition };

std::string to_string(Verdict v);
std::string to_string(Method m);
std::string to_string(Check c);

struct TileRecord {
    Context box;
    Interval enclosure;
    Method method = Method::direct;
    Check check = Check::undecided;
    std::optional<TaylorForm> taylor; // per-tile form, when used
};

struct ProofOutcome {
    Verdict verdict = Verdict::unknown;
    Interval enclosure = Interval::empty(); // hull over tiles
    std::vector<TileRecord> tiles;          // lexicographic tile order
    std::vector<TileRecord> probes;         // point evaluations, if any
    Proposition proposition;
    Context context;
    ProverConfig config;
    Expr evaluated; // expression actually enclosed (after pre-passes)
    std::optional<TaylorForm> global_taylor;
    double timing_ms = 0;
};

// Cartesian product of even per-variable splits, last variable fastest.
std::vector<Context> split_plan_apply(const Context& ctx, const std::map<std::string, unsigned>& splits,
                                      unsigned default_splits = 1);

// e = lhs - rhs (or the membership expression) after the enabled pre-passes.
Expr prepare_expression(const Proposition& p, const ProverConfig& cfg);

Check classify(const Proposition& p, const Interval& enclosure);

// Aggregates per-tile checks; probes can only turn Unknown into Refuted.
Verdict aggregate(const std::vector<TileRecord>& tiles, const std::vector<TileRecord>& probes);

// Taylor variable for `e`, or nullopt when Taylor is off or inapplicable.
// Throws ConfigError on multivariate or missing variables.
std::optional<std::string> taylor_variable(const Expr& e, const Context& ctx, const ProverConfig& cfg);

ProofOutcome decide(const Proposition& p, const Context& ctx, const ProverConfig& cfg = {});
ProofOutcome check_relational(const Relational& p, const Context& ctx, const ProverConfig& cfg = {});
ProofOutcome check_membership(const Membership& p, const Context& ctx, const ProverConfig& cfg = {});

} // namespace verinum
