#include "verinum/prover.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "verinum/symbolic.hpp"

namespace verinum {

unsigned ProverConfig::tiles_for(const std::string& var) const
{
    const auto it = splits.find(var);
    return it == splits.end() ? default_splits : it->second;
}

std::string to_string(const Proposition& p)
{
    if (const auto* r = std::get_if<Relational>(&p)) {
        return to_string(r->lhs) + " " + to_string(r->rel) + " " + to_string(r->rhs);
    }
    const auto& m = std::get<Membership>(p);
    return to_string(m.expr) + " in " + m.target.str();
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::proved: return "Proved";
    case Verdict::refuted: return "Refuted";
    case Verdict::unknown: return "Unknown";
    }
    return "?";
}

std::string to_string(Method m)
{
    switch (m) {
    case Method::direct: return "direct";
    case Method::taylor: return "taylor";
    case Method::point: return "point";
    }
    return "?";
}

std::string to_string(Check c)
{
    switch (c) {
    case Check::holds: return "holds";
    case Check::violated: return "violated";
    case Check::undecided: return "undecided";
    case Check::side_condition: return "side-condition";
    }
    return "?";
}

std::vector<Context> split_plan_apply(const Context& ctx, const std::map<std::string, unsigned>& splits,
                                      unsigned default_splits)
{
    for (const auto& [name, k] : splits) {
        if (!ctx.contains(name)) {
            throw ConfigError("split variable '" + name + "' is not declared");
        }
        if (k == 0) {
            throw ConfigError("tile count for '" + name + "' must be at least 1");
        }
    }
    if (default_splits == 0) {
        throw ConfigError("tile count must be at least 1");
    }

    std::vector<std::pair<std::string, std::vector<Interval>>> axes;
    for (const auto& [name, x] : ctx) {
        const auto it = splits.find(name);
        const unsigned k = it == splits.end() ? default_splits : it->second;
        axes.emplace_back(name, x.is_point() ? std::vector<Interval>{x} : split_even(x, k));
    }

    std::vector<Context> out{Context{}};
    for (const auto& [name, pieces] : axes) {
        std::vector<Context> next;
        next.reserve(out.size() * pieces.size());
        for (const auto& partial : out) {
            for (const auto& piece : pieces) {
                Context c = partial;
                c.bind(name, piece);
                next.push_back(std::move(c));
            }
        }
        out = std::move(next);
    }
    return out;
}

Expr prepare_expression(const Proposition& p, const ProverConfig& cfg)
{
    Expr e;
    if (const auto* r = std::get_if<Relational>(&p)) {
        e = r->lhs - r->rhs;
    } else {
        e = std::get<Membership>(p).expr;
    }
    if (cfg.rewrite_exact) {
        e = rewrite_exact(e);
    }
    if (cfg.simplify) {
        e = simplify(e);
    }
    return e;
}

Check classify(const Proposition& p, const Interval& enclosure)
{
    if (enclosure.is_empty()) {
        return Check::side_condition;
    }
    if (const auto* r = std::get_if<Relational>(&p)) {
        if (compare(enclosure, r->rel, Rational(0))) {
            return Check::holds;
        }
        if (compare(enclosure, negate(r->rel), Rational(0))) {
            return Check::violated;
        }
        return Check::undecided;
    }
    const Interval& target = std::get<Membership>(p).target;
    if (subset(enclosure, target)) {
        return Check::holds;
    }
    if (disjoint(enclosure, target)) {
        return Check::violated;
    }
    return Check::undecided;
}

Verdict aggregate(const std::vector<TileRecord>& tiles, const std::vector<TileRecord>& probes)
{
    const auto violated = [](const TileRecord& t) { return t.check == Check::violated; };
    if (std::any_of(tiles.begin(), tiles.end(), violated) || std::any_of(probes.begin(), probes.end(), violated)) {
        return Verdict::refuted;
    }
    if (!tiles.empty() &&
        std::all_of(tiles.begin(), tiles.end(), [](const TileRecord& t) { return t.check == Check::holds; })) {
        return Verdict::proved;
    }
    return Verdict::unknown;
}

std::optional<std::string> taylor_variable(const Expr& e, const Context& ctx, const ProverConfig& cfg)
{
    if (cfg.taylor_degree == 0) {
        return std::nullopt;
    }
    const auto vars = free_vars(e);
    if (cfg.taylor_var) {
        if (!ctx.contains(*cfg.taylor_var)) {
            throw ConfigError("Taylor variable '" + *cfg.taylor_var + "' is not declared");
        }
        for (const auto& v : vars) {
            if (v != *cfg.taylor_var) {
                throw ConfigError("Taylor forms need a univariate expression; '" + v + "' also occurs");
            }
        }
        return cfg.taylor_var;
    }
    if (vars.size() == 1) {
        return *vars.begin();
    }
    if (vars.empty()) {
        return ctx.size() == 1 ? std::optional<std::string>(ctx.begin()->first) : std::nullopt;
    }
    throw ConfigError("Taylor forms need a univariate expression");
}

namespace {

template <class Fn>
void run_parallel(std::size_t count, unsigned requested, Fn&& work)
{
    unsigned workers = requested != 0 ? requested : std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            work(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    work(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next = count;
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

void check_bound(const Expr& e, const Context& ctx)
{
    for (const auto& v : free_vars(e)) {
        if (!ctx.contains(v)) {
            throw UnboundVariable("unbound variable '" + v + "'");
        }
    }
}

Context midpoint_box(const Context& box)
{
    Context point;
    for (const auto& [name, x] : box) {
        point.bind(name, Interval(midpoint(x)));
    }
    return point;
}

} // namespace

ProofOutcome decide(const Proposition& p, const Context& ctx, const ProverConfig& cfg)
{
    const auto start = std::chrono::steady_clock::now();
    if (const auto* r = std::get_if<Relational>(&p)) {
        check_bound(r->lhs, ctx);
        check_bound(r->rhs, ctx);
    } else {
        const auto& m = std::get<Membership>(p);
        check_bound(m.expr, ctx);
        if (m.target.is_empty()) {
            throw std::invalid_argument("membership target is empty");
        }
    }

    ProofOutcome out{};
    out.proposition = p;
    out.context = ctx;
    out.config = cfg;
    out.evaluated = prepare_expression(p, cfg);

    const EvalOptions opts{cfg.approx, cfg.round_bits};
    const auto tvar = taylor_variable(out.evaluated, ctx, cfg);
    std::vector<Expr> chain;
    if (tvar) {
        chain = derivative_chain(out.evaluated, *tvar, cfg.taylor_degree);
        const Interval& whole = *ctx.find(*tvar);
        const bool global = cfg.taylor_scope == TaylorScope::global || cfg.taylor_center.has_value();
        if (global && whole.strictly_proper()) {
            out.global_taylor = build_taylor_form(chain, *tvar, whole, opts, cfg.taylor_center);
        }
    }

    const std::vector<Context> boxes = split_plan_apply(ctx, cfg.splits, cfg.default_splits);
    out.tiles.resize(boxes.size());
    run_parallel(boxes.size(), cfg.parallel_tiles, [&](std::size_t i) {
        TileRecord rec;
        rec.box = boxes[i];
        const Interval* x = tvar ? boxes[i].find(*tvar) : nullptr;
        if (x != nullptr && x->strictly_proper()) {
            rec.method = Method::taylor;
            if (out.global_taylor) {
                rec.enclosure = eval_taylor_form(*out.global_taylor, *x, cfg.round_bits);
            } else {
                rec.taylor = build_taylor_form(chain, *tvar, *x, opts);
                rec.enclosure = eval_taylor_form(*rec.taylor, *x, cfg.round_bits);
            }
        } else {
            rec.enclosure = eval_interval(out.evaluated, boxes[i], opts);
        }
        rec.check = classify(p, rec.enclosure);
        out.tiles[i] = std::move(rec);
    });

    for (const auto& t : out.tiles) {
        out.enclosure = hull(out.enclosure, t.enclosure);
    }
    out.verdict = aggregate(out.tiles, out.probes);

    if (out.verdict == Verdict::unknown && cfg.probe_points) {
        for (const auto& t : out.tiles) {
            if (t.check == Check::holds) {
                continue;
            }
            TileRecord probe;
            probe.box = midpoint_box(t.box);
            probe.method = Method::point;
            probe.enclosure = eval_interval(out.evaluated, probe.box, opts);
            probe.check = classify(p, probe.enclosure);
            const bool refutes = probe.check == Check::violated;
            out.probes.push_back(std::move(probe));
            if (refutes) {
                break;
            }
        }
        out.verdict = aggregate(out.tiles, out.probes);
    }

    out.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return out;
}

ProofOutcome check_relational(const Relational& p, const Context& ctx, const ProverConfig& cfg)
{
    return decide(Proposition{p}, ctx, cfg);
}

ProofOutcome check_membership(const Membership& p, const Context& ctx, const ProverConfig& cfg)
{
    return decide(Proposition{p}, ctx, cfg);
}

} // namespace verinum
