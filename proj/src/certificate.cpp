#include "verinum/certificate.hpp"

#include <stdexcept>

#include "verinum/parser.hpp"
#include "verinum/symbolic.hpp"

namespace verinum {

using nlohmann::json;

Rel parse_relation(const std::string& text)
{
    if (text == "<") {
        return Rel::lt;
    }
    if (text == "<=") {
        return Rel::le;
    }
    if (text == ">") {
        return Rel::gt;
    }
    if (text == ">=") {
        return Rel::ge;
    }
    throw std::invalid_argument("unknown relation '" + text + "'");
}

Verdict parse_verdict(const std::string& text)
{
    if (text == "Proved") {
        return Verdict::proved;
    }
    if (text == "Refuted") {
        return Verdict::refuted;
    }
    if (text == "Unknown") {
        return Verdict::unknown;
    }
    throw std::invalid_argument("unknown verdict '" + text + "'");
}

namespace {

json interval_json(const Interval& x) { return {{"lb", x.lb().str()}, {"ub", x.ub().str()}}; }

Interval interval_from(const json& j)
{
    return {Rational::parse(j.at("lb").get<std::string>()), Rational::parse(j.at("ub").get<std::string>())};
}

json context_json(const Context& ctx)
{
    json j = json::object();
    for (const auto& [name, x] : ctx) {
        j[name] = interval_json(x);
    }
    return j;
}

Context context_from(const json& j)
{
    Context ctx;
    for (const auto& [name, x] : j.items()) {
        ctx.bind(name, interval_from(x));
    }
    return ctx;
}

json taylor_json(const TaylorForm& t)
{
    json coeffs = json::array();
    for (const auto& c : t.coeffs) {
        coeffs.push_back(interval_json(c));
    }
    return {{"domain", interval_json(t.domain)}, {"center", t.center.str()}, {"coeffs", coeffs}};
}

json tile_json(const TileRecord& t)
{
    json j = {{"box", context_json(t.box)},
              {"enclosure", interval_json(t.enclosure)},
              {"method", to_string(t.method)},
              {"check", to_string(t.check)}};
    if (t.taylor) {
        j["taylor"] = taylor_json(*t.taylor);
    }
    return j;
}

bool same(const Interval& a, const Interval& b) { return a.lb() == b.lb() && a.ub() == b.ub(); }

Method method_from(const std::string& s)
{
    if (s == "direct") {
        return Method::direct;
    }
    if (s == "taylor") {
        return Method::taylor;
    }
    if (s == "point") {
        return Method::point;
    }
    throw std::invalid_argument("unknown method '" + s + "'");
}

Check check_from(const std::string& s)
{
    for (Check c : {Check::holds, Check::violated, Check::undecided, Check::side_condition}) {
        if (to_string(c) == s) {
            return c;
        }
    }
    throw std::invalid_argument("unknown check '" + s + "'");
}

} // namespace

json to_certificate(const ProofOutcome& o)
{
    const ProverConfig& cfg = o.config;
    json prop;
    if (const auto* r = std::get_if<Relational>(&o.proposition)) {
        prop = {{"kind", "relational"}, {"lhs", to_string(r->lhs)}, {"rel", to_string(r->rel)}, {"rhs", to_string(r->rhs)}};
    } else {
        const auto& m = std::get<Membership>(o.proposition);
        prop = {{"kind", "membership"}, {"expr", to_string(m.expr)}, {"target", interval_json(m.target)}};
    }

    json splits = json::object();
    for (const auto& [name, k] : cfg.splits) {
        splits[name] = k;
    }

    json taylor = nullptr;
    if (cfg.taylor_degree > 0) {
        const auto var = taylor_variable(o.evaluated, o.context, cfg);
        if (var) {
            taylor = {{"var", *var},
                      {"degree", cfg.taylor_degree},
                      {"scope", o.global_taylor ? "global" : "per-tile"},
                      {"center", cfg.taylor_center ? json(cfg.taylor_center->str()) : json(nullptr)}};
            if (o.global_taylor) {
                taylor["form"] = taylor_json(*o.global_taylor);
            }
        }
    }

    json tiles = json::array();
    for (const auto& t : o.tiles) {
        tiles.push_back(tile_json(t));
    }
    json probes = json::array();
    for (const auto& t : o.probes) {
        probes.push_back(tile_json(t));
    }

    return {{"format", certificate_format},
            {"proposition", prop},
            {"context", context_json(o.context)},
            {"evaluated", to_string(o.evaluated)},
            {"verdict", to_string(o.verdict)},
            {"enclosure", interval_json(o.enclosure)},
            {"approx", cfg.approx},
            {"splits", splits},
            {"default_splits", cfg.default_splits},
            {"round_bits", cfg.round_bits ? json(*cfg.round_bits) : json(nullptr)},
            {"rewrite_exact", cfg.rewrite_exact},
            {"simplify", cfg.simplify},
            {"taylor_scope", cfg.taylor_scope == TaylorScope::global ? "global" : "per-tile"},
            {"probe_points", cfg.probe_points},
            {"taylor", taylor},
            {"tiles", tiles},
            {"probes", probes},
            {"timing_ms", o.timing_ms}};
}

ReplayReport replay_certificate(const json& cert)
{
    if (!cert.is_object() || cert.value("format", "") != certificate_format) {
        throw std::invalid_argument("not a verinum certificate");
    }
    ReplayReport rep;
    const auto note = [&rep](std::string s) { rep.mismatches.push_back(std::move(s)); };

    try {
        const json& pj = cert.at("proposition");
        Proposition prop;
        if (pj.at("kind") == "relational") {
            prop = Relational{parse(pj.at("lhs").get<std::string>()), parse_relation(pj.at("rel").get<std::string>()),
                              parse(pj.at("rhs").get<std::string>())};
        } else {
            prop = Membership{parse(pj.at("expr").get<std::string>()), interval_from(pj.at("target"))};
        }
        const Context ctx = context_from(cert.at("context"));

        ProverConfig cfg;
        cfg.approx = cert.at("approx").get<ApproxParam>();
        for (const auto& [name, k] : cert.at("splits").items()) {
            cfg.splits[name] = k.get<unsigned>();
        }
        cfg.default_splits = cert.at("default_splits").get<unsigned>();
        if (!cert.at("round_bits").is_null()) {
            cfg.round_bits = cert.at("round_bits").get<unsigned>();
        }
        cfg.rewrite_exact = cert.at("rewrite_exact").get<bool>();
        cfg.simplify = cert.at("simplify").get<bool>();
        cfg.taylor_scope = cert.at("taylor_scope") == "global" ? TaylorScope::global : TaylorScope::per_tile;
        const json& tj = cert.at("taylor");
        if (!tj.is_null()) {
            cfg.taylor_degree = tj.at("degree").get<unsigned>();
            cfg.taylor_var = tj.at("var").get<std::string>();
            if (!tj.at("center").is_null()) {
                cfg.taylor_center = Rational::parse(tj.at("center").get<std::string>());
            }
        }

        const Expr e = prepare_expression(prop, cfg);
        if (to_string(e) != cert.at("evaluated").get<std::string>()) {
            note("evaluated expression differs: " + to_string(e));
        }
        const EvalOptions opts{cfg.approx, cfg.round_bits};

        const auto tvar = taylor_variable(e, ctx, cfg);
        std::vector<Expr> chain;
        std::optional<TaylorForm> global;
        if (tvar) {
            chain = derivative_chain(e, *tvar, cfg.taylor_degree);
            if (tj.at("scope") == "global") {
                global = build_taylor_form(chain, *tvar, *ctx.find(*tvar), opts, cfg.taylor_center);
                bool form_ok = tj.contains("form") && tj.at("form").at("coeffs").size() == global->coeffs.size() &&
                               Rational::parse(tj.at("form").at("center").get<std::string>()) == global->center;
                for (std::size_t k = 0; form_ok && k < global->coeffs.size(); ++k) {
                    form_ok = same(interval_from(tj.at("form").at("coeffs")[k]), global->coeffs[k]);
                }
                if (!form_ok) {
                    note("global Taylor form differs");
                }
            }
        }

        const auto replay_tiles = [&](const json& list, const std::string& label) {
            std::vector<TileRecord> out;
            for (std::size_t i = 0; i < list.size(); ++i) {
                const json& t = list[i];
                TileRecord rec;
                rec.box = context_from(t.at("box"));
                rec.method = method_from(t.at("method").get<std::string>());
                const Interval* x = tvar ? rec.box.find(*tvar) : nullptr;
                if (rec.method == Method::taylor) {
                    if (x == nullptr) {
                        note(label + " " + std::to_string(i) + ": Taylor method without a Taylor variable");
                        rec.enclosure = Interval::empty();
                    } else if (global) {
                        rec.enclosure = eval_taylor_form(*global, *x, cfg.round_bits);
                    } else {
                        rec.taylor = build_taylor_form(chain, *tvar, *x, opts);
                        rec.enclosure = eval_taylor_form(*rec.taylor, *x, cfg.round_bits);
                        const json& coeffs = t.at("taylor").at("coeffs");
                        bool coeffs_ok = coeffs.size() == rec.taylor->coeffs.size();
                        for (std::size_t k = 0; coeffs_ok && k < coeffs.size(); ++k) {
                            coeffs_ok = same(interval_from(coeffs[k]), rec.taylor->coeffs[k]);
                        }
                        if (!coeffs_ok) {
                            note(label + " " + std::to_string(i) + ": Taylor coefficients differ");
                        }
                    }
                } else {
                    rec.enclosure = eval_interval(e, rec.box, opts);
                }
                rec.check = classify(prop, rec.enclosure);
                if (!same(rec.enclosure, interval_from(t.at("enclosure")))) {
                    note(label + " " + std::to_string(i) + ": enclosure differs, replayed " + rec.enclosure.str());
                }
                if (rec.check != check_from(t.at("check").get<std::string>())) {
                    note(label + " " + std::to_string(i) + ": check differs, replayed " + to_string(rec.check));
                }
                ++rep.tiles_checked;
                out.push_back(std::move(rec));
            }
            return out;
        };

        const std::vector<TileRecord> tiles = replay_tiles(cert.at("tiles"), "tile");
        const std::vector<TileRecord> probes = replay_tiles(cert.at("probes"), "probe");

        // The tiles must be exactly the split plan, so together they cover the context.
        const std::vector<Context> plan = split_plan_apply(ctx, cfg.splits, cfg.default_splits);
        bool plan_ok = plan.size() == tiles.size();
        for (std::size_t i = 0; plan_ok && i < plan.size(); ++i) {
            plan_ok = plan[i].bindings() == tiles[i].box.bindings();
        }
        if (!plan_ok) {
            note("tile boxes do not match the split plan");
        }
        for (std::size_t i = 0; i < probes.size(); ++i) {
            for (const auto& [name, x] : probes[i].box) {
                if (!x.is_point() || ctx.find(name) == nullptr || !subset(x, *ctx.find(name))) {
                    note("probe " + std::to_string(i) + " is not a point of the context");
                }
            }
        }

        rep.verdict = aggregate(tiles, probes);
        if (rep.verdict != parse_verdict(cert.at("verdict").get<std::string>())) {
            note("verdict differs, replayed " + to_string(rep.verdict));
        }
        Interval hull_all = Interval::empty();
        for (const auto& t : tiles) {
            hull_all = hull(hull_all, t.enclosure);
        }
        if (!same(hull_all, interval_from(cert.at("enclosure"))) && !(hull_all.is_empty() && interval_from(cert.at("enclosure")).is_empty())) {
            note("overall enclosure differs");
        }
    } catch (const json::exception& ex) {
        throw std::invalid_argument(std::string("malformed certificate: ") + ex.what());
    }
    rep.reproduced = rep.mismatches.empty();
    return rep;
}

} // namespace verinum
