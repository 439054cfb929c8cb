#include "verinum/taylor.hpp"

#include "verinum/symbolic.hpp"

namespace verinum {

TaylorForm build_taylor_form(const std::vector<Expr>& chain, const std::string& var, const Interval& domain,
                             const EvalOptions& opts, std::optional<Rational> center)
{
    if (chain.size() < 2) {
        throw TaylorError("Taylor degree must be at least 1");
    }
    if (!domain.strictly_proper()) {
        throw TaylorError("Taylor domain " + domain.str() + " is not strictly proper");
    }
    for (const auto& name : free_vars(chain.front())) {
        if (name != var) {
            throw TaylorError("Taylor form needs an expression in '" + var + "' only, found '" + name + "'");
        }
    }
    const Rational c = center ? *center : midpoint(domain);
    if (!contains(domain, c)) {
        throw TaylorError("Taylor centre " + c.str() + " lies outside " + domain.str());
    }

    TaylorForm t{var, domain, c, {}};
    const std::size_t degree = chain.size() - 1;
    for (std::size_t i = 0; i <= degree; ++i) {
        Context ctx;
        ctx.bind(var, i < degree ? Interval(c) : domain);
        t.coeffs.push_back(eval_interval(chain[i], ctx, opts));
    }
    return t;
}

TaylorForm build_taylor_form(const Expr& e, const std::string& var, const Interval& domain, unsigned degree,
                             const EvalOptions& opts, std::optional<Rational> center)
{
    if (degree == 0) {
        throw TaylorError("Taylor degree must be at least 1");
    }
    return build_taylor_form(derivative_chain(e, var, degree), var, domain, opts, std::move(center));
}

Interval eval_taylor_form(const TaylorForm& t, const Interval& tile, std::optional<unsigned> round_bits)
{
    if (tile.is_empty() || !subset(tile, t.domain)) {
        throw TaylorError("tile " + tile.str() + " is not inside the Taylor domain " + t.domain.str());
    }
    const Interval offset = tile - Interval(t.center);
    Interval sum(Rational(0));
    for (std::size_t i = 0; i < t.coeffs.size(); ++i) {
        if (t.coeffs[i].is_empty()) {
            return Interval::empty();
        }
        const Interval scale(Rational(1) / factorial(i));
        sum = sum + t.coeffs[i] * pow(offset, i) * scale;
        if (round_bits) {
            sum = round_outward(sum, *round_bits);
        }
    }
    return sum;
}

} // namespace verinum
