#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "verinum/expr.hpp"

namespace verinum {

class TaylorError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Interval Taylor form of a univariate f over `domain`:
//   f(x) in sum_i coeffs[i] * (x - center)^i / i!
// coeffs[i] encloses f^(i)(center) for i < degree; the last coefficient
// encloses f^(degree) over the whole domain.
struct TaylorForm {
    std::string var;
    Interval domain;
    Rational center;
    std::vector<Interval> coeffs;

    unsigned degree() const { return static_cast<unsigned>(coeffs.size()) - 1; }
};

// `chain` holds f, f', ..., f^(degree) (see derivative_chain).
TaylorForm build_taylor_form(const std::vector<Expr>& chain, const std::string& var, const Interval& domain,
                             const EvalOptions& opts, std::optional<Rational> center = std::nullopt);

TaylorForm build_taylor_form(const Expr& e, const std::string& var, const Interval& domain, unsigned degree,
                             const EvalOptions& opts, std::optional<Rational> center = std::nullopt);

// Evaluates the form on a sub-interval of its domain; empty if any
// coefficient is empty. Throws TaylorError when tile is not inside domain.
Interval eval_taylor_form(const TaylorForm& t, const Interval& tile, std::optional<unsigned> round_bits = std::nullopt);

} // namespace verinum
