#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "verinum/expr.hpp"

namespace verinum {

class UnsupportedDerivative : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Semantics-preserving cleanup: exact constant folding, neutral and
// absorbing elements, collection of like terms, and nested (Horner) form
// for sums of monomials in one variable. Products are never distributed.
Expr simplify(const Expr& e);

// Symbolic derivative with respect to `var`, simplified. Throws
// UnsupportedDerivative when abs(...) depends on `var`.
Expr diff(const Expr& e, const std::string& var);

// [e, e', e'', ...] up to the given order.
std::vector<Expr> derivative_chain(const Expr& e, const std::string& var, unsigned order);

// Replaces sin/cos/tan of notable angles k*pi/m (m in {1, 2, 3, 4, 6})
// with their exact value, using sqrt(2) and sqrt(3) where needed.
Expr rewrite_exact(const Expr& e);

} // namespace verinum
