#pragma once

// Rational lower/upper bound functions for the elementary functions.
//
// Every function returns a pair (lb, ub) with lb <= f(x) <= ub for the real
// function f. Increasing the approximation parameter n never loosens either
// bound, and both bounds converge to f(x) as n grows.

#include <stdexcept>

#include "verinum/rational.hpp"

namespace verinum {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Series / iteration depth.
using ApproxParam = unsigned;

struct Bounds {
    Rational lb;
    Rational ub;

    bool operator==(const Bounds&) const = default;
};

namespace series {

// Partial Maclaurin sum of sin with k terms: sum_{i=1..k} (-1)^(i-1) x^(2i-1)/(2i-1)!
Rational sin_partial(const Rational& x, unsigned k);
// 1 + sum_{i=1..k} (-1)^i x^(2i)/(2i)!
Rational cos_partial(const Rational& x, unsigned k);
// sum_{i=0..k} (-1)^i x^(2i+1)/(2i+1)
Rational atan_partial(const Rational& x, unsigned k);
// sum_{i=0..k} x^i/i!
Rational exp_partial(const Rational& x, unsigned k);
// sum_{i=1..k} (-1)^(i+1) (x-1)^i/i
Rational ln_partial(const Rational& x, unsigned k);

} // namespace series

// Newton iteration from x + 1; lb = x / ub. Throws DomainError for x < 0.
Bounds sqrt_bounds(const Rational& x, ApproxParam n);
Bounds sin_bounds(const Rational& x, ApproxParam n);
Bounds cos_bounds(const Rational& x, ApproxParam n);
Bounds atan_bounds(const Rational& x, ApproxParam n);
// Machin: pi/4 = 4 atan(1/5) - atan(1/239).
Bounds pi_bounds(ApproxParam n);
Bounds exp_bounds(const Rational& x, ApproxParam n);
// Throws DomainError for x <= 0.
Bounds ln_bounds(const Rational& x, ApproxParam n);

struct LnNat {
    unsigned long m;
    Rational y;
};

// Writes x = k^m * y with k^m <= x < k^(m+1). Requires x >= 1, k > 1.
LnNat lnnat(const Rational& x, const Rational& k);

} // namespace verinum
