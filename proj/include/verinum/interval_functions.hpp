#pragma once

// Parametric interval extensions of the elementary functions. Side-condition
// violations (sqrt of a negative, ln of a non-positive, tan outside its
// guard) return the empty interval.

#include "verinum/bounds.hpp"
#include "verinum/interval.hpp"

namespace verinum {

Interval sqrt(const Interval& x, ApproxParam n);
Interval atan(const Interval& x, ApproxParam n);
Interval exp(const Interval& x, ApproxParam n);
Interval ln(const Interval& x, ApproxParam n);
Interval pi_interval(ApproxParam n);

// Quadrant case analysis; [-1, 1] outside [-pi, pi].
Interval sin(const Interval& x, ApproxParam n);
Interval cos(const Interval& x, ApproxParam n);

// Sine and cosine bounds at n + 5. Requires
// x within [-pi_lb(n+5)/2, pi_lb(n+5)/2].
Interval tan(const Interval& x, ApproxParam n);

// Rational bounds on tan at a single point of the tangent guard.
Bounds tan_point_bounds(const Rational& x, ApproxParam m);

} // namespace verinum
