#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "verinum/rational.hpp"

namespace verinum {

enum class Rel { lt, le, gt, ge };

// The relation that holds whenever `r` fails: < <-> >=, <= <-> >.
Rel negate(Rel r);
std::string to_string(Rel r);

// Closed interval [lb, ub] with rational endpoints. lb > ub encodes the
// empty interval, which is how side-condition failures propagate.
class Interval {
public:
    Interval() = default;
    Interval(Rational lb, Rational ub) : lb_(std::move(lb)), ub_(std::move(ub)) {}
    explicit Interval(const Rational& point) : lb_(point), ub_(point) {}

    static Interval empty() { return {Rational(1), Rational(0)}; }

    const Rational& lb() const { return lb_; }
    const Rational& ub() const { return ub_; }

    bool is_empty() const { return ub_ < lb_; }
    bool is_point() const { return lb_ == ub_; }
    bool strictly_proper() const { return lb_ < ub_; }
    Rational width() const { return ub_ - lb_; }

    // Structural equality; all empty intervals compare equal.
    friend bool operator==(const Interval& a, const Interval& b);

    std::string str() const;

private:
    Rational lb_;
    Rational ub_;
};

std::ostream& operator<<(std::ostream& os, const Interval& x);

Interval operator+(const Interval& x, const Interval& y);
Interval operator-(const Interval& x, const Interval& y);
Interval operator-(const Interval& x);
Interval operator*(const Interval& x, const Interval& y);
// Empty unless lb(y) * ub(y) > 0.
Interval operator/(const Interval& x, const Interval& y);

// Reference multiplication by min/max of the four endpoint products.
Interval mul_by_products(const Interval& x, const Interval& y);

Interval abs(const Interval& x);
Interval pow(const Interval& x, unsigned long n);

// Smallest interval containing both; an empty operand yields the other.
Interval hull(const Interval& x, const Interval& y);

// Interval-rational comparison. Vacuously true on the empty interval.
bool compare(const Interval& x, Rel rel, const Rational& a);

bool subset(const Interval& x, const Interval& y);
bool contains(const Interval& x, const Rational& v);
// True when x and y share no point (an empty operand is disjoint from all).
bool disjoint(const Interval& x, const Interval& y);

// k tiles of equal width sharing endpoints. Requires x nonempty, k >= 1.
std::vector<Interval> split_even(const Interval& x, unsigned k);

// Throws std::domain_error on the empty interval.
Rational midpoint(const Interval& x);

// Widens x to dyadic endpoints with denominator 2^bits.
Interval round_outward(const Interval& x, unsigned bits);

} // namespace verinum
