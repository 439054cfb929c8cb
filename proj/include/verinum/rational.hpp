#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace verinum {

class ZeroDenominator : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class RoundDir { down, up };

// Exact rational number, always kept in lowest terms with a positive
// denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {} // NOLINT(google-explicit-constructor)
    Rational(int v) : q_(static_cast<long>(v)) {} // NOLINT(google-explicit-constructor)
    Rational(const mpz_class& num, const mpz_class& den);
    Rational(long num, long den);
    explicit Rational(mpq_class q);

    static Rational make(const mpz_class& num, const mpz_class& den) { return {num, den}; }

    // Accepts "p", "p/q", "-p/q" and decimal "d.ddd" (exact). Throws
    // std::invalid_argument on malformed text, ZeroDenominator on q = 0.
    static Rational parse(std::string_view text);

    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::string str() const { return q_.get_str(); }
    // Best double approximation; for display only, never for decisions.
    double to_double() const { return q_.get_d(); }

    // Decimal rendering with `digits` fractional digits, rounded toward
    // -inf (down) or +inf (up).
    std::string to_decimal(int digits, RoundDir dir) const;

    // Bits needed for numerator plus denominator; a size measure for tests.
    std::size_t bit_size() const;

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

Rational abs(const Rational& q);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

// q^i with q^0 = 1 (0^0 = 1).
Rational pow_nat(const Rational& q, unsigned long i);

// Greatest integer <= q.
mpz_class floor(const Rational& q);
mpz_class ceil(const Rational& q);

// Nearest k / 2^bits below (down) or above (up) q. Requires bits >= 1.
Rational round_dyadic(const Rational& q, unsigned bits, RoundDir dir);

Rational factorial(unsigned long k);

} // namespace verinum
