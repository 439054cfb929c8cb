#include "verinum/rational.hpp"

#include <ostream>

namespace verinum {

Rational::Rational(const mpz_class& num, const mpz_class& den)
{
    if (den == 0) {
        throw ZeroDenominator("rational with zero denominator");
    }
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    return true;
}

} // namespace

Rational Rational::parse(std::string_view text)
{
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    Rational result;
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const auto num = text.substr(0, slash);
        const auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        }
        result = Rational(mpz_class(std::string(num), 10), mpz_class(std::string(den), 10));
    } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        const auto whole = text.substr(0, dot);
        const auto frac = text.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
            throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
        }
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        const mpz_class num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        result = Rational(num, den);
    } else {
        if (!all_digits(text)) {
            throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
        }
        result = Rational(mpz_class(std::string(text), 10), mpz_class(1));
    }
    return negative ? -result : result;
}

Rational& Rational::operator+=(const Rational& o)
{
    q_ += o.q_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o)
{
    q_ -= o.q_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o)
{
    q_ *= o.q_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero()) {
        throw ZeroDenominator("rational division by zero");
    }
    q_ /= o.q_;
    return *this;
}

std::string Rational::to_decimal(int digits, RoundDir dir) const
{
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    const Rational scaled = *this * Rational(scale, mpz_class(1));
    const mpz_class k = dir == RoundDir::down ? verinum::floor(scaled) : verinum::ceil(scaled);
    mpz_class mag = abs(k);
    std::string s = mag.get_str();
    if (digits > 0) {
        if (s.size() <= static_cast<std::size_t>(digits)) {
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        }
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    }
    return (k < 0 ? "-" : "") + s;
}

std::size_t Rational::bit_size() const
{
    return mpz_sizeinbase(q_.get_num_mpz_t(), 2) + mpz_sizeinbase(q_.get_den_mpz_t(), 2);
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational pow_nat(const Rational& q, unsigned long i)
{
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), q.raw().get_num_mpz_t(), i);
    mpz_pow_ui(den.get_mpz_t(), q.raw().get_den_mpz_t(), i);
    return {num, den};
}

mpz_class floor(const Rational& q)
{
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.raw().get_num_mpz_t(), q.raw().get_den_mpz_t());
    return r;
}

mpz_class ceil(const Rational& q)
{
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.raw().get_num_mpz_t(), q.raw().get_den_mpz_t());
    return r;
}

Rational round_dyadic(const Rational& q, unsigned bits, RoundDir dir)
{
    if (bits == 0) {
        throw std::invalid_argument("round_dyadic requires bits >= 1");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
    if (mpz_divisible_p(scale.get_mpz_t(), q.raw().get_den_mpz_t()) != 0) {
        return q;
    }
    const Rational scaled = q * Rational(scale, mpz_class(1));
    const mpz_class k = dir == RoundDir::down ? floor(scaled) : ceil(scaled);
    return {k, scale};
}

Rational factorial(unsigned long k)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return {f, mpz_class(1)};
}

} // namespace verinum
