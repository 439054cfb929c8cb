#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gen.hpp"
#include "oracle.hpp"
#include "verinum/parser.hpp"
#include "verinum/symbolic.hpp"

using namespace verinum;
using oracle::Real;

namespace {

Expr x() { return Expr::variable("x"); }
Expr c(long n, long d = 1) { return Expr::constant(Rational(n, d)); }
Interval I(const Rational& a, const Rational& b) { return {a, b}; }

std::string simp(const std::string& text) { return to_string(simplify(parse(text))); }
std::string d(const std::string& text) { return to_string(diff(parse(text), "x")); }
std::string rw(const std::string& text) { return to_string(rewrite_exact(parse(text))); }

Real abs_real(const Real& v) { return oracle::apply(v, mpfr_abs); }

// Largest magnitude over all subexpression values at a point; scales the
// rounding error of a 256-bit evaluation.
double magnitude(const Expr& e, const oracle::Point& p)
{
    double m = 0;
    if (const auto v = oracle::eval(e, p)) {
        m = std::abs(v->to_double());
    }
    for (std::size_t i = 0; i < e.arity(); ++i) {
        m = std::max(m, magnitude(e.arg(i), p));
    }
    return m;
}

bool agree(const Real& a, const Real& b, double scale)
{
    const Real diffv = abs_real(oracle::apply(a, b, mpfr_sub));
    Real tol;
    mpfr_set_d(tol.get(), 1.0 + scale, MPFR_RNDN);
    mpfr_mul_2si(tol.get(), tol.get(), -180, MPFR_RNDN);
    return mpfr_lessequal_p(diffv.get(), tol.get()) != 0;
}

} // namespace

TEST_CASE("simplify examples")
{
    CHECK(simp("2*x - x") == "x");
    CHECK(simp("x - x^2") == "x*(1 - x)");
    CHECK(simp("2*3") == "6");
    CHECK(simplify(c(2) * c(3)) == c(6));
    CHECK(simp("x^2 + x") == "x*(1 + x)");
    CHECK(simp("1 - x + x^2 - x^3") == "1 - x*(1 - x*(1 - x))");
    CHECK(simp("x + 0") == "x");
    CHECK(simp("1*x*1") == "x");
    CHECK(simp("0*x") == "0");
    CHECK(simp("x - x") == "0");
    CHECK(simp("sin(x) - sin(x)") == "0");
    CHECK(simp("x^1") == "x");
    CHECK(simp("x^0") == "1");
    CHECK(simp("--x") == "x");
    CHECK(simp("(1/2)*(4*x)") == "2*x");
    // Non-total atoms keep their side condition.
    const Expr kept = simplify(parse("ln(x) - ln(x)"));
    CHECK(eval_interval(kept, Context{{"x", I(-2, -1)}}, 3).is_empty());
    CHECK(eval_interval(simplify(parse("0*sqrt(x)")), Context{{"x", I(-2, -1)}}, 3).is_empty());
}

TEST_CASE("simplify tightens the dependency example")
{
    const Expr e = parse("2*x - x");
    const Context ctx{{"x", I(0, 1)}};
    CHECK(eval_interval(e, ctx, 3) == I(-1, 2));
    CHECK(eval_interval(simplify(e), ctx, 3) == I(0, 1));
    const Expr q = parse("x - x^2");
    CHECK(eval_interval(q, ctx, 3) == I(-1, 1));
    CHECK(eval_interval(simplify(q), ctx, 3) == I(0, 1));
}

TEST_CASE("diff examples")
{
    CHECK(d("x*(1-x)") == "1 - 2*x");
    CHECK(d("atan(x)") == "1/(1 + x^2)");
    CHECK(d("7/3") == "0");
    CHECK(d("y") == "0");
    CHECK(d("x") == "1");
    CHECK(d("tan(x)") == "1 + tan(x)^2");
    CHECK(d("x^3") == "3*x^2");
    CHECK(to_string(diff(parse("x*y"), "y")) == "x");
    CHECK_THROWS_AS(diff(parse("abs(x)"), "x"), UnsupportedDerivative);
    CHECK_THROWS_AS(diff(parse("sin(abs(x) + 1)"), "x"), UnsupportedDerivative);
    CHECK(d("abs(y) * x") == "abs(y)");

    const auto chain = derivative_chain(parse("x*(1-x)"), "x", 2);
    REQUIRE(chain.size() == 3);
    CHECK(to_string(chain[1]) == "1 - 2*x");
    CHECK(to_string(chain[2]) == "(-2)");
}

TEST_CASE("rewrite_exact examples")
{
    CHECK(rw("sin(pi/2)") == "1");
    CHECK(rw("cos(0)") == "1");
    CHECK(rw("sin(x)") == "sin(x)");
    CHECK(rw("cos(pi)") == "(-1)");
    CHECK(rw("sin(pi/4)") == "sqrt(2)/2");
    CHECK(rw("tan(pi/4)") == "1");
    CHECK(rw("tan(pi/2)") == "tan(pi/2)");
    CHECK(rw("sin(pi/5)") == "sin(pi/5)");
    CHECK(rw("sin(-pi/6)") == "(-1/2)");
    CHECK(rw("cos(2*pi/3)") == "(-1/2)");
    CHECK(rw("sin(pi/6) + x") == "(1/2) + x");
    CHECK(simp("sin(pi/6) + cos(pi/4) + tan(pi/3) + cos(0)") == "sin(pi/6) + cos(pi/4) + tan(pi/3) + cos(0)");
    CHECK(to_string(simplify(rewrite_exact(parse("sin(pi/6) + cos(pi/4) + tan(pi/3) + cos(0)")))) ==
          "(3/2) + sqrt(2)/2 + sqrt(3)");
    CHECK(eval_interval(rewrite_exact(parse("sin(pi/2)")), Context{}, 0) == I(1, 1));
}

TEST_CASE("property: rewrite_exact preserves values at notable angles")
{
    for (long m : {1L, 2L, 3L, 4L, 6L, 12L}) {
        for (long k = -13; k <= 13; ++k) {
            for (const char* fn : {"sin", "cos", "tan"}) {
                const std::string text = std::string(fn) + "(" + std::to_string(k) + "*pi/" + std::to_string(m) + ")";
                const Expr e = parse(text);
                const Expr r = rewrite_exact(e);
                const auto a = oracle::eval(e, {});
                const auto b = oracle::eval(r, {});
                INFO(text << " -> " << to_string(r));
                if (!a || std::abs(a->to_double()) > 1e10) {
                    CHECK(r == e);
                    continue;
                }
                REQUIRE(b.has_value());
                CHECK(agree(*a, *b, 1));
            }
        }
    }
}

TEST_CASE("property: simplify preserves point values")
{
    oracle::Sampler s(51);
    int compared = 0;
    for (int i = 0; i < 1500; ++i) {
        const Expr e = gen::random_expr(s);
        const Expr t = simplify(e);
        for (int j = 0; j < 3; ++j) {
            const oracle::Point p{{"x", s.in(Rational(-3), Rational(3))}, {"y", s.in(Rational(-3), Rational(3))}};
            const auto a = oracle::eval(e, p);
            // Skip undefined points and ill-conditioned ones near poles.
            if (!a || magnitude(e, p) > 1e20) {
                continue;
            }
            const auto b = oracle::eval(t, p);
            INFO(to_string(e) << "  ->  " << to_string(t));
            REQUIRE(b.has_value());
            CHECK(agree(*a, *b, std::max(magnitude(e, p), magnitude(t, p))));
            ++compared;
        }
    }
    CHECK(compared > 2000);
}

TEST_CASE("property: simplify is idempotent")
{
    oracle::Sampler s(52);
    for (int i = 0; i < 1500; ++i) {
        const Expr e = s.coin(0.5) ? gen::random_expr(s) : gen::random_polynomial(s, "x", 4);
        const Expr t = simplify(e);
        INFO(to_string(e) << "  ->  " << to_string(t));
        CHECK(simplify(t) == t);
    }
}

TEST_CASE("property: simplify never widens on nonnegative domains")
{
    oracle::Sampler s(53);
    for (int i = 0; i < 1500; ++i) {
        const Expr e = gen::random_polynomial(s, "x", 4);
        const Expr t = simplify(e);
        const Context ctx{{"x", s.interval(Rational(0), Rational(3))}};
        const unsigned n = s.natural(0, 3);
        INFO(to_string(e) << "  ->  " << to_string(t) << " on " << *ctx.find("x"));
        CHECK(subset(eval_interval(t, ctx, n), eval_interval(e, ctx, n)));
    }
}

TEST_CASE("property: diff agrees with central differences")
{
    oracle::Sampler s(54);
    gen::Shape sh;
    sh.vars = {"x"};
    sh.depth = 3;
    sh.abs = false;
    Real h;
    mpfr_set_ui_2exp(h.get(), 1, -20, MPFR_RNDN);
    const Rational hq(1, 1L << 20);
    int compared = 0;
    for (int i = 0; i < 2000; ++i) {
        const Expr e = gen::random_expr(s, sh);
        const Expr de = diff(e, "x");
        const Rational x0 = s.in(Rational(-2), Rational(2), 10);
        const auto f0 = oracle::eval(e, {{"x", x0}});
        const auto fp = oracle::eval(e, {{"x", x0 + hq}});
        const auto fm = oracle::eval(e, {{"x", x0 - hq}});
        const auto fp2 = oracle::eval(e, {{"x", x0 + hq + hq}});
        const auto fm2 = oracle::eval(e, {{"x", x0 - hq - hq}});
        const auto g = oracle::eval(de, {{"x", x0}});
        if (!f0 || !fp || !fm || !fp2 || !fm2 || std::abs(f0->to_double()) > 1e3) {
            continue;
        }
        INFO(to_string(e) << "  d/dx ->  " << to_string(de) << " at " << x0);
        if (!g) {
            continue; // not differentiable here, e.g. sqrt at 0
        }
        // D_h and D_2h differ by about three times the h^2 error of D_h;
        // points where that error is visible at 2^-32 are ill-conditioned.
        const auto central = [](const Real& up, const Real& down, const Real& step) {
            return oracle::apply(oracle::apply(up, down, mpfr_sub), oracle::apply(step, Real(2.0), mpfr_mul), mpfr_div);
        };
        const Real dh = central(*fp, *fm, h);
        const Real d2h = central(*fp2, *fm2, oracle::apply(h, Real(2.0), mpfr_mul));
        const double gv = g->to_double();
        const double scale = 1 + std::abs(gv);
        if (std::abs(gv) > 1e3 || abs_real(oracle::apply(dh, d2h, mpfr_sub)).to_double() / 3 > std::ldexp(scale, -32)) {
            continue;
        }
        CHECK(abs_real(oracle::apply(dh, *g, mpfr_sub)).to_double() <= std::ldexp(scale, -30));
        ++compared;
    }
    CHECK(compared > 800);
}
