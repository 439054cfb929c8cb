#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "verinum/parser.hpp"
#include "verinum/script.hpp"

using namespace verinum;

namespace {

Interval I(const Rational& a, const Rational& b) { return {a, b}; }

std::size_t error_line(const std::string& text)
{
    try {
        parse_script(text);
    } catch (const ScriptError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST_CASE("statements and propositions")
{
    const auto asserts = parse_script(R"(# header comment
const g = 9.8; const v = 250*0.514
var x in [0, 1]
var y in [-1/2, 2^-3]   # trailing comment
assert tr35: (g*tan(35*pi/180)/v)*180/pi in [3, 3.1]
assert 2*x >= x
assert mixed: x*y <= 1
assert x < 2 with split(x, 4), approx(5)
)");
    REQUIRE(asserts.size() == 4);

    CHECK(asserts[0].label == "tr35");
    CHECK(asserts[0].line == 5);
    const auto& m = std::get<Membership>(asserts[0].proposition);
    CHECK(m.target == I(3, Rational(31, 10)));
    CHECK(m.expr == parse("(49/5*tan(35*pi/180)/(257/2))*180/pi"));
    CHECK(asserts[0].context.size() == 0);

    CHECK(asserts[1].label.empty());
    const auto& r = std::get<Relational>(asserts[1].proposition);
    CHECK(r.rel == Rel::ge);
    CHECK(r.lhs == parse("2*x"));
    CHECK(r.rhs == parse("x"));
    CHECK(asserts[1].context.size() == 1);
    CHECK(*asserts[1].context.find("x") == I(0, 1));

    CHECK(asserts[2].context.size() == 2);
    CHECK(*asserts[2].context.find("y") == I(Rational(-1, 2), Rational(1, 8)));
    CHECK(std::get<Relational>(asserts[2].proposition).rel == Rel::le);

    CHECK(asserts[3].config.tiles_for("x") == 4);
    CHECK(asserts[3].config.approx == 5);
    CHECK(std::get<Relational>(asserts[3].proposition).rel == Rel::lt);
}

TEST_CASE("constants may reference declared variables")
{
    const auto asserts = parse_script(R"(
var t in [-1/30, 1/30]
const r = t - (11184811/33554432) * t^3 - (13421773/67108864) * t^5
assert t1: atan(t) - r in [-2^-14, 2^-14] with taylor(t, 1)
)");
    REQUIRE(asserts.size() == 1);
    const auto& m = std::get<Membership>(asserts[0].proposition);
    CHECK(m.expr == parse("atan(t) - (t - (11184811/33554432) * t^3 - (13421773/67108864) * t^5)"));
    CHECK(m.target == I(Rational(-1, 16384), Rational(1, 16384)));
    CHECK(asserts[0].config.taylor_degree == 1);
    CHECK(asserts[0].config.taylor_var == "t");
}

TEST_CASE("option and clause precedence")
{
    ProverConfig base;
    base.approx = 7;
    base.default_splits = 2;
    const auto asserts = parse_script(R"(
var x in [0, 1]
assert a: x >= 0
option approx = 4
option splits = 3
option round_bits = 16
assert b: x >= 0
assert c: x >= 0 with approx(9), split(x, 5), round_bits(8)
option round_bits = off
option simplify = off
option rewrites = off
option taylor = 2
option taylor_scope = global
assert d: x*(1-x) in [0, 1/4]
assert e: x*(1-x) in [0, 1/4] with taylor(x, 1, 1/3)
)",
                                      base);
    REQUIRE(asserts.size() == 5);
    CHECK(asserts[0].config.approx == 7);
    CHECK(asserts[0].config.tiles_for("x") == 2);
    CHECK_FALSE(asserts[0].config.round_bits.has_value());

    CHECK(asserts[1].config.approx == 4);
    CHECK(asserts[1].config.tiles_for("x") == 3);
    CHECK(asserts[1].config.round_bits == 16U);

    CHECK(asserts[2].config.approx == 9);
    CHECK(asserts[2].config.tiles_for("x") == 5);
    CHECK(asserts[2].config.round_bits == 8U);

    CHECK_FALSE(asserts[3].config.round_bits.has_value());
    CHECK_FALSE(asserts[3].config.simplify);
    CHECK_FALSE(asserts[3].config.rewrite_exact);
    CHECK(asserts[3].config.taylor_degree == 2);
    CHECK(asserts[3].config.taylor_scope == TaylorScope::global);

    CHECK(asserts[4].config.taylor_degree == 1);
    CHECK(asserts[4].config.taylor_center == Rational(1, 3));
}

TEST_CASE("errors report the line")
{
    CHECK(error_line("var x in [0, 1]\nassert y > 0\n") == 2);
    CHECK(error_line("var x in [1, 0]\n") == 1);
    CHECK(error_line("var x in [0, 1]\nvar x in [0, 2]\n") == 2);
    CHECK(error_line("\n\nfrobnicate x\n") == 3);
    CHECK(error_line("var x in [0, 1]\nassert x\n") == 2);
    CHECK(error_line("var x in [0, 1]\nassert x < 1 < 2\n") == 2);
    CHECK(error_line("var x in [0, 1]\nvar y in [0, 1]\nassert x > 0 with split(y, 2)\n") == 3);
    CHECK(error_line("var x in [0, 1]\nassert x > 0 with split(x, 0)\n") == 2);
    CHECK(error_line("var x in [0, 1]\nassert x > 0 with wobble(3)\n") == 2);
    CHECK(error_line("option approx = three\n") == 1);
    CHECK(error_line("option colour = 3\n") == 1);
    CHECK(error_line("option simplify = maybe\n") == 1);
    CHECK(error_line("option taylor_scope = sideways\n") == 1);
    CHECK(error_line("const k = q + 1\n") == 1);
    CHECK(error_line("var x in [0, pi]\n") == 1);
    CHECK(error_line("var x in [0, 1]\nassert x > (1\n") == 2);
    CHECK(error_line("var x in [0, 1]\nassert bad label: x > 0\n") == 2);
    CHECK_THROWS_AS(parse_script("assert 1 > 0 with taylor(z, 1)\n"), ScriptError);
}

TEST_CASE("empty and comment-only scripts")
{
    CHECK(parse_script("").empty());
    CHECK(parse_script("# nothing\n\n   \n").empty());
    CHECK(parse_script("var x in [0, 1]; assert x >= 0; assert x <= 1").size() == 2);
}
