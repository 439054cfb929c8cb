#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "verinum/bounds.hpp"
#include "verinum/interval.hpp"
#include "verinum/rational.hpp"

namespace verinum {

enum class Op {
    constant,
    variable,
    add,
    sub,
    neg,
    mul,
    div,
    abs,
    pow,
    sqrt,
    pi,
    sin,
    cos,
    tan,
    exp,
    ln,
    atan,
};

// Immutable arithmetic expression tree. Copies share structure.
class Expr {
public:
    // Null handle; only valid as a placeholder to be assigned over.
    Expr() = default;

    static Expr constant(Rational value);
    static Expr variable(std::string name);
    static Expr pi();
    static Expr unary(Op op, Expr arg);
    static Expr binary(Op op, Expr lhs, Expr rhs);
    static Expr power(Expr base, unsigned long exponent);

    Op op() const;
    std::size_t arity() const;
    const Expr& arg(std::size_t i = 0) const;

    // Only meaningful for the matching node kind.
    const Rational& value() const;
    const std::string& name() const;
    unsigned long exponent() const;

    bool is_constant() const { return op() == Op::constant; }
    bool is_constant(const Rational& v) const { return is_constant() && value() == v; }

    friend bool operator==(const Expr& a, const Expr& b);

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct Expr::Node {
    Op op = Op::constant;
    Rational value;
    std::string name;
    unsigned long exponent = 0;
    std::array<Expr, 2> args;
};

inline Op Expr::op() const { return node_->op; }
inline const Expr& Expr::arg(std::size_t i) const { return node_->args[i]; }
inline const Rational& Expr::value() const { return node_->value; }
inline const std::string& Expr::name() const { return node_->name; }
inline unsigned long Expr::exponent() const { return node_->exponent; }

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator-(Expr a);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);

Expr pow(Expr base, unsigned long exponent);
Expr abs(Expr e);
Expr sqrt(Expr e);
Expr sin(Expr e);
Expr cos(Expr e);
Expr tan(Expr e);
Expr exp(Expr e);
Expr ln(Expr e);
Expr atan(Expr e);

std::string op_name(Op op);

// Concrete syntax accepted by parse(); parse(to_string(e)) == e.
std::string to_string(const Expr& e);

std::set<std::string> free_vars(const Expr& e);

// Every operation along the tree is defined for all real inputs.
bool is_total(const Expr& e);

std::size_t node_count(const Expr& e);

class UnboundVariable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Ground context: each variable bound to a nonempty constant interval.
class Context {
public:
    Context() = default;
    Context(std::initializer_list<std::pair<const std::string, Interval>> init);

    // Throws std::invalid_argument on an empty interval.
    void bind(const std::string& name, Interval x);
    const Interval* find(const std::string& name) const;
    bool contains(const std::string& name) const { return find(name) != nullptr; }

    const std::map<std::string, Interval>& bindings() const { return bindings_; }
    auto begin() const { return bindings_.begin(); }
    auto end() const { return bindings_.end(); }
    std::size_t size() const { return bindings_.size(); }

private:
    std::map<std::string, Interval> bindings_;
};

struct EvalOptions {
    ApproxParam approx = 3;
    std::optional<unsigned> round_bits;
};

// Natural interval extension. Side-condition failures give the empty
// interval; an unbound variable throws UnboundVariable.
Interval eval_interval(const Expr& e, const Context& ctx, const EvalOptions& opts);
Interval eval_interval(const Expr& e, const Context& ctx, ApproxParam n);

// Exact value when the tree only uses rational operations on constants.
std::optional<Rational> fold_rational(const Expr& e);

} // namespace verinum
