#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "verinum/expr.hpp"

namespace verinum {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t position)
        : std::runtime_error(message + " at position " + std::to_string(position)), position_(position)
    {
    }

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

struct ParseOptions {
    // Accept "e^-k" as 1/e^k; used for constant expressions such as 2^-14.
    bool negative_exponents = false;
    // Names substituted by their expression instead of becoming variables.
    const std::map<std::string, Expr>* constants = nullptr;
};

// Grammar (usual precedence, left associative):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | '+' unary | power
//   power   := primary ('^' natural)*
//   primary := number | number '/' number | name | 'pi'
//            | func '(' expr ')' | '(' expr ')'
// "p/q" between two integer literals is read as one rational constant
// unless the left literal is itself a divisor.
Expr parse(std::string_view text, const ParseOptions& opts = {});

// Parses and folds a constant expression to an exact rational; throws
// ParseError when it is not rational (free variables, pi, functions).
Rational parse_rational_constant(std::string_view text, const ParseOptions& opts = {});

} // namespace verinum
