#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "verinum/prover.hpp"

namespace verinum {

class ScriptError : public std::runtime_error {
public:
    ScriptError(const std::string& message, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct Assertion {
    std::size_t line = 0;
    std::string label;  // optional "name:" prefix, else empty
    std::string source; // the assert text as written
    Proposition proposition;
    Context context; // declared variables that occur in the proposition
    ProverConfig config;
};

// Statements, one per line or separated by ';', '#' starts a comment:
//   const NAME = EXPR       (declared variables may occur: a macro)
//   var NAME in [A, B]
//   option approx|splits|round_bits|rewrites|simplify|taylor|taylor_scope = VALUE
//   assert [LABEL:] EXPR (<|<=|>|>=) EXPR [with CLAUSES]
//   assert [LABEL:] EXPR in [A, B] [with CLAUSES]
// CLAUSES: taylor(VAR, D[, CENTER]), split(VAR, K), approx(N), round_bits(B).
// `base` holds defaults; options override it for later asserts and
// with-clauses override both for a single assert.
std::vector<Assertion> parse_script(std::string_view text, const ProverConfig& base = {});

} // namespace verinum
