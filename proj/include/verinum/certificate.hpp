#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "verinum/prover.hpp"

namespace verinum {

inline constexpr const char* certificate_format = "verinum-certificate/1";

Rel parse_relation(const std::string& text);
Verdict parse_verdict(const std::string& text);

// Self-contained record of an outcome: inputs, parameters, the expression
// that was enclosed, and every tile with its enclosure and method. All
// rationals are exact "p/q" strings; an empty interval has lb > ub.
nlohmann::json to_certificate(const ProofOutcome& outcome);

struct ReplayReport {
    bool reproduced = false;
    Verdict verdict = Verdict::unknown;      // recomputed from the replayed tiles
    std::vector<std::string> mismatches;     // human-readable differences
    std::size_t tiles_checked = 0;
};

// Re-evaluates every recorded tile with its recorded method and parameters
// and compares enclosures exactly. Throws std::invalid_argument on a
// malformed certificate.
ReplayReport replay_certificate(const nlohmann::json& cert);

} // namespace verinum
