#pragma once

// JSON forms of polynomials, matrices, checks and suite reports. Keys are
// sorted (nlohmann::json uses std::map), so output is byte-stable.

#include <json.hpp>

#include "fibdet/exactalg.hpp"
#include "fibdet/matrixlab.hpp"
#include "fibdet/verifier.hpp"

namespace fibdet {

/// {"terms": [{"coef": "<decimal>", "x": a, "s": b, "q": e}, ...]}
nlohmann::json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const nlohmann::json& j);

/// Array of rows of canonical strings.
nlohmann::json to_json(const PolyMatrix& m);

nlohmann::json to_json(const IdentityParams& p);
nlohmann::json to_json(const IdentityCheck& c);
nlohmann::json to_json(const SuiteRanges& r);
nlohmann::json to_json(const SuiteReport& r);

}  // namespace fibdet
