#pragma once

#include <string>

#include <json.hpp>

#include "conclab/measures.hpp"

namespace conclab {

// Law literal schema (JSON):
//   {"type":"two_point","theta":0.2,"alpha":1.5}
//   {"type":"sym_exp_power","p":1.0,"scale":1.0}
//   {"type":"finite_discrete","atoms":[{"value":-1.0,"prob":"1/2"}, ...]}
//   {"type":"truncated","base":{...},"level":2.0}
// Probabilities are exact "num/den" strings.
nlohmann::json law_to_json(const ScalarLaw& law);
ScalarLaw law_from_json(const nlohmann::json& j);
ScalarLaw law_from_string(const std::string& text);

Rational rational_from_string(const std::string& s);
std::string rational_to_string(const Rational& r);

}  // namespace conclab
