#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "padicg/dwork.hpp"
#include "padicg/field.hpp"
#include "padicg/gauss.hpp"
#include "padicg/gfunc.hpp"
#include "padicg/identities.hpp"

namespace padicg {

using nlohmann::json;

// Residues and coefficients are written as decimal strings so that values
// near 2^62 survive JSON readers that parse numbers as doubles.

json to_json(const FieldDesc& field);
json to_json(const PadicApprox& x);
json to_json(const ZqApprox& x);
json to_json(const PiGraded& x);
json to_json(const GSpec& spec);
json to_json(const ValuedZq& x);
json to_json(const CountReport& rep);
json to_json(const CorollaryReport& rep);
json to_json(const IdentityReport& rep);
json to_json(const SuiteResult& res);

/// {"a": ["1/3", ...], "b": [...], "t": <encoding>, "p": .., "r": ..}
GSpec gspec_from_json(const json& doc, const FieldOptions& opts = {});
std::vector<Rational> parse_rational_list(const std::string& text);

std::string csv_header(const CountReport&);
std::string csv_row(const CountReport& rep);
std::string csv_header(const CorollaryReport&);
std::string csv_row(const CorollaryReport& rep);
std::string csv_header(const IdentityReport&);
std::string csv_row(const IdentityReport& rep);

std::string to_text(const CountReport& rep);
std::string to_text(const CorollaryReport& rep);
std::string to_text(const IdentityReport& rep);
std::string to_text(const ValuedZq& x);

}  // namespace padicg
