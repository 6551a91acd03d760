#pragma once

// Canonical JSON forms. Rationals are exact strings "p/q"; cyclotomic scalars
// are {"h", "coeffs"}; polynomials list their variables once and refer to
// them by index.

#include <json.hpp>

#include "anrec/combinatorics.hpp"
#include "anrec/genus0.hpp"
#include "anrec/recursion.hpp"

namespace anrec {

using Json = nlohmann::ordered_json;

Json to_json(const Rat& r);
Json to_json(const CycScalar& c);
Json to_json(const RatPoly& p);
Json to_json(const CycPoly& p);
Json to_json(const SymState& s);
Json to_json(const VerifyReport& r);
Json to_json(const CheckReport& r);
Json to_json(const PotentialG0& pot);
Json to_json(const PotentialTable& table);
Json to_json(const WResidual& res, int N);

Rat rat_from_json(const Json& j);
CycScalar cyc_from_json(const Json& j);
RatPoly rat_poly_from_json(const Json& j);

}  // namespace anrec
