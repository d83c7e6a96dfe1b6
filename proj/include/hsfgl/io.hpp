#ifndef HSFGL_IO_HPP
#define HSFGL_IO_HPP

#include <string>
#include <variant>

#include <json.hpp>

#include "hsfgl/fgl.hpp"
#include "hsfgl/hsd.hpp"

namespace hsfgl {

using AnyLaw = std::variant<FormalGroupLaw<RationalField>, FormalGroupLaw<PrimeField>>;

// Law format: {"monomials": [{"c": .., "i": .., "j": ..}], "p": .., "precision": ..}
// with p = 0 for Q. Over F_p, c is the integer residue; over Q it is the
// string "num/den" (or "num"). Monomials are listed by total degree, X-heavy
// first; parsing accepts any order.

nlohmann::json law_to_json(const FormalGroupLaw<RationalField>& law);
nlohmann::json law_to_json(const FormalGroupLaw<PrimeField>& law);
nlohmann::json law_to_json(const AnyLaw& law);

/// Parsed laws are custom laws: fully validated, including associativity.
AnyLaw law_from_json(const nlohmann::json& j);

// Derivation table format: {"B": .., "entries": [{"n": 1, "poly": "..."}, ...], "p": ..}
// listing D_1(t) .. D_{B-1}(t); D_0(t) = t is implied.

nlohmann::json table_to_json(const HSDerivation<PrimeField>& d);
HSDerivation<PrimeField> table_from_json(const nlohmann::json& j, DegreeWindow window);

/// The canonical byte form used for round trips.
std::string dump(const nlohmann::json& j);

} // namespace hsfgl

#endif
