#pragma once

#include <string>

#include "json.hpp"

#include "apfact/factorize.hpp"
#include "apfact/rhsolve.hpp"

namespace apfact {

using Json = nlohmann::json;

// Serialization for everything that crosses the process boundary.
// emit-then-parse is the identity for each pair below; frequencies travel
// as exact "num/den" strings, coefficients as doubles.

Json to_json(const APPoly& p);
APPoly appoly_from_json(const Json& j);

Json to_json(const TriangularSymbol& sym);
TriangularSymbol symbol_from_json(const Json& j);

Json to_json(const Mat2& m);
Mat2 mat2_from_json(const Json& j);

Json to_json(const Factorization& fac);
Factorization factorization_from_json(const Json& j);

Json to_json(const RHSolution& sol);
RHSolution solution_from_json(const Json& j);

// Report-only types (no parse side needed).
Json to_json(const VerificationReport& rep);
Json to_json(const GapData& gap);
Json to_json(const ClassMembership& mem);
Json to_json(const IndexResult& idx);
Json to_json(const ToeplitzVerdict& verdict);

// "num/den" string <-> Frequency, with ParseError on malformed text.
Json to_json(const Frequency& f);
Frequency frequency_from_json(const Json& j);

}  // namespace apfact
