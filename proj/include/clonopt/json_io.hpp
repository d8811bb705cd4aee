#pragma once

// JSON encodings shared by the CLI and tests.
//
//   matrix   {"rows": r, "cols": c, "entries": [[re, im], ...]}   (row-major)
//   channel  {"d", "n", "m", "basis_in", "basis_out", "kraus": [matrix, ...]}
//   rational [numerator, denominator] in lowest terms
//   weight   [m_1, ..., m_d]

#include <json.hpp>

#include "clonopt/channel.hpp"
#include "clonopt/omega_opt.hpp"
#include "clonopt/rational.hpp"

namespace clonopt {

using Json = nlohmann::ordered_json;

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// [[re, im], ...] for a vector.
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const OccupationVector& n);

std::string basis_name(BasisKind kind);
BasisKind basis_from_name(const std::string& name);

Json to_json(const Channel& t);
Channel channel_from_json(const Json& j);

Json to_json(const CandidatePoint& p);
Json to_json(const OmegaReport& report);

} // namespace clonopt
