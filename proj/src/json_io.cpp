#include "clonopt/json_io.hpp"

#include "clonopt/errors.hpp"

namespace clonopt {

namespace {

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ConstraintError("complex entries must be [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

} // namespace

Json to_json(const Matrix& m) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Json& j) {
  try {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const Json& entries = j.at("entries");
    if (rows < 1 || cols < 1 || entries.size() != static_cast<std::size_t>(rows * cols))
      throw ConstraintError("matrix JSON has inconsistent dimensions");
    Matrix m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(entries[k++]);
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConstraintError(std::string("malformed matrix JSON: ") + e.what());
  }
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(Json::array({v(k).real(), v(k).imag()}));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ConstraintError("vector JSON must be a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    // Real entries may be given as plain numbers.
    v(static_cast<Eigen::Index>(k)) = j[k].is_number() ? Complex(j[k].get<double>(), 0.0) : complex_from_json(j[k]);
  }
  return v;
}

Json to_json(const Rational& r) { return Json::array({r.numerator(), r.denominator()}); }

Rational rational_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ConstraintError("rationals are [numerator, denominator]");
  return Rational(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
}

Json to_json(const OccupationVector& n) { return Json(n.counts); }

std::string basis_name(BasisKind kind) { return kind == BasisKind::symmetric ? "symmetric" : "full"; }

BasisKind basis_from_name(const std::string& name) {
  if (name == "symmetric") return BasisKind::symmetric;
  if (name == "full") return BasisKind::full;
  throw ConstraintError("unknown basis tag '" + name + "'");
}

Json to_json(const Channel& t) {
  Json kraus = Json::array();
  for (const auto& k : t.kraus()) kraus.push_back(to_json(k));
  return Json{{"d", t.d()},
              {"n", t.n()},
              {"m", t.m()},
              {"basis_in", basis_name(t.input().kind)},
              {"basis_out", basis_name(t.output().kind)},
              {"kraus", std::move(kraus)}};
}

Channel channel_from_json(const Json& j) {
  try {
    const int d = j.at("d").get<int>();
    const BasisTag in{basis_from_name(j.at("basis_in").get<std::string>()), d, j.at("n").get<int>()};
    const BasisTag out{basis_from_name(j.at("basis_out").get<std::string>()), d, j.at("m").get<int>()};
    std::vector<Matrix> kraus;
    for (const auto& k : j.at("kraus")) kraus.push_back(matrix_from_json(k));
    return Channel(std::move(kraus), in, out);
  } catch (const nlohmann::json::exception& e) {
    throw ConstraintError(std::string("malformed channel JSON: ") + e.what());
  }
}

Json to_json(const CandidatePoint& p) { return Json{{"m", p.m.components()}, {"mu", p.mu}}; }

Json to_json(const OmegaReport& report) {
  Json maximizers = Json::array();
  for (const auto& p : report.maximizers) maximizers.push_back(to_json(p));
  return Json{{"d", report.d},
              {"n", report.n},
              {"m_out", report.m},
              {"omega_max", to_json(report.omega_max)},
              {"gamma", to_json(report.gamma)},
              {"delta_one", to_json(report.delta_one)},
              {"maximizers", std::move(maximizers)},
              {"unique", report.unique},
              {"count_enumerated", report.count_enumerated}};
}

} // namespace clonopt
