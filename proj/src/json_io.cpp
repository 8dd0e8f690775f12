#include "hankel/json_io.hpp"

#include <stdexcept>
#include <string>

namespace hankel {
namespace {

template <std::size_t N>
std::array<double, N> number_array(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != N) {
    throw std::invalid_argument(std::string(what) + ": expected an array of " + std::to_string(N) +
                                " numbers");
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if (!j[i].is_number()) throw std::invalid_argument(std::string(what) + ": non-numeric entry");
    out[i] = j[i].get<double>();
  }
  return out;
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

}  // namespace

Json to_json(const GeneratingVector& v) { return Json(v.values()); }

Json to_json(const QuarticForm& q) {
  Json j = Json::object();
  const auto& idx = quartic_indices();
  for (std::size_t k = 0; k < kNumQuarticMonomials; ++k) j[monomial_key(idx[k])] = q[k];
  return j;
}

Json to_json(const Vec4& x) { return Json(x.x); }

Json to_json(const SlicePoint& p) { return Json(p.as_array()); }

Json to_json(const ConditionReport& r) {
  Json records = Json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"id", rec.id}, {"lhs", rec.lhs}, {"rhs", rec.rhs}, {"satisfied", rec.satisfied}});
  }
  return {{"records", records}, {"overall", r.overall}};
}

Json to_json(const DegenerateClass& d) {
  Json j = {{"tag", to_string(d.tag)}};
  j["violating_index"] = d.violating_index ? Json(*d.violating_index) : Json(nullptr);
  return j;
}

Json to_json(const BoundResult& b) {
  return {{"value", b.value},
          {"witness", to_json(b.witness)},
          {"starts_used", b.starts_used},
          {"converged", b.converged}};
}

Json to_json(const GramMatrix& g) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < GramMatrix::kDim; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < GramMatrix::kDim; ++j) row.push_back(g(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const FeasResult& f) {
  Json j = {{"status", f.status == FeasStatus::Feasible ? "Feasible" : "Undetermined"},
            {"residual", f.residual},
            {"min_eigenvalue", f.min_eigenvalue},
            {"iterations", f.iterations}};
  j["gram"] = f.gram ? to_json(*f.gram) : Json(nullptr);
  return j;
}

Json to_json(const CriticalCertificate& c) {
  Json squares = Json::array();
  for (const auto& sq : c.decomposition.squares) {
    squares.push_back({{"weight", sq.weight}, {"form", Json(sq.form)}});
  }
  return {{"P", to_json(c.point)},
          {"M", c.critical_value},
          {"squares", squares},
          {"minimizer", to_json(c.minimizer)}};
}

Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"measured", c.measured}, {"bound", c.bound}, {"passed", c.passed}});
  }
  return {{"checks", checks}, {"passed", r.passed}};
}

GeneratingVector generating_vector_from_json(const Json& j) {
  return GeneratingVector(number_array<GeneratingVector::kSize>(j, "generating vector"));
}

QuarticForm quartic_from_json(const Json& j) {
  if (!j.is_object() || j.size() != kNumQuarticMonomials) {
    throw std::invalid_argument("quartic form: expected an object with 35 monomial keys");
  }
  QuarticForm q;
  for (const auto& [key, value] : j.items()) {
    if (key.size() != 4 || !value.is_number()) {
      throw std::invalid_argument("quartic form: bad entry \"" + key + "\"");
    }
    MultiIndex a{};
    for (std::size_t i = 0; i < 4; ++i) {
      if (key[i] < '0' || key[i] > '4') throw std::invalid_argument("quartic form: bad key \"" + key + "\"");
      a[i] = key[i] - '0';
    }
    q[quartic_position(a)] = value.get<double>();
  }
  if (!q.is_finite()) throw std::invalid_argument("quartic form: non-finite coefficient");
  return q;
}

GramMatrix gram_from_json(const Json& j) {
  if (!j.is_array() || j.size() != GramMatrix::kDim) {
    throw std::invalid_argument("gram matrix: expected 10 rows");
  }
  GramMatrix g;
  for (std::size_t i = 0; i < GramMatrix::kDim; ++i) {
    const auto row = number_array<GramMatrix::kDim>(j[i], "gram matrix row");
    for (std::size_t k = 0; k < GramMatrix::kDim; ++k) g(i, k) = row[k];
  }
  return g;
}

CriticalCertificate certificate_from_json(const Json& j) {
  CriticalCertificate c;
  c.point = SlicePoint::from_array(number_array<5>(member(j, "P"), "P"));
  const Json& m = member(j, "M");
  if (!m.is_number()) throw std::invalid_argument("M: expected a number");
  c.critical_value = m.get<double>();
  const Json& squares = member(j, "squares");
  if (!squares.is_array()) throw std::invalid_argument("squares: expected an array");
  for (const auto& sq : squares) {
    const Json& w = member(sq, "weight");
    if (!w.is_number()) throw std::invalid_argument("weight: expected a number");
    c.decomposition.squares.push_back(
        {w.get<double>(), number_array<kNumQuadraticMonomials>(member(sq, "form"), "form")});
  }
  c.minimizer = Vec4{number_array<4>(member(j, "minimizer"), "minimizer")};
  return c;
}

}  // namespace hankel
