#include "hankel/conditions.hpp"

#include <cmath>

namespace hankel {

double eta(double beta, double gamma) {
  const double b = std::abs(beta);
  if (gamma <= b) return 4.0 * b - 3.0 * gamma;
  return 0.5 * (3.0 * gamma - std::sqrt(9.0 * gamma * gamma - 8.0 * beta * beta));
}

bool in_effective_domain(double v5, double v6) { return eta(v5, v6) < 1.0; }

bool in_effective_domain(const SlicePoint& p, bool admit_boundary) {
  const double e = eta(p.v5, p.v6);
  return admit_boundary ? e <= 1.0 : e < 1.0;
}

bool binary_quartic_psd(double alpha, double beta, double gamma) {
  return alpha >= eta(beta, gamma);
}

double binary_quartic(double alpha, double beta, double gamma, double y1, double y2) {
  const double a = y1 * y1, b = y2 * y2;
  return alpha * (a * a + b * b) + 4.0 * beta * y1 * y2 * (a + b) + 6.0 * gamma * a * b;
}

ConditionReport check_necessary(const GeneratingVector& v) {
  ConditionReport report;
  auto add = [&](InequalityRecord r) {
    report.overall = report.overall && r.satisfied;
    report.records.push_back(std::move(r));
  };
  for (int i : {0, 4, 8, 12}) {
    const double lhs = v[static_cast<std::size_t>(i)];
    add({"(5)i" + std::to_string(i), InequalityFamily::Nonnegativity, i, lhs, 0.0, lhs >= 0.0});
  }
  for (int i : {0, 4, 8}) {
    const auto u = static_cast<std::size_t>(i);
    const double lhs = v[u] + 6.0 * v[u + 2] + v[u + 4];
    const double rhs = 4.0 * std::abs(v[u + 1] + v[u + 3]);
    add({"(6)i" + std::to_string(i), InequalityFamily::Adjacent, i, lhs, rhs, lhs >= rhs});
  }
  for (int i : {0, 4}) {
    const auto u = static_cast<std::size_t>(i);
    const double lhs = v[u] + 6.0 * v[u + 4] + v[u + 8];
    const double rhs = 4.0 * std::abs(v[u + 2] + v[u + 6]);
    add({"(7)i" + std::to_string(i), InequalityFamily::Skip, i, lhs, rhs, lhs >= rhs});
  }
  {
    const double lhs = v[0] + 6.0 * v[6] + v[12];
    const double rhs = 4.0 * std::abs(v[3] + v[9]);
    add({"(8)", InequalityFamily::Corner, 0, lhs, rhs, lhs >= rhs});
  }
  if (v.is_symmetric() && v[4] == 1.0) {
    const double e = eta(v[5], v[6]);
    add({"cor1", InequalityFamily::EtaBound, 0, e, 1.0, e <= 1.0});
  }
  return report;
}

namespace {

Vec4 unit(std::size_t k) {
  Vec4 x;
  x[k] = 1.0;
  return x;
}

// e_k + s e_l with s = -sign(odd part), so f(x) = lhs - rhs.
Vec4 pair_witness(std::size_t k, std::size_t l, double odd_sum) {
  Vec4 x = unit(k);
  x[l] = odd_sum >= 0.0 ? -1.0 : 1.0;
  return x;
}

}  // namespace

std::optional<Vec4> necessary_witness(const GeneratingVector& v, const InequalityRecord& r) {
  const auto i = static_cast<std::size_t>(r.index);
  switch (r.family) {
    case InequalityFamily::Nonnegativity:
      return unit(i / 4);
    case InequalityFamily::Adjacent:
      return pair_witness(i / 4, i / 4 + 1, v[i + 1] + v[i + 3]);
    case InequalityFamily::Skip:
      return pair_witness(i / 4, i / 4 + 2, v[i + 2] + v[i + 6]);
    case InequalityFamily::Corner:
      return pair_witness(0, 3, v[3] + v[9]);
    case InequalityFamily::EtaBound: {
      if (r.satisfied) return std::nullopt;
      // On x1 = x4 = 0, f reduces to g with alpha = 1, beta = v5, gamma = v6.
      const double beta = v[5], gamma = v[6];
      Vec4 x;
      if (gamma <= std::abs(beta)) {
        x[1] = 1.0;
        x[2] = beta >= 0.0 ? -1.0 : 1.0;
        return x;
      }
      // Zero of y1^2 + (2 beta / eta) y1 y2 + y2^2, where g = (1 - eta)(y1^4 + y2^4).
      const double e = eta(beta, gamma);
      const double p = beta / e;
      x[1] = -p + std::copysign(std::sqrt(std::max(0.0, p * p - 1.0)), p);
      x[2] = 1.0;
      return x;
    }
  }
  return std::nullopt;
}

DegenerateClass classify_degenerate(const GeneratingVector& v) {
  const bool outer_zero = std::abs(v[0] * v[12]) <= kDegeneracyTolerance;
  const bool inner_zero = std::abs(v[4] * v[8]) <= kDegeneracyTolerance;
  if (!outer_zero && !inner_zero) return {DegenerateTag::NonDegenerate, std::nullopt};
  for (int j = 1; j <= 11; ++j) {
    if (std::abs(v[static_cast<std::size_t>(j)]) > kDegeneracyTolerance) {
      return {DegenerateTag::NotPSD, j};
    }
  }
  if (v[0] < -kDegeneracyTolerance) return {DegenerateTag::NotPSD, 0};
  if (v[12] < -kDegeneracyTolerance) return {DegenerateTag::NotPSD, 12};
  return {DegenerateTag::TriviallySOS, std::nullopt};
}

std::string to_string(DegenerateTag tag) {
  switch (tag) {
    case DegenerateTag::NonDegenerate: return "NonDegenerate";
    case DegenerateTag::TriviallySOS: return "TriviallySOS";
    case DegenerateTag::NotPSD: return "NotPSD";
  }
  return "unknown";
}

}  // namespace hankel
