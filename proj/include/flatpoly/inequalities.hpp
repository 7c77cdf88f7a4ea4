#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatpoly/bodies.hpp"
#include "flatpoly/levy.hpp"

namespace flatpoly {

enum class CheckStatus { Pass, Fail, Inconclusive };

std::string check_status_name(CheckStatus s);

// The two sides of one inequality of the proof chain, with the Monte Carlo
// error budget that separates "fail" from "noise". `passed` holds exactly
// when the documented inequality holds within 3 combined standard errors;
// checks whose volume estimates are noisier than 5% relative report
// Inconclusive instead of Fail.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;           // rhs - lhs
  bool passed = false;
  CheckStatus status = CheckStatus::Fail;
  double stderr_budget = 0.0;   // 3 * combined stderr of the MC quantities
  std::string inputs_digest;
  std::string note;
  std::map<std::string, double> diagnostics;
};

// (Vol V / Vol B)^{1/n} <= M_{V polar}.
InequalityReport check_urysohn(const NormBody& body, long vol_samples, long levy_samples,
                               std::uint64_t seed);

// Vol(K) Vol(K polar) <= Vol(B_m)^2 for K the body or its section by L.
InequalityReport check_santalo(const NormBody& body, const std::optional<Subspace>& L,
                               long samples, std::uint64_t seed);

// 2^m Vol(B^m) diam(K)^{-m} <= Vol(K polar) for the section K = V cap L.
InequalityReport check_polar_containment(const NormBody& body, const Subspace& L,
                                         long samples, std::uint64_t seed);

// Vol_m(V cap (y + L)) <= Vol_m(V cap L) for each offset y orthogonal to L.
InequalityReport check_central_section_max(const NormBody& body, const Subspace& L,
                                           const std::vector<Eigen::VectorXd>& offsets,
                                           long samples, std::uint64_t seed);

// Volume-product ratio r(V) = (Vol V * Vol V polar)^{1/n} / Vol(B)^{2/n}
// screened against the configured constant.
InequalityReport check_bourgain_milman(const NormBody& body, long samples, std::uint64_t seed,
                                       double c2 = 0.5);

// Vol(V) >= (c2 / (c1 M_V))^n Vol(B) for V inside the unit ball.
InequalityReport check_volume_lower_bound(const NormBody& body, long samples,
                                          std::uint64_t seed, double c1 = 1.0,
                                          double c2 = 0.5);

// diam(V cap L) >= 2 (Vol_m(V cap L) / Vol_m(B^m))^{1/m}: the Santalo +
// polar-containment composite, in its dimensionally consistent
// m-dimensional form.
InequalityReport check_diameter_bound(const NormBody& body, const Subspace& L,
                                      long samples, std::uint64_t seed);

struct OmegaValue {
  double paper_value = 0.0;      // (Gamma(n/2+1) / (Gamma((n-m)/2+1) Gamma(m/2+1)))^{1/m}
  double corrected_value = 0.0;  // reciprocal: the defining volume ratio under
                                 // the standard ball-volume formula
};

OmegaValue omega(int n, int m);

}  // namespace flatpoly
