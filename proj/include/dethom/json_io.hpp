#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dethom/detsys.hpp"
#include "dethom/errors.hpp"
#include "dethom/homotopy.hpp"
#include "dethom/zdp.hpp"

namespace dethom {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json coeff_list(const UniPoly& f) {
  Json out = Json::array();
  for (Fp c : f.coeffs()) out.push_back(std::to_string(c.v));
  return out;
}

inline UniPoly coeffs_from_json(const PrimeField& F, const Json& j, const char* what) {
  if (!j.is_array()) fail(ErrorCode::ParseError, std::string(what) + " must be an array of decimal strings");
  std::vector<Fp> c;
  for (const auto& x : j) {
    if (!x.is_string()) fail(ErrorCode::ParseError, std::string(what) + " coefficients must be decimal strings");
    c.push_back(F.from_decimal(x.get<std::string>()));
  }
  return UniPoly(F, std::move(c));
}

inline Json columns_1based(const std::vector<std::size_t>& J) {
  Json out = Json::array();
  for (std::size_t j : J) out.push_back(j + 1);
  return out;
}

inline Json support_json(const Support& A) {
  Json out = Json::array();
  for (const auto& e : A) out.push_back(std::vector<u64>(e.begin(), e.end()));
  return out;
}

inline std::string rational_string(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace detail

/// {prime, lambda, w, v}; coefficients low to high as decimal strings.
inline Json param_to_json(const ZeroDimParam& R) {
  Json out;
  out["prime"] = R.field.modulus();
  Json lam = Json::array();
  for (Fp c : R.lambda) lam.push_back(c.v);
  out["lambda"] = lam;
  out["w"] = detail::coeff_list(R.w);
  Json v = Json::array();
  for (const auto& vi : R.v) v.push_back(detail::coeff_list(vi));
  out["v"] = v;
  return out;
}

/// Inverse of param_to_json; the result is validated.
inline ZeroDimParam param_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("prime") || !j.contains("lambda") || !j.contains("w") || !j.contains("v")) {
    fail(ErrorCode::ParseError, "parametrization record needs prime, lambda, w and v");
  }
  const PrimeField F(j["prime"].get<u64>());
  std::vector<Fp> lam;
  for (const auto& x : j["lambda"]) {
    if (!x.is_number_unsigned()) fail(ErrorCode::ParseError, "lambda entries must be nonnegative integers");
    lam.push_back(F.from_u64(x.get<u64>()));
  }
  UniPoly w = detail::coeffs_from_json(F, j["w"], "w");
  std::vector<UniPoly> v;
  for (const auto& vi : j["v"]) v.push_back(detail::coeffs_from_json(F, vi, "v"));
  ZeroDimParam R(F, std::move(lam), std::move(w), std::move(v));
  validate(R);
  return R;
}

inline Json report_to_json(const DetSystem& sys, const SolveReport& rep, bool timings) {
  Json out;
  if (rep.chi >= 0) out["chi"] = rep.chi;
  else out["chi"] = nullptr;
  out["rho"] = rep.rho;
  out["kappa"] = rep.kappa;
  Json subs = Json::array();
  const auto J = sys.column_subsets();
  for (std::size_t k = 0; k < J.size(); ++k) {
    Json s;
    s["columns"] = detail::columns_1based(J[k]);
    s["degree"] = k < rep.start_part_degrees.size() ? rep.start_part_degrees[k] : 0;
    if (k < rep.chi_parts.size()) s["mixed_volume"] = rep.chi_parts[k];
    subs.push_back(s);
  }
  out["subsets"] = subs;
  out["retries"] = rep.attempts - 1;
  out["seed"] = rep.seed;
  Json flags;
  flags["start_degree"] = rep.start_degree;
  flags["degree_at_one"] = rep.degree_at_one;
  flags["escaped"] = rep.escaped;
  flags["degree"] = rep.degree;
  flags["failures"] = rep.failures;
  out["flags"] = flags;
  if (timings) {
    Json t;
    for (const auto& [name, ms] : rep.timings) t[name] = ms;
    out["timings_ms"] = t;
  }
  return out;
}

inline Json bounds_to_json(const BoundsReport& B, const DetSystem& sys) {
  Json out;
  out["n"] = sys.n;
  out["s"] = sys.s();
  out["p"] = sys.p();
  out["q"] = sys.q();
  Json A = Json::array(), Bs = Json::array();
  for (const auto& a : B.A_supports) A.push_back(detail::support_json(a));
  for (const auto& b : B.B_supports) Bs.push_back(detail::support_json(b));
  out["g_supports"] = A;
  out["column_supports"] = Bs;
  out["a"] = B.a;
  out["b"] = B.b;
  out["gamma"] = B.gamma;
  Json subs = Json::array();
  for (std::size_t k = 0; k < B.chi.subsets.size(); ++k) {
    Json s;
    s["columns"] = detail::columns_1based(B.chi.subsets[k]);
    s["chi"] = B.chi.parts[k];
    s["rho"] = B.rho.parts[k];
    subs.push_back(s);
  }
  out["subsets"] = subs;
  out["chi"] = B.chi.total;
  out["rho"] = B.rho.total;
  out["dense"] = B.dense;
  return out;
}

inline Json weighted_to_json(const WeightedBounds& W) {
  Json out;
  out["weights"] = W.weights;
  out["permutation"] = W.permutation;
  out["gamma"] = W.gamma;
  out["delta"] = W.delta;
  Json subs = Json::array();
  for (std::size_t k = 0; k < W.subsets.size(); ++k) {
    Json s;
    s["columns"] = detail::columns_1based(W.subsets[k]);
    s["c"] = detail::rational_string(W.c_parts[k]);
    s["kappa"] = W.kappa_parts[k];
    subs.push_back(s);
  }
  out["subsets"] = subs;
  out["c"] = W.c;
  out["kappa"] = W.kappa;
  out["e"] = W.e;
  out["a_counts"] = W.a_counts;
  out["b_counts"] = W.b_counts;
  return out;
}

inline Json error_to_json(const Error& e) {
  Json out;
  out["error"] = std::string(to_string(e.code()));
  out["message"] = e.what();
  if (e.index() >= 0) out["index"] = e.index();
  else out["index"] = nullptr;
  return out;
}

}  // namespace dethom
