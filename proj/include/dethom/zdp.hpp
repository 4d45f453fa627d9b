#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "dethom/errors.hpp"
#include "dethom/mpoly.hpp"
#include "dethom/upoly.hpp"

namespace dethom {

/// ((w, v_1..v_n), lambda): the points (v_1(tau), .., v_n(tau)) for the roots
/// tau of w, with lambda_1 v_1 + .. + lambda_n v_n = y mod w.
struct ZeroDimParam {
  PrimeField field;
  std::vector<Fp> lambda;
  UniPoly w;
  std::vector<UniPoly> v;

  ZeroDimParam(PrimeField F, std::vector<Fp> lam, UniPoly w_, std::vector<UniPoly> v_)
      : field(F), lambda(std::move(lam)), w(std::move(w_)), v(std::move(v_)) {}

  /// The empty set in n variables (w = 1).
  static ZeroDimParam empty(PrimeField F, std::vector<Fp> lam) {
    const std::size_t n = lam.size();
    return ZeroDimParam(F, std::move(lam), UniPoly::constant(F, F.one()), std::vector<UniPoly>(n, UniPoly(F)));
  }

  std::size_t nvars() const noexcept { return lambda.size(); }
  std::size_t degree() const noexcept { return static_cast<std::size_t>(std::max<long>(w.degree(), 0)); }

  friend bool operator==(const ZeroDimParam& a, const ZeroDimParam& b) {
    return a.field == b.field && a.lambda == b.lambda && a.w == b.w && a.v == b.v;
  }
};

inline UniPoly lambda_combination(const ZeroDimParam& R) {
  UniPoly acc(R.field);
  for (std::size_t i = 0; i < R.nvars(); ++i) acc = acc + R.v[i].scaled(R.lambda[i]);
  return acc;
}

/// Checks w monic squarefree, deg v_i < deg w, sum lambda_i v_i = y mod w.
inline void validate(const ZeroDimParam& R) {
  if (R.v.size() != R.lambda.size()) fail(ErrorCode::ArityMismatch, "lambda and v have different lengths");
  if (!R.w.is_monic()) fail(ErrorCode::NotSquarefree, "w is not monic");
  if (!is_squarefree(R.w)) fail(ErrorCode::NotSquarefree, "w is not squarefree");
  for (std::size_t i = 0; i < R.v.size(); ++i) {
    if (R.v[i].degree() >= R.w.degree()) {
      fail(ErrorCode::DegreeBound, "deg v_" + std::to_string(i + 1) + " >= deg w", static_cast<long>(i));
    }
  }
  if (R.w.degree() == 0) return;
  const UniPoly y = UniPoly::monomial(R.field, 1);
  if (!((lambda_combination(R) - y) % R.w).is_zero()) {
    fail(ErrorCode::LinearFormMismatch, "lambda(v) differs from y modulo w");
  }
}

/// f(v_1(y), .., v_n(y)) mod w, with the powers of every v_i cached.
class ParamEvaluator {
 public:
  explicit ParamEvaluator(const ZeroDimParam& R) : R_(R) {}

  UniPoly operator()(const SparsePoly& f) {
    if (f.nvars() != R_.nvars()) fail(ErrorCode::ArityMismatch, "polynomial and parametrization differ in variable count");
    UniPoly acc(R_.field);
    for (const auto& [e, c] : f.terms()) {
      UniPoly m = UniPoly::constant(R_.field, c);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) m = mulmod(m, power(i, e[i]), R_.w);
      acc = acc + m;
    }
    return acc % R_.w;
  }

 private:
  const UniPoly& power(std::size_t var, std::uint32_t k) {
    if (powers_.size() < R_.nvars()) powers_.resize(R_.nvars());
    auto& p = powers_[var];
    if (p.empty()) p.push_back(UniPoly::constant(R_.field, R_.field.one()) % R_.w);
    while (p.size() <= k) p.push_back(mulmod(p.back(), R_.v[var], R_.w));
    return p[k];
  }

  const ZeroDimParam& R_;
  std::vector<std::vector<UniPoly>> powers_;
};

/// Residual check: every polynomial vanishes on the points of R. Fails with
/// ResidualNonzero carrying the index of the first offending polynomial.
inline void verify_against(const ZeroDimParam& R, std::span<const SparsePoly> system) {
  if (R.w.degree() <= 0) return;
  ParamEvaluator eval(R);
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (!eval(system[i]).is_zero()) {
      fail(ErrorCode::ResidualNonzero, "equation " + std::to_string(i) + " does not vanish on the parametrization",
           static_cast<long>(i));
    }
  }
}

/// Disjoint union: w = prod w_i, v_j by Chinese remaindering.
inline ZeroDimParam param_union(std::span<const ZeroDimParam> params) {
  if (params.empty()) fail(ErrorCode::ShapeError, "union of no parametrizations");
  const ZeroDimParam& first = params.front();
  std::vector<UniPoly> moduli;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!(params[i].field == first.field) || params[i].lambda != first.lambda) {
      fail(ErrorCode::LinearFormMismatch, "union of parametrizations with different linear forms", static_cast<long>(i));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (gcd(params[i].w, params[j].w).degree() > 0) {
        fail(ErrorCode::SharedRoots, "parametrizations " + std::to_string(j) + " and " + std::to_string(i) + " share roots",
             static_cast<long>(i));
      }
    }
  }
  std::vector<const ZeroDimParam*> live;
  for (const auto& P : params)
    if (P.w.degree() > 0) live.push_back(&P);
  if (live.empty()) return ZeroDimParam::empty(first.field, first.lambda);
  UniPoly w = UniPoly::constant(first.field, first.field.one());
  for (const auto* P : live) {
    w = w * P->w;
    moduli.push_back(P->w);
  }
  std::vector<UniPoly> v;
  for (std::size_t k = 0; k < first.nvars(); ++k) {
    std::vector<UniPoly> res;
    for (const auto* P : live) res.push_back(P->v[k]);
    v.push_back(crt(res, moduli));
  }
  ZeroDimParam out(first.field, first.lambda, w.monic(), std::move(v));
  validate(out);
  return out;
}

inline constexpr u64 kRootScanLimit = u64{1} << 20;
inline constexpr long kSplitDegreeLimit = 64;

namespace detail {

inline UniPoly powmod(UniPoly base, u64 e, const UniPoly& m) {
  UniPoly r = UniPoly::constant(m.field(), m.field().one()) % m;
  base = base % m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

/// Roots of a monic squarefree product of distinct linear factors, by random
/// splitting with gcd(h, (y + a)^((p-1)/2) - 1).
inline void split_linear(const UniPoly& h, Rng& rng, std::vector<Fp>& out) {
  const PrimeField& F = h.field();
  if (h.degree() <= 0) return;
  if (h.degree() == 1) {
    out.push_back(F.neg(h.monic()[0]));
    return;
  }
  for (;;) {
    const UniPoly shift = UniPoly(F, {sample(F, rng), F.one()});
    UniPoly g = gcd(h, detail::powmod(shift, (F.modulus() - 1) / 2, h) - UniPoly::constant(F, F.one()));
    if (g.degree() > 0 && g.degree() < h.degree()) {
      split_linear(g, rng, out);
      split_linear(h / g, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Points of R with coordinates in F_p. Small fields scan every residue;
/// larger ones split gcd(w, y^p - y) when deg w <= 64.
inline std::vector<std::vector<Fp>> roots_in_base_field(const ZeroDimParam& R) {
  const PrimeField& F = R.field;
  std::vector<std::vector<Fp>> out;
  if (R.w.degree() <= 0) return out;
  std::vector<Fp> roots;
  if (F.modulus() <= kRootScanLimit) {
    for (u64 y = 0; y < F.modulus(); ++y)
      if (R.w.eval(Fp{y}).is_zero()) roots.push_back(Fp{y});
  } else if (R.w.degree() <= kSplitDegreeLimit) {
    const UniPoly y = UniPoly::monomial(F, 1);
    const UniPoly rational = gcd(R.w, detail::powmod(y, F.modulus(), R.w) - y);
    Rng rng(F.modulus());
    detail::split_linear(rational, rng, roots);
  } else {
    fail(ErrorCode::FieldTooLarge, "root extraction needs p <= 2^20 or deg w <= 64");
  }
  for (Fp r : roots) {
    std::vector<Fp> pt;
    for (const auto& vi : R.v) pt.push_back(vi.eval(r));
    out.push_back(std::move(pt));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dethom
