#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "dethom/errors.hpp"
#include "dethom/geom.hpp"
#include "dethom/mpoly.hpp"

namespace dethom {

using PolyMatrix = std::vector<std::vector<SparsePoly>>;

/// All k-subsets of {0..q-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t q, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > q) return out;
  std::vector<std::size_t> cur(k);
  std::iota(cur.begin(), cur.end(), std::size_t{0});
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == q - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

namespace detail {

inline SparsePoly poly_det(const PolyMatrix& A, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  const PrimeField& F = A[0][0].field();
  const std::size_t n = A[0][0].nvars();
  if (rows.size() == 1) return A[rows[0]][cols[0]];
  SparsePoly acc(F, n);
  std::vector<std::size_t> rest(cols.size() - 1);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const SparsePoly& a = A[rows[0]][cols[k]];
    if (a.is_zero()) continue;
    for (std::size_t j = 0, o = 0; j < cols.size(); ++j)
      if (j != k) rest[o++] = cols[j];
    SparsePoly term = a * poly_det(A, rows.subspan(1), rest);
    if (k % 2) acc -= term;
    else acc += term;
  }
  return acc;
}

inline u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::ResourceBudgetExceeded, "bound exceeds 64 bits");
  return r;
}

inline u64 checked_add(u64 a, u64 b) {
  u64 r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::ResourceBudgetExceeded, "bound exceeds 64 bits");
  return r;
}

inline u64 as_integer(const Rational& r, const char* what) {
  if (r.denominator() != 1 || r.numerator() < 0) {
    fail(ErrorCode::NonIntegralBound, std::string(what) + " is not a nonnegative integer");
  }
  return static_cast<u64>(r.numerator());
}

}  // namespace detail

/// p-minors of a p x q matrix, column tuples in lexicographic order.
inline std::vector<SparsePoly> minors(const PolyMatrix& M) {
  if (M.empty() || M[0].empty()) fail(ErrorCode::ShapeError, "empty matrix");
  const std::size_t p = M.size(), q = M[0].size();
  for (const auto& row : M)
    if (row.size() != q) fail(ErrorCode::ShapeError, "ragged matrix");
  if (p > q) fail(ErrorCode::ShapeError, "more rows than columns");
  std::vector<std::size_t> rows(p);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::vector<SparsePoly> out;
  for (const auto& cols : subsets(q, p)) out.push_back(detail::poly_det(M, rows, cols));
  return out;
}

/// u64 elementary symmetric polynomial e_k(xs).
inline u64 elementary_symmetric(std::span<const u64> xs, std::size_t k) {
  std::vector<u64> e(k + 1, 0);
  e[0] = 1;
  for (u64 x : xs)
    for (std::size_t j = std::min(k, xs.size()); j >= 1; --j) e[j] = detail::checked_add(e[j], detail::checked_mul(e[j - 1], x));
  return e[k];
}

/// V_p(F, g) = {x : g(x) = 0, rank F(x) < p} with n = q - p + s + 1.
struct DetSystem {
  PrimeField field;
  std::size_t n;
  std::vector<SparsePoly> g;
  PolyMatrix F;

  DetSystem(PrimeField fld, std::size_t nvars, std::vector<SparsePoly> gs, PolyMatrix mat)
      : field(fld), n(nvars), g(std::move(gs)), F(std::move(mat)) {
    if (F.empty() || F[0].empty()) fail(ErrorCode::ShapeError, "F must have at least one row and column");
    for (const auto& row : F)
      if (row.size() != F[0].size()) fail(ErrorCode::ShapeError, "F is ragged");
    if (p() > q()) fail(ErrorCode::ShapeError, "F has more rows than columns");
    if (n != q() - p() + s() + 1) {
      fail(ErrorCode::DimensionConstraint, "n = " + std::to_string(n) + " but q - p + s + 1 = " +
                                               std::to_string(q() - p() + s() + 1));
    }
    auto check = [&](const SparsePoly& f) {
      if (f.nvars() != n || !(f.field() == field)) fail(ErrorCode::ArityMismatch, "polynomial outside the system ring");
    };
    for (const auto& f : g) check(f);
    for (const auto& row : F)
      for (const auto& f : row) check(f);
  }

  std::size_t p() const noexcept { return F.size(); }
  std::size_t q() const noexcept { return F[0].size(); }
  std::size_t s() const noexcept { return g.size(); }

  u64 max_degree() const {
    u64 d = 0;
    for (const auto& f : g) d = std::max(d, f.total_degree());
    for (const auto& row : F)
      for (const auto& f : row) d = std::max(d, f.total_degree());
    return d;
  }

  std::vector<SparsePoly> column(std::size_t j) const {
    std::vector<SparsePoly> c;
    for (const auto& row : F) c.push_back(row.at(j));
    return c;
  }

  /// g followed by the p-minors of F.
  std::vector<SparsePoly> equations() const {
    std::vector<SparsePoly> eq = g;
    for (auto& m : minors(F)) eq.push_back(std::move(m));
    return eq;
  }

  std::vector<Support> g_supports() const {
    std::vector<Support> A;
    for (const auto& f : g) A.push_back(support(f, true));
    return A;
  }

  std::vector<Support> column_supports() const {
    std::vector<Support> B;
    for (std::size_t j = 0; j < q(); ++j) B.push_back(column_support(column(j)));
    return B;
  }

  /// The (n - s)-subsets of columns indexing the start subsystems.
  std::vector<std::vector<std::size_t>> column_subsets() const { return subsets(q(), n - s()); }
};

/// Per-subset mixed volumes and their sum.
struct SubsetBound {
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<i64> parts;
  i64 total = 0;
};

namespace detail {

inline SubsetBound subset_mixed_volumes(const DetSystem& sys, bool enlarge) {
  if (sys.n > kMaxMixedDim) fail(ErrorCode::DimensionTooLarge, "mixed volumes are limited to n <= 5");
  std::vector<Support> A = sys.g_supports(), B = sys.column_supports();
  if (enlarge) {
    for (auto& a : A) a = enlarge_by_simplex(a);
    for (auto& b : B) b = enlarge_by_simplex(b);
  }
  SubsetBound out;
  out.subsets = sys.column_subsets();
  for (const auto& J : out.subsets) {
    std::vector<Support> tuple = A;
    for (std::size_t j : J) tuple.push_back(B[j]);
    out.parts.push_back(mixed_volume(std::span<const Support>(tuple)));
    out.total += out.parts.back();
  }
  return out;
}

}  // namespace detail

/// chi = sum over column subsets J of MV(C_1..C_s, D_J).
inline SubsetBound chi_bound(const DetSystem& sys) { return detail::subset_mixed_volumes(sys, false); }

/// rho: the same sum with every support enlarged by the unit simplex.
inline SubsetBound rho_bound(const DetSystem& sys) { return detail::subset_mixed_volumes(sys, true); }

/// prod deg g_i * e_{n-s}(total column degrees).
inline u64 dense_bound(const DetSystem& sys) {
  u64 prod = 1;
  for (const auto& f : sys.g) prod = detail::checked_mul(prod, f.total_degree());
  std::vector<u64> cols;
  for (std::size_t j = 0; j < sys.q(); ++j) {
    u64 d = 0;
    for (const auto& f : sys.column(j)) d = std::max(d, f.total_degree());
    cols.push_back(d);
  }
  return detail::checked_mul(prod, elementary_symmetric(cols, sys.n - sys.s()));
}

struct BoundsReport {
  std::vector<Support> A_supports;
  std::vector<Support> B_supports;
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  u64 gamma = 0;
  SubsetBound chi;
  SubsetBound rho;
  u64 dense = 0;
};

inline BoundsReport bounds(const DetSystem& sys) {
  BoundsReport R;
  R.A_supports = sys.g_supports();
  R.B_supports = sys.column_supports();
  u64 sa = 0, sb = 0;
  for (const auto& A : R.A_supports) {
    R.a.push_back(A.size());
    sa += A.size();
  }
  for (const auto& B : R.B_supports) {
    R.b.push_back(B.size());
    sb += B.size();
  }
  R.gamma = sa + sys.p() * sb;
  R.chi = chi_bound(sys);
  R.rho = rho_bound(sys);
  R.dense = dense_bound(sys);
  return R;
}

inline constexpr std::size_t kMaxCountVars = 8;
inline constexpr u64 kMaxCountDegree = 10000;

/// #{alpha in N^n : sum w_i alpha_i <= d}.
inline u64 count_weighted_monomials(std::size_t n, std::span<const u64> weights, u64 d) {
  if (weights.size() != n) fail(ErrorCode::ArityMismatch, "one weight per variable required");
  if (n > kMaxCountVars || d > kMaxCountDegree) {
    fail(ErrorCode::ResourceBudgetExceeded, "monomial counting is limited to n <= 8 and d <= 10^4");
  }
  for (u64 w : weights)
    if (w == 0) fail(ErrorCode::DegenerateInput, "weights must be positive");
  // ways[x] = number of exponent vectors of weighted degree exactly x
  std::vector<u128> ways(d + 1, 0);
  ways[0] = 1;
  for (u64 w : weights)
    for (u64 x = w; x <= d; ++x) ways[x] += ways[x - w];
  u128 total = 0;
  for (u128 c : ways) total += c;
  if (total > std::numeric_limits<u64>::max()) fail(ErrorCode::ResourceBudgetExceeded, "monomial count exceeds 64 bits");
  return static_cast<u64>(total);
}

/// d_1..d_n / (w_1..w_n) for a square system.
inline u64 weighted_bezout(std::span<const u64> degrees, std::span<const u64> weights) {
  if (degrees.size() != weights.size()) fail(ErrorCode::ArityMismatch, "one degree per weight required");
  u64 num = 1, den = 1;
  for (u64 d : degrees) num = detail::checked_mul(num, d);
  for (u64 w : weights) {
    if (w == 0) fail(ErrorCode::DegenerateInput, "weights must be positive");
    den = detail::checked_mul(den, w);
  }
  if (num % den) fail(ErrorCode::NonIntegralBound, "weighted Bezout number is not an integer");
  return num / den;
}

struct WeightedBounds {
  std::vector<u64> weights;              // sorted non-decreasing
  std::vector<std::size_t> permutation;  // weights[k] = input[permutation[k]]
  std::vector<u64> gamma;                // weighted degrees of g
  std::vector<u64> delta;                // weighted column degrees of F
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<Rational> c_parts;
  u64 c = 0;
  std::vector<u64> kappa_parts;
  u64 kappa = 0;
  u64 e = 0;
  std::vector<u64> a_counts;
  std::vector<u64> b_counts;
};

inline WeightedBounds weighted_bounds(const DetSystem& sys, std::span<const u64> weights) {
  if (weights.size() != sys.n) fail(ErrorCode::ArityMismatch, "one weight per variable required");
  WeightedBounds W;
  for (u64 w : weights)
    if (w == 0) fail(ErrorCode::DegenerateInput, "weights must be positive");
  W.permutation.resize(sys.n);
  std::iota(W.permutation.begin(), W.permutation.end(), std::size_t{0});
  std::stable_sort(W.permutation.begin(), W.permutation.end(),
                   [&](std::size_t a, std::size_t b) { return weights[a] < weights[b]; });
  for (std::size_t k : W.permutation) W.weights.push_back(weights[k]);

  for (std::size_t i = 0; i < sys.s(); ++i) {
    if (sys.g[i].is_zero()) fail(ErrorCode::DegenerateInput, "g_" + std::to_string(i + 1) + " is zero", static_cast<long>(i));
    W.gamma.push_back(weighted_degree(sys.g[i], weights));
  }
  for (std::size_t j = 0; j < sys.q(); ++j) {
    bool any = false;
    u64 d = 0;
    for (const auto& f : sys.column(j)) {
      if (f.is_zero()) continue;
      any = true;
      d = std::max(d, weighted_degree(f, weights));
    }
    if (!any) fail(ErrorCode::DegenerateInput, "column " + std::to_string(j + 1) + " of F is zero", static_cast<long>(j));
    W.delta.push_back(d);
  }

  u64 wprod = 1, wprod_head = 1, gprod = 1, gprod_shift = 1;
  for (std::size_t k = 0; k < sys.n; ++k) {
    wprod = detail::checked_mul(wprod, W.weights[k]);
    if (k + 1 < sys.n) wprod_head = detail::checked_mul(wprod_head, W.weights[k]);
  }
  for (u64 gi : W.gamma) {
    gprod = detail::checked_mul(gprod, gi);
    gprod_shift = detail::checked_mul(gprod_shift, gi + 1);
  }

  W.subsets = sys.column_subsets();
  for (const auto& J : W.subsets) {
    u64 num = gprod;
    std::vector<u64> degs = W.gamma;
    for (std::size_t j : J) {
      num = detail::checked_mul(num, W.delta[j]);
      degs.push_back(W.delta[j]);
    }
    W.c_parts.push_back(Rational(static_cast<i64>(num), static_cast<i64>(wprod)));
    std::sort(degs.begin(), degs.end());
    u64 best = 0;
    for (std::size_t k = 1; k <= sys.n; ++k) {
      u64 v = 1;
      for (std::size_t i = 0; i < k; ++i) v = detail::checked_mul(v, degs[i]);
      for (std::size_t i = k; i < sys.n; ++i) v = detail::checked_mul(v, W.weights[i]);
      best = std::max(best, v);
    }
    W.kappa_parts.push_back(best);
    W.kappa = detail::checked_add(W.kappa, best);
  }

  const std::size_t k = sys.n - sys.s();
  const u64 c_num = detail::checked_mul(gprod, elementary_symmetric(W.delta, k));
  W.c = detail::as_integer(Rational(static_cast<i64>(c_num), static_cast<i64>(wprod)), "c");
  std::vector<u64> shifted;
  for (u64 d : W.delta) shifted.push_back(d + 1);
  const u64 e_num = detail::checked_mul(gprod_shift, elementary_symmetric(shifted, k));
  W.e = detail::as_integer(Rational(static_cast<i64>(e_num), static_cast<i64>(wprod_head)), "e");

  for (u64 gi : W.gamma) W.a_counts.push_back(count_weighted_monomials(sys.n, weights, gi));
  for (u64 dj : W.delta) W.b_counts.push_back(count_weighted_monomials(sys.n, weights, dj));
  return W;
}

}  // namespace dethom
