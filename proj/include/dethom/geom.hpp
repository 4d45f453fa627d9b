#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "dethom/errors.hpp"
#include "dethom/mpoly.hpp"

namespace dethom {

using LatticePoint = std::vector<i64>;
using i128 = __int128;

inline constexpr std::size_t kMaxHullDim = 6;
inline constexpr std::size_t kMaxMixedDim = 5;

namespace detail {

inline i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) a = std::exchange(b, a % b);
  return a;
}

/// Determinant of a small integer matrix by Bareiss (exact, fraction-free).
inline i128 int_det(std::vector<std::vector<i128>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  i128 sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline std::size_t int_rank(std::vector<std::vector<i128>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[rank], a[piv]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const i128 f = a[i][c], g = a[rank][c];
      i128 common = 0;
      for (std::size_t j = c; j < cols; ++j) {
        a[i][j] = a[i][j] * g - a[rank][j] * f;
        common = gcd128(common, a[i][j]);
      }
      if (common > 1)
        for (std::size_t j = c; j < cols; ++j) a[i][j] /= common;
    }
    ++rank;
  }
  return rank;
}

/// Beneath-beyond placing triangulation of a full-dimensional point set in
/// Z^k. Produces the boundary facets (simplicial, possibly coplanar) and the
/// normalized volume k! vol.
class PlacingHull {
 public:
  struct Facet {
    std::vector<std::size_t> verts;  // k point indices
    std::vector<i128> normal;        // outward
    i128 offset;                     // normal . x <= offset on the hull
  };

  PlacingHull(const std::vector<std::vector<i128>>& pts, std::vector<std::size_t> simplex, std::vector<std::size_t> rest)
      : pts_(pts), k_(pts.empty() ? 0 : pts[0].size()) {
    // interior reference, scaled by k+1
    ref_.assign(k_, 0);
    for (std::size_t v : simplex)
      for (std::size_t i = 0; i < k_; ++i) ref_[i] += pts_[v][i];
    nvol_ = abs128(simplex_det(simplex));
    for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
      std::vector<std::size_t> f;
      for (std::size_t i = 0; i < simplex.size(); ++i)
        if (i != drop) f.push_back(simplex[i]);
      facets_.push_back(make_facet(std::move(f)));
    }
    for (std::size_t q : rest) insert(q);
  }

  const std::vector<Facet>& facets() const { return facets_; }
  i128 normalized_volume() const { return nvol_; }

 private:
  static i128 abs128(i128 x) { return x < 0 ? -x : x; }

  i128 simplex_det(const std::vector<std::size_t>& s) const {
    std::vector<std::vector<i128>> m;
    for (std::size_t i = 1; i < s.size(); ++i) {
      std::vector<i128> row(k_);
      for (std::size_t j = 0; j < k_; ++j) row[j] = pts_[s[i]][j] - pts_[s[0]][j];
      m.push_back(std::move(row));
    }
    return int_det(std::move(m));
  }

  Facet make_facet(std::vector<std::size_t> verts) const {
    // normal by cofactors of the (k-1) x k edge matrix
    std::vector<std::vector<i128>> edges;
    for (std::size_t i = 1; i < verts.size(); ++i) {
      std::vector<i128> row(k_);
      for (std::size_t j = 0; j < k_; ++j) row[j] = pts_[verts[i]][j] - pts_[verts[0]][j];
      edges.push_back(std::move(row));
    }
    std::vector<i128> normal(k_);
    for (std::size_t c = 0; c < k_; ++c) {
      std::vector<std::vector<i128>> minor;
      for (const auto& e : edges) {
        std::vector<i128> row;
        for (std::size_t j = 0; j < k_; ++j)
          if (j != c) row.push_back(e[j]);
        minor.push_back(std::move(row));
      }
      const i128 d = int_det(std::move(minor));
      normal[c] = (c % 2 == 0) ? d : -d;
    }
    i128 offset = dot(normal, pts_[verts[0]]);
    // orient away from the interior reference
    if (dot(normal, ref_) > offset * static_cast<i128>(k_ + 1)) {
      for (auto& x : normal) x = -x;
      offset = -offset;
    }
    return {std::move(verts), std::move(normal), offset};
  }

  static i128 dot(const std::vector<i128>& a, const std::vector<i128>& b) {
    i128 s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  void insert(std::size_t q) {
    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < facets_.size(); ++f)
      if (dot(facets_[f].normal, pts_[q]) > facets_[f].offset) visible.push_back(f);
    if (visible.empty()) return;
    std::map<std::vector<std::size_t>, int> ridges;
    for (std::size_t f : visible) {
      const auto& vs = facets_[f].verts;
      nvol_ += abs128(simplex_det_with(vs, q));
      for (std::size_t drop = 0; drop < vs.size(); ++drop) {
        std::vector<std::size_t> r;
        for (std::size_t i = 0; i < vs.size(); ++i)
          if (i != drop) r.push_back(vs[i]);
        std::sort(r.begin(), r.end());
        ++ridges[r];
      }
    }
    std::vector<Facet> kept;
    std::size_t vi = 0;
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      if (vi < visible.size() && visible[vi] == f) {
        ++vi;
        continue;
      }
      kept.push_back(std::move(facets_[f]));
    }
    for (auto& [ridge, count] : ridges) {
      if (count != 1) continue;
      std::vector<std::size_t> verts = ridge;
      verts.push_back(q);
      kept.push_back(make_facet(std::move(verts)));
    }
    facets_ = std::move(kept);
  }

  i128 simplex_det_with(const std::vector<std::size_t>& facet, std::size_t q) const {
    std::vector<std::size_t> s = facet;
    s.push_back(q);
    return simplex_det(s);
  }

  const std::vector<std::vector<i128>>& pts_;
  std::size_t k_;
  std::vector<i128> ref_;
  std::vector<Facet> facets_;
  i128 nvol_ = 0;
};

}  // namespace detail

/// Convex hull of a finite lattice point set. Vertices and volume are
/// computed once, at construction.
class Polytope {
 public:
  Polytope(std::size_t dim, std::set<LatticePoint> points) : dim_(dim), points_(std::move(points)) {
    if (points_.empty()) fail(ErrorCode::ZeroInput, "polytope of an empty point set");
    if (dim_ > kMaxHullDim) fail(ErrorCode::DimensionTooLarge, "hull dimension above " + std::to_string(kMaxHullDim));
    for (const auto& p : points_)
      if (p.size() != dim_) fail(ErrorCode::DimensionMismatch, "point of the wrong dimension");
    build();
  }

  static Polytope from_support(const Support& s) {
    if (s.empty()) fail(ErrorCode::ZeroInput, "polytope of an empty support");
    std::set<LatticePoint> pts;
    for (const auto& e : s) pts.insert(LatticePoint(e.begin(), e.end()));
    return Polytope(s.begin()->size(), std::move(pts));
  }

  std::size_t dim() const noexcept { return dim_; }
  /// Dimension of the affine hull.
  std::size_t affine_dim() const noexcept { return affine_dim_; }
  const std::set<LatticePoint>& points() const noexcept { return points_; }
  const std::set<LatticePoint>& vertices() const noexcept { return vertices_; }
  /// n! * vol when full-dimensional, else 0.
  i128 normalized_volume() const noexcept { return affine_dim_ == dim_ ? nvol_ : 0; }
  Rational volume() const {
    i128 fact = 1;
    for (std::size_t i = 2; i <= dim_; ++i) fact *= static_cast<i128>(i);
    return Rational(static_cast<i64>(normalized_volume()), static_cast<i64>(fact));
  }

 private:
  void build() {
    std::vector<LatticePoint> pts(points_.begin(), points_.end());
    const LatticePoint& base = pts[0];
    // greedy affine basis and the coordinates that keep it independent
    std::vector<std::size_t> simplex = {0};
    std::vector<std::vector<i128>> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      std::vector<i128> d(dim_);
      for (std::size_t j = 0; j < dim_; ++j) d[j] = pts[i][j] - base[j];
      auto trial = diffs;
      trial.push_back(d);
      if (detail::int_rank(trial) == trial.size()) {
        diffs = std::move(trial);
        simplex.push_back(i);
      }
    }
    affine_dim_ = diffs.size();
    const std::size_t k = affine_dim_;
    if (k == 0) {
      vertices_ = {pts[0]};
      nvol_ = 0;
      return;
    }
    std::vector<std::size_t> coords;
    for (std::size_t c = 0; c < dim_ && coords.size() < k; ++c) {
      std::vector<std::vector<i128>> sub(k);
      auto trial = coords;
      trial.push_back(c);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t cc : trial) sub[r].push_back(diffs[r][cc]);
      if (detail::int_rank(sub) == trial.size()) coords = std::move(trial);
    }
    std::vector<std::vector<i128>> proj(pts.size(), std::vector<i128>(k));
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < k; ++j) proj[i][j] = pts[i][coords[j]];
    if (k == 1) {
      auto [lo, hi] = std::minmax_element(proj.begin(), proj.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
      vertices_ = {pts[static_cast<std::size_t>(lo - proj.begin())], pts[static_cast<std::size_t>(hi - proj.begin())]};
      nvol_ = (*hi)[0] - (*lo)[0];
      return;
    }
    std::vector<std::size_t> rest;
    std::vector<bool> in_simplex(pts.size(), false);
    for (std::size_t s : simplex) in_simplex[s] = true;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (!in_simplex[i]) rest.push_back(i);
    detail::PlacingHull hull(proj, simplex, rest);
    nvol_ = hull.normalized_volume();
    // a point is a vertex iff the normals of the facets through it span R^k
    std::map<std::size_t, std::vector<std::vector<i128>>> active;
    for (const auto& f : hull.facets())
      for (std::size_t v : f.verts) active[v].push_back(f.normal);
    for (auto& [v, normals] : active)
      if (detail::int_rank(normals) == k) vertices_.insert(pts[v]);
  }

  std::size_t dim_;
  std::set<LatticePoint> points_;
  std::set<LatticePoint> vertices_;
  std::size_t affine_dim_ = 0;
  i128 nvol_ = 0;
};

inline Polytope convex_hull(std::size_t dim, std::set<LatticePoint> points) { return Polytope(dim, std::move(points)); }

inline Polytope minkowski_sum(const Polytope& P, const Polytope& Q) {
  if (P.dim() != Q.dim()) fail(ErrorCode::DimensionMismatch, "Minkowski sum of polytopes in different dimensions");
  std::set<LatticePoint> sums;
  for (const auto& a : P.vertices())
    for (const auto& b : Q.vertices()) {
      LatticePoint s(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
      sums.insert(std::move(s));
    }
  return Polytope(P.dim(), std::move(sums));
}

/// Mixed volume normalized so that n standard simplices give 1, by
/// inclusion-exclusion over the 2^n - 1 partial Minkowski sums.
inline i64 mixed_volume(std::span<const Polytope> polys) {
  const std::size_t n = polys.size();
  if (n == 0) fail(ErrorCode::DimensionMismatch, "mixed volume of no polytopes");
  for (const auto& P : polys)
    if (P.dim() != n) fail(ErrorCode::DimensionMismatch, "mixed volume needs n polytopes in dimension n");
  if (n > kMaxMixedDim) fail(ErrorCode::DimensionTooLarge, "mixed volume dimension above " + std::to_string(kMaxMixedDim));
  i128 total = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::optional<Polytope> sum;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      sum = sum ? minkowski_sum(*sum, polys[i]) : polys[i];
    }
    const int size = std::popcount(mask);
    const i128 nv = sum->normalized_volume();
    total += ((n - static_cast<std::size_t>(size)) % 2 == 0) ? nv : -nv;
  }
  i128 fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= static_cast<i128>(i);
  if (total % fact != 0 || total < 0) fail(ErrorCode::NonIntegralBound, "mixed volume is not a nonnegative integer");
  return static_cast<i64>(total / fact);
}

inline i64 mixed_volume(std::span<const Support> supports) {
  std::vector<Polytope> polys;
  for (const auto& s : supports) polys.push_back(Polytope::from_support(s));
  return mixed_volume(std::span<const Polytope>(polys));
}

/// A + {0, e_1, ..., e_n}.
inline Support enlarge_by_simplex(const Support& A) {
  Support out;
  for (const auto& a : A) {
    out.insert(a);
    for (std::size_t i = 0; i < a.size(); ++i) {
      ExponentVec b = a;
      ++b[i];
      out.insert(std::move(b));
    }
  }
  return out;
}

}  // namespace dethom
