#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dethom/errors.hpp"
#include "dethom/mpoly.hpp"
#include "dethom/ring.hpp"
#include "dethom/upoly.hpp"
#include "dethom/zdp.hpp"

namespace dethom {

/// Graded reverse lexicographic, larger first.
struct GrevlexGreater {
  bool operator()(const ExponentVec& a, const ExponentVec& b) const {
    const u64 da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }
};

namespace detail {

using GTerms = std::map<ExponentVec, Fp, GrevlexGreater>;

inline bool divides(const ExponentVec& a, const ExponentVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline ExponentVec lcm(const ExponentVec& a, const ExponentVec& b) {
  ExponentVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline ExponentVec quotient_exp(const ExponentVec& a, const ExponentVec& b) {
  ExponentVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline bool coprime(const ExponentVec& a, const ExponentVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

inline GTerms to_gterms(const SparsePoly& f) {
  GTerms t;
  for (const auto& [e, c] : f.terms()) t.emplace(e, c);
  return t;
}

inline SparsePoly from_gterms(const PrimeField& F, std::size_t n, const GTerms& t) {
  SparsePoly f(F, n);
  for (const auto& [e, c] : t) f.add_term(e, c);
  return f;
}

/// acc -= c * x^shift * g
inline void sub_scaled(const PrimeField& F, GTerms& acc, Fp c, const ExponentVec& shift, const GTerms& g) {
  ExponentVec e(shift.size());
  for (const auto& [ge, gc] : g) {
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = ge[i] + shift[i];
    auto [it, inserted] = acc.try_emplace(e, F.neg(F.mul(c, gc)));
    if (!inserted) {
      it->second = F.sub(it->second, F.mul(c, gc));
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

inline void make_monic(const PrimeField& F, GTerms& f) {
  if (f.empty()) return;
  const Fp inv = F.inv(f.begin()->second);
  for (auto& [e, c] : f) c = F.mul(c, inv);
}

/// Full normal form of f modulo monic generators.
inline GTerms normal_form(const PrimeField& F, GTerms f, const std::vector<GTerms>& basis) {
  GTerms rem;
  while (!f.empty()) {
    auto lead = f.begin();
    const ExponentVec le = lead->first;
    const Fp lc = lead->second;
    const GTerms* red = nullptr;
    for (const auto& g : basis) {
      if (divides(g.begin()->first, le)) {
        red = &g;
        break;
      }
    }
    if (!red) {
      rem.emplace(le, lc);
      f.erase(lead);
      continue;
    }
    sub_scaled(F, f, lc, quotient_exp(le, red->begin()->first), *red);
  }
  return rem;
}

}  // namespace detail

inline constexpr std::size_t kDefaultPairBudget = 200000;

/// Reduced Groebner basis under grevlex (x1 > x2 > .. > xn). Keeps the input
/// system for later self-checks.
struct GroebnerBasis {
  PrimeField field;
  std::size_t nvars;
  std::vector<SparsePoly> generators;  // sorted by increasing leading monomial
  std::vector<SparsePoly> source;

  bool is_unit_ideal() const {
    return generators.size() == 1 && total_degree(leading_monomial(generators[0])) == 0;
  }

  static ExponentVec leading_monomial(const SparsePoly& f) {
    ExponentVec best = f.terms().begin()->first;
    GrevlexGreater gt;
    for (const auto& [e, c] : f.terms())
      if (gt(e, best)) best = e;
    return best;
  }
};

/// Buchberger with normal selection, the coprime criterion and the chain
/// criterion. Throws ResourceBudgetExceeded past `pair_budget` reductions.
inline GroebnerBasis groebner(std::span<const SparsePoly> system, std::size_t pair_budget = kDefaultPairBudget) {
  using namespace detail;
  if (system.empty()) fail(ErrorCode::ZeroInput, "Groebner basis of an empty system");
  const PrimeField F = system.front().field();
  const std::size_t n = system.front().nvars();
  std::vector<GTerms> G;
  for (const auto& f : system) {
    if (f.nvars() != n || !(f.field() == F)) fail(ErrorCode::ArityMismatch, "system polynomials disagree on ring");
    GTerms t = normal_form(F, to_gterms(f), G);
    if (t.empty()) continue;
    make_monic(F, t);
    G.push_back(std::move(t));
  }
  GroebnerBasis out{F, n, {}, std::vector<SparsePoly>(system.begin(), system.end())};
  if (G.empty()) return out;

  auto lm = [&](std::size_t i) -> const ExponentVec& { return G[i].begin()->first; };
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 1; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.insert({i, j});

  std::size_t processed = 0;
  GrevlexGreater gt;
  while (!pairs.empty()) {
    // normal selection: smallest lcm
    auto best = pairs.begin();
    ExponentVec best_lcm = lcm(lm(best->first), lm(best->second));
    for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
      ExponentVec l = lcm(lm(it->first), lm(it->second));
      if (gt(best_lcm, l)) {
        best = it;
        best_lcm = std::move(l);
      }
    }
    const auto [i, j] = *best;
    pairs.erase(best);
    if (coprime(lm(i), lm(j))) continue;
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (!divides(lm(k), best_lcm)) continue;
      const auto ik = std::minmax(i, k), jk = std::minmax(j, k);
      if (!pairs.count({ik.first, ik.second}) && !pairs.count({jk.first, jk.second})) chain = true;
    }
    if (chain) continue;
    if (++processed > pair_budget) {
      fail(ErrorCode::ResourceBudgetExceeded, "Groebner basis exceeded " + std::to_string(pair_budget) + " pair reductions");
    }
    GTerms s;
    sub_scaled(F, s, F.neg(F.one()), quotient_exp(best_lcm, lm(i)), G[i]);
    sub_scaled(F, s, F.one(), quotient_exp(best_lcm, lm(j)), G[j]);
    GTerms r = normal_form(F, std::move(s), G);
    if (r.empty()) continue;
    make_monic(F, r);
    G.push_back(std::move(r));
    const std::size_t m = G.size() - 1;
    for (std::size_t k = 0; k < m; ++k) pairs.insert({k, m});
    if (total_degree(lm(m)) == 0) break;  // unit ideal
  }

  // minimalize, then interreduce
  std::vector<GTerms> minimal;
  for (std::size_t a = 0; a < G.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < G.size() && !redundant; ++b) {
      if (a == b || !divides(lm(b), lm(a))) continue;
      redundant = lm(a) != lm(b) || b < a;
    }
    if (!redundant) minimal.push_back(G[a]);
  }
  std::vector<GTerms> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<GTerms> others;
    for (std::size_t b = 0; b < minimal.size(); ++b)
      if (b != a) others.push_back(minimal[b]);
    GTerms head;
    head.insert(*minimal[a].begin());
    GTerms tail(std::next(minimal[a].begin()), minimal[a].end());
    GTerms t = normal_form(F, std::move(tail), others);
    t.insert(*head.begin());
    reduced.push_back(std::move(t));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const GTerms& a, const GTerms& b) { return gt(b.begin()->first, a.begin()->first); });
  for (const auto& t : reduced) out.generators.push_back(from_gterms(F, n, t));
  return out;
}

/// Finite-dimensional residue algebra of a zero-dimensional ideal.
class QuotientAlgebra {
 public:
  explicit QuotientAlgebra(GroebnerBasis basis) : gb_(std::move(basis)) {
    for (const auto& g : gb_.generators) lead_.push_back(detail::to_gterms(g));
    if (gb_.is_unit_ideal()) return;
    const std::size_t n = gb_.nvars;
    std::vector<std::uint32_t> bound(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      for (const auto& g : lead_) {
        const ExponentVec& e = g.begin()->first;
        bool pure = e[v] > 0;
        for (std::size_t i = 0; i < n && pure; ++i)
          if (i != v && e[i]) pure = false;
        if (pure && (bound[v] == 0 || e[v] < bound[v])) bound[v] = e[v];
      }
      if (bound[v] == 0) {
        fail(ErrorCode::PositiveDimension, "no pure power of x" + std::to_string(v + 1) + " among leading terms",
             static_cast<long>(v));
      }
    }
    // standard monomials: exponents below the bounds not divisible by any leading monomial
    ExponentVec e(n, 0);
    for (;;) {
      bool standard = true;
      for (const auto& g : lead_)
        if (detail::divides(g.begin()->first, e)) {
          standard = false;
          break;
        }
      if (standard) basis_.push_back(e);
      std::size_t i = 0;
      while (i < n) {
        if (++e[i] < bound[i]) break;
        e[i] = 0;
        ++i;
      }
      if (i == n) break;
    }
    GrevlexGreater gt;
    std::sort(basis_.begin(), basis_.end(), [&](const ExponentVec& a, const ExponentVec& b) { return gt(b, a); });
    for (std::size_t k = 0; k < basis_.size(); ++k) index_[basis_[k]] = k;
  }

  const GroebnerBasis& groebner_basis() const noexcept { return gb_; }
  const PrimeField& field() const noexcept { return gb_.field; }
  std::size_t nvars() const noexcept { return gb_.nvars; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  const std::vector<ExponentVec>& standard_monomials() const noexcept { return basis_; }

  /// Coordinates of the class of f in the standard-monomial basis.
  std::vector<Fp> coordinates(const SparsePoly& f) const {
    std::vector<Fp> c(dimension(), Fp{0});
    if (dimension() == 0) return c;
    const auto nf = detail::normal_form(field(), detail::to_gterms(f), lead_);
    for (const auto& [e, v] : nf) c[index_.at(e)] = v;
    return c;
  }

  /// Matrix of multiplication by f; column k is the class of f * b_k.
  Matrix<Fp> multiplication_matrix(const SparsePoly& f) const {
    const std::size_t D = dimension();
    Matrix<Fp> M(D, std::vector<Fp>(D, Fp{0}));
    for (std::size_t k = 0; k < D; ++k) {
      const auto col = coordinates(f * SparsePoly::monomial(field(), basis_[k], field().one()));
      for (std::size_t r = 0; r < D; ++r) M[r][k] = col[r];
    }
    return M;
  }

 private:
  GroebnerBasis gb_;
  std::vector<detail::GTerms> lead_;
  std::vector<ExponentVec> basis_;
  std::map<ExponentVec, std::size_t> index_;
};

inline QuotientAlgebra quotient(GroebnerBasis basis) { return QuotientAlgebra(std::move(basis)); }

namespace detail {

/// Solves A x = b over F_p for square invertible A by Gauss-Jordan.
inline std::vector<std::vector<Fp>> solve_dense(const PrimeField& F, Matrix<Fp> A,
                                                std::vector<std::vector<Fp>> rhs_cols) {
  const std::size_t n = A.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && A[piv][c].is_zero()) ++piv;
    if (piv == n) fail(ErrorCode::NotSeparating, "power basis is singular");
    std::swap(A[c], A[piv]);
    for (auto& b : rhs_cols) std::swap(b[c], b[piv]);
    const Fp inv = F.inv(A[c][c]);
    for (std::size_t j = 0; j < n; ++j) A[c][j] = F.mul(A[c][j], inv);
    for (auto& b : rhs_cols) b[c] = F.mul(b[c], inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || A[r][c].is_zero()) continue;
      const Fp f = A[r][c];
      for (std::size_t j = 0; j < n; ++j) A[r][j] = F.sub(A[r][j], F.mul(f, A[c][j]));
      for (auto& b : rhs_cols) b[r] = F.sub(b[r], F.mul(f, b[c]));
    }
  }
  return rhs_cols;
}

}  // namespace detail

/// Shape-lemma parametrization for the linear form lambda: w is the minimal
/// polynomial of multiplication by lambda, the v_i express x_i in powers of it.
/// The result is validated and checked against the source system.
inline ZeroDimParam shape_param(const QuotientAlgebra& A, std::span<const Fp> lambda) {
  const PrimeField& F = A.field();
  const std::size_t n = A.nvars(), D = A.dimension();
  if (lambda.size() != n) fail(ErrorCode::ArityMismatch, "linear form has the wrong length");
  std::vector<Fp> lam(lambda.begin(), lambda.end());
  if (D == 0) return ZeroDimParam::empty(F, lam);

  SparsePoly L(F, n);
  for (std::size_t i = 0; i < n; ++i) L += SparsePoly::variable(F, n, i).scaled(lam[i]);
  const Matrix<Fp> M = A.multiplication_matrix(L);

  // Krylov sequence of the class of 1 with incremental elimination
  std::vector<std::vector<Fp>> krylov;
  std::vector<Fp> cur = A.coordinates(SparsePoly::constant(F, n, F.one()));
  std::vector<std::vector<Fp>> echelon;       // reduced rows
  std::vector<std::size_t> pivots;
  std::vector<std::vector<Fp>> combos;        // echelon[r] = sum combos[r][j] * krylov[j]
  std::vector<Fp> minpoly;
  for (std::size_t k = 0; k <= D && minpoly.empty(); ++k) {
    krylov.push_back(cur);
    std::vector<Fp> row = cur;
    std::vector<Fp> combo(k + 1, Fp{0});
    combo[k] = F.one();
    for (std::size_t r = 0; r < echelon.size(); ++r) {
      const Fp f = row[pivots[r]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < D; ++j) row[j] = F.sub(row[j], F.mul(f, echelon[r][j]));
      for (std::size_t j = 0; j < combos[r].size(); ++j) combo[j] = F.sub(combo[j], F.mul(f, combos[r][j]));
    }
    std::size_t piv = 0;
    while (piv < D && row[piv].is_zero()) ++piv;
    if (piv == D) {
      minpoly = combo;  // sum combo[j] Lambda^j = 0, combo[k] = 1
      break;
    }
    const Fp inv = F.inv(row[piv]);
    for (auto& x : row) x = F.mul(x, inv);
    for (auto& x : combo) x = F.mul(x, inv);
    echelon.push_back(std::move(row));
    pivots.push_back(piv);
    combos.push_back(std::move(combo));
    cur = mat_vec(F, M, cur);
  }
  UniPoly w(F, minpoly);
  if (static_cast<std::size_t>(w.degree()) < D) {
    fail(ErrorCode::NotSeparating, "minimal polynomial of the linear form has degree " + std::to_string(w.degree()) +
                                       " < " + std::to_string(D));
  }
  if (!is_squarefree(w)) fail(ErrorCode::NotRadical, "minimal polynomial is not squarefree");

  // x_i = sum_j c_j Lambda^j: solve K c = [x_i] with K = (1, Lambda, .., Lambda^{D-1})
  Matrix<Fp> K(D, std::vector<Fp>(D));
  for (std::size_t j = 0; j < D; ++j)
    for (std::size_t r = 0; r < D; ++r) K[r][j] = krylov[j][r];
  std::vector<std::vector<Fp>> rhs;
  for (std::size_t i = 0; i < n; ++i) rhs.push_back(A.coordinates(SparsePoly::variable(F, n, i)));
  std::vector<UniPoly> v;
  for (auto& c : detail::solve_dense(F, std::move(K), std::move(rhs))) v.emplace_back(F, c);
  ZeroDimParam R(F, lam, w, std::move(v));
  validate(R);
  verify_against(R, A.groebner_basis().source);
  return R;
}

inline constexpr u64 kBruteForceLimit = 10000000;

/// All F_p-rational solutions by exhaustive enumeration (test oracle).
inline std::vector<std::vector<Fp>> brute_force_solve(std::span<const SparsePoly> system) {
  if (system.empty()) fail(ErrorCode::ZeroInput, "empty system");
  const PrimeField& F = system.front().field();
  const std::size_t n = system.front().nvars();
  u64 total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > kBruteForceLimit / F.modulus()) fail(ErrorCode::FieldTooLarge, "p^n exceeds 10^7");
    total *= F.modulus();
  }
  std::vector<std::vector<Fp>> out;
  std::vector<Fp> pt(n, Fp{0});
  for (u64 idx = 0; idx < total; ++idx) {
    u64 rest = idx;
    for (std::size_t i = n; i-- > 0;) {
      pt[i] = Fp{rest % F.modulus()};
      rest /= F.modulus();
    }
    bool zero = true;
    for (const auto& f : system)
      if (!f.eval(pt).is_zero()) {
        zero = false;
        break;
      }
    if (zero) out.push_back(pt);
  }
  return out;
}

}  // namespace dethom
