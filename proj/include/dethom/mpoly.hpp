#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "dethom/errors.hpp"
#include "dethom/scalar.hpp"

namespace dethom {

using ExponentVec = std::vector<std::uint32_t>;
using Rational = boost::rational<i64>;

inline u64 total_degree(const ExponentVec& e) {
  u64 d = 0;
  for (auto x : e) d += x;
  return d;
}

/// Graded-lex, larger first: higher total degree, then lexicographically larger
/// with x1 > x2 > ... > xn. This is the canonical storage/printing order.
struct GradedLexGreater {
  bool operator()(const ExponentVec& a, const ExponentVec& b) const {
    const u64 da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

/// Finite lattice-point set; std::set gives the set semantics and a stable order.
using Support = std::set<ExponentVec>;

/// Sparse multivariate polynomial over F_p. The zero polynomial has no terms,
/// and zero coefficients are never stored.
class SparsePoly {
 public:
  using Terms = std::map<ExponentVec, Fp, GradedLexGreater>;

  SparsePoly(PrimeField field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static SparsePoly constant(PrimeField field, std::size_t nvars, Fp c) {
    SparsePoly f(field, nvars);
    f.add_term(ExponentVec(nvars, 0), c);
    return f;
  }
  static SparsePoly variable(PrimeField field, std::size_t nvars, std::size_t index) {
    ExponentVec e(nvars, 0);
    e.at(index) = 1;
    SparsePoly f(field, nvars);
    f.add_term(e, field.one());
    return f;
  }
  static SparsePoly monomial(PrimeField field, ExponentVec e, Fp c) {
    SparsePoly f(field, e.size());
    f.add_term(std::move(e), c);
    return f;
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Fp coefficient(const ExponentVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  /// Adds c * x^e, dropping the term if it cancels.
  void add_term(ExponentVec e, Fp c) {
    if (e.size() != nvars_) fail(ErrorCode::ArityMismatch, "exponent length differs from variable count");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second = field_.add(it->second, c);
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  u64 total_degree() const {
    u64 d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, dethom::total_degree(e));
    return d;
  }

  u64 degree_in(std::size_t var) const {
    u64 d = 0;
    for (const auto& [e, c] : terms_) d = std::max<u64>(d, e.at(var));
    return d;
  }

  SparsePoly scaled(Fp c) const {
    SparsePoly r(field_, nvars_);
    if (c.is_zero()) return r;
    for (const auto& [e, a] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, field_.mul(a, c));
    return r;
  }

  SparsePoly operator-() const { return scaled(field_.neg(field_.one())); }

  SparsePoly& operator+=(const SparsePoly& g) {
    check_compatible(g);
    for (const auto& [e, c] : g.terms_) add_term(e, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& g) {
    check_compatible(g);
    for (const auto& [e, c] : g.terms_) add_term(e, field_.neg(c));
    return *this;
  }
  friend SparsePoly operator+(SparsePoly f, const SparsePoly& g) { return f += g; }
  friend SparsePoly operator-(SparsePoly f, const SparsePoly& g) { return f -= g; }

  friend SparsePoly operator*(const SparsePoly& f, const SparsePoly& g) {
    f.check_compatible(g);
    SparsePoly r(f.field_, f.nvars_);
    const PrimeField& F = f.field_;
    ExponentVec e(f.nvars_);
    for (const auto& [ea, ca] : f.terms_) {
      for (const auto& [eb, cb] : g.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) {
          const u64 s = u64{ea[i]} + eb[i];
          if (s > std::numeric_limits<std::uint32_t>::max()) fail(ErrorCode::ExponentOverflow, "exponent exceeds 32 bits");
          e[i] = static_cast<std::uint32_t>(s);
        }
        r.add_term(e, F.mul(ca, cb));
      }
    }
    return r;
  }
  SparsePoly& operator*=(const SparsePoly& g) { return *this = *this * g; }

  friend bool operator==(const SparsePoly& f, const SparsePoly& g) {
    return f.field_ == g.field_ && f.nvars_ == g.nvars_ && f.terms_ == g.terms_;
  }

  /// f(point), with per-variable power tables.
  Fp eval(std::span<const Fp> point) const {
    if (point.size() != nvars_) fail(ErrorCode::ArityMismatch, "evaluation point has wrong length");
    std::vector<std::vector<Fp>> powers(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
      const u64 d = degree_in(i);
      powers[i].resize(d + 1);
      powers[i][0] = field_.one();
      for (u64 k = 1; k <= d; ++k) powers[i][k] = field_.mul(powers[i][k - 1], point[i]);
    }
    Fp acc = field_.zero();
    for (const auto& [e, c] : terms_) {
      Fp m = c;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i]) m = field_.mul(m, powers[i][e[i]]);
      }
      acc = field_.add(acc, m);
    }
    return acc;
  }

  SparsePoly derivative(std::size_t var) const {
    SparsePoly r(field_, nvars_);
    for (const auto& [e, c] : terms_) {
      if (e.at(var) == 0) continue;
      ExponentVec d = e;
      --d[var];
      r.add_term(std::move(d), field_.mul(c, field_.from_u64(e[var])));
    }
    return r;
  }

  /// Substitutes `value` for variable `var` and drops it: n -> n-1 variables.
  SparsePoly specialize(std::size_t var, Fp value) const {
    if (var >= nvars_) fail(ErrorCode::ArityMismatch, "specialized variable out of range");
    SparsePoly r(field_, nvars_ - 1);
    for (const auto& [e, c] : terms_) {
      ExponentVec d;
      d.reserve(nvars_ - 1);
      for (std::size_t i = 0; i < nvars_; ++i)
        if (i != var) d.push_back(e[i]);
      r.add_term(std::move(d), field_.mul(c, field_.pow(value, e[var])));
    }
    return r;
  }

  /// Re-homes the polynomial in `new_nvars` variables, variable i -> i + offset.
  SparsePoly embed(std::size_t new_nvars, std::size_t offset) const {
    if (offset + nvars_ > new_nvars) fail(ErrorCode::ArityMismatch, "embedding does not fit");
    SparsePoly r(field_, new_nvars);
    for (const auto& [e, c] : terms_) {
      ExponentVec d(new_nvars, 0);
      std::copy(e.begin(), e.end(), d.begin() + static_cast<std::ptrdiff_t>(offset));
      r.add_term(std::move(d), c);
    }
    return r;
  }

 private:
  void check_compatible(const SparsePoly& g) const {
    if (g.nvars_ != nvars_) fail(ErrorCode::ArityMismatch, "polynomials live in different variable counts");
    if (!(g.field_ == field_)) fail(ErrorCode::ArityMismatch, "polynomials live over different primes");
  }

  PrimeField field_;
  std::size_t nvars_;
  Terms terms_;
};

inline Support support(const SparsePoly& f, bool add_origin = false) {
  Support s;
  for (const auto& [e, c] : f.terms()) s.insert(e);
  if (add_origin) s.insert(ExponentVec(f.nvars(), 0));
  return s;
}

/// Union of the supports of a matrix column, origin adjoined.
inline Support column_support(std::span<const SparsePoly> column) {
  if (column.empty()) fail(ErrorCode::ArityMismatch, "empty column");
  const std::size_t n = column.front().nvars();
  Support s;
  for (const auto& f : column) {
    if (f.nvars() != n) fail(ErrorCode::ArityMismatch, "column entries in different variable counts");
    for (const auto& [e, c] : f.terms()) s.insert(e);
  }
  s.insert(ExponentVec(n, 0));
  return s;
}

/// Terms of f minimising <direction, exponent>.
inline SparsePoly initial_form(const SparsePoly& f, std::span<const Rational> direction) {
  if (direction.size() != f.nvars()) fail(ErrorCode::ArityMismatch, "direction has wrong length");
  if (f.is_zero()) fail(ErrorCode::ZeroInput, "initial form of the zero polynomial");
  if (std::all_of(direction.begin(), direction.end(), [](const Rational& r) { return r.numerator() == 0; })) {
    fail(ErrorCode::ZeroDirection, "initial form along the zero direction");
  }
  auto dot = [&](const ExponentVec& e) {
    Rational s = 0;
    for (std::size_t i = 0; i < e.size(); ++i) s += direction[i] * static_cast<i64>(e[i]);
    return s;
  };
  Rational best = dot(f.terms().begin()->first);
  for (const auto& [e, c] : f.terms()) best = std::min(best, dot(e));
  SparsePoly r(f.field(), f.nvars());
  for (const auto& [e, c] : f.terms())
    if (dot(e) == best) r.add_term(e, c);
  return r;
}

inline u64 weighted_degree(const ExponentVec& e, std::span<const u64> weights) {
  u64 d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += weights[i] * e[i];
  return d;
}

/// max over terms of sum w_i alpha_i; undefined (ZeroInput) for f = 0.
inline u64 weighted_degree(const SparsePoly& f, std::span<const u64> weights) {
  if (weights.size() != f.nvars()) fail(ErrorCode::ArityMismatch, "weight vector has wrong length");
  if (f.is_zero()) fail(ErrorCode::ZeroInput, "weighted degree of the zero polynomial");
  u64 d = 0;
  for (const auto& [e, c] : f.terms()) d = std::max(d, weighted_degree(e, weights));
  return d;
}

}  // namespace dethom
