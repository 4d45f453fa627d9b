#pragma once

#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dethom/errors.hpp"
#include "dethom/scalar.hpp"

namespace dethom {

/// Dense univariate polynomial over F_p, low degree first, no trailing zeros.
class UniPoly {
 public:
  explicit UniPoly(PrimeField field) : field_(field) {}
  UniPoly(PrimeField field, std::vector<Fp> coeffs) : field_(field), c_(std::move(coeffs)) { trim(); }

  static UniPoly constant(PrimeField field, Fp c) { return UniPoly(field, {c}); }
  /// y - a
  static UniPoly linear_root(PrimeField field, Fp a) { return UniPoly(field, {field.neg(a), field.one()}); }
  static UniPoly monomial(PrimeField field, std::size_t deg, Fp c = Fp{1}) {
    std::vector<Fp> v(deg + 1, field.zero());
    v[deg] = c;
    return UniPoly(field, std::move(v));
  }
  static UniPoly from_ints(PrimeField field, std::initializer_list<i64> coeffs) {
    std::vector<Fp> v;
    for (i64 x : coeffs) v.push_back(field.from_int(x));
    return UniPoly(field, std::move(v));
  }

  const PrimeField& field() const noexcept { return field_; }
  const std::vector<Fp>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  Fp operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : Fp{0}; }
  Fp lead() const noexcept { return c_.empty() ? Fp{0} : c_.back(); }
  bool is_monic() const noexcept { return !c_.empty() && c_.back().v == 1; }

  UniPoly monic() const {
    if (c_.empty()) return *this;
    return scaled(field_.inv(c_.back()));
  }

  UniPoly scaled(Fp a) const {
    std::vector<Fp> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = field_.mul(c_[i], a);
    return UniPoly(field_, std::move(v));
  }

  Fp eval(Fp x) const {
    Fp acc = field_.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly(field_);
    std::vector<Fp> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = field_.mul(c_[i], field_.from_u64(i));
    return UniPoly(field_, std::move(v));
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    const PrimeField& F = a.field_;
    std::vector<Fp> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.add(a[i], b[i]);
    return UniPoly(F, std::move(v));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    const PrimeField& F = a.field_;
    std::vector<Fp> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.sub(a[i], b[i]);
    return UniPoly(F, std::move(v));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    const PrimeField& F = a.field_;
    if (a.is_zero() || b.is_zero()) return UniPoly(F);
    std::vector<Fp> v(a.c_.size() + b.c_.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = F.add(v[i + j], F.mul(a.c_[i], b.c_[j]));
    return UniPoly(F, std::move(v));
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

  /// (quotient, remainder); b must be nonzero.
  friend std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
    const PrimeField& F = a.field_;
    if (b.is_zero()) fail(ErrorCode::ZeroInverse, "polynomial division by zero");
    if (a.degree() < b.degree()) return {UniPoly(F), a};
    std::vector<Fp> r = a.c_;
    std::vector<Fp> q(a.c_.size() - b.c_.size() + 1, F.zero());
    const Fp inv_lead = F.inv(b.lead());
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
      const Fp coef = F.mul(r[k + db], inv_lead);
      q[k] = coef;
      if (coef.is_zero()) continue;
      for (std::size_t j = 0; j <= db; ++j) r[k + j] = F.sub(r[k + j], F.mul(coef, b.c_[j]));
    }
    r.resize(db);
    return {UniPoly(F, std::move(q)), UniPoly(F, std::move(r))};
  }
  friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divrem(a, b).second; }
  friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divrem(a, b).first; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  PrimeField field_;
  std::vector<Fp> c_;
};

struct XgcdResult {
  UniPoly g, u, v;
};

/// g = gcd(a, b) monic, g = u a + v b.
inline XgcdResult xgcd(const UniPoly& a, const UniPoly& b) {
  const PrimeField& F = a.field();
  if (a.is_zero() && b.is_zero()) fail(ErrorCode::ZeroInput, "gcd of two zero polynomials");
  UniPoly r0 = a, r1 = b;
  UniPoly s0 = UniPoly::constant(F, F.one()), s1(F);
  UniPoly t0(F), t1 = UniPoly::constant(F, F.one());
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  const Fp li = F.inv(r0.lead());
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

inline UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() && b.is_zero()) return UniPoly(a.field());
  UniPoly r0 = a, r1 = b;
  while (!r1.is_zero()) r0 = std::exchange(r1, r0 % r1);
  return r0.monic();
}

/// Inverse of a modulo m; DenominatorVanishes-style failure reported as ZeroInverse.
inline UniPoly invmod(const UniPoly& a, const UniPoly& m) {
  auto [g, u, v] = xgcd(a % m, m);
  if (g.degree() != 0) fail(ErrorCode::ZeroInverse, "polynomial is not invertible modulo the modulus");
  return u % m;
}

inline UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m) { return (a * b) % m; }

/// Monic product of the distinct irreducible factors of w. Needs deg w < p.
inline UniPoly squarefree_part(const UniPoly& w) {
  if (w.is_zero()) fail(ErrorCode::ZeroInput, "squarefree part of zero");
  if (static_cast<u64>(w.degree()) >= w.field().modulus()) {
    fail(ErrorCode::DegreeTooLargeForChar, "degree " + std::to_string(w.degree()) + " >= characteristic");
  }
  if (w.degree() == 0) return UniPoly::constant(w.field(), w.field().one());
  return (w / gcd(w, w.derivative())).monic();
}

inline bool is_squarefree(const UniPoly& w) {
  if (w.degree() <= 0) return !w.is_zero();
  return gcd(w, w.derivative()).degree() == 0;
}

/// v with v = residues[i] mod moduli[i], deg v < sum deg moduli.
inline UniPoly crt(std::span<const UniPoly> residues, std::span<const UniPoly> moduli) {
  if (residues.size() != moduli.size() || moduli.empty()) fail(ErrorCode::ShapeError, "crt needs matching nonempty lists");
  const PrimeField& F = moduli.front().field();
  UniPoly acc = residues[0] % moduli[0];
  UniPoly mod = moduli[0];
  for (std::size_t i = 1; i < moduli.size(); ++i) {
    auto [g, u, v] = xgcd(mod, moduli[i]);
    if (g.degree() != 0) fail(ErrorCode::ModuliNotCoprime, "crt moduli share a factor", static_cast<long>(i));
    // acc + mod * ((r_i - acc) * u mod m_i)   since u*mod = 1 mod m_i
    UniPoly delta = ((residues[i] - acc) * u) % moduli[i];
    acc = acc + mod * delta;
    mod = mod * moduli[i];
  }
  (void)F;
  return acc % mod;
}

}  // namespace dethom
