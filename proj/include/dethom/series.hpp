#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dethom/errors.hpp"
#include "dethom/scalar.hpp"
#include "dethom/upoly.hpp"

namespace dethom {

namespace detail {

/// Lazily reduced dot-product accumulator for residues below 2^62.
class Acc {
 public:
  explicit Acc(u64 p) : p_(p) {}
  void add(u64 a, u64 b) {
    acc_ += static_cast<u128>(a) * b;
    if (acc_ >> 127) acc_ %= p_;
  }
  u64 get() const { return static_cast<u64>(acc_ % p_); }

 private:
  u64 p_;
  u128 acc_ = 0;
};

}  // namespace detail

/// F_p[t]/(t^kappa). Elements are coefficient vectors of length exactly kappa.
class SeriesRing {
 public:
  using Elem = std::vector<Fp>;

  SeriesRing(PrimeField field, std::size_t kappa) : F_(field), k_(kappa) {
    if (kappa == 0) fail(ErrorCode::ShapeError, "series precision must be positive");
  }

  const PrimeField& field() const noexcept { return F_; }
  std::size_t precision() const noexcept { return k_; }

  Elem zero() const { return Elem(k_, Fp{0}); }
  Elem one() const { return constant(F_.one()); }
  Elem constant(Fp c) const {
    Elem e = zero();
    e[0] = c;
    return e;
  }
  /// Truncates or zero-pads a coefficient list to this precision.
  Elem from(std::span<const Fp> c) const {
    Elem e = zero();
    std::copy_n(c.begin(), std::min(c.size(), k_), e.begin());
    return e;
  }
  Elem from(const UniPoly& f) const { return from(std::span<const Fp>(f.coeffs())); }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(k_);
    for (std::size_t i = 0; i < k_; ++i) r[i] = F_.add(a[i], b[i]);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(k_);
    for (std::size_t i = 0; i < k_; ++i) r[i] = F_.sub(a[i], b[i]);
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r(k_);
    for (std::size_t i = 0; i < k_; ++i) r[i] = F_.neg(a[i]);
    return r;
  }
  Elem scale(const Elem& a, Fp c) const {
    Elem r(k_);
    for (std::size_t i = 0; i < k_; ++i) r[i] = F_.mul(a[i], c);
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem r(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      detail::Acc acc(F_.modulus());
      for (std::size_t j = 0; j <= i; ++j) acc.add(a[j].v, b[i - j].v);
      r[i] = Fp{acc.get()};
    }
    return r;
  }
  bool is_unit(const Elem& a) const { return !a[0].is_zero(); }
  Elem inv(const Elem& a) const {
    if (!is_unit(a)) fail(ErrorCode::ZeroInverse, "series with zero constant term is not invertible");
    Elem r = zero();
    const Fp c0 = F_.inv(a[0]);
    r[0] = c0;
    for (std::size_t i = 1; i < k_; ++i) {
      detail::Acc acc(F_.modulus());
      for (std::size_t j = 1; j <= i; ++j) acc.add(a[j].v, r[i - j].v);
      r[i] = F_.neg(F_.mul(Fp{acc.get()}, c0));
    }
    return r;
  }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }

  /// Value at t = x of the truncated polynomial.
  Fp eval(const Elem& a, Fp x) const {
    Fp acc = F_.zero();
    for (std::size_t i = k_; i-- > 0;) acc = F_.add(F_.mul(acc, x), a[i]);
    return acc;
  }

 private:
  PrimeField F_;
  std::size_t k_;
};

struct PadeResult {
  UniPoly num, den;
};

/// Finds num/den with deg num <= num_bound, deg den <= den_bound, den(0) = 1
/// and num = den * series mod t^kappa, kappa = series.size(). The result is
/// checked before returning.
inline PadeResult pade(const PrimeField& F, std::span<const Fp> series, std::size_t num_bound, std::size_t den_bound) {
  const std::size_t kappa = series.size();
  if (kappa < num_bound + den_bound + 1) {
    fail(ErrorCode::ReconstructionFailed, "precision " + std::to_string(kappa) + " too low for bounds (" +
                                              std::to_string(num_bound) + "," + std::to_string(den_bound) + ")");
  }
  UniPoly r0 = UniPoly::monomial(F, kappa);
  UniPoly r1(F, std::vector<Fp>(series.begin(), series.end()));
  UniPoly s0(F), s1 = UniPoly::constant(F, F.one());
  while (r1.degree() > static_cast<long>(num_bound)) {
    auto [q, r] = divrem(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
  }
  if (s1.degree() > static_cast<long>(den_bound) || s1[0].is_zero()) {
    fail(ErrorCode::ReconstructionFailed, "no rational function within the degree bounds");
  }
  const Fp c = F.inv(s1[0]);
  PadeResult out{r1.scaled(c), s1.scaled(c)};
  // self-check: num - den * series = 0 mod t^kappa
  const SeriesRing S(F, kappa);
  if (S.sub(S.from(out.num), S.mul(S.from(out.den), S.from(series))) != S.zero()) {
    fail(ErrorCode::ReconstructionFailed, "reconstructed pair fails the congruence check");
  }
  return out;
}

/// Truncated series expansion of num/den to kappa terms; den(0) must be nonzero.
inline std::vector<Fp> expand_rational(const UniPoly& num, const UniPoly& den, std::size_t kappa) {
  const SeriesRing S(num.field(), kappa);
  return S.mul(S.from(num), S.inv(S.from(den)));
}

/// (F_p[t]/t^kappa)[y] / (w), w monic in y of degree D. An element is a flat
/// vector c with c[i*kappa + k] the coefficient of y^i t^k, i < D.
/// When w does not depend on t this is the ring used for Newton steps; a
/// t-dependent w gives the residual-check ring.
class SeriesQuotRing {
 public:
  using Elem = std::vector<Fp>;

  /// `w_low` holds the coefficients of y^0..y^{D-1} of w, each a series of
  /// length kappa, flattened the same way as elements.
  SeriesQuotRing(PrimeField field, std::size_t degree, std::size_t kappa, std::vector<Fp> w_low)
      : F_(field), D_(degree), k_(kappa), w_(std::move(w_low)) {
    if (kappa == 0) fail(ErrorCode::ShapeError, "series precision must be positive");
    if (w_.size() != D_ * k_) fail(ErrorCode::ShapeError, "modulus has the wrong shape");
    const_mod_ = true;
    for (std::size_t i = 0; i < D_ && const_mod_; ++i)
      for (std::size_t k = 1; k < k_; ++k)
        if (!w_[i * k_ + k].is_zero()) {
          const_mod_ = false;
          break;
        }
  }

  /// Modulus constant in t.
  static SeriesQuotRing constant_modulus(const UniPoly& w0, std::size_t kappa) {
    if (!w0.is_monic()) fail(ErrorCode::ShapeError, "modulus must be monic");
    const std::size_t D = static_cast<std::size_t>(w0.degree());
    std::vector<Fp> low(D * kappa, Fp{0});
    for (std::size_t i = 0; i < D; ++i) low[i * kappa] = w0[i];
    return SeriesQuotRing(w0.field(), D, kappa, std::move(low));
  }

  const PrimeField& field() const noexcept { return F_; }
  std::size_t degree() const noexcept { return D_; }
  std::size_t precision() const noexcept { return k_; }
  const std::vector<Fp>& modulus_low() const noexcept { return w_; }
  SeriesRing series_ring() const { return SeriesRing(F_, k_); }

  Elem zero() const { return Elem(D_ * k_, Fp{0}); }
  Elem one() const { return scalar(F_.one()); }
  Elem scalar(Fp c) const {
    Elem e = zero();
    if (D_ > 0) e[0] = c;
    return e;
  }
  /// The class of y (reduced when D = 1).
  Elem y() const {
    if (D_ >= 2) {
      Elem e = zero();
      e[k_] = F_.one();
      return e;
    }
    Elem e = zero();
    if (D_ == 1)
      for (std::size_t k = 0; k < k_; ++k) e[k] = F_.neg(w_[k]);
    return e;
  }
  /// The element t (times 1).
  Elem t() const {
    Elem e = zero();
    if (D_ > 0 && k_ > 1) e[1] = F_.one();
    return e;
  }
  /// Reduction of an F_p[y] polynomial (constant in t).
  Elem from_poly(const UniPoly& f) const {
    if (D_ == 0) return {};
    std::vector<Elem> coeffs(static_cast<std::size_t>(std::max<long>(f.degree() + 1, 0)));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      coeffs[i] = SeriesRing(F_, k_).constant(f[i]);
    }
    return from_ycoeffs(coeffs);
  }
  /// Reduction of sum_i c_i(t) y^i for any number of series coefficients.
  Elem from_ycoeffs(const std::vector<std::vector<Fp>>& coeffs) const {
    std::vector<u64> buf(std::max(coeffs.size(), D_) * k_, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      for (std::size_t k = 0; k < k_ && k < coeffs[i].size(); ++k) buf[i * k_ + k] = coeffs[i][k].v;
    return reduce(buf, std::max(coeffs.size(), D_));
  }

  /// Coefficient series of y^i.
  std::vector<Fp> coeff(const Elem& a, std::size_t i) const {
    return std::vector<Fp>(a.begin() + static_cast<std::ptrdiff_t>(i * k_),
                           a.begin() + static_cast<std::ptrdiff_t>((i + 1) * k_));
  }
  /// Value at t = 0 as a polynomial in y.
  UniPoly at_t0(const Elem& a) const {
    std::vector<Fp> c(D_);
    for (std::size_t i = 0; i < D_; ++i) c[i] = a[i * k_];
    return UniPoly(F_, std::move(c));
  }
  UniPoly modulus_at_t0() const {
    std::vector<Fp> c(D_ + 1);
    for (std::size_t i = 0; i < D_; ++i) c[i] = w_[i * k_];
    c[D_] = F_.one();
    return UniPoly(F_, std::move(c));
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F_.add(a[i], b[i]);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F_.sub(a[i], b[i]);
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F_.neg(a[i]);
    return r;
  }
  Elem scale(const Elem& a, Fp c) const {
    Elem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F_.mul(a[i], c);
    return r;
  }
  /// Multiplication by t^j (a shift in every series coefficient).
  Elem shift_t(const Elem& a, std::size_t j) const {
    Elem r = zero();
    for (std::size_t i = 0; i < D_; ++i)
      for (std::size_t k = j; k < k_; ++k) r[i * k_ + k] = a[i * k_ + k - j];
    return r;
  }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }

  Elem mul(const Elem& a, const Elem& b) const {
    if (D_ == 0) return {};
    const u64 p = F_.modulus();
    const bool big = (p >> 32) != 0;  // small p: 2^63 products fit before overflow
    const std::size_t len = 2 * D_ - 1;
    std::vector<u64> prod(len * k_, 0);
    // sparse-aware: skip zero series blocks
    std::vector<std::size_t> na, nb;
    for (std::size_t i = 0; i < D_; ++i) {
      if (!block_zero(a, i)) na.push_back(i);
      if (!block_zero(b, i)) nb.push_back(i);
    }
    std::vector<u128> tmp(k_);
    for (std::size_t s = 0; s < len; ++s) {
      std::fill(tmp.begin(), tmp.end(), 0);
      bool any = false;
      for (std::size_t i : na) {
        if (i > s || s - i >= D_) continue;
        const std::size_t j = s - i;
        if (!std::binary_search(nb.begin(), nb.end(), j)) continue;
        any = true;
        const Fp* pa = &a[i * k_];
        const Fp* pb = &b[j * k_];
        for (std::size_t k = 0; k < k_; ++k) {
          if (pa[k].v == 0) continue;
          const u64 av = pa[k].v;
          for (std::size_t l = 0; l + k < k_; ++l) {
            u128& slot = tmp[k + l];
            slot += static_cast<u128>(av) * pb[l].v;
            if (big && (slot >> 127)) slot %= p;
          }
        }
      }
      if (any)
        for (std::size_t k = 0; k < k_; ++k) prod[s * k_ + k] = static_cast<u64>(tmp[k] % p);
    }
    return reduce(prod, len);
  }

  /// Unit iff the t = 0 part is coprime to w(0, y).
  bool is_unit(const Elem& a) const {
    if (D_ == 0) return true;
    const UniPoly a0 = at_t0(a);
    if (a0.is_zero()) return false;
    return gcd(a0, modulus_at_t0()).degree() == 0;
  }

  /// Inverse at t = 0 by extended Euclid, then Newton doubling in t.
  Elem inv(const Elem& a) const {
    if (D_ == 0) return {};
    if (!is_unit(a)) fail(ErrorCode::ZeroInverse, "element is not a unit in the series quotient ring");
    Elem b = from_poly(invmod(at_t0(a), modulus_at_t0()));
    const Elem two = scalar(F_.from_u64(2));
    for (std::size_t prec = 1; prec < k_; prec *= 2) b = mul(b, sub(two, mul(a, b)));
    return b;
  }

  /// Reinterprets an element at another precision (truncate or zero-pad).
  Elem rescale(const Elem& a, std::size_t from_kappa) const {
    Elem r = zero();
    const std::size_t m = std::min(from_kappa, k_);
    for (std::size_t i = 0; i < D_; ++i)
      for (std::size_t k = 0; k < m; ++k) r[i * k_ + k] = a[i * from_kappa + k];
    return r;
  }

 private:
  bool block_zero(const Elem& a, std::size_t i) const {
    for (std::size_t k = 0; k < k_; ++k)
      if (!a[i * k_ + k].is_zero()) return false;
    return true;
  }

  /// Reduces a raw product with `len` series blocks modulo w.
  Elem reduce(std::vector<u64>& buf, std::size_t len) const {
    const u64 p = F_.modulus();
    if (D_ == 0) return {};
    for (std::size_t s = len; s-- > D_;) {
      const u64* top = &buf[s * k_];
      bool zero_block = true;
      for (std::size_t k = 0; k < k_; ++k)
        if (top[k]) zero_block = false;
      if (zero_block) continue;
      // y^s = y^{s-D} * (-(w_low))
      for (std::size_t i = 0; i < D_; ++i) {
        u64* dst = &buf[(s - D_ + i) * k_];
        const Fp* wi = &w_[i * k_];
        if (const_mod_) {
          const u64 c = wi[0].v;
          if (c == 0) continue;
          for (std::size_t k = 0; k < k_; ++k) {
            const u64 prod = static_cast<u64>(static_cast<u128>(top[k]) * c % p);
            dst[k] = dst[k] >= prod ? dst[k] - prod : dst[k] + p - prod;
          }
        } else {
          for (std::size_t k = 0; k < k_; ++k) {
            detail::Acc acc(p);
            for (std::size_t j = 0; j <= k; ++j) acc.add(top[j], wi[k - j].v);
            const u64 prod = acc.get();
            dst[k] = dst[k] >= prod ? dst[k] - prod : dst[k] + p - prod;
          }
        }
      }
    }
    Elem r(D_ * k_);
    for (std::size_t i = 0; i < D_ * k_; ++i) r[i] = Fp{buf[i]};
    return r;
  }

  PrimeField F_;
  std::size_t D_;
  std::size_t k_;
  std::vector<Fp> w_;
  bool const_mod_ = true;
};

}  // namespace dethom
