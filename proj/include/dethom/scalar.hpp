#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <string_view>

#include "dethom/errors.hpp"

namespace dethom {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

namespace detail {

inline u64 mulmod_u128(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod_u128(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod_u128(r, base, m);
    base = mulmod_u128(base, base, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin; these bases are exact for every n < 3.3e24.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod_u128(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod_u128(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// An odd prime 3 <= p < 2^62, checked at construction.
class Prime {
 public:
  explicit Prime(u64 p) : p_(p) {
    if (p < 3 || p >= (u64{1} << 62) || !detail::is_prime_u64(p)) {
      fail(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime below 2^62");
    }
  }
  u64 value() const noexcept { return p_; }
  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  u64 p_;
};

/// Residue in [0, p). The prime lives in the PrimeField that operates on it.
struct Fp {
  u64 v = 0;
  friend auto operator<=>(const Fp&, const Fp&) = default;
  bool is_zero() const noexcept { return v == 0; }
};

/// Arithmetic context for F_p. Cheap to copy (one word).
class PrimeField {
 public:
  using Elem = Fp;

  explicit PrimeField(Prime p) : p_(p.value()), small_(p.value() < (u64{1} << 32)) {}
  explicit PrimeField(u64 p) : PrimeField(Prime(p)) {}

  u64 modulus() const noexcept { return p_; }
  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

  Fp zero() const noexcept { return {0}; }
  Fp one() const noexcept { return {1}; }
  bool is_zero(Fp a) const noexcept { return a.v == 0; }
  bool is_unit(Fp a) const noexcept { return a.v != 0; }
  bool equal(Fp a, Fp b) const noexcept { return a.v == b.v; }

  Fp add(Fp a, Fp b) const noexcept {
    u64 s = a.v + b.v;
    return {s >= p_ ? s - p_ : s};
  }
  Fp sub(Fp a, Fp b) const noexcept { return {a.v >= b.v ? a.v - b.v : a.v + p_ - b.v}; }
  Fp neg(Fp a) const noexcept { return {a.v == 0 ? 0 : p_ - a.v}; }
  Fp mul(Fp a, Fp b) const noexcept {
    if (small_) return {a.v * b.v % p_};
    return {detail::mulmod_u128(a.v, b.v, p_)};
  }
  Fp pow(Fp a, u64 e) const noexcept { return {detail::powmod_u128(a.v, e, p_)}; }

  Fp inv(Fp a) const {
    if (a.v == 0) fail(ErrorCode::ZeroInverse, "inverse of zero modulo " + std::to_string(p_));
    // extended Euclid on signed 128-bit to stay exact for p < 2^62
    __int128 r0 = p_, r1 = a.v, s0 = 0, s1 = 1;
    while (r1 != 0) {
      __int128 q = r0 / r1;
      __int128 t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = s0 - q * s1;
      s0 = s1;
      s1 = t;
    }
    __int128 m = s0 % static_cast<__int128>(p_);
    if (m < 0) m += p_;
    return {static_cast<u64>(m)};
  }
  Fp div(Fp a, Fp b) const { return mul(a, inv(b)); }

  Fp from_int(i64 x) const noexcept {
    __int128 m = static_cast<__int128>(x) % static_cast<__int128>(p_);
    if (m < 0) m += p_;
    return {static_cast<u64>(m)};
  }
  Fp from_u64(u64 x) const noexcept { return {x % p_}; }

  /// num / den mod p.
  Fp reduce_rational(i64 num, i64 den) const {
    Fp d = from_int(den);
    if (d.v == 0) fail(ErrorCode::DenominatorVanishes, std::to_string(p_) + " divides " + std::to_string(den));
    return mul(from_int(num), inv(d));
  }

  /// Reduces an arbitrary-length signed decimal literal.
  Fp from_decimal(std::string_view digits) const {
    bool negative = false;
    std::size_t i = 0;
    if (i < digits.size() && (digits[i] == '-' || digits[i] == '+')) {
      negative = digits[i] == '-';
      ++i;
    }
    if (i == digits.size()) fail(ErrorCode::ParseError, "empty integer literal");
    u64 acc = 0;
    for (; i < digits.size(); ++i) {
      char c = digits[i];
      if (c < '0' || c > '9') fail(ErrorCode::ParseError, "bad digit in integer literal");
      acc = static_cast<u64>((static_cast<u128>(acc) * 10 + static_cast<u64>(c - '0')) % p_);
    }
    Fp r{acc};
    return negative ? neg(r) : r;
  }

  /// Symmetric representative in (-p/2, p/2].
  i64 signed_value(Fp a) const noexcept {
    return a.v > p_ / 2 ? -static_cast<i64>(p_ - a.v) : static_cast<i64>(a.v);
  }

 private:
  u64 p_;
  bool small_;
};

/// The single seeded generator threaded through every randomized step.
/// mt19937_64's output sequence is fixed by the standard, and sampling below
/// avoids std::uniform_int_distribution so runs replay across toolchains.
class Rng {
 public:
  explicit Rng(u64 seed) : seed_(seed), engine_(seed) {}

  u64 seed() const noexcept { return seed_; }
  u64 next() { return engine_(); }

  /// Uniform in [0, bound).
  u64 below(u64 bound) {
    if (bound == 0) return 0;
    const u64 limit = std::numeric_limits<u64>::max() - std::numeric_limits<u64>::max() % bound;
    u64 x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  /// Independent child stream for task `index`, reproducible from the parent seed.
  Rng derive(u64 index) const { return Rng(derive_seed(seed_, index)); }

  static u64 derive_seed(u64 seed, u64 index) {
    return detail::splitmix64(detail::splitmix64(seed) ^ detail::splitmix64(index + 0x51ed27ULL));
  }

 private:
  u64 seed_;
  std::mt19937_64 engine_;
};

inline Fp sample(const PrimeField& F, Rng& rng, bool nonzero = false) {
  if (nonzero) return {1 + rng.below(F.modulus() - 1)};
  return {rng.below(F.modulus())};
}

}  // namespace dethom
