#pragma once

#include <concepts>
#include <cstddef>
#include <vector>

#include "dethom/errors.hpp"

namespace dethom {

/// A ring object: carries the context (modulus, precision...) and does the
/// arithmetic on plain `Elem` values.
template <class R>
concept CommutativeRing = requires(const R& r, const typename R::Elem& a, const typename R::Elem& b) {
  typename R::Elem;
  { r.zero() } -> std::convertible_to<typename R::Elem>;
  { r.one() } -> std::convertible_to<typename R::Elem>;
  { r.add(a, b) } -> std::convertible_to<typename R::Elem>;
  { r.sub(a, b) } -> std::convertible_to<typename R::Elem>;
  { r.mul(a, b) } -> std::convertible_to<typename R::Elem>;
  { r.neg(a) } -> std::convertible_to<typename R::Elem>;
};

template <class R>
concept RingWithUnits = CommutativeRing<R> && requires(const R& r, const typename R::Elem& a) {
  { r.is_unit(a) } -> std::convertible_to<bool>;
  { r.inv(a) } -> std::convertible_to<typename R::Elem>;
};

template <class E>
using Matrix = std::vector<std::vector<E>>;

template <CommutativeRing R>
std::vector<typename R::Elem> mat_vec(const R& ring, const Matrix<typename R::Elem>& A,
                                      const std::vector<typename R::Elem>& x) {
  std::vector<typename R::Elem> y(A.size(), ring.zero());
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) y[i] = ring.add(y[i], ring.mul(A[i][j], x[j]));
  }
  return y;
}

template <CommutativeRing R>
Matrix<typename R::Elem> mat_mul(const R& ring, const Matrix<typename R::Elem>& A, const Matrix<typename R::Elem>& B) {
  const std::size_t n = A.size(), m = B.empty() ? 0 : B[0].size(), k = B.size();
  Matrix<typename R::Elem> C(n, std::vector<typename R::Elem>(m, ring.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) C[i][j] = ring.add(C[i][j], ring.mul(A[i][l], B[l][j]));
  return C;
}

/// Characteristic polynomial det(yI - A), coefficients low degree first,
/// monic of length n+1. Berkowitz's algorithm: no divisions, so it is valid
/// over rings with zero-divisors.
template <CommutativeRing R>
std::vector<typename R::Elem> charpoly(const R& ring, const Matrix<typename R::Elem>& A) {
  using E = typename R::Elem;
  const std::size_t n = A.size();
  if (n == 0) return {ring.one()};
  for (const auto& row : A) {
    if (row.size() != n) fail(ErrorCode::ShapeError, "charpoly of a non-square matrix");
  }
  std::vector<E> vect = {ring.one(), ring.neg(A[0][0])};  // highest degree first
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<E> C(r + 2, ring.zero());
    C[0] = ring.one();
    C[1] = ring.neg(A[r][r]);
    std::vector<E> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = A[i][r];
    for (std::size_t k = 2; k <= r + 1; ++k) {
      E dot = ring.zero();
      for (std::size_t i = 0; i < r; ++i) dot = ring.add(dot, ring.mul(A[r][i], v[i]));
      C[k] = ring.neg(dot);
      if (k == r + 1) break;
      std::vector<E> nv(r, ring.zero());
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) nv[i] = ring.add(nv[i], ring.mul(A[i][j], v[j]));
      v = std::move(nv);
    }
    std::vector<E> next(r + 2, ring.zero());
    for (std::size_t i = 0; i < r + 2; ++i) {
      for (std::size_t j = 0; j <= i && j < r + 1; ++j) next[i] = ring.add(next[i], ring.mul(C[i - j], vect[j]));
    }
    vect = std::move(next);
  }
  return {vect.rbegin(), vect.rend()};
}

template <CommutativeRing R>
typename R::Elem determinant(const R& ring, const Matrix<typename R::Elem>& A) {
  auto c = charpoly(ring, A);
  return (A.size() % 2 == 0) ? c[0] : ring.neg(c[0]);
}

/// adj(A) * b from the characteristic polynomial (Cayley-Hamilton).
template <CommutativeRing R>
std::vector<typename R::Elem> adjugate_times(const R& ring, const Matrix<typename R::Elem>& A,
                                             const std::vector<typename R::Elem>& cp,
                                             const std::vector<typename R::Elem>& b) {
  const std::size_t n = A.size();
  std::vector<typename R::Elem> z = b;
  if (n == 0) return z;
  for (std::size_t k = n - 1; k >= 1; --k) {
    z = mat_vec(ring, A, z);
    for (std::size_t i = 0; i < n; ++i) z[i] = ring.add(z[i], ring.mul(cp[k], b[i]));
  }
  if (n % 2 == 0) {
    for (auto& e : z) e = ring.neg(e);
  }
  return z;
}

/// Division-free linear solver: one charpoly, one unit test on det(A), then
/// adjugate products. Reusable across right-hand sides.
template <RingWithUnits R>
class AdjugateSolver {
 public:
  using E = typename R::Elem;

  AdjugateSolver(const R& ring, Matrix<E> A) : ring_(ring), A_(std::move(A)) {
    const std::size_t n = A_.size();
    cp_ = charpoly(ring_, A_);
    E det = (n % 2 == 0) ? cp_[0] : ring_.neg(cp_[0]);
    if (!ring_.is_unit(det)) fail(ErrorCode::SingularJacobian, "determinant is not a unit");
    det_inv_ = ring_.inv(det);
  }

  std::vector<E> solve(const std::vector<E>& rhs) const {
    if (rhs.size() != A_.size()) fail(ErrorCode::ShapeError, "right-hand side length mismatch");
    if (A_.empty()) return {};
    auto z = adjugate_times(ring_, A_, cp_, rhs);
    for (auto& e : z) e = ring_.mul(e, det_inv_);
    return z;
  }

 private:
  R ring_;
  Matrix<E> A_;
  std::vector<E> cp_;
  E det_inv_;
};

template <RingWithUnits R>
std::vector<typename R::Elem> ring_solve(const R& ring, const Matrix<typename R::Elem>& J,
                                         const std::vector<typename R::Elem>& rhs) {
  return AdjugateSolver<R>(ring, J).solve(rhs);
}

}  // namespace dethom
