#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dethom/detsys.hpp"
#include "dethom/errors.hpp"
#include "dethom/groebner.hpp"
#include "dethom/mpoly.hpp"
#include "dethom/ring.hpp"
#include "dethom/series.hpp"
#include "dethom/upoly.hpp"
#include "dethom/zdp.hpp"

namespace dethom {

inline constexpr int kMaxRetries = 8;

/// Random start data: r_i on A_i, m_j on B_j, M(i,j) = c_ij * m_j.
struct StartData {
  std::vector<SparsePoly> r;
  std::vector<SparsePoly> m;
  std::vector<std::vector<Fp>> c;

  PolyMatrix matrix() const {
    PolyMatrix M(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) M[i].push_back(m[j].scaled(c[i][j]));
    return M;
  }
};

inline StartData build_start(const DetSystem& sys, u64 seed) {
  Rng rng(seed);
  const PrimeField& F = sys.field;
  auto random_on = [&](const Support& S) {
    SparsePoly f(F, sys.n);
    for (const auto& e : S) f.add_term(e, sample(F, rng, true));
    return f;
  };
  StartData out;
  for (const auto& A : sys.g_supports()) out.r.push_back(random_on(A));
  for (const auto& B : sys.column_supports()) out.m.push_back(random_on(B));
  out.c.assign(sys.p(), std::vector<Fp>(sys.q()));
  for (auto& row : out.c)
    for (auto& x : row) x = sample(F, rng, true);
  return out;
}

/// Explicit start data (replaying a published example); shapes are checked.
inline StartData explicit_start(const DetSystem& sys, std::vector<SparsePoly> r, std::vector<SparsePoly> m,
                                std::vector<std::vector<Fp>> c) {
  if (r.size() != sys.s() || m.size() != sys.q() || c.size() != sys.p()) {
    fail(ErrorCode::ShapeError, "start data does not match the system shape");
  }
  for (const auto& row : c) {
    if (row.size() != sys.q()) fail(ErrorCode::ShapeError, "start multipliers are ragged");
    for (Fp x : row)
      if (x.is_zero()) fail(ErrorCode::DegenerateInput, "start multipliers must be nonzero");
  }
  for (const auto* group : {&r, &m})
    for (const auto& f : *group)
      if (f.nvars() != sys.n || !(f.field() == sys.field)) fail(ErrorCode::ArityMismatch, "start polynomial outside the system ring");
  return StartData{std::move(r), std::move(m), std::move(c)};
}

/// Per-subset parametrizations of V(m_J, r) and their union.
struct StartSolution {
  std::vector<ZeroDimParam> parts;
  ZeroDimParam param;
};

inline StartSolution solve_start(const DetSystem& sys, const StartData& start, std::span<const Fp> lambda) {
  StartSolution out{{}, ZeroDimParam::empty(sys.field, std::vector<Fp>(lambda.begin(), lambda.end()))};
  for (const auto& J : sys.column_subsets()) {
    std::vector<SparsePoly> eqs;
    for (std::size_t j : J) eqs.push_back(start.m[j]);
    for (const auto& f : start.r) eqs.push_back(f);
    out.parts.push_back(shape_param(quotient(groebner(eqs)), lambda));
  }
  out.param = param_union(out.parts);
  std::vector<SparsePoly> start_eqs = start.r;
  for (auto& f : minors(start.matrix())) start_eqs.push_back(std::move(f));
  verify_against(out.param, start_eqs);
  return out;
}

/// B = ((1-t) r + t g, p-minors of (1-t) M + t F) in n+1 variables, t first.
struct HomotopySystem {
  std::size_t n;
  std::vector<SparsePoly> equations;

  /// The system at a fixed t, in the original n variables.
  std::vector<SparsePoly> at(Fp t) const {
    std::vector<SparsePoly> out;
    for (const auto& f : equations) out.push_back(f.specialize(0, t));
    return out;
  }
};

inline HomotopySystem assemble(const DetSystem& sys, const StartData& start) {
  const PrimeField& F = sys.field;
  const std::size_t N = sys.n + 1;
  const SparsePoly t = SparsePoly::variable(F, N, 0);
  const SparsePoly one_minus_t = SparsePoly::constant(F, N, F.one()) - t;
  auto mix = [&](const SparsePoly& a, const SparsePoly& b) { return one_minus_t * a.embed(N, 1) + t * b.embed(N, 1); };
  HomotopySystem H{sys.n, {}};
  for (std::size_t i = 0; i < sys.s(); ++i) H.equations.push_back(mix(start.r[i], sys.g[i]));
  const PolyMatrix M = start.matrix();
  PolyMatrix V(sys.p());
  for (std::size_t i = 0; i < sys.p(); ++i)
    for (std::size_t j = 0; j < sys.q(); ++j) V[i].push_back(mix(M[i][j], sys.F[i][j]));
  for (auto& f : minors(V)) H.equations.push_back(std::move(f));
  return H;
}

namespace detail {

/// Evaluates polynomials in (t, x_1..x_n) at (t, X) in a series quotient ring,
/// memoizing x-monomials.
class SeriesEvaluator {
 public:
  SeriesEvaluator(const SeriesQuotRing& ring, std::vector<std::vector<Fp>> xs) : R_(ring), xs_(std::move(xs)) {}

  std::vector<Fp> operator()(const SparsePoly& f) {
    std::vector<Fp> acc = R_.zero();
    ExponentVec xe(xs_.size());
    for (const auto& [e, c] : f.terms()) {
      if (e[0] >= R_.precision()) continue;
      std::copy(e.begin() + 1, e.end(), xe.begin());
      acc = R_.add(acc, R_.shift_t(R_.scale(monomial(xe), c), e[0]));
    }
    return acc;
  }

 private:
  const std::vector<Fp>& monomial(const ExponentVec& e) {
    auto it = memo_.find(e);
    if (it != memo_.end()) return it->second;
    std::vector<Fp> v;
    std::size_t i = 0;
    while (i < e.size() && e[i] == 0) ++i;
    if (i == e.size()) {
      v = R_.one();
    } else {
      ExponentVec lower = e;
      --lower[i];
      v = R_.mul(monomial(lower), xs_[i]);
    }
    return memo_.emplace(e, std::move(v)).first->second;
  }

  const SeriesQuotRing& R_;
  std::vector<std::vector<Fp>> xs_;
  std::map<ExponentVec, std::vector<Fp>> memo_;
};

/// Gaussian elimination over F_p[t]/t^k with unit pivots; solves A X = B column-wise.
inline std::vector<std::vector<std::vector<Fp>>> series_solve(const SeriesRing& S, Matrix<std::vector<Fp>> A,
                                                             std::vector<std::vector<std::vector<Fp>>> rhs) {
  const std::size_t n = A.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && !S.is_unit(A[piv][c])) ++piv;
    if (piv == n) fail(ErrorCode::SingularJacobian, "power matrix is not invertible");
    std::swap(A[c], A[piv]);
    for (auto& b : rhs) std::swap(b[c], b[piv]);
    const auto inv = S.inv(A[c][c]);
    for (std::size_t j = c; j < n; ++j) A[c][j] = S.mul(A[c][j], inv);
    for (auto& b : rhs) b[c] = S.mul(b[c], inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || A[r][c] == S.zero()) continue;
      const auto f = A[r][c];
      for (std::size_t j = c; j < n; ++j) A[r][j] = S.sub(A[r][j], S.mul(f, A[c][j]));
      for (auto& b : rhs) b[r] = S.sub(b[r], S.mul(f, b[c]));
    }
  }
  return rhs;
}

}  // namespace detail

/// (w, v) with coefficients in F_p[t]/t^kappa; w is monic in y of degree D and
/// stored without its leading term, all in SeriesQuotRing layout.
struct SeriesParam {
  PrimeField field;
  std::vector<Fp> lambda;
  std::size_t degree;
  std::size_t kappa;
  std::vector<Fp> w_low;
  std::vector<std::vector<Fp>> v;

  static SeriesParam from_param(const ZeroDimParam& R) {
    const std::size_t D = R.degree();
    SeriesParam P{R.field, R.lambda, D, 1, {}, {}};
    for (std::size_t i = 0; i < D; ++i) P.w_low.push_back(R.w[i]);
    for (const auto& vi : R.v) {
      std::vector<Fp> c(D);
      for (std::size_t i = 0; i < D; ++i) c[i] = vi[i];
      P.v.push_back(std::move(c));
    }
    return P;
  }

  SeriesQuotRing ring() const { return SeriesQuotRing(field, degree, kappa, w_low); }

  UniPoly w_at_t0() const { return ring().modulus_at_t0(); }

  /// Truncation to a lower precision.
  SeriesParam truncated(std::size_t k) const {
    if (k > kappa) fail(ErrorCode::ShapeError, "truncation above the current precision");
    SeriesQuotRing target(field, degree, k, std::vector<Fp>(degree * k, Fp{0}));
    SeriesParam P{field, lambda, degree, k, target.rescale(w_low, kappa), {}};
    for (const auto& vi : v) P.v.push_back(target.rescale(vi, kappa));
    return P;
  }

  friend bool operator==(const SeriesParam& a, const SeriesParam& b) {
    return a.field == b.field && a.lambda == b.lambda && a.degree == b.degree && a.kappa == b.kappa && a.w_low == b.w_low &&
           a.v == b.v;
  }
};

/// Residual check: every equation vanishes at (t, v(y)) mod (w, t^kappa).
inline void check_series_residual(const SeriesParam& P, std::span<const SparsePoly> square) {
  if (P.degree == 0) return;
  const SeriesQuotRing Q = P.ring();
  detail::SeriesEvaluator eval(Q, P.v);
  for (std::size_t j = 0; j < square.size(); ++j) {
    if (eval(square[j]) != Q.zero()) {
      fail(ErrorCode::ResidualNonzero, "lifted parametrization leaves a residual in equation " + std::to_string(j),
           static_cast<long>(j));
    }
  }
  std::vector<Fp> lam = Q.zero();
  for (std::size_t i = 0; i < P.v.size(); ++i) lam = Q.add(lam, Q.scale(P.v[i], P.lambda[i]));
  if (lam != Q.y()) fail(ErrorCode::LinearFormMismatch, "lifted parametrization lost lambda(v) = y");
}

/// One Newton doubling kappa -> 2 kappa for the square system in (t, x).
inline SeriesParam newton_lift(const SeriesParam& P, std::span<const SparsePoly> square) {
  const std::size_t n = P.v.size(), D = P.degree, K = 2 * P.kappa;
  if (square.size() != n) fail(ErrorCode::ShapeError, "the lifted system must be square");
  if (D == 0) {
    SeriesParam out = P;
    out.kappa = K;
    return out;
  }
  const PrimeField& F = P.field;
  const UniPoly w0 = P.w_at_t0();
  const SeriesQuotRing R0 = SeriesQuotRing::constant_modulus(w0, K);
  const SeriesRing S(F, K);

  // branch L of w(t, L) = 0 through y, by univariate Newton in R0
  auto ycoeffs = [&](const std::vector<Fp>& flat, std::size_t kappa) {
    std::vector<std::vector<Fp>> c(D);
    for (std::size_t i = 0; i < D; ++i) c[i] = S.from(std::span<const Fp>(flat).subspan(i * kappa, kappa));
    return c;
  };
  const auto wc = ycoeffs(P.w_low, P.kappa);
  std::vector<std::vector<Fp>> wscal;
  for (const auto& c : wc) wscal.push_back(R0.from_ycoeffs({c}));
  auto horner = [&](const std::vector<Fp>& L, bool derivative) {
    std::vector<Fp> acc = derivative ? R0.scalar(F.from_u64(D)) : R0.one();
    for (std::size_t i = D; i-- > (derivative ? 1 : 0);) {
      const std::vector<Fp> coef = derivative ? R0.scale(wscal[i], F.from_u64(i)) : wscal[i];
      acc = R0.add(R0.mul(acc, L), coef);
    }
    return acc;
  };
  std::vector<Fp> L = R0.y();
  for (std::size_t prec = 1; prec < P.kappa; prec *= 2) L = R0.sub(L, R0.mul(horner(L, false), R0.inv(horner(L, true))));

  // X_i = v_i(L)
  std::vector<std::vector<Fp>> X;
  for (const auto& vi : P.v) {
    const auto c = ycoeffs(vi, P.kappa);
    std::vector<Fp> acc = R0.zero();
    for (std::size_t i = D; i-- > 0;) acc = R0.add(R0.mul(acc, L), R0.from_ycoeffs({c[i]}));
    X.push_back(std::move(acc));
  }

  // one Newton step on the system: X <- X - J^{-1} G
  {
    detail::SeriesEvaluator eval(R0, X);
    std::vector<std::vector<Fp>> G;
    Matrix<std::vector<Fp>> J(n, std::vector<std::vector<Fp>>(n));
    for (std::size_t j = 0; j < n; ++j) {
      G.push_back(eval(square[j]));
      for (std::size_t i = 0; i < n; ++i) J[j][i] = eval(square[j].derivative(i + 1));
    }
    const auto delta = ring_solve(R0, J, G);
    for (std::size_t i = 0; i < n; ++i) X[i] = R0.sub(X[i], delta[i]);
  }

  // new lambda value, its characteristic polynomial and the power basis
  std::vector<Fp> Lnew = R0.zero();
  for (std::size_t i = 0; i < n; ++i) Lnew = R0.add(Lnew, R0.scale(X[i], P.lambda[i]));
  Matrix<std::vector<Fp>> mult(D, std::vector<std::vector<Fp>>(D)), power(D, std::vector<std::vector<Fp>>(D));
  std::vector<Fp> col = Lnew, pw = R0.one();
  const std::vector<Fp> y = R0.y();
  for (std::size_t j = 0; j < D; ++j) {
    for (std::size_t i = 0; i < D; ++i) {
      mult[i][j] = R0.coeff(col, i);
      power[i][j] = R0.coeff(pw, i);
    }
    col = R0.mul(col, y);
    pw = R0.mul(pw, Lnew);
  }
  const auto cp = charpoly(S, mult);
  SeriesParam out{F, P.lambda, D, K, std::vector<Fp>(D * K), {}};
  for (std::size_t i = 0; i < D; ++i) std::copy(cp[i].begin(), cp[i].end(), out.w_low.begin() + static_cast<std::ptrdiff_t>(i * K));

  std::vector<std::vector<std::vector<Fp>>> rhs;
  for (const auto& xi : X) {
    std::vector<std::vector<Fp>> c;
    for (std::size_t i = 0; i < D; ++i) c.push_back(R0.coeff(xi, i));
    rhs.push_back(std::move(c));
  }
  for (const auto& sol : detail::series_solve(S, power, rhs)) {
    std::vector<Fp> flat(D * K);
    for (std::size_t i = 0; i < D; ++i) std::copy(sol[i].begin(), sol[i].end(), flat.begin() + static_cast<std::ptrdiff_t>(i * K));
    out.v.push_back(std::move(flat));
  }
  if (out.w_at_t0() != w0) fail(ErrorCode::ResidualNonzero, "lifting changed w at t = 0");
  return out;
}

/// Random square reduction L * B with the Jacobian at t = 0 a unit modulo the
/// start w. The identity is tried first when B is already square.
inline std::vector<SparsePoly> square_combine(const HomotopySystem& H, const ZeroDimParam& start, u64 seed) {
  const std::size_t n = H.n, m = H.equations.size();
  if (m < n) fail(ErrorCode::ShapeError, "homotopy has fewer equations than unknowns");
  const PrimeField& F = start.field;
  const std::size_t N = n + 1;
  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<SparsePoly> out;
    for (std::size_t k = 0; k < n; ++k) {
      if (m == n && attempt == 0) {
        out.push_back(H.equations[k]);
        continue;
      }
      SparsePoly f(F, N);
      for (const auto& b : H.equations) f += b.scaled(sample(F, rng));
      out.push_back(std::move(f));
    }
    if (start.degree() == 0) return out;
    const SeriesQuotRing R = SeriesQuotRing::constant_modulus(start.w, 1);
    std::vector<std::vector<Fp>> X;
    for (const auto& vi : start.v) X.push_back(R.from_poly(vi));
    detail::SeriesEvaluator eval(R, X);
    Matrix<std::vector<Fp>> J(n, std::vector<std::vector<Fp>>(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (eval(out[j]) != R.zero()) fail(ErrorCode::ResidualNonzero, "combined system misses a start root", static_cast<long>(j));
      for (std::size_t i = 0; i < n; ++i) J[j][i] = eval(out[j].derivative(i + 1));
    }
    if (R.is_unit(determinant(R, J))) return out;
  }
  fail(ErrorCode::SingularJacobian, "no square combination with a unit Jacobian after " + std::to_string(kMaxRetries) + " draws");
}

struct Specialization {
  ZeroDimParam param;
  std::size_t degree_at_one;  // deg W(1, y) before removing multiple roots
  std::size_t escaped;        // paths lost to infinity at t = 1
};

/// Rational reconstruction of the Kronecker form in t, evaluation at t = 1 and
/// collapse of multiple roots. Denominators are cleared first, so paths that
/// diverge at t = 1 only lower the degree of W(1, y).
inline Specialization reconstruct_and_specialize(const SeriesParam& P, std::size_t rho) {
  const PrimeField& F = P.field;
  const std::size_t D = P.degree, n = P.v.size();
  if (D == 0) return {ZeroDimParam::empty(F, P.lambda), 0, 0};
  if (P.kappa < 2 * rho + 2) {
    fail(ErrorCode::ReconstructionFailed, "precision " + std::to_string(P.kappa) + " below 2*rho+2 = " + std::to_string(2 * rho + 2));
  }
  const SeriesQuotRing Q = P.ring();
  const std::size_t K = P.kappa;
  // dw/dy as an element of Q
  std::vector<std::vector<Fp>> dcoef(D);
  for (std::size_t i = 1; i < D; ++i) {
    dcoef[i - 1] = Q.scale(std::vector<Fp>(P.w_low.begin() + static_cast<std::ptrdiff_t>(i * K),
                                          P.w_low.begin() + static_cast<std::ptrdiff_t>((i + 1) * K)),
                           F.from_u64(i));
  }
  dcoef[D - 1] = SeriesRing(F, K).constant(F.from_u64(D));
  const std::vector<Fp> dw = Q.from_ycoeffs(dcoef);

  std::vector<PadeResult> wr;
  for (std::size_t i = 0; i < D; ++i) wr.push_back(pade(F, std::span<const Fp>(P.w_low).subspan(i * K, K), rho, rho));
  UniPoly den = UniPoly::constant(F, F.one());
  for (const auto& r : wr) den = den * (r.den / gcd(den, r.den));

  // W = den * w has polynomial coefficients
  std::vector<Fp> Wc(D + 1);
  for (std::size_t i = 0; i < D; ++i) Wc[i] = ((den / wr[i].den) * wr[i].num).eval(F.one());
  Wc[D] = den.eval(F.one());
  const UniPoly W1(F, Wc);
  if (W1.degree() <= 0) return {ZeroDimParam::empty(F, P.lambda), 0, D};

  std::vector<UniPoly> U;
  for (std::size_t k = 0; k < n; ++k) {
    const std::vector<Fp> Vk = Q.mul(dw, P.v[k]);
    std::vector<Fp> c(D);
    for (std::size_t i = 0; i < D; ++i) {
      const PadeResult pr = pade(F, std::span<const Fp>(Vk).subspan(i * K, K), rho, rho);
      const UniPoly num = den * pr.num;
      const UniPoly h = gcd(num, pr.den);
      const Fp d1 = (pr.den / h).eval(F.one());
      if (d1.is_zero()) {
        const long index = static_cast<long>(k * D + i);
        fail(ErrorCode::DenominatorVanishesAtOne,
             "coordinate x" + std::to_string(k + 1) + " escapes at t = 1 (coefficient " + std::to_string(index) + ")", index);
      }
      c[i] = F.div((num / h).eval(F.one()), d1);
    }
    U.emplace_back(F, c);
  }

  const UniPoly dW1 = W1.derivative();
  const UniPoly g = gcd(W1, dW1);
  const UniPoly q = (W1 / g).monic();
  std::vector<UniPoly> v;
  UniPoly dinv(F);
  try {
    dinv = invmod(dW1 / g, q);
  } catch (const Error&) {
    fail(ErrorCode::NotSeparating, "multiplicity at t = 1 is divisible by the characteristic");
  }
  for (std::size_t k = 0; k < n; ++k) {
    auto [quo, rem] = divrem(U[k], g);
    if (!rem.is_zero()) fail(ErrorCode::NotSeparating, "merged paths do not share a limit point", static_cast<long>(k));
    v.push_back(mulmod(quo, dinv, q));
  }
  ZeroDimParam R(F, P.lambda, q, std::move(v));
  validate(R);
  const std::size_t deg1 = static_cast<std::size_t>(W1.degree());
  return {R, deg1, D - deg1};
}

struct SolveOptions {
  std::optional<std::vector<Fp>> lambda;     // default: x_n, then random
  std::optional<std::size_t> precision;      // overrides rho
  std::optional<StartData> start;            // explicit start data
  int max_attempts = kMaxRetries;
};

struct SolveReport {
  std::vector<i64> chi_parts;
  i64 chi = -1;                              // -1 when not computed (n > 5)
  std::size_t rho = 0;
  std::size_t kappa = 0;
  std::size_t start_degree = 0;
  std::vector<std::size_t> start_part_degrees;
  std::size_t degree_at_one = 0;
  std::size_t escaped = 0;
  std::size_t degree = 0;
  int attempts = 0;
  u64 seed = 0;
  std::vector<Fp> lambda;
  std::vector<std::string> failures;         // one line per failed attempt
  std::vector<std::pair<std::string, double>> timings;  // milliseconds
};

struct SolveResult {
  ZeroDimParam param;
  SolveReport report;
};

/// The column-support homotopy from a random (or given) start system to (F, g).
inline SolveResult solve(const DetSystem& sys, u64 seed, const SolveOptions& opt = {}) {
  using clock = std::chrono::steady_clock;
  const PrimeField& F = sys.field;
  const std::size_t n = sys.n;
  SolveReport rep;
  rep.seed = seed;
  auto mark = [&](const char* name, clock::time_point since) {
    rep.timings.emplace_back(name, std::chrono::duration<double, std::milli>(clock::now() - since).count());
  };

  auto t0 = clock::now();
  if (opt.precision) {
    rep.rho = *opt.precision;
  } else {
    rep.rho = static_cast<std::size_t>(rho_bound(sys).total);
  }
  if (n <= kMaxMixedDim) {
    const SubsetBound chi = chi_bound(sys);
    rep.chi_parts = chi.parts;
    rep.chi = chi.total;
  }
  mark("bounds", t0);
  const std::vector<SparsePoly> target = sys.equations();
  const Rng master(seed);
  bool all_reconstruction = true;

  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    rep.attempts = attempt + 1;
    Rng rng = master.derive(static_cast<u64>(attempt));
    const u64 start_seed = rng.next(), combine_seed = rng.next();
    std::vector<Fp> lam(n, Fp{0});
    if (opt.lambda && attempt == 0) {
      lam = *opt.lambda;
      if (lam.size() != n) fail(ErrorCode::ArityMismatch, "linear form has the wrong length");
    } else if (attempt == 0) {
      lam[n - 1] = F.one();
    } else {
      for (auto& x : lam) x = sample(F, rng);
      lam[n - 1] = sample(F, rng, true);
    }
    try {
      auto t = clock::now();
      const StartData start = opt.start ? *opt.start : build_start(sys, start_seed);
      const StartSolution ss = solve_start(sys, start, lam);
      mark("start", t);
      rep.start_part_degrees.clear();
      for (const auto& part : ss.parts) rep.start_part_degrees.push_back(part.degree());
      rep.start_degree = ss.param.degree();

      t = clock::now();
      const HomotopySystem H = assemble(sys, start);
      const std::vector<SparsePoly> square = square_combine(H, ss.param, combine_seed);
      SeriesParam P = SeriesParam::from_param(ss.param);
      while (P.kappa < 2 * rep.rho + 2) {
        P = newton_lift(P, square);
        check_series_residual(P, square);
      }
      rep.kappa = P.kappa;
      mark("lift", t);

      t = clock::now();
      const Specialization sp = reconstruct_and_specialize(P, rep.rho);
      verify_against(sp.param, target);
      mark("reconstruct", t);
      rep.degree_at_one = sp.degree_at_one;
      rep.escaped = sp.escaped;
      rep.degree = sp.param.degree();
      rep.lambda = lam;
      return {sp.param, rep};
    } catch (const Error& e) {
      switch (e.code()) {
        case ErrorCode::NotSeparating:
        case ErrorCode::NotRadical:
        case ErrorCode::PositiveDimension:
        case ErrorCode::SharedRoots:
        case ErrorCode::SingularJacobian:
        case ErrorCode::ZeroInverse:
        case ErrorCode::ResidualNonzero:
        case ErrorCode::ReconstructionFailed:
        case ErrorCode::DenominatorVanishesAtOne:
        case ErrorCode::NotSquarefree:
        case ErrorCode::LinearFormMismatch:
          rep.failures.push_back("attempt " + std::to_string(attempt + 1) + ": " + e.what());
          if (e.code() != ErrorCode::ReconstructionFailed && e.code() != ErrorCode::DenominatorVanishesAtOne) {
            all_reconstruction = false;
          }
          break;
        default:
          throw;
      }
    }
  }
  std::string log;
  for (const auto& f : rep.failures) log += "\n  " + f;
  if (all_reconstruction && !rep.failures.empty()) {
    fail(ErrorCode::ReconstructionFailed, "every attempt failed in reconstruction:" + log);
  }
  fail(ErrorCode::RetriesExhausted, "no attempt succeeded after " + std::to_string(opt.max_attempts) + " tries:" + log);
}

}  // namespace dethom
