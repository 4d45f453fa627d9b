// Acceptance run: one PASS/FAIL line per criterion. Criteria named with
// --known-failure still print FAIL but do not change the exit status.

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dethom/dethom.hpp"
#include "example_fixture.hpp"

using namespace dethom;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

std::string join(const std::vector<i64>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

DetSystem example_system() { return DetSystem(fixture::F, 3, {fixture::g()}, fixture::Fmat()); }

StartData example_start(const DetSystem& sys) {
  std::vector<std::vector<Fp>> c;
  for (const auto& row : fixture::multipliers()) {
    std::vector<Fp> r;
    for (i64 x : row) r.push_back(fixture::F.from_int(x));
    c.push_back(r);
  }
  return explicit_start(sys, {fixture::r()}, fixture::m(), c);
}

/// Random polynomial whose terms are drawn from the monomials with
/// sum(weights . a) <= deg, each kept with probability keep/10.
SparsePoly random_sparse(const PrimeField& F, std::size_t n, const std::vector<u64>& weights, u64 deg, u64 keep, Rng& rng,
                         bool force_origin = false) {
  for (;;) {
    SparsePoly f(F, n);
    std::vector<std::uint32_t> e(n, 0);
    std::function<void(std::size_t, u64)> rec = [&](std::size_t i, u64 used) {
      if (i == n) {
        const bool origin = used == 0;
        if ((origin && force_origin) || rng.below(10) < keep) f.add_term(e, sample(F, rng, true));
        return;
      }
      for (u64 a = 0; used + a * weights[i] <= deg; ++a) {
        e[i] = static_cast<std::uint32_t>(a);
        rec(i + 1, used + a * weights[i]);
      }
      e[i] = 0;
    };
    rec(0, 0);
    if (f.terms().size() >= 2) return f;
  }
}

SparsePoly random_dense(const PrimeField& F, std::size_t n, u64 deg, Rng& rng) {
  return random_sparse(F, n, std::vector<u64>(n, 1), deg, 10, rng);
}

// 1. mixed volumes of the worked example
Outcome c1() {
  const SubsetBound chi = chi_bound(example_system());
  const bool ok = chi.parts == std::vector<i64>{3, 3, 3} && chi.total == 9;
  return {ok, "MV parts (" + join(chi.parts) + "), chi = " + std::to_string(chi.total)};
}

// 2. dense bound of the worked example
Outcome c2() {
  const u64 d = dense_bound(example_system());
  return {d == 24, "dense bound = " + std::to_string(d)};
}

// 3. start subsystems reproduce the published shape parametrizations
Outcome c3() {
  const DetSystem sys = example_system();
  const auto lam = fixture::lambda();
  const StartSolution ss = solve_start(sys, example_start(sys), lam);
  const std::vector<ZeroDimParam> want = {fixture::R01(), fixture::R02(), fixture::R03()};
  int equal = 0;
  for (std::size_t i = 0; i < want.size() && i < ss.parts.size(); ++i) equal += ss.parts[i] == want[i];
  return {equal == 3, std::to_string(equal) + "/3 subsystem parametrizations match exactly"};
}

// 4. start union
Outcome c4() {
  const DetSystem sys = example_system();
  const StartData start = example_start(sys);
  const StartSolution ss = solve_start(sys, start, fixture::lambda());
  const bool w_ok = ss.param.w == fixture::union_w();
  std::vector<SparsePoly> eqs = start.r;
  for (auto& f : minors(start.matrix())) eqs.push_back(f);
  bool verified = true;
  try {
    verify_against(ss.param, eqs);
  } catch (const Error&) {
    verified = false;
  }
  return {w_ok && verified, std::string("union w ") + (w_ok ? "matches" : "differs") + ", verify_against " +
                                (verified ? "passes" : "fails")};
}

// 5. end-to-end solve
Outcome c5() {
  const DetSystem sys = example_system();
  SolveOptions opt;
  opt.start = example_start(sys);
  const SolveResult res = solve(sys, 1, opt);
  const bool exact = res.param == fixture::R1();
  bool verified = true;
  try {
    verify_against(res.param, sys.equations());
  } catch (const Error&) {
    verified = false;
  }
  return {exact && verified, std::string("R1 ") + (exact ? "reproduced exactly" : "differs") + ", verify_against " +
                                 (verified ? "passes" : "fails") + ", attempts " + std::to_string(res.report.attempts)};
}

// 6. degree bound and roots against brute force over F_31
Outcome c6() {
  const PrimeField F(31);
  Rng rng(6);
  struct Shape {
    std::size_t n, s, p, q;
    u64 gdeg, fdeg;
  };
  const std::vector<Shape> shapes = {{2, 1, 2, 2, 2, 1}, {2, 0, 1, 2, 2, 2}, {3, 1, 2, 3, 2, 1}, {3, 2, 2, 2, 2, 1}};
  int tested = 0, passed = 0, draws = 0;
  std::string first_failure;
  while (tested < 25 && draws < 400) {
    ++draws;
    const Shape& sh = shapes[rng.below(shapes.size())];
    const std::vector<u64> ones(sh.n, 1);
    std::vector<SparsePoly> g;
    for (std::size_t i = 0; i < sh.s; ++i) g.push_back(random_sparse(F, sh.n, ones, sh.gdeg, 7, rng));
    PolyMatrix M(sh.p);
    for (auto& row : M)
      for (std::size_t j = 0; j < sh.q; ++j) row.push_back(random_sparse(F, sh.n, ones, sh.fdeg, 7, rng));
    const DetSystem sys(F, sh.n, g, M);
    const auto eqs = sys.equations();
    try {
      if (quotient(groebner(eqs)).dimension() == 0) continue;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PositiveDimension || e.code() == ErrorCode::ResourceBudgetExceeded) continue;
      throw;
    }
    ++tested;
    try {
      const SolveResult res = solve(sys, static_cast<u64>(draws));
      const bool deg_ok = res.param.degree() <= static_cast<std::size_t>(res.report.chi);
      const bool roots_ok = roots_in_base_field(res.param) == brute_force_solve(eqs);
      if (deg_ok && roots_ok) ++passed;
      else if (first_failure.empty())
        first_failure = "; draw " + std::to_string(draws) + (deg_ok ? " roots differ" : " degree exceeds chi");
    } catch (const Error& e) {
      if (first_failure.empty()) first_failure = "; draw " + std::to_string(draws) + ": " + to_string(e.code()).data();
    }
  }
  return {tested == 25 && passed == 25,
          std::to_string(passed) + "/" + std::to_string(tested) + " systems with deg w <= chi and roots equal" + first_failure};
}

// 7. quotient dimension equals the mixed volume for square systems over F_101
Outcome c7() {
  const PrimeField F(101);
  Rng rng(7);
  int passed = 0, resampled = 0;
  std::string failure;
  for (int sys_index = 0; sys_index < 25; ++sys_index) {
    const std::size_t n = 2 + static_cast<std::size_t>(sys_index % 2);
    const u64 deg = n == 2 ? 3 : 2;
    bool ok = false;
    std::string last;
    for (int draw = 0; draw < 8 && !ok; ++draw) {
      if (draw) ++resampled;
      std::vector<SparsePoly> f;
      for (std::size_t i = 0; i < n; ++i) f.push_back(random_sparse(F, n, std::vector<u64>(n, 1), deg, 5, rng, true));
      std::vector<Support> supp;
      for (const auto& fi : f) supp.push_back(support(fi, true));
      const i64 mv = mixed_volume(std::span<const Support>(supp));
      try {
        const auto D = quotient(groebner(f)).dimension();
        ok = static_cast<i64>(D) == mv;
        if (!ok) last = "D = " + std::to_string(D) + ", MV = " + std::to_string(mv);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PositiveDimension && e.code() != ErrorCode::ResourceBudgetExceeded) throw;
        last = to_string(e.code());
      }
    }
    if (ok) ++passed;
    else if (failure.empty()) failure = "; system " + std::to_string(sys_index) + ": " + last;
  }
  return {passed == 25, std::to_string(passed) + "/25 systems with D = MV (" + std::to_string(resampled) +
                            " degenerate draws resampled)" + failure};
}

// 8. weighted monomial counts and the weighted Bezout number
Outcome c8() {
  const std::vector<u64> w532 = {5, 3, 2}, w111 = {1, 1, 1};
  const u64 n532 = count_weighted_monomials(3, w532, 10), n111 = count_weighted_monomials(3, w111, 10);
  const PrimeField F(101);
  Rng rng(8);
  int within = 0, tested = 0;
  struct Case {
    std::vector<u64> weights, degrees;
  };
  const std::vector<Case> cases = {{{1, 2}, {2, 4}}, {{2, 3}, {6, 6}}};
  while (tested < 10) {
    const Case& c = cases[static_cast<std::size_t>(tested % 2)];
    const u64 delta = weighted_bezout(c.degrees, c.weights);
    // triangular: f1 involves x1 only; f2 is generic of its weighted degree
    SparsePoly f1(F, 2);
    for (u64 a = 0; a * c.weights[0] <= c.degrees[0]; ++a) f1.add_term({static_cast<std::uint32_t>(a), 0}, sample(F, rng, true));
    const SparsePoly f2 = random_sparse(F, 2, c.weights, c.degrees[1], 10, rng);
    const std::vector<SparsePoly> sys = {f1, f2};
    try {
      quotient(groebner(sys));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PositiveDimension) continue;
      throw;
    }
    ++tested;
    within += brute_force_solve(sys).size() <= delta;
  }
  const bool ok = n532 == 19 && n111 == 286 && within == 10;
  return {ok, "count(5,3,2; 10) = " + std::to_string(n532) + " (expected 19), count(1,1,1; 10) = " + std::to_string(n111) +
                  " (expected 286), " + std::to_string(within) + "/10 weighted systems within delta"};
}

// Independent residual computation: elements of F_p[t]/t^k [y]/w as
// coefficient grids c[i][j] for y^i t^j, with schoolbook products.
struct Grid {
  const PrimeField& F;
  std::size_t D, K;
  std::vector<Fp> w_low;  // w_low[i*K + j]

  using E = std::vector<std::vector<Fp>>;

  E zero() const { return E(D, std::vector<Fp>(K, Fp{0})); }

  E mul(const E& a, const E& b) const {
    std::vector<std::vector<Fp>> full(2 * D, std::vector<Fp>(K, Fp{0}));
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < K; ++j) {
        if (a[i][j].is_zero()) continue;
        for (std::size_t k = 0; k < D; ++k)
          for (std::size_t l = 0; j + l < K; ++l) full[i + k][j + l] = F.add(full[i + k][j + l], F.mul(a[i][j], b[k][l]));
      }
    // y^D = -w_low
    for (std::size_t top = 2 * D - 1; top >= D; --top) {
      for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < K; ++j) {
          if (full[top][j].is_zero()) continue;
          for (std::size_t l = 0; j + l < K; ++l)
            full[top - D + i][j + l] = F.sub(full[top - D + i][j + l], F.mul(full[top][j], w_low[i * K + l]));
        }
      full[top].assign(K, Fp{0});
    }
    full.resize(D);
    return full;
  }

  E from_flat(const std::vector<Fp>& c) const {
    E out = zero();
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < K; ++j) out[i][j] = c[i * K + j];
    return out;
  }

  /// f(t, v_1, .., v_n) with t the first variable.
  E eval(const SparsePoly& f, const std::vector<E>& v) const {
    E acc = zero();
    for (const auto& [e, c] : f.terms()) {
      E m = zero();
      if (e[0] < K) m[0][e[0]] = c;
      for (std::size_t i = 1; i < e.size(); ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) m = mul(m, v[i - 1]);
      for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < K; ++j) acc[i][j] = F.add(acc[i][j], m[i][j]);
    }
    return acc;
  }
};

bool independent_residual_zero(const SeriesParam& P, std::span<const SparsePoly> square) {
  const Grid G{P.field, P.degree, P.kappa, P.w_low};
  std::vector<Grid::E> v;
  for (const auto& vi : P.v) v.push_back(G.from_flat(vi));
  for (const auto& f : square)
    if (G.eval(f, v) != G.zero()) return false;
  return true;
}

/// Lifts to kappa = 16 checking the residual and truncation at 2, 4, 8, 16.
bool lift_checks(SeriesParam P, std::span<const SparsePoly> square) {
  std::vector<SeriesParam> chain;
  while (P.kappa < 16) {
    P = newton_lift(P, square);
    try {
      check_series_residual(P, square);
    } catch (const Error&) {
      return false;
    }
    if (!independent_residual_zero(P, square)) return false;
    chain.push_back(P);
  }
  for (std::size_t k = 0; k + 1 < chain.size(); ++k)
    if (!(chain.back().truncated(chain[k].kappa) == chain[k])) return false;
  return chain.size() == 4;
}

// 9. Newton lifting invariants
Outcome c9() {
  const PrimeField F(65521);
  const std::vector<SparsePoly> sqrt_sys = {parse_poly("x2^2-1-x1", F, 2)};
  const ZeroDimParam sqrt_start(F, {F.one()}, UniPoly(F, {F.neg(F.one()), F.zero(), F.one()}), {UniPoly::monomial(F, 1)});
  const bool sqrt_ok = lift_checks(SeriesParam::from_param(sqrt_start), sqrt_sys);

  Rng rng(9);
  int passed = 0, tested = 0, draws = 0;
  while (tested < 10 && draws < 100) {
    ++draws;
    std::vector<SparsePoly> a, b;
    for (int i = 0; i < 2; ++i) {
      a.push_back(random_dense(F, 2, 2, rng));
      b.push_back(random_dense(F, 2, 2, rng));
    }
    const std::vector<Fp> lam = {sample(F, rng), sample(F, rng, true)};
    ZeroDimParam start = ZeroDimParam::empty(F, lam);
    try {
      start = shape_param(quotient(groebner(a)), lam);
    } catch (const Error&) {
      continue;  // not a set of simple roots separated by lam
    }
    if (start.degree() == 0) continue;
    // (1 - t) a + t b in (t, x1, x2)
    std::vector<SparsePoly> H;
    const SparsePoly t = SparsePoly::variable(F, 3, 0);
    const SparsePoly one_minus_t = SparsePoly::constant(F, 3, F.one()) - t;
    for (int i = 0; i < 2; ++i) H.push_back(one_minus_t * a[i].embed(3, 1) + t * b[i].embed(3, 1));
    ++tested;
    try {
      passed += lift_checks(SeriesParam::from_param(start), H);
    } catch (const Error&) {
    }
  }
  return {sqrt_ok && passed == 10 && tested == 10,
          std::string("x^2-(1+t) ") + (sqrt_ok ? "ok" : "fails") + ", " + std::to_string(passed) + "/" +
              std::to_string(tested) + " random homotopies pass residual and truncation at kappa 2,4,8,16"};
}

// 10. Pade roundtrip
Outcome c10() {
  const PrimeField F(65521);
  Rng rng(10);
  int passed = 0, tested = 0;
  while (tested < 100) {
    const std::size_t dn = rng.below(7), dd = rng.below(7);
    std::vector<Fp> nc(dn + 1), dc(dd + 1);
    for (auto& c : nc) c = sample(F, rng);
    for (auto& c : dc) c = sample(F, rng);
    nc.back() = sample(F, rng, true);
    dc.back() = sample(F, rng, true);
    dc[0] = F.one();
    const UniPoly num(F, nc), den(F, dc);
    if (gcd(num, den).degree() > 0) continue;
    ++tested;
    const std::vector<Fp> s = expand_rational(num, den, dn + dd + 1);
    try {
      const PadeResult r = pade(F, s, dn, dd);
      passed += r.num == num && r.den == den;
    } catch (const Error&) {
    }
  }
  return {passed == 100, std::to_string(passed) + "/100 rational functions recovered exactly"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--known-failure") known.insert(std::atoi(argv[++i]));

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"worked example mixed volumes", c1},   {"worked example dense bound", c2},
      {"start subsystem parametrizations", c3}, {"start union", c4},
      {"end-to-end solve", c5},                 {"degree bound vs brute force over F_31", c6},
      {"quotient dimension equals mixed volume", c7}, {"weighted counts and weighted Bezout", c8},
      {"Newton lifting invariants", c9},        {"Pade roundtrip", c10}};
  int unexpected = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const Error& e) {
      o = {false, std::string("raised ") + e.what()};
    }
    const bool listed = known.count(id) > 0;
    std::printf("%s %2d %s: %s%s\n", o.ok ? "PASS" : "FAIL", id, criteria[k].first, o.detail.c_str(),
                listed ? " [known failure]" : "");
    if (!o.ok && !listed) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
