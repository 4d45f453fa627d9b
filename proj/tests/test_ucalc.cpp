#include <catch_amalgamated.hpp>

#include <vector>

#include "dethom/ring.hpp"
#include "dethom/series.hpp"
#include "dethom/upoly.hpp"

using namespace dethom;

namespace {

UniPoly U(const PrimeField& F, std::initializer_list<i64> c) { return UniPoly::from_ints(F, c); }

UniPoly random_poly(const PrimeField& F, std::size_t deg, Rng& rng) {
  std::vector<Fp> c(deg + 1);
  for (auto& x : c) x = sample(F, rng);
  c[deg] = sample(F, rng, true);
  return UniPoly(F, c);
}

// Expansion by minors over F_p[y], independent of Berkowitz.
UniPoly cofactor_det(const PrimeField& F, const std::vector<std::vector<UniPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  UniPoly acc(F);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<UniPoly>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<UniPoly> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      sub.push_back(row);
    }
    UniPoly term = m[0][c] * cofactor_det(F, sub);
    acc = (c % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

TEST_CASE("gcd and xgcd", "[ucalc]") {
  PrimeField F(101);
  CHECK(gcd(U(F, {-1, 0, 1}), U(F, {-1, 1})) == U(F, {-1, 1}));
  CHECK(gcd(U(F, {4, 0, 2}), UniPoly(F)) == U(F, {2, 0, 1}));
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    UniPoly a = random_poly(F, rng.below(7), rng), b = random_poly(F, rng.below(7), rng);
    UniPoly common = random_poly(F, rng.below(3), rng);
    a = a * common;
    b = b * common;
    auto [g, u, v] = xgcd(a, b);
    CHECK(g.is_monic());
    CHECK(u * a + v * b == g);
    CHECK((a % g).is_zero());
    CHECK((b % g).is_zero());
    CHECK(g.degree() >= common.degree());
  }
}

TEST_CASE("division with remainder", "[ucalc]") {
  PrimeField F(65521);
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    UniPoly a = random_poly(F, rng.below(10), rng), b = random_poly(F, rng.below(5), rng);
    auto [q, r] = divrem(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
  }
  CHECK_THROWS_AS(divrem(U(F, {1, 1}), UniPoly(F)), Error);
}

TEST_CASE("squarefree part", "[ucalc]") {
  PrimeField F(101);
  CHECK(squarefree_part(U(F, {0, 0, 1})) == U(F, {0, 1}));
  UniPoly a = U(F, {-1, 1}), b = U(F, {-2, 1});
  CHECK(squarefree_part(a * a * b) == a * b);
  CHECK(squarefree_part(U(F, {3})) == U(F, {1}));
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    UniPoly f = random_poly(F, 1 + rng.below(4), rng), g = random_poly(F, 1 + rng.below(3), rng);
    UniPoly s = squarefree_part(f * f * g);
    CHECK(gcd(s, s.derivative()).degree() == 0);
    CHECK(is_squarefree(s));
  }
  PrimeField F3(3);
  try {
    squarefree_part(U(F3, {1, 0, 0, 1}));
    FAIL("degree >= p accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeTooLargeForChar);
  }
}

TEST_CASE("chinese remaindering", "[ucalc]") {
  PrimeField F(101);
  std::vector<UniPoly> res = {U(F, {3}), U(F, {5})}, mods = {U(F, {-1, 1}), U(F, {-2, 1})};
  CHECK(crt(res, mods) == U(F, {1, 2}));
  std::vector<UniPoly> one_res = {U(F, {4, 7})}, one_mod = {U(F, {1, 0, 1})};
  CHECK(crt(one_res, one_mod) == U(F, {4, 7}));
  std::vector<UniPoly> ys(3, U(F, {0, 1}));
  std::vector<UniPoly> lin = {U(F, {-1, 1}), U(F, {-2, 1}), U(F, {-3, 1})};
  CHECK(crt(ys, lin) == U(F, {0, 1}));
  std::vector<UniPoly> bad = {U(F, {-1, 1}), U(F, {-1, 0, 1})};
  try {
    crt(std::span<const UniPoly>(ys).first(2), bad);
    FAIL("shared factor accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ModuliNotCoprime);
  }
}

TEST_CASE("series ring", "[ucalc]") {
  PrimeField F(101);
  SeriesRing S(F, 6);
  auto a = S.from(U(F, {1, 1}));  // 1 + t
  auto inv = S.inv(a);
  CHECK(S.mul(a, inv) == S.one());
  CHECK(inv[3].v == 100);  // (-1)^3
  CHECK_THROWS_AS(S.inv(S.from(U(F, {0, 1}))), Error);
}

TEST_CASE("pade reconstruction", "[ucalc]") {
  PrimeField F(65521);
  std::vector<Fp> geo(5, Fp{1});
  auto [num, den] = pade(F, geo, 1, 1);
  CHECK(num == U(F, {1}));
  CHECK(den == U(F, {1, -1}));

  std::vector<Fp> poly = {Fp{4}, Fp{0}, Fp{9}, Fp{0}, Fp{0}, Fp{0}};
  auto p2 = pade(F, poly, 2, 3);
  CHECK(p2.num == U(F, {4, 0, 9}));
  CHECK(p2.den == U(F, {1}));

  std::vector<Fp> zero(4, Fp{0});
  auto p3 = pade(F, zero, 1, 2);
  CHECK(p3.num.is_zero());
  CHECK(p3.den == U(F, {1}));

  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const std::size_t dn = rng.below(7), dd = rng.below(7);
    UniPoly num0 = random_poly(F, dn, rng);
    UniPoly den0 = random_poly(F, dd, rng);
    std::vector<Fp> dc = den0.coeffs();
    dc[0] = F.one();
    den0 = UniPoly(F, dc);
    if (gcd(num0, den0).degree() > 0) continue;
    auto s = expand_rational(num0, den0, dn + dd + 1);
    auto r = pade(F, s, dn, dd);
    CHECK(r.num == num0);
    CHECK(r.den == den0);
  }

  // precision below num + den + 1
  std::vector<Fp> short_series = {Fp{1}, Fp{2}};
  CHECK_THROWS_AS(pade(F, short_series, 1, 1), Error);
}

TEST_CASE("pade fails when no pair exists", "[ucalc]") {
  PrimeField F(101);
  // 1 + t^3 needs a degree-3 numerator or a degree >= 2 denominator
  std::vector<Fp> s = {Fp{1}, Fp{0}, Fp{0}, Fp{1}, Fp{0}};
  try {
    pade(F, s, 1, 1);
    FAIL("impossible reconstruction accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ReconstructionFailed);
  }
}

TEST_CASE("characteristic polynomial", "[ucalc]") {
  PrimeField F(101);
  Matrix<Fp> nil = {{Fp{0}, Fp{1}}, {Fp{0}, Fp{0}}};
  CHECK(charpoly(F, nil) == std::vector<Fp>{Fp{0}, Fp{0}, Fp{1}});
  Matrix<Fp> diag = {{Fp{3}, Fp{0}}, {Fp{0}, Fp{7}}};
  CHECK(UniPoly(F, charpoly(F, diag)) == U(F, {-3, 1}) * U(F, {-7, 1}));

  Rng rng(5);
  for (int it = 0; it < 30; ++it) {
    Matrix<Fp> M(3, std::vector<Fp>(3));
    for (auto& row : M)
      for (auto& x : row) x = sample(F, rng);
    std::vector<std::vector<UniPoly>> yIM(3, std::vector<UniPoly>(3, UniPoly(F)));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) yIM[i][j] = (i == j ? U(F, {0, 1}) : UniPoly(F)) - UniPoly::constant(F, M[i][j]);
    CHECK(UniPoly(F, charpoly(F, M)) == cofactor_det(F, yIM));

    // Cayley-Hamilton: cp(M) = 0
    auto cp = charpoly(F, M);
    Matrix<Fp> acc(3, std::vector<Fp>(3, Fp{0}));
    for (std::size_t k = cp.size(); k-- > 0;) {
      acc = mat_mul(F, acc, M);
      for (std::size_t i = 0; i < 3; ++i) acc[i][i] = F.add(acc[i][i], cp[k]);
    }
    for (const auto& row : acc)
      for (Fp x : row) CHECK(x.is_zero());
  }
}

TEST_CASE("ring_solve over the series quotient ring", "[ucalc]") {
  PrimeField F(101);
  const UniPoly w0 = U(F, {1, 0, 1});  // y^2 + 1
  const auto R = SeriesQuotRing::constant_modulus(w0, 4);
  Rng rng(6);
  auto rand_elem = [&] {
    auto e = R.zero();
    for (auto& x : e) x = sample(F, rng);
    return e;
  };

  Matrix<std::vector<Fp>> I = {{R.one(), R.zero()}, {R.zero(), R.one()}};
  std::vector<std::vector<Fp>> rhs = {rand_elem(), rand_elem()};
  CHECK(ring_solve(R, I, rhs) == rhs);

  auto u = rand_elem();
  while (!R.is_unit(u)) u = rand_elem();
  Matrix<std::vector<Fp>> one_by_one = {{u}};
  std::vector<std::vector<Fp>> b = {rand_elem()};
  CHECK(ring_solve(R, one_by_one, b)[0] == R.mul(R.inv(u), b[0]));

  int solved = 0;
  for (int it = 0; it < 40; ++it) {
    Matrix<std::vector<Fp>> J = {{rand_elem(), rand_elem()}, {rand_elem(), rand_elem()}};
    if (!R.is_unit(determinant(R, J))) {
      CHECK_THROWS_AS(ring_solve(R, J, rhs), Error);
      continue;
    }
    auto x = ring_solve(R, J, rhs);
    CHECK(mat_vec(R, J, x) == rhs);
    ++solved;
  }
  CHECK(solved > 20);

  // singular at t = 0 modulo a factor of w0: y - 10 divides y^2 + 1 mod 101
  auto zd = R.from_poly(U(F, {-10, 1}));
  CHECK_FALSE(R.is_unit(zd));
  Matrix<std::vector<Fp>> S = {{zd}};
  try {
    ring_solve(R, S, b);
    FAIL("zero-divisor determinant accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularJacobian);
  }
}

TEST_CASE("series quotient ring arithmetic", "[ucalc]") {
  PrimeField F(65521);
  Rng rng(7);
  // t-dependent modulus: w = y^3 + (1+t) y + (2 + 3t^2)
  const std::size_t k = 5;
  std::vector<Fp> low(3 * k, Fp{0});
  low[0] = Fp{2};
  low[2] = Fp{3};
  low[k] = Fp{1};
  low[k + 1] = Fp{1};
  SeriesQuotRing Q(F, 3, k, low);
  auto rand_elem = [&] {
    auto e = Q.zero();
    for (auto& x : e) x = sample(F, rng);
    return e;
  };
  for (int i = 0; i < 20; ++i) {
    auto a = rand_elem(), b = rand_elem(), c = rand_elem();
    CHECK(Q.mul(Q.mul(a, b), c) == Q.mul(a, Q.mul(b, c)));
    CHECK(Q.mul(a, Q.add(b, c)) == Q.add(Q.mul(a, b), Q.mul(a, c)));
    if (Q.is_unit(a)) CHECK(Q.mul(a, Q.inv(a)) == Q.one());
  }
  // y^3 = -(1+t) y - (2+3t^2)
  auto y = Q.y();
  auto y3 = Q.mul(y, Q.mul(y, y));
  CHECK(Q.add(y3, Q.from_ycoeffs({{Fp{2}, Fp{0}, Fp{3}}, {Fp{1}, Fp{1}}})) == Q.zero());
  CHECK(Q.shift_t(Q.one(), 1) == Q.t());
}
