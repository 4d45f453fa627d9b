#include <catch_amalgamated.hpp>

#include <vector>

#include "dethom/zdp.hpp"
#include "example_fixture.hpp"

using namespace dethom;

namespace {

UniPoly U(const PrimeField& F, std::vector<i64> c) {
  std::vector<Fp> v;
  for (i64 x : c) v.push_back(F.from_int(x));
  return UniPoly(F, v);
}

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ZeroInput;
}

}  // namespace

TEST_CASE("validate accepts the published parametrizations", "[zdp]") {
  CHECK_NOTHROW(validate(fixture::R1()));
  CHECK_NOTHROW(validate(fixture::R01()));
  CHECK_NOTHROW(validate(ZeroDimParam::empty(fixture::F, fixture::lambda())));
}

TEST_CASE("validate rejects malformed parametrizations", "[zdp]") {
  PrimeField F(101);
  std::vector<Fp> lam = {Fp{1}};
  const UniPoly y = UniPoly::monomial(F, 1);
  CHECK(code_of([&] { validate(ZeroDimParam(F, lam, U(F, {0, 0, 1}), {y})); }) == ErrorCode::NotSquarefree);
  CHECK(code_of([&] { validate(ZeroDimParam(F, lam, U(F, {-1, 0, 2}), {y})); }) == ErrorCode::NotSquarefree);
  CHECK(code_of([&] { validate(ZeroDimParam(F, lam, U(F, {-1, 0, 1}), {y + U(F, {1})})); }) ==
        ErrorCode::LinearFormMismatch);
  CHECK(code_of([&] { validate(ZeroDimParam(F, lam, U(F, {-1, 0, 1}), {U(F, {0, 0, 0, 1})})); }) ==
        ErrorCode::DegreeBound);
  CHECK(code_of([&] { validate(ZeroDimParam(F, lam, U(F, {-1, 0, 1}), {y, y})); }) == ErrorCode::ArityMismatch);
}

TEST_CASE("verify_against reports the failing equation", "[zdp]") {
  PrimeField F(101);
  auto sys = std::vector<SparsePoly>{parse_poly("x1^2-1", F, 2), parse_poly("x2-x1", F, 2)};
  ZeroDimParam R(F, {Fp{0}, Fp{1}}, U(F, {-1, 0, 1}), {UniPoly::monomial(F, 1), UniPoly::monomial(F, 1)});
  CHECK_NOTHROW(verify_against(R, sys));
  sys.push_back(parse_poly("x1-1", F, 2));
  try {
    verify_against(R, sys);
    FAIL("residual not detected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResidualNonzero);
    CHECK(e.index() == 2);
  }
  CHECK_NOTHROW(verify_against(ZeroDimParam::empty(F, {Fp{0}, Fp{1}}), sys));
}

TEST_CASE("union of points", "[zdp]") {
  PrimeField F(101);
  std::vector<Fp> lam = {Fp{1}};
  ZeroDimParam a(F, lam, U(F, {-1, 1}), {U(F, {1})}), b(F, lam, U(F, {-2, 1}), {U(F, {2})});
  std::vector<ZeroDimParam> both = {a, b};
  ZeroDimParam u = param_union(both);
  CHECK(u.w == U(F, {2, -3, 1}));
  CHECK(u.v[0] == UniPoly::monomial(F, 1));

  std::vector<ZeroDimParam> clash = {a, a};
  CHECK(code_of([&] { param_union(clash); }) == ErrorCode::SharedRoots);
  ZeroDimParam other(F, {Fp{2}}, U(F, {-3, 1}), {U(F, {51})});
  std::vector<ZeroDimParam> mixed = {a, other};
  CHECK(code_of([&] { param_union(mixed); }) == ErrorCode::LinearFormMismatch);
}

TEST_CASE("union of the published start parametrizations", "[zdp]") {
  std::vector<ZeroDimParam> parts = {fixture::R01(), fixture::R02(), fixture::R03()};
  ZeroDimParam u = param_union(parts);
  CHECK(u.w == fixture::union_w());
  CHECK(u.v[2] == fixture::y());
  auto M = fixture::Mmat();
  std::vector<SparsePoly> sys = {fixture::r(), fixture::det2(M, 0, 1), fixture::det2(M, 0, 2), fixture::det2(M, 1, 2)};
  CHECK_NOTHROW(verify_against(u, sys));
}

TEST_CASE("roots in the base field", "[zdp]") {
  PrimeField F(101);
  // 2 is a non-residue mod 101 (101 = 5 mod 8)
  ZeroDimParam none(F, {Fp{1}}, U(F, {-2, 0, 1}), {UniPoly::monomial(F, 1)});
  CHECK(roots_in_base_field(none).empty());
  ZeroDimParam two(F, {Fp{0}, Fp{1}}, U(F, {-1, 0, 1}), {U(F, {3}), UniPoly::monomial(F, 1)});
  auto pts = roots_in_base_field(two);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0] == std::vector<Fp>{Fp{3}, Fp{1}});
  CHECK(pts[1] == std::vector<Fp>{Fp{3}, Fp{100}});
}

TEST_CASE("root splitting over a large prime agrees with evaluation", "[zdp]") {
  PrimeField F((u64{1} << 61) - 1);
  Rng rng(4);
  std::vector<Fp> roots;
  UniPoly w = UniPoly::constant(F, F.one());
  for (int i = 0; i < 6; ++i) {
    Fp a = sample(F, rng);
    roots.push_back(a);
    w = w * UniPoly::linear_root(F, a);
  }
  // p = 3 mod 4, so y^2 + 1 contributes no rational roots
  w = w * UniPoly(F, {F.one(), F.zero(), F.one()});
  ZeroDimParam R(F, {Fp{1}}, w.monic(), {UniPoly::monomial(F, 1)});
  auto pts = roots_in_base_field(R);
  REQUIRE(pts.size() == roots.size());
  std::sort(roots.begin(), roots.end());
  for (std::size_t i = 0; i < roots.size(); ++i) CHECK(pts[i][0] == roots[i]);
}
