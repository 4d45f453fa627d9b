#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "dethom/json_io.hpp"
#include "dethom/system_file.hpp"
#include "example_fixture.hpp"

using namespace dethom;

namespace {

std::string example_text() {
  std::ifstream in(std::string(DETHOM_DATA_DIR) + "/example.sys");
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Error& expect_error(const std::string& text) {
  static Error last(ErrorCode::ZeroInput, "none");
  try {
    parse_system(text);
  } catch (const Error& e) {
    last = e;
    return last;
  }
  FAIL("no error raised");
  return last;
}

bool same(const SystemFile& a, const SystemFile& b) {
  return a.prime == b.prime && a.vars == b.vars && a.weights == b.weights && a.g == b.g && a.F == b.F &&
         a.start_r == b.start_r && a.start_m == b.start_m && a.start_c == b.start_c;
}

}  // namespace

TEST_CASE("example file parses to the worked system", "[cli]") {
  const SystemFile sf = parse_system(example_text());
  const DetSystem sys = sf.system();
  CHECK(sys.p() == 2);
  CHECK(sys.q() == 3);
  CHECK(sys.s() == 1);
  CHECK(sys.n == 3);
  CHECK(sys.g[0] == fixture::g());
  CHECK(sys.F == fixture::Fmat());
  const auto start = sf.start(sys);
  REQUIRE(start.has_value());
  CHECK(start->r == std::vector<SparsePoly>{fixture::r()});
  CHECK(start->matrix() == fixture::Mmat());
}

TEST_CASE("declared variables must match q - p + s + 1", "[cli]") {
  const std::string text = "prime 101\nvars x1 x2\ng 1\nx1+x2\nF 1 3\nx1\nx2\n1\n";
  CHECK(expect_error(text).code() == ErrorCode::DimensionConstraint);
}

TEST_CASE("parse errors carry line and column", "[cli]") {
  const std::string bad_poly = "prime 101\nvars x1 x2\ng 1\nx1 + y7\nF 1 2\nx1\nx2\n";
  const Error& e = expect_error(bad_poly);
  CHECK(e.code() == ErrorCode::ParseError);
  CHECK(e.index() == 4);
  CHECK(std::string(e.what()).find("line 4, column 6") != std::string::npos);

  CHECK(expect_error("prime 101\nvars x1\nbogus 3\n").index() == 3);
  CHECK(expect_error("prime 100\nvars x1\n").code() == ErrorCode::ParseError);
  CHECK(expect_error("prime 101\nvars x1 x2\ng 2\nx1\n").code() == ErrorCode::ParseError);
  CHECK(expect_error("vars x1\ng 1\nx1\n").code() == ErrorCode::ParseError);
}

TEST_CASE("emit and parse roundtrip", "[cli]") {
  const SystemFile sf = parse_system(example_text());
  const std::string once = emit_system(sf);
  const SystemFile back = parse_system(once);
  CHECK(same(sf, back));
  CHECK(emit_system(back) == once);

  const std::string custom = "prime 31\nvars a b\nweights 1 2\ng 0\nF 1 2\na^2 + 3*b\n-b + 1\n";
  const SystemFile c = parse_system(custom);
  CHECK(c.vars == std::vector<std::string>{"a", "b"});
  CHECK(same(c, parse_system(emit_system(c))));
}

TEST_CASE("prime override reduces coefficients in the new field", "[cli]") {
  const SystemFile sf = parse_system("prime 101\nvars x1\ng 0\nF 1 1\n103*x1 + 5\n", 7);
  CHECK(sf.prime == 7);
  CHECK(to_string(sf.F[0][0], sf.vars) == "5*x1+5");
}

TEST_CASE("parametrization JSON roundtrip", "[cli]") {
  const ZeroDimParam R = fixture::R1();
  const Json j = param_to_json(R);
  CHECK(j["prime"] == 65521);
  CHECK(j["w"].size() == 10);
  CHECK(j["w"][9] == "1");
  CHECK(param_from_json(Json::parse(j.dump())) == R);

  Json broken = j;
  broken["w"][0] = 7;
  CHECK_THROWS_AS(param_from_json(broken), Error);
  Json not_param = Json::object();
  CHECK_THROWS_AS(param_from_json(not_param), Error);
}
