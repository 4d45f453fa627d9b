// dethom: bounds, start systems and solutions of determinantal systems over F_p.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dethom/dethom.hpp"

using namespace dethom;

namespace {

enum Exit : int { kOk = 0, kVerifyFailed = 1, kInput = 2, kDegenerate = 3, kReconstruction = 4, kResource = 5 };

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::DimensionConstraint:
    case ErrorCode::ShapeError:
    case ErrorCode::ArityMismatch:
    case ErrorCode::NotPrime:
    case ErrorCode::ExponentOverflow:
    case ErrorCode::NonIntegralBound:
    case ErrorCode::DimensionMismatch:
      return kInput;
    case ErrorCode::ReconstructionFailed:
    case ErrorCode::DenominatorVanishesAtOne:
    case ErrorCode::DenominatorVanishes:
      return kReconstruction;
    case ErrorCode::ResourceBudgetExceeded:
    case ErrorCode::FieldTooLarge:
    case ErrorCode::DimensionTooLarge:
    case ErrorCode::DegreeTooLargeForChar:
      return kResource;
    default:
      return kDegenerate;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

struct Common {
  std::string file;
  std::optional<u64> prime;
  u64 seed = 1;
};

SystemFile load(const Common& c) { return parse_system(read_file(c.file), c.prime); }

/// "xK" selects coordinate K, "random" draws a form from the seed, otherwise a
/// comma-separated coefficient list.
std::vector<Fp> parse_lambda(const std::string& text, const DetSystem& sys, u64 seed) {
  const PrimeField& F = sys.field;
  std::vector<Fp> lam(sys.n, Fp{0});
  if (text == "random") {
    Rng rng = Rng(seed).derive(0x1a4bda);
    for (auto& x : lam) x = sample(F, rng);
    lam.back() = sample(F, rng, true);
    return lam;
  }
  if (text.size() > 1 && text[0] == 'x' && text.find(',') == std::string::npos) {
    std::size_t k = 0;
    try {
      k = std::stoul(text.substr(1));
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "bad --lambda value '" + text + "'");
    }
    if (k < 1 || k > sys.n) fail(ErrorCode::ArityMismatch, "--lambda names a variable outside x1..x" + std::to_string(sys.n));
    lam[k - 1] = F.one();
    return lam;
  }
  std::vector<Fp> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(F.from_decimal(item));
  if (out.size() != sys.n) fail(ErrorCode::ArityMismatch, "--lambda needs " + std::to_string(sys.n) + " coefficients");
  return out;
}

std::string summary_line(const ZeroDimParam& R) {
  return "degree " + std::to_string(R.degree()) + " parametrization over F_" + std::to_string(R.field.modulus());
}

int cmd_bounds(const Common& c, bool no_weighted) {
  const SystemFile sf = load(c);
  const DetSystem sys = sf.system();
  const BoundsReport B = bounds(sys);
  Json out = bounds_to_json(B, sys);
  if (sf.weights && !no_weighted) out["weighted"] = weighted_to_json(weighted_bounds(sys, *sf.weights));
  emit(out);
  std::cerr << "chi = " << B.chi.total << ", rho = " << B.rho.total << ", dense = " << B.dense << '\n';
  return kOk;
}

int cmd_start(const Common& c, const std::optional<std::string>& lambda) {
  const SystemFile sf = load(c);
  const DetSystem sys = sf.system();
  std::vector<Fp> lam(sys.n, Fp{0});
  lam.back() = sys.field.one();
  if (lambda) lam = parse_lambda(*lambda, sys, c.seed);
  const std::optional<StartData> given = sf.start(sys);
  const StartData start = given ? *given : build_start(sys, c.seed);
  const StartSolution ss = solve_start(sys, start, lam);
  Json out = param_to_json(ss.param);
  Json parts = Json::array();
  const auto J = sys.column_subsets();
  for (std::size_t k = 0; k < J.size(); ++k) {
    Json part;
    part["columns"] = detail::columns_1based(J[k]);
    part["degree"] = ss.parts[k].degree();
    part["param"] = param_to_json(ss.parts[k]);
    parts.push_back(part);
  }
  out["subsets"] = parts;
  out["explicit_start"] = given.has_value();
  emit(out);
  std::cerr << "start system: " << summary_line(ss.param) << '\n';
  return kOk;
}

int cmd_solve(const Common& c, const std::optional<std::string>& lambda, std::optional<std::size_t> precision,
              bool timings) {
  const SystemFile sf = load(c);
  const DetSystem sys = sf.system();
  SolveOptions opt;
  if (lambda) opt.lambda = parse_lambda(*lambda, sys, c.seed);
  if (precision) opt.precision = *precision >= 2 ? (*precision - 2) / 2 : 0;
  opt.start = sf.start(sys);
  const SolveResult res = solve(sys, c.seed, opt);
  Json out = param_to_json(res.param);
  out["report"] = report_to_json(sys, res.report, timings);
  emit(out);
  std::cerr << "solve: " << summary_line(res.param) << " (chi " << res.report.chi << ", rho " << res.report.rho
            << ", " << res.report.escaped << " escaped, " << res.report.attempts << " attempt(s))\n";
  return kOk;
}

int cmd_verify(const Common& c, const std::string& param_path) {
  const SystemFile sf = load(c);
  const DetSystem sys = sf.system();
  Json j;
  try {
    j = Json::parse(read_file(param_path));
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::ParseError, std::string("parametrization file: ") + e.what());
  }
  Json out;
  out["verified"] = false;
  try {
    const ZeroDimParam R = param_from_json(j);
    if (!(R.field == sys.field)) fail(ErrorCode::ArityMismatch, "parametrization and system use different primes");
    if (R.nvars() != sys.n) fail(ErrorCode::ArityMismatch, "parametrization and system differ in variable count");
    verify_against(R, sys.equations());
    out["verified"] = true;
    out["degree"] = R.degree();
    emit(out);
    std::cerr << "verified: " << summary_line(R) << '\n';
    return kOk;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ArityMismatch) throw;
    out["failure"] = error_to_json(e);
    emit(out);
    std::cerr << "verification failed: " << e.what() << '\n';
    return kVerifyFailed;
  }
}

/// One polytope per line: points separated by ';', coordinates by spaces or commas.
int cmd_mv(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<std::set<LatticePoint>> pts;
  std::size_t dim = 0, line_no = 0;
  std::stringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::set<LatticePoint> P;
    std::stringstream ps(line);
    for (std::string item; std::getline(ps, item, ';');) {
      for (char& ch : item)
        if (ch == ',') ch = ' ';
      std::stringstream cs(item);
      LatticePoint x;
      for (std::string tok; cs >> tok;) {
        try {
          std::size_t used = 0;
          x.push_back(std::stoll(tok, &used));
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad coordinate '" + tok + "'",
               static_cast<long>(line_no));
        }
      }
      if (x.empty()) continue;
      if (dim == 0) dim = x.size();
      if (x.size() != dim) {
        fail(ErrorCode::DimensionMismatch, "line " + std::to_string(line_no) + ": point of the wrong dimension",
             static_cast<long>(line_no));
      }
      P.insert(std::move(x));
    }
    if (P.empty()) fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": empty polytope", static_cast<long>(line_no));
    pts.push_back(std::move(P));
  }
  if (pts.size() != dim) {
    fail(ErrorCode::DimensionMismatch, "need exactly " + std::to_string(dim) + " polytopes in dimension " + std::to_string(dim));
  }
  std::vector<Polytope> polys;
  for (auto& P : pts) polys.push_back(convex_hull(dim, std::move(P)));
  const i64 mv = mixed_volume(std::span<const Polytope>(polys));
  Json out;
  out["dimension"] = dim;
  out["mixed_volume"] = mv;
  emit(out);
  std::cerr << "mixed volume = " << mv << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for sparse determinantal systems over prime fields"};
  app.require_subcommand(1);
  Common common;
  bool no_weighted = false, timings = false;
  std::optional<std::string> lambda;
  std::optional<std::size_t> precision;
  std::string param_path, mv_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", common.file, "system file")->required();
    sub->add_option("--prime", common.prime, "override the prime declared in the file");
    sub->add_option("--seed", common.seed, "random seed (default 1)");
  };
  auto* bounds_cmd = app.add_subcommand("bounds", "support sizes, chi, rho, dense and weighted bounds");
  add_common(bounds_cmd);
  bounds_cmd->add_flag("--no-weighted", no_weighted, "skip the weighted bounds");

  auto* start_cmd = app.add_subcommand("start", "solve the start system");
  add_common(start_cmd);
  start_cmd->add_option("--lambda", lambda, "linear form: xN, random, or c1,..,cn");

  auto* solve_cmd = app.add_subcommand("solve", "run the homotopy and print the parametrization");
  add_common(solve_cmd);
  solve_cmd->add_option("--lambda", lambda, "linear form: xN, random, or c1,..,cn");
  solve_cmd->add_option("--precision", precision, "series precision (default 2 rho + 2)");
  solve_cmd->add_flag("--timings", timings, "include per-phase timings in the report");

  auto* verify_cmd = app.add_subcommand("verify", "check a parametrization against a system");
  add_common(verify_cmd);
  verify_cmd->add_option("param", param_path, "JSON parametrization")->required();

  auto* mv_cmd = app.add_subcommand("mv", "mixed volume of polytopes given by point lists");
  mv_cmd->add_option("file", mv_path, "one polytope per line")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*bounds_cmd) return cmd_bounds(common, no_weighted);
    if (*start_cmd) return cmd_start(common, lambda);
    if (*solve_cmd) return cmd_solve(common, lambda, precision, timings);
    if (*verify_cmd) return cmd_verify(common, param_path);
    if (*mv_cmd) return cmd_mv(mv_path);
  } catch (const Error& e) {
    emit(error_to_json(e));
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  }
  return kOk;
}
