#pragma once

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dethom/detsys.hpp"
#include "dethom/errors.hpp"
#include "dethom/homotopy.hpp"
#include "dethom/mpoly_text.hpp"

namespace dethom {

/// Line-oriented system description:
///   prime <p>
///   vars <name> ... <name>
///   weights <w1> ... <wn>        (optional)
///   g <s>                         then s polynomial lines
///   F <p> <q>                     then p*q polynomial lines, row-major
///   start-r / start-m / start-c   (optional explicit start data: s polys,
///                                  q polys, p lines of q integers)
/// Blank lines and text after '#' are ignored.
struct SystemFile {
  u64 prime = 0;
  std::vector<std::string> vars;
  std::optional<std::vector<u64>> weights;
  std::vector<SparsePoly> g;
  PolyMatrix F;
  std::optional<std::vector<SparsePoly>> start_r;
  std::optional<std::vector<SparsePoly>> start_m;
  std::optional<std::vector<std::vector<i64>>> start_c;

  PrimeField field() const { return PrimeField(prime); }
  DetSystem system() const { return DetSystem(field(), vars.size(), g, F); }

  /// Explicit start data when all three blocks are present.
  std::optional<StartData> start(const DetSystem& sys) const {
    if (!start_r || !start_m || !start_c) return std::nullopt;
    std::vector<std::vector<Fp>> c;
    for (const auto& row : *start_c) {
      std::vector<Fp> r;
      for (i64 x : row) r.push_back(sys.field.from_int(x));
      c.push_back(std::move(r));
    }
    return explicit_start(sys, *start_r, *start_m, std::move(c));
  }
};

namespace detail {

struct Line {
  std::size_t number;
  std::string text;
};

[[noreturn]] inline void parse_fail(std::size_t line, std::size_t column, const std::string& msg) {
  fail(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg,
       static_cast<long>(line));
}

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

template <class T>
T parse_number(const Line& L, const std::string& w) {
  T v{};
  const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || ptr != w.data() + w.size()) {
    const std::size_t col = L.text.find(w);
    parse_fail(L.number, col == std::string::npos ? 1 : col + 1, "expected an integer, got '" + w + "'");
  }
  return v;
}

}  // namespace detail

/// Parses a system file; `prime_override` replaces the declared prime before
/// coefficients are reduced. Enforces n = q - p + s + 1.
inline SystemFile parse_system(std::string_view text, std::optional<u64> prime_override = std::nullopt) {
  using detail::Line;
  std::vector<Line> lines;
  {
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++number;
      std::string s(text.substr(pos, end - pos));
      if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
      if (!s.empty() && s.back() == '\r') s.pop_back();
      if (s.find_first_not_of(" \t") != std::string::npos) lines.push_back({number, s});
      pos = end + 1;
    }
  }
  SystemFile out;
  std::optional<PrimeField> F;
  std::size_t i = 0;
  auto need = [&](std::size_t count, std::size_t header_line) {
    if (i + count > lines.size()) detail::parse_fail(header_line, 1, "file ends inside a block");
  };
  auto require_header = [&](const Line& L) {
    if (!F || out.vars.empty()) detail::parse_fail(L.number, 1, "'prime' and 'vars' must precede polynomial blocks");
  };
  auto poly = [&](const Line& L) {
    try {
      return parse_poly(L.text, *F, out.vars);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ParseError) throw;
      const std::size_t col = e.index() > 0 ? static_cast<std::size_t>(e.index()) : 1;
      detail::parse_fail(L.number, col, e.what());
    }
  };
  auto poly_block = [&](const Line& header, std::size_t count) {
    need(count, header.number);
    std::vector<SparsePoly> ps;
    for (std::size_t k = 0; k < count; ++k) ps.push_back(poly(lines[i++]));
    return ps;
  };

  while (i < lines.size()) {
    const Line L = lines[i++];
    const auto w = detail::words(L.text);
    const std::string& key = w[0];
    if (key == "prime") {
      if (w.size() != 2) detail::parse_fail(L.number, 1, "expected 'prime <p>'");
      out.prime = prime_override ? *prime_override : detail::parse_number<u64>(L, w[1]);
      try {
        F.emplace(out.prime);
      } catch (const Error& e) {
        detail::parse_fail(L.number, 7, e.what());
      }
    } else if (key == "vars") {
      if (w.size() < 2) detail::parse_fail(L.number, 1, "expected at least one variable");
      out.vars.assign(w.begin() + 1, w.end());
    } else if (key == "weights") {
      std::vector<u64> ws;
      for (std::size_t k = 1; k < w.size(); ++k) ws.push_back(detail::parse_number<u64>(L, w[k]));
      out.weights = std::move(ws);
    } else if (key == "g") {
      require_header(L);
      if (w.size() != 2) detail::parse_fail(L.number, 1, "expected 'g <s>'");
      out.g = poly_block(L, detail::parse_number<std::size_t>(L, w[1]));
    } else if (key == "F") {
      require_header(L);
      if (w.size() != 3) detail::parse_fail(L.number, 1, "expected 'F <p> <q>'");
      const auto p = detail::parse_number<std::size_t>(L, w[1]), q = detail::parse_number<std::size_t>(L, w[2]);
      if (p == 0 || q == 0) detail::parse_fail(L.number, 1, "matrix dimensions must be positive");
      auto entries = poly_block(L, p * q);
      out.F.assign(p, {});
      for (std::size_t r = 0; r < p; ++r) out.F[r].assign(entries.begin() + static_cast<std::ptrdiff_t>(r * q),
                                                          entries.begin() + static_cast<std::ptrdiff_t>((r + 1) * q));
    } else if (key == "start-r" || key == "start-m") {
      require_header(L);
      if (w.size() != 1) detail::parse_fail(L.number, 1, "'" + key + "' takes no arguments");
      const std::size_t count = key == "start-r" ? out.g.size() : (out.F.empty() ? 0 : out.F[0].size());
      if (count == 0 && key == "start-m") detail::parse_fail(L.number, 1, "'start-m' must follow the F block");
      (key == "start-r" ? out.start_r : out.start_m) = poly_block(L, count);
    } else if (key == "start-c") {
      if (out.F.empty()) detail::parse_fail(L.number, 1, "'start-c' must follow the F block");
      need(out.F.size(), L.number);
      std::vector<std::vector<i64>> c;
      for (std::size_t r = 0; r < out.F.size(); ++r) {
        const Line& row = lines[i++];
        std::vector<i64> vals;
        for (const auto& x : detail::words(row.text)) vals.push_back(detail::parse_number<i64>(row, x));
        if (vals.size() != out.F[0].size()) detail::parse_fail(row.number, 1, "expected one multiplier per column");
        c.push_back(std::move(vals));
      }
      out.start_c = std::move(c);
    } else {
      detail::parse_fail(L.number, 1, "unknown directive '" + key + "'");
    }
  }
  if (!F) detail::parse_fail(lines.empty() ? 1 : lines.back().number, 1, "missing 'prime'");
  if (out.F.empty()) detail::parse_fail(lines.empty() ? 1 : lines.back().number, 1, "missing 'F' block");
  if (out.weights && out.weights->size() != out.vars.size()) {
    fail(ErrorCode::ShapeError, "weights line must give one weight per variable");
  }
  (void)out.system();  // DimensionConstraint / shape checks
  return out;
}

/// Canonical text form; parse_system(emit_system(f)) equals f.
inline std::string emit_system(const SystemFile& f) {
  std::ostringstream out;
  out << "prime " << f.prime << "\nvars";
  for (const auto& v : f.vars) out << ' ' << v;
  out << '\n';
  if (f.weights) {
    out << "weights";
    for (u64 w : *f.weights) out << ' ' << w;
    out << '\n';
  }
  out << "g " << f.g.size() << '\n';
  for (const auto& p : f.g) out << to_string(p, f.vars) << '\n';
  out << "F " << f.F.size() << ' ' << f.F[0].size() << '\n';
  for (const auto& row : f.F)
    for (const auto& p : row) out << to_string(p, f.vars) << '\n';
  if (f.start_r) {
    out << "start-r\n";
    for (const auto& p : *f.start_r) out << to_string(p, f.vars) << '\n';
  }
  if (f.start_m) {
    out << "start-m\n";
    for (const auto& p : *f.start_m) out << to_string(p, f.vars) << '\n';
  }
  if (f.start_c) {
    out << "start-c\n";
    for (const auto& row : *f.start_c) {
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace dethom
