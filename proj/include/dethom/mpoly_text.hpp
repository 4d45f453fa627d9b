#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dethom/mpoly.hpp"

namespace dethom {

inline std::vector<std::string> default_var_names(std::size_t n, std::string_view stem = "x") {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(stem) + std::to_string(i));
  return names;
}

/// Canonical text: graded-lex order, coefficients as residues in [0, p),
/// e.g. "99*x1^3+92*x1^2+65293*x1*x2+...".
inline std::string to_string(const SparsePoly& f, const std::vector<std::string>& names) {
  if (names.size() != f.nvars()) fail(ErrorCode::ArityMismatch, "variable name list has wrong length");
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    if (!first) out << '+';
    first = false;
    const bool is_const = total_degree(e) == 0;
    bool need_star = false;
    if (c.v != 1 || is_const) {
      out << c.v;
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) out << '*';
      out << names[i];
      if (e[i] > 1) out << '^' << e[i];
      need_star = true;
    }
  }
  return out.str();
}

inline std::string to_string(const SparsePoly& f) { return to_string(f, default_var_names(f.nvars())); }

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, const PrimeField& F, const std::vector<std::string>& names)
      : text_(text), F_(F), names_(names) {}

  SparsePoly parse() {
    SparsePoly r = expr();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected character");
    return r;
  }

  std::size_t position() const { return pos_; }

 private:
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::ParseError, msg + " at column " + std::to_string(pos_ + 1), static_cast<long>(pos_ + 1));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  SparsePoly expr() {
    SparsePoly acc(F_, names_.size());
    bool negate = false;
    char c = peek();
    if (c == '+' || c == '-') {
      negate = c == '-';
      ++pos_;
    }
    for (;;) {
      SparsePoly t = term();
      if (negate) acc -= t;
      else acc += t;
      c = peek();
      if (c != '+' && c != '-') break;
      negate = c == '-';
      ++pos_;
    }
    return acc;
  }

  SparsePoly term() {
    SparsePoly acc = factor();
    while (peek() == '*') {
      ++pos_;
      acc *= factor();
    }
    return acc;
  }

  std::string digits() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) error("expected an integer");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint32_t exponent() {
    if (peek() != '^') return 1;
    ++pos_;
    std::string d = digits();
    if (d.size() > 9) error("exponent too large");
    return static_cast<std::uint32_t>(std::stoul(d));
  }

  SparsePoly factor() {
    char c = peek();
    const std::size_t n = names_.size();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return SparsePoly::constant(F_, n, F_.from_decimal(digits()));
    }
    if (c == '(') {
      ++pos_;
      SparsePoly inner = expr();
      if (peek() != ')') error("expected ')'");
      ++pos_;
      std::uint32_t k = exponent();
      SparsePoly r = SparsePoly::constant(F_, n, F_.one());
      for (std::uint32_t i = 0; i < k; ++i) r *= inner;
      return r;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < n; ++i) {
        if (names_[i] == name) {
          ExponentVec e(n, 0);
          e[i] = exponent();
          return SparsePoly::monomial(F_, std::move(e), F_.one());
        }
      }
      pos_ = start;
      error("unknown variable '" + std::string(name) + "'");
    }
    error(c == '\0' ? "unexpected end of input" : "unexpected character");
  }

  std::string_view text_;
  const PrimeField& F_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `99*x1^3+92*x1^2-228*x1*x2+...` (integers, `*`, `^`, `+`, `-`,
/// parentheses); whitespace is insignificant. ParseError carries the column.
inline SparsePoly parse_poly(std::string_view text, const PrimeField& F, const std::vector<std::string>& names) {
  return detail::PolyParser(text, F, names).parse();
}

inline SparsePoly parse_poly(std::string_view text, const PrimeField& F, std::size_t nvars) {
  const auto names = default_var_names(nvars);
  return detail::PolyParser(text, F, names).parse();
}

}  // namespace dethom
