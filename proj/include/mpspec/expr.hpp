// Multivariate polynomial expressions in real parameters t1..tm with
// complex coefficients, plus the parser for the entry grammar:
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := primary ['^' uint]
//   primary:= number ['i'] | 'i' | 't'<index> | '(' expr ')'
//
// Whitespace is insignificant. Exponents are nonnegative integers.
#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mpspec/base.hpp"

namespace mpspec {

// Terms keyed by exponent vector (length m); map ordering keeps every
// operation deterministic.
class PolyExpr {
 public:
  PolyExpr() = default;
  explicit PolyExpr(int m) : m_(m) {}

  static PolyExpr constant(int m, cplx c) {
    PolyExpr p(m);
    if (c != cplx(0.0)) p.terms_[std::vector<int>(m, 0)] = c;
    return p;
  }

  static PolyExpr variable(int m, int index) {  // index in [0, m)
    PolyExpr p(m);
    std::vector<int> e(m, 0);
    e[index] = 1;
    p.terms_[e] = 1.0;
    return p;
  }

  int params() const { return m_; }
  bool zero() const { return terms_.empty(); }

  bool is_constant(cplx c) const {
    if (terms_.empty()) return c == cplx(0.0);
    if (terms_.size() != 1) return false;
    const auto& [e, v] = *terms_.begin();
    for (int x : e)
      if (x != 0) return false;
    return v == c;
  }

  bool has_real_coeffs() const {
    for (const auto& [e, v] : terms_)
      if (v.imag() != 0.0) return false;
    return true;
  }

  int total_degree() const {
    int d = 0;
    for (const auto& [e, v] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  PolyExpr& operator+=(const PolyExpr& o) {
    for (const auto& [e, v] : o.terms_) add_term(e, v);
    return *this;
  }
  PolyExpr& operator-=(const PolyExpr& o) {
    for (const auto& [e, v] : o.terms_) add_term(e, -v);
    return *this;
  }
  friend PolyExpr operator+(PolyExpr a, const PolyExpr& b) { return a += b; }
  friend PolyExpr operator-(PolyExpr a, const PolyExpr& b) { return a -= b; }

  friend PolyExpr operator*(const PolyExpr& a, const PolyExpr& b) {
    PolyExpr r(a.m_);
    for (const auto& [ea, va] : a.terms_) {
      for (const auto& [eb, vb] : b.terms_) {
        std::vector<int> e(a.m_);
        for (int i = 0; i < a.m_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, va * vb);
      }
    }
    return r;
  }

  PolyExpr pow(int k) const {
    PolyExpr r = constant(m_, 1.0);
    PolyExpr base = *this;
    while (k > 0) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  cplx eval(const std::vector<double>& t) const {
    cplx acc = 0.0;
    for (const auto& [e, v] : terms_) {
      double mono = 1.0;
      for (int i = 0; i < m_; ++i) {
        for (int k = 0; k < e[i]; ++k) mono *= t[i];
      }
      acc += v * mono;
    }
    return acc;
  }

  const std::map<std::vector<int>, cplx>& terms() const { return terms_; }

 private:
  void add_term(const std::vector<int>& e, cplx v) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (v != cplx(0.0)) terms_[e] = v;
    } else {
      it->second += v;
      if (it->second == cplx(0.0)) terms_.erase(it);
    }
  }

  int m_ = 0;
  std::map<std::vector<int>, cplx> terms_;
};

namespace detail {

struct ExprParser {
  std::string_view text;
  size_t pos = 0;
  int m;
  int line;        // 1-based file line of this entry
  int col_offset;  // 0-based column where the entry starts on that line

  [[noreturn]] void fail(const std::string& what, size_t at) const {
    config_error("syntax error at line " + std::to_string(line) + ", column " +
                 std::to_string(col_offset + at + 1) + ": " + what);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  PolyExpr parse() {
    PolyExpr e = parse_expr();
    skip_ws();
    if (pos != text.size()) fail("unexpected trailing input", pos);
    return e;
  }

  PolyExpr parse_expr() {
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    PolyExpr acc = parse_term();
    if (neg) acc = PolyExpr::constant(m, -1.0) * acc;
    while (true) {
      if (eat('+'))
        acc += parse_term();
      else if (eat('-'))
        acc -= parse_term();
      else
        break;
    }
    return acc;
  }

  PolyExpr parse_term() {
    PolyExpr acc = parse_factor();
    while (eat('*')) acc = acc * parse_factor();
    return acc;
  }

  PolyExpr parse_factor() {
    PolyExpr base = parse_primary();
    if (eat('^')) {
      skip_ws();
      size_t start = pos;
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        fail("expected nonnegative integer exponent after '^'", pos);
      long k = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        k = k * 10 + (text[pos] - '0');
        if (k > 64) fail("exponent too large", start);
        ++pos;
      }
      return base.pow(static_cast<int>(k));
    }
    return base;
  }

  PolyExpr parse_primary() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of expression", pos);
    char c = text[pos];
    if (c == '(') {
      ++pos;
      PolyExpr e = parse_expr();
      if (!eat(')')) fail("expected ')'", pos);
      return e;
    }
    if (c == 't') {
      size_t start = pos;
      ++pos;
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        fail("expected parameter index after 't'", start);
      long idx = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        idx = idx * 10 + (text[pos] - '0');
        ++pos;
      }
      if (idx < 1 || idx > m)
        config_error("line " + std::to_string(line) + ", column " +
                     std::to_string(col_offset + start + 1) + ": parameter t" +
                     std::to_string(idx) + " not declared (m=" + std::to_string(m) + ")");
      return PolyExpr::variable(m, static_cast<int>(idx - 1));
    }
    if (c == 'i') {
      ++pos;
      return PolyExpr::constant(m, cplx(0.0, 1.0));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos;
      while (pos < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
        ++pos;
      if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        size_t mark = pos;
        ++pos;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        } else {
          pos = mark;  // 'e' was not an exponent
        }
      }
      double val = 0.0;
      try {
        val = std::stod(std::string(text.substr(start, pos - start)));
      } catch (...) {
        fail("malformed number", start);
      }
      if (pos < text.size() && text[pos] == 'i') {
        ++pos;
        return PolyExpr::constant(m, cplx(0.0, val));
      }
      return PolyExpr::constant(m, cplx(val, 0.0));
    }
    fail(std::string("unexpected character '") + c + "'", pos);
  }
};

}  // namespace detail

inline PolyExpr parse_expression(std::string_view text, int m, int line = 1, int col_offset = 0) {
  detail::ExprParser p{text, 0, m, line, col_offset};
  return p.parse();
}

}  // namespace mpspec
