#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "buncat/error.hpp"
#include "buncat/rational.hpp"

namespace buncat {

using MultiIndex = std::vector<unsigned>;

inline unsigned total_degree(const MultiIndex& a) {
  return std::accumulate(a.begin(), a.end(), 0u);
}

/// Graded order, ties broken so that earlier variables come first:
/// (1,0) precedes (0,1), giving u, u_x, u_y, u_xx, u_xy, u_yy.
struct GradedLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da < db;
    return a > b;
  }
};

/// A multivariate polynomial with exact rational coefficients over a fixed
/// ordered variable list. Zero coefficients are never stored.
class Poly {
public:
  using Terms = std::map<MultiIndex, Rational, GradedLess>;

  Poly() = default;
  explicit Poly(std::vector<std::string> variables) : variables_(std::move(variables)) {}

  static Poly constant(std::vector<std::string> variables, const Rational& c) {
    Poly p(std::move(variables));
    if (c != 0) p.terms_[MultiIndex(p.variables_.size(), 0)] = c;
    return p;
  }

  static Poly variable(std::vector<std::string> variables, std::size_t index) {
    Poly p(std::move(variables));
    if (index >= p.variables_.size()) fail("UnknownVariable", "variable index out of range");
    MultiIndex a(p.variables_.size(), 0);
    a[index] = 1;
    p.terms_[a] = 1;
    return p;
  }

  const std::vector<std::string>& variables() const { return variables_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [a, c] : terms_) d = std::max(d, total_degree(a));
    return d;
  }

  Rational coefficient(const MultiIndex& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Poly& add_term(const MultiIndex& a, const Rational& c) {
    if (a.size() != variables_.size()) fail("UnknownVariable", "exponent tuple of wrong length");
    auto it = terms_.find(a);
    if (it == terms_.end()) {
      if (c != 0) terms_[a] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
    return *this;
  }

  friend Poly operator+(const Poly& p, const Poly& q) {
    p.require_same_variables(q);
    Poly r = p;
    for (const auto& [a, c] : q.terms_) r.add_term(a, c);
    return r;
  }

  friend Poly operator-(const Poly& p) {
    Poly r = p;
    for (auto& [a, c] : r.terms_) c = -c;
    return r;
  }

  friend Poly operator-(const Poly& p, const Poly& q) { return p + (-q); }

  friend Poly operator*(const Poly& p, const Poly& q) {
    p.require_same_variables(q);
    Poly r(p.variables_);
    for (const auto& [a, ca] : p.terms_)
      for (const auto& [b, cb] : q.terms_) {
        MultiIndex s(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
        r.add_term(s, ca * cb);
      }
    return r;
  }

  friend Poly operator*(const Rational& c, const Poly& p) {
    Poly r(p.variables_);
    if (c == 0) return r;
    r.terms_ = p.terms_;
    for (auto& [a, v] : r.terms_) v *= c;
    return r;
  }

  friend bool operator==(const Poly&, const Poly&) = default;

  Poly derivative(std::size_t var) const {
    if (var >= variables_.size()) fail("UnknownVariable", "variable index out of range");
    Poly r(variables_);
    for (const auto& [a, c] : terms_) {
      if (a[var] == 0) continue;
      MultiIndex b = a;
      --b[var];
      r.add_term(b, c * a[var]);
    }
    return r;
  }

  Poly derivative(const MultiIndex& alpha) const {
    Poly r = *this;
    for (std::size_t v = 0; v < alpha.size(); ++v)
      for (unsigned k = 0; k < alpha[v]; ++k) r = r.derivative(v);
    return r;
  }

  Rational eval(const std::vector<Rational>& point) const {
    if (point.size() != variables_.size()) fail("UnknownVariable", "point of wrong dimension");
    Rational out = 0;
    for (const auto& [a, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < a.size(); ++i)
        for (unsigned k = 0; k < a[i]; ++k) term *= point[i];
      out += term;
    }
    return out;
  }

  /// Simultaneous substitution: variable i becomes replacements[i]. All
  /// replacements must share one variable list, which the result adopts.
  Poly compose(const std::vector<Poly>& replacements) const {
    if (replacements.size() != variables_.size())
      fail("UnknownVariable", "one replacement per variable required");
    for (const Poly& r : replacements) replacements.front().require_same_variables(r);
    Poly out(replacements.empty() ? variables_ : replacements.front().variables_);
    for (const auto& [a, c] : terms_) {
      Poly term = Poly::constant(out.variables_, c);
      for (std::size_t i = 0; i < a.size(); ++i)
        for (unsigned k = 0; k < a[i]; ++k) term = term * replacements[i];
      out = out + term;
    }
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [a, c] : terms_) {
      const bool negative = c < 0;
      const Rational mag = negative ? Rational(-c) : c;
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      std::string factors;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        if (!factors.empty()) factors += "*";
        factors += variables_[i];
        if (a[i] > 1) factors += "^" + std::to_string(a[i]);
      }
      if (factors.empty()) {
        out += buncat::to_string(mag);
      } else if (mag == 1) {
        out += factors;
      } else {
        out += buncat::to_string(mag) + "*" + factors;
      }
    }
    return out;
  }

private:
  void require_same_variables(const Poly& other) const {
    if (variables_ != other.variables_)
      fail("VariableMismatch", "polynomials live over different variable lists");
  }

  std::vector<std::string> variables_;
  Terms terms_;
};

/// Parses the grammar: terms of the form `c * v^a * w^b` joined by `+`/`-`,
/// rationals as `p/q`. Aliases map alternative spellings onto the canonical
/// variable list.
class PolyParser {
public:
  PolyParser(std::vector<std::string> variables,
             std::map<std::string, std::size_t> aliases = {})
      : variables_(std::move(variables)), aliases_(std::move(aliases)) {
    for (std::size_t i = 0; i < variables_.size(); ++i) aliases_[variables_[i]] = i;
  }

  Poly parse(const std::string& text) const {
    Cursor cur{text, 0};
    Poly out(variables_);
    skip_space(cur);
    if (done(cur)) fail("BadPolynomial", "empty polynomial text");
    bool negate = false;
    if (peek(cur) == '+' || peek(cur) == '-') negate = take(cur) == '-';
    while (true) {
      Poly term = parse_term(cur);
      out = negate ? out - term : out + term;
      skip_space(cur);
      if (done(cur)) return out;
      const char op = take(cur);
      if (op != '+' && op != '-')
        fail("BadPolynomial", "expected '+' or '-' at offset " + std::to_string(cur.pos - 1));
      negate = op == '-';
    }
  }

private:
  struct Cursor {
    const std::string& text;
    std::size_t pos;
  };

  static void skip_space(Cursor& c) {
    while (c.pos < c.text.size() && std::isspace(static_cast<unsigned char>(c.text[c.pos])))
      ++c.pos;
  }
  static bool done(const Cursor& c) { return c.pos >= c.text.size(); }
  static char peek(const Cursor& c) { return c.text[c.pos]; }
  static char take(Cursor& c) { return c.text[c.pos++]; }

  Poly parse_term(Cursor& cur) const {
    Poly term = Poly::constant(variables_, 1);
    bool first = true;
    while (true) {
      skip_space(cur);
      if (done(cur)) {
        if (first) fail("BadPolynomial", "trailing operator");
        return term;
      }
      const char c = peek(cur);
      if (std::isdigit(static_cast<unsigned char>(c))) {
        term = term * Poly::constant(variables_, parse_number(cur));
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        term = term * parse_variable(cur);
      } else if (first) {
        fail("BadPolynomial", "unexpected '" + std::string(1, c) + "' at offset " +
                                  std::to_string(cur.pos));
      } else {
        return term;
      }
      first = false;
      skip_space(cur);
      if (!done(cur) && peek(cur) == '*') {
        take(cur);
        first = true;  // a factor must follow
      } else {
        return term;
      }
    }
  }

  Rational parse_number(Cursor& cur) const {
    const std::size_t start = cur.pos;
    while (!done(cur) && std::isdigit(static_cast<unsigned char>(peek(cur)))) take(cur);
    std::string text = cur.text.substr(start, cur.pos - start);
    skip_space(cur);
    if (!done(cur) && peek(cur) == '/') {
      take(cur);
      skip_space(cur);
      const std::size_t dstart = cur.pos;
      while (!done(cur) && std::isdigit(static_cast<unsigned char>(peek(cur)))) take(cur);
      if (cur.pos == dstart) fail("BadPolynomial", "missing denominator");
      text += "/" + cur.text.substr(dstart, cur.pos - dstart);
    }
    return parse_rational(text);
  }

  Poly parse_variable(Cursor& cur) const {
    const std::size_t start = cur.pos;
    while (!done(cur) && (std::isalnum(static_cast<unsigned char>(peek(cur))) || peek(cur) == '_'))
      take(cur);
    const std::string name = cur.text.substr(start, cur.pos - start);
    auto it = aliases_.find(name);
    if (it == aliases_.end()) fail("UnknownVariable", "'" + name + "' is not a variable");
    unsigned exponent = 1;
    skip_space(cur);
    if (!done(cur) && peek(cur) == '^') {
      take(cur);
      skip_space(cur);
      const std::size_t estart = cur.pos;
      while (!done(cur) && std::isdigit(static_cast<unsigned char>(peek(cur)))) take(cur);
      if (cur.pos == estart) fail("BadPolynomial", "missing exponent");
      exponent = static_cast<unsigned>(std::stoul(cur.text.substr(estart, cur.pos - estart)));
    }
    Poly out = Poly::constant(variables_, 1);
    for (unsigned k = 0; k < exponent; ++k) out = out * Poly::variable(variables_, it->second);
    return out;
  }

  std::vector<std::string> variables_;
  std::map<std::string, std::size_t> aliases_;
};

}  // namespace buncat
