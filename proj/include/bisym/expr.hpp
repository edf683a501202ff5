#pragma once
// Tiny arithmetic grammar used by the catalog: formulas over integer
// parameters, constraint predicates, and coordinate pattern strings.
//
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?            integer exponent
//   primary := number | name | name '(' expr {',' expr} ')' | '(' expr ')'
//
// Functions: floor, ceil, even, odd, min, max, abs.
// Constraints add a relation (<, <=, >, >=, ==, !=) or "name in {a, b, ...}".

#include "bisym/numerics.hpp"

#include <cctype>
#include <map>
#include <string>
#include <vector>

namespace bisym {

using Bindings = std::map<std::string, long>;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

class Parser {
 public:
  Parser(const std::string& s, const Bindings& b) : s_(s), b_(b) {}

  Rational expression() {
    Rational v = term();
    for (;;) {
      skip();
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  bool constraint() {
    skip();
    size_t save = i_;
    std::string id = name();
    skip();
    if (!id.empty() && s_.compare(i_, 2, "in") == 0 && i_ + 2 < s_.size() &&
        (std::isspace(static_cast<unsigned char>(s_[i_ + 2])) || s_[i_ + 2] == '{')) {
      i_ += 2;
      Rational v = lookup(id);
      skip();
      expect('{');
      bool hit = false;
      for (;;) {
        if (expression() == v) hit = true;
        skip();
        if (eat('}')) break;
        expect(',');
      }
      finish();
      return hit;
    }
    i_ = save;
    Rational lhs = expression();
    skip();
    std::string op;
    for (const char* cand : {"<=", ">=", "==", "!=", "<", ">"}) {
      if (s_.compare(i_, std::char_traits<char>::length(cand), cand) == 0) {
        op = cand;
        break;
      }
    }
    if (op.empty()) {
      finish();
      return lhs != 0;
    }
    i_ += op.size();
    Rational rhs = expression();
    finish();
    if (op == "<=") return lhs <= rhs;
    if (op == ">=") return lhs >= rhs;
    if (op == "==") return lhs == rhs;
    if (op == "!=") return lhs != rhs;
    if (op == "<") return lhs < rhs;
    return lhs > rhs;
  }

  void finish() {
    skip();
    if (i_ != s_.size()) fail("trailing input");
  }

 private:
  const std::string& s_;
  const Bindings& b_;
  size_t i_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error(what + " at offset " + std::to_string(i_) + " in '" + s_ + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string name() {
    std::string id;
    if (i_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) id += s_[i_++];
    }
    return id;
  }
  Rational lookup(const std::string& id) const {
    auto it = b_.find(id);
    if (it == b_.end()) throw parse_error("unbound parameter '" + id + "' in '" + s_ + "'");
    return Rational(it->second);
  }

  Rational term() {
    Rational v = unary();
    for (;;) {
      if (eat('*'))
        v *= unary();
      else if (eat('/')) {
        Rational d = unary();
        if (d == 0) fail("division by zero");
        v /= d;
      } else
        return v;
    }
  }
  Rational unary() {
    if (eat('-')) return -unary();
    return power();
  }
  Rational power() {
    Rational base = primary();
    if (!eat('^')) return base;
    Rational e = unary();
    if (den(e) != 1) fail("non-integer exponent");
    long k = num(e).convert_to<long>();
    Rational r = 1;
    for (long j = 0; j < (k < 0 ? -k : k); ++j) r *= base;
    return k < 0 ? Rational(1 / r) : r;
  }
  Rational primary() {
    skip();
    if (eat('(')) {
      Rational v = expression();
      expect(')');
      return v;
    }
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      std::string d;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) d += s_[i_++];
      return Rational(Integer(d));
    }
    std::string id = name();
    if (id.empty()) fail("expected operand");
    if (peek() != '(') return lookup(id);
    ++i_;
    std::vector<Rational> args{expression()};
    while (eat(',')) args.push_back(expression());
    expect(')');
    return call(id, args);
  }
  Rational call(const std::string& f, const std::vector<Rational>& a) {
    auto floor_of = [](const Rational& x) {
      Integer q = num(x) / den(x);
      if (x < 0 && Rational(q) != x) q -= 1;
      return Rational(q);
    };
    if (f == "floor" && a.size() == 1) return floor_of(a[0]);
    if (f == "ceil" && a.size() == 1) return -floor_of(-a[0]);
    if (f == "abs" && a.size() == 1) return a[0] < 0 ? Rational(-a[0]) : a[0];
    if ((f == "even" || f == "odd") && a.size() == 1) {
      if (den(a[0]) != 1) return 0;
      bool ev = num(a[0]) % 2 == 0;
      return (f == "even") == ev ? 1 : 0;
    }
    if (f == "min" && !a.empty()) return *std::min_element(a.begin(), a.end());
    if (f == "max" && !a.empty()) return *std::max_element(a.begin(), a.end());
    fail("unknown function '" + f + "'");
  }
};

inline std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else
      cur += c;
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

inline Rational eval_expr(const std::string& s, const Bindings& b = {}) {
  detail::Parser p(s, b);
  Rational v = p.expression();
  p.finish();
  return v;
}

inline bool eval_constraint(const std::string& s, const Bindings& b) { return detail::Parser(s, b).constraint(); }

// "1^l,0^(p-l),1/2^(n-p)" -> coordinate vector; "^" splits value from repeat
inline std::vector<Rational> expand_pattern(const std::string& pat, const Bindings& b) {
  std::vector<Rational> out;
  for (const auto& block : detail::split_top(pat, ',')) {
    auto parts = detail::split_top(block, '^');
    Rational v = eval_expr(parts[0], b);
    long count = 1;
    if (parts.size() > 2) throw parse_error("pattern block with two '^': '" + block + "'");
    if (parts.size() == 2) {
      Rational c = eval_expr(parts[1], b);
      if (den(c) != 1 || c < 0) throw parse_error("bad repeat count in '" + block + "'");
      count = num(c).convert_to<long>();
    }
    for (long i = 0; i < count; ++i) out.push_back(v);
  }
  return out;
}

}  // namespace bisym
