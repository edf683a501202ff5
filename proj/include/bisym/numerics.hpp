#pragma once
// Exact arithmetic: GMP rationals, quadratic surds a + b*sqrt(d), and
// Sturm-based real root isolation for rational polynomials.

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bisym {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline Rational rat(long n, long d = 1) { return Rational(n, d); }
inline Integer num(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer den(const Rational& x) { return boost::multiprecision::denominator(x); }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline int sgn(const Rational& x) { return x.sign(); }

inline std::string to_string(const Rational& x) {
  if (den(x) == 1) return num(x).str();
  return num(x).str() + "/" + den(x).str();
}

// "a", "-a/b"; whitespace tolerated
inline Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  auto integer = [&](const std::string& x) {
    if (x.empty() || x.find_first_not_of("+-0123456789") != std::string::npos)
      throw invalid_input("not a rational: '" + s + "'");
    return Integer(x);
  };
  auto slash = t.find('/');
  if (slash == std::string::npos) return Rational(integer(t));
  Integer d = integer(t.substr(slash + 1));
  if (d == 0) throw invalid_input("zero denominator in '" + s + "'");
  return Rational(integer(t.substr(0, slash)), d);
}

inline Integer isqrt(const Integer& n) { return boost::multiprecision::sqrt(n); }

inline bool is_square(const Integer& n, Integer* root = nullptr) {
  if (n < 0) return false;
  Integer r = isqrt(n);
  if (root) *root = r;
  return r * r == n;
}

// n = s^2 * r with r square-free; trial division is plenty for our sizes
inline std::pair<Integer, Integer> squarefree_split(Integer n) {
  if (n < 0) throw domain_error("squarefree_split of negative");
  if (n == 0) return {0, 0};
  Integer s = 1, r = 1;
  for (Integer p = 2; p * p <= n; ++p) {
    if (p > 1000000) break;
    while (n % (p * p) == 0) {
      n /= p * p;
      s *= p;
    }
    if (n % p == 0) {
      n /= p;
      r *= p;
    }
  }
  Integer q;
  if (is_square(n, &q))
    s *= q;
  else
    r *= n;
  return {s, r};
}

// a + b*sqrt(d), d square-free, b == 0 <=> d == 0
class QuadSurd {
 public:
  QuadSurd() = default;
  QuadSurd(const Rational& a) : a_(a) {}  // NOLINT
  QuadSurd(const Rational& a, const Rational& b, const Integer& d) : a_(a), b_(b), d_(d) { normalize(); }

  const Rational& rational_part() const { return a_; }
  const Rational& surd_coefficient() const { return b_; }
  const Integer& radicand() const { return d_; }
  bool is_rational() const { return d_ == 0; }

  double to_double() const {
    return bisym::to_double(a_) + bisym::to_double(b_) * std::sqrt(d_.convert_to<double>());
  }

  int sign() const {
    // sign of a + b*sqrt(d) without floating point
    int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sa == 0 ? sb : sa;
    Rational lhs = a_ * a_, rhs = b_ * b_ * Rational(d_);
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }

  QuadSurd conjugate() const { return QuadSurd(a_, -b_, d_); }

  friend bool operator==(const QuadSurd& x, const QuadSurd& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }
  friend bool operator<(const QuadSurd& x, const QuadSurd& y) { return (x - y).sign() < 0; }

  friend QuadSurd operator+(const QuadSurd& x, const QuadSurd& y) {
    Integer d = common(x, y);
    return QuadSurd(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend QuadSurd operator-(const QuadSurd& x) { return QuadSurd(-x.a_, -x.b_, x.d_); }
  friend QuadSurd operator-(const QuadSurd& x, const QuadSurd& y) { return x + (-y); }
  friend QuadSurd operator*(const QuadSurd& x, const QuadSurd& y) {
    Integer d = common(x, y);
    return QuadSurd(x.a_ * y.a_ + x.b_ * y.b_ * Rational(d), x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  QuadSurd inverse() const {
    Rational n = a_ * a_ - b_ * b_ * Rational(d_);
    if (n == 0) throw domain_error("QuadSurd: division by zero");
    return QuadSurd(a_ / n, -b_ / n, d_);
  }
  friend QuadSurd operator/(const QuadSurd& x, const QuadSurd& y) { return x * y.inverse(); }

  // single value, e.g. "(6+√22)/2", "1/2", "√3"
  std::string str() const { return render(false); }
  // the conjugate pair x, x̄ as "(A±B√d)/C"
  std::string pm_str() const { return render(true); }

 private:
  Rational a_{0}, b_{0};
  Integer d_{0};

  void normalize() {
    if (d_ < 0) throw domain_error("QuadSurd: negative radicand");
    if (b_ == 0 || d_ == 0) {
      b_ = 0;
      d_ = 0;
      return;
    }
    auto [s, r] = squarefree_split(d_);
    b_ *= Rational(s);
    d_ = r;
    if (d_ == 1) {
      a_ += b_;
      b_ = 0;
      d_ = 0;
    }
  }
  static Integer common(const QuadSurd& x, const QuadSurd& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0 || x.d_ == y.d_) return x.d_;
    throw invalid_input("QuadSurd: mixed radicands " + x.d_.str() + " and " + y.d_.str());
  }
  std::string render(bool pm) const {
    if (d_ == 0) return to_string(a_);
    Integer c = boost::multiprecision::lcm(den(a_), den(b_));
    Integer A = num(a_ * Rational(c)), B = num(b_ * Rational(c));
    std::string sign = pm ? "±" : (B < 0 ? "-" : "+");
    Integer Babs = pm || B >= 0 ? boost::multiprecision::abs(B) : -B;
    std::string surd = (Babs == 1 ? std::string() : Babs.str()) + "√" + d_.str();
    std::string body;
    if (A == 0)
      body = pm ? "±" + surd : (B < 0 ? "-" : "") + surd;
    else
      body = A.str() + sign + surd;
    if (c == 1) return A == 0 ? body : "(" + body + ")";
    return "(" + body + ")/" + c.str();
  }
};

// sqrt of a non-negative rational as an exact surd
inline QuadSurd sqrt_exact(const Rational& x) {
  if (x < 0) throw domain_error("sqrt_exact: negative argument " + to_string(x));
  if (x == 0) return QuadSurd();
  // sqrt(n/d) = sqrt(n*d)/d
  Integer nd = num(x) * den(x);
  auto [s, r] = squarefree_split(nd);
  Rational coeff = Rational(s) / Rational(den(x));
  if (r == 1) return QuadSurd(coeff);
  return QuadSurd(0, coeff, r);
}

// ---------------------------------------------------------------------------
// polynomials

class RatPolynomial {
 public:
  RatPolynomial() = default;
  RatPolynomial(std::vector<Rational> c) : c_(std::move(c)) { trim(); }  // NOLINT
  RatPolynomial(std::initializer_list<long> c) {
    for (long v : c) c_.emplace_back(v);
    trim();
  }
  static RatPolynomial x() { return RatPolynomial(std::vector<Rational>{0, 1}); }
  static RatPolynomial constant(const Rational& a) { return RatPolynomial(std::vector<Rational>{a}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  double eval(double x) const {
    double acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + bisym::to_double(*it);
    return acc;
  }

  RatPolynomial derivative() const {
    std::vector<Rational> d;
    for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
    return RatPolynomial(d);
  }

  friend RatPolynomial operator+(const RatPolynomial& p, const RatPolynomial& q) {
    std::vector<Rational> r(std::max(p.c_.size(), q.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = p.coeff(static_cast<int>(i)) + q.coeff(static_cast<int>(i));
    return RatPolynomial(r);
  }
  friend RatPolynomial operator-(const RatPolynomial& p) {
    std::vector<Rational> r = p.c_;
    for (auto& v : r) v = -v;
    return RatPolynomial(r);
  }
  friend RatPolynomial operator-(const RatPolynomial& p, const RatPolynomial& q) { return p + (-q); }
  friend RatPolynomial operator*(const RatPolynomial& p, const RatPolynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<Rational> r(p.c_.size() + q.c_.size() - 1);
    for (size_t i = 0; i < p.c_.size(); ++i)
      for (size_t j = 0; j < q.c_.size(); ++j) r[i + j] += p.c_[i] * q.c_[j];
    return RatPolynomial(r);
  }
  friend RatPolynomial operator*(const Rational& a, const RatPolynomial& p) { return constant(a) * p; }

  // p = q*d + r
  static std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& p, const RatPolynomial& d) {
    if (d.is_zero()) throw invalid_input("polynomial division by zero");
    std::vector<Rational> r = p.c_;
    int dp = p.degree(), dd = d.degree();
    if (dp < dd) return {RatPolynomial(), p};
    std::vector<Rational> q(dp - dd + 1);
    for (int i = dp; i >= dd; --i) {
      Rational f = r[i] / d.leading();
      q[i - dd] = f;
      if (f == 0) continue;
      for (int j = 0; j <= dd; ++j) r[i - dd + j] -= f * d.c_[j];
    }
    r.resize(dd);
    return {RatPolynomial(q), RatPolynomial(r)};
  }

  static RatPolynomial gcd(RatPolynomial a, RatPolynomial b) {
    while (!b.is_zero()) {
      auto r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
  }

  RatPolynomial monic() const {
    std::vector<Rational> r = c_;
    for (auto& v : r) v /= leading();
    return RatPolynomial(r);
  }

  RatPolynomial squarefree_part() const {
    if (degree() < 1) return *this;
    auto g = gcd(*this, derivative());
    return divmod(*this, g).first.monic();
  }

  std::string str(const std::string& var = "z") const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      const Rational& v = c_[i];
      if (v == 0) continue;
      Rational a = v < 0 ? Rational(-v) : v;
      if (!s.empty())
        s += v < 0 ? " - " : " + ";
      else if (v < 0)
        s += "-";
      bool one = a == 1 && i > 0;
      if (!one) s += to_string(a);
      if (i > 0) s += (one ? "" : "*") + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
  }

  friend bool operator==(const RatPolynomial& p, const RatPolynomial& q) { return p.c_ == q.c_; }

 private:
  std::vector<Rational> c_;
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
};

struct IsolatedRoot {
  Rational lo, hi;  // root in [lo, hi]; lo == hi for an exact rational root
  bool multiplicity_one = true;
  double value = 0;
};

struct SturmChain {
  std::vector<RatPolynomial> seq;

  explicit SturmChain(const RatPolynomial& p) {
    seq.push_back(p);
    seq.push_back(p.derivative());
    while (!seq.back().is_zero()) {
      auto r = RatPolynomial::divmod(seq[seq.size() - 2], seq.back()).second;
      if (r.is_zero()) break;
      seq.push_back(-r);
    }
  }

  static int changes(const std::vector<int>& signs) {
    int n = 0, prev = 0;
    for (int s : signs) {
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++n;
      prev = s;
    }
    return n;
  }
  int variations_at(const Rational& x) const {
    std::vector<int> s;
    for (const auto& q : seq) s.push_back(q(x).sign());
    return changes(s);
  }
  int variations_at_infinity(int dir) const {
    std::vector<int> s;
    for (const auto& q : seq) {
      int ls = q.leading().sign();
      s.push_back((dir < 0 && q.degree() % 2 == 1) ? -ls : ls);
    }
    return changes(s);
  }
  // distinct roots in (a, b]
  int count(const Rational& a, const Rational& b) const { return variations_at(a) - variations_at(b); }
  int count_real() const { return variations_at_infinity(-1) - variations_at_infinity(1); }
};

// Cauchy bound: every root satisfies |z| < bound
inline Rational root_bound(const RatPolynomial& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = p.coeff(i) / p.leading();
    if (r < 0) r = -r;
    if (r > m) m = r;
  }
  return m + 1;
}

struct Domain {
  // open-closed interval (lo, hi]; unset ends mean the root bound
  std::optional<Rational> lo, hi;
  static Domain positive() { return Domain{Rational(0), std::nullopt}; }
  static Domain all() { return Domain{}; }
};

inline std::vector<IsolatedRoot> isolate_real_roots(const RatPolynomial& p, Domain dom = Domain::all(),
                                                    const Rational& width = Rational(1, 1000000000000LL)) {
  if (p.is_zero()) throw invalid_input("isolate_real_roots: zero polynomial");
  if (p.degree() < 1) return {};
  RatPolynomial q = p.squarefree_part();
  bool simple = q.degree() == p.degree();
  SturmChain chain(q);
  Rational B = root_bound(q);
  Rational lo = dom.lo ? *dom.lo : -B, hi = dom.hi ? *dom.hi : B;
  if (lo < -B) lo = -B;
  if (hi > B) hi = B;
  std::vector<IsolatedRoot> out;
  if (lo >= hi) return out;

  // bisect (a, b] until each piece holds one root
  std::vector<std::pair<Rational, Rational>> work{{lo, hi}}, single;
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    int n = chain.count(a, b);
    if (n == 0) continue;
    if (n == 1) {
      single.emplace_back(a, b);
      continue;
    }
    Rational m = (a + b) / 2;
    work.emplace_back(m, b);
    work.emplace_back(a, m);
  }
  for (auto [a, b] : single) {
    IsolatedRoot r;
    r.multiplicity_one = simple;
    if (q(b) == 0) {
      r.lo = r.hi = b;
    } else {
      // root is interior to (a, b); q changes sign across it
      int sa = q(a).sign();
      while (b - a > width) {
        Rational m = (a + b) / 2;
        int sm = q(m).sign();
        if (sm == 0) {
          a = b = m;
          break;
        }
        if (sm == sa)
          a = m;
        else
          b = m;
      }
      r.lo = a;
      r.hi = b;
    }
    r.value = to_double((r.lo + r.hi) / 2);
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const IsolatedRoot& x, const IsolatedRoot& y) { return x.lo < y.lo; });
  return out;
}

// quadratic a z^2 + b z + c = 0 with exact surd roots, ascending
inline std::vector<QuadSurd> solve_quadratic(const Rational& a, const Rational& b, const Rational& c) {
  if (a == 0) {
    if (b == 0) return {};
    return {QuadSurd(-c / b)};
  }
  Rational disc = b * b - 4 * a * c;
  if (disc < 0) return {};
  QuadSurd s = sqrt_exact(disc);
  QuadSurd r1 = (QuadSurd(-b) - s) / QuadSurd(2 * a), r2 = (QuadSurd(-b) + s) / QuadSurd(2 * a);
  if (disc == 0) return {r1};
  if (r2 < r1) std::swap(r1, r2);
  return {r1, r2};
}

}  // namespace bisym
