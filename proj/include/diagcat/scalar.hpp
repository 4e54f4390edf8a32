#pragma once

// Exact coefficients: rationals (GMP) and rational functions in one variable t.

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diagcat/error.hpp"

namespace diagcat {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

/// Dense univariate polynomial with rational coefficients, index = degree.
/// The zero polynomial has no coefficients; otherwise the leading one is nonzero.
class Poly {
public:
  Poly() = default;
  explicit Poly(const Rational& c) {
    if (c != 0) coeffs_.push_back(c);
  }
  explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Poly monomial(const Rational& c, std::size_t degree) {
    Poly p;
    if (c == 0) return p;
    p.coeffs_.assign(degree + 1, Rational(0));
    p.coeffs_[degree] = c;
    return p;
  }
  static Poly x() { return monomial(Rational(1), 1); }

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  const Rational& lead() const { return coeffs_.back(); }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  Rational constant_term() const { return coeff(0); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(c));
  }

  Poly scaled(const Rational& s) const {
    if (s == 0) return Poly();
    Poly r = *this;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }

  Poly monic() const { return is_zero() ? Poly() : scaled(Rational(1) / lead()); }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  /// e.g. "t^2-1", "1/2*t+3", "0".
  std::string to_string(std::string_view var = "t") const {
    if (is_zero()) return "0";
    std::string out;
    for (long d = degree(); d >= 0; --d) {
      const Rational& c = coeffs_[static_cast<std::size_t>(d)];
      if (c == 0) continue;
      const bool negative = c < 0;
      const Rational a = negative ? Rational(-c) : c;
      if (out.empty()) {
        if (negative) out += '-';
      } else {
        out += negative ? '-' : '+';
      }
      if (d == 0) {
        out += rational_to_string(a);
        continue;
      }
      if (a != 1) out += rational_to_string(a) + "*";
      out += var;
      if (d > 1) out += "^" + std::to_string(d);
    }
    return out;
  }

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

/// Long division: a = quotient * b + remainder with deg(remainder) < deg(b).
inline std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error("zero divisor");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rational> rem = a.coeffs();
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
  const auto& bc = b.coeffs();
  const std::size_t bd = bc.size() - 1;
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Rational q = rem[k + bd] / bc[bd];
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t i = 0; i <= bd; ++i) rem[k + i] -= q * bc[i];
  }
  rem.resize(bd);
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

enum class FieldMode { ExactRational, RationalFunction };

/// An exact scalar: a rational number, or a reduced rational function in t
/// (gcd(num, den) = 1, den monic). Equality is component-wise.
class FieldElement {
public:
  FieldElement() = default;  // rational zero

  static FieldElement rational(const Rational& q) {
    FieldElement e;
    e.mode_ = FieldMode::ExactRational;
    e.q_ = q;
    return e;
  }
  static FieldElement function(Poly num, Poly den) {
    FieldElement e;
    e.mode_ = FieldMode::RationalFunction;
    e.num_ = std::move(num);
    e.den_ = std::move(den);
    e.normalize();
    return e;
  }
  static FieldElement function_constant(const Rational& q) {
    FieldElement e;
    e.mode_ = FieldMode::RationalFunction;
    e.num_ = Poly(q);
    e.den_ = Poly(Rational(1));
    return e;
  }
  static FieldElement t() { return function(Poly::x(), Poly(Rational(1))); }

  FieldMode mode() const noexcept { return mode_; }
  bool is_function() const noexcept { return mode_ == FieldMode::RationalFunction; }
  const Rational& as_rational() const {
    if (is_function()) throw Error("field element is not in exact-rational mode");
    return q_;
  }
  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  bool is_zero() const noexcept { return is_function() ? num_.is_zero() : q_ == 0; }
  bool is_one() const noexcept { return is_function() ? (num_.is_one() && den_.is_one()) : q_ == 1; }
  /// True for rationals and for rational functions without t.
  bool is_constant() const noexcept {
    return !is_function() || (den_.is_one() && num_.is_constant());
  }
  /// Sign of the leading numerator coefficient (rationals: sign of the value).
  bool looks_negative() const {
    if (!is_function()) return q_ < 0;
    return !num_.is_zero() && num_.lead() < 0;
  }

  FieldElement operator-() const {
    FieldElement r = *this;
    if (is_function()) r.num_ = -r.num_;
    else r.q_ = -r.q_;
    return r;
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_modes(a, b);
    if (!a.is_function()) return rational(a.q_ + b.q_);
    if (a.den_.is_one() && b.den_.is_one()) return raw(a.num_ + b.num_, a.den_);
    if (a.den_ == b.den_) return function(a.num_ + b.num_, a.den_);
    return function(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_modes(a, b);
    if (!a.is_function()) return rational(a.q_ * b.q_);
    if (a.is_zero() || b.is_zero()) return function_constant(Rational(0));
    if (a.den_.is_one() && b.den_.is_one()) return raw(a.num_ * b.num_, a.den_);
    if (b.is_constant()) return raw(a.num_.scaled(b.num_.constant_term()), a.den_);
    if (a.is_constant()) return raw(b.num_.scaled(a.num_.constant_term()), b.den_);
    return function(a.num_ * b.num_, a.den_ * b.den_);
  }

  FieldElement inverse() const {
    if (is_zero()) throw Error("inverse of zero");
    if (!is_function()) return rational(Rational(1) / q_);
    return function(den_, num_);
  }

  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    check_modes(a, b);
    if (b.is_zero()) throw Error("inverse of zero");
    if (!a.is_function()) return rational(a.q_ / b.q_);
    if (b.is_constant()) return raw(a.num_.scaled(Rational(1) / b.num_.constant_term()), a.den_);
    return a * b.inverse();
  }

  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    if (a.mode_ != b.mode_) return false;
    if (!a.is_function()) return a.q_ == b.q_;
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Evaluates a rational function at t = q. Throws "pole at t = q" when the
  /// reduced denominator vanishes there.
  Rational specialize(const Rational& q) const {
    if (!is_function()) return q_;
    const Rational d = den_.eval(q);
    if (d == 0) throw Error("pole at t = " + rational_to_string(q));
    return num_.eval(q) / d;
  }

  /// "p/q" for rationals; rational functions as "num" or "(num)/(den)".
  std::string to_string() const {
    if (!is_function()) return rational_to_string(q_);
    if (den_.is_one()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

private:
  static void check_modes(const FieldElement& a, const FieldElement& b) {
    if (a.mode_ != b.mode_) throw Error("field mode mismatch");
  }
  // Already reduced (denominator monic and coprime to numerator).
  static FieldElement raw(Poly num, const Poly& den) {
    FieldElement e;
    e.mode_ = FieldMode::RationalFunction;
    e.num_ = std::move(num);
    e.den_ = e.num_.is_zero() ? Poly(Rational(1)) : den;
    return e;
  }

  void normalize() {
    if (den_.is_zero()) throw Error("zero denominator");
    if (num_.is_zero()) {
      den_ = Poly(Rational(1));
      return;
    }
    if (!den_.is_constant()) {
      Poly g = poly_gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = poly_divmod(num_, g).first;
        den_ = poly_divmod(den_, g).first;
      }
    }
    const Rational lead = den_.lead();
    if (lead != 1) {
      num_ = num_.scaled(Rational(1) / lead);
      den_ = den_.scaled(Rational(1) / lead);
    }
  }

  FieldMode mode_ = FieldMode::ExactRational;
  Rational q_{0};
  Poly num_;
  Poly den_{Rational(1)};
};

enum class FieldOp { Add, Mul, Inv, Neg };

inline FieldElement field_arith(FieldOp op, const FieldElement& a,
                                const std::optional<FieldElement>& b = std::nullopt) {
  switch (op) {
    case FieldOp::Add:
      if (!b) throw Error("add requires two operands");
      return a + *b;
    case FieldOp::Mul:
      if (!b) throw Error("mul requires two operands");
      return a * *b;
    case FieldOp::Inv:
      return a.inverse();
    case FieldOp::Neg:
      return -a;
  }
  throw Error("unknown field operation");
}

/// Which coefficient field morphisms live over: Q(t) with t generic, or Q
/// with t specialized to a rational value.
class FieldSpec {
public:
  static FieldSpec generic() { return FieldSpec(); }
  static FieldSpec specialized(const Rational& t) {
    FieldSpec f;
    f.t_value_ = t;
    return f;
  }

  bool is_generic() const noexcept { return !t_value_.has_value(); }
  FieldMode mode() const noexcept {
    return is_generic() ? FieldMode::RationalFunction : FieldMode::ExactRational;
  }
  const Rational& t_value() const {
    if (!t_value_) throw Error("generic field has no t value");
    return *t_value_;
  }
  bool t_nonzero() const { return is_generic() || *t_value_ != 0; }

  FieldElement constant(const Rational& q) const {
    return is_generic() ? FieldElement::function_constant(q) : FieldElement::rational(q);
  }
  FieldElement zero() const { return constant(Rational(0)); }
  FieldElement one() const { return constant(Rational(1)); }
  FieldElement t() const { return is_generic() ? FieldElement::t() : FieldElement::rational(*t_value_); }

  /// t^k for any integer k; negative powers require t != 0.
  FieldElement t_power(long k) const {
    if (k < 0 && !t_nonzero()) throw Error("requires t ≠ 0");
    if (is_generic()) {
      const auto d = static_cast<std::size_t>(k < 0 ? -k : k);
      Poly mono = Poly::monomial(Rational(1), d);
      return k >= 0 ? FieldElement::function(mono, Poly(Rational(1)))
                    : FieldElement::function(Poly(Rational(1)), mono);
    }
    Rational base = k >= 0 ? *t_value_ : Rational(1) / *t_value_;
    Rational acc(1);
    for (long i = 0; i < (k < 0 ? -k : k); ++i) acc *= base;
    return FieldElement::rational(acc);
  }

  /// Brings an element into this field's mode (specializing t if needed).
  FieldElement coerce(const FieldElement& e) const {
    if (e.mode() == mode()) return e;
    if (is_generic()) return FieldElement::function_constant(e.as_rational());
    return FieldElement::rational(e.specialize(*t_value_));
  }

  std::string to_string() const { return is_generic() ? "generic" : rational_to_string(*t_value_); }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.t_value_ == b.t_value_; }

  static FieldSpec parse(std::string_view text);

private:
  std::optional<Rational> t_value_;
};

namespace detail {

// Recursive-descent parser for field expressions:
//   expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)*
//   unary := '-' unary | power ; power := primary ('^' integer)?
//   primary := integer | 't' | '(' expr ')'
class FieldExprParser {
public:
  FieldExprParser(std::string_view text, const FieldSpec& field) : text_(text), field_(field) {}

  FieldElement parse_all() {
    FieldElement v = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return v;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  FieldElement expr() {
    FieldElement v = term();
    for (;;) {
      if (accept('+')) v = v + term();
      else if (accept('-')) v = v - term();
      else return v;
    }
  }
  FieldElement term() {
    FieldElement v = unary();
    for (;;) {
      if (accept('*')) {
        v = v * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        FieldElement d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        v = v / d;
      } else {
        return v;
      }
    }
  }
  FieldElement unary() {
    if (accept('-')) return -unary();
    return power();
  }
  FieldElement power() {
    FieldElement base = primary();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected exponent", start);
    const long e = std::stol(std::string(text_.substr(start, pos_ - start)));
    FieldElement acc = field_.one();
    for (long i = 0; i < e; ++i) acc = acc * base;
    return acc;
  }
  FieldElement primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      FieldElement v = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (c == 't') {
      ++pos_;
      return field_.t();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return field_.constant(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  const FieldSpec& field_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses "1/2", "t", "(t^2-1)/(t)", ... into the mode of `field`.
inline FieldElement parse_field_element(std::string_view text, const FieldSpec& field) {
  return detail::FieldExprParser(text, field).parse_all();
}

inline FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "generic") return generic();
  FieldElement v = parse_field_element(text, specialized(Rational(0)));
  // A literal 't' would silently evaluate to 0 above.
  if (text.find('t') != std::string_view::npos) throw ParseError("t value must be a rational number", text.find('t'));
  return specialized(v.as_rational());
}

}  // namespace diagcat
