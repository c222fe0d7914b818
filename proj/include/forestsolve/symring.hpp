#pragma once

// Exact multivariate polynomials and rational functions over Q.
//
// Elements are kept in a canonical form (terms sorted in graded-lex order,
// no zero coefficients), so structural equality is ring equality. The sign
// certificate is coefficientwise: a polynomial is certified nonnegative on the
// positive orthant when every coefficient is nonnegative.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace forestsolve {

using Rational = mpq_class;

/// Natural comparison of variable names: alphabetic prefix first, then the
/// numeric suffix by value (z2 < z10), then the full string.
int compare_variables(std::string_view a, std::string_view b);

bool is_valid_variable_name(std::string_view name);

/// Product of variables with positive exponents. The empty monomial is 1.
class Monomial {
 public:
  using Factor = std::pair<std::string, unsigned>;

  Monomial() = default;
  static Monomial variable(std::string name, unsigned exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  unsigned degree() const;
  unsigned degree_in(std::string_view var) const;

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Requires divides(other).
  Monomial quotient(const Monomial& other) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;  // sorted by compare_variables, exponents > 0
};

/// Graded lexicographic order; returns true when `a` precedes `b` in printed
/// (canonical) order, i.e. when `a` is the larger monomial.
struct TermOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

struct Term {
  Monomial monomial;
  Rational coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

enum class SignKind { Zero, Nonneg, Nonpos, Mixed };

struct Sign {
  SignKind kind = SignKind::Zero;
  // Nonzero Nonneg/Nonpos polynomials are strictly positive/negative on the
  // open positive orthant.
  bool strict = false;

  bool zero() const { return kind == SignKind::Zero; }
  bool nonneg() const { return kind == SignKind::Zero || kind == SignKind::Nonneg; }
  bool nonpos() const { return kind == SignKind::Zero || kind == SignKind::Nonpos; }
  bool positive() const { return kind == SignKind::Nonneg && strict; }
  bool negative() const { return kind == SignKind::Nonpos && strict; }
  bool mixed() const { return kind == SignKind::Mixed; }

  friend bool operator==(const Sign&, const Sign&) = default;
};

const char* to_string(SignKind kind);

using Assignment = std::map<std::string, Rational>;

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long value);  // NOLINT: implicit constant embedding is intended
  Polynomial(const Rational& value);  // NOLINT
  static Polynomial variable(std::string name);
  static Polynomial term(Rational coefficient, Monomial monomial);
  /// Builds from arbitrary terms; merges duplicates and drops zeros.
  static Polynomial from_terms(std::vector<Term> terms);

  /// Parses the textual grammar: rationals, variables, + - * / ^ and parentheses.
  /// Division is only allowed by nonzero constants. Throws ParseError.
  static Polynomial parse(std::string_view text);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Requires is_constant().
  Rational constant_value() const;
  std::size_t size() const { return terms_.size(); }
  std::vector<std::string> variables() const;
  unsigned degree() const;
  unsigned degree_in(std::string_view var) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(unsigned exponent) const;

  /// Exact quotient if `divisor` divides this polynomial, otherwise nullopt.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

  /// Coefficientwise sign certificate.
  Sign sign() const;

  /// Throws InputError when a variable of the polynomial is not assigned.
  Rational evaluate(const Assignment& point) const;

  /// Single-term polynomials in canonical order that sum to this polynomial.
  /// Throws InputError on the zero polynomial.
  std::vector<Polynomial> monomial_split() const;

  /// Terms with positive (resp. negative) coefficients.
  Polynomial positive_part() const;
  Polynomial negative_part() const;

  /// Positive rational c such that this/c has coprime integer coefficients;
  /// 1 for the zero polynomial.
  Rational content() const;
  /// Greatest monomial dividing every term (1 for the zero polynomial).
  Monomial monomial_content() const;

  std::string to_string() const;

 private:
  std::vector<Term> terms_;  // canonical order, nonzero coefficients, distinct monomials
};

Polynomial operator*(const Polynomial& a, const Polynomial& b);

/// Quotient of two polynomials, denominators nonzero. Reduced by the common
/// monomial factor and by the rational content; full polynomial gcd is not
/// computed, so equality is decided by cross-multiplication.
class RationalExpr {
 public:
  RationalExpr() : den_(1) {}
  RationalExpr(Polynomial numerator);  // NOLINT
  /// Throws InputError when the denominator is zero.
  RationalExpr(Polynomial numerator, Polynomial denominator);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalExpr operator+(const RationalExpr& other) const;
  RationalExpr operator-(const RationalExpr& other) const;
  RationalExpr operator*(const RationalExpr& other) const;
  RationalExpr operator/(const RationalExpr& other) const;
  RationalExpr operator-() const;

  Rational evaluate(const Assignment& point) const;
  std::string to_string() const;

  /// num_a * den_b == num_b * den_a.
  friend bool rat_equal(const RationalExpr& a, const RationalExpr& b);

 private:
  void reduce();

  Polynomial num_;
  Polynomial den_;
};

bool rat_equal(const RationalExpr& a, const RationalExpr& b);

}  // namespace forestsolve
