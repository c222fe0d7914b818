#include "forestsolve/symring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "forestsolve/error.hpp"

namespace forestsolve {

namespace {

// Splits "k10" into ("k", "10"); the suffix is the trailing run of digits.
std::pair<std::string_view, std::string_view> split_numeric_suffix(std::string_view name) {
  std::size_t cut = name.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(name[cut - 1]))) --cut;
  return {name.substr(0, cut), name.substr(cut)};
}

int compare_digit_strings(std::string_view a, std::string_view b) {
  auto strip = [](std::string_view s) {
    std::size_t i = 0;
    while (i + 1 < s.size() && s[i] == '0') ++i;
    return s.substr(i);
  };
  a = strip(a);
  b = strip(b);
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  int c = a.compare(b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace

int compare_variables(std::string_view a, std::string_view b) {
  if (a == b) return 0;
  auto [pa, sa] = split_numeric_suffix(a);
  auto [pb, sb] = split_numeric_suffix(b);
  if (int c = pa.compare(pb); c != 0) return c < 0 ? -1 : 1;
  if (sa.empty() != sb.empty()) return sa.empty() ? -1 : 1;
  if (!sa.empty()) {
    if (int c = compare_digit_strings(sa, sb); c != 0) return c;
  }
  return a < b ? -1 : 1;
}

bool is_valid_variable_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
  });
}

const char* to_string(SignKind kind) {
  switch (kind) {
    case SignKind::Zero: return "zero";
    case SignKind::Nonneg: return "nonneg";
    case SignKind::Nonpos: return "nonpos";
    case SignKind::Mixed: return "mixed";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(std::string name, unsigned exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.emplace_back(std::move(name), exponent);
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

unsigned Monomial::degree_in(std::string_view var) const {
  for (const auto& f : factors_) {
    if (f.first == var) return f.second;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    int c = compare_variables(a->first, b->first);
    if (c < 0) {
      out.factors_.push_back(*a++);
    } else if (c > 0) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.factors_.insert(out.factors_.end(), a, factors_.end());
  out.factors_.insert(out.factors_.end(), b, other.factors_.end());
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  for (const auto& [var, exp] : factors_) {
    if (other.degree_in(var) < exp) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& other) const {
  Monomial out;
  for (const auto& [var, exp] : factors_) {
    unsigned sub = other.degree_in(var);
    if (exp > sub) out.factors_.emplace_back(var, exp - sub);
  }
  return out;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (const auto& [var, exp] : a.factors_) {
    unsigned e = std::min(exp, b.degree_in(var));
    if (e > 0) out.factors_.emplace_back(var, e);
  }
  return out;
}

std::string Monomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [var, exp] : factors_) {
    if (!s.empty()) s += '*';
    s += var;
    if (exp != 1) s += '^' + std::to_string(exp);
  }
  return s;
}

bool TermOrder::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = a.degree();
  unsigned db = b.degree();
  if (da != db) return da > db;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    int c = compare_variables(fa[i].first, fb[i].first);
    if (c != 0) return c < 0;  // a has an earlier variable with positive exponent
    if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second;
  }
  return i < fa.size() && i == fb.size();
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(long value) {
  if (value != 0) terms_.push_back({Monomial{}, Rational(value)});
}

Polynomial::Polynomial(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v != 0) terms_.push_back({Monomial{}, v});
}

Polynomial Polynomial::variable(std::string name) {
  return term(Rational(1), Monomial::variable(std::move(name)));
}

Polynomial Polynomial::term(Rational coefficient, Monomial monomial) {
  Polynomial p;
  coefficient.canonicalize();
  if (coefficient != 0) p.terms_.push_back({std::move(monomial), std::move(coefficient)});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::map<Monomial, Rational, TermOrder> acc;
  for (auto& t : terms) {
    t.coefficient.canonicalize();
    acc[std::move(t.monomial)] += t.coefficient;
  }
  Polynomial p;
  for (auto& [mono, coef] : acc) {
    if (coef != 0) p.terms_.push_back({mono, coef});
  }
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

Rational Polynomial::constant_value() const {
  return terms_.empty() ? Rational(0) : terms_.front().coefficient;
}

std::vector<std::string> Polynomial::variables() const {
  std::vector<std::string> vars;
  for (const auto& t : terms_) {
    for (const auto& f : t.monomial.factors()) vars.push_back(f.first);
  }
  std::sort(vars.begin(), vars.end(),
            [](const std::string& a, const std::string& b) { return compare_variables(a, b) < 0; });
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

unsigned Polynomial::degree() const {
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

unsigned Polynomial::degree_in(std::string_view var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.monomial.degree_in(var));
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coefficient = -t.coefficient;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  TermOrder before;
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() && b != other.terms_.end()) {
    if (before(a->monomial, b->monomial)) {
      merged.push_back(std::move(*a++));
    } else if (before(b->monomial, a->monomial)) {
      merged.push_back(*b++);
    } else {
      Rational c = a->coefficient + b->coefficient;
      if (c != 0) merged.push_back({std::move(a->monomial), c});
      ++a;
      ++b;
    }
  }
  for (; a != terms_.end(); ++a) merged.push_back(std::move(*a));
  for (; b != other.terms_.end(); ++b) merged.push_back(*b);
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::map<Monomial, Rational, TermOrder> acc;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) acc[ta.monomial * tb.monomial] += ta.coefficient * tb.coefficient;
  }
  Polynomial p;
  p.terms_.reserve(acc.size());
  for (auto& [mono, coef] : acc) {
    if (coef != 0) p.terms_.push_back({mono, coef});
  }
  return p;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result(1L);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  if (divisor.is_zero()) return std::nullopt;
  if (is_zero()) return Polynomial{};
  const Term& lead = divisor.terms_.front();
  Polynomial remainder = *this;
  std::vector<Term> quotient;
  while (!remainder.is_zero()) {
    const Term& rt = remainder.terms_.front();
    // The leading term of the remainder can never be cancelled later.
    if (!lead.monomial.divides(rt.monomial)) return std::nullopt;
    Term q{rt.monomial.quotient(lead.monomial), rt.coefficient / lead.coefficient};
    remainder -= divisor * Polynomial::term(q.coefficient, q.monomial);
    quotient.push_back(std::move(q));
  }
  return from_terms(std::move(quotient));
}

Sign Polynomial::sign() const {
  if (terms_.empty()) return {SignKind::Zero, false};
  bool pos = false;
  bool neg = false;
  for (const auto& t : terms_) {
    if (t.coefficient > 0) pos = true;
    else neg = true;
  }
  if (pos && neg) return {SignKind::Mixed, false};
  return {pos ? SignKind::Nonneg : SignKind::Nonpos, true};
}

Rational Polynomial::evaluate(const Assignment& point) const {
  Rational total = 0;
  for (const auto& t : terms_) {
    Rational v = t.coefficient;
    for (const auto& [var, exp] : t.monomial.factors()) {
      auto it = point.find(var);
      if (it == point.end()) throw InputError("no value assigned to variable '" + var + "'");
      Rational x = it->second;
      x.canonicalize();
      for (unsigned k = 0; k < exp; ++k) v *= x;
    }
    total += v;
  }
  return total;
}

std::vector<Polynomial> Polynomial::monomial_split() const {
  if (is_zero()) throw InputError("cannot split the zero polynomial");
  std::vector<Polynomial> parts;
  parts.reserve(terms_.size());
  for (const auto& t : terms_) parts.push_back(term(t.coefficient, t.monomial));
  return parts;
}

Polynomial Polynomial::positive_part() const {
  Polynomial p;
  for (const auto& t : terms_) {
    if (t.coefficient > 0) p.terms_.push_back(t);
  }
  return p;
}

Polynomial Polynomial::negative_part() const {
  Polynomial p;
  for (const auto& t : terms_) {
    if (t.coefficient < 0) p.terms_.push_back(t);
  }
  return p;
}

Rational Polynomial::content() const {
  if (terms_.empty()) return Rational(1);
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& t : terms_) {
    mpz_class n = abs(t.coefficient.get_num());
    num_gcd = gcd(num_gcd, n);
    den_lcm = lcm(den_lcm, mpz_class(t.coefficient.get_den()));
  }
  Rational c(num_gcd, den_lcm);
  c.canonicalize();
  return c;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial g = terms_.front().monomial;
  for (const auto& t : terms_) g = Monomial::gcd(g, t.monomial);
  return g;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    Rational mag = abs(t.coefficient);
    bool negative = t.coefficient < 0;
    if (first) {
      if (negative) s += '-';
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (t.monomial.is_one()) {
      s += mag.get_str();
    } else if (mag == 1) {
      s += t.monomial.to_string();
    } else {
      s += mag.get_str() + "*" + t.monomial.to_string();
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Polynomial parse_all() {
    skip_space();
    if (pos_ >= text_.size()) fail("empty expression");
    Polynomial p = expr();
    skip_space();
    if (pos_ < text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial parse error: " + msg, 1, static_cast<int>(pos_) + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p = term();
    for (;;) {
      if (accept('+')) p += term();
      else if (accept('-')) p -= term();
      else return p;
    }
  }

  Polynomial term() {
    Polynomial p = unary();
    for (;;) {
      if (accept('*')) {
        p *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Polynomial d = unary();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division is only allowed by a nonzero constant");
        }
        p *= Polynomial(Rational(1) / d.constant_value());
      } else {
        return p;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      if (pos_ - start > 6) fail("exponent too large");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      return base.pow(e);
    }
    return base;
  }

  Polynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Polynomial(Rational(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return Polynomial::variable(std::string(text_.substr(start, pos_ - start)));
    }
    fail(std::string("unexpected character '") + ch + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text) { return PolyParser(text).parse_all(); }

// ---------------------------------------------------------------------------
// RationalExpr

RationalExpr::RationalExpr(Polynomial numerator) : num_(std::move(numerator)), den_(1) {}

RationalExpr::RationalExpr(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw InputError("rational expression with zero denominator");
  reduce();
}

void RationalExpr::reduce() {
  if (num_.is_zero()) {
    den_ = Polynomial(1L);
    return;
  }
  Monomial g = Monomial::gcd(num_.monomial_content(), den_.monomial_content());
  if (!g.is_one()) {
    std::vector<Term> n;
    std::vector<Term> d;
    for (const auto& t : num_.terms()) n.push_back({t.monomial.quotient(g), t.coefficient});
    for (const auto& t : den_.terms()) d.push_back({t.monomial.quotient(g), t.coefficient});
    num_ = Polynomial::from_terms(std::move(n));
    den_ = Polynomial::from_terms(std::move(d));
  }
  if (!den_.is_constant()) {
    if (auto q = num_.divide_exact(den_)) {
      num_ = std::move(*q);
      den_ = Polynomial(1L);
    } else if (num_.size() > 1 || !num_.is_constant()) {
      if (auto r = den_.divide_exact(num_)) {
        den_ = std::move(*r);
        num_ = Polynomial(1L);
      }
    }
  }
  Rational scale = den_.content();
  if (den_.terms().front().coefficient < 0) scale = -scale;
  if (scale != 1) {
    Polynomial inv(Rational(1) / scale);
    num_ *= inv;
    den_ *= inv;
  }
}

RationalExpr RationalExpr::operator+(const RationalExpr& other) const {
  if (den_ == other.den_) return RationalExpr(num_ + other.num_, den_);
  return RationalExpr(num_ * other.den_ + other.num_ * den_, den_ * other.den_);
}

RationalExpr RationalExpr::operator-(const RationalExpr& other) const { return *this + (-other); }

RationalExpr RationalExpr::operator*(const RationalExpr& other) const {
  return RationalExpr(num_ * other.num_, den_ * other.den_);
}

RationalExpr RationalExpr::operator/(const RationalExpr& other) const {
  if (other.is_zero()) throw InputError("division by a zero rational expression");
  return RationalExpr(num_ * other.den_, den_ * other.num_);
}

RationalExpr RationalExpr::operator-() const {
  RationalExpr r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational RationalExpr::evaluate(const Assignment& point) const {
  Rational d = den_.evaluate(point);
  if (d == 0) throw InputError("denominator vanishes at the evaluation point");
  return num_.evaluate(point) / d;
}

std::string RationalExpr::to_string() const {
  if (den_ == Polynomial(1L)) return num_.to_string();
  auto wrap = [](const Polynomial& p) {
    std::string s = p.to_string();
    return p.size() > 1 ? "(" + s + ")" : s;
  };
  return wrap(num_) + "/" + wrap(den_);
}

bool rat_equal(const RationalExpr& a, const RationalExpr& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

}  // namespace forestsolve
