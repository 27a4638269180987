#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pdiv/exact_linalg.hpp"

namespace pdiv {

using Exponents = std::vector<int>;

/// Multivariate polynomial with rational coefficients. Terms are kept in
/// lexicographically descending order of their exponent vectors, so the
/// first term is the lex-leading one.
class Poly {
 public:
  using Terms = std::map<Exponents, Rat, std::greater<Exponents>>;

  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rat& c);
  static Poly variable(std::size_t nvars, std::size_t i);
  static Poly monomial(const Exponents& e, const Rat& c = Rat(1));

  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  Rat coefficient(const Exponents& e) const;
  const Exponents& leading_exponents() const { return terms_.begin()->first; }
  const Rat& leading_coefficient() const { return terms_.begin()->second; }

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Rat& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly pow(unsigned k) const;

  /// Exact quotient if `d` divides this polynomial.
  std::optional<Poly> divide(const Poly& d) const;
  Rat evaluate(const QVector& point) const;
  Poly derivative(std::size_t var) const;
  /// Scaled so the leading coefficient is 1.
  Poly monic() const;

  std::string to_string(const std::vector<std::string>& names) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const Poly& a, const Poly& b) { return a.terms_ < b.terms_; }

 private:
  void add_term(const Exponents& e, const Rat& c);

  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Parses `+ - * ^ ( )`, integers, `a/b` rational constants and the given
/// variable names. Throws Error(Parse).
Poly parse_poly(const std::string& text, const std::vector<std::string>& names);

/// All exponent vectors of total degree d in n variables, lex descending.
std::vector<Exponents> monomials_of_degree(std::size_t n, int d);

/// Coefficient vector of a homogeneous polynomial in a monomial basis.
QVector coefficients_in(const Poly& p, const std::vector<Exponents>& basis);

/// An element num/den of a rational function field.
class FunctionFieldElement {
 public:
  FunctionFieldElement() = default;
  FunctionFieldElement(Poly num, Poly den);
  static FunctionFieldElement one(std::size_t nvars);

  const Poly& numerator() const noexcept { return num_; }
  const Poly& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }

  FunctionFieldElement operator*(const FunctionFieldElement& rhs) const;
  FunctionFieldElement inverse() const;
  FunctionFieldElement pow(int k) const;

  /// Cancels common factors drawn from `atoms` (and variables).
  FunctionFieldElement simplified(const std::vector<Poly>& atoms) const;
  std::string to_string(const std::vector<std::string>& names) const;

  friend bool operator==(const FunctionFieldElement& a, const FunctionFieldElement& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

 private:
  Poly num_;
  Poly den_;
};

}  // namespace pdiv
