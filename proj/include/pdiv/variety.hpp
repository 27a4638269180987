#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pdiv/polynomial.hpp"

namespace pdiv {

/// Rational divisor: prime label -> coefficient. Zero coefficients are dropped.
using QDivisor = std::map<std::string, Rat>;

QDivisor add(const QDivisor& a, const QDivisor& b);
QDivisor scale(const QDivisor& a, const Rat& k);
QDivisor floor(const QDivisor& d);
bool is_integral(const QDivisor& d);
/// "1/2 D + 1 E"; "0" for the zero divisor.
std::string to_string(const QDivisor& d);

/// Global sections of an integral divisor D, written as g / R(D) where
/// R(D) = prod F_P^{D_P} over the labels P that carry a defining form and
/// g runs over `numerators`, homogeneous of degree `degree`.
struct SectionBasis {
  QDivisor divisor;
  int degree = 0;
  std::vector<Poly> numerators;
  Poly positive;  ///< prod of F_P^{D_P} with D_P > 0
  Poly negative;  ///< prod of F_P^{-D_P} with D_P < 0

  std::size_t size() const noexcept { return numerators.size(); }
  FunctionFieldElement element(const Poly& numerator) const;
  std::vector<FunctionFieldElement> elements() const;
};

/// The section oracle for a base variety.
class Variety {
 public:
  virtual ~Variety() = default;

  virtual std::string backend_name() const = 0;
  const std::vector<std::string>& coordinates() const noexcept { return coords_; }
  std::size_t nvars() const noexcept { return coords_.size(); }

  /// Prime divisor labels in declaration order.
  virtual std::vector<std::string> labels() const = 0;
  bool has_label(const std::string& name) const;
  /// Defining form of a label, if it has one.
  virtual std::optional<Poly> form(const std::string& label) const = 0;

  /// H^0 of the round-down of D. Throws NonIntegralDivisor unless D is integral.
  SectionBasis sections(const QDivisor& d) const;
  /// Numerator g with s = g / R(floor D), or nullopt if s is not a section.
  std::optional<Poly> numerator_of(const QDivisor& d, const FunctionFieldElement& s) const;
  /// Degree of the numerators of floor(D).
  int numerator_degree(const QDivisor& d) const;
  /// prod F_P^{floor(b_P) - floor(a_P) - floor(c_P)} with a + c <= b; the
  /// factor carrying products of numerators of a and c to numerators of b.
  Poly shift_factor(const QDivisor& a, const QDivisor& c, const QDivisor& b) const;

  virtual bool is_basepoint_free(const QDivisor& d) const = 0;
  virtual IntVector class_of(const QDivisor& d) const = 0;
  /// Backend-specific sufficient criterion; nullopt when undecided.
  virtual std::optional<bool> is_big(const QDivisor& d) const = 0;
  /// A section s with D + Div(s) supported on torus-invariant primes.
  virtual FunctionFieldElement invariantizing_section(const QDivisor& d) const = 0;
  virtual bool is_invariant_label(const std::string& label) const = 0;

  /// Defining forms used to cancel common factors when printing.
  std::vector<Poly> atoms() const;

 protected:
  explicit Variety(std::vector<std::string> coords) : coords_(std::move(coords)) {}

  /// Numerator space for the integral divisor d (degree already checked >= 0).
  virtual std::vector<Poly> numerator_space(const QDivisor& d, int degree) const = 0;
  /// Extra conditions on a numerator beyond homogeneity of the right degree.
  virtual bool numerator_ok(const QDivisor& d, const Poly& g) const = 0;

  void check_labels(const QDivisor& d) const;

 private:
  std::vector<std::string> coords_;
};

/// P^n with named coordinates and prime divisors V(F) for homogeneous forms F.
/// The standard torus acts; a label is invariant iff its form is a monomial.
class ProjectiveSpace : public Variety {
 public:
  ProjectiveSpace(std::vector<std::string> coords, std::vector<std::pair<std::string, Poly>> primes);

  std::string backend_name() const override { return "projective"; }
  std::vector<std::string> labels() const override;
  std::optional<Poly> form(const std::string& label) const override;
  bool is_basepoint_free(const QDivisor& d) const override;
  IntVector class_of(const QDivisor& d) const override;
  std::optional<bool> is_big(const QDivisor& d) const override;
  FunctionFieldElement invariantizing_section(const QDivisor& d) const override;
  bool is_invariant_label(const std::string& label) const override;

 protected:
  std::vector<Poly> numerator_space(const QDivisor& d, int degree) const override;
  bool numerator_ok(const QDivisor&, const Poly&) const override { return true; }

 private:
  std::vector<std::pair<std::string, Poly>> primes_;
};

/// Blow-up of P^2 at up to four points in general position. Labels: the
/// exceptional curves E1..Ek, the strict transforms Eij of lines through
/// two points, and user primes given by forms (strict transforms).
/// Class basis (H, E1, ..., Ek) with intersection form diag(1, -1, ..., -1).
class BlowupOfP2 : public Variety {
 public:
  BlowupOfP2(std::vector<std::string> coords, std::vector<QVector> points,
             std::vector<std::pair<std::string, Poly>> primes);

  std::string backend_name() const override { return "blowup_p2"; }
  std::vector<std::string> labels() const override;
  std::optional<Poly> form(const std::string& label) const override;
  bool is_basepoint_free(const QDivisor& d) const override;
  IntVector class_of(const QDivisor& d) const override;
  std::optional<bool> is_big(const QDivisor& d) const override;
  FunctionFieldElement invariantizing_section(const QDivisor& d) const override;
  bool is_invariant_label(const std::string&) const override { return false; }

  const std::vector<QVector>& points() const noexcept { return points_; }
  /// Multiplicity of the curve V(f) at the i-th point.
  int multiplicity(const Poly& f, std::size_t i) const;
  /// Intersection number of two classes in the (H, E1..Ek) basis.
  Int intersect(const IntVector& a, const IntVector& b) const;
  /// Classes of the curves tested for nefness.
  std::vector<IntVector> test_curves() const;
  static std::string exceptional(std::size_t i);
  static std::string line(std::size_t i, std::size_t j);

 protected:
  std::vector<Poly> numerator_space(const QDivisor& d, int degree) const override;
  bool numerator_ok(const QDivisor& d, const Poly& g) const override;

 private:
  /// Required multiplicity of a numerator at each point.
  std::vector<Int> required_multiplicities(const QDivisor& d) const;

  std::vector<QVector> points_;
  std::vector<std::pair<std::string, Poly>> primes_;  // Eij lines first, then user primes
};

/// Y = a point: the only divisor is 0 and its sections are the constants.
class PointBase : public Variety {
 public:
  PointBase() : Variety({}) {}

  std::string backend_name() const override { return "point"; }
  std::vector<std::string> labels() const override { return {}; }
  std::optional<Poly> form(const std::string&) const override { return std::nullopt; }
  bool is_basepoint_free(const QDivisor&) const override { return true; }
  IntVector class_of(const QDivisor&) const override { return {}; }
  std::optional<bool> is_big(const QDivisor&) const override { return true; }
  FunctionFieldElement invariantizing_section(const QDivisor&) const override;
  bool is_invariant_label(const std::string&) const override { return true; }

 protected:
  std::vector<Poly> numerator_space(const QDivisor&, int degree) const override;
  bool numerator_ok(const QDivisor&, const Poly&) const override { return true; }
};

/// Total transform of a divisor on P^2: each V(F) pulls back to its strict
/// transform (same label) plus sum_i mult_{P_i}(F) E_i.
QDivisor pullback_to_blowup(const ProjectiveSpace& p2, const QDivisor& d, const BlowupOfP2& y);

}  // namespace pdiv
