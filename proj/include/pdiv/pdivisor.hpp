#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pdiv/polyhedral.hpp"
#include "pdiv/variety.hpp"

namespace pdiv {

/// Polyhedral divisor: a weight cone omega and one tailed polyhedron per
/// prime label, every tail equal to the dual of omega. Labels that are
/// absent have coefficient omega^dual.
class PDivisor {
 public:
  PDivisor(QCone omega, std::map<std::string, TailedPolyhedron> coefficients, std::shared_ptr<const Variety> y);

  const QCone& weight_cone() const noexcept { return omega_; }
  const std::map<std::string, TailedPolyhedron>& coefficients() const noexcept { return coeffs_; }
  const Variety& variety() const noexcept { return *y_; }
  std::shared_ptr<const Variety> variety_ptr() const noexcept { return y_; }
  std::size_t rank() const noexcept { return omega_.ambient_dim(); }

  /// sum_P min<D_P, u> P. Throws WeightOutsideCone.
  QDivisor evaluate(const QVector& u) const;
  QDivisor evaluate(const IntVector& u) const;

  /// Same coefficients over a subcone; throws NotSubcone.
  PDivisor restrict(const QCone& c) const;

 private:
  QCone omega_;
  std::map<std::string, TailedPolyhedron> coeffs_;
  std::shared_ptr<const Variety> y_;
};

/// Cells of omega on which the p-divisor is linear, with the vertex of each
/// coefficient attaining the minimum on every cell.
struct LinearityDomain {
  PolyhedralSubdivision subdivision;
  std::vector<std::map<std::string, QVector>> vertices;  ///< parallel to subdivision.cells

  /// The linear expression of cell i at u.
  QDivisor evaluate_on_cell(std::size_t i, const QVector& u) const;
};

LinearityDomain linearity_subdivision(const PDivisor& d);

enum class Verdict { Pass, Fail, Unverifiable };
const char* to_string(Verdict v);

struct ValidationReport {
  struct Check {
    std::string name;
    Verdict verdict;
    std::string detail;
  };
  std::vector<Check> checks;

  bool ok() const;
  std::string to_string() const;
};

/// Semiampleness on every ray of the linearity subdivision (a multiple up to
/// `max_multiple` times the integrality index must be base point free) and
/// bigness at one interior point of each cell.
ValidationReport validate(const PDivisor& d, int max_multiple = 8);

}  // namespace pdiv
