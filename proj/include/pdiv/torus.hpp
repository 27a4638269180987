#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pdiv/generators.hpp"

namespace pdiv {

/// Torus action on the base recorded as a divisorial fan over Z. Only Z a
/// point is supported end to end: coordinate x_i of the base is the
/// invariant divisor of ray r_i, and chi^w for w in M' is the Laurent
/// monomial prod x_i^<w, r_i>.
struct DivisorialFanRecord {
  std::size_t rank = 0;                                       ///< rank of M'
  std::vector<IntVector> rays;                                ///< one per coordinate
  std::vector<std::pair<std::string, QVector>> vertical;      ///< (prime on Z, vertex)

  /// Throws Semantic unless the rays sum to zero and span Z^rank, and
  /// UnsupportedBase if vertical markers are present.
  void check(const Variety& y) const;
  /// prod x_i^<w, r_i>.
  FunctionFieldElement character(const IntVector& w, std::size_t nvars) const;
};

/// D'' on one unimodular cell, written over the invariant divisors D_r:
/// D''(u) = sum_r min<Delta_r, u> D_r with Delta_r = ell_r + cell^dual.
struct InvariantRepresentation {
  QCone cell;
  std::vector<IntVector> cell_rays;
  std::vector<FunctionFieldElement> twist;  ///< s_rho per cell ray
  std::vector<QVector> ell;                 ///< per coordinate ray
  std::vector<TailedPolyhedron> delta;      ///< per coordinate ray

  QDivisor evaluate(const IntVector& u, const DivisorialFanRecord& fan) const;
};

/// Coefficients on the coordinate divisors of d + Div(s); throws NotTMoveable
/// when a non-invariant prime survives.
QVector invariant_coefficients(const Variety& y, const QDivisor& d, const FunctionFieldElement& s);

InvariantRepresentation invariantize_cell(const PDivisor& d, const QCone& cell, const DivisorialFanRecord& fan);

/// sigma~ = pos((cell^dual x 0) u (ell_r, r)).
QCone upgrade(const InvariantRepresentation& rep, const DivisorialFanRecord& fan);

/// The p-divisor on Z = point with weight cone dual(sigma~).
PDivisor upgraded_pdivisor(const QCone& sigma_tilde);

/// (w_M, w') -> prod s_rho^{u_rho} * chi^{w'} * chi^{w_M}.
std::vector<GradedElement> downgrade_generators(const std::vector<IntVector>& weights, const InvariantRepresentation& rep,
                                                const DivisorialFanRecord& fan, std::size_t nvars);

struct TorusCell {
  InvariantRepresentation rep;
  QCone sigma_tilde;
  std::vector<IntVector> hilbert;  ///< Hilbert basis of dual(sigma~)
  std::vector<GradedElement> elements;
};

struct TorusRun {
  PolyhedralSubdivision subdivision;
  std::vector<TorusCell> cells;
  std::vector<GradedElement> elements;  ///< concatenated over cells
  std::size_t distinct = 0;
};

TorusRun run_torus(const PDivisor& d, const DivisorialFanRecord& fan);

}  // namespace pdiv
