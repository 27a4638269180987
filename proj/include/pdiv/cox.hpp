#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pdiv/generators.hpp"

namespace pdiv {

/// The degree-5 del Pezzo surface: P^2 blown up at [1:0:0], [0:1:0],
/// [0:0:1], [1:1:1], with the class map d(u) = u0 H + sum u_i E_i.
struct CoxSetup {
  std::vector<std::string> coordinates{"x0", "x1", "x2"};
  std::vector<QVector> points;
  std::string hyperplane_label = "H";
  Poly hyperplane;  ///< f, the line carrying H
  IntMatrix degrees;  ///< 5 x 10, columns are the weights of t0..t9

  static CoxSetup degree_five();

  std::vector<IntVector> columns() const;
  QCone weight_cone() const;
  std::shared_ptr<const BlowupOfP2> variety() const;
  /// Classes of the ten (-1)-curves in the (H, E1..E4) basis, E1..E4 first.
  std::vector<std::pair<std::string, IntVector>> negative_curves() const;
};

/// D(u) = u0 H + sum min(0, u_i) E_i + sum min(0, u0 + u_i + u_j) E_ij.
/// Throws InvalidArgument unless the points are the four fixed ones.
PDivisor build_cox_pdivisor(const CoxSetup& setup);

/// omega cut by the hyperplanes <c_E, u> = 0, c_E the coordinate vector of
/// a (-1)-curve E. This is the subdivision with 241 cells and 160 rays; the
/// coarsest linearity subdivision of D is coarser.
PolyhedralSubdivision cox_hyperplane_subdivision(const CoxSetup& setup);

/// Drops u2 when u2 = u1 + a1 + ... + ak with each a_i a candidate of
/// class 0, every partial sum inside omega with the class of D(u2), and u1 a
/// nonzero candidate. Multiplication by a class-0 section is then onto.
std::vector<IntVector> reduce_rays(const PDivisor& d, const std::vector<IntVector>& rays,
                                   const std::vector<IntVector>& candidates);

/// Exponents of t0..t9 with prod t^e of weight u; nullopt outside omega.
std::optional<std::vector<int>> column_monomial(const IntVector& u, const std::vector<IntVector>& columns);

/// s * chi^u written in P = C[x, h, t] / (h f - 1 + toric relations).
std::string p_presentation(const GradedElement& e, const CoxSetup& setup);

/// Binomials t^a - t^b from a basis of the kernel of the degree matrix.
std::vector<std::string> toric_relations(const CoxSetup& setup);

struct MinorsCertificate {
  std::vector<std::string> minors;  ///< the ten 3x3 minors, h-graded
  bool passed = false;
  std::string detail;
};

/// Compares the section coefficients of the generators with the 3x3 minors
/// of the matrix with columns e1, e2, e3, (1,1,1), (x0 h, x1 h, x2 h), up to
/// sign and the h-grading.
MinorsCertificate minors_certificate(const std::vector<GradedElement>& generators, const CoxSetup& setup);

struct CoxClass {
  IntVector cls;  ///< (H, E1..E4) coordinates
  std::size_t rays = 0;
};

struct CoxRun {
  LinearityDomain linearity;           ///< coarsest cells of linearity
  PolyhedralSubdivision subdivision;   ///< hyperplane subdivision
  std::vector<IntVector> rays;
  std::vector<CoxClass> classes;
  std::vector<IntVector> reduced_rays;
  std::vector<RayData> ray_data;
  std::size_t pool_size = 0;
  std::vector<GradedElement> completion;
  QuotientFieldResult quotient_field;
  GeneratorSet result;
  bool hilbert_in_columns = false;
  MinorsCertificate certificate;
};

CoxRun run_cox(const CoxSetup& setup, const EngineOptions& opt = {});

/// Class as "2H - 2E1"; "0" for zero.
std::string class_string(const IntVector& cls);
/// Text report: subdivision counts, class table, reduced rays, generators in
/// P, toric relations, certificate.
std::string report(const CoxRun& run, const CoxSetup& setup);

}  // namespace pdiv
