#pragma once

#include <cstddef>
#include <vector>

#include "pdiv/exact_linalg.hpp"

namespace pdiv {

/// Rational polyhedral cone holding both descriptions.
///
/// Primal side: extreme rays (primitive, modulo the lineality space) plus a
/// lattice basis of the lineality space. Dual side: irredundant primitive
/// facet normals (inequalities n.x >= 0) plus a basis of the equations
/// cutting out the linear span. Every list is canonically sorted, so two
/// cones compare equal iff they are the same set.
class QCone {
 public:
  QCone() = default;

  static QCone from_generators(std::size_t dim, const std::vector<IntVector>& generators,
                               const std::vector<IntVector>& lineality = {});
  static QCone from_inequalities(std::size_t dim, const std::vector<IntVector>& inequalities,
                                 const std::vector<IntVector>& equations = {});
  static QCone full_space(std::size_t dim);
  static QCone origin(std::size_t dim);
  static QCone orthant(std::size_t dim);

  std::size_t ambient_dim() const noexcept { return dim_; }
  const std::vector<IntVector>& rays() const noexcept { return rays_; }
  const std::vector<IntVector>& lineality() const noexcept { return lineality_; }
  const std::vector<IntVector>& facets() const noexcept { return facets_; }
  const std::vector<IntVector>& equations() const noexcept { return equations_; }

  std::size_t dim() const noexcept { return dim_ - equations_.size(); }
  bool is_pointed() const noexcept { return lineality_.empty(); }
  bool is_full_dimensional() const noexcept { return equations_.empty(); }
  bool is_simplicial() const noexcept { return is_pointed() && rays_.size() == dim(); }

  bool contains(const IntVector& x) const;
  bool contains(const QVector& x) const;
  bool contains(const QCone& other) const;
  /// Strictly inside the relative interior.
  bool in_relative_interior(const IntVector& x) const;
  bool in_relative_interior(const QVector& x) const;

  /// Sum of the rays; lies in the relative interior of a pointed cone.
  IntVector interior_point() const;

  QCone intersect(const QCone& other) const;
  /// The face cut out by n.x = 0 for a valid inequality n.
  QCone face(const IntVector& normal) const;

  friend bool operator==(const QCone& a, const QCone& b) {
    return a.dim_ == b.dim_ && a.rays_ == b.rays_ && a.lineality_ == b.lineality_;
  }
  friend bool operator<(const QCone& a, const QCone& b);

 private:
  std::size_t dim_ = 0;
  std::vector<IntVector> rays_;
  std::vector<IntVector> lineality_;
  std::vector<IntVector> facets_;
  std::vector<IntVector> equations_;

  friend QCone dual_cone(const QCone& c);
};

/// {v : <v,u> >= 0 for all u in C}; a swap of the two stored descriptions.
QCone dual_cone(const QCone& c);

/// |det| of the ray matrix of a full-dimensional simplicial cone.
Int multiplicity(const QCone& simplicial);

/// Unique minimal generating set of C ∩ Z^n, lexicographically sorted.
/// Throws NonPointedCone.
std::vector<IntVector> hilbert_basis(const QCone& c);

/// Lattice points of the half-open fundamental parallelepiped of a
/// simplicial cone, including the origin.
std::vector<IntVector> parallelepiped_points(const std::vector<IntVector>& rays);

/// Polyhedron conv(vertices) + tail, kept irredundant.
class TailedPolyhedron {
 public:
  TailedPolyhedron() = default;
  TailedPolyhedron(std::vector<QVector> vertices, QCone tail);

  static TailedPolyhedron point(const QVector& v, const QCone& tail);

  std::size_t ambient_dim() const noexcept { return tail_.ambient_dim(); }
  const std::vector<QVector>& vertices() const noexcept { return vertices_; }
  const QCone& tail() const noexcept { return tail_; }

  /// min <P, u>; u must lie in the dual of the tail cone.
  Rat support(const QVector& u) const;
  Rat support(const IntVector& u) const;
  /// A vertex attaining the minimum (lexicographically first on ties).
  const QVector& minimizing_vertex(const QVector& u) const;
  bool is_lattice_polyhedron() const;

  friend bool operator==(const TailedPolyhedron& a, const TailedPolyhedron& b) {
    return a.vertices_ == b.vertices_ && a.tail_ == b.tail_;
  }

 private:
  std::vector<QVector> vertices_;
  QCone tail_;
};

TailedPolyhedron minkowski_sum(const TailedPolyhedron& p, const TailedPolyhedron& q);

/// Maximal cells covering an ambient cone, sorted.
struct PolyhedralSubdivision {
  QCone ambient;
  std::vector<QCone> cells;

  /// Union of the cells' rays, sorted.
  std::vector<IntVector> rays() const;
};

/// Cones of linearity of u -> min <P,u> inside the dual of the tail cone.
PolyhedralSubdivision normal_fan(const TailedPolyhedron& p);

/// Full-dimensional intersections of one cell per input with `ambient`.
PolyhedralSubdivision common_refinement(const std::vector<PolyhedralSubdivision>& subdivisions,
                                        const QCone& ambient);

/// Triangulation of a pointed cone using only its own rays.
PolyhedralSubdivision triangulate(const QCone& c);

/// Stellar subdivision of a fan of simplicial cones at `p`.
std::vector<QCone> stellar_subdivide(const std::vector<QCone>& cells, const IntVector& p);

/// Every cell simplicial with |det| = 1. Requires a full-dimensional pointed cone.
PolyhedralSubdivision unimodular_triangulation(const QCone& c);

/// Refines each cell of a subdivision to unimodular simplices.
PolyhedralSubdivision unimodular_refinement(const PolyhedralSubdivision& s);

}  // namespace pdiv
