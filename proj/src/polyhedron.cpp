#include <algorithm>

#include "pdiv/error.hpp"
#include "pdiv/polyhedral.hpp"

namespace pdiv {

TailedPolyhedron::TailedPolyhedron(std::vector<QVector> vertices, QCone tail) : tail_(std::move(tail)) {
  const std::size_t d = tail_.ambient_dim();
  if (vertices.empty()) throw Error(ErrorKind::InvalidArgument, "TailedPolyhedron needs a vertex");
  std::vector<IntVector> gens;
  for (const auto& v : vertices) {
    if (v.size() != d) throw Error(ErrorKind::DimensionMismatch, "vertex dimension differs from tail");
    QVector h = v;
    h.push_back(Rat(1));
    gens.push_back(primitive(h));
  }
  for (const auto& r : tail_.rays()) {
    IntVector h = r;
    h.push_back(Int(0));
    gens.push_back(std::move(h));
  }
  std::vector<IntVector> lin;
  for (const auto& l : tail_.lineality()) {
    IntVector h = l;
    h.push_back(Int(0));
    lin.push_back(std::move(h));
  }
  const QCone homog = QCone::from_generators(d + 1, gens, lin);
  for (const auto& r : homog.rays()) {
    if (r[d] == 0) continue;
    QVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = Rat(r[i], r[d]);
    for (auto& x : v) x.canonicalize();
    vertices_.push_back(std::move(v));
  }
  std::sort(vertices_.begin(), vertices_.end());
}

TailedPolyhedron TailedPolyhedron::point(const QVector& v, const QCone& tail) {
  return TailedPolyhedron({v}, tail);
}

Rat TailedPolyhedron::support(const QVector& u) const {
  return dot(minimizing_vertex(u), u);
}

Rat TailedPolyhedron::support(const IntVector& u) const { return support(to_rational(u)); }

const QVector& TailedPolyhedron::minimizing_vertex(const QVector& u) const {
  if (!dual_cone(tail_).contains(u))
    throw Error(ErrorKind::WeightOutsideCone, "support function: weight outside the dual of the tail");
  std::size_t best = 0;
  Rat best_value = dot(vertices_[0], u);
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    const Rat v = dot(vertices_[i], u);
    if (v < best_value) { best = i; best_value = v; }
  }
  return vertices_[best];
}

bool TailedPolyhedron::is_lattice_polyhedron() const {
  return std::all_of(vertices_.begin(), vertices_.end(), [](const QVector& v) { return is_integral(v); });
}

TailedPolyhedron minkowski_sum(const TailedPolyhedron& p, const TailedPolyhedron& q) {
  if (p.ambient_dim() != q.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "minkowski_sum");
  std::vector<QVector> sums;
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) sums.push_back(add(a, b));
  std::vector<IntVector> rays = p.tail().rays();
  rays.insert(rays.end(), q.tail().rays().begin(), q.tail().rays().end());
  std::vector<IntVector> lin = p.tail().lineality();
  lin.insert(lin.end(), q.tail().lineality().begin(), q.tail().lineality().end());
  return TailedPolyhedron(std::move(sums), QCone::from_generators(p.ambient_dim(), rays, lin));
}

}  // namespace pdiv
