#include <algorithm>
#include <set>

#include "pdiv/error.hpp"
#include "pdiv/polyhedral.hpp"

namespace pdiv {

namespace {

bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void sort_cells(std::vector<QCone>& cells) {
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
}

using Simplex = std::vector<IntVector>;

void pulling(const QCone& c, std::vector<Simplex>& out) {
  if (c.rays().size() == c.dim()) {
    out.push_back(c.rays());
    return;
  }
  const IntVector& apex = c.rays().front();
  for (const auto& f : c.facets()) {
    if (dot(f, apex) == 0) continue;
    std::vector<Simplex> sub;
    pulling(c.face(f), sub);
    for (auto& s : sub) {
      s.push_back(apex);
      out.push_back(std::move(s));
    }
  }
}

QCone simplex_cone(std::size_t dim, const Simplex& rays) { return QCone::from_generators(dim, rays); }

// Barycentric coordinates of p in a simplicial cone, if p lies in it.
std::optional<QVector> cone_coordinates(const QCone& cell, const IntVector& p) {
  if (!cell.contains(p)) return std::nullopt;
  const auto& rays = cell.rays();
  const std::size_t d = cell.ambient_dim();
  QMatrix rows(d, QVector(rays.size()));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < rays.size(); ++j) rows[i][j] = rays[j][i];
  return solve(rows, to_rational(p), rays.size());
}

Int squared_norm(const IntVector& v) { return dot(v, v); }

PolyhedralSubdivision make_unimodular(QCone ambient, std::vector<QCone> cells) {
  for (std::size_t guard = 0;; ++guard) {
    if (guard > 100000) throw Error(ErrorKind::IterationLimitExceeded, "unimodular refinement did not settle");
    sort_cells(cells);
    const QCone* target = nullptr;
    for (const auto& c : cells)
      if (multiplicity(c) > 1) { target = &c; break; }
    if (!target) break;
    std::optional<IntVector> best;
    for (const auto& h : hilbert_basis(*target)) {
      if (std::find(target->rays().begin(), target->rays().end(), h) != target->rays().end()) continue;
      if (!best || squared_norm(h) < squared_norm(*best) ||
          (squared_norm(h) == squared_norm(*best) && lex_less(h, *best)))
        best = h;
    }
    cells = stellar_subdivide(cells, *best);
  }
  return PolyhedralSubdivision{std::move(ambient), std::move(cells)};
}

}  // namespace

std::vector<IntVector> PolyhedralSubdivision::rays() const {
  std::set<IntVector, decltype(&lex_less)> all(&lex_less);
  for (const auto& c : cells)
    for (const auto& r : c.rays()) all.insert(r);
  return {all.begin(), all.end()};
}

PolyhedralSubdivision normal_fan(const TailedPolyhedron& p) {
  const QCone ambient = dual_cone(p.tail());
  PolyhedralSubdivision out{ambient, {}};
  for (const auto& v : p.vertices()) {
    std::vector<IntVector> ineq = ambient.facets();
    for (const auto& w : p.vertices()) {
      if (w == v) continue;
      QVector diff = w;
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= v[i];
      ineq.push_back(primitive(diff));
    }
    QCone cell = QCone::from_inequalities(ambient.ambient_dim(), ineq, ambient.equations());
    if (cell.dim() == ambient.dim()) out.cells.push_back(std::move(cell));
  }
  sort_cells(out.cells);
  return out;
}

PolyhedralSubdivision common_refinement(const std::vector<PolyhedralSubdivision>& subdivisions,
                                        const QCone& ambient) {
  std::vector<QCone> cells{ambient};
  for (const auto& s : subdivisions) {
    std::vector<QCone> next;
    for (const auto& c : cells) {
      for (const auto& n : s.cells) {
        if (n.contains(c)) {
          next.push_back(c);
          continue;
        }
        QCone i = c.intersect(n);
        if (i.dim() == ambient.dim()) next.push_back(std::move(i));
      }
    }
    sort_cells(next);
    cells = std::move(next);
  }
  return PolyhedralSubdivision{ambient, std::move(cells)};
}

PolyhedralSubdivision triangulate(const QCone& c) {
  if (!c.is_pointed()) throw Error(ErrorKind::NonPointedCone, "triangulate: cone has a lineality space");
  std::vector<Simplex> simplices;
  pulling(c, simplices);
  std::vector<QCone> cells;
  for (const auto& s : simplices) cells.push_back(simplex_cone(c.ambient_dim(), s));
  sort_cells(cells);
  return PolyhedralSubdivision{c, std::move(cells)};
}

std::vector<QCone> stellar_subdivide(const std::vector<QCone>& cells, const IntVector& p) {
  std::vector<QCone> out;
  for (const auto& cell : cells) {
    const auto lambda = cone_coordinates(cell, p);
    const auto& rays = cell.rays();
    if (!lambda || std::find(rays.begin(), rays.end(), p) != rays.end()) {
      out.push_back(cell);
      continue;
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if ((*lambda)[i] <= 0) continue;
      Simplex s = rays;
      s[i] = p;
      out.push_back(simplex_cone(cell.ambient_dim(), s));
    }
  }
  sort_cells(out);
  return out;
}

PolyhedralSubdivision unimodular_triangulation(const QCone& c) {
  if (!c.is_full_dimensional() || !c.is_pointed())
    throw Error(ErrorKind::InvalidArgument, "unimodular_triangulation needs a full-dimensional pointed cone");
  return make_unimodular(c, triangulate(c).cells);
}

PolyhedralSubdivision unimodular_refinement(const PolyhedralSubdivision& s) {
  std::vector<QCone> cells;
  for (const auto& c : s.cells)
    for (auto& t : triangulate(c).cells) cells.push_back(std::move(t));
  return make_unimodular(s.ambient, std::move(cells));
}

}  // namespace pdiv
