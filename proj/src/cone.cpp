#include <algorithm>
#include <set>
#include <utility>

#include "pdiv/error.hpp"
#include "pdiv/polyhedral.hpp"

namespace pdiv {

namespace {

struct Generators {
  std::vector<IntVector> rays;
  std::vector<IntVector> lineality;
};

bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void sort_unique(std::vector<IntVector>& v) {
  std::sort(v.begin(), v.end(), lex_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<IntVector> integral_basis(const QMatrix& rational_basis) {
  std::vector<IntVector> out;
  out.reserve(rational_basis.size());
  for (const auto& v : rational_basis) out.push_back(primitive(v));
  return out;
}

// Double description: generators of {x : A x >= 0, B x = 0}.
Generators double_description(std::size_t dim, const std::vector<IntVector>& inequalities,
                              const std::vector<IntVector>& equations) {
  QMatrix eq_rows;
  for (const auto& e : equations) eq_rows.push_back(to_rational(e));
  std::vector<IntVector> lin = integral_basis(nullspace(eq_rows, dim));

  struct Ray {
    IntVector v;
    std::vector<std::size_t> zeros;  // indices of processed inequalities tight at v
  };
  std::vector<Ray> rays;

  for (std::size_t k = 0; k < inequalities.size(); ++k) {
    const IntVector& a = inequalities[k];
    if (a.size() != dim) throw Error(ErrorKind::DimensionMismatch, "inequality dimension");

    std::size_t pick = lin.size();
    for (std::size_t i = 0; i < lin.size(); ++i)
      if (dot(a, lin[i]) != 0) { pick = i; break; }

    if (pick < lin.size()) {
      IntVector l0 = lin[pick];
      Int al0 = dot(a, l0);
      if (al0 < 0) { l0 = scale(l0, -1); al0 = -al0; }
      std::vector<IntVector> new_lin;
      for (std::size_t i = 0; i < lin.size(); ++i) {
        if (i == pick) continue;
        const Int ai = dot(a, lin[i]);
        new_lin.push_back(primitive(sub(scale(lin[i], al0), scale(l0, ai))));
      }
      for (auto& r : rays) {
        const Int ar = dot(a, r.v);
        if (ar != 0) r.v = primitive(sub(scale(r.v, al0), scale(l0, ar)));
        r.zeros.push_back(k);
      }
      std::vector<std::size_t> tight(k);
      for (std::size_t j = 0; j < k; ++j) tight[j] = j;
      rays.push_back(Ray{l0, std::move(tight)});
      lin = std::move(new_lin);
      continue;
    }

    std::vector<std::size_t> pos, neg;
    std::vector<Int> values(rays.size());
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      values[i] = dot(a, rays[i].v);
      if (values[i] > 0) pos.push_back(i);
      else if (values[i] < 0) neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i)
        if (values[i] == 0) rays[i].zeros.push_back(k);
      continue;
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (values[i] < 0) continue;
      Ray r = rays[i];
      if (values[i] == 0) r.zeros.push_back(k);
      next.push_back(std::move(r));
    }
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        std::vector<std::size_t> common;
        std::set_intersection(rays[p].zeros.begin(), rays[p].zeros.end(), rays[n].zeros.begin(),
                              rays[n].zeros.end(), std::back_inserter(common));
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (std::includes(rays[r].zeros.begin(), rays[r].zeros.end(), common.begin(), common.end()))
            adjacent = false;
        }
        if (!adjacent) continue;
        IntVector v = primitive(sub(scale(rays[n].v, values[p]), scale(rays[p].v, values[n])));
        common.push_back(k);
        next.push_back(Ray{std::move(v), std::move(common)});
      }
    }
    rays = std::move(next);
  }

  Generators out;
  for (auto& r : rays) out.rays.push_back(std::move(r.v));
  out.lineality = std::move(lin);
  return out;
}

// Projection of x onto the orthogonal complement of span(basis), made primitive.
IntVector project_out(const IntVector& x, const std::vector<IntVector>& basis) {
  if (basis.empty()) return primitive(x);
  const std::size_t k = basis.size();
  QMatrix gram(k, QVector(k));
  QVector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
    rhs[i] = dot(basis[i], x);
  }
  const auto coeff = solve(gram, rhs, k);
  QVector y = to_rational(x);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < y.size(); ++c) y[c] -= (*coeff)[i] * basis[i][c];
  return primitive(y);
}

std::vector<IntVector> canonical_subspace(const std::vector<IntVector>& basis, std::size_t dim) {
  if (basis.empty()) return {};
  return lattice_basis(basis, dim).row_vectors();
}

std::vector<IntVector> canonical_rays(const std::vector<IntVector>& rays,
                                      const std::vector<IntVector>& modulo) {
  std::vector<IntVector> out;
  for (const auto& r : rays) {
    IntVector p = project_out(r, modulo);
    if (!is_zero(p)) out.push_back(std::move(p));
  }
  sort_unique(out);
  return out;
}

}  // namespace

QCone QCone::from_generators(std::size_t dim, const std::vector<IntVector>& generators,
                             const std::vector<IntVector>& lineality) {
  for (const auto& g : generators)
    if (g.size() != dim) throw Error(ErrorKind::DimensionMismatch, "cone generator dimension");
  const Generators dual = double_description(dim, generators, lineality);
  QCone c;
  c.dim_ = dim;
  c.equations_ = canonical_subspace(dual.lineality, dim);
  c.facets_ = canonical_rays(dual.rays, c.equations_);
  const Generators primal = double_description(dim, c.facets_, c.equations_);
  c.lineality_ = canonical_subspace(primal.lineality, dim);
  c.rays_ = canonical_rays(primal.rays, c.lineality_);
  return c;
}

QCone QCone::from_inequalities(std::size_t dim, const std::vector<IntVector>& inequalities,
                               const std::vector<IntVector>& equations) {
  const Generators primal = double_description(dim, inequalities, equations);
  QCone c;
  c.dim_ = dim;
  c.lineality_ = canonical_subspace(primal.lineality, dim);
  c.rays_ = canonical_rays(primal.rays, c.lineality_);
  const Generators dual = double_description(dim, c.rays_, c.lineality_);
  c.equations_ = canonical_subspace(dual.lineality, dim);
  c.facets_ = canonical_rays(dual.rays, c.equations_);
  return c;
}

QCone QCone::full_space(std::size_t dim) { return from_inequalities(dim, {}); }

QCone QCone::origin(std::size_t dim) { return from_generators(dim, {}); }

QCone QCone::orthant(std::size_t dim) {
  std::vector<IntVector> units;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector e(dim, Int(0));
    e[i] = 1;
    units.push_back(std::move(e));
  }
  return from_generators(dim, units);
}

bool QCone::contains(const IntVector& x) const {
  if (x.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "QCone::contains");
  for (const auto& e : equations_)
    if (dot(e, x) != 0) return false;
  for (const auto& f : facets_)
    if (dot(f, x) < 0) return false;
  return true;
}

bool QCone::contains(const QVector& x) const {
  if (x.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "QCone::contains");
  for (const auto& e : equations_)
    if (dot(x, e) != 0) return false;
  for (const auto& f : facets_)
    if (dot(x, f) < 0) return false;
  return true;
}

bool QCone::contains(const QCone& other) const {
  for (const auto& r : other.rays_)
    if (!contains(r)) return false;
  for (const auto& l : other.lineality_) {
    if (!contains(l)) return false;
    if (!contains(scale(l, -1))) return false;
  }
  return true;
}

bool QCone::in_relative_interior(const IntVector& x) const {
  return in_relative_interior(to_rational(x));
}

bool QCone::in_relative_interior(const QVector& x) const {
  for (const auto& e : equations_)
    if (dot(x, e) != 0) return false;
  for (const auto& f : facets_)
    if (dot(x, f) <= 0) return false;
  return true;
}

IntVector QCone::interior_point() const {
  IntVector s(dim_, Int(0));
  for (const auto& r : rays_) s = add(s, r);
  return s;
}

QCone QCone::intersect(const QCone& other) const {
  std::vector<IntVector> ineq = facets_;
  ineq.insert(ineq.end(), other.facets_.begin(), other.facets_.end());
  std::vector<IntVector> eq = equations_;
  eq.insert(eq.end(), other.equations_.begin(), other.equations_.end());
  return from_inequalities(dim_, ineq, eq);
}

QCone QCone::face(const IntVector& normal) const {
  std::vector<IntVector> eq = equations_;
  eq.push_back(normal);
  return from_inequalities(dim_, facets_, eq);
}

bool operator<(const QCone& a, const QCone& b) {
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
  if (a.rays_ != b.rays_)
    return std::lexicographical_compare(a.rays_.begin(), a.rays_.end(), b.rays_.begin(), b.rays_.end(),
                                        lex_less);
  return std::lexicographical_compare(a.lineality_.begin(), a.lineality_.end(), b.lineality_.begin(),
                                      b.lineality_.end(), lex_less);
}

QCone dual_cone(const QCone& c) {
  QCone d;
  d.dim_ = c.dim_;
  d.rays_ = c.facets_;
  d.lineality_ = c.equations_;
  d.facets_ = c.rays_;
  d.equations_ = c.lineality_;
  return d;
}

Int multiplicity(const QCone& simplicial) {
  if (!simplicial.is_simplicial() || !simplicial.is_full_dimensional())
    throw Error(ErrorKind::InvalidArgument, "multiplicity needs a full-dimensional simplicial cone");
  return abs(determinant(IntMatrix::from_rows(simplicial.rays())));
}

}  // namespace pdiv
