#include <algorithm>
#include <set>

#include "pdiv/error.hpp"
#include "pdiv/polyhedral.hpp"

namespace pdiv {

namespace {

bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// (R^T)^{-1} for a square integer matrix R given by rows.
QMatrix transposed_inverse(const std::vector<IntVector>& rays) {
  const std::size_t k = rays.size();
  QMatrix aug(k, QVector(2 * k, Rat(0)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = rays[j][i];
    aug[i][k + i] = 1;
  }
  rref(aug, 2 * k);
  QMatrix inv(k, QVector(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) inv[i][j] = aug[i][k + j];
  return inv;
}

Rat fractional_part(const Rat& q) {
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - Rat(fl);
}

std::vector<IntVector> hilbert_basis_full(const QCone& c) {
  const std::size_t k = c.ambient_dim();
  std::set<IntVector, decltype(&lex_less)> candidates(&lex_less);
  for (const auto& cell : triangulate(c).cells) {
    for (const auto& r : cell.rays()) candidates.insert(r);
    for (auto& p : parallelepiped_points(cell.rays()))
      if (!is_zero(p)) candidates.insert(std::move(p));
  }
  IntVector grading(k, Int(0));
  for (const auto& f : c.facets()) grading = add(grading, f);

  std::vector<std::pair<Int, IntVector>> order;
  for (const auto& x : candidates) order.emplace_back(dot(grading, x), x);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return lex_less(a.second, b.second);
  });

  std::vector<IntVector> basis;
  for (const auto& [g, x] : order) {
    bool reducible = false;
    for (const auto& h : basis) {
      if (c.contains(sub(x, h))) { reducible = true; break; }
    }
    if (!reducible) basis.push_back(x);
  }
  std::sort(basis.begin(), basis.end(), lex_less);
  return basis;
}

}  // namespace

std::vector<IntVector> parallelepiped_points(const std::vector<IntVector>& rays) {
  const std::size_t k = rays.size();
  if (k == 0) return {IntVector{}};
  const IntMatrix r = IntMatrix::from_rows(rays);
  const HermiteForm f = hnf(r);
  if (f.rank != k) throw Error(ErrorKind::InvalidArgument, "parallelepiped of a degenerate simplex");
  const QMatrix inv = transposed_inverse(rays);

  std::vector<Int> bounds(k);
  for (std::size_t i = 0; i < k; ++i) bounds[i] = f.H(i, i);

  std::vector<IntVector> out;
  IntVector x(k, Int(0));
  while (true) {
    QVector lambda(k, Rat(0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lambda[i] += inv[i][j] * x[j];
    QVector p(k, Rat(0));
    for (std::size_t i = 0; i < k; ++i) {
      const Rat fr = fractional_part(lambda[i]);
      if (fr == 0) continue;
      for (std::size_t j = 0; j < k; ++j) p[j] += fr * rays[i][j];
    }
    out.push_back(to_integral(p));

    std::size_t pos = 0;
    while (pos < k) {
      x[pos] += 1;
      if (x[pos] < bounds[pos]) break;
      x[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<IntVector> hilbert_basis(const QCone& c) {
  if (!c.is_pointed()) throw Error(ErrorKind::NonPointedCone, "hilbert_basis: cone has a lineality space");
  if (c.rays().empty()) return {};
  if (c.is_full_dimensional()) return hilbert_basis_full(c);

  // Work in a lattice basis of span(C) ∩ Z^n.
  const IntMatrix eq = IntMatrix::from_rows(c.equations(), c.ambient_dim());
  const std::vector<IntVector> basis = kernel_lattice(eq).row_vectors();
  std::vector<IntVector> coords;
  for (const auto& r : c.rays()) coords.push_back(*lattice_coordinates(r, basis));
  const QCone local = QCone::from_generators(basis.size(), coords);
  std::vector<IntVector> out;
  for (const auto& h : hilbert_basis_full(local)) {
    IntVector y(c.ambient_dim(), Int(0));
    for (std::size_t i = 0; i < basis.size(); ++i) y = add(y, scale(basis[i], h[i]));
    out.push_back(std::move(y));
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

}  // namespace pdiv
