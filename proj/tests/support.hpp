#pragma once

#include <algorithm>
#include <initializer_list>
#include <random>
#include <set>
#include <vector>

#include "pdiv/exact_linalg.hpp"
#include "pdiv/polyhedral.hpp"

namespace testing_support {

using namespace pdiv;

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline QVector qv(std::initializer_list<Rat> xs) { return QVector(xs); }

inline IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> r;
  for (auto row : rows) r.push_back(iv(row));
  return IntMatrix::from_rows(r);
}

inline std::vector<IntVector> sorted(std::vector<IntVector> v) {
  std::sort(v.begin(), v.end(), [](const IntVector& a, const IntVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return v;
}

// Minimal generators of C ∩ Z^n by exhaustive enumeration of all lattice
// points up to a degree bound that covers every Hilbert basis element.
// Independent of the triangulation code: the bound is the sum of the ray
// degrees, and irreducibility is decided by closing the semigroup degree by
// degree.
inline std::vector<IntVector> brute_force_hilbert_basis(const QCone& c) {
  const std::size_t n = c.ambient_dim();
  IntVector g(n, Int(0));
  for (const auto& f : c.facets()) g = add(g, f);
  Int bound = 0;
  for (const auto& r : c.rays()) bound += dot(g, r);

  // Bounding box of {x in C : g.x <= bound} from the scaled rays.
  std::vector<Int> lo(n, Int(0)), hi(n, Int(0));
  for (const auto& r : c.rays()) {
    const Int d = dot(g, r);
    for (std::size_t i = 0; i < n; ++i) {
      Rat t = Rat(r[i] * bound, d);
      Int fl, cl;
      mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
      mpz_cdiv_q(cl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
      lo[i] = std::min(lo[i], fl);
      hi[i] = std::max(hi[i], cl);
    }
  }

  std::vector<std::pair<Int, IntVector>> points;
  IntVector x = lo;
  while (true) {
    if (!is_zero(x) && c.contains(x)) {
      const Int d = dot(g, x);
      if (d <= bound) points.emplace_back(d, x);
    }
    std::size_t pos = 0;
    while (pos < n) {
      if (++x[pos] <= hi[pos]) break;
      x[pos] = lo[pos];
      ++pos;
    }
    if (pos == n) break;
  }
  std::sort(points.begin(), points.end());

  std::set<IntVector> sums;
  std::vector<IntVector> basis;
  for (const auto& [d, p] : points) {
    if (!sums.count(p)) basis.push_back(p);
    for (const auto& h : basis) {
      IntVector s = add(p, h);
      if (dot(g, s) <= bound) sums.insert(std::move(s));
    }
  }
  return sorted(basis);
}

inline QCone random_pointed_cone(std::mt19937& rng, std::size_t dim) {
  std::uniform_int_distribution<long> d(-5, 5);
  std::uniform_int_distribution<std::size_t> count(dim, dim + 1);
  while (true) {
    std::vector<IntVector> gens(count(rng));
    for (auto& v : gens) {
      v.assign(dim, Int(0));
      for (auto& x : v) x = d(rng);
    }
    if (std::any_of(gens.begin(), gens.end(), [](const IntVector& v) { return is_zero(v); })) continue;
    QCone c = QCone::from_generators(dim, gens);
    if (c.is_pointed() && c.is_full_dimensional()) return c;
  }
}

// Columns of the three printed matrices: Hilbert basis of the dual of the
// lifted cone in the torus example, as (w1, w2, w3, w4).
inline std::vector<IntVector> golden_sigma_tilde_dual_basis() {
  const std::vector<std::vector<long>> rows1 = {
      {0, 2, 1, 0, 2, 1, 0, 2, 1, 0, 0, 0, 2, 1, 0, 2, 1, 0, 0, 0, 0},
      {1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 2, 2, 2, 2, 2, 2, 1, 1, 1},
      {-1, -1, -2, -3, 0, -1, -2, -1, -2, -3, 0, -1, 1, 0, -1, -1, -2, -3, 1, 0, -1},
      {-1, -1, -2, -3, -1, -2, -3, 0, -1, -2, -1, 0, -1, -2, -3, 1, 0, -1, -1, 0, 1}};
  const std::vector<std::vector<long>> rows2 = {
      {2, 2, 2, 1, 0, 2, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 1},
      {2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
      {1, 0, 2, 1, 0, -1, -2, -3, 2, 1, 0, -1, 2, 1, -2, -3, 3, 2, -2, -3, 3, 2},
      {0, 1, -1, -2, -3, 2, 1, 0, -1, 0, 1, 2, -2, -3, 2, 1, -2, -3, 3, 2, -1, 0}};
  const std::vector<std::vector<long>> rows3 = {
      {1, 1, 1, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
      {0, 1, 0, -1, 4, 3, -2, -3, 4, -3, 5, -3, 5, 4, 3, 2, 1, 0, -1, -2, 6, -3},
      {0, 1, 2, 3, -2, -3, 4, 3, -3, 4, -3, 5, -2, -1, 0, 1, 2, 3, 4, 5, -3, 6}};
  std::vector<IntVector> cols;
  for (const auto* rows : {&rows1, &rows2, &rows3})
    for (std::size_t j = 0; j < (*rows)[0].size(); ++j)
      cols.push_back(IntVector{Int((*rows)[0][j]), Int((*rows)[1][j]), Int((*rows)[2][j]), Int((*rows)[3][j])});
  return cols;
}

// Columns of the printed 4x5 generator matrix of the lifted cone.
inline std::vector<IntVector> golden_sigma_tilde_rays() {
  return {iv({-1, 1, 0, 0}), iv({1, 0, 0, 0}), iv({-2, 3, 2, 0}), iv({-2, 3, 0, 2}), iv({-2, 3, -2, -2})};
}

}  // namespace testing_support
