#include <gtest/gtest.h>

#include <random>
#include <set>

#include "pdiv/cox.hpp"
#include "pdiv/error.hpp"
#include "support.hpp"

using namespace pdiv;
using namespace testing_support;

namespace {

const CoxSetup& setup() {
  static const CoxSetup s = CoxSetup::degree_five();
  return s;
}

const PDivisor& cox() {
  static const PDivisor d = build_cox_pdivisor(setup());
  return d;
}

const CoxRun& run() {
  static const CoxRun r = run_cox(setup());
  return r;
}

// Intersection form diag(1,-1,-1,-1,-1) on (H, E1..E4).
long meet(const std::vector<long>& a, const std::vector<long>& b) {
  long s = a[0] * b[0];
  for (int i = 1; i < 5; ++i) s -= a[i] * b[i];
  return s;
}

// D(u) straight from the intersection numbers.
QDivisor oracle(const std::vector<long>& u) {
  QDivisor out;
  const long h = meet({1, 0, 0, 0, 0}, u);
  if (h != 0) out["H"] = h;
  for (int i = 1; i <= 4; ++i) {
    std::vector<long> e(5, 0);
    e[i] = 1;
    const long m = std::min(0L, -meet(e, u));
    if (m != 0) out["E" + std::to_string(i)] = m;
  }
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      std::vector<long> e(5, 0);
      e[0] = 1;
      e[i] = -1;
      e[j] = -1;
      const long m = std::min(0L, meet(e, u));
      if (m != 0) out["E" + std::to_string(i) + std::to_string(j)] = m;
    }
  return out;
}

std::vector<long> random_weight(std::mt19937& rng, int spread) {
  static const long m[5][10] = {{0, 0, 0, 0, 1, 1, 1, 1, 1, 1},
                                {1, 0, 0, 0, -1, 0, 0, 0, -1, -1},
                                {0, 1, 0, 0, 0, 0, -1, -1, 0, -1},
                                {0, 0, 1, 0, 0, -1, 0, -1, -1, 0},
                                {0, 0, 0, 1, -1, -1, -1, 0, 0, 0}};
  std::uniform_real_distribution<double> r(0, 1);
  std::vector<long> u(5, 0);
  for (int j = 0; j < 10; ++j) {
    const double x = r(rng);
    const long c = static_cast<long>(spread * x * x * x);
    for (int i = 0; i < 5; ++i) u[i] += c * m[i][j];
  }
  return u;
}

IntVector to_iv(const std::vector<long>& u) {
  IntVector v;
  for (long x : u) v.emplace_back(x);
  return v;
}

}  // namespace

TEST(CoxSetup, HilbertBasisIsTheColumns) {
  const auto hb = hilbert_basis(setup().weight_cone());
  EXPECT_EQ(sorted(hb), sorted(setup().columns()));
  EXPECT_EQ(setup().weight_cone().rays().size(), 10u);
}

TEST(CoxSetup, ColumnsAreTheNegativeCurves) {
  std::set<IntVector> curves;
  for (const auto& [name, c] : setup().negative_curves()) curves.insert(c);
  const auto cols = setup().columns();
  EXPECT_EQ(curves, std::set<IntVector>(cols.begin(), cols.end()));
}

TEST(CoxPDivisor, ClassH) {
  EXPECT_EQ(cox().evaluate(iv({1, 0, 0, 0, 0})), (QDivisor{{"H", Rat(1)}}));
}

TEST(CoxPDivisor, ClassHMinusE1) {
  EXPECT_EQ(cox().evaluate(iv({1, -1, 0, 0, 0})), (QDivisor{{"H", Rat(1)}, {"E1", Rat(-1)}}));
}

TEST(CoxPDivisor, AgreesWithIntersectionNumbers) {
  std::mt19937 rng(11);
  for (int k = 0; k < 200; ++k) {
    const auto u = random_weight(rng, 6);
    EXPECT_EQ(cox().evaluate(to_iv(u)), oracle(u)) << to_string(to_iv(u));
  }
}

TEST(CoxPDivisor, ColumnsHaveClassZero) {
  const auto& y = cox().variety();
  for (const auto& c : setup().columns()) EXPECT_TRUE(is_zero(y.class_of(cox().evaluate(c)))) << to_string(c);
}

TEST(CoxPDivisor, OtherPointsRejected) {
  CoxSetup s = setup();
  s.points[3] = qv({1, 2, 3});
  EXPECT_THROW(build_cox_pdivisor(s), Error);
}

TEST(CoxSubdivision, LinearityCellsMatchSignVectors) {
  // Distinct sign patterns of u_i and u0 + u_i + u_j over sampled weights.
  std::mt19937 rng(5);
  std::set<std::vector<int>> seen;
  for (int k = 0; k < 200000; ++k) {
    const auto u = random_weight(rng, 1000);
    std::vector<int> s;
    for (int i = 1; i <= 4; ++i) s.push_back(u[i] > 0);
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j) s.push_back(u[0] + u[i] + u[j] > 0);
    seen.insert(s);
  }
  const auto lin = linearity_subdivision(cox());
  EXPECT_EQ(lin.subdivision.cells.size(), seen.size());
  EXPECT_EQ(lin.subdivision.cells.size(), 76u);
  EXPECT_EQ(lin.subdivision.rays().size(), 20u);
}

TEST(CoxSubdivision, LinearOnCells) {
  const auto lin = linearity_subdivision(cox());
  for (std::size_t i = 0; i < lin.subdivision.cells.size(); ++i) {
    for (const auto& r : lin.subdivision.cells[i].rays()) {
      const IntVector u = add(r, lin.subdivision.cells[i].interior_point());
      EXPECT_EQ(lin.evaluate_on_cell(i, to_rational(u)), cox().evaluate(u));
    }
  }
}

TEST(CoxSubdivision, HyperplaneCounts) {
  EXPECT_EQ(run().subdivision.cells.size(), 241u);
  EXPECT_EQ(run().rays.size(), 160u);
}

TEST(CoxSubdivision, HyperplanesDoNotCutCells) {
  std::set<std::vector<int>> patterns;
  for (const auto& cell : run().subdivision.cells) {
    std::vector<int> p;
    for (const auto& [name, c] : setup().negative_curves()) {
      int s = 0;
      for (const auto& r : cell.rays()) {
        const int v = sgn(dot(c, r));
        if (v != 0 && s != 0) ASSERT_EQ(v, s) << name;
        if (v != 0) s = v;
      }
      p.push_back(s);
    }
    patterns.insert(p);
  }
  EXPECT_EQ(patterns.size(), run().subdivision.cells.size());
}

TEST(CoxRays, ElevenClasses) {
  std::set<IntVector> got;
  for (const auto& c : run().classes) got.insert(c.cls);
  std::set<IntVector> want{iv({0, 0, 0, 0, 0}), iv({1, 0, 0, 0, 0}), iv({2, 0, 0, 0, 0})};
  for (int i = 1; i <= 4; ++i) {
    IntVector a = iv({1, 0, 0, 0, 0}), b = iv({2, 0, 0, 0, 0});
    a[i] = -1;
    b[i] = -2;
    want.insert(a);
    want.insert(b);
  }
  EXPECT_EQ(got, want);
}

TEST(CoxRays, ClassesAreBasePointFree) {
  for (const auto& rd : run().ray_data) EXPECT_EQ(rd.k, 1) << to_string(rd.ray);
}

TEST(CoxRays, ReducedToTwentyThree) {
  EXPECT_EQ(run().reduced_rays.size(), 23u);
  for (const auto& c : setup().columns())
    EXPECT_NE(std::find(run().reduced_rays.begin(), run().reduced_rays.end(), c), run().reduced_rays.end());
}

TEST(CoxRays, LoneClassZeroRayKept) {
  const IntVector t0 = setup().columns()[0];
  EXPECT_EQ(reduce_rays(cox(), {t0}, {t0}), std::vector<IntVector>{t0});
}

TEST(CoxRays, DiscardedRaysAreSpanned) {
  std::vector<GradedElement> pool;
  for (const auto& rd : run().ray_data)
    for (const auto& s : rd.basis.elements()) pool.push_back({s, scale(rd.ray, Int(rd.k))});
  ASSERT_EQ(pool.size(), 57u);
  GradedSpan span(cox(), pool);
  for (const auto& r : run().rays) EXPECT_EQ(span.dimension(r), span.full_dimension(r)) << to_string(r);
}

TEST(CoxRun, PoolOfFiftySeven) { EXPECT_EQ(run().pool_size, 57u); }

TEST(CoxRun, TenGenerators) {
  std::set<std::string> got;
  for (const auto& e : run().result.elements) got.insert(p_presentation(e, setup()));
  const std::set<std::string> want{"t0", "t1", "t2", "t3", "(x1 - x2)*h*t4", "(x0 - x1)*h*t5",
                                   "(x0 - x2)*h*t6", "x0*h*t7", "x1*h*t8", "x2*h*t9"};
  EXPECT_EQ(got, want);
}

TEST(CoxRun, GeneratorsAreSections) {
  for (const auto& e : run().result.elements) {
    EXPECT_TRUE(is_section(cox(), e));
    const auto cols = setup().columns();
    EXPECT_NE(std::find(cols.begin(), cols.end(), e.weight), cols.end());
  }
}

TEST(CoxRun, NoCompletionNeeded) {
  EXPECT_TRUE(run().completion.empty());
  EXPECT_TRUE(run().quotient_field.complete);
  EXPECT_TRUE(run().quotient_field.added.empty());
}

TEST(CoxRun, AlreadyNormal) {
  EXPECT_EQ(run().result.status, NormalizationStatus::Normal);
  EXPECT_TRUE(run().result.added.empty());
  EXPECT_TRUE(run().hilbert_in_columns);
}

TEST(CoxRun, MinorsCertificate) {
  EXPECT_TRUE(run().certificate.passed) << run().certificate.detail;
  EXPECT_EQ(run().certificate.minors.size(), 10u);
}

TEST(CoxRun, CertificateRejectsAlteredGenerator) {
  auto g = run().result.elements;
  for (auto& e : g)
    if (!e.section.numerator().is_constant()) {
      e.section = e.section * FunctionFieldElement(parse_poly("x0", setup().coordinates), parse_poly("x1", setup().coordinates));
      break;
    }
  EXPECT_FALSE(minors_certificate(g, setup()).passed);
}

TEST(CoxPresentation, ColumnMonomial) {
  std::mt19937 rng(3);
  const auto cols = setup().columns();
  for (int k = 0; k < 50; ++k) {
    const IntVector u = to_iv(random_weight(rng, 8));
    const auto e = column_monomial(u, cols);
    ASSERT_TRUE(e);
    IntVector w(5, Int(0));
    for (std::size_t j = 0; j < cols.size(); ++j) w = add(w, scale(cols[j], Int((*e)[j])));
    EXPECT_EQ(w, u);
  }
  EXPECT_FALSE(column_monomial(iv({-1, 0, 0, 0, 0}), cols));
}

TEST(CoxPresentation, ToricRelationsAreHomogeneous) {
  const auto k = kernel_lattice(setup().degrees);
  EXPECT_EQ(k.rows(), 5u);
  for (const auto& r : k.row_vectors()) EXPECT_TRUE(is_zero(setup().degrees * r));
  EXPECT_EQ(toric_relations(setup()).size(), 5u);
}
