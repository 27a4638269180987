#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "pdiv/error.hpp"
#include "pdiv/generators.hpp"

using namespace testing_support;

namespace {

GradedElement chi(IntVector w) { return {FunctionFieldElement::one(0), std::move(w)}; }

PDivisor point_divisor(const QCone& omega) {
  return PDivisor(omega, {}, std::make_shared<PointBase>());
}

const std::vector<std::string> st{"s", "t"};

// P^1 with D(u) = a u V(s) + b u V(t), weight cone Q>=0.
PDivisor line_divisor(Rat a, Rat b) {
  auto y = std::make_shared<ProjectiveSpace>(
      st, std::vector<std::pair<std::string, Poly>>{{"P", parse_poly("s", st)}, {"Q", parse_poly("t", st)}});
  const QCone omega = QCone::from_generators(1, {iv({1})});
  std::map<std::string, TailedPolyhedron> c;
  c.emplace("P", TailedPolyhedron({qv({a})}, dual_cone(omega)));
  c.emplace("Q", TailedPolyhedron({qv({b})}, dual_cone(omega)));
  return PDivisor(omega, std::move(c), y);
}

std::vector<IntVector> weights_of(const std::vector<GradedElement>& l) {
  std::vector<IntVector> w;
  for (const auto& e : l) w.push_back(e.weight);
  return sorted(w);
}

const GeneralRun& plane_run() {
  static const PDivisor d = plane_example();
  static const GeneralRun run = run_general(d);
  return run;
}

}  // namespace

TEST(FindK, PlaneRaysNeedTwo) {
  const PDivisor d = plane_example();
  for (const auto& [ray, dim] : std::vector<std::pair<IntVector, std::size_t>>{
           {iv({-1, 1}), 10}, {iv({0, 1}), 55}, {iv({1, 1}), 10}}) {
    const RayData r = find_k_rho(d, ray);
    EXPECT_EQ(r.k, 2);
    EXPECT_EQ(r.basis.size(), dim);
  }
}

TEST(FindK, IntegralRayNeedsOne) {
  const RayData r = find_k_rho(line_divisor(1, 0), iv({1}));
  EXPECT_EQ(r.k, 1);
  EXPECT_EQ(r.basis.size(), 2u);
}

TEST(FindK, ThirdOfAPointNeedsThree) {
  const RayData r = find_k_rho(line_divisor(Rat(1, 3), 0), iv({1}));
  EXPECT_EQ(r.k, 3);
  EXPECT_EQ(r.basis.size(), 2u);
}

TEST(FindK, CapIsEnforced) {
  try {
    find_k_rho(line_divisor(-1, 0), iv({1}), 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IterationLimitExceeded);
  }
}

TEST(Pool, PlaneExampleHas75PlusTwo) {
  const PDivisor d = plane_example();
  std::vector<RayData> rays;
  const auto pool = zariski_pool(d, linearity_subdivision(d), rays);
  EXPECT_EQ(pool.size(), 75u);
  EXPECT_EQ(rays.size(), 3u);
  for (const auto& e : pool) EXPECT_TRUE(is_section(d, e));
  const auto added = weight_lattice_completion(d, pool);
  EXPECT_EQ(weights_of(added), (std::vector<IntVector>{iv({0, 1}), iv({1, 1})}));
  for (const auto& e : added) EXPECT_EQ(e.section, FunctionFieldElement::one(3));
}

TEST(Pool, PointBaseOrthantGivesUnitCharacters) {
  const PDivisor d = point_divisor(QCone::orthant(2));
  std::vector<RayData> rays;
  const auto pool = zariski_pool(d, linearity_subdivision(d), rays);
  EXPECT_EQ(weights_of(pool), (std::vector<IntVector>{iv({0, 1}), iv({1, 0})}));
}

TEST(Completion, BasisInsidePlaneCone) {
  EXPECT_EQ(completion_basis(plane_omega()), (std::vector<IntVector>{iv({0, 1}), iv({1, 1})}));
  for (unsigned seed = 0; seed < 10; ++seed) {
    std::mt19937 rng(seed);
    const QCone c = QCone::from_generators(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 3})});
    const auto b = completion_basis(c);
    ASSERT_EQ(b.size(), 3u);
    EXPECT_EQ(abs(determinant(IntMatrix::from_rows(b))), 1);
    for (const auto& v : b) EXPECT_TRUE(c.contains(v));
  }
}

TEST(Completion, NothingToAddWhenWeightsSpan) {
  const PDivisor d = point_divisor(QCone::orthant(2));
  EXPECT_TRUE(weight_lattice_completion(d, {chi(iv({1, 0})), chi(iv({0, 1}))}).empty());
}

TEST(Completion, StopsOnceGcdIsOne) {
  // floor D(j) has degree -1, 0, 1 for j = 1, 2, 3.
  const PDivisor d = line_divisor(Rat(2, 3), Rat(-1, 3));
  EXPECT_EQ(d.variety().sections(floor(d.evaluate(iv({1})))).size(), 0u);
  const auto added = weight_lattice_completion(d, {});
  EXPECT_EQ(weights_of(added), (std::vector<IntVector>{iv({2}), iv({3})}));
}

TEST(QuotientField, PlanePoolIsComplete) {
  const auto& run = plane_run();
  EXPECT_TRUE(run.quotient_field.complete);
  EXPECT_TRUE(run.quotient_field.added.empty());
  EXPECT_EQ(run.quotient_field.witness.size(), 2u);
}

TEST(QuotientField, PointBaseNeedsNothing) {
  const PDivisor d = point_divisor(QCone::orthant(2));
  const auto r = quotient_field_complete(d, {chi(iv({1, 0})), chi(iv({0, 1}))});
  EXPECT_TRUE(r.complete);
  EXPECT_TRUE(r.added.empty());
}

TEST(QuotientField, RatioOfTwoSections) {
  const PDivisor d = line_divisor(0, 1);
  const std::vector<GradedElement> l{{FunctionFieldElement(parse_poly("s", st), parse_poly("t", st)), iv({1})},
                                     {FunctionFieldElement::one(2), iv({1})}};
  const auto r = quotient_field_complete(d, l);
  ASSERT_TRUE(r.complete);
  EXPECT_TRUE(r.added.empty());
  ASSERT_EQ(r.witness.size(), 1u);
  EXPECT_NE(r.witness[0].find("s/t"), std::string::npos);
}

TEST(Reduce, MonomialAlgebraDropsProduct) {
  const PDivisor d = point_divisor(QCone::orthant(2));
  const auto out = reduce_generators(d, {chi(iv({1, 0})), chi(iv({0, 1})), chi(iv({1, 1}))});
  EXPECT_EQ(weights_of(out), (std::vector<IntVector>{iv({0, 1}), iv({1, 0})}));
}

TEST(Reduce, DuplicateRemoved) {
  const PDivisor d = point_divisor(QCone::orthant(2));
  const auto out = reduce_generators(d, {chi(iv({1, 0})), chi(iv({1, 0})), chi(iv({0, 1}))});
  EXPECT_EQ(out.size(), 2u);
}

TEST(Normalize, PointBaseSaturates) {
  const PDivisor d = point_divisor(QCone::from_generators(2, {iv({1, 0}), iv({1, 2})}));
  const auto g = normalize_or_export(d, {chi(iv({1, 0})), chi(iv({1, 2}))});
  EXPECT_EQ(g.status, NormalizationStatus::SaturatedToric);
  EXPECT_EQ(weights_of(g.added), (std::vector<IntVector>{iv({1, 1})}));
  EXPECT_EQ(weights_of(g.elements), (std::vector<IntVector>{iv({1, 0}), iv({1, 1}), iv({1, 2})}));
}

TEST(General, PlaneExample) {
  const auto& run = plane_run();
  EXPECT_EQ(run.linearity.subdivision.cells.size(), 2u);
  EXPECT_EQ(run.pool_size + run.completion.size(), 77u);
  EXPECT_EQ(run.raw_size, 77u);
  EXPECT_LE(run.pruned_size, 77u);
  EXPECT_EQ(run.result.status, NormalizationStatus::ExportedForNormalization);
  EXPECT_FALSE(run.result.presentation.empty());
}

TEST(General, ListedGeneratorsAreMembers) {
  const PDivisor d = plane_example();
  GradedSpan span(d, plane_run().result.elements);
  for (const auto& e : listed_thirteen()) {
    ASSERT_TRUE(is_section(d, e)) << to_string(e, d.variety());
    EXPECT_TRUE(span.contains(e)) << to_string(e, d.variety());
  }
}

TEST(General, OutputIsClosedAndSpansM) {
  const PDivisor d = plane_example();
  const auto& l = plane_run().result.elements;
  for (const auto& e : l) EXPECT_TRUE(is_section(d, e));
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, l.size() - 1);
  for (int t = 0; t < 20; ++t) {
    const auto& a = l[pick(rng)];
    const auto& b = l[pick(rng)];
    EXPECT_TRUE(is_section(d, {a.section * b.section, add(a.weight, b.weight)}));
  }
  std::vector<IntVector> w;
  for (const auto& e : l) w.push_back(e.weight);
  EXPECT_EQ(lattice_basis(w, 2), IntMatrix::identity(2));
}

TEST(General, Deterministic) {
  const PDivisor d = plane_example();
  const auto again = run_general(d);
  const auto& first = plane_run().result.elements;
  ASSERT_EQ(again.result.elements.size(), first.size());
  for (std::size_t i = 0; i < first.size(); ++i)
    EXPECT_EQ(to_string(again.result.elements[i], d.variety()), to_string(first[i], d.variety()));
  EXPECT_EQ(again.result.presentation, plane_run().result.presentation);
}

TEST(General, ThreadCountDoesNotChangeThePool) {
  const PDivisor d = plane_example();
  const LinearityDomain lin = linearity_subdivision(d);
  std::vector<RayData> r1, r3;
  EngineOptions opt;
  const auto one = zariski_pool(d, lin, r1, opt);
  opt.threads = 3;
  const auto three = zariski_pool(d, lin, r3, opt);
  ASSERT_EQ(one.size(), three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].weight, three[i].weight);
    EXPECT_EQ(one[i].section, three[i].section);
  }
}

TEST(General, PointBaseMatchesHilbertBasis) {
  std::mt19937 rng(3);
  for (int t = 0; t < 8; ++t) {
    const QCone c = random_pointed_cone(rng, 2 + t % 2);
    if (!c.is_full_dimensional()) continue;
    const auto run = run_general(point_divisor(c));
    EXPECT_EQ(weights_of(run.result.elements), hilbert_basis(c));
  }
}
