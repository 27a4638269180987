#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "pdiv/error.hpp"
#include "pdiv/torus.hpp"

using namespace testing_support;

namespace {

QCone omega1() { return QCone::from_generators(2, {iv({0, 1}), iv({1, 1})}); }
QCone omega2() { return QCone::from_generators(2, {iv({-1, 1}), iv({0, 1})}); }

std::set<IntVector> as_set(const std::vector<IntVector>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Invariantize, FirstCell) {
  const PDivisor d = plane_example();
  const auto rep = invariantize_cell(d, omega1(), plane_fan());
  ASSERT_EQ(rep.cell_rays, (std::vector<IntVector>{iv({0, 1}), iv({1, 1})}));
  EXPECT_EQ(rep.twist[0], FunctionFieldElement(parse_poly("x*y*z", xyz()), parse_poly("(x-y)*(x-z)*(y-z)", xyz())));
  EXPECT_EQ(rep.twist[1], FunctionFieldElement::one(3));
  for (const auto& ell : rep.ell) EXPECT_EQ(ell, qv({-1, Rat(3, 2)}));
}

TEST(Invariantize, SecondCellIsMirror) {
  const PDivisor d = plane_example();
  const auto r1 = invariantize_cell(d, omega1(), plane_fan());
  const auto r2 = invariantize_cell(d, omega2(), plane_fan());
  for (const auto& ell : r2.ell) EXPECT_EQ(ell, qv({1, Rat(3, 2)}));
  for (long a = 0; a < 5; ++a)
    for (long b = 0; b < 5; ++b) {
      const IntVector u = iv({a, a + b}), mirrored = iv({-a, a + b});
      EXPECT_EQ(r1.delta[0].support(u), r2.delta[0].support(mirrored));
    }
}

TEST(Invariantize, InvariantDivisorNeedsNoTwist) {
  const QCone omega = plane_omega();
  std::map<std::string, TailedPolyhedron> c;
  c.emplace("D", TailedPolyhedron({qv({0, 1})}, dual_cone(omega1())));
  const PDivisor d(omega1(), c, plane());
  const auto rep = invariantize_cell(d, omega1(), plane_fan());
  for (const auto& s : rep.twist) EXPECT_EQ(s, FunctionFieldElement::one(3));
}

TEST(Invariantize, FractionalMovingPartFails) {
  std::map<std::string, TailedPolyhedron> c;
  c.emplace("E", TailedPolyhedron({qv({0, Rat(1, 2)})}, dual_cone(omega1())));
  const PDivisor d(omega1(), c, plane());
  try {
    invariantize_cell(d, omega1(), plane_fan());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotTMoveable);
  }
}

TEST(Upgrade, SigmaTildeMatchesPrintedMatrix) {
  const auto rep = invariantize_cell(plane_example(), omega1(), plane_fan());
  const QCone sigma = upgrade(rep, plane_fan());
  EXPECT_EQ(as_set(sigma.rays()), as_set(golden_sigma_tilde_rays()));
  EXPECT_EQ(as_set(hilbert_basis(dual_cone(sigma))), as_set(golden_sigma_tilde_dual_basis()));
}

TEST(Upgrade, TrivialActionKeepsCellDual) {
  const PDivisor d(omega1(), {}, std::make_shared<PointBase>());
  const auto rep = invariantize_cell(d, omega1(), DivisorialFanRecord{});
  EXPECT_EQ(upgrade(rep, DivisorialFanRecord{}), dual_cone(omega1()));
}

TEST(Upgrade, GradedDimensionsAgree) {
  const PDivisor d = plane_example();
  const auto rep = invariantize_cell(d, omega1(), plane_fan());
  const QCone dual = dual_cone(upgrade(rep, plane_fan()));
  std::mt19937 rng(9);
  std::uniform_int_distribution<long> k(0, 3);
  for (int t = 0; t < 10; ++t) {
    const long a = k(rng), b = k(rng);
    const IntVector u = iv({b, a + b});
    std::size_t count = 0;
    for (long w3 = -30; w3 <= 30; ++w3)
      for (long w4 = -30; w4 <= 30; ++w4)
        if (dual.contains(iv({b, a + b, w3, w4}))) ++count;
    EXPECT_EQ(count, d.variety().sections(floor(d.evaluate(u))).size()) << to_string(u);
  }
}

TEST(Downgrade, ElementsAreSections) {
  const PDivisor d = plane_example();
  const auto fan = plane_fan();
  const auto rep = invariantize_cell(d, omega1(), fan);
  const auto hb = hilbert_basis(dual_cone(upgrade(rep, fan)));
  const auto elems = downgrade_generators(hb, rep, fan, 3);
  ASSERT_EQ(elems.size(), hb.size());
  for (const auto& e : elems) EXPECT_TRUE(is_section(d, e)) << to_string(e, d.variety());
  // Removing the twist leaves the character of the M' part.
  for (std::size_t i = 0; i < hb.size(); ++i) {
    const auto coords = lattice_coordinates(elems[i].weight, rep.cell_rays);
    FunctionFieldElement s = elems[i].section;
    for (std::size_t k = 0; k < 2; ++k) s = s * rep.twist[k].pow(-static_cast<int>((*coords)[k].get_si()));
    EXPECT_EQ(s, fan.character(IntVector(hb[i].begin() + 2, hb[i].end()), 3));
  }
}

TEST(Downgrade, CoordinateChangeOfPrintedColumn) {
  const auto fan = plane_fan();
  const auto rep = invariantize_cell(plane_example(), omega1(), fan);
  const auto e = downgrade_generators({iv({0, 1, -1, -1})}, rep, fan, 3).front();
  // (x/z)^-1 (y/z)^-1 * xyz/f2 = z^3/f2.
  EXPECT_EQ(e.section, FunctionFieldElement(parse_poly("z^3", xyz()), parse_poly("(x-y)*(x-z)*(y-z)", xyz())));
}

TEST(RunTorus, PlaneExample) {
  const auto run = run_torus(plane_example(), plane_fan());
  EXPECT_EQ(run.subdivision.cells.size(), 2u);
  for (const auto& c : run.cells) EXPECT_EQ(c.hilbert.size(), 65u);
  EXPECT_EQ(run.elements.size(), 130u);
  std::set<IntVector> degrees;
  for (const auto& e : run.elements) degrees.insert(e.weight);
  EXPECT_EQ(degrees, (std::set<IntVector>{iv({0, 1}), iv({0, 2}), iv({-1, 1}), iv({1, 1}), iv({-1, 2}), iv({1, 2}),
                                          iv({-2, 2}), iv({2, 2})}));
}

TEST(RunTorus, PointBaseGivesHilbertBasis) {
  const QCone omega = QCone::from_generators(2, {iv({1, 0}), iv({1, 2})});
  const PDivisor d(omega, {}, std::make_shared<PointBase>());
  const auto run = run_torus(d, DivisorialFanRecord{});
  std::set<IntVector> w;
  for (const auto& e : run.elements) w.insert(e.weight);
  EXPECT_EQ(w, as_set(hilbert_basis(omega)));
}

TEST(RunTorus, RejectsBadFan) {
  DivisorialFanRecord f = plane_fan();
  f.rays[2] = iv({-1, 0});
  EXPECT_THROW(run_torus(plane_example(), f), Error);
  f = plane_fan();
  f.vertical.push_back({"P", qv({0, 0})});
  try {
    run_torus(plane_example(), f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedBase);
  }
}
