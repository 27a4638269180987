#pragma once

#include <memory>

#include "pdiv/generators.hpp"
#include "pdiv/pdivisor.hpp"
#include "pdiv/torus.hpp"
#include "support.hpp"

namespace testing_support {

inline const std::vector<std::string>& xyz() {
  static const std::vector<std::string> names{"x", "y", "z"};
  return names;
}

inline std::shared_ptr<const ProjectiveSpace> plane() {
  return std::make_shared<ProjectiveSpace>(
      xyz(), std::vector<std::pair<std::string, Poly>>{{"D", parse_poly("x*y*z", xyz())},
                                                       {"E", parse_poly("(y-z)*(x-z)*(x-y)", xyz())}});
}

inline QCone plane_omega() { return QCone::from_generators(2, {iv({-1, 1}), iv({1, 1})}); }

// D(u) = u2/2 D + (u2 - |u1|) E on pos{(-1,1),(1,1)}.
inline PDivisor plane_example() {
  const QCone omega = plane_omega();
  const QCone tail = dual_cone(omega);
  std::map<std::string, TailedPolyhedron> c;
  c.emplace("D", TailedPolyhedron({qv({0, Rat(1, 2)})}, tail));
  c.emplace("E", TailedPolyhedron({qv({-1, 1}), qv({1, 1})}, tail));
  return PDivisor(omega, std::move(c), plane());
}

// Torus acting on the plane by scaling x and y against z.
inline DivisorialFanRecord plane_fan() {
  DivisorialFanRecord f;
  f.rank = 2;
  f.rays = {iv({1, 0}), iv({0, 1}), iv({-1, -1})};
  return f;
}

inline GradedElement plane_element(const std::string& num, const std::string& den, IntVector w) {
  return {FunctionFieldElement(parse_poly(num, xyz()), parse_poly(den, xyz())), std::move(w)};
}

// The thirteen generators listed for the plane example.
inline std::vector<GradedElement> listed_thirteen() {
  const std::string f1 = "x*y*z", f12 = "x*y*z*((y-z)*(x-z)*(x-y))^2";
  auto e = plane_element;
  return {e("x^3", f1, iv({-2, 2})),   e("y^3", f1, iv({-2, 2})), e("z^3", f1, iv({-2, 2})),
          e("x^9", f12, iv({0, 2})),   e("y^9", f12, iv({0, 2})), e("z^9", f12, iv({0, 2})),
          e("x^3", f1, iv({2, 2})),    e("y^3", f1, iv({2, 2})),  e("z^3", f1, iv({2, 2})),
          e("1", "1", iv({0, 1})),     e("1", "1", iv({1, 1})),   e("x^2*y", f1, iv({-2, 2})),
          e("x*y^2", f1, iv({-2, 2}))};
}

}  // namespace testing_support
