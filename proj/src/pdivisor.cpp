#include "pdiv/pdivisor.hpp"

#include <algorithm>
#include <sstream>

#include "pdiv/error.hpp"

namespace pdiv {

namespace {

Int lcm_of_denominators(const QDivisor& d) {
  Int l = 1;
  for (const auto& [n, v] : d) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

}  // namespace

PDivisor::PDivisor(QCone omega, std::map<std::string, TailedPolyhedron> coefficients,
                   std::shared_ptr<const Variety> y)
    : omega_(std::move(omega)), coeffs_(std::move(coefficients)), y_(std::move(y)) {
  if (!y_) throw Error(ErrorKind::InvalidArgument, "p-divisor without a base variety");
  const QCone tail = dual_cone(omega_);
  for (const auto& [name, p] : coeffs_) {
    if (!y_->has_label(name))
      throw Error(ErrorKind::Semantic, "coefficient '" + name + "' is not a prime divisor of the " + y_->backend_name() + " base");
    if (p.ambient_dim() != omega_.ambient_dim())
      throw Error(ErrorKind::DimensionMismatch, "coefficient '" + name + "' has the wrong dimension");
    if (!(p.tail() == tail))
      throw Error(ErrorKind::Semantic, "coefficient '" + name + "' has tail cone different from the dual of the weight cone");
  }
}

QDivisor PDivisor::evaluate(const QVector& u) const {
  if (u.size() != rank()) throw Error(ErrorKind::DimensionMismatch, "evaluate: weight dimension");
  if (!omega_.contains(u)) throw Error(ErrorKind::WeightOutsideCone, "evaluate: weight " + to_string(u) + " outside the weight cone");
  QDivisor out;
  for (const auto& [name, p] : coeffs_) {
    const Rat v = p.support(u);
    if (v != 0) out[name] = v;
  }
  return out;
}

QDivisor PDivisor::evaluate(const IntVector& u) const { return evaluate(to_rational(u)); }

PDivisor PDivisor::restrict(const QCone& c) const {
  if (c.ambient_dim() != rank()) throw Error(ErrorKind::DimensionMismatch, "restrict: cone dimension");
  if (!omega_.contains(c)) throw Error(ErrorKind::NotSubcone, "restrict: cone is not contained in the weight cone");
  const QCone tail = dual_cone(c);
  std::map<std::string, TailedPolyhedron> out;
  for (const auto& [name, p] : coeffs_) out.emplace(name, TailedPolyhedron(p.vertices(), tail));
  return PDivisor(c, std::move(out), y_);
}

QDivisor LinearityDomain::evaluate_on_cell(std::size_t i, const QVector& u) const {
  QDivisor out;
  for (const auto& [name, v] : vertices.at(i)) {
    const Rat x = dot(v, u);
    if (x != 0) out[name] = x;
  }
  return out;
}

LinearityDomain linearity_subdivision(const PDivisor& d) {
  std::vector<PolyhedralSubdivision> fans;
  for (const auto& [name, p] : d.coefficients()) {
    auto fan = normal_fan(p);
    if (fan.cells.size() > 1) fans.push_back(std::move(fan));
  }
  LinearityDomain out;
  out.subdivision = common_refinement(fans, d.weight_cone());
  for (const auto& cell : out.subdivision.cells) {
    const QVector u = to_rational(cell.interior_point());
    std::map<std::string, QVector> verts;
    for (const auto& [name, p] : d.coefficients()) verts[name] = p.minimizing_vertex(u);
    out.vertices.push_back(std::move(verts));
  }
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Unverifiable: return "UNVERIFIABLE";
  }
  return "?";
}

bool ValidationReport::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.verdict == Verdict::Fail; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : checks) os << pdiv::to_string(c.verdict) << "  " << c.name << "  " << c.detail << "\n";
  return os.str();
}

ValidationReport validate(const PDivisor& d, int max_multiple) {
  ValidationReport r;
  const QCone& w = d.weight_cone();
  r.checks.push_back({"weight cone full-dimensional", w.is_full_dimensional() ? Verdict::Pass : Verdict::Fail, ""});
  r.checks.push_back({"weight cone pointed", w.is_pointed() ? Verdict::Pass : Verdict::Unverifiable, ""});
  const Variety& y = d.variety();
  const LinearityDomain lin = linearity_subdivision(d);
  for (const auto& ray : lin.subdivision.rays()) {
    const QDivisor base = d.evaluate(ray);
    const Int mu = lcm_of_denominators(base);
    Verdict v = Verdict::Fail;
    std::string detail = "no base point free multiple up to " + std::to_string(max_multiple) + "*" + mu.get_str();
    for (int m = 1; m <= max_multiple; ++m) {
      const Int k = mu * m;
      if (y.is_basepoint_free(scale(base, Rat(k)))) {
        v = Verdict::Pass;
        detail = "k = " + k.get_str();
        break;
      }
    }
    r.checks.push_back({"semiample at ray " + to_string(ray), v, detail});
  }
  for (const auto& cell : lin.subdivision.cells) {
    const IntVector u = cell.interior_point();
    const auto big = y.is_big(d.evaluate(u));
    const Verdict v = !big ? Verdict::Unverifiable : (*big ? Verdict::Pass : Verdict::Fail);
    r.checks.push_back({"big at " + to_string(u), v, to_string(d.evaluate(u))});
  }
  return r;
}

}  // namespace pdiv
