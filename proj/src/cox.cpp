#include "pdiv/cox.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "pdiv/error.hpp"

namespace pdiv {

namespace {

QVector qv(std::initializer_list<int> xs) {
  QVector v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

IntVector unit(std::size_t n, std::initializer_list<std::size_t> idx) {
  IntVector v(n, Int(0));
  for (auto i : idx) v[i] = 1;
  return v;
}

// The section written as p / (c f^k) -> (p / c, k), if it has that shape.
std::optional<std::pair<Poly, int>> over_f_power(const FunctionFieldElement& s, const Poly& f,
                                                 const std::vector<Poly>& atoms) {
  const FunctionFieldElement t = s.simplified(atoms);
  Poly den = t.denominator();
  int k = 0;
  while (den.degree() > 0) {
    auto q = den.divide(f);
    if (!q) return std::nullopt;
    den = std::move(*q);
    ++k;
  }
  return std::make_pair(t.numerator() * (Rat(1) / den.leading_coefficient()), k);
}

std::string t_monomial(const std::vector<int>& e) {
  std::string out;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) continue;
    if (!out.empty()) out += "*";
    out += "t" + std::to_string(j);
    if (e[j] > 1) out += "^" + std::to_string(e[j]);
  }
  return out.empty() ? "1" : out;
}

Poly det3(const std::vector<std::vector<Poly>>& c) {
  // c[j] is the j-th column.
  return c[0][0] * (c[1][1] * c[2][2] - c[1][2] * c[2][1]) - c[1][0] * (c[0][1] * c[2][2] - c[0][2] * c[2][1]) +
         c[2][0] * (c[0][1] * c[1][2] - c[0][2] * c[1][1]);
}

}  // namespace

CoxSetup CoxSetup::degree_five() {
  CoxSetup s;
  s.points = {qv({1, 0, 0}), qv({0, 1, 0}), qv({0, 0, 1}), qv({1, 1, 1})};
  s.hyperplane = parse_poly("x0 - x1 + x2", s.coordinates);
  s.degrees = IntMatrix::from_rows({
      {0, 0, 0, 0, 1, 1, 1, 1, 1, 1},
      {1, 0, 0, 0, -1, 0, 0, 0, -1, -1},
      {0, 1, 0, 0, 0, 0, -1, -1, 0, -1},
      {0, 0, 1, 0, 0, -1, 0, -1, -1, 0},
      {0, 0, 0, 1, -1, -1, -1, 0, 0, 0},
  });
  return s;
}

std::vector<IntVector> CoxSetup::columns() const {
  std::vector<IntVector> out;
  for (std::size_t j = 0; j < degrees.cols(); ++j) out.push_back(degrees.column(j));
  return out;
}

QCone CoxSetup::weight_cone() const { return QCone::from_generators(degrees.rows(), columns()); }

std::shared_ptr<const BlowupOfP2> CoxSetup::variety() const {
  return std::make_shared<BlowupOfP2>(coordinates, points,
                                      std::vector<std::pair<std::string, Poly>>{{hyperplane_label, hyperplane}});
}

std::vector<std::pair<std::string, IntVector>> CoxSetup::negative_curves() const {
  std::vector<std::pair<std::string, IntVector>> out;
  const std::size_t n = points.size() + 1;
  for (std::size_t i = 0; i < points.size(); ++i) out.emplace_back(BlowupOfP2::exceptional(i), unit(n, {i + 1}));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      IntVector c(n, Int(0));
      c[0] = 1;
      c[i + 1] = -1;
      c[j + 1] = -1;
      out.emplace_back(BlowupOfP2::line(i, j), c);
    }
  return out;
}

PDivisor build_cox_pdivisor(const CoxSetup& setup) {
  const CoxSetup fixed = CoxSetup::degree_five();
  if (setup.points != fixed.points)
    throw Error(ErrorKind::InvalidArgument, "the Cox p-divisor is only built for the points [1:0:0], [0:1:0], [0:0:1], [1:1:1]");
  if (setup.degrees.rows() != 5) throw Error(ErrorKind::DimensionMismatch, "degree matrix must have 5 rows");
  const QCone omega = setup.weight_cone();
  const QCone tail = dual_cone(omega);
  const QVector zero(5, Rat(0));
  std::map<std::string, TailedPolyhedron> c;
  c.emplace(setup.hyperplane_label, TailedPolyhedron::point(qv({1, 0, 0, 0, 0}), tail));
  // min(0, -E.d(u)) for E = E_i and min(0, E.d(u)) for E = E_ij, written as
  // min over conv{0, v} with <v, u> the intersection number.
  for (const auto& [name, cls] : setup.negative_curves()) {
    QVector v(5, Rat(0));
    if (cls[0] == 0) {
      for (std::size_t i = 1; i < 5; ++i) v[i] = Rat(cls[i]);
    } else {
      v[0] = 1;
      for (std::size_t i = 1; i < 5; ++i) v[i] = Rat(-cls[i]);
    }
    c.emplace(name, TailedPolyhedron({zero, v}, tail));
  }
  return PDivisor(omega, std::move(c), setup.variety());
}

PolyhedralSubdivision cox_hyperplane_subdivision(const CoxSetup& setup) {
  const std::size_t n = setup.degrees.rows();
  std::vector<PolyhedralSubdivision> halves;
  for (const auto& [name, cls] : setup.negative_curves()) {
    const QCone full = QCone::full_space(n);
    halves.push_back({full, {QCone::from_inequalities(n, {cls}), QCone::from_inequalities(n, {scale(cls, Int(-1))})}});
  }
  return common_refinement(halves, setup.weight_cone());
}

std::vector<IntVector> reduce_rays(const PDivisor& d, const std::vector<IntVector>& rays,
                                   const std::vector<IntVector>& candidates) {
  const Variety& y = d.variety();
  std::map<IntVector, IntVector> cache;
  auto cls = [&](const IntVector& u) -> const IntVector& {
    auto it = cache.find(u);
    if (it == cache.end()) it = cache.emplace(u, y.class_of(d.evaluate(u))).first;
    return it->second;
  };
  const std::set<IntVector> pool(candidates.begin(), candidates.end());
  std::vector<IntVector> zero;
  for (const auto& c : pool)
    if (!is_zero(c) && is_zero(cls(c))) zero.push_back(c);

  std::vector<IntVector> kept;
  for (const auto& u2 : rays) {
    const IntVector target = cls(u2);
    std::set<IntVector> seen{u2};
    std::vector<IntVector> stack{u2};
    bool reducible = false;
    while (!stack.empty() && !reducible) {
      const IntVector u = stack.back();
      stack.pop_back();
      for (const auto& a : zero) {
        IntVector v = sub(u, a);
        if (is_zero(v) || seen.count(v) || !d.weight_cone().contains(v) || cls(v) != target) continue;
        if (pool.count(v)) {
          reducible = true;
          break;
        }
        seen.insert(v);
        stack.push_back(std::move(v));
      }
    }
    if (!reducible) kept.push_back(u2);
  }
  return kept;
}

std::optional<std::vector<int>> column_monomial(const IntVector& u, const std::vector<IntVector>& columns) {
  if (columns.empty()) return std::nullopt;
  const std::size_t n = u.size();
  const QCone cone = QCone::from_generators(n, columns);
  if (!cone.contains(u)) return std::nullopt;
  IntVector grade(n, Int(0));
  for (const auto& f : cone.facets()) grade = add(grade, f);
  std::set<IntVector> dead;
  std::vector<int> e(columns.size(), 0);
  std::function<bool(const IntVector&)> go = [&](const IntVector& v) {
    if (is_zero(v)) return true;
    if (dead.count(v) || dot(grade, v) <= 0) return false;
    for (std::size_t j = 0; j < columns.size(); ++j) {
      const IntVector w = sub(v, columns[j]);
      if (!cone.contains(w)) continue;
      ++e[j];
      if (go(w)) return true;
      --e[j];
    }
    dead.insert(v);
    return false;
  };
  if (!go(u)) return std::nullopt;
  return e;
}

std::string p_presentation(const GradedElement& e, const CoxSetup& setup) {
  const auto y = setup.variety();
  const auto mono = column_monomial(e.weight, setup.columns());
  const std::string t = mono ? t_monomial(*mono) : "chi^" + to_string(e.weight);
  const auto pk = over_f_power(e.section, setup.hyperplane, y->atoms());
  if (!pk) return "(" + e.section.simplified(y->atoms()).to_string(setup.coordinates) + ")*" + t;
  const auto& [p, k] = *pk;
  std::string coeff;
  if (!p.is_constant() || p.leading_coefficient() != 1) {
    coeff = p.is_monomial() ? p.to_string(setup.coordinates) : "(" + p.to_string(setup.coordinates) + ")";
  }
  if (k > 0) coeff += std::string(coeff.empty() ? "" : "*") + "h" + (k > 1 ? "^" + std::to_string(k) : "");
  if (coeff.empty()) return t;
  return t == "1" ? coeff : coeff + "*" + t;
}

std::vector<std::string> toric_relations(const CoxSetup& setup) {
  std::vector<std::string> out;
  for (const auto& k : kernel_lattice(setup.degrees).row_vectors()) {
    std::vector<int> plus(k.size(), 0), minus(k.size(), 0);
    for (std::size_t j = 0; j < k.size(); ++j) {
      const long v = k[j].get_si();
      (v > 0 ? plus[j] : minus[j]) = static_cast<int>(v > 0 ? v : -v);
    }
    out.push_back(t_monomial(plus) + " - " + t_monomial(minus));
  }
  return out;
}

MinorsCertificate minors_certificate(const std::vector<GradedElement>& generators, const CoxSetup& setup) {
  MinorsCertificate cert;
  const std::size_t nv = setup.coordinates.size();
  const auto y = setup.variety();
  auto c = [&](int v) { return Poly::constant(nv, Rat(v)); };
  // Columns with their h-degree.
  std::vector<std::pair<std::vector<Poly>, int>> cols = {
      {{c(1), c(0), c(0)}, 0},
      {{c(0), c(1), c(0)}, 0},
      {{c(0), c(0), c(1)}, 0},
      {{c(1), c(1), c(1)}, 0},
      {{Poly::variable(nv, 0), Poly::variable(nv, 1), Poly::variable(nv, 2)}, 1},
  };
  std::vector<std::pair<int, Poly>> minors, coeffs;
  for (std::size_t a = 0; a < cols.size(); ++a)
    for (std::size_t b = a + 1; b < cols.size(); ++b)
      for (std::size_t e = b + 1; e < cols.size(); ++e) {
        const Poly m = det3({cols[a].first, cols[b].first, cols[e].first});
        const int hdeg = cols[a].second + cols[b].second + cols[e].second;
        std::string s = m.to_string(setup.coordinates);
        if (hdeg > 0) s = "(" + s + ")*h";
        cert.minors.push_back(s);
        if (!m.is_zero()) minors.emplace_back(hdeg, m.monic());
      }
  for (const auto& g : generators) {
    const auto pk = over_f_power(g.section, setup.hyperplane, y->atoms());
    if (!pk) {
      cert.detail = "section " + g.section.to_string(setup.coordinates) + " is not a polynomial over a power of f";
      return cert;
    }
    coeffs.emplace_back(pk->second, pk->first.monic());
  }
  std::sort(minors.begin(), minors.end());
  std::sort(coeffs.begin(), coeffs.end());
  cert.passed = minors == coeffs;
  cert.detail = cert.passed ? "section coefficients equal the 3x3 minors up to sign"
                            : std::to_string(coeffs.size()) + " coefficients against " + std::to_string(minors.size()) +
                                  " nonzero minors do not match";
  return cert;
}

CoxRun run_cox(const CoxSetup& setup, const EngineOptions& opt) {
  const PDivisor d = build_cox_pdivisor(setup);
  const Variety& y = d.variety();
  CoxRun run;
  run.linearity = linearity_subdivision(d);
  run.subdivision = cox_hyperplane_subdivision(setup);
  run.rays = run.subdivision.rays();

  std::map<IntVector, std::size_t> counts;
  for (const auto& r : run.rays) ++counts[y.class_of(d.evaluate(r))];
  for (const auto& [cls, k] : counts) run.classes.push_back({cls, k});

  const std::vector<IntVector> hb = hilbert_basis(d.weight_cone());
  const std::vector<IntVector> cols = setup.columns();
  run.hilbert_in_columns = std::all_of(hb.begin(), hb.end(), [&](const IntVector& h) {
    return std::find(cols.begin(), cols.end(), h) != cols.end();
  });
  std::vector<IntVector> candidates = run.rays;
  candidates.insert(candidates.end(), hb.begin(), hb.end());
  run.reduced_rays = reduce_rays(d, run.rays, candidates);

  std::vector<GradedElement> l;
  run.ray_data = ray_data(d, run.reduced_rays, opt);
  for (const auto& rd : run.ray_data) {
    const IntVector w = scale(rd.ray, Int(rd.k));
    for (const auto& s : rd.basis.elements()) l.push_back({s, w});
  }
  run.pool_size = l.size();
  run.completion = weight_lattice_completion(d, l, opt);
  l.insert(l.end(), run.completion.begin(), run.completion.end());
  run.quotient_field = quotient_field_complete(d, l, opt);
  l.insert(l.end(), run.quotient_field.added.begin(), run.quotient_field.added.end());
  l = reduce_generators(d, std::move(l));
  run.result = normalize_or_export(d, std::move(l), opt);
  run.certificate = minors_certificate(run.result.elements, setup);
  return run;
}

std::string class_string(const IntVector& cls) {
  std::string out;
  auto term = [&](const Int& k, const std::string& name) {
    if (k == 0) return;
    if (out.empty()) out += k < 0 ? "-" : "";
    else out += k < 0 ? " - " : " + ";
    const Int a = abs(k);
    if (a != 1) out += a.get_str();
    out += name;
  };
  term(cls[0], "H");
  for (std::size_t i = 1; i < cls.size(); ++i) term(cls[i], "E" + std::to_string(i));
  return out.empty() ? "0" : out;
}

std::string report(const CoxRun& run, const CoxSetup& setup) {
  std::ostringstream os;
  os << "linearity subdivision: " << run.linearity.subdivision.cells.size() << " cells, "
     << run.linearity.subdivision.rays().size() << " rays\n";
  os << "hyperplane subdivision: " << run.subdivision.cells.size() << " subcones, " << run.rays.size() << " rays\n";
  os << "classes of ray evaluations: " << run.classes.size() << "\n";
  for (const auto& c : run.classes) os << "  " << class_string(c.cls) << "  (" << c.rays << (c.rays == 1 ? " ray)\n" : " rays)\n");
  os << "reduced: " << run.reduced_rays.size() << " rays\n";
  for (const auto& r : run.reduced_rays) os << "  " << to_string(r) << "\n";
  os << "section pool: " << run.pool_size << " elements\n";
  os << "weight-lattice completion added " << run.completion.size() << ", quotient field added "
     << run.quotient_field.added.size() << "\n";
  os << run.result.elements.size() << " generators in P = C[x0,x1,x2,h,t0..t9]/(h*f - 1 + toric relations), f = "
     << setup.hyperplane.to_string(setup.coordinates) << ":\n";
  for (const auto& e : run.result.elements) os << "  " << p_presentation(e, setup) << "\n";
  os << "toric relations:\n";
  for (const auto& r : toric_relations(setup)) os << "  " << r << "\n";
  os << "normalization: " << to_string(run.result.status) << ", " << run.result.added.size() << " additions\n";
  os << "Hilbert basis of omega inside the columns: " << (run.hilbert_in_columns ? "yes" : "no") << "\n";
  os << "minors certificate: " << (run.certificate.passed ? "PASS" : "FAIL") << " (" << run.certificate.detail << ")\n";
  return os.str();
}

}  // namespace pdiv
