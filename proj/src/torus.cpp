#include "pdiv/torus.hpp"

#include <algorithm>

#include "pdiv/error.hpp"

namespace pdiv {

namespace {

// Exponent of each variable and multiplicity of each form in p, or nullopt
// if p is not a monomial times a product of the forms.
std::optional<std::pair<Exponents, std::vector<int>>> split(Poly p, const std::vector<Poly>& forms) {
  std::vector<int> mult(forms.size(), 0);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    while (p.degree() >= forms[i].degree()) {
      auto q = p.divide(forms[i]);
      if (!q) break;
      p = std::move(*q);
      ++mult[i];
    }
  }
  if (!p.is_monomial()) return std::nullopt;
  return std::make_pair(p.leading_exponents(), mult);
}

}  // namespace

void DivisorialFanRecord::check(const Variety& y) const {
  if (!vertical.empty())
    throw Error(ErrorKind::UnsupportedBase, "vertical divisors need a base curve or surface; only a point base is supported");
  if (rays.size() != y.nvars())
    throw Error(ErrorKind::Semantic, "torus section needs one ray per coordinate (" + std::to_string(y.nvars()) + ")");
  IntVector sum(rank, Int(0));
  for (const auto& r : rays) {
    if (r.size() != rank) throw Error(ErrorKind::Semantic, "torus ray " + to_string(r) + " has the wrong length");
    sum = add(sum, r);
  }
  if (!is_zero(sum)) throw Error(ErrorKind::Semantic, "torus rays must sum to zero");
  if (rank > 0 && lattice_basis(rays, rank) != IntMatrix::identity(rank))
    throw Error(ErrorKind::Semantic, "torus rays must span the lattice");
}

FunctionFieldElement DivisorialFanRecord::character(const IntVector& w, std::size_t nvars) const {
  Exponents up(nvars, 0), down(nvars, 0);
  for (std::size_t i = 0; i < nvars && i < rays.size(); ++i) {
    const long e = dot(w, rays[i]).get_si();
    if (e > 0) up[i] = static_cast<int>(e);
    else down[i] = static_cast<int>(-e);
  }
  return FunctionFieldElement(Poly::monomial(up, Rat(1)), Poly::monomial(down, Rat(1)));
}

QDivisor InvariantRepresentation::evaluate(const IntVector& u, const DivisorialFanRecord& fan) const {
  QDivisor out;
  for (std::size_t r = 0; r < fan.rays.size(); ++r) {
    const Rat v = delta[r].support(u);
    if (v != 0) out["D" + to_string(fan.rays[r])] = v;
  }
  return out;
}

QVector invariant_coefficients(const Variety& y, const QDivisor& d, const FunctionFieldElement& s) {
  const std::size_t n = y.nvars();
  std::vector<std::string> names;
  std::vector<Poly> forms;
  for (const auto& l : y.labels()) {
    const auto f = y.form(l);
    if (f && !f->is_monomial() && !f->is_constant()) {
      names.push_back(l);
      forms.push_back(*f);
    }
  }
  const auto num = split(s.numerator(), forms), den = split(s.denominator(), forms);
  if (!num || !den) throw Error(ErrorKind::NotTMoveable, "section does not factor over the defining forms");
  QVector a(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) a[i] = num->first[i] - den->first[i];
  std::vector<Rat> rest(forms.size(), Rat(0));
  for (std::size_t k = 0; k < forms.size(); ++k) rest[k] = num->second[k] - den->second[k];
  for (const auto& [name, c] : d) {
    const auto f = y.form(name);
    if (!f) throw Error(ErrorKind::NotTMoveable, "prime '" + name + "' has no defining form");
    const auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) {
      rest[it - names.begin()] += c;
      continue;
    }
    if (f->is_constant()) continue;
    const Exponents& e = f->leading_exponents();
    for (std::size_t i = 0; i < n; ++i) a[i] += c * e[i];
  }
  for (std::size_t k = 0; k < forms.size(); ++k)
    if (rest[k] != 0) throw Error(ErrorKind::NotTMoveable, "non-invariant prime '" + names[k] + "' survives the twist");
  return a;
}

InvariantRepresentation invariantize_cell(const PDivisor& d, const QCone& cell, const DivisorialFanRecord& fan) {
  const Variety& y = d.variety();
  fan.check(y);
  if (!cell.is_simplicial() || !cell.is_full_dimensional() || abs(determinant(IntMatrix::from_rows(cell.rays()))) != 1)
    throw Error(ErrorKind::InvalidArgument, "invariantize_cell needs a unimodular simplicial cell");
  InvariantRepresentation rep;
  rep.cell = cell;
  rep.cell_rays = cell.rays();
  const std::size_t n = d.rank(), nr = fan.rays.size();
  std::vector<QVector> a;  // a[rho][r]
  for (const auto& rho : rep.cell_rays) {
    const QDivisor dr = d.evaluate(rho);
    rep.twist.push_back(y.invariantizing_section(dr));
    a.push_back(invariant_coefficients(y, dr, rep.twist.back()));
  }
  QMatrix rows;
  for (const auto& rho : rep.cell_rays) rows.push_back(to_rational(rho));
  const QCone tail = dual_cone(cell);
  for (std::size_t r = 0; r < nr; ++r) {
    QVector rhs(n);
    for (std::size_t k = 0; k < n; ++k) rhs[k] = a[k][r];
    const auto ell = solve(rows, rhs, n);
    rep.ell.push_back(*ell);
    rep.delta.emplace_back(std::vector<QVector>{*ell}, tail);
  }
  return rep;
}

QCone upgrade(const InvariantRepresentation& rep, const DivisorialFanRecord& fan) {
  const std::size_t n = rep.cell.ambient_dim(), m = fan.rank;
  std::vector<IntVector> gens;
  const QCone cell_dual = dual_cone(rep.cell);
  for (const auto& v : cell_dual.rays()) {
    IntVector g = v;
    g.resize(n + m, Int(0));
    gens.push_back(std::move(g));
  }
  for (std::size_t r = 0; r < fan.rays.size(); ++r) {
    QVector g = rep.ell[r];
    for (const auto& x : fan.rays[r]) g.push_back(Rat(x));
    gens.push_back(primitive(g));
  }
  return QCone::from_generators(n + m, gens);
}

PDivisor upgraded_pdivisor(const QCone& sigma_tilde) {
  return PDivisor(dual_cone(sigma_tilde), {}, std::make_shared<PointBase>());
}

std::vector<GradedElement> downgrade_generators(const std::vector<IntVector>& weights, const InvariantRepresentation& rep,
                                                const DivisorialFanRecord& fan, std::size_t nvars) {
  const std::size_t n = rep.cell.ambient_dim();
  std::vector<GradedElement> out;
  for (const auto& w : weights) {
    const IntVector wm(w.begin(), w.begin() + n), wp(w.begin() + n, w.end());
    const auto coords = lattice_coordinates(wm, rep.cell_rays);
    FunctionFieldElement s = fan.character(wp, nvars);
    for (std::size_t k = 0; k < rep.cell_rays.size(); ++k) {
      const long e = (*coords)[k].get_si();
      if (e != 0) s = s * rep.twist[k].pow(static_cast<int>(e));
    }
    out.push_back({std::move(s), wm});
  }
  return out;
}

TorusRun run_torus(const PDivisor& d, const DivisorialFanRecord& fan) {
  fan.check(d.variety());
  TorusRun run;
  run.subdivision = unimodular_refinement(linearity_subdivision(d).subdivision);
  std::vector<const GradedElement*> distinct;
  for (const auto& cell : run.subdivision.cells) {
    TorusCell tc;
    tc.rep = invariantize_cell(d, cell, fan);
    tc.sigma_tilde = upgrade(tc.rep, fan);
    tc.hilbert = hilbert_basis(dual_cone(tc.sigma_tilde));
    tc.elements = downgrade_generators(tc.hilbert, tc.rep, fan, d.variety().nvars());
    run.elements.insert(run.elements.end(), tc.elements.begin(), tc.elements.end());
    run.cells.push_back(std::move(tc));
  }
  for (const auto& e : run.elements) {
    const bool dup = std::any_of(distinct.begin(), distinct.end(), [&](const GradedElement* f) {
      return f->weight == e.weight && f->section == e.section;
    });
    if (!dup) distinct.push_back(&e);
  }
  run.distinct = distinct.size();
  return run;
}

}  // namespace pdiv
