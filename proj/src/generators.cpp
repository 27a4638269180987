#include "pdiv/generators.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "pdiv/error.hpp"

namespace pdiv {

namespace {

IntVector scaled(const IntVector& v, long k) { return scale(v, Int(k)); }

Int grading_value(const IntVector& g, const IntVector& u) { return dot(g, u); }

IntVector cone_grading(const QCone& omega) {
  IntVector g(omega.ambient_dim(), Int(0));
  for (const auto& f : omega.facets()) g = add(g, f);
  return g;
}

bool lex_less(const IntVector& a, const IntVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Exponents of p over [variables..., extra atoms...] with the leftover
// constant, if p is a product of those.
std::optional<std::pair<IntVector, Rat>> factor_over(Poly p, const std::vector<Poly>& extra) {
  const std::size_t n = p.nvars();
  IntVector e(n + extra.size(), Int(0));
  if (p.is_zero()) return std::nullopt;
  for (std::size_t i = 0; i < extra.size(); ++i) {
    while (p.degree() >= extra[i].degree()) {
      auto q = p.divide(extra[i]);
      if (!q) break;
      p = std::move(*q);
      e[n + i] += 1;
    }
  }
  if (!p.is_monomial()) return std::nullopt;
  const auto& lead = p.leading_exponents();
  for (std::size_t i = 0; i < n; ++i) e[i] = lead[i];
  return std::make_pair(e, p.leading_coefficient());
}

struct Factored {
  IntVector exponents;
  Rat constant;
};

std::vector<Poly> non_monomial_atoms(const Variety& y) {
  std::vector<Poly> out;
  for (const auto& a : y.atoms())
    if (!a.is_monomial()) out.push_back(a);
  return out;
}

std::optional<Factored> factor_section(const FunctionFieldElement& s, const std::vector<Poly>& atoms) {
  auto num = factor_over(s.numerator(), atoms);
  auto den = factor_over(s.denominator(), atoms);
  if (!num || !den) return std::nullopt;
  return Factored{sub(num->first, den->first), num->second / den->second};
}

std::vector<IntVector> probe_weights(const QCone& omega, int depth) {
  const auto hb = hilbert_basis(omega);
  std::set<IntVector> seen;
  std::vector<IntVector> layer{IntVector(omega.ambient_dim(), Int(0))};
  for (int k = 0; k < depth; ++k) {
    std::vector<IntVector> next;
    for (const auto& u : layer)
      for (const auto& h : hb) {
        IntVector v = add(u, h);
        if (seen.insert(v).second) next.push_back(std::move(v));
      }
    layer = std::move(next);
  }
  std::vector<IntVector> out(seen.begin(), seen.end());
  const IntVector g = cone_grading(omega);
  std::stable_sort(out.begin(), out.end(), [&](const IntVector& a, const IntVector& b) {
    const Int ga = grading_value(g, a), gb = grading_value(g, b);
    return ga != gb ? ga < gb : lex_less(a, b);
  });
  return out;
}

IntVector interior_ray(const QCone& omega) {
  for (const auto& h : hilbert_basis(omega))
    if (omega.in_relative_interior(h)) return h;
  IntVector s(omega.ambient_dim(), Int(0));
  for (const auto& r : omega.rays()) s = add(s, r);
  return primitive(s);
}

bool is_saturated(const std::vector<IntVector>& rows, std::size_t n) {
  const IntMatrix h = lattice_basis(rows, n);
  const IntMatrix k = kernel_lattice(h);
  if (k.rows() == 0) return h == IntMatrix::identity(n);
  return kernel_lattice(k) == h;
}

std::string monomial_string(const std::vector<std::pair<std::size_t, Int>>& factors) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, e] : factors) {
    if (!first) os << "*";
    os << "g" << i + 1;
    if (e != 1) os << "^" << e.get_str();
    first = false;
  }
  return first ? "1" : os.str();
}

}  // namespace

const char* to_string(NormalizationStatus s) {
  switch (s) {
    case NormalizationStatus::Normal: return "Normal";
    case NormalizationStatus::SaturatedToric: return "SaturatedToric";
    case NormalizationStatus::ExportedForNormalization: return "ExportedForNormalization";
  }
  return "?";
}

void canonical_sort(std::vector<GradedElement>& l) {
  std::stable_sort(l.begin(), l.end(), [](const GradedElement& a, const GradedElement& b) {
    if (a.weight != b.weight) return lex_less(a.weight, b.weight);
    if (a.section.numerator() != b.section.numerator()) return b.section.numerator() < a.section.numerator();
    return b.section.denominator() < a.section.denominator();
  });
}

std::string to_string(const GradedElement& e, const Variety& y) {
  return e.section.simplified(y.atoms()).to_string(y.coordinates()) + " * chi^" + to_string(e.weight);
}

RayData find_k_rho(const PDivisor& d, const IntVector& ray, int max_iterations) {
  const Variety& y = d.variety();
  for (int k = 1; k <= max_iterations; ++k) {
    const QDivisor dk = d.evaluate(scaled(ray, k));
    if (!is_integral(dk) || !y.is_basepoint_free(dk)) continue;
    return RayData{ray, k, y.sections(dk)};
  }
  throw Error(ErrorKind::IterationLimitExceeded,
              "no base point free integral multiple of D(" + to_string(ray) + ") up to " + std::to_string(max_iterations));
}

bool is_section(const PDivisor& d, const GradedElement& e) {
  if (!d.weight_cone().contains(e.weight)) return false;
  return d.variety().numerator_of(d.evaluate(e.weight), e.section).has_value();
}

// ---------------------------------------------------------------- GradedSpan

GradedSpan::GradedSpan(const PDivisor& d, const std::vector<GradedElement>& generators) : d_(&d) {
  for (const auto& g : generators) {
    if (is_zero(g.weight) || g.section.is_zero()) continue;
    weights_.push_back(g.weight);
    numerators_.push_back(numerator(g.section, g.weight));
  }
}

Poly GradedSpan::numerator(const FunctionFieldElement& s, const IntVector& u) const {
  auto g = d_->variety().numerator_of(d_->evaluate(u), s);
  if (!g) throw Error(ErrorKind::Semantic, "element is not a section of D(" + to_string(u) + ")");
  return *g;
}

std::size_t GradedSpan::full_dimension(const IntVector& u) {
  auto it = full_.find(u);
  if (it != full_.end()) return it->second;
  const std::size_t n = d_->variety().sections(floor(d_->evaluate(u))).size();
  full_.emplace(u, n);
  return n;
}

GradedSpan::Piece& GradedSpan::piece(const IntVector& u) {
  auto it = pieces_.find(u);
  if (it != pieces_.end()) return it->second;
  const Variety& y = d_->variety();
  const QDivisor du = d_->evaluate(u);
  Piece p;
  p.degree = y.numerator_degree(floor(du));
  if (p.degree >= 0) p.monomials = monomials_of_degree(y.nvars(), p.degree);
  p.echelon = IncrementalEchelon(p.monomials.size());
  if (p.degree < 0) {
    p.complete = true;
    return pieces_.emplace(u, std::move(p)).first->second;
  }
  if (is_zero(u)) {
    const Poly one = Poly::constant(y.nvars(), Rat(1));
    p.echelon.insert(coefficients_in(one, p.monomials));
    p.basis.push_back(one);
    p.complete = true;
    return pieces_.emplace(u, std::move(p)).first->second;
  }
  const std::size_t full = full_dimension(u);
  for (std::size_t a = 0; a < weights_.size() && p.echelon.rank() < full; ++a) {
    const IntVector rest = sub(u, weights_[a]);
    if (!d_->weight_cone().contains(rest)) continue;
    const Piece& sub_piece = piece(rest);
    if (sub_piece.basis.empty()) continue;
    const Poly shift = y.shift_factor(d_->evaluate(weights_[a]), d_->evaluate(rest), du);
    const Poly lead = numerators_[a] * shift;
    for (const auto& h : sub_piece.basis) {
      Poly prod = lead * h;
      if (p.echelon.insert(coefficients_in(prod, p.monomials))) p.basis.push_back(std::move(prod));
      if (p.echelon.rank() == full) break;
    }
  }
  p.complete = true;
  return pieces_.emplace(u, std::move(p)).first->second;
}

std::size_t GradedSpan::dimension(const IntVector& u) {
  if (!d_->weight_cone().contains(u)) return 0;
  return piece(u).echelon.rank();
}

bool GradedSpan::contains(const FunctionFieldElement& s, const IntVector& u) {
  if (!d_->weight_cone().contains(u)) return false;
  if (s.is_zero()) return true;
  const auto g = d_->variety().numerator_of(d_->evaluate(u), s);
  if (!g) return false;
  Piece& p = piece(u);
  return p.echelon.contains(coefficients_in(*g, p.monomials));
}

bool GradedSpan::contains(const GradedElement& e) { return contains(e.section, e.weight); }

// ---------------------------------------------------------------- steps 1-6

std::vector<GradedElement> zariski_pool(const PDivisor& d, const LinearityDomain& lin, std::vector<RayData>& rays,
                                        const EngineOptions& opt) {
  std::vector<IntVector> order;
  std::set<IntVector> done;
  for (const auto& cell : lin.subdivision.cells)
    for (const auto& rho : cell.rays())
      if (done.insert(rho).second) order.push_back(rho);
  std::vector<GradedElement> out;
  for (auto& r : ray_data(d, order, opt)) {
    const IntVector w = scaled(r.ray, r.k);
    for (auto& s : r.basis.elements()) out.push_back({std::move(s), w});
    rays.push_back(std::move(r));
  }
  return out;
}

std::vector<RayData> ray_data(const PDivisor& d, const std::vector<IntVector>& rays, const EngineOptions& opt) {
  std::vector<RayData> out(rays.size());
  std::vector<std::exception_ptr> errors(rays.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rays.size(); i = next++) {
      try {
        out[i] = find_k_rho(d, rays[i], opt.max_iterations);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::min<std::size_t>(std::max(opt.threads, 1), rays.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// ---------------------------------------------------------------- steps 7-11

std::vector<IntVector> completion_basis(const QCone& omega) {
  const std::size_t n = omega.ambient_dim();
  std::vector<IntVector> interior, boundary;
  for (const auto& h : hilbert_basis(omega)) (omega.in_relative_interior(h) ? interior : boundary).push_back(h);
  std::sort(boundary.begin(), boundary.end(), [](const IntVector& a, const IntVector& b) { return lex_less(b, a); });
  std::vector<IntVector> chosen;
  for (const auto* list : {&interior, &boundary})
    for (const auto& c : *list) {
      if (chosen.size() == n) break;
      auto trial = chosen;
      trial.push_back(c);
      if (lattice_basis(trial, n).rows() == trial.size() && is_saturated(trial, n)) chosen = std::move(trial);
    }
  if (chosen.size() == n) return chosen;
  return unimodular_triangulation(omega).cells.front().rays();
}

std::vector<GradedElement> weight_lattice_completion(const PDivisor& d, const std::vector<GradedElement>& l,
                                                     const EngineOptions& opt) {
  const std::size_t n = d.rank();
  const Variety& y = d.variety();
  std::vector<IntVector> weights;
  for (const auto& e : l)
    if (!is_zero(e.weight)) weights.push_back(e.weight);
  IntMatrix h = lattice_basis(weights, n);
  std::vector<GradedElement> added;
  for (const auto& b : completion_basis(d.weight_cone())) {
    for (long j = 1; !lattice_member(b, h); ++j) {
      if (j > opt.max_iterations)
        throw Error(ErrorKind::IterationLimitExceeded, "weight lattice completion along " + to_string(b));
      const IntVector u = scaled(b, j);
      if (lattice_member(u, h)) continue;
      const QDivisor fl = floor(d.evaluate(u));
      const SectionBasis sb = y.sections(fl);
      if (sb.size() == 0) continue;
      const FunctionFieldElement one = FunctionFieldElement::one(y.nvars());
      FunctionFieldElement s = y.numerator_of(fl, one) ? one : sb.element(sb.numerators.front());
      added.push_back({std::move(s), u});
      weights.push_back(u);
      h = lattice_basis(weights, n);
    }
  }
  return added;
}

// ---------------------------------------------------------------- step 12

QuotientFieldResult quotient_field_complete(const PDivisor& d, const std::vector<GradedElement>& l,
                                            const EngineOptions& opt) {
  QuotientFieldResult res;
  const Variety& y = d.variety();
  const std::size_t nv = y.nvars();
  if (nv <= 1) {
    res.complete = true;
    return res;
  }
  const std::vector<Poly> atoms = non_monomial_atoms(y);
  const std::size_t na = nv + atoms.size();
  const IntVector rho = interior_ray(d.weight_cone());
  std::vector<GradedElement> all = l;
  for (int j = 1;; ++j) {
    std::vector<std::size_t> idx;
    std::vector<IntVector> exps;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (auto f = factor_section(all[i].section, atoms)) {
        idx.push_back(i);
        exps.push_back(f->exponents);
      }
    }
    std::vector<IntVector> relations_exps;
    IntMatrix kernel(0, idx.size());
    if (!idx.empty()) {
      IntMatrix w(d.rank(), idx.size());
      for (std::size_t c = 0; c < idx.size(); ++c)
        for (std::size_t r = 0; r < d.rank(); ++r) w(r, c) = all[idx[c]].weight[r];
      kernel = kernel_lattice(w);
    }
    for (std::size_t k = 0; k < kernel.rows(); ++k) {
      IntVector v(na, Int(0));
      for (std::size_t c = 0; c < idx.size(); ++c)
        if (kernel(k, c) != 0) v = add(v, scale(exps[c], kernel(k, c)));
      relations_exps.push_back(std::move(v));
    }
    std::vector<std::string> witness;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < nv && ok; ++i) {
      IntVector target(na, Int(0));
      target[i] = 1;
      target[nv - 1] = -1;
      const auto c = relations_exps.empty() ? std::nullopt : lattice_coordinates(target, relations_exps);
      if (!c) {
        ok = false;
        break;
      }
      IntVector comb(idx.size(), Int(0));
      for (std::size_t k = 0; k < kernel.rows(); ++k)
        if ((*c)[k] != 0)
          for (std::size_t m = 0; m < idx.size(); ++m) comb[m] += (*c)[k] * kernel(k, m);
      std::vector<std::pair<std::size_t, Int>> factors;
      for (std::size_t m = 0; m < idx.size(); ++m)
        if (comb[m] != 0) factors.emplace_back(idx[m], comb[m]);
      witness.push_back(y.coordinates()[i] + "/" + y.coordinates()[nv - 1] + " = const * " +
                        monomial_string(factors));
    }
    if (ok) {
      res.complete = true;
      res.witness = std::move(witness);
      return res;
    }
    if (j > opt.max_iterations)
      throw Error(ErrorKind::IterationLimitExceeded, "quotient field witness not found along " + to_string(rho));
    const IntVector u = scaled(rho, j);
    const SectionBasis sb = y.sections(floor(d.evaluate(u)));
    for (auto& s : sb.elements()) {
      GradedElement e{std::move(s), u};
      all.push_back(e);
      res.added.push_back(std::move(e));
    }
  }
}

// ---------------------------------------------------------------- pruning

std::vector<GradedElement> reduce_generators(const PDivisor& d, std::vector<GradedElement> l) {
  canonical_sort(l);
  std::vector<GradedElement> uniq;
  for (auto& e : l) {
    if (e.section.is_zero()) continue;
    const bool dup = std::any_of(uniq.begin(), uniq.end(), [&](const GradedElement& f) {
      return f.weight == e.weight && f.section == e.section;
    });
    if (!dup) uniq.push_back(std::move(e));
  }
  const IntVector g = cone_grading(d.weight_cone());
  std::vector<std::size_t> order(uniq.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Int ga = grading_value(g, uniq[a].weight), gb = grading_value(g, uniq[b].weight);
    return ga != gb ? ga > gb : a > b;
  });
  std::vector<bool> keep(uniq.size(), true);
  for (std::size_t i : order) {
    std::vector<GradedElement> others;
    for (std::size_t j = 0; j < uniq.size(); ++j)
      if (j != i && keep[j]) others.push_back(uniq[j]);
    GradedSpan span(d, others);
    if (span.contains(uniq[i])) keep[i] = false;
  }
  std::vector<GradedElement> out;
  for (std::size_t i = 0; i < uniq.size(); ++i)
    if (keep[i]) out.push_back(std::move(uniq[i]));
  return out;
}

// ---------------------------------------------------------------- step 13

std::string presentation(const Variety& y, const std::vector<GradedElement>& l) {
  std::ostringstream os;
  os << "# generators " << l.size() << "\n";
  for (std::size_t i = 0; i < l.size(); ++i) os << "g" << i + 1 << " " << to_string(l[i], y) << "\n";
  const std::vector<Poly> atoms = non_monomial_atoms(y);
  std::vector<std::size_t> idx;
  std::vector<Factored> fs;
  for (std::size_t i = 0; i < l.size(); ++i)
    if (auto f = factor_section(l[i].section, atoms)) {
      idx.push_back(i);
      fs.push_back(*f);
    }
  os << "# binomial relations among the " << idx.size() << " generators with factored sections\n";
  if (idx.empty()) return os.str();
  const std::size_t n = l.front().weight.size();
  IntMatrix a(n + y.nvars() + atoms.size(), idx.size());
  for (std::size_t c = 0; c < idx.size(); ++c) {
    for (std::size_t r = 0; r < n; ++r) a(r, c) = l[idx[c]].weight[r];
    for (std::size_t r = 0; r < fs[c].exponents.size(); ++r) a(n + r, c) = fs[c].exponents[r];
  }
  const IntMatrix k = kernel_lattice(a);
  for (std::size_t r = 0; r < k.rows(); ++r) {
    std::vector<std::pair<std::size_t, Int>> pos, neg;
    Rat lambda = 1;
    for (std::size_t c = 0; c < idx.size(); ++c) {
      const Int e = k(r, c);
      if (e == 0) continue;
      Rat p;
      mpz_pow_ui(p.get_num_mpz_t(), fs[c].constant.get_num_mpz_t(), Int(abs(e)).get_ui());
      mpz_pow_ui(p.get_den_mpz_t(), fs[c].constant.get_den_mpz_t(), Int(abs(e)).get_ui());
      p.canonicalize();
      if (e > 0) {
        lambda *= p;
        pos.emplace_back(idx[c], e);
      } else {
        lambda /= p;
        neg.emplace_back(idx[c], -e);
      }
    }
    os << monomial_string(pos) << " - ";
    if (lambda != 1) os << to_string(lambda) << "*";
    os << monomial_string(neg) << "\n";
  }
  return os.str();
}

GeneratorSet normalize_or_export(const PDivisor& d, std::vector<GradedElement> l, const EngineOptions& opt) {
  GeneratorSet out;
  const Variety& y = d.variety();
  const std::size_t n = d.rank(), nv = y.nvars();
  const bool toric = std::all_of(l.begin(), l.end(), [](const GradedElement& e) {
    return e.section.numerator().is_monomial() && e.section.denominator().is_monomial();
  });
  if (toric) {
    std::vector<IntVector> vecs;
    std::vector<GradedElement> kept;
    for (auto& e : l) {
      if (is_zero(e.weight)) continue;
      IntVector v = e.weight;
      const auto& num = e.section.numerator().leading_exponents();
      const auto& den = e.section.denominator().leading_exponents();
      for (std::size_t i = 0; i < nv; ++i) v.push_back(Int(num[i] - den[i]));
      vecs.push_back(std::move(v));
      kept.push_back(std::move(e));
    }
    const std::size_t dim = n + nv;
    // Integral closure in C(Y)(M): saturate the group of the semigroup first.
    const IntMatrix k = kernel_lattice(lattice_basis(vecs, dim));
    const IntMatrix basis = k.rows() == 0 ? IntMatrix::identity(dim) : kernel_lattice(k);
    const auto brows = basis.row_vectors();
    std::vector<IntVector> coords;
    for (const auto& v : vecs) coords.push_back(*lattice_coordinates(v, brows));
    const QCone c = QCone::from_generators(brows.size(), coords);
    for (const auto& h : hilbert_basis(c)) {
      IntVector v(dim, Int(0));
      for (std::size_t i = 0; i < brows.size(); ++i) v = add(v, scale(brows[i], h[i]));
      const auto it = std::find(vecs.begin(), vecs.end(), v);
      if (it != vecs.end()) {
        out.elements.push_back(kept[it - vecs.begin()]);
        continue;
      }
      Exponents up(nv, 0), down(nv, 0);
      for (std::size_t i = 0; i < nv; ++i) {
        const long e = v[n + i].get_si();
        (e > 0 ? up[i] : down[i]) = e > 0 ? static_cast<int>(e) : static_cast<int>(-e);
      }
      GradedElement g{FunctionFieldElement(Poly::monomial(up, Rat(1)), Poly::monomial(down, Rat(1))),
                      IntVector(v.begin(), v.begin() + n)};
      out.elements.push_back(g);
      out.added.push_back(std::move(g));
    }
    canonical_sort(out.elements);
    out.status = out.added.empty() ? NormalizationStatus::Normal : NormalizationStatus::SaturatedToric;
    return out;
  }
  GradedSpan span(d, l);
  for (const auto& u : probe_weights(d.weight_cone(), opt.normality_probe_depth)) {
    if (span.dimension(u) < span.full_dimension(u)) {
      out.deficient_weight = u;
      break;
    }
  }
  out.elements = std::move(l);
  if (out.deficient_weight) {
    out.status = NormalizationStatus::ExportedForNormalization;
    out.presentation = presentation(y, out.elements);
  } else {
    out.status = NormalizationStatus::Normal;
  }
  return out;
}

GeneralRun run_general(const PDivisor& d, const EngineOptions& opt) {
  if (!d.weight_cone().is_pointed() || !d.weight_cone().is_full_dimensional())
    throw Error(ErrorKind::InvalidArgument, "the weight cone must be full-dimensional and pointed");
  GeneralRun run;
  run.linearity = linearity_subdivision(d);
  std::vector<GradedElement> l = zariski_pool(d, run.linearity, run.rays, opt);
  run.pool_size = l.size();
  run.completion = weight_lattice_completion(d, l, opt);
  l.insert(l.end(), run.completion.begin(), run.completion.end());
  run.quotient_field = quotient_field_complete(d, l, opt);
  l.insert(l.end(), run.quotient_field.added.begin(), run.quotient_field.added.end());
  run.raw_size = l.size();
  l = reduce_generators(d, std::move(l));
  run.pruned_size = l.size();
  run.result = normalize_or_export(d, std::move(l), opt);
  return run;
}

}  // namespace pdiv
