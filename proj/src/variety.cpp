#include "pdiv/variety.hpp"

#include <algorithm>
#include <sstream>

#include "pdiv/error.hpp"

namespace pdiv {

namespace {

Int floor_of(const Rat& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

Int ceil_of(const Rat& q) {
  Int f;
  mpz_cdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

unsigned to_exponent(const Int& k) {
  if (k < 0 || !k.fits_uint_p()) throw Error(ErrorKind::InvalidArgument, "exponent out of range");
  return static_cast<unsigned>(k.get_ui());
}

std::vector<Poly> nullspace_polys(const QMatrix& rows, const std::vector<Exponents>& basis) {
  std::vector<Poly> out;
  for (const auto& v : nullspace(rows, basis.size())) {
    const IntVector w = primitive(v);
    Poly p(3);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (w[i] != 0) p += Poly::monomial(basis[i], Rat(w[i]));
    if (p.leading_coefficient() < 0) p = -p;
    out.push_back(std::move(p));
  }
  return out;
}

// d^alpha x^e evaluated at p.
Rat derivative_at(const Exponents& e, const Exponents& alpha, const QVector& p) {
  Rat value = 1;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (alpha[j] > e[j]) return 0;
    for (int k = 0; k < alpha[j]; ++k) value *= e[j] - k;
    for (int k = 0; k < e[j] - alpha[j]; ++k) value *= p[j];
  }
  return value;
}

Poly primitive_line(const QVector& a, const QVector& b) {
  QVector c{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  IntVector w = primitive(c);
  for (const auto& x : w) {
    if (x == 0) continue;
    if (x < 0) w = pdiv::scale(w, Int(-1));
    break;
  }
  Poly p(3);
  for (std::size_t i = 0; i < 3; ++i)
    if (w[i] != 0) p += Poly::variable(3, i) * Rat(w[i]);
  return p;
}

bool same_up_to_scalar(const Poly& a, const Poly& b) { return a.monic() == b.monic(); }

}  // namespace

QDivisor add(const QDivisor& a, const QDivisor& b) {
  QDivisor out = a;
  for (const auto& [k, v] : b) {
    out[k] += v;
    if (out[k] == 0) out.erase(k);
  }
  return out;
}

QDivisor scale(const QDivisor& a, const Rat& k) {
  QDivisor out;
  if (k == 0) return out;
  for (const auto& [n, v] : a) out[n] = v * k;
  return out;
}

QDivisor floor(const QDivisor& d) {
  QDivisor out;
  for (const auto& [n, v] : d) {
    const Int f = floor_of(v);
    if (f != 0) out[n] = Rat(f);
  }
  return out;
}

bool is_integral(const QDivisor& d) {
  return std::all_of(d.begin(), d.end(), [](const auto& kv) { return kv.second.get_den() == 1; });
}

std::string to_string(const QDivisor& d) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, v] : d) {
    if (v == 0) continue;
    Rat a = v;
    if (first) {
      if (a < 0) { os << "-"; a = -a; }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    os << to_string(a) << " " << n;
    first = false;
  }
  return first ? "0" : os.str();
}

FunctionFieldElement SectionBasis::element(const Poly& numerator) const {
  return FunctionFieldElement(numerator * negative, positive);
}

std::vector<FunctionFieldElement> SectionBasis::elements() const {
  std::vector<FunctionFieldElement> out;
  for (const auto& g : numerators) out.push_back(element(g));
  return out;
}

bool Variety::has_label(const std::string& name) const {
  const auto l = labels();
  return std::find(l.begin(), l.end(), name) != l.end();
}

void Variety::check_labels(const QDivisor& d) const {
  for (const auto& [name, v] : d)
    if (!has_label(name))
      throw Error(ErrorKind::Semantic, "unknown prime divisor '" + name + "' on " + backend_name());
}

int Variety::numerator_degree(const QDivisor& d) const {
  Int deg = 0;
  for (const auto& [name, v] : d) {
    const auto f = form(name);
    if (f) deg += floor_of(v) * f->degree();
  }
  return static_cast<int>(deg.get_si());
}

SectionBasis Variety::sections(const QDivisor& d) const {
  check_labels(d);
  if (!is_integral(d)) throw Error(ErrorKind::NonIntegralDivisor, "sections of non-integral divisor " + to_string(d));
  SectionBasis b;
  b.divisor = d;
  b.degree = numerator_degree(d);
  b.positive = Poly::constant(nvars(), Rat(1));
  b.negative = Poly::constant(nvars(), Rat(1));
  for (const auto& [name, v] : d) {
    const auto f = form(name);
    if (!f) continue;
    if (v > 0) b.positive = b.positive * f->pow(to_exponent(v.get_num()));
    if (v < 0) b.negative = b.negative * f->pow(to_exponent(-v.get_num()));
  }
  if (b.degree >= 0) b.numerators = numerator_space(d, b.degree);
  return b;
}

std::optional<Poly> Variety::numerator_of(const QDivisor& d, const FunctionFieldElement& s) const {
  const QDivisor fl = floor(d);
  check_labels(fl);
  Poly up = s.numerator(), down = s.denominator();
  for (const auto& [name, v] : fl) {
    const auto f = form(name);
    if (!f) continue;
    if (v > 0) up = up * f->pow(to_exponent(v.get_num()));
    else down = down * f->pow(to_exponent(-v.get_num()));
  }
  auto g = up.divide(down);
  if (!g) return std::nullopt;
  if (g->is_zero()) return g;
  if (!g->is_homogeneous() || g->degree() != numerator_degree(fl)) return std::nullopt;
  if (!numerator_ok(fl, *g)) return std::nullopt;
  return g;
}

Poly Variety::shift_factor(const QDivisor& a, const QDivisor& c, const QDivisor& b) const {
  Poly out = Poly::constant(nvars(), Rat(1));
  std::vector<std::string> names;
  for (const auto* d : {&a, &b, &c})
    for (const auto& kv : *d) names.push_back(kv.first);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  for (const auto& name : names) {
    const auto f = form(name);
    if (!f) continue;
    auto get = [&](const QDivisor& d) {
      auto it = d.find(name);
      return it == d.end() ? Int(0) : floor_of(it->second);
    };
    const Int e = get(b) - get(a) - get(c);
    if (e < 0) throw Error(ErrorKind::InvalidArgument, "shift_factor: divisor sum exceeds target on " + name);
    out = out * f->pow(to_exponent(e));
  }
  return out;
}

std::vector<Poly> Variety::atoms() const {
  std::vector<Poly> out;
  for (const auto& l : labels()) {
    const auto f = form(l);
    if (f && !f->is_constant()) out.push_back(*f);
  }
  return out;
}

// ---------------------------------------------------------------- ProjectiveSpace

ProjectiveSpace::ProjectiveSpace(std::vector<std::string> coords, std::vector<std::pair<std::string, Poly>> primes)
    : Variety(std::move(coords)), primes_(std::move(primes)) {
  if (nvars() < 2) throw Error(ErrorKind::Semantic, "projective space needs at least two coordinates");
  for (const auto& [name, f] : primes_) {
    if (f.is_zero() || f.is_constant() || !f.is_homogeneous())
      throw Error(ErrorKind::Semantic, "prime divisor '" + name + "' needs a non-constant homogeneous form");
    if (f.nvars() != nvars()) throw Error(ErrorKind::DimensionMismatch, "form of '" + name + "'");
  }
}

std::vector<std::string> ProjectiveSpace::labels() const {
  std::vector<std::string> out;
  for (const auto& p : primes_) out.push_back(p.first);
  return out;
}

std::optional<Poly> ProjectiveSpace::form(const std::string& label) const {
  for (const auto& [name, f] : primes_)
    if (name == label) return f;
  return std::nullopt;
}

std::vector<Poly> ProjectiveSpace::numerator_space(const QDivisor&, int degree) const {
  std::vector<Poly> out;
  for (const auto& e : monomials_of_degree(nvars(), degree)) out.push_back(Poly::monomial(e));
  return out;
}

bool ProjectiveSpace::is_basepoint_free(const QDivisor& d) const {
  const SectionBasis b = sections(d);
  if (b.numerators.empty()) return false;
  // The numerators have no common zero iff some power of every coordinate
  // lies in their span; the span is a full monomial space, so look for the
  // pure powers x_i^deg directly.
  for (std::size_t i = 0; i < nvars(); ++i) {
    Exponents e(nvars(), 0);
    e[i] = b.degree;
    const Poly target = Poly::monomial(e);
    if (std::none_of(b.numerators.begin(), b.numerators.end(), [&](const Poly& g) { return g == target; }))
      return false;
  }
  return true;
}

IntVector ProjectiveSpace::class_of(const QDivisor& d) const {
  check_labels(d);
  if (!is_integral(d)) throw Error(ErrorKind::NonIntegralDivisor, "class of non-integral divisor");
  return IntVector{Int(numerator_degree(d))};
}

std::optional<bool> ProjectiveSpace::is_big(const QDivisor& d) const {
  check_labels(d);
  Rat deg = 0;
  for (const auto& [name, v] : d) deg += v * form(name)->degree();
  return deg > 0;
}

bool ProjectiveSpace::is_invariant_label(const std::string& label) const {
  const auto f = form(label);
  return f && f->is_monomial();
}

FunctionFieldElement ProjectiveSpace::invariantizing_section(const QDivisor& d) const {
  check_labels(d);
  const std::size_t n = nvars();
  // s = h / prod_{non-invariant} F^a with h a monomial.
  Poly den = Poly::constant(n, Rat(1)), num_extra = Poly::constant(n, Rat(1));
  Int need = 0;
  std::vector<Rat> floor_exp(n, Rat(0));  // invariant part: sum a_P * exp_i(F_P)
  for (const auto& [name, a] : d) {
    const Poly f = *form(name);
    if (is_invariant_label(name)) {
      const Exponents& e = f.leading_exponents();
      for (std::size_t i = 0; i < n; ++i) floor_exp[i] += a * e[i];
      continue;
    }
    if (a.get_den() != 1)
      throw Error(ErrorKind::NotTMoveable, "fractional coefficient on non-invariant prime '" + name + "'");
    need += a.get_num() * f.degree();
    if (a > 0) den = den * f.pow(to_exponent(a.get_num()));
    else num_extra = num_extra * f.pow(to_exponent(-a.get_num()));
  }
  // h must satisfy exp_i(h) >= -sum_P a_P exp_i(F_P) for invariant P.
  Exponents h(n, 0);
  Int used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Int lo = ceil_of(-floor_exp[i]);
    if (lo > 0) {
      h[i] = static_cast<int>(lo.get_si());
      used += lo;
    }
  }
  if (used > need) throw Error(ErrorKind::NotTMoveable, "no invariantizing section for " + to_string(d));
  Int left = need - used;
  // Greedily spend the remaining degree on invariant defining forms, then on
  // the lexicographically largest monomial.
  for (const auto& [name, f] : primes_) {
    if (!is_invariant_label(name)) continue;
    const int deg = f.degree();
    while (deg > 0 && left >= deg) {
      const Exponents& e = f.leading_exponents();
      for (std::size_t i = 0; i < n; ++i) h[i] += e[i];
      left -= deg;
    }
  }
  h[0] += static_cast<int>(left.get_si());
  const FunctionFieldElement s(Poly::monomial(h) * num_extra, den);
  if (!numerator_of(d, s)) throw Error(ErrorKind::NotTMoveable, "no invariantizing section for " + to_string(d));
  return s;
}

// ---------------------------------------------------------------- BlowupOfP2

BlowupOfP2::BlowupOfP2(std::vector<std::string> coords, std::vector<QVector> points,
                       std::vector<std::pair<std::string, Poly>> primes)
    : Variety(std::move(coords)), points_(std::move(points)) {
  if (nvars() != 3) throw Error(ErrorKind::UnsupportedBackend, "blowup_p2 needs exactly three coordinates");
  if (points_.size() > 4) throw Error(ErrorKind::UnsupportedBackend, "blowup_p2 supports at most four points");
  for (const auto& p : points_) {
    if (p.size() != 3 || is_zero(p)) throw Error(ErrorKind::Semantic, "blow-up point needs three coordinates, not all zero");
  }
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      const Poly l = primitive_line(points_[i], points_[j]);
      if (l.is_zero()) throw Error(ErrorKind::UnsupportedBackend, "blow-up points must be distinct");
      for (std::size_t k = 0; k < points_.size(); ++k)
        if (k != i && k != j && l.evaluate(points_[k]) == 0)
          throw Error(ErrorKind::UnsupportedBackend, "blow-up points must be in general position");
      primes_.emplace_back(line(i, j), l);
    }
  for (auto& p : primes) {
    if (p.second.is_constant() || !p.second.is_homogeneous())
      throw Error(ErrorKind::Semantic, "prime divisor '" + p.first + "' needs a non-constant homogeneous form");
    for (const auto& [name, f] : primes_)
      if (name == p.first || same_up_to_scalar(f, p.second))
        throw Error(ErrorKind::Semantic, "prime divisor '" + p.first + "' duplicates '" + name + "'");
    primes_.push_back(std::move(p));
  }
}

std::string BlowupOfP2::exceptional(std::size_t i) { return "E" + std::to_string(i + 1); }

std::string BlowupOfP2::line(std::size_t i, std::size_t j) {
  return "E" + std::to_string(i + 1) + std::to_string(j + 1);
}

std::vector<std::string> BlowupOfP2::labels() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < points_.size(); ++i) out.push_back(exceptional(i));
  for (const auto& p : primes_) out.push_back(p.first);
  return out;
}

std::optional<Poly> BlowupOfP2::form(const std::string& label) const {
  for (const auto& [name, f] : primes_)
    if (name == label) return f;
  return std::nullopt;
}

int BlowupOfP2::multiplicity(const Poly& f, std::size_t i) const {
  if (f.is_zero()) return 1 << 20;
  std::vector<Poly> layer{f};
  for (int k = 0;; ++k) {
    for (const auto& g : layer)
      if (g.evaluate(points_[i]) != 0) return k;
    std::vector<Poly> next;
    for (const auto& g : layer)
      for (std::size_t v = 0; v < 3; ++v) {
        Poly dg = g.derivative(v);
        if (!dg.is_zero()) next.push_back(std::move(dg));
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    layer = std::move(next);
  }
}

std::vector<Int> BlowupOfP2::required_multiplicities(const QDivisor& d) const {
  std::vector<Int> req(points_.size(), Int(0));
  for (const auto& [name, c] : d) {
    const auto f = form(name);
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (f) req[i] += floor_of(c) * multiplicity(*f, i);
      else if (name == exceptional(i)) req[i] -= floor_of(c);
    }
  }
  return req;
}

std::vector<Poly> BlowupOfP2::numerator_space(const QDivisor& d, int degree) const {
  const auto basis = monomials_of_degree(3, degree);
  const auto req = required_multiplicities(d);
  QMatrix rows;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (int k = 0; k < req[i]; ++k) {
      for (const auto& alpha : monomials_of_degree(3, k)) {
        QVector row(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) row[j] = derivative_at(basis[j], alpha, points_[i]);
        rows.push_back(std::move(row));
      }
    }
  }
  if (rows.empty()) {
    std::vector<Poly> out;
    for (const auto& e : basis) out.push_back(Poly::monomial(e));
    return out;
  }
  return nullspace_polys(rows, basis);
}

bool BlowupOfP2::numerator_ok(const QDivisor& d, const Poly& g) const {
  const auto req = required_multiplicities(d);
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (multiplicity(g, i) < req[i]) return false;
  return true;
}

IntVector BlowupOfP2::class_of(const QDivisor& d) const {
  check_labels(d);
  if (!is_integral(d)) throw Error(ErrorKind::NonIntegralDivisor, "class of non-integral divisor");
  IntVector c(points_.size() + 1, Int(0));
  for (const auto& [name, a] : d) {
    const Int k = a.get_num();
    if (const auto f = form(name)) {
      c[0] += k * f->degree();
      for (std::size_t i = 0; i < points_.size(); ++i) c[i + 1] -= k * multiplicity(*f, i);
    } else {
      for (std::size_t i = 0; i < points_.size(); ++i)
        if (name == exceptional(i)) c[i + 1] += k;
    }
  }
  return c;
}

Int BlowupOfP2::intersect(const IntVector& a, const IntVector& b) const {
  Int s = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s -= a[i] * b[i];
  return s;
}

std::vector<IntVector> BlowupOfP2::test_curves() const {
  const std::size_t k = points_.size();
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < k; ++i) {
    IntVector e(k + 1, Int(0));
    e[i + 1] = 1;
    out.push_back(e);
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      IntVector e(k + 1, Int(0));
      e[0] = 1;
      e[i + 1] = -1;
      e[j + 1] = -1;
      out.push_back(e);
    }
  if (k <= 1) {
    IntVector e(k + 1, Int(0));
    e[0] = 1;
    if (k == 1) e[1] = -1;
    out.push_back(e);
  }
  return out;
}

bool BlowupOfP2::is_basepoint_free(const QDivisor& d) const {
  const IntVector c = class_of(d);
  for (const auto& curve : test_curves())
    if (intersect(c, curve) < 0) return false;
  return sections(d).size() > 0;
}

std::optional<bool> BlowupOfP2::is_big(const QDivisor& d) const {
  const IntVector c = class_of(floor(d));
  for (const auto& curve : test_curves())
    if (intersect(c, curve) < 0) return std::nullopt;
  return intersect(c, c) > 0;
}

FunctionFieldElement BlowupOfP2::invariantizing_section(const QDivisor&) const {
  throw Error(ErrorKind::UnsupportedBackend, "blowup_p2 carries no torus action");
}

// ---------------------------------------------------------------- PointBase

std::vector<Poly> PointBase::numerator_space(const QDivisor&, int degree) const {
  if (degree != 0) return {};
  return {Poly::constant(0, Rat(1))};
}

FunctionFieldElement PointBase::invariantizing_section(const QDivisor& d) const {
  check_labels(d);
  return FunctionFieldElement::one(0);
}

// ---------------------------------------------------------------- pullback

QDivisor pullback_to_blowup(const ProjectiveSpace& p2, const QDivisor& d, const BlowupOfP2& y) {
  QDivisor out;
  for (const auto& [name, a] : d) {
    const auto f = p2.form(name);
    if (!f) throw Error(ErrorKind::Semantic, "unknown prime divisor '" + name + "' on projective");
    std::string target;
    for (const auto& l : y.labels()) {
      const auto g = y.form(l);
      if (g && same_up_to_scalar(*g, *f)) { target = l; break; }
    }
    if (target.empty()) {
      if (!y.has_label(name)) throw Error(ErrorKind::Semantic, "no strict transform of '" + name + "' on the blow-up");
      target = name;
    }
    out = add(out, QDivisor{{target, a}});
    for (std::size_t i = 0; i < y.points().size(); ++i) {
      const int m = y.multiplicity(*f, i);
      if (m > 0) out = add(out, QDivisor{{BlowupOfP2::exceptional(i), a * m}});
    }
  }
  return out;
}

}  // namespace pdiv
