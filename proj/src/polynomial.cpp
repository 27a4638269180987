#include "pdiv/polynomial.hpp"

#include <cctype>
#include <sstream>

#include "pdiv/error.hpp"

namespace pdiv {

Poly Poly::constant(std::size_t nvars, const Rat& c) {
  Poly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  Exponents e(nvars, 0);
  e[i] = 1;
  return monomial(e);
}

Poly Poly::monomial(const Exponents& e, const Rat& c) {
  Poly p(e.size());
  p.add_term(e, c);
  return p;
}

void Poly::add_term(const Exponents& e, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int x : terms_.begin()->first)
    if (x != 0) return false;
  return true;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

bool Poly::is_homogeneous() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    if (d >= 0 && s != d) return false;
    d = s;
  }
  return true;
}

Rat Poly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (nvars_ == 0) nvars_ = rhs.nvars_;
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  if (nvars_ == 0) nvars_ = rhs.nvars_;
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out(std::max(a.nvars_, b.nvars_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Poly Poly::operator-() const {
  Poly p = *this;
  return p *= Rat(-1);
}

Poly Poly::pow(unsigned k) const {
  Poly result = constant(nvars_, Rat(1));
  Poly base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::optional<Poly> Poly::divide(const Poly& d) const {
  if (d.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by the zero polynomial");
  Poly q(nvars_), r = *this;
  const Exponents& ld = d.leading_exponents();
  const Rat& lc = d.leading_coefficient();
  while (!r.is_zero()) {
    const Exponents& lr = r.leading_exponents();
    Exponents e(lr.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = lr[i] - ld[i];
      if (e[i] < 0) return std::nullopt;
    }
    const Poly t = monomial(e, r.leading_coefficient() / lc);
    q += t;
    r -= t * d;
  }
  return q;
}

Rat Poly::evaluate(const QVector& point) const {
  Rat total = 0;
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    total += t;
  }
  return total;
}

Poly Poly::derivative(std::size_t var) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    f[var] -= 1;
    out.add_term(f, c * e[var]);
  }
  return out;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rat(1) / leading_coefficient());
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rat a = c;
    if (first) {
      if (a < 0) { os << "-"; a = -a; }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool any = false;
    std::ostringstream mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (any) mono << "*";
      mono << names.at(i);
      if (e[i] != 1) mono << "^" << e[i];
      any = true;
    }
    if (!any) os << pdiv::to_string(a);
    else if (a == 1) os << mono.str();
    else os << pdiv::to_string(a) << "*" << mono.str();
  }
  return os.str();
}

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& text, const std::vector<std::string>& names) : s_(text), names_(names) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, "polynomial '" + s_ + "' at column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
    return false;
  }
  Poly expr() {
    Poly p(names_.size());
    bool neg = eat('-');
    if (!neg) eat('+');
    p = term();
    if (neg) p = -p;
    while (true) {
      if (eat('+')) p += term();
      else if (eat('-')) p -= term();
      else return p;
    }
  }
  Poly term() {
    Poly p = factor();
    while (true) {
      skip();
      if (eat('*')) { p = p * factor(); continue; }
      if (eat('/')) {
        const Int n = integer();
        if (n == 0) fail("division by zero");
        p *= Rat(1, 1) / Rat(n);
        continue;
      }
      if (pos_ < s_.size() && (s_[pos_] == '(' || std::isalpha(static_cast<unsigned char>(s_[pos_])))) {
        p = p * factor();
        continue;
      }
      return p;
    }
  }
  Poly factor() {
    Poly b = base();
    if (eat('^')) {
      const Int k = integer();
      if (k < 0 || k > 10000) fail("bad exponent");
      b = b.pow(static_cast<unsigned>(k.get_ui()));
    }
    return b;
  }
  Int integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Int(s_.substr(start, pos_ - start));
  }
  Poly base() {
    skip();
    if (eat('(')) {
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      return Poly::constant(names_.size(), Rat(integer()));
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a variable, number or '('");
    const std::string name = s_.substr(start, pos_ - start);
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return Poly::variable(names_.size(), i);
    pos_ = start;
    fail("unknown variable '" + name + "'");
  }

  std::string s_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

void monomials_rec(std::size_t i, int left, Exponents& cur, std::vector<Exponents>& out) {
  if (i + 1 == cur.size()) {
    cur[i] = left;
    out.push_back(cur);
    return;
  }
  for (int k = left; k >= 0; --k) {
    cur[i] = k;
    monomials_rec(i + 1, left - k, cur, out);
  }
}

}  // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& names) {
  return PolyParser(text, names).parse();
}

std::vector<Exponents> monomials_of_degree(std::size_t n, int d) {
  std::vector<Exponents> out;
  if (d < 0) return out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Exponents cur(n, 0);
  monomials_rec(0, d, cur, out);
  return out;
}

QVector coefficients_in(const Poly& p, const std::vector<Exponents>& basis) {
  QVector v(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) v[i] = p.coefficient(basis[i]);
  return v;
}

FunctionFieldElement::FunctionFieldElement(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  const Rat lc = den_.leading_coefficient();
  num_ *= Rat(1) / lc;
  den_ *= Rat(1) / lc;
}

FunctionFieldElement FunctionFieldElement::one(std::size_t nvars) {
  return FunctionFieldElement(Poly::constant(nvars, Rat(1)), Poly::constant(nvars, Rat(1)));
}

FunctionFieldElement FunctionFieldElement::operator*(const FunctionFieldElement& rhs) const {
  return FunctionFieldElement(num_ * rhs.num_, den_ * rhs.den_);
}

FunctionFieldElement FunctionFieldElement::inverse() const {
  if (num_.is_zero()) throw Error(ErrorKind::InvalidArgument, "inverse of zero");
  return FunctionFieldElement(den_, num_);
}

FunctionFieldElement FunctionFieldElement::pow(int k) const {
  if (k >= 0) return FunctionFieldElement(num_.pow(k), den_.pow(k));
  return inverse().pow(-k);
}

FunctionFieldElement FunctionFieldElement::simplified(const std::vector<Poly>& atoms) const {
  Poly n = num_, d = den_;
  std::vector<Poly> all = atoms;
  for (std::size_t i = 0; i < num_.nvars(); ++i) all.push_back(Poly::variable(num_.nvars(), i));
  bool changed = true;
  while (changed && !n.is_zero()) {
    changed = false;
    for (const auto& a : all) {
      if (a.is_constant()) continue;
      auto qn = n.divide(a);
      if (!qn) continue;
      auto qd = d.divide(a);
      if (!qd) continue;
      n = *qn;
      d = *qd;
      changed = true;
    }
  }
  if (n.is_zero()) d = Poly::constant(num_.nvars(), Rat(1));
  return FunctionFieldElement(n, d);
}

std::string FunctionFieldElement::to_string(const std::vector<std::string>& names) const {
  const std::string n = num_.to_string(names);
  if (den_.is_constant()) return n;
  const bool wrap_n = num_.terms().size() > 1;
  return (wrap_n ? "(" + n + ")" : n) + "/(" + den_.to_string(names) + ")";
}

}  // namespace pdiv
