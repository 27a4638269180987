#include "pdiv/exact_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "pdiv/error.hpp"

namespace pdiv {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonPointedCone: return "NonPointedCone";
    case ErrorKind::NonIntegralDivisor: return "NonIntegralDivisor";
    case ErrorKind::UnsupportedBackend: return "UnsupportedBackend";
    case ErrorKind::NotTMoveable: return "NotTMoveable";
    case ErrorKind::WeightOutsideCone: return "WeightOutsideCone";
    case ErrorKind::NotSubcone: return "NotSubcone";
    case ErrorKind::IterationLimitExceeded: return "IterationLimitExceeded";
    case ErrorKind::UnsupportedBase: return "UnsupportedBase";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Semantic: return "SemanticError";
  }
  return "Unknown";
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw Error(ErrorKind::DimensionMismatch, "IntMatrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& columns, std::size_t rows) {
  return from_rows(columns, rows).transposed();
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<IntVector> IntMatrix::row_vectors() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorKind::DimensionMismatch, "IntMatrix product");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

IntVector IntMatrix::operator*(const IntVector& x) const {
  if (x.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "IntMatrix * vector");
  IntVector out(rows_, Int(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * x[k];
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c).get_str();
    os << '\n';
  }
  return os;
}

namespace {

void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Int& k) {
  // row[dst] -= k * row[src]
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) -= k * m(src, c);
}

void row_swap(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void row_negate(IntMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm hnf(const IntMatrix& a) {
  HermiteForm out{a, IntMatrix::identity(a.rows()), 0};
  IntMatrix& h = out.H;
  IntMatrix& u = out.U;
  const std::size_t m = h.rows();
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < m; ++c) {
    while (true) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (h(i, c) == 0) continue;
        if (best == m || abs(h(i, c)) < abs(h(best, c))) best = i;
      }
      if (best == m) break;
      if (best != r) {
        row_swap(h, best, r);
        row_swap(u, best, r);
      }
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        const Int q = floor_div(h(i, c), h(r, c));
        row_axpy(h, i, r, q);
        row_axpy(u, i, r, q);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      row_negate(h, r);
      row_negate(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const Int q = floor_div(h(i, c), h(r, c));
      if (q == 0) continue;
      row_axpy(h, i, r, q);
      row_axpy(u, i, r, q);
    }
    ++r;
  }
  out.rank = r;
  return out;
}

IntMatrix lattice_basis(const IntMatrix& a) {
  const HermiteForm f = hnf(a);
  IntMatrix out(f.rank, a.cols());
  for (std::size_t r = 0; r < f.rank; ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = f.H(r, c);
  return out;
}

IntMatrix lattice_basis(const std::vector<IntVector>& generators, std::size_t dim) {
  return lattice_basis(IntMatrix::from_rows(generators, dim));
}

namespace {

// Reduces v against HNF rows; returns the coefficients if v lies in the lattice.
std::optional<IntVector> hnf_reduce(IntVector v, const IntMatrix& h) {
  if (v.size() != h.cols())
    throw Error(ErrorKind::DimensionMismatch, "lattice_member: vector/basis dimension mismatch");
  IntVector coeffs(h.rows(), Int(0));
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t p = 0;
    while (p < h.cols() && h(r, p) == 0) ++p;
    if (p == h.cols()) continue;
    for (std::size_t c = 0; c < p; ++c)
      if (v[c] != 0) return std::nullopt;
    if (!mpz_divisible_p(v[p].get_mpz_t(), h(r, p).get_mpz_t())) return std::nullopt;
    const Int q = v[p] / h(r, p);
    coeffs[r] = q;
    if (q != 0)
      for (std::size_t c = 0; c < h.cols(); ++c) v[c] -= q * h(r, c);
  }
  if (!is_zero(v)) return std::nullopt;
  return coeffs;
}

}  // namespace

bool lattice_member(const IntVector& v, const IntMatrix& h) {
  return hnf_reduce(v, h).has_value();
}

std::optional<IntVector> lattice_coordinates(const IntVector& v, const std::vector<IntVector>& basis) {
  const IntMatrix b = IntMatrix::from_rows(basis, v.size());
  const HermiteForm f = hnf(b);
  auto d = hnf_reduce(v, f.H);
  if (!d) return std::nullopt;
  IntVector c(basis.size(), Int(0));
  for (std::size_t r = 0; r < f.H.rows(); ++r) {
    if ((*d)[r] == 0) continue;
    for (std::size_t j = 0; j < basis.size(); ++j) c[j] += (*d)[r] * f.U(r, j);
  }
  return c;
}

IntMatrix kernel_lattice(const IntMatrix& a) {
  const HermiteForm f = hnf(a.transposed());
  const std::size_t n = a.cols();
  std::vector<IntVector> basis;
  for (std::size_t r = f.rank; r < n; ++r) basis.push_back(f.U.row(r));
  return lattice_basis(basis, n);
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      row_swap(m, p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) { return hnf(a).rank; }

Int dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const QVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int gcd_of(const IntVector& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

IntVector primitive(const IntVector& v) {
  const Int g = gcd_of(v);
  if (g == 0 || g == 1) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

IntVector primitive(const QVector& v) {
  const Int m = mu(v);
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat x = v[i] * m;
    out[i] = x.get_num();
  }
  return primitive(out);
}

QVector to_rational(const IntVector& v) {
  QVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

IntVector add(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "add");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVector sub(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "sub");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

IntVector scale(const IntVector& a, const Int& k) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * k;
  return out;
}

QVector add(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "add");
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

QVector scale(const QVector& a, const Rat& k) {
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * k;
  return out;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

Int mu(const QVector& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm(l, Int(x.get_den()));
  return l;
}

bool is_integral(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.get_den() == 1; });
}

IntVector to_integral(const QVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw Error(ErrorKind::InvalidArgument, "to_integral: non-integral entry");
    out[i] = v[i].get_num();
  }
  return out;
}

std::vector<std::size_t> rref(QMatrix& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rat inv = 1 / rows[r][c];
    for (std::size_t j = c; j < cols; ++j) rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rat f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::size_t rank(const QMatrix& rows, std::size_t cols) {
  QMatrix copy = rows;
  return rref(copy, cols).size();
}

QMatrix nullspace(const QMatrix& rows, std::size_t cols) {
  QMatrix m = rows;
  const auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  QMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVector v(cols, Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& rows, const QVector& rhs, std::size_t cols) {
  QMatrix aug;
  aug.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    QVector r = rows[i];
    r.push_back(rhs[i]);
    aug.push_back(std::move(r));
  }
  const auto pivots = rref(aug, cols + 1);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  QVector x(cols, Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

std::string to_string(const Rat& q) { return q.get_str(); }

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

std::string to_string(const QVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

}  // namespace pdiv

namespace pdiv {

void IncrementalEchelon::reduce(QVector& v) const {
  if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "IncrementalEchelon: vector length");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rat c = v[pivots_[i]];
    if (c == 0) continue;
    const QVector& r = rows_[i];
    for (std::size_t j = pivots_[i]; j < cols_; ++j)
      if (r[j] != 0) v[j] -= c * r[j];
  }
}

bool IncrementalEchelon::insert(QVector v) {
  reduce(v);
  std::size_t p = 0;
  while (p < cols_ && v[p] == 0) ++p;
  if (p == cols_) return false;
  const Rat lead = v[p];
  for (std::size_t j = p; j < cols_; ++j) v[j] /= lead;
  const auto at = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + at, p);
  rows_.insert(rows_.begin() + at, std::move(v));
  return true;
}

bool IncrementalEchelon::contains(QVector v) const {
  reduce(v);
  return is_zero(v);
}

}  // namespace pdiv
