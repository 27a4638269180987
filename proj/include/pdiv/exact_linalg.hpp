#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pdiv {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using QVector = std::vector<Rat>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  /// Rows must share one length; `cols` is only consulted when `rows` is empty.
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols = 0);
  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t rows = 0);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;
  std::vector<IntVector> row_vectors() const;
  IntMatrix transposed() const;

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVector operator*(const IntVector& x) const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

struct HermiteForm {
  IntMatrix H;  ///< row Hermite normal form, zero rows last
  IntMatrix U;  ///< unimodular transform with U * A == H
  std::size_t rank = 0;
};

/// Row Hermite normal form: positive pivots, entries above a pivot reduced
/// into [0, pivot), zero rows at the bottom.
HermiteForm hnf(const IntMatrix& a);

/// Nonzero rows of the HNF; a canonical basis of the row lattice.
IntMatrix lattice_basis(const IntMatrix& a);
IntMatrix lattice_basis(const std::vector<IntVector>& generators, std::size_t dim);

/// True iff `v` is an integer combination of the rows of `h` (which must be in HNF).
bool lattice_member(const IntVector& v, const IntMatrix& h);

/// Integer coefficients c with c * basis == v, if they exist.
std::optional<IntVector> lattice_coordinates(const IntVector& v, const std::vector<IntVector>& basis);

/// Rows form a Z-basis of {x in Z^n : A x = 0}, returned in HNF.
IntMatrix kernel_lattice(const IntMatrix& a);

Int determinant(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);

// ---- vectors ----

Int dot(const IntVector& a, const IntVector& b);
Rat dot(const QVector& a, const QVector& b);
Rat dot(const QVector& a, const IntVector& b);
Int gcd_of(const IntVector& v);
/// Divides by the gcd of the entries; the zero vector is returned unchanged.
IntVector primitive(const IntVector& v);
/// Smallest positive integer multiple that is integral, made primitive.
IntVector primitive(const QVector& v);
QVector to_rational(const IntVector& v);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const IntVector& a, const Int& k);
QVector add(const QVector& a, const QVector& b);
QVector scale(const QVector& a, const Rat& k);
bool is_zero(const IntVector& v);
bool is_zero(const QVector& v);
/// Least common multiple of the coordinate denominators (1 for the zero vector).
Int mu(const QVector& v);
bool is_integral(const QVector& v);
IntVector to_integral(const QVector& v);

// ---- rational linear algebra ----

using QMatrix = std::vector<QVector>;

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(QMatrix& rows, std::size_t cols);
std::size_t rank(const QMatrix& rows, std::size_t cols);
/// Basis of {x : rows * x = 0}, one vector per free column.
QMatrix nullspace(const QMatrix& rows, std::size_t cols);
/// Some solution of rows * x = rhs.
std::optional<QVector> solve(const QMatrix& rows, const QVector& rhs, std::size_t cols);

/// Row echelon form grown one vector at a time; every row is zero before its
/// pivot and has pivot entry 1.
class IncrementalEchelon {
 public:
  explicit IncrementalEchelon(std::size_t cols = 0) : cols_(cols) {}

  std::size_t cols() const noexcept { return cols_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  /// Adds v; returns true iff the rank grew.
  bool insert(QVector v);
  bool contains(QVector v) const;

 private:
  void reduce(QVector& v) const;

  std::size_t cols_;
  std::vector<QVector> rows_;
  std::vector<std::size_t> pivots_;
};

std::string to_string(const Rat& q);
std::string to_string(const IntVector& v);
std::string to_string(const QVector& v);

}  // namespace pdiv
