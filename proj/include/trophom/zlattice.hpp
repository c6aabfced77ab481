#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace trophom {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using QVector = std::vector<Rational>;

// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);
  static IntMatrix diagonal(const IntVector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector col(std::size_t j) const;
  std::vector<IntVector> row_list() const;
  IntMatrix transpose() const;
  IntMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  IntMatrix select_rows(const std::vector<std::size_t>& rows) const;
  IntMatrix select_cols(const std::vector<std::size_t>& cols) const;
  bool is_zero() const;
  std::string to_string() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row a += k * row b
  void add_row(std::size_t a, std::size_t b, const Integer& k);
  void add_col(std::size_t a, std::size_t b, const Integer& k);
  void negate_row(std::size_t a);
  void negate_col(std::size_t a);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Integer& k, const IntMatrix& a);
IntVector operator*(const IntMatrix& a, const IntVector& v);
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

Integer dot(const IntVector& a, const IntVector& b);
Rational dot(const IntVector& a, const QVector& b);
Integer content(const IntVector& v);  // gcd of entries, 0 for the zero vector
IntVector primitive(const IntVector& v);
bool is_zero(const IntVector& v);

Integer determinant(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);

struct SmithForm {
  IntMatrix diag;
  IntMatrix left;
  IntMatrix right;
  IntMatrix left_inverse;
  std::size_t rank = 0;
};

// left * m * right = diag, d_i | d_{i+1}, d_i >= 0.
SmithForm smith_normal_form(const IntMatrix& m);

// Nonzero rows of the row-style Hermite normal form: echelon, positive pivots,
// entries above a pivot reduced into [0, pivot).
IntMatrix hermite_normal_form(const IntMatrix& m);

// Integral solution of a * x = b, if any.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

class Sublattice {
 public:
  Sublattice() = default;
  explicit Sublattice(std::size_t ambient_rank);  // zero sublattice
  Sublattice(std::size_t ambient_rank, const std::vector<IntVector>& generators);
  Sublattice(std::size_t ambient_rank, const IntMatrix& generator_rows);

  static Sublattice full(std::size_t ambient_rank);

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t rank() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }

  bool contains(const IntVector& v) const;
  bool contains(const Sublattice& other) const;
  // Coordinates of v in the stored basis.
  std::optional<IntVector> coordinates(const IntVector& v) const;

  friend bool operator==(const Sublattice& a, const Sublattice& b) {
    return a.ambient_rank_ == b.ambient_rank_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Sublattice& a, const Sublattice& b) { return !(a == b); }

 private:
  std::size_t ambient_rank_ = 0;
  IntMatrix basis_;
};

struct AbelianGroupShape {
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;

  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  Integer torsion_order() const;
  std::string to_string() const;
  friend bool operator==(const AbelianGroupShape& a, const AbelianGroupShape& b) {
    return a.free_rank == b.free_rank && a.invariant_factors == b.invariant_factors;
  }
  friend bool operator!=(const AbelianGroupShape& a, const AbelianGroupShape& b) { return !(a == b); }
};

// Build a shape from arbitrary cyclic orders (0 = free, 1 dropped); normalizes
// to the divisibility chain.
AbelianGroupShape shape_from_cyclic(std::size_t free_rank, const std::vector<Integer>& orders);

Integer lattice_index(const Sublattice& ambient, const Sublattice& sub);
Sublattice saturate(const Sublattice& s);
// {x in Z^cols : m x = 0}
Sublattice kernel_basis(const IntMatrix& m);
// Column span of m in Z^rows.
Sublattice image_basis(const IntMatrix& m);
AbelianGroupShape quotient_shape(const Sublattice& ambient, const Sublattice& sub);
AbelianGroupShape cokernel_shape(const IntMatrix& m);

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t p);
std::size_t binomial(std::size_t n, std::size_t k);
IntMatrix wedge_power_map(const IntMatrix& m, std::size_t p);

AbelianGroupShape tor_group(const AbelianGroupShape& a, const AbelianGroupShape& b);
AbelianGroupShape tensor_group(const AbelianGroupShape& a, const AbelianGroupShape& b);
AbelianGroupShape direct_sum(const AbelianGroupShape& a, const AbelianGroupShape& b);

// Extended gcd: g = a*x + b*y, g >= 0.
Integer ext_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y);

std::string rational_to_string(const Rational& q);
Rational parse_rational(const std::string& s);

}  // namespace trophom
