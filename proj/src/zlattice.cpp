#include "trophom/zlattice.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace trophom {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) return IntMatrix(0, 0);
  return from_rows(rows, rows.front().size());
}

IntMatrix IntMatrix::diagonal(const IntVector& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<IntVector> IntMatrix::row_list() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
  IntMatrix s(rs.size(), cs.size());
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = (*this)(rs[i], cs[j]);
  return s;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& rs) const {
  std::vector<std::size_t> cs(cols_);
  for (std::size_t j = 0; j < cols_; ++j) cs[j] = j;
  return submatrix(rs, cs);
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& cs) const {
  std::vector<std::size_t> rs(rows_);
  for (std::size_t i = 0; i < rows_; ++i) rs[i] = i;
  return submatrix(rs, cs);
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
  }
  os << "]";
  return os.str();
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(std::size_t a, std::size_t b, const Integer& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) += k * (*this)(b, j);
}

void IntMatrix::add_col(std::size_t a, std::size_t b, const Integer& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) += k * (*this)(i, b);
}

void IntMatrix::negate_row(std::size_t a) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) = -(*this)(a, j);
}

void IntMatrix::negate_col(std::size_t a) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) = -(*this)(i, a);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("IntMatrix product: dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("IntMatrix sum: dimension mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

IntMatrix operator*(const Integer& k, const IntMatrix& a) {
  IntMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= k;
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("IntMatrix*vector: dimension mismatch");
  IntVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  IntMatrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
  return c;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const IntVector& a, const QVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntVector primitive(const IntVector& v) {
  Integer g = content(v);
  if (g == 0) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a(s, k) == 0) ++s;
      if (s == n) return 0;
      a.swap_rows(k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) { return hermite_normal_form(m).rows(); }

namespace {

// Row operations applied simultaneously to the working matrix, the left
// transform and its inverse.
struct RowTracker {
  IntMatrix& a;
  IntMatrix& left;
  IntMatrix& left_inv;
  void swap(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    left.swap_rows(i, j);
    left_inv.swap_cols(i, j);
  }
  void add(std::size_t i, std::size_t j, const Integer& k) {
    a.add_row(i, j, k);
    left.add_row(i, j, k);
    left_inv.add_col(j, i, -k);
  }
  void negate(std::size_t i) {
    a.negate_row(i);
    left.negate_row(i);
    left_inv.negate_col(i);
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  SmithForm out;
  out.diag = m;
  out.left = IntMatrix::identity(r);
  out.left_inverse = IntMatrix::identity(r);
  out.right = IntMatrix::identity(c);
  IntMatrix& a = out.diag;
  RowTracker rows{a, out.left, out.left_inverse};

  auto move_min_to_pivot = [&](std::size_t t, bool whole) -> bool {
    std::size_t bi = r, bj = c;
    Integer best = 0;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j) {
        if (!whole && i != t && j != t) continue;
        if (a(i, j) == 0) continue;
        Integer v = abs(a(i, j));
        if (bi == r || v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (bi == r) return false;
    rows.swap(t, bi);
    a.swap_cols(t, bj);
    out.right.swap_cols(t, bj);
    return true;
  };

  std::size_t t = 0;
  for (; t < std::min(r, c); ++t) {
    if (!move_min_to_pivot(t, true)) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        rows.add(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_col(j, t, -q);
        out.right.add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        move_min_to_pivot(t, false);
        continue;
      }
      bool divisible = true;
      for (std::size_t i = t + 1; i < r && divisible; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a(i, j) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            rows.add(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (a(t, t) < 0) rows.negate(t);
  }
  out.rank = t;
  return out;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t r = a.rows(), c = a.cols();
  std::size_t pr = 0;
  for (std::size_t j = 0; j < c && pr < r; ++j) {
    for (;;) {
      std::size_t best = r;
      for (std::size_t i = pr; i < r; ++i)
        if (a(i, j) != 0 && (best == r || abs(a(i, j)) < abs(a(best, j)))) best = i;
      if (best == r) break;
      a.swap_rows(pr, best);
      bool done = true;
      for (std::size_t i = pr + 1; i < r; ++i) {
        if (a(i, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, j).get_mpz_t(), a(pr, j).get_mpz_t());
        a.add_row(i, pr, -q);
        if (a(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (a(pr, j) == 0) continue;
    if (a(pr, j) < 0) a.negate_row(pr);
    for (std::size_t i = 0; i < pr; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, j).get_mpz_t(), a(pr, j).get_mpz_t());
      a.add_row(i, pr, -q);
    }
    ++pr;
  }
  std::vector<std::size_t> keep(pr);
  for (std::size_t i = 0; i < pr; ++i) keep[i] = i;
  IntMatrix h = a.select_rows(keep);
  if (pr == 0) h = IntMatrix(0, c);
  return h;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_integer: dimension mismatch");
  SmithForm s = smith_normal_form(a);
  IntVector lb = s.left * b;
  IntVector y(a.cols());
  for (std::size_t i = 0; i < lb.size(); ++i) {
    if (i < s.rank) {
      if (!mpz_divisible_p(lb[i].get_mpz_t(), s.diag(i, i).get_mpz_t())) return std::nullopt;
      y[i] = lb[i] / s.diag(i, i);
    } else if (lb[i] != 0) {
      return std::nullopt;
    }
  }
  return s.right * y;
}

Sublattice::Sublattice(std::size_t ambient_rank) : ambient_rank_(ambient_rank), basis_(0, ambient_rank) {}

Sublattice::Sublattice(std::size_t ambient_rank, const std::vector<IntVector>& generators)
    : ambient_rank_(ambient_rank) {
  for (const auto& g : generators)
    if (g.size() != ambient_rank) throw std::invalid_argument("Sublattice: generator of wrong length");
  basis_ = generators.empty() ? IntMatrix(0, ambient_rank)
                              : hermite_normal_form(IntMatrix::from_rows(generators, ambient_rank));
}

Sublattice::Sublattice(std::size_t ambient_rank, const IntMatrix& generator_rows) : ambient_rank_(ambient_rank) {
  if (generator_rows.rows() > 0 && generator_rows.cols() != ambient_rank)
    throw std::invalid_argument("Sublattice: generator of wrong length");
  basis_ = generator_rows.rows() == 0 ? IntMatrix(0, ambient_rank) : hermite_normal_form(generator_rows);
}

Sublattice Sublattice::full(std::size_t ambient_rank) {
  return Sublattice(ambient_rank, IntMatrix::identity(ambient_rank));
}

std::optional<IntVector> Sublattice::coordinates(const IntVector& v) const {
  if (v.size() != ambient_rank_) throw std::invalid_argument("Sublattice::coordinates: wrong length");
  IntVector rest = v;
  IntVector y(rank());
  std::size_t col = 0;
  for (std::size_t k = 0; k < rank(); ++k) {
    while (basis_(k, col) == 0) ++col;
    for (std::size_t j = 0; j < col; ++j)
      if (rest[j] != 0) return std::nullopt;
    if (!mpz_divisible_p(rest[col].get_mpz_t(), basis_(k, col).get_mpz_t())) return std::nullopt;
    y[k] = rest[col] / basis_(k, col);
    for (std::size_t j = col; j < ambient_rank_; ++j) rest[j] -= y[k] * basis_(k, j);
  }
  if (!trophom::is_zero(rest)) return std::nullopt;
  return y;
}

bool Sublattice::contains(const IntVector& v) const { return coordinates(v).has_value(); }

bool Sublattice::contains(const Sublattice& other) const {
  if (other.ambient_rank_ != ambient_rank_) return false;
  for (std::size_t i = 0; i < other.rank(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

Integer AbelianGroupShape::torsion_order() const {
  Integer o = 1;
  for (const auto& d : invariant_factors) o *= d;
  return o;
}

std::string AbelianGroupShape::to_string() const {
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& d : invariant_factors) {
    os << (first ? "" : "+") << "Z/" << d.get_str();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

AbelianGroupShape shape_from_cyclic(std::size_t free_rank, const std::vector<Integer>& orders) {
  AbelianGroupShape s;
  s.free_rank = free_rank;
  std::vector<Integer> nontrivial;
  for (const auto& o : orders) {
    if (o == 0) {
      ++s.free_rank;
    } else if (abs(o) != 1) {
      nontrivial.push_back(abs(o));
    }
  }
  if (nontrivial.empty()) return s;
  SmithForm f = smith_normal_form(IntMatrix::diagonal(nontrivial));
  for (std::size_t i = 0; i < nontrivial.size(); ++i)
    if (f.diag(i, i) > 1) s.invariant_factors.push_back(f.diag(i, i));
  return s;
}

Integer lattice_index(const Sublattice& ambient, const Sublattice& sub) {
  if (ambient.ambient_rank() != sub.ambient_rank()) throw std::invalid_argument("lattice_index: ambient rank mismatch");
  IntMatrix coords(sub.rank(), ambient.rank());
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    auto c = ambient.coordinates(sub.basis().row(i));
    if (!c) throw std::invalid_argument("lattice_index: sublattice not contained in ambient lattice");
    for (std::size_t j = 0; j < ambient.rank(); ++j) coords(i, j) = (*c)[j];
  }
  if (sub.rank() < ambient.rank()) return 0;
  return abs(determinant(coords));
}

Sublattice kernel_basis(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  std::vector<IntVector> gens;
  for (std::size_t j = s.rank; j < m.cols(); ++j) gens.push_back(s.right.col(j));
  return Sublattice(m.cols(), gens);
}

Sublattice image_basis(const IntMatrix& m) { return Sublattice(m.rows(), m.transpose()); }

Sublattice saturate(const Sublattice& s) {
  if (s.rank() == 0) return s;
  Sublattice ann = kernel_basis(s.basis());
  if (ann.rank() == 0) return Sublattice::full(s.ambient_rank());
  return kernel_basis(ann.basis());
}

AbelianGroupShape cokernel_shape(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  std::vector<Integer> orders;
  for (std::size_t i = 0; i < s.rank; ++i) orders.push_back(s.diag(i, i));
  return shape_from_cyclic(m.rows() - s.rank, orders);
}

AbelianGroupShape quotient_shape(const Sublattice& ambient, const Sublattice& sub) {
  if (ambient.ambient_rank() != sub.ambient_rank()) throw std::invalid_argument("quotient_shape: ambient rank mismatch");
  IntMatrix coords(ambient.rank(), sub.rank());
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    auto c = ambient.coordinates(sub.basis().row(i));
    if (!c) throw std::invalid_argument("quotient_shape: sublattice not contained in ambient lattice");
    for (std::size_t j = 0; j < ambient.rank(); ++j) coords(j, i) = (*c)[j];
  }
  return cokernel_shape(coords);
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t p) {
  std::vector<std::vector<std::size_t>> out;
  if (p > n) return out;
  std::vector<std::size_t> cur(p);
  for (std::size_t i = 0; i < p; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = p;
    while (i > 0 && cur[i - 1] == n - p + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < p; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

IntMatrix wedge_power_map(const IntMatrix& m, std::size_t p) {
  auto rs = subsets(m.rows(), p);
  auto cs = subsets(m.cols(), p);
  IntMatrix w(rs.size(), cs.size());
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) w(i, j) = determinant(m.submatrix(rs[i], cs[j]));
  return w;
}

AbelianGroupShape tor_group(const AbelianGroupShape& a, const AbelianGroupShape& b) {
  std::vector<Integer> orders;
  for (const auto& x : a.invariant_factors)
    for (const auto& y : b.invariant_factors) orders.push_back(gcd(x, y));
  return shape_from_cyclic(0, orders);
}

AbelianGroupShape tensor_group(const AbelianGroupShape& a, const AbelianGroupShape& b) {
  std::vector<Integer> orders;
  for (std::size_t i = 0; i < a.free_rank; ++i) orders.insert(orders.end(), b.invariant_factors.begin(), b.invariant_factors.end());
  for (std::size_t i = 0; i < b.free_rank; ++i) orders.insert(orders.end(), a.invariant_factors.begin(), a.invariant_factors.end());
  for (const auto& x : a.invariant_factors)
    for (const auto& y : b.invariant_factors) orders.push_back(gcd(x, y));
  return shape_from_cyclic(a.free_rank * b.free_rank, orders);
}

AbelianGroupShape direct_sum(const AbelianGroupShape& a, const AbelianGroupShape& b) {
  std::vector<Integer> orders = a.invariant_factors;
  orders.insert(orders.end(), b.invariant_factors.begin(), b.invariant_factors.end());
  return shape_from_cyclic(a.free_rank + b.free_rank, orders);
}

Integer ext_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
  Integer g;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

std::string rational_to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("malformed rational '" + s + "'");
  if (num[0] == '+') num = num.substr(1);
  if (den[0] == '+') den = den.substr(1);
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

}  // namespace trophom
