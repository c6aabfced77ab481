#pragma once

// Fixtures and independent reference computations shared by the test suites.
// Nothing here calls the library's normal-form or homology routines.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "trophom/cycles.hpp"
#include "trophom/io.hpp"
#include "trophom/polyhedral.hpp"
#include "trophom/zlattice.hpp"

namespace fixtures {

using namespace trophom;

inline std::string gallery(const std::string& name) { return std::string(TROPHOM_GALLERY_DIR) + "/" + name; }

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline QVector origin(std::size_t n) { return QVector(n, Rational(0)); }

// One-dimensional fan in R^n with the given rays (ids r0, r1, ...).
inline FaceComplex ray_fan(std::size_t n, const std::vector<IntVector>& rays) {
  std::vector<CellSpec> specs;
  specs.push_back({"o", {}, {origin(n)}, {}, {}, 1});
  for (std::size_t i = 0; i < rays.size(); ++i)
    specs.push_back({"r" + std::to_string(i), {}, {origin(n)}, {rays[i]}, {{"o", false}}, 1});
  return FaceComplex::build(n, specs);
}

inline FaceComplex standard_line() { return ray_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})}); }
inline FaceComplex real_line() { return ray_fan(1, {iv({1}), iv({-1})}); }
inline FaceComplex y_shape() { return ray_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, 0})}); }

// ⊥R with the cells {0}, {∞}, (−∞,0], [0,∞].
inline FaceComplex bot_r() {
  std::vector<CellSpec> specs;
  specs.push_back({"0", {}, {origin(1)}, {}, {}, 1});
  specs.push_back({"inf", {0}, {QVector{}}, {}, {}, 1});
  specs.push_back({"neg", {}, {origin(1)}, {iv({-1})}, {{"0", false}}, 1});
  specs.push_back({"pos", {}, {origin(1)}, {iv({1})}, {{"0", false}, {"inf", true}}, 1});
  return FaceComplex::build(1, specs);
}

// Complete fan of R^2 by the four coordinate quadrants.
inline FaceComplex plane() {
  std::vector<CellSpec> specs;
  std::vector<std::pair<std::string, IntVector>> rays{
      {"px", iv({1, 0})}, {"py", iv({0, 1})}, {"nx", iv({-1, 0})}, {"ny", iv({0, -1})}};
  specs.push_back({"o", {}, {origin(2)}, {}, {}, 1});
  for (auto& [id, r] : rays) specs.push_back({id, {}, {origin(2)}, {r}, {{"o", false}}, 1});
  for (std::size_t i = 0; i < 4; ++i) {
    auto& a = rays[i];
    auto& b = rays[(i + 1) % 4];
    specs.push_back({a.first + "_" + b.first, {}, {origin(2)}, {a.second, b.second},
                     {{"o", false}, {a.first, false}, {b.first, false}}, 1});
  }
  return FaceComplex::build(2, specs);
}

// Three half-planes R e0 + R>=0 e_i in R^3 with e3 = -e1-e2.
inline FaceComplex half_planes() {
  std::vector<CellSpec> specs;
  IntVector a = iv({1, 0, 0}), b = iv({-1, 0, 0});
  specs.push_back({"L", {}, {origin(3)}, {a, b}, {}, 1});
  specs.push_back({"H1", {}, {origin(3)}, {a, b, iv({0, 1, 0})}, {{"L", false}}, 1});
  specs.push_back({"H2", {}, {origin(3)}, {a, b, iv({0, 0, 1})}, {{"L", false}}, 1});
  specs.push_back({"H3", {}, {origin(3)}, {a, b, iv({0, -1, -1})}, {{"L", false}}, 1});
  return FaceComplex::build(3, specs);
}

inline TropicalCycle weighted(const FaceComplex& c, std::size_t k, const std::map<std::string, long>& w) {
  std::map<std::string, Integer> m;
  for (auto& [id, x] : w) m[id] = x;
  return make_cycle(c, k, m);
}

// ---- Reference arithmetic -------------------------------------------------

inline Integer gcd_all(const std::vector<Integer>& xs) {
  Integer g = 0;
  for (const auto& x : xs) {
    mpz_class t;
    mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    g = t;
  }
  return g;
}

// Rational Gaussian elimination.
inline std::size_t q_rank(const std::vector<std::vector<Rational>>& rows_in) {
  auto rows = rows_in;
  if (rows.empty()) return 0;
  std::size_t cols = rows[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

inline std::size_t q_rank(const IntMatrix& m) {
  std::vector<std::vector<Rational>> rows(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return q_rank(rows);
}

inline Integer q_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det.get_num();
}

inline std::vector<std::vector<std::size_t>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline Integer minor(const IntMatrix& m, const std::vector<std::size_t>& r, const std::vector<std::size_t>& c) {
  IntMatrix s(r.size(), c.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) s(i, j) = m(r[i], c[j]);
  return q_det(s);
}

// Invariant factors from determinantal divisors D_k = gcd of k x k minors.
inline std::vector<Integer> determinantal_factors(const IntMatrix& m) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<Integer> ms;
    for (auto& r : k_subsets(m.rows(), k))
      for (auto& c : k_subsets(m.cols(), k)) ms.push_back(minor(m, r, c));
    Integer d = gcd_all(ms);
    if (d == 0) break;
    out.push_back(d / prev);
    prev = d;
  }
  return out;
}

// Textbook Smith reduction by elementary row and column operations, kept
// deliberately naive: repeatedly move the smallest nonzero entry to the pivot,
// clear its row and column by division with remainder, and fix divisibility by
// adding a row. Returns the nonzero diagonal entries.
inline std::vector<Integer> elementary_smith(IntMatrix a) {
  std::vector<Integer> out;
  const std::size_t R = a.rows(), C = a.cols();
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    while (true) {
      bool found = false;
      std::size_t bi = 0, bj = 0;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (a(i, j) != 0 && (!found || abs(a(i, j)) < abs(a(bi, bj)))) {
            found = true;
            bi = i;
            bj = j;
          }
      if (!found) return out;
      a.swap_rows(t, bi);
      a.swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        a.add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < R && divides; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(abs(a(t, t)));
  }
  return out;
}

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Homology shape of C_{q+1} --a--> C_q --b--> C_{q-1} from invariant factors:
// free rank = dim C_q - rank b - rank a, torsion = factors of a that exceed 1.
inline AbelianGroupShape oracle_homology(std::size_t dim, const IntMatrix& into, const IntMatrix& out_of) {
  std::size_t rb = out_of.rows() && out_of.cols() ? q_rank(out_of) : 0;
  std::vector<Integer> f = into.rows() && into.cols() ? elementary_smith(into) : std::vector<Integer>{};
  std::vector<Integer> tors;
  for (auto& x : f)
    if (x > 1) tors.push_back(x);
  AbelianGroupShape s;
  s.free_rank = dim - rb - f.size();
  s.invariant_factors = tors;
  return s;
}

// Random primitive direction in Z^n with entries in [-2,2].
inline IntVector random_primitive(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<long> d(-2, 2);
  while (true) {
    IntVector v(n);
    for (auto& x : v) x = d(rng);
    if (gcd_all(v) == 1) return v;
  }
}

}  // namespace fixtures
