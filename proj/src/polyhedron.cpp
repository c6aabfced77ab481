#include "trophom/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace trophom {

namespace {

struct QVectorLess {
  bool operator()(const QVector& a, const QVector& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(std::vector<QVector>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    Rational inv = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

IntMatrix normals_matrix(const std::vector<const AffineConstraint*>& cs, std::size_t d) {
  IntMatrix m(cs.size(), d);
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = cs[i]->normal[j];
  return m;
}

struct VRep {
  bool empty = true;
  std::vector<QVector> vertices;
  std::vector<IntVector> rays;
  std::vector<IntVector> lineality;
};

VRep vertex_enumeration(std::size_t d, const std::vector<AffineConstraint>& eqs,
                        const std::vector<AffineConstraint>& ineqs) {
  VRep out;
  std::vector<const AffineConstraint*> all;
  for (const auto& e : eqs) all.push_back(&e);
  for (const auto& a : ineqs) all.push_back(&a);
  Sublattice lin = all.empty() ? Sublattice::full(d) : kernel_basis(normals_matrix(all, d));

  std::vector<QVector> m0;
  QVector b0;
  std::vector<IntVector> m0_int;
  for (const auto& e : eqs) {
    m0.push_back(to_q(e.normal));
    m0_int.push_back(e.normal);
    b0.push_back(-e.constant);
  }
  for (std::size_t i = 0; i < lin.rank(); ++i) {
    IntVector l = lin.basis().row(i);
    m0.push_back(to_q(l));
    m0_int.push_back(l);
    b0.push_back(0);
  }
  if (!m0.empty() && !solve_q(m0, b0)) return out;
  const std::size_t r0 = rank_q(m0);
  const std::size_t deff = d - r0;

  auto feasible = [&](const QVector& x) {
    for (const auto& a : ineqs)
      if (a.evaluate(x) < 0) return false;
    return true;
  };

  std::set<QVector, QVectorLess> verts;
  if (deff == 0) {
    QVector x = m0.empty() ? QVector(d) : *solve_q(m0, b0);
    if (feasible(x)) verts.insert(x);
  } else {
    for (const auto& t : subsets(ineqs.size(), deff)) {
      std::vector<QVector> m = m0;
      QVector b = b0;
      for (std::size_t i : t) {
        m.push_back(to_q(ineqs[i].normal));
        b.push_back(-ineqs[i].constant);
      }
      if (rank_q(m) != d) continue;
      auto x = solve_q(m, b);
      if (x && feasible(*x)) verts.insert(*x);
    }
  }
  if (verts.empty()) return out;

  std::set<IntVector> rays;
  if (deff >= 1) {
    for (const auto& t : subsets(ineqs.size(), deff - 1)) {
      std::vector<IntVector> rows = m0_int;
      for (std::size_t i : t) rows.push_back(ineqs[i].normal);
      Sublattice k = rows.empty() ? Sublattice::full(d) : kernel_basis(IntMatrix::from_rows(rows, d));
      if (k.rank() != 1) continue;
      IntVector v = primitive(k.basis().row(0));
      for (int s : {1, -1}) {
        IntVector w = v;
        if (s < 0)
          for (auto& x : w) x = -x;
        bool ok = true;
        for (const auto& a : ineqs)
          if (dot(a.normal, w) < 0) {
            ok = false;
            break;
          }
        if (ok) rays.insert(w);
      }
    }
  }
  out.empty = false;
  out.vertices.assign(verts.begin(), verts.end());
  out.rays.assign(rays.begin(), rays.end());
  out.lineality = lin.basis().row_list();
  return out;
}

struct HRep {
  std::vector<AffineConstraint> equations;
  std::vector<AffineConstraint> facets;
  int dim = -1;
};

// Constraints of conv(points) + cone(rays) via the homogenized cone.
HRep enumerate_constraints(std::size_t d, const std::vector<QVector>& points, const std::vector<IntVector>& rays) {
  HRep out;
  std::vector<IntVector> g;
  for (const auto& p : points) {
    Integer den = 1;
    for (const auto& x : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    IntVector h(d + 1);
    for (std::size_t i = 0; i < d; ++i) h[i] = Integer(p[i] * den);
    h[d] = den;
    g.push_back(h);
  }
  const std::size_t npoints = g.size();
  for (const auto& r : rays) {
    IntVector h(r.begin(), r.end());
    h.push_back(0);
    g.push_back(h);
  }
  if (npoints == 0) return out;
  IntMatrix gm = IntMatrix::from_rows(g, d + 1);
  Sublattice ann = kernel_basis(gm);
  for (std::size_t i = 0; i < ann.rank(); ++i) {
    IntVector h = ann.basis().row(i);
    out.equations.push_back({IntVector(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(d)), Rational(h[d])});
  }
  const std::size_t w = d + 1 - ann.rank();
  out.dim = static_cast<int>(w) - 1;
  if (w <= 1) return out;

  std::set<std::vector<bool>> seen;
  for (const auto& s : subsets(g.size(), w - 1)) {
    IntMatrix sm = gm.select_rows(s);
    Sublattice k = kernel_basis(sm);
    if (k.rank() != d + 1 - (w - 1)) continue;
    IntVector h;
    std::vector<Integer> vals;
    for (std::size_t b = 0; b < k.rank(); ++b) {
      IntVector cand = k.basis().row(b);
      std::vector<Integer> v(g.size());
      bool nonzero = false;
      for (std::size_t i = 0; i < g.size(); ++i) {
        v[i] = dot(cand, g[i]);
        if (v[i] != 0) nonzero = true;
      }
      if (nonzero) {
        h = cand;
        vals = v;
        break;
      }
    }
    if (h.empty()) continue;
    bool pos = false, neg = false;
    for (const auto& v : vals) {
      if (v > 0) pos = true;
      if (v < 0) neg = true;
    }
    if (pos && neg) continue;
    if (neg) {
      for (auto& x : h) x = -x;
      for (auto& x : vals) x = -x;
    }
    std::vector<bool> tight(g.size());
    bool point_tight = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
      tight[i] = vals[i] == 0;
      if (tight[i] && i < npoints) point_tight = true;
    }
    if (!point_tight) continue;
    if (!seen.insert(tight).second) continue;
    h = primitive(h);
    out.facets.push_back({IntVector(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(d)), Rational(h[d])});
  }
  std::sort(out.facets.begin(), out.facets.end(), [](const AffineConstraint& a, const AffineConstraint& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.constant < b.constant;
  });
  return out;
}

}  // namespace

QVector to_q(const IntVector& v) {
  QVector q(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) q[i] = v[i];
  return q;
}

IntVector clear_denominators(const QVector& v) {
  Integer den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Integer(v[i] * den);
  return primitive(out);
}

std::size_t rank_q(const std::vector<QVector>& rows) {
  if (rows.empty()) return 0;
  std::vector<QVector> m = rows;
  return rref(m, rows.front().size()).size();
}

std::optional<QVector> solve_q(const std::vector<QVector>& a, const QVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_q: dimension mismatch");
  if (a.empty()) return QVector();
  const std::size_t n = a.front().size();
  std::vector<QVector> m;
  for (std::size_t i = 0; i < a.size(); ++i) {
    QVector row = a[i];
    row.push_back(b[i]);
    m.push_back(row);
  }
  auto piv = rref(m, n + 1);
  QVector x(n);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == n) return std::nullopt;
    x[piv[r]] = m[r][n];
  }
  return x;
}

Polyhedron Polyhedron::empty_set(std::size_t dim) {
  Polyhedron p;
  p.ambient_dim_ = dim;
  return p;
}

void Polyhedron::compute_constraints() {
  std::vector<IntVector> rec = recession_generators();
  HRep h = enumerate_constraints(ambient_dim_, vertices_, rec);
  equations_ = std::move(h.equations);
  facets_ = std::move(h.facets);
  dim_ = h.dim;
}

Polyhedron Polyhedron::from_generators(std::size_t dim, const std::vector<QVector>& points,
                                       const std::vector<IntVector>& rays) {
  for (const auto& p : points)
    if (p.size() != dim) throw std::invalid_argument("Polyhedron: point of wrong dimension");
  for (const auto& r : rays)
    if (r.size() != dim) throw std::invalid_argument("Polyhedron: ray of wrong dimension");
  if (points.empty()) return empty_set(dim);
  std::vector<IntVector> nz;
  for (const auto& r : rays)
    if (!is_zero(r)) nz.push_back(r);
  HRep h = enumerate_constraints(dim, points, nz);
  VRep v = vertex_enumeration(dim, h.equations, h.facets);
  Polyhedron p;
  p.ambient_dim_ = dim;
  p.empty_ = false;
  p.dim_ = h.dim;
  p.vertices_ = std::move(v.vertices);
  p.rays_ = std::move(v.rays);
  p.lineality_ = std::move(v.lineality);
  p.equations_ = std::move(h.equations);
  p.facets_ = std::move(h.facets);
  return p;
}

Polyhedron Polyhedron::from_constraints(std::size_t dim, const std::vector<AffineConstraint>& equations,
                                        const std::vector<AffineConstraint>& inequalities) {
  for (const auto& c : equations)
    if (c.normal.size() != dim) throw std::invalid_argument("Polyhedron: constraint of wrong dimension");
  for (const auto& c : inequalities)
    if (c.normal.size() != dim) throw std::invalid_argument("Polyhedron: constraint of wrong dimension");
  VRep v = vertex_enumeration(dim, equations, inequalities);
  if (v.empty) return empty_set(dim);
  Polyhedron p;
  p.ambient_dim_ = dim;
  p.empty_ = false;
  p.vertices_ = std::move(v.vertices);
  p.rays_ = std::move(v.rays);
  p.lineality_ = std::move(v.lineality);
  p.compute_constraints();
  return p;
}

std::vector<IntVector> Polyhedron::recession_generators() const {
  std::vector<IntVector> out = rays_;
  for (const auto& l : lineality_) {
    out.push_back(l);
    IntVector m = l;
    for (auto& x : m) x = -x;
    out.push_back(m);
  }
  return out;
}

Sublattice Polyhedron::tangent() const {
  if (empty_) return Sublattice(ambient_dim_);
  if (equations_.empty()) return Sublattice::full(ambient_dim_);
  std::vector<IntVector> rows;
  for (const auto& e : equations_) rows.push_back(e.normal);
  return kernel_basis(IntMatrix::from_rows(rows, ambient_dim_));
}

bool Polyhedron::contains(const QVector& x) const {
  if (empty_) return false;
  for (const auto& e : equations_)
    if (e.evaluate(x) != 0) return false;
  for (const auto& f : facets_)
    if (f.evaluate(x) < 0) return false;
  return true;
}

bool Polyhedron::contains(const Polyhedron& q) const {
  if (q.empty_) return true;
  if (empty_) return false;
  for (const auto& v : q.vertices_)
    if (!contains(v)) return false;
  for (const auto& r : q.recession_generators()) {
    for (const auto& e : equations_)
      if (dot(e.normal, r) != 0) return false;
    for (const auto& f : facets_)
      if (dot(f.normal, r) < 0) return false;
  }
  return true;
}

bool Polyhedron::in_relative_interior(const QVector& x) const {
  if (!contains(x)) return false;
  for (const auto& f : facets_)
    if (f.evaluate(x) == 0) return false;
  return true;
}

QVector Polyhedron::relative_interior_point() const {
  if (empty_) throw std::logic_error("relative_interior_point of empty polyhedron");
  QVector x(ambient_dim_);
  for (const auto& v : vertices_)
    for (std::size_t i = 0; i < ambient_dim_; ++i) x[i] += v[i];
  for (auto& c : x) c /= static_cast<long>(vertices_.size());
  for (const auto& r : rays_)
    for (std::size_t i = 0; i < ambient_dim_; ++i) x[i] += r[i];
  return x;
}

Polyhedron Polyhedron::intersect(const Polyhedron& other) const {
  if (ambient_dim_ != other.ambient_dim_) throw std::invalid_argument("Polyhedron::intersect: dimension mismatch");
  if (empty_ || other.empty_) return empty_set(ambient_dim_);
  std::vector<AffineConstraint> eqs = equations_, ineqs = facets_;
  eqs.insert(eqs.end(), other.equations_.begin(), other.equations_.end());
  ineqs.insert(ineqs.end(), other.facets_.begin(), other.facets_.end());
  return from_constraints(ambient_dim_, eqs, ineqs);
}

Polyhedron Polyhedron::with_equation(const AffineConstraint& c) const {
  if (empty_) return *this;
  std::vector<AffineConstraint> eqs = equations_;
  eqs.push_back(c);
  return from_constraints(ambient_dim_, eqs, facets_);
}

Polyhedron Polyhedron::with_inequality(const AffineConstraint& c) const {
  if (empty_) return *this;
  std::vector<AffineConstraint> ineqs = facets_;
  ineqs.push_back(c);
  return from_constraints(ambient_dim_, equations_, ineqs);
}

Polyhedron Polyhedron::smallest_face_containing(const Polyhedron& q) const {
  std::vector<AffineConstraint> eqs = equations_;
  auto rec = q.recession_generators();
  for (const auto& f : facets_) {
    bool tight = true;
    for (const auto& v : q.vertices_)
      if (f.evaluate(v) != 0) {
        tight = false;
        break;
      }
    for (std::size_t i = 0; tight && i < rec.size(); ++i)
      if (dot(f.normal, rec[i]) != 0) tight = false;
    if (tight) eqs.push_back(f);
  }
  return from_constraints(ambient_dim_, eqs, facets_);
}

bool Polyhedron::is_face(const Polyhedron& q) const {
  if (q.empty_ || empty_) return false;
  if (!contains(q)) return false;
  return smallest_face_containing(q) == q;
}

std::vector<Polyhedron> Polyhedron::facet_faces() const {
  std::vector<Polyhedron> out;
  for (const auto& f : facets_) out.push_back(with_equation(f));
  return out;
}

std::string Polyhedron::key() const {
  if (empty_) return "empty";
  std::ostringstream os;
  os << "v";
  for (const auto& v : vertices_) {
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << rational_to_string(v[i]);
    os << ")";
  }
  os << "r";
  for (const auto& r : rays_) {
    os << "(";
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i].get_str();
    os << ")";
  }
  os << "l";
  for (const auto& l : lineality_) {
    os << "(";
    for (std::size_t i = 0; i < l.size(); ++i) os << (i ? "," : "") << l[i].get_str();
    os << ")";
  }
  return os.str();
}

}  // namespace trophom
