#include "trophom/polyhedral.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace trophom {

std::vector<std::size_t> stratum_coordinates(std::size_t n, const std::vector<std::size_t>& sedentarity) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (!std::binary_search(sedentarity.begin(), sedentarity.end(), i)) keep.push_back(i);
  return keep;
}

namespace {

bool strict_superset(const std::vector<std::size_t>& big, const std::vector<std::size_t>& small) {
  return big.size() > small.size() && std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Positions (in the stratum coordinates of `small`) of the coordinates in big \ small.
std::vector<std::size_t> deleted_positions(std::size_t n, const std::vector<std::size_t>& small,
                                           const std::vector<std::size_t>& big) {
  auto keep = stratum_coordinates(n, small);
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (std::binary_search(big.begin(), big.end(), keep[i])) pos.push_back(i);
  return pos;
}

template <class V>
V drop_positions(const V& v, const std::vector<std::size_t>& pos) {
  V out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!std::binary_search(pos.begin(), pos.end(), i)) out.push_back(v[i]);
  return out;
}

int sign_of(const Integer& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

IntMatrix coordinates_in(const Sublattice& ambient, const Sublattice& sub, bool& ok) {
  IntMatrix c(sub.rank(), ambient.rank());
  ok = true;
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    auto x = ambient.coordinates(sub.basis().row(i));
    if (!x) {
      ok = false;
      return c;
    }
    for (std::size_t j = 0; j < ambient.rank(); ++j) c(i, j) = (*x)[j];
  }
  return c;
}

struct FiniteNormal {
  int sign = 0;
  IntVector normal;
};

FiniteNormal finite_incidence(const Cell& s, const Cell& t) {
  FiniteNormal out;
  const std::size_t k = s.dim;
  if (t.dim + 1 != k) return out;
  bool ok = false;
  IntMatrix c = coordinates_in(s.tangent, t.tangent, ok);
  if (!ok) return out;
  Sublattice ann = kernel_basis(c.rows() == 0 ? IntMatrix(0, k) : c);
  if (ann.rank() != 1) return out;
  IntVector a = ann.basis().row(0);
  const IntMatrix& bs = s.tangent.basis();
  QVector delta(s.stratum_dim());
  for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = s.interior_point[i] - t.interior_point[i];
  std::vector<QVector> sys(bs.cols(), QVector(k));
  for (std::size_t j = 0; j < bs.cols(); ++j)
    for (std::size_t i = 0; i < k; ++i) sys[j][i] = bs(i, j);
  auto y = solve_q(sys, delta);
  if (!y) return out;
  Rational val = dot(a, *y);
  if (val == 0) return out;
  if (val < 0)
    for (auto& x : a) x = -x;
  auto nc = solve_integer(IntMatrix::from_rows({a}, k), IntVector{1});
  if (!nc) return out;
  IntMatrix m(k, k);
  for (std::size_t i = 0; i + 1 < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m(i, j) = c(i, j);
  for (std::size_t j = 0; j < k; ++j) m(k - 1, j) = (*nc)[j];
  int d = sign_of(determinant(m));
  if (d == 0) return out;
  out.sign = s.orientation_sign * t.orientation_sign * d;
  out.normal = (IntMatrix::from_rows({*nc}, k) * bs).row(0);
  return out;
}

int infinite_incidence(std::size_t n, const Cell& s, const Cell& t) {
  if (!strict_superset(t.sedentarity, s.sedentarity)) return 0;
  const std::size_t k = s.dim;
  if (t.dim + 1 != k) return 0;
  auto pos = deleted_positions(n, s.sedentarity, t.sedentarity);
  const IntMatrix& bs = s.tangent.basis();
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < bs.cols(); ++j)
    if (!std::binary_search(pos.begin(), pos.end(), j)) keep.push_back(j);
  IntMatrix bk = bs.select_cols(keep);
  Sublattice kx = kernel_basis(bk.transpose());
  if (kx.rank() != 1) return 0;
  IntVector x = kx.basis().row(0);
  IntVector u = (IntMatrix::from_rows({x}, k) * bs).row(0);
  auto in_recession = [&](const IntVector& v) {
    for (const auto& f : s.geometry.facets())
      if (dot(f.normal, v) < 0) return false;
    return true;
  };
  if (!in_recession(u)) {
    for (auto& e : x) e = -e;
    for (auto& e : u) e = -e;
    if (!in_recession(u)) return 0;
  }
  for (std::size_t p : pos)
    if (u[p] <= 0) return 0;
  IntMatrix m(k, k);
  for (std::size_t i = 0; i < t.tangent.rank(); ++i) {
    auto z = solve_integer(bk.transpose(), t.tangent.basis().row(i));
    if (!z) return 0;
    for (std::size_t j = 0; j < k; ++j) m(i, j) = (*z)[j];
  }
  for (std::size_t j = 0; j < k; ++j) m(k - 1, j) = -x[j];
  int d = sign_of(determinant(m));
  return s.orientation_sign * t.orientation_sign * d;
}

Cell make_cell(std::size_t n, const CellSpec& spec) {
  Cell c;
  c.id = spec.id;
  c.sedentarity = spec.sedentarity;
  std::sort(c.sedentarity.begin(), c.sedentarity.end());
  if (std::adjacent_find(c.sedentarity.begin(), c.sedentarity.end()) != c.sedentarity.end())
    throw std::invalid_argument("cell '" + spec.id + "': repeated sedentarity coordinate");
  for (std::size_t i : c.sedentarity)
    if (i >= n) throw std::invalid_argument("cell '" + spec.id + "': sedentarity coordinate out of range");
  const std::size_t m = n - c.sedentarity.size();
  if (spec.vertices.empty()) throw std::invalid_argument("cell '" + spec.id + "': no vertices");
  for (const auto& v : spec.vertices)
    if (v.size() != m) throw std::invalid_argument("cell '" + spec.id + "': vertex has wrong length");
  for (const auto& r : spec.rays) {
    if (r.size() != m) throw std::invalid_argument("cell '" + spec.id + "': ray has wrong length");
    if (is_zero(r)) throw std::invalid_argument("cell '" + spec.id + "': zero ray");
  }
  if (spec.orientation_sign != 1 && spec.orientation_sign != -1)
    throw std::invalid_argument("cell '" + spec.id + "': orientation_sign must be +1 or -1");
  c.vertices = spec.vertices;
  c.rays = spec.rays;
  c.orientation_sign = spec.orientation_sign;
  c.geometry = Polyhedron::from_generators(m, spec.vertices, spec.rays);
  c.dim = static_cast<std::size_t>(c.geometry.dim());
  c.tangent = c.geometry.tangent();
  c.interior_point = c.geometry.relative_interior_point();
  return c;
}

}  // namespace

FaceComplex FaceComplex::build(std::size_t ambient_dim, const std::vector<CellSpec>& specs) {
  FaceComplex fc;
  fc.ambient_dim_ = ambient_dim;
  for (const auto& s : specs) {
    if (s.id.empty()) throw std::invalid_argument("cell with empty id");
    if (fc.index_.count(s.id)) throw std::invalid_argument("duplicate cell id '" + s.id + "'");
    fc.index_[s.id] = fc.cells_.size();
    fc.cells_.push_back(make_cell(ambient_dim, s));
  }
  for (const auto& s : specs)
    for (const auto& f : s.faces) {
      if (!fc.index_.count(f.id))
        throw std::invalid_argument("cell '" + s.id + "' lists unknown face '" + f.id + "'");
      if (f.id == s.id) throw std::invalid_argument("cell '" + s.id + "' lists itself as a face");
      fc.listed_.emplace_back(f.id, s.id);
    }
  fc.derive();
  return fc;
}

void FaceComplex::derive() {
  const std::size_t n = cells_.size();
  std::vector<std::vector<std::size_t>> direct(n);
  for (const auto& [f, s] : listed_) direct[index_.at(s)].push_back(index_.at(f));
  faces_.assign(n, {});
  cofaces_.assign(n, {});
  facets_.assign(n, {});
  cofacets_.assign(n, {});
  for (std::size_t s = 0; s < n; ++s) {
    std::set<std::size_t> seen;
    std::vector<std::size_t> stack = direct[s];
    while (!stack.empty()) {
      std::size_t t = stack.back();
      stack.pop_back();
      if (!seen.insert(t).second) continue;
      for (std::size_t u : direct[t]) stack.push_back(u);
    }
    if (seen.count(s)) throw std::invalid_argument("face relation through cell '" + cells_[s].id + "' is cyclic");
    faces_[s].assign(seen.begin(), seen.end());
  }
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t : faces_[s]) {
      cofaces_[t].push_back(s);
      if (cells_[t].dim + 1 == cells_[s].dim) {
        facets_[s].push_back(t);
        cofacets_[t].push_back(s);
      }
    }
  for (auto& v : cofaces_) std::sort(v.begin(), v.end());
  for (auto& v : cofacets_) std::sort(v.begin(), v.end());
  incidence_.clear();
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t : facets_[s]) {
      const Cell& cs = cells_[s];
      const Cell& ct = cells_[t];
      int e = 0;
      if (cs.sedentarity == ct.sedentarity)
        e = finite_incidence(cs, ct).sign;
      else
        e = infinite_incidence(ambient_dim_, cs, ct);
      incidence_[{s, t}] = e;
    }
}

std::optional<std::size_t> FaceComplex::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FaceComplex::index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::invalid_argument("unknown cell id '" + id + "'");
  return it->second;
}

int FaceComplex::dim() const {
  int d = -1;
  for (const auto& c : cells_) d = std::max(d, static_cast<int>(c.dim));
  return d;
}

bool FaceComplex::is_face(std::size_t t, std::size_t s) const {
  return std::binary_search(faces_.at(s).begin(), faces_.at(s).end(), t);
}

bool FaceComplex::is_at_infinity(std::size_t t, std::size_t s) const {
  return is_face(t, s) && cells_[t].sedentarity != cells_[s].sedentarity;
}

std::vector<std::size_t> FaceComplex::maximal_cofaces(std::size_t t) const {
  std::vector<std::size_t> out;
  if (cofaces_.at(t).empty()) return {t};
  for (std::size_t s : cofaces_[t])
    if (cofaces_[s].empty()) out.push_back(s);
  return out;
}

std::vector<std::size_t> FaceComplex::cells_of_dim(std::size_t d) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i].dim == d) out.push_back(i);
  return out;
}

bool FaceComplex::is_pure() const {
  const int d = dim();
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cofaces_[i].empty() && static_cast<int>(cells_[i].dim) != d) return false;
  return true;
}

int FaceComplex::incidence(std::size_t s, std::size_t t) const {
  auto o = overrides_.find({s, t});
  if (o != overrides_.end()) return o->second;
  return derived_incidence(s, t);
}

int FaceComplex::derived_incidence(std::size_t s, std::size_t t) const {
  auto it = incidence_.find({s, t});
  if (it == incidence_.end()) throw std::invalid_argument("incidence: not a codimension-one face pair");
  return it->second;
}

std::vector<CellSpec> FaceComplex::to_specs() const {
  std::vector<CellSpec> out;
  std::map<std::string, std::vector<std::string>> listed;
  for (const auto& [f, s] : listed_) listed[s].push_back(f);
  for (const auto& c : cells_) {
    CellSpec s;
    s.id = c.id;
    s.sedentarity = c.sedentarity;
    s.vertices = c.vertices;
    s.rays = c.rays;
    s.orientation_sign = c.orientation_sign;
    for (const auto& f : listed[c.id]) s.faces.push_back({f, cells_[index_.at(f)].sedentarity != c.sedentarity});
    out.push_back(s);
  }
  return out;
}

FaceComplex FaceComplex::with_orientation(std::size_t s, int sign) const {
  auto specs = to_specs();
  specs.at(s).orientation_sign = sign;
  FaceComplex out = build(ambient_dim_, specs);
  out.overrides_ = overrides_;
  return out;
}

FaceComplex FaceComplex::with_incidence_sign(std::size_t s, std::size_t t, int sign) const {
  FaceComplex out = *this;
  if (!incidence_.count({s, t})) throw std::invalid_argument("with_incidence_sign: not a codimension-one face pair");
  out.overrides_[{s, t}] = sign;
  return out;
}

FaceComplex FaceComplex::relabeled(const std::map<std::string, std::string>& new_ids) const {
  auto specs = to_specs();
  auto rename = [&](const std::string& id) {
    auto it = new_ids.find(id);
    return it == new_ids.end() ? id : it->second;
  };
  for (auto& s : specs) {
    s.id = rename(s.id);
    for (auto& f : s.faces) f.id = rename(f.id);
  }
  FaceComplex out = build(ambient_dim_, specs);
  for (const auto& [k, v] : overrides_) out.overrides_[k] = v;
  return out;
}

FaceComplex FaceComplex::permuted(const std::vector<std::size_t>& order) const {
  if (order.size() != cells_.size()) throw std::invalid_argument("permuted: wrong permutation size");
  auto specs = to_specs();
  std::vector<CellSpec> out;
  for (std::size_t i : order) out.push_back(specs.at(i));
  FaceComplex res = build(ambient_dim_, out);
  for (const auto& [k, v] : overrides_) res.overrides_[{res.index(cells_[k.first].id), res.index(cells_[k.second].id)}] = v;
  return res;
}

namespace {

// Some point-free certificate that p and q are disjoint: a constraint of one
// that is strictly violated by every point of the other.
bool separated(const Polyhedron& p, const Polyhedron& q) {
  auto strictly_negative = [](const AffineConstraint& f, const Polyhedron& x, bool equation) {
    auto rec = x.recession_generators();
    for (int s : {1, -1}) {
      if (!equation && s < 0) break;
      bool all = true;
      for (const auto& v : x.vertices())
        if (s * f.evaluate(v) >= 0) {
          all = false;
          break;
        }
      for (std::size_t i = 0; all && i < rec.size(); ++i)
        if (s * dot(f.normal, rec[i]) > 0) all = false;
      if (all) return true;
    }
    return false;
  };
  for (const auto& f : p.facets())
    if (strictly_negative(f, q, false)) return true;
  for (const auto& e : p.equations())
    if (strictly_negative(e, q, true)) return true;
  return false;
}

}  // namespace

ValidationReport validate_complex(const FaceComplex& c) {
  ValidationReport r;
  auto add = [&](const std::string& kind, std::size_t a, std::size_t b, const std::string& msg) {
    r.violations.push_back({kind, c.cell(a).id, b == static_cast<std::size_t>(-1) ? "" : c.cell(b).id, msg});
  };
  const std::size_t none = static_cast<std::size_t>(-1);
  const std::size_t n = c.ambient_dim();

  for (const auto& [fid, sid] : c.listed_faces()) {
    std::size_t t = c.index(fid), s = c.index(sid);
    const Cell& ct = c.cell(t);
    const Cell& cs = c.cell(s);
    if (ct.dim >= cs.dim) {
      add("face_dimension", s, t, "face has dimension not smaller than the cell");
      continue;
    }
    if (ct.sedentarity == cs.sedentarity) {
      if (!cs.geometry.is_face(ct.geometry)) add("not_a_face", s, t, "listed face is not a face of the polyhedron");
    } else if (strict_superset(ct.sedentarity, cs.sedentarity)) {
      auto pos = deleted_positions(n, cs.sedentarity, ct.sedentarity);
      std::vector<QVector> pts;
      std::vector<IntVector> rays;
      for (const auto& v : cs.geometry.vertices()) pts.push_back(drop_positions(v, pos));
      for (const auto& g : cs.geometry.recession_generators()) {
        IntVector d = drop_positions(g, pos);
        if (!is_zero(d)) rays.push_back(d);
      }
      Polyhedron proj = Polyhedron::from_generators(n - ct.sedentarity.size(), pts, rays);
      if (!proj.contains(ct.geometry))
        add("not_a_face_at_infinity", s, t, "face at infinity is not in the closure of the cell");
    } else {
      add("sedentarity", s, t, "face must have equal or strictly larger sedentarity");
    }
  }

  for (std::size_t s = 0; s < c.size(); ++s) {
    const Cell& cs = c.cell(s);
    for (const auto& f : cs.geometry.facet_faces()) {
      bool found = false;
      for (std::size_t t : c.facets_of(s))
        if (c.cell(t).sedentarity == cs.sedentarity && c.cell(t).geometry == f) found = true;
      if (!found) add("missing_face", s, none, "geometric facet " + f.key() + " is not a listed face");
    }
  }

  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = a + 1; b < c.size(); ++b) {
      const Cell& ca = c.cell(a);
      const Cell& cb = c.cell(b);
      if (ca.sedentarity != cb.sedentarity) continue;
      if (ca.geometry == cb.geometry) {
        add("duplicate", a, b, "two cells with identical geometry");
        continue;
      }
      if (c.is_face(a, b) || c.is_face(b, a)) continue;
      if (separated(ca.geometry, cb.geometry) || separated(cb.geometry, ca.geometry)) continue;
      Polyhedron inter = ca.geometry.intersect(cb.geometry);
      if (inter.is_empty()) continue;
      bool found = false;
      for (std::size_t t : c.faces_of(a))
        if (c.is_face(t, b) && c.cell(t).sedentarity == ca.sedentarity && c.cell(t).geometry == inter) found = true;
      if (!found) add("intersection", a, b, "intersection is not a common face");
    }

  for (std::size_t s = 0; s < c.size(); ++s)
    for (std::size_t t : c.facets_of(s)) {
      int d = c.derived_incidence(s, t);
      int e = c.incidence(s, t);
      if (d == 0)
        add("incidence_underivable", s, t, "no lattice normal vector / orientation comparison possible");
      else if (e != d)
        add("incidence_sign", s, t, "stored incidence sign disagrees with the orientations");
    }

  for (std::size_t s = 0; s < c.size(); ++s) {
    const Cell& cs = c.cell(s);
    for (std::size_t rho : c.faces_of(s)) {
      if (c.cell(rho).dim + 2 != cs.dim) continue;
      long sum = 0;
      for (std::size_t t : c.facets_of(s)) {
        const auto& ft = c.facets_of(t);
        if (std::binary_search(ft.begin(), ft.end(), rho)) sum += c.incidence(s, t) * c.incidence(t, rho);
      }
      if (sum != 0) add("boundary_squared", s, rho, "sum of incidence products is " + std::to_string(sum));
    }
  }
  return r;
}

IntVector lattice_normal_vector(const FaceComplex& c, std::size_t sigma, std::size_t tau) {
  const Cell& s = c.cell(sigma);
  const Cell& t = c.cell(tau);
  if (!c.is_face(tau, sigma) || t.dim + 1 != s.dim)
    throw std::invalid_argument("lattice_normal_vector: not a codimension-one face pair");
  if (s.sedentarity != t.sedentarity) throw std::invalid_argument("lattice_normal_vector: face at infinity");
  FiniteNormal fn = finite_incidence(s, t);
  if (fn.sign == 0) throw std::invalid_argument("lattice_normal_vector: inconsistent geometry");
  return fn.normal;
}

QVector AffineMap::apply(const QVector& x) const {
  if (x.size() != linear.cols()) throw std::invalid_argument("AffineMap::apply: dimension mismatch");
  QVector y = translate;
  for (std::size_t i = 0; i < linear.rows(); ++i)
    for (std::size_t j = 0; j < linear.cols(); ++j) y[i] += Rational(linear(i, j)) * x[j];
  return y;
}

IntVector AffineMap::apply_linear(const IntVector& v) const { return linear * v; }

AffineMap AffineMap::identity(std::size_t n) { return {IntMatrix::identity(n), QVector(n)}; }

AffineMap AffineMap::compose(const AffineMap& inner) const {
  AffineMap out;
  out.linear = linear * inner.linear;
  out.translate = apply(inner.translate);
  return out;
}

Polyhedron image(const AffineMap& f, const Polyhedron& p) {
  if (p.is_empty()) return Polyhedron::empty_set(f.target_dim());
  std::vector<QVector> pts;
  for (const auto& v : p.vertices()) pts.push_back(f.apply(v));
  std::vector<IntVector> rays;
  for (const auto& r : p.recession_generators()) {
    IntVector w = f.apply_linear(r);
    if (!is_zero(w)) rays.push_back(w);
  }
  return Polyhedron::from_generators(f.target_dim(), pts, rays);
}

std::string product_id(const std::string& a, const std::string& b) { return a + "|" + b; }

FaceComplex product_complex(const FaceComplex& a, const FaceComplex& b) {
  const std::size_t na = a.ambient_dim(), nb = b.ambient_dim();
  std::vector<CellSpec> specs;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Cell& x = a.cell(i);
      const Cell& y = b.cell(j);
      CellSpec s;
      s.id = product_id(x.id, y.id);
      s.sedentarity = x.sedentarity;
      for (std::size_t k : y.sedentarity) s.sedentarity.push_back(na + k);
      for (const auto& v : x.vertices)
        for (const auto& w : y.vertices) {
          QVector p = v;
          p.insert(p.end(), w.begin(), w.end());
          s.vertices.push_back(p);
        }
      const std::size_t mx = x.stratum_dim(), my = y.stratum_dim();
      for (const auto& r : x.rays) {
        IntVector v = r;
        v.resize(mx + my);
        s.rays.push_back(v);
      }
      for (const auto& r : y.rays) {
        IntVector v(mx);
        v.insert(v.end(), r.begin(), r.end());
        s.rays.push_back(v);
      }
      s.orientation_sign = x.orientation_sign * y.orientation_sign;
      std::vector<std::size_t> fx = a.faces_of(i), fy = b.faces_of(j);
      fx.push_back(i);
      fy.push_back(j);
      for (std::size_t p : fx)
        for (std::size_t q : fy) {
          if (p == i && q == j) continue;
          bool inf = a.cell(p).sedentarity != x.sedentarity || b.cell(q).sedentarity != y.sedentarity;
          s.faces.push_back({product_id(a.cell(p).id, b.cell(q).id), inf});
        }
      specs.push_back(s);
    }
  return FaceComplex::build(na + nb, specs);
}

std::optional<std::size_t> locate_point(const FaceComplex& c, const QVector& x) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Cell& ci = c.cell(i);
    if (!ci.sedentarity.empty()) continue;
    if (ci.geometry.in_relative_interior(x) && (!best || ci.dim < c.cell(*best).dim)) best = i;
  }
  return best;
}

namespace {

std::vector<CellSpec> specs_from_pieces(std::vector<Piece>& pieces) {
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    if (a.geometry.dim() != b.geometry.dim()) return a.geometry.dim() < b.geometry.dim();
    return a.id < b.id;
  });
  std::vector<CellSpec> specs;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Polyhedron& g = pieces[i].geometry;
    CellSpec s;
    s.id = pieces[i].id;
    s.vertices = g.vertices();
    s.rays = g.recession_generators();
    s.orientation_sign = pieces[i].orientation_sign;
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      if (j == i || pieces[j].geometry.dim() >= g.dim()) continue;
      if (g.contains(pieces[j].geometry) && g.is_face(pieces[j].geometry)) s.faces.push_back({pieces[j].id, false});
    }
    specs.push_back(s);
  }
  return specs;
}

// Orientation of a piece with the same tangent lattice as its parent.
int inherited_sign(const Polyhedron& piece, const Cell& parent) {
  return piece.dim() == static_cast<int>(parent.dim) ? parent.orientation_sign : 1;
}

}  // namespace

FaceComplex complex_from_pieces(std::size_t ambient_dim, std::vector<Piece> pieces) {
  return FaceComplex::build(ambient_dim, specs_from_pieces(pieces));
}

namespace {

bool covered_by(const Cell& sigma, const FaceComplex& other) {
  std::vector<Polyhedron> tops;
  for (const auto& c : other.cells()) {
    if (!c.sedentarity.empty()) continue;
    if (separated(sigma.geometry, c.geometry) || separated(c.geometry, sigma.geometry)) continue;
    Polyhedron p = sigma.geometry.intersect(c.geometry);
    if (p.dim() == static_cast<int>(sigma.dim)) tops.push_back(p);
  }
  if (tops.empty()) return false;
  for (std::size_t i = 0; i < tops.size(); ++i)
    for (const auto& f : tops[i].facet_faces()) {
      bool on_boundary = false;
      for (const auto& g : sigma.geometry.facets()) {
        bool tight = true;
        for (const auto& v : f.vertices())
          if (g.evaluate(v) != 0) tight = false;
        for (const auto& r : f.recession_generators())
          if (dot(g.normal, r) != 0) tight = false;
        if (tight) {
          on_boundary = true;
          break;
        }
      }
      if (on_boundary) continue;
      bool neighbour = false;
      for (std::size_t j = 0; j < tops.size() && !neighbour; ++j)
        if (j != i && tops[j].contains(f)) neighbour = true;
      if (!neighbour) return false;
    }
  return true;
}

void require_finite(const FaceComplex& c, const char* what) {
  for (const auto& cell : c.cells())
    if (!cell.sedentarity.empty())
      throw std::invalid_argument(std::string(what) + ": cells at infinity are not supported");
}

}  // namespace

bool same_support(const FaceComplex& a, const FaceComplex& b) {
  require_finite(a, "same_support");
  require_finite(b, "same_support");
  if (a.ambient_dim() != b.ambient_dim()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.cofaces_of(i).empty() && !covered_by(a.cell(i), b)) return false;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.cofaces_of(i).empty() && !covered_by(b.cell(i), a)) return false;
  return true;
}

Refinement common_refinement(const FaceComplex& a, const FaceComplex& b) {
  require_finite(a, "common_refinement");
  require_finite(b, "common_refinement");
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("common_refinement: ambient dimension mismatch");
  if (!same_support(a, b)) throw std::invalid_argument("common_refinement: supports differ");
  std::map<std::string, Piece> by_key;
  std::map<std::string, std::pair<std::size_t, std::size_t>> parents;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Cell& x = a.cell(i);
      const Cell& y = b.cell(j);
      if (separated(x.geometry, y.geometry) || separated(y.geometry, x.geometry)) continue;
      Polyhedron p = x.geometry.intersect(y.geometry);
      if (p.is_empty()) continue;
      std::string key = p.key();
      if (by_key.count(key)) continue;
      QVector q = p.relative_interior_point();
      std::size_t pa = *locate_point(a, q), pb = *locate_point(b, q);
      int sign = inherited_sign(p, a.cell(pa));
      by_key[key] = Piece{a.cell(pa).id + "&" + b.cell(pb).id, p, sign};
      parents[by_key[key].id] = {pa, pb};
    }
  std::vector<Piece> pieces;
  for (auto& [k, p] : by_key) pieces.push_back(p);
  Refinement out;
  out.complex = complex_from_pieces(a.ambient_dim(), pieces);
  for (const auto& cell : out.complex.cells()) {
    out.parent_a.push_back(parents[cell.id].first);
    out.parent_b.push_back(parents[cell.id].second);
  }
  return out;
}

namespace {

// Side of the cut hyperplane reached when the coordinates in outer \ inner go
// to +infinity: 1 or -1, 0 if the normal vanishes there, 2 if mixed.
int infinity_side(const IntVector& normal, const std::vector<std::size_t>& inner, const std::vector<std::size_t>& outer) {
  bool pos = false, neg = false;
  for (std::size_t k : outer) {
    if (std::find(inner.begin(), inner.end(), k) != inner.end()) continue;
    if (normal[k] > 0) pos = true;
    if (normal[k] < 0) neg = true;
  }
  if (pos && neg) return 2;
  return pos ? 1 : (neg ? -1 : 0);
}

}  // namespace

Refinement refine_by_hyperplane(const FaceComplex& c, const IntVector& normal, const Rational& offset) {
  const std::size_t n = c.ambient_dim();
  if (normal.size() != n) throw std::invalid_argument("refine_by_hyperplane: normal has wrong length");
  enum Side { Whole, Neg, Zero, Pos };
  struct Item {
    std::size_t parent;
    Side side;
    Polyhedron geometry;
    std::string id;
    int sign;
  };
  std::vector<Item> items;
  std::vector<bool> split(c.size(), false);
  // For cells that are not split: which closed sides they lie in.
  std::vector<std::array<bool, 3>> within(c.size(), {true, true, true});  // <=, =, >=
  std::vector<std::optional<AffineConstraint>> local(c.size());

  for (std::size_t i = 0; i < c.size(); ++i) {
    const Cell& ci = c.cell(i);
    bool touched = true;
    for (std::size_t k : ci.sedentarity)
      if (normal[k] != 0) touched = false;
    if (!touched) {
      items.push_back({i, Whole, ci.geometry, ci.id, ci.orientation_sign});
      continue;
    }
    AffineConstraint h{drop_positions(normal, ci.sedentarity), -offset};
    local[i] = h;
    bool any_pos = false, any_neg = false;
    for (const auto& v : ci.geometry.vertices()) {
      Rational x = h.evaluate(v);
      if (x > 0) any_pos = true;
      if (x < 0) any_neg = true;
    }
    for (const auto& r : ci.geometry.recession_generators()) {
      Integer x = dot(h.normal, r);
      if (x > 0) any_pos = true;
      if (x < 0) any_neg = true;
    }
    within[i] = {!any_pos, !any_pos && !any_neg, !any_neg};
    if (!(any_pos && any_neg)) {
      items.push_back({i, Whole, ci.geometry, ci.id, ci.orientation_sign});
      continue;
    }
    split[i] = true;
    for (std::size_t t : c.faces_of(i)) {
      const Cell& ct = c.cell(t);
      if (ct.sedentarity != ci.sedentarity && infinity_side(normal, ci.sedentarity, ct.sedentarity) == 2)
        throw std::invalid_argument("refine_by_hyperplane: cut through cell '" + ci.id +
                                    "' is incompatible with its face at infinity '" + ct.id + "'");
    }
    AffineConstraint neg{h.normal, h.constant};
    for (auto& x : neg.normal) x = -x;
    neg.constant = -neg.constant;
    Polyhedron pp = ci.geometry.with_inequality(h);
    Polyhedron pn = ci.geometry.with_inequality(neg);
    Polyhedron pz = ci.geometry.with_equation(h);
    items.push_back({i, Neg, pn, ci.id + "-", ci.orientation_sign});
    items.push_back({i, Pos, pp, ci.id + "+", ci.orientation_sign});
    items.push_back({i, Zero, pz, ci.id + "0", 1});
  }

  auto item_within = [&](const Item& it, Side s) {
    // Does the item lie in the closed side s (Neg: <=0, Zero: =0, Pos: >=0)?
    if (it.side == Whole) {
      if (!local[it.parent]) return false;
      return within[it.parent][s == Neg ? 0 : (s == Zero ? 1 : 2)];
    }
    if (it.side == Zero) return true;
    return it.side == s;
  };

  std::vector<CellSpec> specs;
  for (std::size_t a = 0; a < items.size(); ++a) {
    const Item& ia = items[a];
    const Cell& pa = c.cell(ia.parent);
    CellSpec s;
    s.id = ia.id;
    s.sedentarity = pa.sedentarity;
    s.vertices = ia.geometry.vertices();
    s.rays = ia.geometry.recession_generators();
    s.orientation_sign = ia.sign;
    for (std::size_t b = 0; b < items.size(); ++b) {
      if (a == b) continue;
      const Item& ib = items[b];
      bool parent_related = ib.parent == ia.parent || c.is_face(ib.parent, ia.parent);
      if (!parent_related) continue;
      const Cell& pb = c.cell(ib.parent);
      if (pb.sedentarity == pa.sedentarity) {
        if (ib.geometry.dim() < ia.geometry.dim() && ia.geometry.is_face(ib.geometry)) s.faces.push_back({ib.id, false});
      } else {
        bool ok = true;
        if (ia.side != Whole) {
          int side = infinity_side(normal, pa.sedentarity, pb.sedentarity);
          if (side == 0)
            ok = item_within(ib, ia.side);
          else
            ok = (side > 0 && ia.side == Pos) || (side < 0 && ia.side == Neg);
        }
        if (ia.side == Whole && ib.side != Whole) ok = false;
        if (ok) s.faces.push_back({ib.id, true});
      }
    }
    specs.push_back(s);
  }
  Refinement out;
  out.complex = FaceComplex::build(n, specs);
  for (const auto& it : items) out.parent_a.push_back(it.parent);
  return out;
}

FaceComplex local_fan(const FaceComplex& c, const QVector& x) {
  if (x.size() != c.ambient_dim()) throw std::invalid_argument("local_fan: point has wrong dimension");
  std::vector<std::size_t> star;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.cell(i).sedentarity.empty() && c.cell(i).geometry.contains(x)) star.push_back(i);
  if (star.empty()) throw std::invalid_argument("local_fan: point is not in the support");
  const std::size_t n = c.ambient_dim();
  std::vector<CellSpec> specs;
  for (std::size_t i : star) {
    const Cell& ci = c.cell(i);
    CellSpec s;
    s.id = ci.id;
    s.vertices = {QVector(n)};
    for (const auto& v : ci.geometry.vertices()) {
      QVector d(n);
      for (std::size_t k = 0; k < n; ++k) d[k] = v[k] - x[k];
      bool zero = std::all_of(d.begin(), d.end(), [](const Rational& q) { return q == 0; });
      if (!zero) s.rays.push_back(clear_denominators(d));
    }
    for (const auto& r : ci.geometry.recession_generators()) s.rays.push_back(r);
    s.orientation_sign = ci.orientation_sign;
    for (std::size_t t : c.faces_of(i))
      if (std::binary_search(star.begin(), star.end(), t)) s.faces.push_back({c.cell(t).id, false});
    specs.push_back(s);
  }
  return FaceComplex::build(n, specs);
}

}  // namespace trophom
