#include "trophom/cycles.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace trophom {

TropicalCycle make_cycle(const FaceComplex& c, std::size_t k, const std::map<std::string, Integer>& weights) {
  TropicalCycle a{c, k, {}};
  for (const auto& [id, w] : weights) {
    std::size_t s = c.index(id);
    if (c.cell(s).dim != k)
      throw std::invalid_argument("cycle weight on cell '" + id + "' which is not " + std::to_string(k) + "-dimensional");
    a.weights[s] = w;
  }
  return a;
}

BalancingReport is_balanced(const TropicalCycle& a) {
  BalancingReport r;
  if (a.k == 0) return r;
  const FaceComplex& c = a.complex;
  for (std::size_t t : c.cells_of_dim(a.k - 1)) {
    const Cell& ct = c.cell(t);
    IntVector sum(ct.stratum_dim());
    bool touched = false;
    for (std::size_t s : c.cofacets_of(t)) {
      if (c.is_at_infinity(t, s)) continue;
      Integer w = a.weight(s);
      if (w == 0) continue;
      touched = true;
      IntVector nv = lattice_normal_vector(c, s, t);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += w * nv[i];
    }
    if (touched && !ct.tangent.contains(sum)) r.failures.push_back({ct.id, sum});
  }
  return r;
}

TropicalCycle fundamental_cycle(const FaceComplex& c) {
  if (c.size() == 0) throw std::invalid_argument("fundamental_cycle: empty complex");
  if (!c.is_pure()) throw std::invalid_argument("fundamental_cycle: complex is not pure");
  TropicalCycle a{c, static_cast<std::size_t>(c.dim()), {}};
  for (std::size_t s : c.cells_of_dim(a.k)) a.weights[s] = 1;
  return a;
}

TropicalCycle scale_cycle(const TropicalCycle& a, const Integer& m) {
  TropicalCycle out = a;
  for (auto& [s, w] : out.weights) w *= m;
  return out;
}

bool is_zero_cycle(const TropicalCycle& a) {
  return std::all_of(a.weights.begin(), a.weights.end(), [](const auto& kv) { return kv.second == 0; });
}

FaceComplex support_complex(const TropicalCycle& a) {
  const FaceComplex& c = a.complex;
  std::set<std::size_t> keep;
  for (const auto& [s, w] : a.weights) {
    if (w == 0) continue;
    keep.insert(s);
    for (std::size_t t : c.faces_of(s)) keep.insert(t);
  }
  auto specs = c.to_specs();
  std::set<std::string> ids;
  for (std::size_t s : keep) ids.insert(c.cell(s).id);
  std::vector<CellSpec> out;
  for (std::size_t s : keep) {
    CellSpec sp = specs[s];
    std::vector<FaceRef> faces;
    for (const auto& f : sp.faces)
      if (ids.count(f.id)) faces.push_back(f);
    sp.faces = faces;
    out.push_back(sp);
  }
  return FaceComplex::build(c.ambient_dim(), out);
}

Hyperplane make_hyperplane(const IntVector& normal, const Rational& offset) {
  Integer g = content(normal);
  if (g == 0) throw std::invalid_argument("make_hyperplane: zero normal");
  Hyperplane h{normal, offset / Rational(g)};
  for (auto& x : h.normal) x /= g;
  auto nz = std::find_if(h.normal.begin(), h.normal.end(), [](const Integer& x) { return x != 0; });
  if (*nz < 0) {
    for (auto& x : h.normal) x = -x;
    h.offset = -h.offset;
  }
  h.offset.canonicalize();
  return h;
}

std::vector<Hyperplane> hyperplanes_of(const Polyhedron& p) {
  std::vector<Hyperplane> out;
  for (const auto& e : p.equations()) out.push_back(make_hyperplane(e.normal, -e.constant));
  for (const auto& f : p.facets()) out.push_back(make_hyperplane(f.normal, -f.constant));
  return out;
}

std::vector<Hyperplane> hyperplanes_of(const FaceComplex& c) {
  std::set<Hyperplane> hs;
  for (const auto& cell : c.cells()) {
    if (!cell.sedentarity.empty()) continue;
    for (auto& h : hyperplanes_of(cell.geometry)) hs.insert(h);
  }
  return {hs.begin(), hs.end()};
}

Refinement refine_by_hyperplanes(const FaceComplex& c, const std::vector<Hyperplane>& hs) {
  Refinement out;
  out.complex = c;
  for (std::size_t i = 0; i < c.size(); ++i) out.parent_a.push_back(i);
  std::set<Hyperplane> seen;
  for (const auto& h0 : hs) {
    Hyperplane h = make_hyperplane(h0.normal, h0.offset);
    if (!seen.insert(h).second) continue;
    Refinement r = refine_by_hyperplane(out.complex, h.normal, h.offset);
    std::vector<std::size_t> parents;
    for (std::size_t p : r.parent_a) parents.push_back(out.parent_a[p]);
    out.complex = std::move(r.complex);
    out.parent_a = std::move(parents);
  }
  return out;
}

FaceComplex polyhedron_complex(const Polyhedron& p, const std::string& prefix) {
  std::map<std::string, Polyhedron> faces;
  std::vector<Polyhedron> stack{p};
  while (!stack.empty()) {
    Polyhedron q = stack.back();
    stack.pop_back();
    if (q.is_empty() || !faces.emplace(q.key(), q).second) continue;
    for (auto& f : q.facet_faces()) stack.push_back(f);
  }
  std::vector<Piece> pieces;
  std::size_t i = 0;
  for (auto& [k, q] : faces) pieces.push_back({prefix + std::to_string(i++), q, 1});
  return complex_from_pieces(p.ambient_dim(), pieces);
}

namespace {

void require_finite(const FaceComplex& c, const char* what) {
  for (const auto& cell : c.cells())
    if (!cell.sedentarity.empty())
      throw std::invalid_argument(std::string(what) + ": cells at infinity are not supported");
}

}  // namespace

TropicalCycle add_cycles(const TropicalCycle& a, const TropicalCycle& b) {
  if (a.k != b.k) throw std::invalid_argument("add_cycles: dimensions differ");
  if (a.complex.ambient_dim() != b.complex.ambient_dim()) throw std::invalid_argument("add_cycles: ambient dimensions differ");
  require_finite(a.complex, "add_cycles");
  require_finite(b.complex, "add_cycles");
  const std::size_t n = a.complex.ambient_dim();
  FaceComplex sa = support_complex(a), sb = support_complex(b);
  TropicalCycle ca{sa, a.k, {}}, cb{sb, b.k, {}};
  for (const auto& [s, w] : a.weights)
    if (w != 0) ca.weights[sa.index(a.complex.cell(s).id)] = w;
  for (const auto& [s, w] : b.weights)
    if (w != 0) cb.weights[sb.index(b.complex.cell(s).id)] = w;

  std::set<Hyperplane> hs;
  for (auto& h : hyperplanes_of(sa)) hs.insert(h);
  for (auto& h : hyperplanes_of(sb)) hs.insert(h);
  std::vector<Hyperplane> hv(hs.begin(), hs.end());
  Refinement ra = refine_by_hyperplanes(sa, hv);
  Refinement rb = refine_by_hyperplanes(sb, hv);

  std::map<std::string, Piece> pieces;
  std::map<std::string, Integer> weight;
  std::set<std::string> used;
  auto absorb = [&](const Refinement& r, const TropicalCycle& src) {
    for (std::size_t i = 0; i < r.complex.size(); ++i) {
      const Cell& cell = r.complex.cell(i);
      std::string key = cell.geometry.key();
      if (!pieces.count(key)) {
        std::string id = cell.id;
        while (used.count(id)) id += "'";
        used.insert(id);
        pieces[key] = Piece{id, cell.geometry, cell.orientation_sign};
      }
      if (cell.dim == src.k) weight[key] += src.weight(r.parent_a[i]);
    }
  };
  absorb(ra, ca);
  absorb(rb, cb);

  std::vector<Polyhedron> tops;
  for (const auto& [key, w] : weight)
    if (w != 0) tops.push_back(pieces[key].geometry);
  std::vector<Piece> kept;
  for (const auto& [key, p] : pieces) {
    bool keep = false;
    for (const auto& t : tops)
      if (t.contains(p.geometry) && t.is_face(p.geometry)) keep = true;
    if (keep) kept.push_back(p);
  }
  TropicalCycle out{complex_from_pieces(n, kept), a.k, {}};
  for (const auto& [key, w] : weight)
    if (w != 0) out.weights[out.complex.index(pieces[key].id)] = w;
  return out;
}

bool cycles_equal(const TropicalCycle& a, const TropicalCycle& b) {
  if (a.k != b.k || a.complex.ambient_dim() != b.complex.ambient_dim()) return false;
  return is_zero_cycle(add_cycles(a, scale_cycle(b, -1)));
}

TropicalCycle push_forward(const AffineMap& f, const TropicalCycle& a, const FaceComplex& target, bool require_proper) {
  const FaceComplex& c = a.complex;
  if (f.source_dim() != c.ambient_dim() || f.target_dim() != target.ambient_dim())
    throw std::invalid_argument("push_forward: map dimensions do not match");
  require_finite(c, "push_forward");
  require_finite(target, "push_forward");
  const std::size_t m = target.ambient_dim();

  struct Image {
    std::size_t cell;
    Polyhedron geometry;
    Sublattice lattice;
  };
  std::vector<Image> images;
  std::set<Hyperplane> hs;
  for (auto& h : hyperplanes_of(target)) hs.insert(h);
  for (const auto& [s, w] : a.weights) {
    if (w == 0) continue;
    const Cell& cs = c.cell(s);
    std::vector<IntVector> rec = cs.geometry.recession_generators();
    if (require_proper && !rec.empty()) {
      Polyhedron cone = Polyhedron::from_generators(c.ambient_dim(), {QVector(c.ambient_dim())}, rec);
      for (std::size_t i = 0; i < f.linear.rows(); ++i) cone = cone.with_equation({f.linear.row(i), 0});
      if (cone.dim() > 0) throw std::invalid_argument("push_forward: map is not proper on cell '" + cs.id + "'");
    }
    Polyhedron p = image(f, cs.geometry);
    if (p.dim() != static_cast<int>(a.k)) continue;
    IntMatrix lin = cs.tangent.basis() * f.linear.transpose();
    images.push_back({s, p, Sublattice(m, lin)});
    for (auto& h : hyperplanes_of(p)) hs.insert(h);
  }
  std::vector<Hyperplane> hv(hs.begin(), hs.end());
  FaceComplex refined = refine_by_hyperplanes(target, hv).complex;

  for (const auto& im : images) {
    FaceComplex pc = refine_by_hyperplanes(polyhedron_complex(im.geometry, "p"), hv).complex;
    for (std::size_t i : pc.cells_of_dim(a.k)) {
      auto loc = locate_point(refined, pc.cell(i).interior_point);
      if (!loc || refined.cell(*loc).dim != a.k)
        throw std::invalid_argument("push_forward: target does not contain the image of cell '" + c.cell(im.cell).id + "'");
    }
  }

  TropicalCycle out{refined, a.k, {}};
  for (std::size_t t : refined.cells_of_dim(a.k)) {
    const Cell& ct = refined.cell(t);
    Integer w = 0;
    for (const auto& im : images)
      if (im.geometry.contains(ct.interior_point)) w += a.weight(im.cell) * lattice_index(ct.tangent, im.lattice);
    out.weights[t] = w;
  }
  if (is_balanced(a).balanced() && !is_balanced(out).balanced())
    throw std::logic_error("push_forward: image of a balanced cycle is not balanced");
  return out;
}

TropicalCycle cross_product(const TropicalCycle& a, const TropicalCycle& b) {
  TropicalCycle out{product_complex(a.complex, b.complex), a.k + b.k, {}};
  const std::size_t nb = b.complex.size();
  for (const auto& [s, w] : a.weights)
    for (const auto& [t, v] : b.weights) out.weights[s * nb + t] = w * v;
  return out;
}

}  // namespace trophom
