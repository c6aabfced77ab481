#include "trophom/matroids.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace trophom {

std::vector<std::size_t> set_elements(ElementSet s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 32; ++i)
    if (s >> i & 1u) out.push_back(i);
  return out;
}

namespace {

ElementSet bit(std::size_t i) { return ElementSet(1) << i; }

// Remove position i from a mask, shifting higher elements down.
ElementSet drop_bit(ElementSet s, std::size_t i) {
  ElementSet low = s & (bit(i) - 1);
  ElementSet high = (s >> (i + 1)) << i;
  return low | high;
}

}  // namespace

Matroid Matroid::from_bases(std::vector<std::string> elements, const std::vector<std::vector<std::size_t>>& bases) {
  if (elements.empty()) throw std::invalid_argument("matroid: empty ground set");
  if (elements.size() > 32) throw std::invalid_argument("matroid: more than 32 elements");
  std::set<std::string> seen(elements.begin(), elements.end());
  if (seen.size() != elements.size()) throw std::invalid_argument("matroid: repeated element label");
  if (bases.empty()) throw std::invalid_argument("matroid: no bases");
  Matroid m;
  m.elements_ = std::move(elements);
  std::set<ElementSet> bs;
  for (const auto& b : bases) {
    ElementSet s = 0;
    for (std::size_t i : b) {
      if (i >= m.elements_.size()) throw std::invalid_argument("matroid: basis element out of range");
      if (s & bit(i)) throw std::invalid_argument("matroid: repeated element in a basis");
      s |= bit(i);
    }
    bs.insert(s);
  }
  m.bases_.assign(bs.begin(), bs.end());
  const int r = std::popcount(m.bases_.front());
  for (ElementSet b : m.bases_)
    if (std::popcount(b) != r) throw std::invalid_argument("matroid: bases of different sizes");
  for (ElementSet b1 : m.bases_)
    for (ElementSet b2 : m.bases_)
      for (std::size_t x : set_elements(b1 & ~b2)) {
        bool ok = false;
        for (std::size_t y : set_elements(b2 & ~b1))
          if (bs.count((b1 & ~bit(x)) | bit(y))) {
            ok = true;
            break;
          }
        if (!ok)
          throw std::invalid_argument("matroid: basis exchange fails for " + m.label(b1) + ", " + m.label(b2) +
                                      " and element " + m.elements_[x]);
      }
  return m;
}

Matroid Matroid::uniform(std::size_t r, std::size_t n) {
  if (r > n) throw std::invalid_argument("uniform matroid: rank exceeds size");
  std::vector<std::string> el;
  for (std::size_t i = 0; i < n; ++i) el.push_back(std::to_string(i));
  return from_bases(el, subsets(n, r));
}

Matroid Matroid::graphic(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::string> el;
  for (const auto& [u, v] : edges) {
    if (u >= vertices || v >= vertices) throw std::invalid_argument("graphic matroid: vertex out of range");
    el.push_back(std::to_string(u) + "-" + std::to_string(v));
  }
  auto forest_size = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> parent(vertices);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    std::size_t merged = 0;
    for (std::size_t e : idx) {
      std::size_t a = find(edges[e].first), b = find(edges[e].second);
      if (a != b) {
        parent[a] = b;
        ++merged;
      }
    }
    return merged;
  };
  std::vector<std::size_t> all(edges.size());
  std::iota(all.begin(), all.end(), 0);
  const std::size_t r = forest_size(all);
  std::vector<std::vector<std::size_t>> bases;
  for (const auto& s : subsets(edges.size(), r))
    if (forest_size(s) == r) bases.push_back(s);
  return from_bases(el, bases);
}

std::size_t Matroid::rank() const { return static_cast<std::size_t>(std::popcount(bases_.front())); }

std::size_t Matroid::rank(ElementSet s) const {
  int best = 0;
  for (ElementSet b : bases_) best = std::max(best, std::popcount(b & s));
  return static_cast<std::size_t>(best);
}

ElementSet Matroid::closure(ElementSet s) const {
  const std::size_t r = rank(s);
  ElementSet out = s;
  for (std::size_t i = 0; i < size(); ++i)
    if (!(s & bit(i)) && rank(s | bit(i)) == r) out |= bit(i);
  return out;
}

std::vector<ElementSet> Matroid::flats() const {
  if (size() > 20) throw std::invalid_argument("flats: ground set too large");
  std::vector<ElementSet> out;
  for (ElementSet s = 0;; ++s) {
    if (closure(s) == s) out.push_back(s);
    if (s == ground()) break;
  }
  std::sort(out.begin(), out.end(), [&](ElementSet a, ElementSet b) {
    std::size_t ra = rank(a), rb = rank(b);
    return ra != rb ? ra < rb : a < b;
  });
  return out;
}

ElementSet Matroid::loops() const {
  ElementSet u = 0;
  for (ElementSet b : bases_) u |= b;
  return ground() & ~u;
}

ElementSet Matroid::coloops() const {
  ElementSet x = ground();
  for (ElementSet b : bases_) x &= b;
  return x;
}

Matroid Matroid::deletion(std::size_t i) const {
  if (i >= size()) throw std::invalid_argument("deletion: element out of range");
  if (size() == 1) throw std::invalid_argument("deletion: would leave an empty ground set");
  const bool coloop = coloops() & bit(i);
  Matroid m;
  m.elements_ = elements_;
  m.elements_.erase(m.elements_.begin() + static_cast<std::ptrdiff_t>(i));
  std::set<ElementSet> bs;
  for (ElementSet b : bases_)
    if (coloop || !(b & bit(i))) bs.insert(drop_bit(b, i));
  m.bases_.assign(bs.begin(), bs.end());
  return m;
}

Matroid Matroid::contraction(std::size_t i) const {
  if (i >= size()) throw std::invalid_argument("contraction: element out of range");
  if (size() == 1) throw std::invalid_argument("contraction: would leave an empty ground set");
  const bool loop = loops() & bit(i);
  Matroid m;
  m.elements_ = elements_;
  m.elements_.erase(m.elements_.begin() + static_cast<std::ptrdiff_t>(i));
  std::set<ElementSet> bs;
  for (ElementSet b : bases_)
    if (loop || (b & bit(i))) bs.insert(drop_bit(b, i));
  m.bases_.assign(bs.begin(), bs.end());
  return m;
}

std::string Matroid::label(ElementSet s) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i : set_elements(s)) {
    if (!first) out += ",";
    out += elements_.at(i);
    first = false;
  }
  return out + "}";
}

IntVector flat_vector(const Matroid& m, ElementSet f) {
  const std::size_t n = m.size();
  IntVector v(n - 1);
  for (std::size_t i : set_elements(f)) {
    if (i + 1 < n) {
      v[i] += 1;
    } else {
      for (auto& x : v) x -= 1;
    }
  }
  return v;
}

BergmanFan bergman_fan(const Matroid& m) {
  if (!m.is_loopless()) throw std::invalid_argument("bergman_fan: matroid has loops " + m.label(m.loops()));
  const std::size_t d = m.size() - 1;
  std::vector<ElementSet> proper;
  for (ElementSet f : m.flats())
    if (f != 0 && f != m.ground()) proper.push_back(f);
  std::vector<std::vector<ElementSet>> chains{{}};
  for (std::size_t start = 0; start < chains.size(); ++start) {
    auto base = chains[start];
    for (ElementSet f : proper) {
      if (!base.empty() && !((base.back() & f) == base.back() && base.back() != f)) continue;
      auto ch = base;
      ch.push_back(f);
      chains.push_back(ch);
    }
  }
  auto chain_id = [&](const std::vector<ElementSet>& ch) {
    if (ch.empty()) return std::string("origin");
    std::string id;
    for (std::size_t i = 0; i < ch.size(); ++i) id += (i ? "<" : "") + m.label(ch[i]);
    return id;
  };
  std::vector<CellSpec> specs;
  for (const auto& ch : chains) {
    CellSpec s;
    s.id = chain_id(ch);
    s.vertices = {QVector(d)};
    std::vector<IntVector> rays;
    for (ElementSet f : ch) rays.push_back(flat_vector(m, f));
    s.rays = rays;
    for (std::size_t i = 0; i < ch.size(); ++i) {
      auto sub = ch;
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
      s.faces.push_back({chain_id(sub), false});
    }
    if (!rays.empty()) {
      Sublattice t = saturate(Sublattice(d, rays));
      IntMatrix c(rays.size(), t.rank());
      for (std::size_t i = 0; i < rays.size(); ++i) {
        auto x = t.coordinates(rays[i]);
        for (std::size_t j = 0; j < t.rank(); ++j) c(i, j) = (*x)[j];
      }
      s.orientation_sign = determinant(c) > 0 ? 1 : -1;
    }
    specs.push_back(s);
  }
  return BergmanFan{m, FaceComplex::build(d, specs), chains};
}

Modification modification_map(const Matroid& m, std::size_t i) {
  const std::size_t n = m.size();
  if (i >= n) throw std::invalid_argument("modification_map: element out of range");
  if (!m.is_loopless()) throw std::invalid_argument("modification_map: matroid has loops");
  if (m.coloops() & bit(i)) throw std::invalid_argument("modification_map: element " + m.elements()[i] + " is a coloop");
  Matroid del = m.deletion(i), con = m.contraction(i);
  if (!con.is_loopless()) throw std::invalid_argument("modification_map: contraction by " + m.elements()[i] + " has loops");
  Modification out{AffineMap{IntMatrix(n - 2, n - 1), QVector(n - 2)}, del, con, bergman_fan(m), bergman_fan(del),
                    bergman_fan(con), {}, false, false};
  if (i + 1 < n) {
    std::size_t r = 0;
    for (std::size_t j = 0; j + 1 < n; ++j)
      if (j != i) out.delta.linear(r++, j) = 1;
  } else {
    for (std::size_t j = 0; j + 2 < n; ++j) {
      out.delta.linear(j, j) = 1;
      out.delta.linear(j, n - 2) = -1;
    }
  }

  TropicalCycle pushed = push_forward(out.delta, fundamental_cycle(out.source.fan), out.target.fan);
  out.pushforward_ok = cycles_equal(pushed, fundamental_cycle(out.target.fan));

  const FaceComplex& src = out.source.fan;
  const FaceComplex& dv = out.divisor.fan;
  IntVector ei = flat_vector(m, bit(i));
  std::vector<Polyhedron> images;
  for (std::size_t s : src.cells_of_dim(static_cast<std::size_t>(src.dim()))) {
    std::vector<QVector> rows;
    for (const auto& r : src.cell(s).tangent.basis().row_list()) rows.push_back(to_q(r));
    std::size_t before = rank_q(rows);
    rows.push_back(to_q(ei));
    if (rank_q(rows) != before) continue;
    out.divisorial_cells.push_back(s);
    Polyhedron p = image(out.delta, src.cell(s).geometry);
    if (p.dim() == dv.dim()) images.push_back(p);
  }
  bool ok = !images.empty() || dv.size() == 0;
  std::vector<Hyperplane> hd = hyperplanes_of(dv);
  for (const auto& p : images) {
    FaceComplex pc = refine_by_hyperplanes(polyhedron_complex(p, "p"), hd).complex;
    for (std::size_t c : pc.cells_of_dim(static_cast<std::size_t>(p.dim())))
      if (!locate_point(dv, pc.cell(c).interior_point)) ok = false;
  }
  std::set<Hyperplane> hi;
  for (const auto& p : images)
    for (auto& h : hyperplanes_of(p)) hi.insert(h);
  FaceComplex dref = refine_by_hyperplanes(dv, {hi.begin(), hi.end()}).complex;
  for (std::size_t c : dref.cells_of_dim(static_cast<std::size_t>(std::max(dv.dim(), 0)))) {
    bool covered = false;
    for (const auto& p : images)
      if (p.contains(dref.cell(c).interior_point)) covered = true;
    if (!covered) ok = false;
  }
  out.divisor_ok = ok;
  return out;
}

}  // namespace trophom
