#include "trophom/divisors.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace trophom {

PLFunction make_pl(const FaceComplex& c, const std::map<std::string, AffinePiece>& data) {
  PLFunction f{c, std::vector<IntVector>(c.size()), std::vector<Rational>(c.size())};
  std::vector<bool> have(c.size(), false);
  for (const auto& [id, piece] : data) {
    std::size_t s = c.index(id);
    if (piece.covector.size() != c.cell(s).stratum_dim())
      throw std::invalid_argument("PL data for cell '" + id + "': covector has wrong length");
    f.covectors[s] = piece.covector;
    f.constants[s] = piece.constant;
    have[s] = true;
  }
  std::vector<std::size_t> order(c.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c.cell(a).dim > c.cell(b).dim; });
  for (std::size_t s : order) {
    if (have[s]) continue;
    for (std::size_t t : c.cofaces_of(s))
      if (have[t] && c.cell(t).sedentarity == c.cell(s).sedentarity) {
        f.covectors[s] = f.covectors[t];
        f.constants[s] = f.constants[t];
        have[s] = true;
        break;
      }
    if (!have[s]) throw std::invalid_argument("PL data missing for cell '" + c.cell(s).id + "'");
  }
  return f;
}

PLFunction affine_pl(const FaceComplex& c, const IntVector& m, const Rational& a) {
  PLFunction f{c, {}, {}};
  for (const auto& cell : c.cells()) {
    if (!cell.sedentarity.empty()) throw std::invalid_argument("affine_pl: cells at infinity are not supported");
    f.covectors.push_back(m);
    f.constants.push_back(a);
  }
  return f;
}

PLReport verify_pl(const PLFunction& f) {
  PLReport r;
  const FaceComplex& c = f.complex;
  for (std::size_t s = 0; s < c.size(); ++s)
    for (std::size_t t : c.faces_of(s)) {
      if (c.is_at_infinity(t, s)) continue;
      const Cell& ct = c.cell(t);
      bool ok = true;
      for (const auto& v : ct.geometry.vertices())
        if (f.value(s, v) != f.value(t, v)) ok = false;
      for (const auto& g : ct.geometry.recession_generators())
        if (dot(f.covectors[s], g) != dot(f.covectors[t], g)) ok = false;
      if (!ok)
        r.violations.push_back({"discontinuity", c.cell(s).id, ct.id, "affine data of the cell and its face disagree on the face"});
    }
  return r;
}

namespace {

// Is there one affine function agreeing with f on all the given cells?
bool affine_on(const PLFunction& f, const std::vector<std::size_t>& cells) {
  std::vector<QVector> rows;
  QVector rhs;
  for (std::size_t s : cells) {
    const Polyhedron& g = f.complex.cell(s).geometry;
    for (const auto& v : g.vertices()) {
      QVector row(v);
      row.push_back(1);
      rows.push_back(row);
      rhs.push_back(f.value(s, v));
    }
    for (const auto& r : g.recession_generators()) {
      QVector row = to_q(r);
      row.push_back(0);
      rows.push_back(row);
      rhs.push_back(Rational(dot(f.covectors[s], r)));
    }
  }
  return solve_q(rows, rhs).has_value();
}

void require_finite(const FaceComplex& c, const char* what) {
  for (const auto& cell : c.cells())
    if (!cell.sedentarity.empty())
      throw std::invalid_argument(std::string(what) + ": cells at infinity are not supported");
}

// Affine data of d on every cell of c, if each cell lies in a cell of d.
std::optional<std::vector<AffinePiece>> transfer(const CartierDivisor& d, const FaceComplex& c) {
  const PLFunction& f = d.representative;
  std::vector<AffinePiece> out;
  for (const auto& cell : c.cells()) {
    auto loc = locate_point(f.complex, cell.interior_point);
    if (!loc) throw std::invalid_argument("divisor is not defined on cell '" + cell.id + "'");
    if (!f.complex.cell(*loc).geometry.contains(cell.geometry)) return std::nullopt;
    out.push_back({f.covectors[*loc], f.constants[*loc]});
  }
  return out;
}

struct Prepared {
  TropicalCycle cycle;
  std::vector<AffinePiece> data;
};

Prepared prepare(const CartierDivisor& d, const TropicalCycle& a) {
  if (a.k == 0) throw std::invalid_argument("intersect: cycle has dimension 0");
  require_finite(a.complex, "intersect");
  require_finite(d.representative.complex, "intersect");
  if (a.complex.ambient_dim() != d.representative.complex.ambient_dim())
    throw std::invalid_argument("intersect: ambient dimensions differ");
  if (!is_balanced(a).balanced()) throw std::invalid_argument("intersect: cycle is not balanced");
  if (auto data = transfer(d, a.complex)) return {a, *data};
  Refinement r = refine_by_hyperplanes(a.complex, hyperplanes_of(d.representative.complex));
  TropicalCycle b{r.complex, a.k, {}};
  for (std::size_t s : r.complex.cells_of_dim(a.k)) b.weights[s] = a.weight(r.parent_a[s]);
  auto data = transfer(d, b.complex);
  if (!data) throw std::invalid_argument("intersect: refinement does not resolve the divisor");
  return {b, *data};
}

TropicalCycle intersect_prepared(const Prepared& pr) {
  const TropicalCycle& a = pr.cycle;
  const FaceComplex& c = a.complex;
  TropicalCycle out{c, a.k - 1, {}};
  for (std::size_t t : c.cells_of_dim(a.k - 1)) {
    Integer w = 0;
    for (std::size_t s : c.cofacets_of(t)) {
      Integer as = a.weight(s);
      if (as == 0) continue;
      IntVector n = lattice_normal_vector(c, s, t);
      IntVector diff = pr.data[s].covector;
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= pr.data[t].covector[i];
      w += as * dot(diff, n);
    }
    out.weights[t] = w;
  }
  if (!is_balanced(out).balanced()) throw std::logic_error("intersect: result is not balanced");
  return out;
}

}  // namespace

CartierDivisor make_divisor(const PLFunction& f) {
  PLReport r = verify_pl(f);
  if (!r.valid())
    throw std::invalid_argument("PL function is discontinuous between '" + r.violations[0].cell + "' and '" +
                                r.violations[0].other + "'");
  CartierDivisor d{f, {}};
  const FaceComplex& c = f.complex;
  for (std::size_t t = 0; t < c.size(); ++t) {
    std::vector<std::size_t> star;
    for (std::size_t s : c.maximal_cofaces(t))
      if (c.cell(s).sedentarity == c.cell(t).sedentarity) star.push_back(s);
    if (star.size() > 1 && !affine_on(f, star)) d.support.push_back(t);
  }
  return d;
}

TropicalCycle intersect(const CartierDivisor& d, const TropicalCycle& a) { return intersect_prepared(prepare(d, a)); }

CapResult divisor_cap_class(const CartierDivisor& d, const TropicalCycle& a) {
  Prepared pr = prepare(d, a);
  CapResult res;
  res.product = intersect_prepared(pr);
  const FaceComplex& c = pr.cycle.complex;
  const std::size_t k = pr.cycle.k;
  CellularFormSheaf f = omega_p(c, k - 1);
  IntChainComplex bm = bm_complex(c, f);
  IntVector psi(bm.rank(k));
  std::size_t off = 0;
  for (std::size_t s : c.cells_of_dim(k)) {
    const Cell& cs = c.cell(s);
    const Integer w = pr.cycle.weight(s);
    if (w != 0) {
      IntVector eta = wedge_power_map(cs.tangent.basis(), k).row(0);
      for (std::size_t i = 0; i < f.rank(s); ++i) {
        IntVector top = wedge_forms(f.stalk(s).lift.col(i), k - 1, pr.data[s].covector, 1, cs.stratum_dim());
        psi[off + i] = cs.orientation_sign * w * dot(eta, top);
      }
    }
    off += f.rank(s);
  }
  res.cap.p = k - 1;
  res.cap.q = k - 1;
  res.cap.chain = bm.d(k) * psi;
  res.cap.closed = k - 1 == 0 || is_zero(bm.d(k - 1) * res.cap.chain);
  res.cls = cycle_class(res.product, c, true);
  res.certified = res.cap.chain == res.cls.chain;
  if (!res.certified) throw std::logic_error("divisor_cap_class: certificate does not match the cycle class");
  return res;
}

}  // namespace trophom
