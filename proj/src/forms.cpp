#include "trophom/forms.hpp"

#include <algorithm>
#include <stdexcept>

namespace trophom {

namespace {

std::map<std::vector<std::size_t>, std::size_t> subset_index(std::size_t m, std::size_t p) {
  std::map<std::vector<std::size_t>, std::size_t> idx;
  auto all = subsets(m, p);
  for (std::size_t i = 0; i < all.size(); ++i) idx[all[i]] = i;
  return idx;
}

// Zero insertion of covectors from the stratum of `small` (more sedentary)
// into the stratum of `big`: an m_big x m_small 0/1 matrix.
IntMatrix zero_insertion(std::size_t n, const std::vector<std::size_t>& sed_small_stratum,
                         const std::vector<std::size_t>& sed_big_stratum) {
  auto keep_s = stratum_coordinates(n, sed_small_stratum);
  auto keep_b = stratum_coordinates(n, sed_big_stratum);
  IntMatrix e(keep_b.size(), keep_s.size());
  for (std::size_t j = 0; j < keep_s.size(); ++j) {
    auto it = std::lower_bound(keep_b.begin(), keep_b.end(), keep_s[j]);
    if (it == keep_b.end() || *it != keep_s[j]) throw std::logic_error("zero_insertion: incompatible strata");
    e(static_cast<std::size_t>(it - keep_b.begin()), j) = 1;
  }
  return e;
}

}  // namespace

const IntMatrix& CellularFormSheaf::restriction(std::size_t tau, std::size_t sigma) const {
  auto it = restrictions_.find({tau, sigma});
  if (it == restrictions_.end()) throw std::invalid_argument("restriction: not a face pair");
  return it->second;
}

IntVector CellularFormSheaf::express(std::size_t s, const IntVector& covector) const {
  const FormStalk& st = stalks_.at(s);
  IntVector img = st.image_map * covector;
  auto c = st.lattice.coordinates(img);
  if (!c) throw std::logic_error("express: image not in stalk lattice");
  return *c;
}

CellularFormSheaf omega_p(const FaceComplex& c, std::size_t p) {
  const std::size_t n = c.ambient_dim();
  std::vector<FormStalk> stalks(c.size());
  for (std::size_t s = 0; s < c.size(); ++s) {
    const Cell& cs = c.cell(s);
    FormStalk& st = stalks[s];
    st.targets = c.maximal_cofaces(s);
    const std::size_t ms = cs.stratum_dim();
    const std::size_t cols = binomial(ms, p);
    IntMatrix img(0, cols);
    for (std::size_t t : st.targets) {
      const Cell& ct = c.cell(t);
      IntMatrix e = zero_insertion(n, cs.sedentarity, ct.sedentarity);
      IntMatrix block = wedge_power_map(ct.tangent.basis() * e, p);
      st.offsets.push_back(st.target_rank);
      st.target_rank += block.rows();
      img = img.rows() == 0 ? block : vstack(img, block);
    }
    if (img.rows() == 0) img = IntMatrix(st.target_rank, cols);
    st.image_map = img;
    st.lattice = cols == 0 ? Sublattice(st.target_rank) : image_basis(img);
    st.lift = IntMatrix(cols, st.lattice.rank());
    for (std::size_t i = 0; i < st.lattice.rank(); ++i) {
      auto x = solve_integer(img, st.lattice.basis().row(i));
      if (!x) throw std::logic_error("omega_p: stalk basis element without preimage");
      for (std::size_t r = 0; r < cols; ++r) st.lift(r, i) = (*x)[r];
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> res;
  for (std::size_t s = 0; s < c.size(); ++s) {
    std::vector<std::size_t> below = c.faces_of(s);
    below.push_back(s);
    const FormStalk& ss = stalks[s];
    for (std::size_t t : below) {
      const FormStalk& st = stalks[t];
      IntMatrix r(ss.rank(), st.rank());
      for (std::size_t b = 0; b < st.rank(); ++b) {
        IntVector v(ss.target_rank);
        IntVector src = st.lattice.basis().row(b);
        for (std::size_t k = 0; k < ss.targets.size(); ++k) {
          auto it = std::find(st.targets.begin(), st.targets.end(), ss.targets[k]);
          if (it == st.targets.end()) throw std::logic_error("omega_p: maximal coface not shared with face");
          std::size_t off_t = st.offsets[static_cast<std::size_t>(it - st.targets.begin())];
          std::size_t len = (k + 1 < ss.targets.size() ? ss.offsets[k + 1] : ss.target_rank) - ss.offsets[k];
          for (std::size_t q = 0; q < len; ++q) v[ss.offsets[k] + q] = src[off_t + q];
        }
        auto coords = ss.lattice.coordinates(v);
        if (!coords) throw std::logic_error("omega_p: restriction leaves the stalk lattice");
        for (std::size_t a = 0; a < ss.rank(); ++a) r(a, b) = (*coords)[a];
      }
      res[{t, s}] = r;
    }
  }
  return CellularFormSheaf(p, std::move(stalks), std::move(res));
}

DualFormCosheaf dual_forms(const FaceComplex& c, std::size_t p) { return DualFormCosheaf{omega_p(c, p)}; }

IntMatrix pullback_covectors(const IntMatrix& lin, std::size_t p) { return wedge_power_map(lin.transpose(), p); }

IntVector wedge_forms(const IntVector& a, std::size_t i, const IntVector& b, std::size_t j, std::size_t m) {
  auto si = subsets(m, i);
  auto sj = subsets(m, j);
  if (a.size() != si.size() || b.size() != sj.size()) throw std::invalid_argument("wedge_forms: wrong lengths");
  auto idx = subset_index(m, i + j);
  IntVector out(binomial(m, i + j));
  for (std::size_t x = 0; x < si.size(); ++x) {
    if (a[x] == 0) continue;
    for (std::size_t y = 0; y < sj.size(); ++y) {
      if (b[y] == 0) continue;
      std::vector<std::size_t> k = si[x];
      bool disjoint = true;
      std::size_t inversions = 0;
      for (std::size_t e : sj[y]) {
        if (std::binary_search(si[x].begin(), si[x].end(), e)) {
          disjoint = false;
          break;
        }
        for (std::size_t f : si[x])
          if (f > e) ++inversions;
        k.push_back(e);
      }
      if (!disjoint) continue;
      std::sort(k.begin(), k.end());
      Integer term = a[x] * b[y];
      out[idx.at(k)] += (inversions % 2 ? -term : term);
    }
  }
  return out;
}

Integer pair_with_basis(const IntVector& form, const IntMatrix& basis) {
  IntMatrix w = wedge_power_map(basis, basis.rows());
  if (w.cols() != form.size()) throw std::invalid_argument("pair_with_basis: wrong form length");
  return dot(w.row(0), form);
}

PullbackResult pullback_forms(const AffineMap& f, const FaceComplex& source, const FaceComplex& target, std::size_t p) {
  if (f.source_dim() != source.ambient_dim() || f.target_dim() != target.ambient_dim())
    throw std::invalid_argument("pullback_forms: map dimensions do not match the complexes");
  PullbackResult out;
  CellularFormSheaf fs = omega_p(source, p);
  CellularFormSheaf ft = omega_p(target, p);
  IntMatrix pull = pullback_covectors(f.linear, p);
  for (std::size_t s = 0; s < source.size(); ++s) {
    const Cell& cs = source.cell(s);
    if (!cs.sedentarity.empty()) {
      out.violations.push_back({"sedentarity", cs.id, "", "cells at infinity are not supported by pullback_forms"});
      continue;
    }
    Polyhedron img = image(f, cs.geometry);
    auto d = locate_point(target, img.relative_interior_point());
    if (!d || !target.cell(*d).geometry.contains(img)) {
      out.violations.push_back({"cell_image", cs.id, d ? target.cell(*d).id : "", "image is not contained in a cell"});
      continue;
    }
    const FormStalk& sd = ft.stalk(*d);
    const FormStalk& ss = fs.stalk(s);
    Sublattice ker = kernel_basis(sd.image_map);
    bool well_defined = true;
    for (std::size_t k = 0; k < ker.rank(); ++k)
      if (!is_zero(ss.image_map * (pull * ker.basis().row(k)))) well_defined = false;
    if (!well_defined) {
      out.violations.push_back({"not_well_defined", cs.id, target.cell(*d).id, "pullback does not preserve the image"});
      continue;
    }
    IntMatrix m(ss.rank(), sd.rank());
    for (std::size_t b = 0; b < sd.rank(); ++b) {
      IntVector coords = fs.express(s, pull * sd.lift.col(b));
      for (std::size_t a = 0; a < ss.rank(); ++a) m(a, b) = coords[a];
    }
    out.cell_map[s] = *d;
    out.matrices[s] = m;
  }
  return out;
}

ProductDecomposition product_sheaf_decomposition(const FaceComplex& a, const FaceComplex& b, std::size_t p) {
  ProductDecomposition out;
  out.product = product_complex(a, b);
  out.p = p;
  CellularFormSheaf fp = omega_p(out.product, p);
  std::vector<CellularFormSheaf> fa, fb;
  for (std::size_t i = 0; i <= p; ++i) {
    fa.push_back(omega_p(a, i));
    fb.push_back(omega_p(b, i));
  }
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) {
      ProductCellDecomposition d;
      d.cell = x * b.size() + y;
      d.cell_a = x;
      d.cell_b = y;
      const std::size_t ma = a.cell(x).stratum_dim(), mb = b.cell(y).stratum_dim();
      auto idx = subset_index(ma + mb, p);
      std::vector<IntVector> cols;
      for (std::size_t i = 0; i <= p; ++i) {
        const std::size_t j = p - i;
        const FormStalk& sa = fa[i].stalk(x);
        const FormStalk& sb = fb[j].stalk(y);
        if (sa.rank() == 0 || sb.rank() == 0) continue;
        d.blocks.push_back({i, j, sa.rank(), sb.rank(), cols.size()});
        auto si = subsets(ma, i);
        auto sj = subsets(mb, j);
        for (std::size_t s = 0; s < sa.rank(); ++s)
          for (std::size_t t = 0; t < sb.rank(); ++t) {
            IntVector form(binomial(ma + mb, p));
            for (std::size_t u = 0; u < si.size(); ++u) {
              const Integer& au = sa.lift(u, s);
              if (au == 0) continue;
              for (std::size_t v = 0; v < sj.size(); ++v) {
                const Integer& bv = sb.lift(v, t);
                if (bv == 0) continue;
                std::vector<std::size_t> k = si[u];
                for (std::size_t e : sj[v]) k.push_back(ma + e);
                form[idx.at(k)] += au * bv;
              }
            }
            cols.push_back(fp.express(d.cell, form));
          }
      }
      const std::size_t r = fp.rank(d.cell);
      d.change_of_basis = IntMatrix(r, cols.size());
      for (std::size_t k = 0; k < cols.size(); ++k)
        for (std::size_t q = 0; q < r; ++q) d.change_of_basis(q, k) = cols[k][q];
      d.unimodular = r == cols.size() && abs(determinant(d.change_of_basis)) == 1;
      out.cells.push_back(std::move(d));
    }
  return out;
}

}  // namespace trophom
