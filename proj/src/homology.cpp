#include "trophom/homology.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <stdexcept>

namespace trophom {

IntChainComplex::IntChainComplex(bool homological, std::vector<std::vector<ChainLabel>> bases, std::vector<IntMatrix> d)
    : homological_(homological), bases_(std::move(bases)), d_(std::move(d)) {
  if (d_.size() != bases_.size()) throw std::invalid_argument("IntChainComplex: one differential per degree expected");
  for (std::size_t q = 0; q < d_.size(); ++q) {
    std::size_t target = homological_ ? (q == 0 ? 0 : rank(q - 1)) : (q + 1 < bases_.size() ? rank(q + 1) : 0);
    if (d_[q].rows() != target || d_[q].cols() != rank(q))
      throw std::invalid_argument("IntChainComplex: differential of degree " + std::to_string(q) + " has the wrong shape");
  }
  for (std::size_t q = 0; q + 1 < d_.size(); ++q) {
    IntMatrix dd = homological_ ? d_[q] * d_[q + 1] : d_[q + 1] * d_[q];
    if (!dd.is_zero()) throw std::logic_error("IntChainComplex: d∘d != 0 at degree " + std::to_string(q));
  }
}

IntMatrix IntChainComplex::d(std::size_t q) const {
  if (q < d_.size()) return d_[q];
  return IntMatrix(0, 0);
}

HomologyResult homology(const IntChainComplex& cc, std::size_t q, bool with_generators) {
  HomologyResult r;
  r.q = q;
  const std::size_t n = cc.rank(q);
  if (n == 0) return r;
  IntMatrix out = cc.d(q);
  Sublattice ker = out.rows() == 0 ? Sublattice::full(n) : kernel_basis(out);
  Sublattice im(n);
  if (cc.homological()) {
    if (q + 1 <= cc.top_degree()) im = image_basis(cc.d(q + 1));
  } else if (q > 0) {
    im = image_basis(cc.d(q - 1));
  }
  r.shape = quotient_shape(ker, im);
  if (!with_generators || ker.rank() == 0) return r;
  IntMatrix coords(ker.rank(), im.rank());  // columns: image generators in kernel coordinates
  for (std::size_t i = 0; i < im.rank(); ++i) {
    auto c = ker.coordinates(im.basis().row(i));
    if (!c) throw std::logic_error("homology: image not inside kernel");
    for (std::size_t j = 0; j < ker.rank(); ++j) coords(j, i) = (*c)[j];
  }
  SmithForm s = smith_normal_form(coords);
  std::vector<IntVector> free, tors;
  std::vector<Integer> tors_orders;
  for (std::size_t j = 0; j < ker.rank(); ++j) {
    Integer dj = j < std::min(coords.rows(), coords.cols()) ? s.diag(j, j) : Integer(0);
    if (dj == 1) continue;
    IntVector y(n);
    for (std::size_t l = 0; l < ker.rank(); ++l) {
      const Integer& k = s.left_inverse(l, j);
      if (k == 0) continue;
      for (std::size_t m = 0; m < n; ++m) y[m] += k * ker.basis()(l, m);
    }
    if (dj == 0) {
      free.push_back(y);
    } else {
      tors.push_back(y);
      tors_orders.push_back(dj);
    }
  }
  for (auto& y : free) {
    r.generators.push_back(y);
    r.orders.push_back(0);
  }
  for (std::size_t i = 0; i < tors.size(); ++i) {
    r.generators.push_back(tors[i]);
    r.orders.push_back(tors_orders[i]);
  }
  return r;
}

namespace {

// Offset of each q-cell's block in the degree-q basis of the BM complex.
std::map<std::size_t, std::size_t> bm_offsets(const FaceComplex& c, const CellularFormSheaf& f, std::size_t q) {
  std::map<std::size_t, std::size_t> off;
  std::size_t k = 0;
  for (std::size_t s : c.cells_of_dim(q)) {
    off[s] = k;
    k += f.rank(s);
  }
  return off;
}

int sign_of(const Integer& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// sign_sigma times the Plücker coordinates of the tangent basis of a k-cell.
IntVector orientation_vector(const Cell& c) {
  IntVector v = wedge_power_map(c.tangent.basis(), c.dim).row(0);
  if (c.orientation_sign < 0)
    for (auto& x : v) x = -x;
  return v;
}

template <class T>
std::vector<T> run_tasks(std::vector<std::function<T()>> tasks, unsigned threads) {
  std::vector<T> out(tasks.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) out[i] = tasks[i]();
    return out;
  }
  for (std::size_t start = 0; start < tasks.size(); start += threads) {
    std::vector<std::future<T>> running;
    for (std::size_t i = start; i < std::min(tasks.size(), start + threads); ++i)
      running.push_back(std::async(std::launch::async, tasks[i]));
    for (std::size_t i = 0; i < running.size(); ++i) out[start + i] = running[i].get();
  }
  return out;
}

}  // namespace

IntChainComplex bm_complex(const FaceComplex& c, std::size_t p) { return bm_complex(c, omega_p(c, p)); }

IntChainComplex bm_complex(const FaceComplex& c, const CellularFormSheaf& f) {
  const std::size_t top = c.size() == 0 ? 0 : static_cast<std::size_t>(c.dim());
  std::vector<std::vector<ChainLabel>> bases(top + 1);
  std::vector<std::map<std::size_t, std::size_t>> offs(top + 1);
  for (std::size_t q = 0; q <= top; ++q) {
    offs[q] = bm_offsets(c, f, q);
    for (std::size_t s : c.cells_of_dim(q))
      for (std::size_t i = 0; i < f.rank(s); ++i) bases[q].push_back({{s}, i});
  }
  std::vector<IntMatrix> d(top + 1);
  d[0] = IntMatrix(0, bases[0].size());
  for (std::size_t q = 1; q <= top; ++q) {
    IntMatrix m(bases[q - 1].size(), bases[q].size());
    for (std::size_t s : c.cells_of_dim(q))
      for (std::size_t t : c.facets_of(s)) {
        int e = c.incidence(s, t);
        if (e == 0) throw std::invalid_argument("bm_complex: underivable incidence sign between '" + c.cell(s).id +
                                                "' and '" + c.cell(t).id + "'");
        const IntMatrix& r = f.restriction(t, s);  // rank(s) x rank(t)
        for (std::size_t a = 0; a < r.rows(); ++a)
          for (std::size_t b = 0; b < r.cols(); ++b)
            if (r(a, b) != 0) m(offs[q - 1][t] + b, offs[q][s] + a) += e * r(a, b);
      }
    d[q] = m;
  }
  return IntChainComplex(true, std::move(bases), std::move(d));
}

IntChainComplex cohomology_complex(const FaceComplex& c, std::size_t p) { return cohomology_complex(c, omega_p(c, p)); }

IntChainComplex cohomology_complex(const FaceComplex& c, const CellularFormSheaf& f) {
  std::vector<std::vector<std::vector<std::size_t>>> chains(1);
  for (std::size_t s = 0; s < c.size(); ++s) chains[0].push_back({s});
  for (std::size_t k = 0;; ++k) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& ch : chains[k])
      for (std::size_t s : c.cofaces_of(ch.back())) {
        auto e = ch;
        e.push_back(s);
        next.push_back(e);
      }
    if (next.empty()) break;
    chains.push_back(next);
  }
  const std::size_t top = chains.size() - 1;
  std::vector<std::vector<ChainLabel>> bases(top + 1);
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> offs(top + 1);
  for (std::size_t k = 0; k <= top; ++k)
    for (const auto& ch : chains[k]) {
      std::size_t r = f.rank(ch.back());
      if (r == 0) continue;
      offs[k][ch] = bases[k].size();
      for (std::size_t i = 0; i < r; ++i) bases[k].push_back({ch, i});
    }
  std::vector<IntMatrix> d(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    if (k == top) {
      d[k] = IntMatrix(0, bases[k].size());
      continue;
    }
    IntMatrix m(bases[k + 1].size(), bases[k].size());
    for (const auto& [a, row] : offs[k + 1]) {
      const std::size_t last = a.back();
      const std::size_t r = f.rank(last);
      for (std::size_t i = 0; i <= k; ++i) {
        std::vector<std::size_t> b = a;
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(i));
        std::size_t col = offs[k].at(b);
        for (std::size_t j = 0; j < r; ++j) m(row + j, col + j) += (i % 2 ? -1 : 1);
      }
      std::vector<std::size_t> b(a.begin(), a.end() - 1);
      auto it = offs[k].find(b);
      if (it == offs[k].end()) continue;
      const IntMatrix& res = f.restriction(b.back(), last);
      const int sg = (k + 1) % 2 ? -1 : 1;
      for (std::size_t x = 0; x < res.rows(); ++x)
        for (std::size_t y = 0; y < res.cols(); ++y)
          if (res(x, y) != 0) m(row + x, it->second + y) += sg * res(x, y);
    }
    d[k] = m;
  }
  return IntChainComplex(false, std::move(bases), std::move(d));
}

namespace {

HomologyTable make_table(const FaceComplex& c, std::size_t max_degree, unsigned threads, bool gens, bool bm) {
  std::vector<std::function<std::vector<HomologyResult>()>> tasks;
  for (std::size_t p = 0; p <= max_degree; ++p)
    tasks.push_back([&c, p, max_degree, gens, bm]() {
      CellularFormSheaf f = omega_p(c, p);
      IntChainComplex cc = bm ? bm_complex(c, f) : cohomology_complex(c, f);
      std::vector<HomologyResult> row;
      for (std::size_t q = 0; q <= max_degree; ++q) {
        HomologyResult r = homology(cc, q, gens);
        r.p = p;
        row.push_back(r);
      }
      return row;
    });
  HomologyTable t;
  for (auto& row : run_tasks(std::move(tasks), threads))
    for (auto& r : row) t[{r.p, r.q}] = r;
  return t;
}

}  // namespace

HomologyTable bm_table(const FaceComplex& c, std::size_t max_degree, unsigned threads, bool with_generators) {
  return make_table(c, max_degree, threads, with_generators, true);
}

HomologyTable cohomology_table(const FaceComplex& c, std::size_t max_degree, unsigned threads, bool with_generators) {
  return make_table(c, max_degree, threads, with_generators, false);
}

std::vector<std::size_t> embed_cells(const FaceComplex& sub, const FaceComplex& ambient) {
  std::map<std::pair<std::vector<std::size_t>, std::string>, std::size_t> by_key;
  for (std::size_t i = 0; i < ambient.size(); ++i)
    by_key[{ambient.cell(i).sedentarity, ambient.cell(i).geometry.key()}] = i;
  std::vector<std::size_t> out;
  for (const auto& cell : sub.cells()) {
    auto it = by_key.find({cell.sedentarity, cell.geometry.key()});
    if (it == by_key.end())
      throw std::invalid_argument("cell '" + cell.id + "' is not a cell of the ambient complex; refine first");
    out.push_back(it->second);
  }
  return out;
}

TropicalChainClass cycle_class(const TropicalCycle& a, const FaceComplex& ambient, bool require_closed) {
  const std::size_t k = a.k;
  CellularFormSheaf f = omega_p(ambient, k);
  IntChainComplex cc = bm_complex(ambient, f);
  TropicalChainClass out;
  out.p = out.q = k;
  out.chain = IntVector(cc.rank(k));
  auto off = bm_offsets(ambient, f, k);
  auto emb = embed_cells(a.complex, ambient);
  for (const auto& [s, w] : a.weights) {
    if (w == 0) continue;
    const std::size_t t = emb[s];
    const Cell& ct = ambient.cell(t);
    IntVector eta = orientation_vector(ct);
    const FormStalk& st = f.stalk(t);
    for (std::size_t i = 0; i < st.rank(); ++i) out.chain[off.at(t) + i] = w * dot(eta, st.lift.col(i));
  }
  out.closed = k > cc.top_degree() || is_zero(cc.d(k) * out.chain);
  if (require_closed && !out.closed) throw std::runtime_error("cycle_class: chain is not closed (cycle is not balanced)");
  return out;
}

TropicalChainClass pushforward_class(const AffineMap& f, const TropicalChainClass& cls, const FaceComplex& source,
                                     const FaceComplex& target) {
  const std::size_t p = cls.p, q = cls.q;
  CellularFormSheaf fs = omega_p(source, p), ft = omega_p(target, p);
  auto off_s = bm_offsets(source, fs, q);
  auto off_t = bm_offsets(target, ft, q);
  IntChainComplex ct = bm_complex(target, ft);
  TropicalChainClass out;
  out.p = p;
  out.q = q;
  out.chain = IntVector(ct.rank(q));
  IntMatrix pull = pullback_covectors(f.linear, p);
  for (std::size_t s : source.cells_of_dim(q)) {
    const Cell& cs = source.cell(s);
    const std::size_t rs = fs.rank(s);
    bool nonzero = false;
    for (std::size_t i = 0; i < rs; ++i)
      if (cls.chain.at(off_s[s] + i) != 0) nonzero = true;
    if (!nonzero) continue;
    if (!cs.sedentarity.empty()) throw std::invalid_argument("pushforward_class: cells at infinity are not supported");
    Polyhedron img = image(f, cs.geometry);
    if (img.dim() < static_cast<int>(q)) continue;
    IntMatrix lin = cs.tangent.basis() * f.linear.transpose();
    bool hit = false;
    for (std::size_t d : target.cells_of_dim(q)) {
      const Cell& cd = target.cell(d);
      if (!cd.sedentarity.empty() || !img.in_relative_interior(cd.interior_point)) continue;
      if (!img.contains(cd.geometry))
        throw std::invalid_argument("pushforward_class: image of '" + cs.id + "' is not a union of target cells");
      hit = true;
      const FormStalk& sd = ft.stalk(d);
      Sublattice ker = kernel_basis(sd.image_map);
      for (std::size_t k = 0; k < ker.rank(); ++k)
        if (!is_zero(fs.stalk(s).image_map * (pull * ker.basis().row(k))))
          throw std::invalid_argument("pushforward_class: map is not cellular on '" + cs.id + "'");
      IntMatrix coords(q, q);
      for (std::size_t i = 0; i < q; ++i) {
        auto x = cd.tangent.coordinates(lin.row(i));
        if (!x) throw std::invalid_argument("pushforward_class: image of '" + cs.id + "' leaves cell '" + cd.id + "'");
        for (std::size_t j = 0; j < q; ++j) coords(i, j) = (*x)[j];
      }
      const int sg = cs.orientation_sign * cd.orientation_sign * sign_of(determinant(coords));
      for (std::size_t j = 0; j < sd.rank(); ++j) {
        IntVector col = fs.express(s, pull * sd.lift.col(j));
        Integer v = 0;
        for (std::size_t i = 0; i < rs; ++i) v += cls.chain[off_s[s] + i] * col[i];
        out.chain[off_t[d] + j] += sg * v;
      }
    }
    if (!hit) throw std::invalid_argument("pushforward_class: image of '" + cs.id + "' is not covered by target cells");
  }
  out.closed = q > ct.top_degree() || is_zero(ct.d(q) * out.chain);
  return out;
}

TropicalChainClass cross_product_class(const TropicalChainClass& x, const FaceComplex& a, const TropicalChainClass& y,
                                       const FaceComplex& b) {
  const std::size_t p = x.p + y.p, q = x.q + y.q;
  ProductDecomposition dec = product_sheaf_decomposition(a, b, p);
  CellularFormSheaf fp = omega_p(dec.product, p);
  CellularFormSheaf fa = omega_p(a, x.p), fb = omega_p(b, y.p);
  auto off_a = bm_offsets(a, fa, x.q);
  auto off_b = bm_offsets(b, fb, y.q);
  auto off_p = bm_offsets(dec.product, fp, q);
  IntChainComplex cp = bm_complex(dec.product, fp);
  TropicalChainClass out;
  out.p = p;
  out.q = q;
  out.chain = IntVector(cp.rank(q));
  for (const auto& d : dec.cells) {
    if (a.cell(d.cell_a).dim != x.q || b.cell(d.cell_b).dim != y.q) continue;
    const IntMatrix& m = d.change_of_basis;
    IntVector v(m.cols());
    bool nonzero = false;
    for (const auto& blk : d.blocks) {
      if (blk.i != x.p || blk.j != y.p) continue;
      for (std::size_t s = 0; s < blk.rank_a; ++s)
        for (std::size_t t = 0; t < blk.rank_b; ++t) {
          v[blk.offset + s * blk.rank_b + t] = x.chain.at(off_a[d.cell_a] + s) * y.chain.at(off_b[d.cell_b] + t);
          if (v[blk.offset + s * blk.rank_b + t] != 0) nonzero = true;
        }
    }
    if (!nonzero) continue;
    if (rank(m) != m.rows())
      throw std::runtime_error("cross_product_class: product stalk at '" + dec.product.cell(d.cell).id +
                               "' is not spanned by products");
    auto phi = solve_integer(m.transpose(), v);
    if (!phi) throw std::runtime_error("cross_product_class: product functional is not integral");
    for (std::size_t i = 0; i < phi->size(); ++i) out.chain[off_p[d.cell] + i] = (*phi)[i];
  }
  out.closed = q > cp.top_degree() || is_zero(cp.d(q) * out.chain);
  return out;
}

bool DualityReport::passed() const {
  for (const auto& e : entries)
    if (!e.match) return false;
  for (const auto& [p, ok] : top_row)
    if (!ok) return false;
  return true;
}

DualityReport pd_check(const FaceComplex& c, std::size_t n, unsigned threads) {
  DualityReport r;
  r.n = n;
  if (!c.is_pure() || c.dim() != static_cast<int>(n)) {
    r.notes.push_back("complex is not purely " + std::to_string(n) + "-dimensional");
    r.top_row[0] = false;
    return r;
  }
  HomologyTable bm = bm_table(c, n, threads);
  HomologyTable co = cohomology_table(c, n, threads);
  for (std::size_t p = 0; p <= n; ++p)
    for (std::size_t q = 0; q <= n; ++q) {
      DualityEntry e;
      e.p = p;
      e.q = q;
      e.bm = bm.at({p, q}).shape;
      e.cohomology = co.at({n - p, n - q}).shape;
      e.match = e.bm == e.cohomology;
      r.entries.push_back(e);
    }
  for (std::size_t p = 0; p <= n; ++p) {
    CellularFormSheaf fo = omega_p(c, n - p);
    CellularFormSheaf fp = omega_p(c, p);
    IntChainComplex co_cc = cohomology_complex(c, fo);
    IntChainComplex bm_cc = bm_complex(c, fp);
    IntMatrix d0 = co_cc.d(0);
    Sublattice sections = d0.rows() == 0 ? Sublattice::full(co_cc.rank(0)) : kernel_basis(d0);
    auto off = bm_offsets(c, fp, n);
    std::vector<IntVector> images;
    for (std::size_t g = 0; g < sections.rank(); ++g) {
      IntVector x = sections.basis().row(g);
      std::map<std::size_t, IntVector> local;  // cell -> stalk coordinates
      for (std::size_t i = 0; i < co_cc.rank(0); ++i) {
        const ChainLabel& lab = co_cc.basis(0)[i];
        auto& v = local[lab.cells[0]];
        if (v.empty()) v = IntVector(fo.rank(lab.cells[0]));
        v[lab.index] = x[i];
      }
      IntVector chain(bm_cc.rank(n));
      for (std::size_t s : c.cells_of_dim(n)) {
        const Cell& cs = c.cell(s);
        const std::size_t m = cs.stratum_dim();
        IntVector omega(binomial(m, n - p));
        auto it = local.find(s);
        if (it != local.end()) omega = fo.stalk(s).lift * it->second;
        IntVector eta = orientation_vector(cs);
        for (std::size_t i = 0; i < fp.rank(s); ++i) {
          IntVector top = wedge_forms(fp.stalk(s).lift.col(i), p, omega, n - p, m);
          chain[off[s] + i] = dot(eta, top);
        }
      }
      images.push_back(chain);
    }
    bool ok = true;
    for (const auto& ch : images)
      if (!is_zero(bm_cc.d(n) * ch)) {
        ok = false;
        r.notes.push_back("p=" + std::to_string(p) + ": image of a global form is not closed");
        break;
      }
    if (ok) {
      Sublattice span(bm_cc.rank(n), images);
      IntMatrix dn = bm_cc.d(n);
      Sublattice cycles = dn.rows() == 0 ? Sublattice::full(bm_cc.rank(n)) : kernel_basis(dn);
      if (span.rank() != images.size()) {
        ok = false;
        r.notes.push_back("p=" + std::to_string(p) + ": duality map on global forms is not injective");
      } else if (span != cycles) {
        ok = false;
        r.notes.push_back("p=" + std::to_string(p) + ": duality map on global forms is not surjective");
      }
    }
    r.top_row[p] = ok;
  }
  return r;
}

bool KunnethReport::passed() const {
  for (const auto& e : entries)
    if (!e.match) return false;
  return true;
}

KunnethReport kunneth_check(const FaceComplex& a, const FaceComplex& b, unsigned threads) {
  const std::size_t da = static_cast<std::size_t>(std::max(a.dim(), 0));
  const std::size_t db = static_cast<std::size_t>(std::max(b.dim(), 0));
  HomologyTable ta = bm_table(a, da, threads);
  HomologyTable tb = bm_table(b, db, threads);
  FaceComplex prod = product_complex(a, b);
  HomologyTable tp = bm_table(prod, da + db, threads);
  KunnethReport r;
  for (std::size_t p = 0; p <= da + db; ++p)
    for (std::size_t q = 0; q <= da + db; ++q) {
      AbelianGroupShape expected;
      for (std::size_t i = 0; i <= da; ++i)
        for (std::size_t k = 0; k <= da; ++k) {
          if (i > p || p - i > db) continue;
          const auto& ha = ta.at({i, k}).shape;
          if (k <= q && q - k <= db) expected = direct_sum(expected, tensor_group(ha, tb.at({p - i, q - k}).shape));
          if (q >= 1 && k <= q - 1 && q - 1 - k <= db)
            expected = direct_sum(expected, tor_group(ha, tb.at({p - i, q - 1 - k}).shape));
        }
      KunnethEntry e;
      e.p = p;
      e.q = q;
      e.product = tp.at({p, q}).shape;
      e.expected = expected;
      e.match = e.product == e.expected;
      r.entries.push_back(e);
    }
  return r;
}

}  // namespace trophom
