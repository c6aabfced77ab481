#include <gtest/gtest.h>

#include "test_support.hpp"
#include "trophom/forms.hpp"
#include "trophom/matroids.hpp"

using namespace trophom;
using namespace fixtures;

namespace {

// Lattice generated by evaluating every coordinate p-covector e_J^* on the
// p-subsets of tangent basis vectors of each maximal coface: the entry for
// (coface block, R, J) is the minor of that coface's basis on rows R, cols J.
Sublattice minor_oracle(const FaceComplex& c, std::size_t s, std::size_t p) {
  const std::size_t n = c.ambient_dim();
  std::vector<IntVector> cols;
  std::vector<std::size_t> tops = c.maximal_cofaces(s);
  std::size_t total = 0;
  for (std::size_t t : tops) total += k_subsets(c.cell(t).dim, p).size();
  for (const auto& J : k_subsets(n, p)) {
    IntVector v;
    for (std::size_t t : tops) {
      const IntMatrix& b = c.cell(t).tangent.basis();
      for (const auto& R : k_subsets(b.rows(), p)) v.push_back(p == 0 ? Integer(1) : minor(b, R, J));
    }
    cols.push_back(v);
  }
  return Sublattice(total, cols);
}

std::size_t stalk_rank(const FaceComplex& c, std::size_t p, const std::string& id) {
  return omega_p(c, p).rank(c.index(id));
}

}  // namespace

TEST(FormStalks, StandardLine) {
  FaceComplex l = standard_line();
  EXPECT_EQ(stalk_rank(l, 1, "o"), 2u);
  for (const char* r : {"r0", "r1", "r2"}) EXPECT_EQ(stalk_rank(l, 1, r), 1u);
  for (const Cell& c : l.cells()) {
    EXPECT_EQ(stalk_rank(l, 2, c.id), 0u);
    EXPECT_EQ(stalk_rank(l, 0, c.id), 1u);
  }
}

TEST(FormStalks, HalfPlanes) {
  FaceComplex h = half_planes();
  EXPECT_EQ(stalk_rank(h, 2, "L"), 2u);
  EXPECT_EQ(stalk_rank(h, 1, "L"), 3u);
  EXPECT_EQ(stalk_rank(h, 2, "H1"), 1u);
  EXPECT_EQ(stalk_rank(h, 3, "L"), 0u);
}

TEST(FormStalks, SedentaryStratum) {
  FaceComplex b = bot_r();
  EXPECT_EQ(stalk_rank(b, 1, "inf"), 0u);
  EXPECT_EQ(stalk_rank(b, 0, "inf"), 1u);
  EXPECT_EQ(stalk_rank(b, 1, "pos"), 1u);
  EXPECT_EQ(stalk_rank(b, 1, "0"), 1u);
}

TEST(FormStalks, MinorEnumerationOracle) {
  std::vector<FaceComplex> cs{standard_line(), y_shape(), plane(), half_planes(),
                              bergman_fan(Matroid::uniform(2, 4)).fan, bergman_fan(Matroid::uniform(3, 4)).fan,
                              product_complex(standard_line(), real_line())};
  for (const FaceComplex& c : cs)
    for (std::size_t p = 0; p <= c.ambient_dim(); ++p) {
      CellularFormSheaf f = omega_p(c, p);
      for (std::size_t s = 0; s < c.size(); ++s) {
        Sublattice o = minor_oracle(c, s, p);
        EXPECT_EQ(f.stalk(s).lattice, o) << c.cell(s).id << " p=" << p;
        EXPECT_EQ(f.rank(s), o.rank());
      }
    }
}

// On the U(2,3) fan the origin stalk is the lattice of tuples of values of
// one integral covector on the three ray generators.
TEST(FormStalks, GeneratorEnumerationOnU23) {
  BergmanFan b = bergman_fan(Matroid::uniform(2, 3));
  const FaceComplex& c = b.fan;
  std::size_t o = c.index("origin");
  std::vector<std::size_t> tops = c.maximal_cofaces(o);
  std::vector<IntVector> gens;
  for (long x = -2; x <= 2; ++x)
    for (long y = -2; y <= 2; ++y) {
      IntVector v;
      for (std::size_t t : tops) v.push_back(dot(iv({x, y}), c.cell(t).tangent.basis().row(0)));
      gens.push_back(v);
    }
  CellularFormSheaf f = omega_p(c, 1);
  EXPECT_EQ(f.stalk(o).lattice, Sublattice(3, gens));
  // Stalks are torsion-free and restrictions are the coordinate projections.
  for (std::size_t k = 0; k < tops.size(); ++k) {
    IntMatrix r = f.restriction(o, tops[k]);
    ASSERT_EQ(r.rows(), 1u);
    for (std::size_t j = 0; j < f.rank(o); ++j) {
      IntVector img = f.express(tops[k], f.stalk(o).lift.col(j));
      EXPECT_EQ(img[0], r(0, j));
    }
  }
}

TEST(FormStalks, RestrictionsCompose) {
  FaceComplex p = plane();
  for (std::size_t deg = 0; deg <= 2; ++deg) {
    CellularFormSheaf f = omega_p(p, deg);
    for (std::size_t s = 0; s < p.size(); ++s)
      for (std::size_t t : p.faces_of(s))
        for (std::size_t u : p.faces_of(t)) EXPECT_EQ(f.restriction(t, s) * f.restriction(u, t), f.restriction(u, s));
  }
}

TEST(FormStalks, DualCosheafShapes) {
  FaceComplex l = standard_line();
  DualFormCosheaf d = dual_forms(l, 1);
  std::size_t o = l.index("o"), r = l.index("r1");
  EXPECT_EQ(d.corestriction(o, r).rows(), 2u);
  EXPECT_EQ(d.corestriction(o, r).cols(), 1u);
}

TEST(Covectors, WedgeSigns) {
  IntVector e1 = iv({1, 0}), e2 = iv({0, 1});
  EXPECT_EQ(wedge_forms(e1, 1, e2, 1, 2), iv({1}));
  EXPECT_EQ(wedge_forms(e2, 1, e1, 1, 2), iv({-1}));
  EXPECT_EQ(wedge_forms(e1, 1, e1, 1, 2), iv({0}));
  IntMatrix basis = IntMatrix::from_rows({iv({1, 0}), iv({0, 1})});
  EXPECT_EQ(pair_with_basis(iv({1}), basis), 1);
  IntMatrix swapped = IntMatrix::from_rows({iv({0, 1}), iv({1, 0})});
  EXPECT_EQ(pair_with_basis(iv({1}), swapped), -1);
}

TEST(Covectors, WedgeIsAssociativeAndGraded) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    IntVector a = random_matrix(rng, 1, 4, -3, 3).row(0), b = random_matrix(rng, 1, 4, -3, 3).row(0);
    IntVector c = random_matrix(rng, 1, 4, -3, 3).row(0);
    IntVector ab_c = wedge_forms(wedge_forms(a, 1, b, 1, 4), 2, c, 1, 4);
    IntVector a_bc = wedge_forms(a, 1, wedge_forms(b, 1, c, 1, 4), 2, 4);
    EXPECT_EQ(ab_c, a_bc);
    IntVector ba = wedge_forms(b, 1, a, 1, 4), ab = wedge_forms(a, 1, b, 1, 4);
    for (std::size_t i = 0; i < ab.size(); ++i) EXPECT_EQ(ab[i], -ba[i]);
  }
}

TEST(Covectors, PullbackIsTransposeInDegreeOne) {
  IntMatrix lin = IntMatrix::from_rows({iv({1, -1}), iv({2, 3})});
  EXPECT_EQ(pullback_covectors(lin, 1), lin.transpose());
  EXPECT_EQ(pullback_covectors(lin, 2), IntMatrix::from_rows({iv({5})}));
}

TEST(Pullbacks, ProjectionOfStandardLine) {
  FaceComplex l = standard_line();
  FaceComplex r = real_line();
  AffineMap f{IntMatrix::from_rows({iv({1, 0})}), {Rational(0)}};
  PullbackResult pb = pullback_forms(f, l, r, 1);
  EXPECT_TRUE(pb.violations.empty());
  // r0 = e1, r1 = e2, r2 = -e1-e2; real_line has r0 = +1, r1 = -1.
  EXPECT_EQ(pb.cell_map.at(l.index("r0")), r.index("r0"));
  EXPECT_EQ(pb.cell_map.at(l.index("r1")), r.index("o"));
  EXPECT_EQ(pb.cell_map.at(l.index("r2")), r.index("r1"));
  // dx pulls back to a generator on the rays with horizontal image and to zero on the vertical one.
  EXPECT_EQ(abs(pb.matrices.at(l.index("r0"))(0, 0)), 1);
  EXPECT_EQ(abs(pb.matrices.at(l.index("r2"))(0, 0)), 1);
  EXPECT_TRUE(pb.matrices.at(l.index("r1")).is_zero());
}

TEST(Products, StalkDecompositionIsUnimodular) {
  for (std::size_t p = 0; p <= 2; ++p) {
    ProductDecomposition d = product_sheaf_decomposition(standard_line(), standard_line(), p);
    CellularFormSheaf fp = omega_p(d.product, p);
    for (const auto& cell : d.cells) {
      EXPECT_TRUE(cell.unimodular) << d.product.cell(cell.cell).id << " p=" << p;
      std::size_t sum = 0;
      for (const auto& b : cell.blocks) sum += b.rank_a * b.rank_b;
      EXPECT_EQ(sum, fp.rank(cell.cell));
    }
  }
}
