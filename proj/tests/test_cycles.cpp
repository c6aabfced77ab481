#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "trophom/cycles.hpp"
#include "trophom/matroids.hpp"

using namespace trophom;
using namespace fixtures;

TEST(Balancing, StandardLine) {
  FaceComplex l = standard_line();
  EXPECT_TRUE(is_balanced(weighted(l, 1, {{"r0", 1}, {"r1", 1}, {"r2", 1}})).balanced());
  BalancingReport bad = is_balanced(weighted(l, 1, {{"r0", 1}, {"r1", 1}, {"r2", 2}}));
  ASSERT_EQ(bad.failures.size(), 1u);
  EXPECT_EQ(bad.failures[0].cell, "o");
  EXPECT_EQ(bad.failures[0].sum, iv({-1, -1}));
}

TEST(Balancing, YShape) {
  BalancingReport r = is_balanced(fundamental_cycle(y_shape()));
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].sum, iv({0, 1}));
}

TEST(Balancing, NonPrimitiveRaysUseLatticeNormals) {
  // Rays through (2,0) and (-1,0) are balanced with equal weights.
  FaceComplex c = ray_fan(2, {iv({2, 0}), iv({-1, 0})});
  EXPECT_TRUE(is_balanced(fundamental_cycle(c)).balanced());
}

TEST(Balancing, FacesAtInfinityImposeNothing) {
  EXPECT_TRUE(is_balanced(fundamental_cycle(bot_r())).balanced());
}

TEST(Balancing, PlaneAndHalfPlanes) {
  EXPECT_TRUE(is_balanced(fundamental_cycle(plane())).balanced());
  EXPECT_TRUE(is_balanced(fundamental_cycle(half_planes())).balanced());
  FaceComplex p = plane();
  TropicalCycle a = weighted(p, 2, {{"px_py", 1}, {"py_nx", 2}, {"nx_ny", 1}, {"ny_px", 1}});
  EXPECT_FALSE(is_balanced(a).balanced());
}

TEST(Balancing, BergmanFans) {
  std::vector<Matroid> ms{Matroid::uniform(2, 3), Matroid::uniform(2, 4), Matroid::uniform(3, 4),
                          Matroid::graphic(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})};
  for (const Matroid& m : ms) EXPECT_TRUE(is_balanced(fundamental_cycle(bergman_fan(m).fan)).balanced());
}

// Random one-dimensional fans: balanced exactly when the weighted primitive
// directions sum to zero, which is checked here by direct summation.
TEST(Balancing, RandomRayFansAgainstVectorSum) {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> count(2, 5), wt(1, 3), coin(0, 1);
  int balanced = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 2 + trial % 2;
    std::vector<IntVector> rays;
    std::vector<long> w;
    int r = count(rng);
    for (int i = 0; i < r; ++i) {
      IntVector v = random_primitive(rng, n);
      bool dup = false;
      for (auto& x : rays) dup = dup || x == v;
      if (dup) continue;
      rays.push_back(v);
      w.push_back(wt(rng));
    }
    if (coin(rng)) {
      IntVector s(n, 0);
      for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t k = 0; k < n; ++k) s[k] -= w[i] * rays[i][k];
      Integer g = gcd_all(s);
      bool dup = false;
      if (g != 0) {
        IntVector v = s;
        for (auto& x : v) x /= g;
        for (auto& x : rays) dup = dup || x == v;
        if (!dup) {
          rays.push_back(v);
          w.push_back(g.get_si());
        }
      }
    }
    FaceComplex c = ray_fan(n, rays);
    std::map<std::string, long> wm;
    IntVector sum(n, 0);
    for (std::size_t i = 0; i < rays.size(); ++i) {
      wm["r" + std::to_string(i)] = w[i];
      for (std::size_t k = 0; k < n; ++k) sum[k] += w[i] * rays[i][k];
    }
    bool expect = is_zero(sum);
    balanced += expect;
    ASSERT_EQ(is_balanced(weighted(c, 1, wm)).balanced(), expect);
  }
  EXPECT_GT(balanced, 20);
}

TEST(Arithmetic, AddAndScale) {
  FaceComplex l = standard_line();
  TropicalCycle a = fundamental_cycle(l);
  EXPECT_TRUE(is_zero_cycle(add_cycles(a, scale_cycle(a, -1))));
  TropicalCycle twice = add_cycles(a, a);
  EXPECT_TRUE(cycles_equal(twice, scale_cycle(a, 2)));
  EXPECT_FALSE(cycles_equal(twice, a));
}

TEST(Arithmetic, AddAcrossSubdivisions) {
  FaceComplex r = real_line();
  Refinement cut = refine_by_hyperplane(r, iv({1}), 1);
  TropicalCycle a = fundamental_cycle(r), b = fundamental_cycle(cut.complex);
  EXPECT_TRUE(cycles_equal(a, b));
  TropicalCycle sum = add_cycles(a, b);
  EXPECT_TRUE(is_balanced(sum).balanced());
  for (auto& [s, w] : sum.weights) EXPECT_EQ(w, 2);
}

TEST(Arithmetic, AddDifferentSupports) {
  // The standard line and its negative share only the origin.
  FaceComplex l = standard_line();
  FaceComplex m = ray_fan(2, {iv({-1, 0}), iv({0, -1}), iv({1, 1})});
  TropicalCycle s = add_cycles(fundamental_cycle(l), fundamental_cycle(m));
  EXPECT_EQ(s.complex.cells_of_dim(1).size(), 6u);
  EXPECT_TRUE(is_balanced(s).balanced());
}

TEST(Arithmetic, SupportComplexDropsZeroWeights) {
  FaceComplex l = standard_line();
  TropicalCycle a = weighted(l, 1, {{"r0", 1}, {"r1", 0}, {"r2", 1}});
  FaceComplex s = support_complex(a);
  EXPECT_EQ(s.cells_of_dim(1).size(), 2u);
}

TEST(PushForward, DifferenceMapOnLine) {
  AffineMap f{IntMatrix::from_rows({iv({1, -1})}), {Rational(0)}};
  TropicalCycle b = push_forward(f, fundamental_cycle(standard_line()), real_line());
  EXPECT_TRUE(is_balanced(b).balanced());
  EXPECT_TRUE(cycles_equal(b, fundamental_cycle(real_line())));
  for (std::size_t s : b.complex.cells_of_dim(1)) EXPECT_EQ(b.weight(s), 1);
}

TEST(PushForward, DoublingHasLatticeIndexTwo) {
  AffineMap f{IntMatrix::from_rows({iv({2})}), {Rational(0)}};
  TropicalCycle b = push_forward(f, fundamental_cycle(real_line()), real_line());
  EXPECT_TRUE(is_balanced(b).balanced());
  EXPECT_TRUE(cycles_equal(b, scale_cycle(fundamental_cycle(real_line()), 2)));
}

TEST(PushForward, StrictPropernessRejectsCollapsedRay) {
  AffineMap f{IntMatrix::from_rows({iv({1, -1})}), {Rational(0)}};
  EXPECT_THROW(push_forward(f, fundamental_cycle(standard_line()), real_line(), true), std::invalid_argument);
  AffineMap g{IntMatrix::from_rows({iv({2})}), {Rational(0)}};
  EXPECT_NO_THROW(push_forward(g, fundamental_cycle(real_line()), real_line(), true));
}

TEST(PushForward, TranslationAndSubdividedTarget) {
  AffineMap f{IntMatrix::from_rows({iv({1})}), {Rational(3)}};
  TropicalCycle b = push_forward(f, fundamental_cycle(real_line()), real_line());
  EXPECT_TRUE(cycles_equal(b, fundamental_cycle(real_line())));
  EXPECT_TRUE(is_balanced(b).balanced());
}

TEST(PushForward, ImageOutsideTargetThrows) {
  AffineMap f{IntMatrix::from_rows({iv({1, 0}), iv({0, 1})}), {Rational(0), Rational(0)}};
  EXPECT_THROW(push_forward(f, fundamental_cycle(plane()), standard_line()), std::invalid_argument);
}

// Generic-fiber oracle: a linear functional pushes a balanced ray fan to a
// multiple of [R]; the weight on each side is the sum of w * |<l, ray>| over
// the rays mapped to that side.
TEST(PushForward, RandomFunctionalsAgainstFiberCount) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> e(-3, 3);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<IntVector> rays{random_primitive(rng, 2), random_primitive(rng, 2)};
    if (rays[0] == rays[1]) continue;
    IntVector s(2);
    for (int k = 0; k < 2; ++k) s[k] = -(rays[0][k] + rays[1][k]);
    if (is_zero(s)) continue;
    Integer g = gcd_all(s);
    for (auto& x : s) x /= g;
    if (s == rays[0] || s == rays[1]) continue;
    rays.push_back(s);
    FaceComplex c = ray_fan(2, rays);
    TropicalCycle a = weighted(c, 1, {{"r0", 1}, {"r1", 1}, {"r2", g.get_si()}});
    ASSERT_TRUE(is_balanced(a).balanced());
    IntVector l{e(rng), e(rng)};
    if (is_zero(l)) continue;
    Integer pos = 0, neg = 0;
    std::vector<long> w{1, 1, g.get_si()};
    for (std::size_t i = 0; i < 3; ++i) {
      Integer v = dot(l, rays[i]);
      if (v > 0) pos += w[i] * v;
      if (v < 0) neg -= w[i] * v;
    }
    ASSERT_EQ(pos, neg);
    AffineMap f{IntMatrix::from_rows({l}), {Rational(0)}};
    TropicalCycle b = push_forward(f, a, real_line());
    ASSERT_TRUE(is_balanced(b).balanced());
    if (pos == 0) {
      ASSERT_TRUE(is_zero_cycle(b));
    } else {
      ASSERT_TRUE(cycles_equal(b, scale_cycle(fundamental_cycle(real_line()), pos)));
    }
  }
}

TEST(Products, CrossProductOfLines) {
  TropicalCycle a = fundamental_cycle(standard_line());
  TropicalCycle p = cross_product(a, a);
  EXPECT_EQ(p.k, 2u);
  std::size_t nonzero = 0;
  for (auto& [s, w] : p.weights)
    if (w != 0) ++nonzero;
  EXPECT_EQ(nonzero, 9u);
  EXPECT_TRUE(is_balanced(p).balanced());
  TropicalCycle q = cross_product(a, weighted(real_line(), 1, {{"r0", 2}, {"r1", 2}}));
  EXPECT_TRUE(is_balanced(q).balanced());
  for (auto& [s, w] : q.weights) EXPECT_EQ(w, 2);
}

TEST(Hyperplanes, OfPolyhedraAndComplexes) {
  Polyhedron q = Polyhedron::from_generators(2, {origin(2)}, {iv({1, 0}), iv({1, 1})});
  std::vector<Hyperplane> hs = hyperplanes_of(q);
  EXPECT_EQ(hs.size(), 2u);
  std::vector<Hyperplane> all = hyperplanes_of(plane());
  EXPECT_EQ(all.size(), 2u);
  // Normalization makes opposite normals the same hyperplane.
  Hyperplane a = make_hyperplane(iv({2, -2}), 4), b = make_hyperplane(iv({-1, 1}), -2);
  EXPECT_FALSE(a < b);
  EXPECT_FALSE(b < a);
}

TEST(Hyperplanes, RefinementByManyKeepsSupport) {
  FaceComplex l = standard_line();
  Refinement r = refine_by_hyperplanes(l, {make_hyperplane(iv({1, 0}), 1), make_hyperplane(iv({0, 1}), 2),
                                           make_hyperplane(iv({1, 1}), -3)});
  EXPECT_TRUE(validate_complex(r.complex).valid());
  EXPECT_TRUE(same_support(l, r.complex));
  EXPECT_EQ(r.complex.cells_of_dim(1).size(), 6u);
}

TEST(Hyperplanes, PolyhedronComplex) {
  Polyhedron q = Polyhedron::from_generators(2, {origin(2), QVector{Rational(1), Rational(0)}}, {iv({0, 1})});
  FaceComplex c = polyhedron_complex(q, "q");
  EXPECT_TRUE(validate_complex(c).valid());
  EXPECT_EQ(c.size(), 6u);
}
