#include <gtest/gtest.h>

#include "test_support.hpp"
#include "trophom/polyhedral.hpp"

using namespace trophom;
using namespace fixtures;

namespace {

bool has_violation_at(const ValidationReport& r, const std::string& cell) {
  for (const auto& v : r.violations)
    if (v.cell == cell || v.other == cell) return true;
  return false;
}

bool has_kind(const ValidationReport& r, const std::string& kind) {
  for (const auto& v : r.violations)
    if (v.kind == kind) return true;
  return false;
}

}  // namespace

TEST(FaceComplexes, FixturesValidate) {
  for (const FaceComplex& c : {standard_line(), real_line(), y_shape(), bot_r(), plane(), half_planes()}) {
    ValidationReport r = validate_complex(c);
    EXPECT_TRUE(r.valid()) << (r.valid() ? "" : r.violations[0].kind + " " + r.violations[0].message);
  }
}

TEST(FaceComplexes, GalleryValidates) {
  for (const char* name : {"line.json", "real_line.json", "bot_r.json", "plane.json", "max_plane.json",
                           "half_planes.json", "y_shape.json"}) {
    FaceComplex c = complex_from_json(read_json_file(gallery(name)));
    EXPECT_TRUE(validate_complex(c).valid()) << name;
  }
}

TEST(FaceComplexes, Dimensions) {
  FaceComplex l = standard_line();
  EXPECT_EQ(l.dim(), 1);
  EXPECT_EQ(l.cells_of_dim(1).size(), 3u);
  EXPECT_TRUE(l.is_pure());
  EXPECT_EQ(l.maximal_cofaces(l.index("o")).size(), 3u);
  EXPECT_EQ(half_planes().cell(0).dim, 1u);
  EXPECT_EQ(plane().cells_of_dim(2).size(), 4u);
}

TEST(FaceComplexes, FlippedIncidenceSignIsReportedAtOrigin) {
  FaceComplex l = standard_line();
  std::size_t r = l.index("r0"), o = l.index("o");
  FaceComplex bad = l.with_incidence_sign(r, o, -l.incidence(r, o));
  ValidationReport rep = validate_complex(bad);
  ASSERT_FALSE(rep.valid());
  EXPECT_TRUE(has_violation_at(rep, "o"));
}

TEST(FaceComplexes, FlippedSignInPlaneBreaksBoundarySquared) {
  FaceComplex p = plane();
  std::size_t q = p.index("px_py"), r = p.index("px");
  ValidationReport rep = validate_complex(p.with_incidence_sign(q, r, -p.incidence(q, r)));
  ASSERT_FALSE(rep.valid());
}

TEST(FaceComplexes, MissingFaceIsReported) {
  std::vector<CellSpec> specs;
  specs.push_back({"o", {}, {origin(2)}, {}, {}, 1});
  specs.push_back({"r", {}, {origin(2)}, {iv({1, 0})}, {{"o", false}}, 1});
  specs.push_back({"q", {}, {origin(2)}, {iv({1, 0}), iv({0, 1})}, {{"o", false}, {"r", false}}, 1});
  ValidationReport rep = validate_complex(FaceComplex::build(2, specs));
  ASSERT_FALSE(rep.valid());
  EXPECT_TRUE(has_kind(rep, "missing_face"));
}

TEST(FaceComplexes, NonFaceIsReported) {
  std::vector<CellSpec> specs;
  specs.push_back({"a", {}, {QVector{Rational(1), Rational(1)}}, {}, {}, 1});
  specs.push_back({"r", {}, {origin(2)}, {iv({1, 0})}, {{"a", false}}, 1});
  ValidationReport rep = validate_complex(FaceComplex::build(2, specs));
  EXPECT_FALSE(rep.valid());
}

TEST(FaceComplexes, OverlappingCellsAreReported) {
  std::vector<CellSpec> specs;
  specs.push_back({"o", {}, {origin(1)}, {}, {}, 1});
  specs.push_back({"a", {}, {origin(1)}, {iv({1})}, {{"o", false}}, 1});
  specs.push_back({"b", {}, {origin(1)}, {iv({1})}, {{"o", false}}, 1});
  EXPECT_FALSE(validate_complex(FaceComplex::build(1, specs)).valid());
}

TEST(FaceComplexes, MalformedInputThrows) {
  std::vector<CellSpec> specs;
  specs.push_back({"o", {}, {origin(3)}, {}, {}, 1});
  EXPECT_THROW(FaceComplex::build(2, specs), std::invalid_argument);
  specs = {{"o", {}, {origin(2)}, {}, {{"nope", false}}, 1}};
  EXPECT_THROW(FaceComplex::build(2, specs), std::invalid_argument);
  specs = {{"o", {}, {origin(2)}, {}, {}, 2}};
  EXPECT_THROW(FaceComplex::build(2, specs), std::invalid_argument);
}

// The incidence sign of a ray over the origin is the sign of its inward
// normal relative to the ray's orientation vector.
TEST(FaceComplexes, RayIncidenceSignsMatchOrientation) {
  for (const FaceComplex& c : {standard_line(), y_shape(), real_line()}) {
    std::size_t o = c.index("o");
    for (std::size_t s : c.cells_of_dim(1)) {
      const Cell& r = c.cell(s);
      IntVector eta = r.tangent.basis().row(0);
      for (auto& x : eta) x *= r.orientation_sign;
      Integer d = dot(r.rays[0], eta);
      EXPECT_EQ(c.incidence(s, o), d > 0 ? 1 : -1) << r.id;
    }
  }
}

TEST(FaceComplexes, OrientationFlipFlipsIncidences) {
  FaceComplex p = plane();
  std::size_t q = p.index("py_nx");
  FaceComplex f = p.with_orientation(q, -1);
  EXPECT_TRUE(validate_complex(f).valid());
  for (std::size_t t : p.facets_of(q)) EXPECT_EQ(f.incidence(q, t), -p.incidence(q, t));
}

TEST(FaceComplexes, LatticeNormals) {
  FaceComplex p = plane();
  std::size_t q = p.index("px_py"), r = p.index("px");
  IntVector n = lattice_normal_vector(p, q, r);
  EXPECT_GT(n[1], 0);
  IntMatrix m = IntMatrix::from_rows({p.cell(r).tangent.basis().row(0), n});
  EXPECT_EQ(abs(q_det(m)), 1);
  // Non-primitive ray direction still gives a primitive normal.
  FaceComplex l = ray_fan(2, {iv({2, 4}), iv({-1, -2})});
  EXPECT_EQ(lattice_normal_vector(l, l.index("r0"), l.index("o")), iv({1, 2}));
  EXPECT_THROW(lattice_normal_vector(bot_r(), bot_r().index("pos"), bot_r().index("inf")), std::invalid_argument);
}

TEST(FaceComplexes, Sedentarity) {
  FaceComplex b = bot_r();
  std::size_t pos = b.index("pos"), inf = b.index("inf");
  EXPECT_TRUE(b.is_at_infinity(inf, pos));
  EXPECT_FALSE(b.is_at_infinity(b.index("0"), pos));
  EXPECT_EQ(b.cell(inf).stratum_dim(), 0u);
  EXPECT_EQ(b.facets_of(pos).size(), 2u);
}

TEST(FaceComplexes, SedentarityMismatchIsReported) {
  std::vector<CellSpec> specs;
  specs.push_back({"0", {}, {origin(1)}, {}, {}, 1});
  specs.push_back({"inf", {0}, {QVector{}}, {}, {}, 1});
  specs.push_back({"neg", {}, {origin(1)}, {iv({-1})}, {{"0", false}, {"inf", true}}, 1});
  EXPECT_FALSE(validate_complex(FaceComplex::build(1, specs)).valid());
}

TEST(Products, LineTimesLine) {
  FaceComplex p = product_complex(standard_line(), standard_line());
  EXPECT_EQ(p.size(), 16u);
  EXPECT_EQ(p.ambient_dim(), 4u);
  EXPECT_EQ(p.cells_of_dim(2).size(), 9u);
  EXPECT_TRUE(validate_complex(p).valid());
  EXPECT_TRUE(p.find(product_id("r0", "r1")).has_value());
}

TEST(Products, WithSedentarity) {
  FaceComplex p = product_complex(bot_r(), real_line());
  EXPECT_TRUE(validate_complex(p).valid());
  const Cell& c = p.cell(p.index(product_id("inf", "r0")));
  EXPECT_EQ(c.sedentarity, (std::vector<std::size_t>{0}));
  EXPECT_EQ(c.dim, 1u);
}

TEST(Refinements, HyperplaneCutKeepsSupport) {
  FaceComplex p = plane();
  Refinement r = refine_by_hyperplane(p, iv({1, -1}), 0);
  EXPECT_TRUE(validate_complex(r.complex).valid());
  EXPECT_TRUE(same_support(p, r.complex));
  EXPECT_EQ(r.complex.cells_of_dim(2).size(), 6u);
  EXPECT_EQ(r.parent_a.size(), r.complex.size());
  for (std::size_t i = 0; i < r.complex.size(); ++i) {
    const Cell& piece = r.complex.cell(i);
    EXPECT_TRUE(p.cell(r.parent_a[i]).geometry.in_relative_interior(piece.interior_point));
  }
}

TEST(Refinements, AffineCutOfLine) {
  FaceComplex l = standard_line();
  Refinement r = refine_by_hyperplane(l, iv({1, 0}), 3);
  EXPECT_TRUE(validate_complex(r.complex).valid());
  EXPECT_EQ(r.complex.cells_of_dim(0).size(), 2u);
  auto v = locate_point(r.complex, {Rational(3), Rational(0)});
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(r.complex.cell(*v).dim, 0u);
}

TEST(Refinements, CutOfSedentaryComplex) {
  Refinement r = refine_by_hyperplane(bot_r(), iv({1}), 2);
  EXPECT_TRUE(validate_complex(r.complex).valid());
  EXPECT_EQ(r.complex.size(), 6u);
}

TEST(Refinements, CommonRefinement) {
  FaceComplex p = plane();
  FaceComplex m = complex_from_json(read_json_file(gallery("max_plane.json")));
  Refinement r = common_refinement(p, m);
  EXPECT_TRUE(validate_complex(r.complex).valid());
  EXPECT_EQ(r.complex.cells_of_dim(2).size(), 5u);
  EXPECT_THROW(common_refinement(p, standard_line()), std::invalid_argument);
}

TEST(Refinements, LocalFan) {
  FaceComplex l = standard_line();
  EXPECT_TRUE(same_support(local_fan(l, origin(2)), l));
  FaceComplex at_ray = local_fan(l, {Rational(5), Rational(0)});
  EXPECT_TRUE(same_support(at_ray, ray_fan(2, {iv({1, 0}), iv({-1, 0})})));
  EXPECT_THROW(local_fan(l, {Rational(1), Rational(1)}), std::invalid_argument);
}

TEST(Refinements, FromPieces) {
  std::vector<Piece> pieces;
  FaceComplex l = standard_line();
  for (const Cell& c : l.cells()) pieces.push_back({c.id, c.geometry, c.orientation_sign});
  FaceComplex c = complex_from_pieces(2, pieces);
  EXPECT_TRUE(validate_complex(c).valid());
  EXPECT_TRUE(same_support(c, standard_line()));
}

TEST(Maps, ImageOfRay) {
  AffineMap f{IntMatrix::from_rows({iv({1, -1})}), {Rational(0)}};
  Polyhedron ray = Polyhedron::from_generators(2, {origin(2)}, {iv({1, 0})});
  Polyhedron im = image(f, ray);
  EXPECT_EQ(im.dim(), 1);
  EXPECT_TRUE(im.contains(QVector{Rational(7)}));
  EXPECT_FALSE(im.contains(QVector{Rational(-1)}));
  AffineMap g = AffineMap::identity(1).compose(f);
  EXPECT_EQ(g.linear, f.linear);
}
