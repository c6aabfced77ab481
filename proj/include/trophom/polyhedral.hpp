#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trophom/polyhedron.hpp"
#include "trophom/zlattice.hpp"

namespace trophom {

struct FaceRef {
  std::string id;
  bool at_infinity = false;
};

// Input description of a cell. Coordinates live in the stratum R_I, i.e. the
// sedentary coordinates I are deleted from every vector.
struct CellSpec {
  std::string id;
  std::vector<std::size_t> sedentarity;
  std::vector<QVector> vertices;
  std::vector<IntVector> rays;
  std::vector<FaceRef> faces;
  int orientation_sign = 1;
};

struct Cell {
  std::string id;
  std::vector<std::size_t> sedentarity;
  std::vector<QVector> vertices;
  std::vector<IntVector> rays;
  std::size_t dim = 0;
  Sublattice tangent;
  int orientation_sign = 1;
  Polyhedron geometry;
  QVector interior_point;

  std::size_t stratum_dim() const { return tangent.ambient_rank(); }
};

class FaceComplex {
 public:
  FaceComplex() = default;

  // Throws std::invalid_argument on malformed input (unknown ids, wrong vector
  // lengths, bad signs). Geometric consistency is checked by validate_complex.
  static FaceComplex build(std::size_t ambient_dim, const std::vector<CellSpec>& specs);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return cells_.size(); }
  const Cell& cell(std::size_t i) const { return cells_.at(i); }
  const std::vector<Cell>& cells() const { return cells_; }
  std::optional<std::size_t> find(const std::string& id) const;
  std::size_t index(const std::string& id) const;
  int dim() const;

  // All proper faces / cofaces (transitive), sorted by index.
  const std::vector<std::size_t>& faces_of(std::size_t s) const { return faces_.at(s); }
  const std::vector<std::size_t>& cofaces_of(std::size_t t) const { return cofaces_.at(t); }
  // Codimension-one faces (finite and at infinity).
  const std::vector<std::size_t>& facets_of(std::size_t s) const { return facets_.at(s); }
  const std::vector<std::size_t>& cofacets_of(std::size_t t) const { return cofacets_.at(t); }
  bool is_face(std::size_t t, std::size_t s) const;
  bool is_at_infinity(std::size_t t, std::size_t s) const;
  // Inclusion-maximal cells containing t (t itself if maximal).
  std::vector<std::size_t> maximal_cofaces(std::size_t t) const;
  std::vector<std::size_t> cells_of_dim(std::size_t d) const;
  bool is_pure() const;

  // Incidence sign of the codimension-one pair; 0 when it cannot be derived
  // from the geometry (reported by validate_complex).
  int incidence(std::size_t s, std::size_t t) const;
  // The sign derived from orientations and geometry, ignoring overrides.
  int derived_incidence(std::size_t s, std::size_t t) const;

  std::vector<CellSpec> to_specs() const;
  const std::vector<std::pair<std::string, std::string>>& listed_faces() const { return listed_; }

  FaceComplex with_orientation(std::size_t s, int sign) const;
  FaceComplex with_incidence_sign(std::size_t s, std::size_t t, int sign) const;
  const std::map<std::pair<std::size_t, std::size_t>, int>& sign_overrides() const { return overrides_; }
  FaceComplex relabeled(const std::map<std::string, std::string>& new_ids) const;
  // Same complex with cells stored in a different order.
  FaceComplex permuted(const std::vector<std::size_t>& order) const;

 private:
  void derive();

  std::size_t ambient_dim_ = 0;
  std::vector<Cell> cells_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::pair<std::string, std::string>> listed_;  // (face id, cell id)
  std::vector<std::vector<std::size_t>> faces_, cofaces_, facets_, cofacets_;
  std::map<std::pair<std::size_t, std::size_t>, int> incidence_;
  std::map<std::pair<std::size_t, std::size_t>, int> overrides_;
};

struct Violation {
  std::string kind;
  std::string cell;
  std::string other;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

ValidationReport validate_complex(const FaceComplex& c);

// Primitive integer vector n in T(sigma) pointing into sigma with
// T(tau) + Z n = T(sigma). Throws for faces at infinity and non-incident pairs.
IntVector lattice_normal_vector(const FaceComplex& c, std::size_t sigma, std::size_t tau);

struct AffineMap {
  IntMatrix linear;
  QVector translate;

  std::size_t source_dim() const { return linear.cols(); }
  std::size_t target_dim() const { return linear.rows(); }
  QVector apply(const QVector& x) const;
  IntVector apply_linear(const IntVector& v) const;
  static AffineMap identity(std::size_t n);
  AffineMap compose(const AffineMap& inner) const;  // this ∘ inner
};

// Image of a sedentarity-free polyhedron.
Polyhedron image(const AffineMap& f, const Polyhedron& p);

FaceComplex product_complex(const FaceComplex& a, const FaceComplex& b);
std::string product_id(const std::string& a, const std::string& b);

struct Refinement {
  FaceComplex complex;
  // Smallest cell of each input whose relative interior contains the piece.
  std::vector<std::size_t> parent_a;
  std::vector<std::size_t> parent_b;
};

Refinement common_refinement(const FaceComplex& a, const FaceComplex& b);
// Cut every cell by normal . x = offset (normal in global coordinates).
Refinement refine_by_hyperplane(const FaceComplex& c, const IntVector& normal, const Rational& offset);
FaceComplex local_fan(const FaceComplex& c, const QVector& x);

// Smallest cell whose relative interior contains x (sedentarity-free cells).
std::optional<std::size_t> locate_point(const FaceComplex& c, const QVector& x);
// True if the union of the cells of b equals the union of the cells of a.
bool same_support(const FaceComplex& a, const FaceComplex& b);

// Build a complex from sedentarity-free polyhedra: face relations are
// recomputed geometrically and every face of every piece must be present.
struct Piece {
  std::string id;
  Polyhedron geometry;
  int orientation_sign = 1;
};
FaceComplex complex_from_pieces(std::size_t ambient_dim, std::vector<Piece> pieces);

// Coordinates kept in the stratum of sedentarity I.
std::vector<std::size_t> stratum_coordinates(std::size_t n, const std::vector<std::size_t>& sedentarity);

}  // namespace trophom
