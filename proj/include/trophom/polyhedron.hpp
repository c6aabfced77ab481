#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trophom/zlattice.hpp"

namespace trophom {

// normal . x + constant >= 0 (inequality) or == 0 (equation).
struct AffineConstraint {
  IntVector normal;
  Rational constant;

  Rational evaluate(const QVector& x) const { return dot(normal, x) + constant; }
};

// Exact rational polyhedron in Q^d with both representations kept in sync.
// The V-representation is canonical: lineality space as an HNF basis, and the
// vertices and extreme rays of the pointed part P ∩ L^perp, sorted.
class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron empty_set(std::size_t dim);
  static Polyhedron from_generators(std::size_t dim, const std::vector<QVector>& points,
                                    const std::vector<IntVector>& rays);
  static Polyhedron from_constraints(std::size_t dim, const std::vector<AffineConstraint>& equations,
                                     const std::vector<AffineConstraint>& inequalities);

  std::size_t ambient_dim() const { return ambient_dim_; }
  bool is_empty() const { return empty_; }
  // -1 for the empty set.
  int dim() const { return dim_; }

  const std::vector<QVector>& vertices() const { return vertices_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<IntVector>& lineality() const { return lineality_; }
  // rays plus both signs of every lineality vector
  std::vector<IntVector> recession_generators() const;
  const std::vector<AffineConstraint>& equations() const { return equations_; }
  const std::vector<AffineConstraint>& facets() const { return facets_; }

  bool is_bounded() const { return rays_.empty() && lineality_.empty(); }
  // Saturated lattice of directions of the affine hull.
  Sublattice tangent() const;

  bool contains(const QVector& x) const;
  bool contains(const Polyhedron& q) const;
  bool in_relative_interior(const QVector& x) const;
  QVector relative_interior_point() const;

  Polyhedron intersect(const Polyhedron& other) const;
  Polyhedron with_equation(const AffineConstraint& c) const;
  Polyhedron with_inequality(const AffineConstraint& c) const;
  // Face cut out by the facets of this polyhedron that are tight on q.
  Polyhedron smallest_face_containing(const Polyhedron& q) const;
  bool is_face(const Polyhedron& q) const;
  // Faces of codimension one (one per facet inequality).
  std::vector<Polyhedron> facet_faces() const;

  std::string key() const;

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.empty_ == b.empty_ && a.vertices_ == b.vertices_ &&
           a.rays_ == b.rays_ && a.lineality_ == b.lineality_;
  }
  friend bool operator!=(const Polyhedron& a, const Polyhedron& b) { return !(a == b); }

 private:
  void compute_constraints();

  std::size_t ambient_dim_ = 0;
  bool empty_ = true;
  int dim_ = -1;
  std::vector<QVector> vertices_;
  std::vector<IntVector> rays_;
  std::vector<IntVector> lineality_;
  std::vector<AffineConstraint> equations_;
  std::vector<AffineConstraint> facets_;
};

// Rational linear algebra helpers.
std::size_t rank_q(const std::vector<QVector>& rows);
// Some solution of a x = b, if consistent.
std::optional<QVector> solve_q(const std::vector<QVector>& a, const QVector& b);
QVector to_q(const IntVector& v);
// Scale a rational vector to a primitive integer vector with the same direction.
IntVector clear_denominators(const QVector& v);

}  // namespace trophom
