#pragma once

#include <map>
#include <string>
#include <vector>

#include "trophom/polyhedral.hpp"

namespace trophom {

struct TropicalCycle {
  FaceComplex complex;
  std::size_t k = 0;
  std::map<std::size_t, Integer> weights;  // k-cell index -> weight

  Integer weight(std::size_t s) const {
    auto it = weights.find(s);
    return it == weights.end() ? Integer(0) : it->second;
  }
};

// Weights given by cell id; every id must name a k-cell.
TropicalCycle make_cycle(const FaceComplex& c, std::size_t k, const std::map<std::string, Integer>& weights);

struct BalancingFailure {
  std::string cell;
  IntVector sum;  // stratum coordinates
};

struct BalancingReport {
  std::vector<BalancingFailure> failures;
  bool balanced() const { return failures.empty(); }
};

BalancingReport is_balanced(const TropicalCycle& a);

// Weight 1 on every top cell of a pure complex.
TropicalCycle fundamental_cycle(const FaceComplex& c);
TropicalCycle scale_cycle(const TropicalCycle& a, const Integer& m);
// Complex consisting of the nonzero-weight k-cells and their faces.
FaceComplex support_complex(const TropicalCycle& a);
TropicalCycle add_cycles(const TropicalCycle& a, const TropicalCycle& b);
bool cycles_equal(const TropicalCycle& a, const TropicalCycle& b);
bool is_zero_cycle(const TropicalCycle& a);

// Push-forward onto a refinement of `target`. Cells whose image drops
// dimension contribute nothing. With require_proper, every unbounded
// nonzero-weight cell must meet the kernel of f only in 0.
TropicalCycle push_forward(const AffineMap& f, const TropicalCycle& a, const FaceComplex& target,
                           bool require_proper = false);
TropicalCycle cross_product(const TropicalCycle& a, const TropicalCycle& b);

// Hyperplane written as normal . x = offset.
struct Hyperplane {
  IntVector normal;
  Rational offset;
  friend bool operator<(const Hyperplane& a, const Hyperplane& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
};

// Normalized to a primitive normal whose first nonzero entry is positive.
Hyperplane make_hyperplane(const IntVector& normal, const Rational& offset);
// Facet and equation hyperplanes of a sedentarity-free polyhedron.
std::vector<Hyperplane> hyperplanes_of(const Polyhedron& p);
std::vector<Hyperplane> hyperplanes_of(const FaceComplex& c);
// Sequential hyperplane cuts; parent_a maps each cell to its original cell.
Refinement refine_by_hyperplanes(const FaceComplex& c, const std::vector<Hyperplane>& hs);
// Complex of all faces of one sedentarity-free polyhedron.
FaceComplex polyhedron_complex(const Polyhedron& p, const std::string& prefix);

}  // namespace trophom
