#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "trophom/cycles.hpp"
#include "trophom/polyhedral.hpp"

namespace trophom {

// Subsets of the ground set as bit masks (at most 32 elements).
using ElementSet = std::uint32_t;

class Matroid {
 public:
  // Throws std::invalid_argument unless the bases satisfy the exchange axiom.
  static Matroid from_bases(std::vector<std::string> elements, const std::vector<std::vector<std::size_t>>& bases);
  static Matroid uniform(std::size_t r, std::size_t n);
  // Cycle matroid of a graph on vertices 0..v-1.
  static Matroid graphic(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::vector<ElementSet>& bases() const { return bases_; }
  ElementSet ground() const { return size() == 32 ? ~ElementSet(0) : ((ElementSet(1) << size()) - 1); }

  std::size_t rank() const;
  std::size_t rank(ElementSet s) const;
  ElementSet closure(ElementSet s) const;
  bool is_flat(ElementSet s) const { return closure(s) == s; }
  // All flats, sorted by rank then mask.
  std::vector<ElementSet> flats() const;
  ElementSet loops() const;
  ElementSet coloops() const;
  bool is_loopless() const { return loops() == 0; }

  Matroid deletion(std::size_t i) const;
  Matroid contraction(std::size_t i) const;

  std::string label(ElementSet s) const;
  friend bool operator==(const Matroid& a, const Matroid& b) {
    return a.elements_ == b.elements_ && a.bases_ == b.bases_;
  }

 private:
  std::vector<std::string> elements_;
  std::vector<ElementSet> bases_;  // sorted
};

std::vector<std::size_t> set_elements(ElementSet s);

struct BergmanFan {
  Matroid matroid;
  FaceComplex fan;
  std::vector<std::vector<ElementSet>> chains;  // flag of flats of each cell
};

// Coordinates: R^E / R(1,..,1), realized by deleting the last coordinate.
BergmanFan bergman_fan(const Matroid& m);
// Image of e_F in the quotient coordinates.
IntVector flat_vector(const Matroid& m, ElementSet f);

struct Modification {
  AffineMap delta;
  Matroid deletion, contraction;
  BergmanFan source, target, divisor;
  std::vector<std::size_t> divisorial_cells;  // top cells of source containing the direction of e_i
  bool pushforward_ok = false;
  bool divisor_ok = false;
};

// Throws std::invalid_argument when i is a coloop, M has loops, or M/i has loops.
Modification modification_map(const Matroid& m, std::size_t i);

}  // namespace trophom
