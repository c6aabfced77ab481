#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trophom/cycles.hpp"
#include "trophom/forms.hpp"
#include "trophom/polyhedral.hpp"
#include "trophom/zlattice.hpp"

namespace trophom {

// A basis element of a chain group: a cell (or a chain of cells in the order
// complex, listed from smallest to largest) and an index into its stalk.
struct ChainLabel {
  std::vector<std::size_t> cells;
  std::size_t index = 0;
};

class IntChainComplex {
 public:
  IntChainComplex() = default;
  // d[q] is the differential leaving degree q: C_q -> C_{q-1} when
  // homological, C_q -> C_{q+1} otherwise. Throws std::logic_error if d∘d != 0.
  IntChainComplex(bool homological, std::vector<std::vector<ChainLabel>> bases, std::vector<IntMatrix> d);

  bool homological() const { return homological_; }
  std::size_t top_degree() const { return bases_.empty() ? 0 : bases_.size() - 1; }
  std::size_t rank(std::size_t q) const { return q < bases_.size() ? bases_[q].size() : 0; }
  const std::vector<ChainLabel>& basis(std::size_t q) const { return bases_.at(q); }
  // Differential leaving degree q (an empty matrix with the right shape at the ends).
  IntMatrix d(std::size_t q) const;

 private:
  bool homological_ = true;
  std::vector<std::vector<ChainLabel>> bases_;
  std::vector<IntMatrix> d_;
};

struct HomologyResult {
  std::size_t p = 0, q = 0;
  AbelianGroupShape shape;
  // Free generators first, then torsion generators (with their orders).
  std::vector<IntVector> generators;
  std::vector<Integer> orders;  // 0 for free generators
};

HomologyResult homology(const IntChainComplex& cc, std::size_t q, bool with_generators = false);

IntChainComplex bm_complex(const FaceComplex& c, std::size_t p);
IntChainComplex bm_complex(const FaceComplex& c, const CellularFormSheaf& f);
// Sheaf cohomology of the p-form sheaf, as the derived inverse limit over the
// face poset (cochains indexed by strict chains of faces).
IntChainComplex cohomology_complex(const FaceComplex& c, std::size_t p);
IntChainComplex cohomology_complex(const FaceComplex& c, const CellularFormSheaf& f);

using HomologyTable = std::map<std::pair<std::size_t, std::size_t>, HomologyResult>;

// All (p,q) with 0 <= p,q <= max_degree; entries computed on `threads` workers.
HomologyTable bm_table(const FaceComplex& c, std::size_t max_degree, unsigned threads = 1, bool with_generators = false);
HomologyTable cohomology_table(const FaceComplex& c, std::size_t max_degree, unsigned threads = 1,
                               bool with_generators = false);

struct TropicalChainClass {
  std::size_t p = 0, q = 0;
  IntVector chain;  // coordinates in the degree-q basis of bm_complex(c, p)
  bool closed = false;
};

// Index in `ambient` of each cell of `sub` (same sedentarity and geometry).
std::vector<std::size_t> embed_cells(const FaceComplex& sub, const FaceComplex& ambient);

// Throws std::runtime_error if require_closed and the chain is not closed.
TropicalChainClass cycle_class(const TropicalCycle& a, const FaceComplex& ambient, bool require_closed = true);
TropicalChainClass pushforward_class(const AffineMap& f, const TropicalChainClass& cls, const FaceComplex& source,
                                     const FaceComplex& target);
// Cross product of classes on a and b, as a chain on product_complex(a, b).
TropicalChainClass cross_product_class(const TropicalChainClass& x, const FaceComplex& a, const TropicalChainClass& y,
                                       const FaceComplex& b);

struct DualityEntry {
  std::size_t p = 0, q = 0;
  AbelianGroupShape bm, cohomology;  // H^BM_{p,q} and H^{n-p,n-q}
  bool match = false;
};

struct DualityReport {
  std::size_t n = 0;
  std::vector<DualityEntry> entries;
  // Per p: the map from global (n-p)-forms to H^BM_{p,n} is an isomorphism.
  std::map<std::size_t, bool> top_row;
  std::vector<std::string> notes;
  bool passed() const;
};

DualityReport pd_check(const FaceComplex& c, std::size_t n, unsigned threads = 1);

struct KunnethEntry {
  std::size_t p = 0, q = 0;
  AbelianGroupShape product, expected;
  bool match = false;
};

struct KunnethReport {
  std::vector<KunnethEntry> entries;
  bool passed() const;
};

KunnethReport kunneth_check(const FaceComplex& a, const FaceComplex& b, unsigned threads = 1);

}  // namespace trophom
