#pragma once

#include <map>
#include <vector>

#include "trophom/polyhedral.hpp"
#include "trophom/zlattice.hpp"

namespace trophom {

// Stalk of the p-form sheaf at one cell, realized inside the direct sum of
// the p-th exterior powers of the cotangent lattices of its maximal cofaces.
struct FormStalk {
  std::vector<std::size_t> targets;  // maximal cofaces, ascending
  std::vector<std::size_t> offsets;  // block start of each target
  std::size_t target_rank = 0;
  // Maps p-covectors on the cell's stratum to the direct sum.
  IntMatrix image_map;
  Sublattice lattice;
  // Columns: a p-covector on the stratum representing each basis element.
  IntMatrix lift;

  std::size_t rank() const { return lattice.rank(); }
};

class CellularFormSheaf {
 public:
  CellularFormSheaf() = default;
  CellularFormSheaf(std::size_t p, std::vector<FormStalk> stalks,
                    std::map<std::pair<std::size_t, std::size_t>, IntMatrix> restrictions)
      : p_(p), stalks_(std::move(stalks)), restrictions_(std::move(restrictions)) {}

  std::size_t degree() const { return p_; }
  std::size_t size() const { return stalks_.size(); }
  const FormStalk& stalk(std::size_t s) const { return stalks_.at(s); }
  std::size_t rank(std::size_t s) const { return stalks_.at(s).rank(); }
  // F(tau) -> F(sigma) for tau a face of sigma (or tau == sigma), as a
  // rank(sigma) x rank(tau) matrix acting on coordinate columns.
  const IntMatrix& restriction(std::size_t tau, std::size_t sigma) const;
  // Coordinates of a p-covector on the stratum of cell s in the stalk basis.
  IntVector express(std::size_t s, const IntVector& covector) const;

 private:
  std::size_t p_ = 0;
  std::vector<FormStalk> stalks_;
  std::map<std::pair<std::size_t, std::size_t>, IntMatrix> restrictions_;
};

CellularFormSheaf omega_p(const FaceComplex& c, std::size_t p);

// Hom(F^p(sigma), Z) with transposed restrictions.
struct DualFormCosheaf {
  CellularFormSheaf forms;
  std::size_t rank(std::size_t s) const { return forms.rank(s); }
  IntMatrix corestriction(std::size_t tau, std::size_t sigma) const {
    return forms.restriction(tau, sigma).transpose();
  }
};
DualFormCosheaf dual_forms(const FaceComplex& c, std::size_t p);

// Pull back p-covectors along an integral linear map given by a matrix
// lin: Z^n -> Z^m.  Result maps wedge^p (Z^m)^* -> wedge^p (Z^n)^*.
IntMatrix pullback_covectors(const IntMatrix& lin, std::size_t p);

// Exterior product of an i-covector and a j-covector in dimension m
// (lexicographic subset coordinates).
IntVector wedge_forms(const IntVector& a, std::size_t i, const IntVector& b, std::size_t j, std::size_t m);
// Determinant pairing of a k-covector with the k-vector spanned by the rows
// of `basis` (k x m).
Integer pair_with_basis(const IntVector& form, const IntMatrix& basis);

struct PullbackResult {
  std::map<std::size_t, std::size_t> cell_map;  // source cell -> target cell
  std::map<std::size_t, IntMatrix> matrices;    // source cell -> rank(src) x rank(tgt)
  std::vector<Violation> violations;
};

PullbackResult pullback_forms(const AffineMap& f, const FaceComplex& source, const FaceComplex& target, std::size_t p);

struct ProductBlock {
  std::size_t i = 0, j = 0;
  std::size_t rank_a = 0, rank_b = 0;
  std::size_t offset = 0;
};

struct ProductCellDecomposition {
  std::size_t cell = 0;  // index in the product complex
  std::size_t cell_a = 0, cell_b = 0;
  std::vector<ProductBlock> blocks;
  // Columns: product-stalk coordinates of the basis elements alpha_s ^ beta_t
  // of every block in order.
  IntMatrix change_of_basis;
  bool unimodular = false;
};

struct ProductDecomposition {
  FaceComplex product;
  std::size_t p = 0;
  std::vector<ProductCellDecomposition> cells;
};

ProductDecomposition product_sheaf_decomposition(const FaceComplex& a, const FaceComplex& b, std::size_t p);

}  // namespace trophom
