#pragma once

#include <map>
#include <string>
#include <vector>

#include "trophom/cycles.hpp"
#include "trophom/homology.hpp"
#include "trophom/polyhedral.hpp"

namespace trophom {

// Piecewise integral affine function: on cell s it is x -> covectors[s] . x + constants[s]
// (stratum coordinates).
struct PLFunction {
  FaceComplex complex;
  std::vector<IntVector> covectors;
  std::vector<Rational> constants;

  Rational value(std::size_t s, const QVector& x) const { return dot(covectors.at(s), x) + constants.at(s); }
};

struct AffinePiece {
  IntVector covector;
  Rational constant;
};

// Cells without data inherit it from a coface; every cell must be reached.
PLFunction make_pl(const FaceComplex& c, const std::map<std::string, AffinePiece>& data);
// The global affine function m . x + a on every cell of c.
PLFunction affine_pl(const FaceComplex& c, const IntVector& m, const Rational& a);

struct PLReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

PLReport verify_pl(const PLFunction& f);

struct CartierDivisor {
  PLFunction representative;
  std::vector<std::size_t> support;  // cells near which the function is not affine
};

// Throws std::invalid_argument if verify_pl fails.
CartierDivisor make_divisor(const PLFunction& f);

// Intersection product with a balanced cycle. The cycle's complex is refined
// by the divisor's hyperplanes when the divisor is not affine on its cells.
TropicalCycle intersect(const CartierDivisor& d, const TropicalCycle& a);

struct CapResult {
  TropicalCycle product;   // D . A
  TropicalChainClass cap;  // boundary of the chain built from the slopes of D
  TropicalChainClass cls;  // cycle class of D . A
  bool certified = false;
};

// Throws std::logic_error when the two computations disagree.
CapResult divisor_cap_class(const CartierDivisor& d, const TropicalCycle& a);

}  // namespace trophom
