#pragma once

// Complementing lattice operations (T-, T+) with T-(x,y) + T+(x,y) = x + y,
// the named instances, and box checkers for translation equivariance (P1),
// Knothe monotonicity (P2) and the complement identity.

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dtransport/exact.hpp"
#include "dtransport/lattice_order.hpp"
#include "dtransport/measures.hpp"
#include "dtransport/report.hpp"

namespace dtransport {

enum class Side { minus, plus };

const char* to_string(Side s);

enum class OperationKind { meet_join, midpoint, product, difference_map, custom };

const char* to_string(OperationKind k);

using BinaryPointMap = std::function<LatticePoint(const LatticePoint&, const LatticePoint&)>;

class LatticeOperation {
 public:
  std::size_t dim() const { return decomposition_.total_dim(); }
  const Decomposition& decomposition() const { return decomposition_; }
  OperationKind kind() const { return kind_; }

  /// Throws std::invalid_argument when x or y has the wrong dimension.
  LatticePoint t_minus(const LatticePoint& x, const LatticePoint& y) const;
  LatticePoint t_plus(const LatticePoint& x, const LatticePoint& y) const;
  LatticePoint apply(Side side, const LatticePoint& x, const LatticePoint& y) const {
    return side == Side::minus ? t_minus(x, y) : t_plus(x, y);
  }

  /// Arbitrary pair of maps with no structural guarantee. Only for negative
  /// controls in tests; the JSON and CLI front ends never produce these.
  static LatticeOperation unchecked(Decomposition d, BinaryPointMap t_minus,
                                    BinaryPointMap t_plus);

 private:
  friend LatticeOperation meet_join(std::size_t);
  friend LatticeOperation midpoint(std::size_t);
  friend LatticeOperation product(const LatticeOperation&, const LatticeOperation&);
  friend LatticeOperation from_difference_map(const Decomposition&, PointMap);

  LatticeOperation(OperationKind kind, Decomposition d, BinaryPointMap t_minus,
                   BinaryPointMap t_plus)
      : kind_(kind),
        decomposition_(std::move(d)),
        t_minus_(std::move(t_minus)),
        t_plus_(std::move(t_plus)) {}

  OperationKind kind_;
  Decomposition decomposition_;
  BinaryPointMap t_minus_;
  BinaryPointMap t_plus_;
};

/// Coordinatewise min / max.
LatticeOperation meet_join(std::size_t dim);
/// Coordinatewise floor / ceiling of (x + y) / 2.
LatticeOperation midpoint(std::size_t dim);
/// Blockwise action; the decomposition is the concatenation of both.
LatticeOperation product(const LatticeOperation& a, const LatticeOperation& b);
/// T-(x,y) = t(x - y) + y and T+ = x + y - T-. Translation equivariance and
/// the complement identity hold by construction; monotonicity does not.
LatticeOperation from_difference_map(const Decomposition& d, PointMap t);

/// Floor of a / 2 for every coordinate.
LatticePoint floor_half(const LatticePoint& w);

/// The section u, v -> block `block` of T_side((a,u,0...), (b,v,0...)), where
/// a, b are prefixes covering blocks 0..block-1 (ignored for block 0).
/// Trailing blocks are filled with zeros, which is sound for triangular maps.
std::function<LatticePoint(const LatticePoint&, const LatticePoint&)> block_section(
    const LatticeOperation& op, Side side, std::size_t block, const LatticePoint* prefix_x,
    const LatticePoint* prefix_y);

/// alpha, beta, gamma, delta > 0 with max{alpha, beta} <= min{gamma, delta}.
class ExponentQuadruple {
 public:
  /// Throws std::invalid_argument on non-positive values or when the
  /// ordering condition fails.
  static ExponentQuadruple make(Rational alpha, Rational beta, Rational gamma, Rational delta);
  static ExponentQuadruple unit() { return make(1, 1, 1, 1); }

  const Rational& alpha() const { return alpha_; }
  const Rational& beta() const { return beta_; }
  const Rational& gamma() const { return gamma_; }
  const Rational& delta() const { return delta_; }
  /// Least common denominator N of the four exponents.
  const Integer& common_denominator() const { return lcd_; }
  /// exponent * N, an integer.
  unsigned long scaled(const Rational& exponent) const;
  bool all_integral() const { return lcd_ == 1; }

 private:
  ExponentQuadruple(Rational a, Rational b, Rational g, Rational d, Integer lcd)
      : alpha_(std::move(a)), beta_(std::move(b)), gamma_(std::move(g)),
        delta_(std::move(d)), lcd_(std::move(lcd)) {}

  Rational alpha_, beta_, gamma_, delta_;
  Integer lcd_;
};

/// Default box radius for the property checkers.
inline constexpr long kDefaultBoxRadius = 4;

/// T(x+z, y+z) = T(x,y) + z for all x, y in [-r, r]^n and z in {+-e_i, (1,...,1)}.
VerificationReport check_p1(const LatticeOperation& op, long box_radius = kDefaultBoxRadius);

/// Block monotonicity of every section T_i^{(a,b)} plus triangularity. With
/// at most two blocks every prefix pair in the box is used; beyond that the
/// prefixes are drawn from the radius-1 box, strided down to at most
/// kMaxPrefixPairs pairs.
VerificationReport check_p2(const LatticeOperation& op, long box_radius = kDefaultBoxRadius);

/// t_minus + t_plus = x + y on the box.
VerificationReport check_complement(const LatticeOperation& op,
                                    long box_radius = kDefaultBoxRadius);

/// (P1), (P2) and the complement identity, in that order.
std::vector<VerificationReport> check_operation(const LatticeOperation& op,
                                                long box_radius = kDefaultBoxRadius);

inline constexpr std::size_t kMaxPrefixPairs = 4096;
/// Point pairs used by the triangularity probe before striding kicks in.
inline constexpr std::size_t kMaxTriangularPairs = 40000;

/// All points of [-r, r]^dim in ambient lexicographic order.
std::vector<LatticePoint> box_points(std::size_t dim, long radius);

}  // namespace dtransport
