#pragma once

// Couplings of probability measures on Z^n: monotone (quantile) couplings on a
// totally ordered block, Knothe couplings along a decomposition, and the
// fiber structure S_-(a), S_+(a) of a coupling under an operation.

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dtransport/lattice_order.hpp"
#include "dtransport/measures.hpp"
#include "dtransport/operations.hpp"
#include "dtransport/report.hpp"

namespace dtransport {

using PointPair = std::pair<LatticePoint, LatticePoint>;

/// Probability measure on Z^n x Z^n together with its two marginals. Pairs
/// are ordered as the concatenated 2n-coordinate point.
class Coupling {
 public:
  /// Marginals are computed from the atoms. Throws std::invalid_argument if
  /// the atoms are empty, negative, of mixed dimension or not of mass 1.
  static Coupling from_atoms(std::size_t dim, std::map<PointPair, Rational> atoms);
  /// As from_atoms, additionally requiring the projections to equal `left`
  /// and `right` exactly.
  static Coupling with_marginals(std::map<PointPair, Rational> atoms,
                                 const ProbabilityMeasure& left,
                                 const ProbabilityMeasure& right);

  std::size_t dim() const { return left_.dim(); }
  const std::map<PointPair, Rational>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const ProbabilityMeasure& left() const { return left_; }
  const ProbabilityMeasure& right() const { return right_; }
  Rational weight(const LatticePoint& x, const LatticePoint& y) const;

  /// pi o T_side^{-1}.
  ProbabilityMeasure pushforward(const LatticeOperation& op, Side side) const;

  bool operator==(const Coupling& other) const { return atoms_ == other.atoms_; }

 private:
  Coupling(std::map<PointPair, Rational> atoms, ProbabilityMeasure left,
           ProbabilityMeasure right)
      : atoms_(std::move(atoms)), left_(std::move(left)), right_(std::move(right)) {}

  std::map<PointPair, Rational> atoms_;
  ProbabilityMeasure left_;
  ProbabilityMeasure right_;
};

enum class Marginal { first, second };

/// Exact projection recomputed from the atoms.
ProbabilityMeasure marginal(const Coupling& pi, Marginal side);

/// mu (x) nu.
Coupling product_coupling(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu);

/// Law(F_mu^{-1}(U), F_nu^{-1}(U)), computed by intersecting the half-open
/// quantile intervals [F(x-), F(x)) of both measures.
Coupling monotone_coupling(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
                           const AdditiveTotalOrder& order);

/// Monotone coupling of the first-block marginals, then, for every coupled
/// pair of prefixes, the monotone coupling of the conditionals of the next
/// block, in block order.
Coupling knothe_coupling(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
                         const Decomposition& d);

/// Every two support pairs are comparable in the product order.
VerificationReport check_support_monotone(const Coupling& pi, const AdditiveTotalOrder& order);

/// The coupling of block `block` conditioned on a pair of prefixes.
struct BlockCoupling {
  std::optional<PointPair> prefix;  // empty for block 0
  Coupling coupling;
};

/// Conditional block couplings of pi for one block of a decomposition.
std::vector<BlockCoupling> conditional_couplings(const Coupling& pi, const Decomposition& d,
                                                 std::size_t block);

/// Each conditional block coupling is monotone in its block order.
VerificationReport check_knothe_monotone(const Coupling& pi, const Decomposition& d);

struct FiberIndex {
  Side side;
  /// a -> S_side(a), pairs in coupling order.
  std::map<LatticePoint, std::vector<PointPair>> fibers;
};

FiberIndex fibers(const Coupling& pi, const LatticeOperation& op, Side side);

/// Fiber structure of a monotone single-block coupling: every fiber has at
/// most two pairs; two-pair fibers differ by one unit step in one argument
/// and the complementary operation steps by the unit; S_- and S_+ through a
/// support pair are aligned when both have two pairs. A non-monotone support
/// or a multi-block operation yields `inapplicable`.
VerificationReport check_fiber_structure(const Coupling& pi, const LatticeOperation& op);

/// check_fiber_structure applied to every conditional block coupling of a
/// Knothe coupling, using the block sections of `op`.
VerificationReport check_knothe_fiber_structure(const Coupling& pi,
                                                const LatticeOperation& op);

}  // namespace dtransport
