#pragma once

// Exact finitely supported measures on Z^n.

#include <cstddef>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "dtransport/exact.hpp"
#include "dtransport/lattice_order.hpp"

namespace dtransport {

using Atom = std::pair<LatticePoint, Rational>;
using PointMap = std::function<LatticePoint(const LatticePoint&)>;

/// Nonempty finite support with strictly positive rational weights, stored
/// in ambient lexicographic order.
class FiniteMeasure {
 public:
  /// Drops zero weights and sums duplicate points. Throws
  /// std::invalid_argument on negative weights, wrong dimensions or an empty
  /// resulting support.
  static FiniteMeasure make(std::size_t dim, const std::vector<Atom>& entries);

  std::size_t dim() const { return dim_; }
  const std::map<LatticePoint, Rational>& atoms() const { return atoms_; }
  const Rational& total_mass() const { return total_; }
  std::size_t size() const { return atoms_.size(); }
  /// Zero outside the support.
  Rational weight(const LatticePoint& x) const;
  bool contains(const LatticePoint& x) const { return atoms_.count(x) != 0; }
  std::vector<LatticePoint> support() const;

  bool operator==(const FiniteMeasure&) const = default;

 private:
  FiniteMeasure(std::size_t dim, std::map<LatticePoint, Rational> atoms, Rational total)
      : dim_(dim), atoms_(std::move(atoms)), total_(std::move(total)) {}

  std::size_t dim_;
  std::map<LatticePoint, Rational> atoms_;
  Rational total_;
};

/// A FiniteMeasure whose total mass is exactly 1.
class ProbabilityMeasure {
 public:
  /// Throws std::invalid_argument unless the mass is exactly 1.
  static ProbabilityMeasure from(FiniteMeasure m);
  static ProbabilityMeasure make(std::size_t dim, const std::vector<Atom>& entries) {
    return from(FiniteMeasure::make(dim, entries));
  }
  static ProbabilityMeasure dirac(const LatticePoint& x);
  static ProbabilityMeasure uniform(const std::vector<LatticePoint>& points);

  const FiniteMeasure& measure() const { return m_; }
  std::size_t dim() const { return m_.dim(); }
  const std::map<LatticePoint, Rational>& atoms() const { return m_.atoms(); }
  std::size_t size() const { return m_.size(); }
  Rational weight(const LatticePoint& x) const { return m_.weight(x); }
  std::vector<LatticePoint> support() const { return m_.support(); }

  bool operator==(const ProbabilityMeasure&) const = default;

 private:
  explicit ProbabilityMeasure(FiniteMeasure m) : m_(std::move(m)) {}
  FiniteMeasure m_;
};

ProbabilityMeasure normalize(const FiniteMeasure& m);

/// Atoms sorted increasingly by `order`.
std::vector<Atom> sorted_atoms(const FiniteMeasure& m, const AdditiveTotalOrder& order);

/// mu{g : g <<= x}.
Rational cdf(const ProbabilityMeasure& mu, const AdditiveTotalOrder& order,
             const LatticePoint& x);

/// The <<-least support point x with cdf(x) >= t. Throws std::domain_error
/// unless 0 < t <= 1.
LatticePoint quantile(const ProbabilityMeasure& mu, const AdditiveTotalOrder& order,
                      const Rational& t);

/// sum mu(x) log mu(x): entropy relative to the counting measure.
double relative_entropy(const ProbabilityMeasure& mu);

/// Image measure; throws std::invalid_argument if `map` changes dimension
/// inconsistently across the support.
FiniteMeasure pushforward(const FiniteMeasure& m, const PointMap& map);

/// Factorisation mu(x) = mu^1(x_1) mu^2(x_2|x_{1:1}) ... along a decomposition.
/// Conditionals exist only for prefixes carrying positive mass.
class ConditionalFamily {
 public:
  const Decomposition& decomposition() const { return decomposition_; }
  /// Marginal on the first block.
  const ProbabilityMeasure& root() const { return root_; }
  /// mu^{block}(. | prefix) for block >= 1, prefix = x_{1:block}. Throws
  /// std::out_of_range for prefixes outside the support.
  const ProbabilityMeasure& conditional(std::size_t block, const LatticePoint& prefix) const;
  /// All conditionals of a block, keyed by prefix.
  const std::map<LatticePoint, ProbabilityMeasure>& level(std::size_t block) const;
  /// Multiplies conditionals along every prefix path.
  FiniteMeasure recombine() const;

 private:
  friend ConditionalFamily disintegrate(const ProbabilityMeasure&, const Decomposition&);
  ConditionalFamily(Decomposition d, ProbabilityMeasure root,
                    std::vector<std::map<LatticePoint, ProbabilityMeasure>> levels)
      : decomposition_(std::move(d)), root_(std::move(root)), levels_(std::move(levels)) {}

  Decomposition decomposition_;
  ProbabilityMeasure root_;
  // levels_[i - 1] holds the conditionals of block i.
  std::vector<std::map<LatticePoint, ProbabilityMeasure>> levels_;
};

ConditionalFamily disintegrate(const ProbabilityMeasure& mu, const Decomposition& d);

}  // namespace dtransport
