#include "dtransport/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dtransport {

FiniteMeasure FiniteMeasure::make(std::size_t dim, const std::vector<Atom>& entries) {
  if (dim == 0) throw std::invalid_argument("measure dimension must be positive");
  std::map<LatticePoint, Rational> atoms;
  for (const auto& [x, w] : entries) {
    if (x.dim() != dim) {
      throw std::invalid_argument("atom " + x.to_string() + " does not have dim " +
                                  std::to_string(dim));
    }
    if (sgn(w) < 0) {
      throw std::invalid_argument("negative weight " + to_string(w) + " at " + x.to_string());
    }
    if (sgn(w) == 0) continue;
    atoms[x] += w;
  }
  if (atoms.empty()) throw std::invalid_argument("measure has empty support");
  Rational total = 0;
  for (const auto& [x, w] : atoms) total += w;
  return FiniteMeasure(dim, std::move(atoms), std::move(total));
}

Rational FiniteMeasure::weight(const LatticePoint& x) const {
  const auto it = atoms_.find(x);
  return it == atoms_.end() ? Rational(0) : it->second;
}

std::vector<LatticePoint> FiniteMeasure::support() const {
  std::vector<LatticePoint> out;
  out.reserve(atoms_.size());
  for (const auto& [x, w] : atoms_) out.push_back(x);
  return out;
}

ProbabilityMeasure ProbabilityMeasure::from(FiniteMeasure m) {
  if (m.total_mass() != 1) {
    throw std::invalid_argument("probability measure has mass " + to_string(m.total_mass()));
  }
  return ProbabilityMeasure(std::move(m));
}

ProbabilityMeasure ProbabilityMeasure::dirac(const LatticePoint& x) {
  return make(x.dim(), {{x, Rational(1)}});
}

ProbabilityMeasure ProbabilityMeasure::uniform(const std::vector<LatticePoint>& points) {
  if (points.empty()) throw std::invalid_argument("uniform measure on an empty set");
  std::vector<Atom> entries;
  for (const auto& p : points) entries.emplace_back(p, Rational(1));
  return normalize(FiniteMeasure::make(points.front().dim(), entries));
}

ProbabilityMeasure normalize(const FiniteMeasure& m) {
  std::vector<Atom> entries;
  entries.reserve(m.size());
  for (const auto& [x, w] : m.atoms()) entries.emplace_back(x, w / m.total_mass());
  return ProbabilityMeasure::make(m.dim(), entries);
}

std::vector<Atom> sorted_atoms(const FiniteMeasure& m, const AdditiveTotalOrder& order) {
  if (order.dim() != m.dim()) throw std::invalid_argument("order and measure dims differ");
  std::vector<Atom> out(m.atoms().begin(), m.atoms().end());
  std::sort(out.begin(), out.end(),
            [&](const Atom& a, const Atom& b) { return order.less(a.first, b.first); });
  return out;
}

Rational cdf(const ProbabilityMeasure& mu, const AdditiveTotalOrder& order,
             const LatticePoint& x) {
  if (x.dim() != mu.dim() || order.dim() != mu.dim()) {
    throw std::invalid_argument("cdf: dimension mismatch");
  }
  Rational total = 0;
  for (const auto& [g, w] : mu.atoms()) {
    if (order.less_equal(g, x)) total += w;
  }
  return total;
}

LatticePoint quantile(const ProbabilityMeasure& mu, const AdditiveTotalOrder& order,
                      const Rational& t) {
  if (sgn(t) <= 0 || t > 1) {
    throw std::domain_error("quantile level " + to_string(t) + " outside (0,1]");
  }
  Rational cumulative = 0;
  const auto atoms = sorted_atoms(mu.measure(), order);
  for (const auto& [x, w] : atoms) {
    cumulative += w;
    if (cumulative >= t) return x;
  }
  return atoms.back().first;
}

double relative_entropy(const ProbabilityMeasure& mu) {
  double sum = 0.0;
  for (const auto& [x, w] : mu.atoms()) {
    if (w == 1) continue;
    sum += w.get_d() * log(w);
  }
  return sum;
}

FiniteMeasure pushforward(const FiniteMeasure& m, const PointMap& map) {
  std::vector<Atom> entries;
  entries.reserve(m.size());
  std::size_t dim = 0;
  for (const auto& [x, w] : m.atoms()) {
    LatticePoint image = map(x);
    if (dim == 0) dim = image.dim();
    if (image.dim() != dim) throw std::invalid_argument("pushforward map changes dimension");
    entries.emplace_back(std::move(image), w);
  }
  return FiniteMeasure::make(dim, entries);
}

const ProbabilityMeasure& ConditionalFamily::conditional(std::size_t block,
                                                         const LatticePoint& prefix) const {
  const auto& lvl = level(block);
  const auto it = lvl.find(prefix);
  if (it == lvl.end()) {
    throw std::out_of_range("no conditional for prefix " + prefix.to_string());
  }
  return it->second;
}

const std::map<LatticePoint, ProbabilityMeasure>& ConditionalFamily::level(
    std::size_t block) const {
  if (block == 0 || block > levels_.size()) throw std::out_of_range("conditional block index");
  return levels_[block - 1];
}

FiniteMeasure ConditionalFamily::recombine() const {
  std::vector<Atom> paths(root_.atoms().begin(), root_.atoms().end());
  for (std::size_t block = 1; block < decomposition_.block_count(); ++block) {
    std::vector<Atom> next;
    for (const auto& [prefix, mass] : paths) {
      for (const auto& [x, w] : conditional(block, prefix).atoms()) {
        next.emplace_back(concat(prefix, x), mass * w);
      }
    }
    paths = std::move(next);
  }
  return FiniteMeasure::make(decomposition_.total_dim(), paths);
}

ConditionalFamily disintegrate(const ProbabilityMeasure& mu, const Decomposition& d) {
  if (d.total_dim() != mu.dim()) {
    throw std::invalid_argument("decomposition dim " + std::to_string(d.total_dim()) +
                                " does not match measure dim " + std::to_string(mu.dim()));
  }
  // marginals[i] is the marginal on blocks 1..i+1.
  std::vector<FiniteMeasure> marginals;
  for (std::size_t i = 1; i <= d.block_count(); ++i) {
    marginals.push_back(
        pushforward(mu.measure(), [&](const LatticePoint& x) { return d.prefix(x, i); }));
  }
  ProbabilityMeasure root = ProbabilityMeasure::from(marginals[0]);

  std::vector<std::map<LatticePoint, ProbabilityMeasure>> levels;
  for (std::size_t block = 1; block < d.block_count(); ++block) {
    const std::size_t head = d.offset(block);
    const std::size_t width = d.block(block).dim;
    std::map<LatticePoint, std::vector<Atom>> grouped;
    for (const auto& [x, w] : marginals[block].atoms()) {
      const LatticePoint prefix = x.slice(0, head);
      grouped[prefix].emplace_back(x.slice(head, width),
                                   w / marginals[block - 1].weight(prefix));
    }
    std::map<LatticePoint, ProbabilityMeasure> lvl;
    for (auto& [prefix, entries] : grouped) {
      lvl.emplace(prefix, ProbabilityMeasure::make(width, entries));
    }
    levels.push_back(std::move(lvl));
  }
  return ConditionalFamily(d, std::move(root), std::move(levels));
}

}  // namespace dtransport
