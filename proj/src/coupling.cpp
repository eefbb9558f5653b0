#include "dtransport/coupling.hpp"

#include <algorithm>
#include <stdexcept>

namespace dtransport {

namespace {

FiniteMeasure project(std::size_t dim, const std::map<PointPair, Rational>& atoms,
                      Marginal side) {
  std::vector<Atom> entries;
  entries.reserve(atoms.size());
  for (const auto& [pair, w] : atoms) {
    entries.emplace_back(side == Marginal::first ? pair.first : pair.second, w);
  }
  return FiniteMeasure::make(dim, entries);
}

}  // namespace

Coupling Coupling::from_atoms(std::size_t dim, std::map<PointPair, Rational> atoms) {
  for (auto it = atoms.begin(); it != atoms.end();) {
    if (it->first.first.dim() != dim || it->first.second.dim() != dim) {
      throw std::invalid_argument("coupling atom of wrong dimension");
    }
    if (sgn(it->second) < 0) throw std::invalid_argument("negative coupling weight");
    it = sgn(it->second) == 0 ? atoms.erase(it) : std::next(it);
  }
  if (atoms.empty()) throw std::invalid_argument("coupling has empty support");
  ProbabilityMeasure left = ProbabilityMeasure::from(project(dim, atoms, Marginal::first));
  ProbabilityMeasure right = ProbabilityMeasure::from(project(dim, atoms, Marginal::second));
  return Coupling(std::move(atoms), std::move(left), std::move(right));
}

Coupling Coupling::with_marginals(std::map<PointPair, Rational> atoms,
                                  const ProbabilityMeasure& left,
                                  const ProbabilityMeasure& right) {
  if (left.dim() != right.dim()) throw std::invalid_argument("marginal dims differ");
  Coupling c = from_atoms(left.dim(), std::move(atoms));
  if (!(c.left_ == left) || !(c.right_ == right)) {
    throw std::invalid_argument("coupling projections differ from the prescribed marginals");
  }
  return c;
}

Rational Coupling::weight(const LatticePoint& x, const LatticePoint& y) const {
  const auto it = atoms_.find(PointPair{x, y});
  return it == atoms_.end() ? Rational(0) : it->second;
}

ProbabilityMeasure Coupling::pushforward(const LatticeOperation& op, Side side) const {
  if (op.dim() != dim()) throw std::invalid_argument("operation and coupling dims differ");
  std::vector<Atom> entries;
  entries.reserve(atoms_.size());
  for (const auto& [pair, w] : atoms_) {
    entries.emplace_back(op.apply(side, pair.first, pair.second), w);
  }
  return ProbabilityMeasure::make(dim(), entries);
}

ProbabilityMeasure marginal(const Coupling& pi, Marginal side) {
  return ProbabilityMeasure::from(project(pi.dim(), pi.atoms(), side));
}

Coupling product_coupling(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu) {
  if (mu.dim() != nu.dim()) throw std::invalid_argument("product of measures of different dims");
  std::map<PointPair, Rational> atoms;
  for (const auto& [x, a] : mu.atoms()) {
    for (const auto& [y, b] : nu.atoms()) atoms.emplace(PointPair{x, y}, a * b);
  }
  return Coupling::with_marginals(std::move(atoms), mu, nu);
}

namespace {

std::map<PointPair, Rational> monotone_atoms(const ProbabilityMeasure& mu,
                                             const ProbabilityMeasure& nu,
                                             const AdditiveTotalOrder& order) {
  const auto a = sorted_atoms(mu.measure(), order);
  const auto b = sorted_atoms(nu.measure(), order);
  std::map<PointPair, Rational> atoms;
  std::size_t i = 0;
  std::size_t j = 0;
  Rational left_a = a[0].second;
  Rational left_b = b[0].second;
  // Walk the merged breakpoints of both quantile functions; each step assigns
  // the overlap of the current intervals.
  while (i < a.size() && j < b.size()) {
    const Rational overlap = std::min(left_a, left_b);
    atoms.emplace(PointPair{a[i].first, b[j].first}, overlap);
    left_a -= overlap;
    left_b -= overlap;
    if (sgn(left_a) == 0 && ++i < a.size()) left_a = a[i].second;
    if (sgn(left_b) == 0 && ++j < b.size()) left_b = b[j].second;
  }
  return atoms;
}

void require_dims(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu, std::size_t dim) {
  if (mu.dim() != dim || nu.dim() != dim) {
    throw std::invalid_argument("coupling: measure dims " + std::to_string(mu.dim()) + " and " +
                                std::to_string(nu.dim()) + " do not match " +
                                std::to_string(dim));
  }
}

}  // namespace

Coupling monotone_coupling(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
                           const AdditiveTotalOrder& order) {
  require_dims(mu, nu, order.dim());
  return Coupling::with_marginals(monotone_atoms(mu, nu, order), mu, nu);
}

Coupling knothe_coupling(const ProbabilityMeasure& mu, const ProbabilityMeasure& nu,
                         const Decomposition& d) {
  require_dims(mu, nu, d.total_dim());
  const ConditionalFamily cmu = disintegrate(mu, d);
  const ConditionalFamily cnu = disintegrate(nu, d);
  std::map<PointPair, Rational> atoms;

  struct Frame {
    PointPair prefix;
    Rational mass;
  };
  std::vector<Frame> frontier;
  for (auto& [pair, w] : monotone_atoms(cmu.root(), cnu.root(), d.block(0).order)) {
    frontier.push_back({pair, w});
  }
  for (std::size_t block = 1; block < d.block_count(); ++block) {
    std::vector<Frame> next;
    for (const auto& f : frontier) {
      const auto& cx = cmu.conditional(block, f.prefix.first);
      const auto& cy = cnu.conditional(block, f.prefix.second);
      for (const auto& [pair, w] : monotone_atoms(cx, cy, d.block(block).order)) {
        next.push_back({{concat(f.prefix.first, pair.first), concat(f.prefix.second, pair.second)},
                        f.mass * w});
      }
    }
    frontier = std::move(next);
  }
  for (auto& f : frontier) atoms[f.prefix] += f.mass;
  return Coupling::with_marginals(std::move(atoms), mu, nu);
}

namespace {

std::optional<Witness> monotone_witness(const std::vector<PointPair>& pairs,
                                        const AdditiveTotalOrder& order) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      const auto& [a, b] = pairs[i];
      const auto& [c, dd] = pairs[j];
      const bool up = order.less_equal(a, c) && order.less_equal(b, dd);
      const bool down = order.less_equal(c, a) && order.less_equal(dd, b);
      if (!up && !down) {
        return Witness{{{"x1", a}, {"y1", b}, {"x2", c}, {"y2", dd}},
                       "support pairs are not comparable in the product order"};
      }
    }
  }
  return std::nullopt;
}

std::vector<PointPair> support_pairs(const Coupling& pi) {
  std::vector<PointPair> out;
  out.reserve(pi.size());
  for (const auto& [pair, w] : pi.atoms()) out.push_back(pair);
  return out;
}

}  // namespace

VerificationReport check_support_monotone(const Coupling& pi, const AdditiveTotalOrder& order) {
  if (order.dim() != pi.dim()) throw std::invalid_argument("order and coupling dims differ");
  if (auto w = monotone_witness(support_pairs(pi), order)) {
    return VerificationReport::fail("support_monotone", std::move(*w));
  }
  return VerificationReport::pass("support_monotone");
}

std::vector<BlockCoupling> conditional_couplings(const Coupling& pi, const Decomposition& d,
                                                 std::size_t block) {
  if (d.total_dim() != pi.dim()) throw std::invalid_argument("decomposition does not match coupling");
  const std::size_t head = d.offset(block);
  const std::size_t width = d.block(block).dim;
  std::map<std::optional<PointPair>, std::map<PointPair, Rational>> grouped;
  for (const auto& [pair, w] : pi.atoms()) {
    std::optional<PointPair> key;
    if (block > 0) key = PointPair{pair.first.slice(0, head), pair.second.slice(0, head)};
    grouped[key][PointPair{pair.first.slice(head, width), pair.second.slice(head, width)}] += w;
  }
  std::vector<BlockCoupling> out;
  for (auto& [key, atoms] : grouped) {
    Rational mass = 0;
    for (const auto& [pair, w] : atoms) mass += w;
    for (auto& [pair, w] : atoms) w /= mass;
    out.push_back({key, Coupling::from_atoms(width, std::move(atoms))});
  }
  return out;
}

VerificationReport check_knothe_monotone(const Coupling& pi, const Decomposition& d) {
  for (std::size_t block = 0; block < d.block_count(); ++block) {
    for (const auto& bc : conditional_couplings(pi, d, block)) {
      if (auto w = monotone_witness(support_pairs(bc.coupling), d.block(block).order)) {
        if (bc.prefix) {
          w->points.emplace_back("prefix_x", bc.prefix->first);
          w->points.emplace_back("prefix_y", bc.prefix->second);
        }
        w->detail += " (block " + std::to_string(block) + ")";
        return VerificationReport::fail("knothe_monotone", std::move(*w));
      }
    }
  }
  return VerificationReport::pass("knothe_monotone");
}

FiberIndex fibers(const Coupling& pi, const LatticeOperation& op, Side side) {
  FiberIndex index{side, {}};
  for (const auto& [pair, w] : pi.atoms()) {
    index.fibers[op.apply(side, pair.first, pair.second)].push_back(pair);
  }
  return index;
}

namespace {

using SectionFn = std::function<LatticePoint(const LatticePoint&, const LatticePoint&)>;

bool contains_shifted(const std::vector<PointPair>& fiber, const PointPair& p,
                      const LatticePoint& u) {
  for (const auto& q : fiber) {
    if (p == q) return true;
    if (p.first == q.first + u && p.second == q.second + u) return true;
    if (p.first == q.first - u && p.second == q.second - u) return true;
  }
  return false;
}

bool aligned(const std::vector<PointPair>& a, const std::vector<PointPair>& b,
             const LatticePoint& u) {
  for (const auto& p : a) {
    if (!contains_shifted(b, p, u)) return false;
  }
  for (const auto& p : b) {
    if (!contains_shifted(a, p, u)) return false;
  }
  return true;
}

Witness fiber_witness(const std::vector<PointPair>& pairs, std::string detail) {
  Witness w;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    w.points.emplace_back("x" + std::to_string(i), pairs[i].first);
    w.points.emplace_back("y" + std::to_string(i), pairs[i].second);
  }
  w.detail = std::move(detail);
  return w;
}

VerificationReport fiber_structure(const std::vector<PointPair>& support,
                                   const AdditiveTotalOrder& order, const SectionFn& t_minus,
                                   const SectionFn& t_plus) {
  const char* name = "fiber_structure";
  if (auto w = monotone_witness(support, order)) {
    VerificationReport r;
    r.check = name;
    r.outcome = Outcome::inapplicable;
    w->detail = "precondition: " + w->detail;
    r.witness = std::move(*w);
    return r;
  }
  const LatticePoint u = order.unit();
  std::map<PointPair, LatticePoint> image_minus, image_plus;
  std::map<LatticePoint, std::vector<PointPair>> s_minus, s_plus;
  for (const auto& p : support) {
    auto m = t_minus(p.first, p.second);
    auto q = t_plus(p.first, p.second);
    s_minus[m].push_back(p);
    s_plus[q].push_back(p);
    image_minus.emplace(p, std::move(m));
    image_plus.emplace(p, std::move(q));
  }

  for (Side side : {Side::minus, Side::plus}) {
    const auto& fibers = side == Side::minus ? s_minus : s_plus;
    const auto& other = side == Side::minus ? image_plus : image_minus;
    const std::string tag = std::string("S_") + to_string(side);
    for (const auto& [a, fiber] : fibers) {
      if (fiber.size() > 2) {
        return VerificationReport::fail(
            name, fiber_witness(fiber, tag + "(" + a.to_string() + ") has " +
                                           std::to_string(fiber.size()) + " pairs"));
      }
      if (fiber.size() < 2) continue;
      PointPair lo = fiber[0];
      PointPair hi = fiber[1];
      if (!order.less_equal(lo.first, hi.first)) std::swap(lo, hi);
      const bool x_step = hi.first == lo.first + u && hi.second == lo.second;
      const bool y_step = hi.first == lo.first && hi.second == lo.second + u;
      if (!x_step && !y_step) {
        return VerificationReport::fail(
            name, fiber_witness(fiber, tag + "(" + a.to_string() +
                                           ") pairs do not differ by one unit step"));
      }
      if (other.at(hi) != other.at(lo) + u) {
        return VerificationReport::fail(
            name, fiber_witness(fiber, tag + "(" + a.to_string() +
                                           "): complementary values do not step by the unit"));
      }
    }
  }

  for (const auto& p : support) {
    const auto& fm = s_minus.at(image_minus.at(p));
    const auto& fp = s_plus.at(image_plus.at(p));
    if (fm.size() == 2 && fp.size() == 2 && !aligned(fm, fp, u)) {
      std::vector<PointPair> all = fm;
      all.insert(all.end(), fp.begin(), fp.end());
      Witness w = fiber_witness(all, "S_- and S_+ through " + p.first.to_string() + "," +
                                         p.second.to_string() +
                                         " both have two pairs but are not aligned");
      return VerificationReport::fail(name, std::move(w));
    }
  }
  return VerificationReport::pass(name);
}

}  // namespace

VerificationReport check_fiber_structure(const Coupling& pi, const LatticeOperation& op) {
  if (op.dim() != pi.dim()) throw std::invalid_argument("operation and coupling dims differ");
  const Decomposition& d = op.decomposition();
  if (d.block_count() != 1) {
    VerificationReport r;
    r.check = "fiber_structure";
    r.outcome = Outcome::inapplicable;
    r.witness = Witness{{}, "precondition: operation has " + std::to_string(d.block_count()) +
                                " blocks; use the per-block Knothe check"};
    return r;
  }
  return fiber_structure(
      support_pairs(pi), d.block(0).order,
      [&op](const LatticePoint& x, const LatticePoint& y) { return op.t_minus(x, y); },
      [&op](const LatticePoint& x, const LatticePoint& y) { return op.t_plus(x, y); });
}

VerificationReport check_knothe_fiber_structure(const Coupling& pi,
                                                const LatticeOperation& op) {
  const Decomposition& d = op.decomposition();
  for (std::size_t block = 0; block < d.block_count(); ++block) {
    for (const auto& bc : conditional_couplings(pi, d, block)) {
      const LatticePoint* a = bc.prefix ? &bc.prefix->first : nullptr;
      const LatticePoint* b = bc.prefix ? &bc.prefix->second : nullptr;
      auto r = fiber_structure(support_pairs(bc.coupling), d.block(block).order,
                               block_section(op, Side::minus, block, a, b),
                               block_section(op, Side::plus, block, a, b));
      if (!r.verified()) {
        if (r.witness && bc.prefix) {
          r.witness->points.emplace_back("prefix_x", bc.prefix->first);
          r.witness->points.emplace_back("prefix_y", bc.prefix->second);
        }
        r.check = "knothe_fiber_structure";
        return r;
      }
    }
  }
  return VerificationReport::pass("knothe_fiber_structure");
}

}  // namespace dtransport
