#include "dtransport/operations.hpp"

#include <algorithm>
#include <stdexcept>

namespace dtransport {

const char* to_string(Side s) { return s == Side::minus ? "minus" : "plus"; }

const char* to_string(OperationKind k) {
  switch (k) {
    case OperationKind::meet_join: return "meet_join";
    case OperationKind::midpoint: return "midpoint";
    case OperationKind::product: return "product";
    case OperationKind::difference_map: return "difference_map";
    case OperationKind::custom: return "custom";
  }
  return "?";
}

namespace {

void require_dim(const LatticePoint& p, std::size_t dim, const char* what) {
  if (p.dim() != dim) {
    throw std::invalid_argument(std::string(what) + " " + p.to_string() +
                                " is not of dim " + std::to_string(dim));
  }
}

template <typename Fn>
LatticePoint coordinatewise(const LatticePoint& x, const LatticePoint& y, Fn fn) {
  std::vector<Integer> c(x.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = fn(x[i], y[i]);
  return LatticePoint(std::move(c));
}

}  // namespace

LatticePoint LatticeOperation::t_minus(const LatticePoint& x, const LatticePoint& y) const {
  require_dim(x, dim(), "argument");
  require_dim(y, dim(), "argument");
  LatticePoint out = t_minus_(x, y);
  require_dim(out, dim(), "value");
  return out;
}

LatticePoint LatticeOperation::t_plus(const LatticePoint& x, const LatticePoint& y) const {
  require_dim(x, dim(), "argument");
  require_dim(y, dim(), "argument");
  LatticePoint out = t_plus_(x, y);
  require_dim(out, dim(), "value");
  return out;
}

LatticeOperation LatticeOperation::unchecked(Decomposition d, BinaryPointMap t_minus,
                                             BinaryPointMap t_plus) {
  return LatticeOperation(OperationKind::custom, std::move(d), std::move(t_minus),
                          std::move(t_plus));
}

LatticeOperation meet_join(std::size_t dim) {
  return LatticeOperation(
      OperationKind::meet_join, Decomposition::coordinatewise(dim),
      [](const LatticePoint& x, const LatticePoint& y) {
        return coordinatewise(x, y, [](const Integer& a, const Integer& b) {
          return cmp(a, b) <= 0 ? a : b;
        });
      },
      [](const LatticePoint& x, const LatticePoint& y) {
        return coordinatewise(x, y, [](const Integer& a, const Integer& b) {
          return cmp(a, b) >= 0 ? a : b;
        });
      });
}

LatticePoint floor_half(const LatticePoint& w) {
  std::vector<Integer> c(w.dim());
  for (std::size_t i = 0; i < c.size(); ++i) mpz_fdiv_q_2exp(c[i].get_mpz_t(), w[i].get_mpz_t(), 1);
  return LatticePoint(std::move(c));
}

LatticeOperation midpoint(std::size_t dim) {
  return LatticeOperation(
      OperationKind::midpoint, Decomposition::coordinatewise(dim),
      [](const LatticePoint& x, const LatticePoint& y) {
        return coordinatewise(x, y, [](const Integer& a, const Integer& b) {
          Integer s = a + b;
          Integer q;
          mpz_fdiv_q_2exp(q.get_mpz_t(), s.get_mpz_t(), 1);
          return q;
        });
      },
      [](const LatticePoint& x, const LatticePoint& y) {
        return coordinatewise(x, y, [](const Integer& a, const Integer& b) {
          Integer s = a + b;
          Integer q;
          mpz_cdiv_q_2exp(q.get_mpz_t(), s.get_mpz_t(), 1);
          return q;
        });
      });
}

LatticeOperation product(const LatticeOperation& a, const LatticeOperation& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  auto blockwise = [a, b, da, db](Side side) {
    return [a, b, da, db, side](const LatticePoint& x, const LatticePoint& y) {
      return concat(a.apply(side, x.slice(0, da), y.slice(0, da)),
                    b.apply(side, x.slice(da, db), y.slice(da, db)));
    };
  };
  return LatticeOperation(OperationKind::product, concat(a.decomposition(), b.decomposition()),
                          blockwise(Side::minus), blockwise(Side::plus));
}

LatticeOperation from_difference_map(const Decomposition& d, PointMap t) {
  auto shared = std::make_shared<const PointMap>(std::move(t));
  return LatticeOperation(
      OperationKind::difference_map, d,
      [shared](const LatticePoint& x, const LatticePoint& y) { return (*shared)(x - y) + y; },
      [shared](const LatticePoint& x, const LatticePoint& y) { return x - (*shared)(x - y); });
}

std::function<LatticePoint(const LatticePoint&, const LatticePoint&)> block_section(
    const LatticeOperation& op, Side side, std::size_t block, const LatticePoint* prefix_x,
    const LatticePoint* prefix_y) {
  const Decomposition& d = op.decomposition();
  const std::size_t head = d.offset(block);
  const std::size_t width = d.block(block).dim;
  const std::size_t tail = d.total_dim() - head - width;
  if (block > 0 && (!prefix_x || !prefix_y || prefix_x->dim() != head ||
                    prefix_y->dim() != head)) {
    throw std::invalid_argument("block section needs prefixes of dim " + std::to_string(head));
  }
  std::optional<LatticePoint> px, py;
  if (block > 0) {
    px = *prefix_x;
    py = *prefix_y;
  }
  return [op, side, head, width, tail, px, py](const LatticePoint& u, const LatticePoint& v) {
    LatticePoint x = px ? concat(*px, u) : u;
    LatticePoint y = py ? concat(*py, v) : v;
    if (tail > 0) {
      x = concat(x, LatticePoint::zero(tail));
      y = concat(y, LatticePoint::zero(tail));
    }
    return op.apply(side, x, y).slice(head, width);
  };
}

ExponentQuadruple ExponentQuadruple::make(Rational alpha, Rational beta, Rational gamma,
                                          Rational delta) {
  for (const Rational* r : {&alpha, &beta, &gamma, &delta}) {
    if (sgn(*r) <= 0) throw std::invalid_argument("exponents must be positive");
  }
  const Rational hi = std::max(alpha, beta);
  const Rational lo = std::min(gamma, delta);
  if (hi > lo) {
    throw std::invalid_argument("exponents violate max{alpha,beta} <= min{gamma,delta}: " +
                                to_string(hi) + " > " + to_string(lo));
  }
  Integer lcd = 1;
  for (const Rational* r : {&alpha, &beta, &gamma, &delta}) {
    mpz_lcm(lcd.get_mpz_t(), lcd.get_mpz_t(), r->get_den_mpz_t());
  }
  return ExponentQuadruple(std::move(alpha), std::move(beta), std::move(gamma),
                           std::move(delta), std::move(lcd));
}

unsigned long ExponentQuadruple::scaled(const Rational& exponent) const {
  Rational s = exponent * Rational(lcd_);
  if (s.get_den() != 1 || !s.get_num().fits_ulong_p()) {
    throw std::invalid_argument("exponent " + to_string(exponent) +
                                " does not scale to a machine integer");
  }
  return s.get_num().get_ui();
}

std::vector<LatticePoint> box_points(std::size_t dim, long radius) {
  if (dim == 0) throw std::invalid_argument("box dimension must be positive");
  if (radius < 0) throw std::invalid_argument("box radius must be non-negative");
  std::vector<LatticePoint> out;
  std::vector<long> cur(dim, -radius);
  while (true) {
    std::vector<Integer> c(cur.begin(), cur.end());
    out.emplace_back(std::move(c));
    std::size_t i = dim;
    while (i > 0) {
      --i;
      if (cur[i] < radius) {
        ++cur[i];
        break;
      }
      cur[i] = -radius;
      if (i == 0) return out;
    }
  }
}

namespace {

void require_radius(long r) {
  if (r < 1) throw std::invalid_argument("box radius must be >= 1");
}

std::vector<LatticePoint> translations(std::size_t dim) {
  std::vector<LatticePoint> z;
  for (std::size_t i = 0; i < dim; ++i) {
    z.push_back(LatticePoint::basis(dim, i, 1));
    z.push_back(LatticePoint::basis(dim, i, -1));
  }
  z.push_back(LatticePoint::filled(dim, 1));
  return z;
}

using IndexPair = std::pair<std::size_t, std::size_t>;

Integer max_abs(const LatticePoint& p) {
  Integer m = 0;
  for (const auto& c : p.coords()) {
    if (abs(c) > m) m = abs(c);
  }
  return m;
}

/// Index pairs (i, j) into `points`, nearest to the origin first: by the
/// larger sup-norm of the two points, then by index.
std::vector<IndexPair> origin_first_pairs(
    const std::vector<LatticePoint>& points) {
  std::vector<Integer> norm;
  norm.reserve(points.size());
  for (const auto& p : points) norm.push_back(max_abs(p));
  std::vector<IndexPair> pairs;
  pairs.reserve(points.size() * points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) pairs.emplace_back(i, j);
  }
  std::stable_sort(pairs.begin(), pairs.end(), [&norm](const auto& a, const auto& b) {
    const Integer& na = std::max(norm[a.first], norm[a.second]);
    const Integer& nb = std::max(norm[b.first], norm[b.second]);
    return na < nb;
  });
  return pairs;
}

/// Indices 0, step, 2*step, ... so that at most `cap` survive.
std::size_t stride_for(std::size_t count, std::size_t cap) {
  return count <= cap ? 1 : (count + cap - 1) / cap;
}

}  // namespace

VerificationReport check_p1(const LatticeOperation& op, long box_radius) {
  require_radius(box_radius);
  const auto box = box_points(op.dim(), box_radius);
  const auto shifts = translations(op.dim());
  for (const auto& [i, j] : origin_first_pairs(box)) {
    const LatticePoint& x = box[i];
    const LatticePoint& y = box[j];
    for (const auto& z : shifts) {
      for (Side side : {Side::minus, Side::plus}) {
        if (op.apply(side, x + z, y + z) != op.apply(side, x, y) + z) {
          return VerificationReport::fail(
              "p1", Witness{{{"x", x}, {"y", y}, {"z", z}},
                            std::string("T_") + to_string(side) + "(x+z,y+z) != T(x,y)+z"});
        }
      }
    }
  }
  return VerificationReport::pass("p1");
}

VerificationReport check_complement(const LatticeOperation& op, long box_radius) {
  require_radius(box_radius);
  const auto box = box_points(op.dim(), box_radius);
  for (const auto& [i, j] : origin_first_pairs(box)) {
    const LatticePoint& x = box[i];
    const LatticePoint& y = box[j];
    if (op.t_minus(x, y) + op.t_plus(x, y) != x + y) {
      return VerificationReport::fail(
          "complement", Witness{{{"x", x}, {"y", y}}, "T_-(x,y) + T_+(x,y) != x + y"});
    }
  }
  return VerificationReport::pass("complement");
}

namespace {

std::optional<Witness> check_block_monotone(const LatticeOperation& op, std::size_t block,
                                            const LatticePoint* a, const LatticePoint* b,
                                            const std::vector<LatticePoint>& sorted_box,
                                            const std::vector<IndexPair>& scan) {
  const AdditiveTotalOrder& order = op.decomposition().block(block).order;
  const std::size_t m = sorted_box.size();
  for (Side side : {Side::minus, Side::plus}) {
    const auto section = block_section(op, side, block, a, b);
    std::vector<LatticePoint> table;
    table.reserve(m * m);
    for (const auto& u : sorted_box) {
      for (const auto& v : sorted_box) table.push_back(section(u, v));
    }
    auto at = [&](std::size_t i, std::size_t j) -> const LatticePoint& { return table[i * m + j]; };
    // Consecutive steps suffice: the box is sorted and the order is transitive.
    for (const auto& [i, j] : scan) {
      const bool x_step = i + 1 < m && !order.less_equal(at(i, j), at(i + 1, j));
      const bool y_step = j + 1 < m && !order.less_equal(at(i, j), at(i, j + 1));
      if (!x_step && !y_step) continue;
      Witness w;
      w.points.emplace_back("x1", sorted_box[i]);
      w.points.emplace_back("x2", x_step ? sorted_box[i + 1] : sorted_box[i]);
      w.points.emplace_back("y1", sorted_box[j]);
      w.points.emplace_back("y2", x_step ? sorted_box[j] : sorted_box[j + 1]);
      if (a) {
        w.points.emplace_back("prefix_x", *a);
        w.points.emplace_back("prefix_y", *b);
      }
      w.points.emplace_back("value1", at(i, j));
      w.points.emplace_back("value2", x_step ? at(i + 1, j) : at(i, j + 1));
      w.detail = "block " + std::to_string(block) + " section of T_" + to_string(side) +
                 " is not monotone";
      return w;
    }
  }
  return std::nullopt;
}

std::optional<Witness> check_triangular(const LatticeOperation& op, long radius) {
  const Decomposition& d = op.decomposition();
  if (d.block_count() < 2) return std::nullopt;
  const auto box = box_points(op.dim(), radius);
  const std::size_t pairs = box.size() * box.size();
  const std::size_t stride = stride_for(pairs, kMaxTriangularPairs);
  // Block index owning each coordinate.
  std::vector<std::size_t> owner(op.dim());
  for (std::size_t blk = 0; blk < d.block_count(); ++blk) {
    for (std::size_t c = d.offset(blk); c < d.offset(blk + 1); ++c) owner[c] = blk;
  }
  for (std::size_t idx = 0; idx < pairs; idx += stride) {
    const LatticePoint& x = box[idx / box.size()];
    const LatticePoint& y = box[idx % box.size()];
    for (Side side : {Side::minus, Side::plus}) {
      const LatticePoint base = op.apply(side, x, y);
      for (std::size_t c = d.offset(1); c < op.dim(); ++c) {
        const std::size_t head = d.offset(owner[c]);
        const LatticePoint e = LatticePoint::basis(op.dim(), c, 1);
        for (int which = 0; which < 2; ++which) {
          const LatticePoint moved =
              which == 0 ? op.apply(side, x + e, y) : op.apply(side, x, y + e);
          if (moved.slice(0, head) != base.slice(0, head)) {
            return Witness{{{"x", x}, {"y", y}, {"perturbation", e}},
                           std::string("T_") + to_string(side) + " blocks before block " +
                               std::to_string(owner[c]) + " depend on coordinate " +
                               std::to_string(c) + (which == 0 ? " of x" : " of y")};
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

VerificationReport check_p2(const LatticeOperation& op, long box_radius) {
  require_radius(box_radius);
  const Decomposition& d = op.decomposition();
  if (auto w = check_triangular(op, box_radius)) {
    return VerificationReport::fail("p2", std::move(*w));
  }
  for (std::size_t block = 0; block < d.block_count(); ++block) {
    auto sorted_box = box_points(d.block(block).dim, box_radius);
    d.block(block).order.sort(sorted_box);
    const auto scan = origin_first_pairs(sorted_box);
    if (block == 0) {
      if (auto w = check_block_monotone(op, 0, nullptr, nullptr, sorted_box, scan)) {
        return VerificationReport::fail("p2", std::move(*w));
      }
      continue;
    }
    const long prefix_radius = d.block_count() <= 2 ? box_radius : 1;
    const auto prefixes = box_points(d.offset(block), prefix_radius);
    const std::size_t pairs = prefixes.size() * prefixes.size();
    const std::size_t stride =
        d.block_count() <= 2 ? 1 : stride_for(pairs, kMaxPrefixPairs);
    for (std::size_t idx = 0; idx < pairs; idx += stride) {
      const LatticePoint& a = prefixes[idx / prefixes.size()];
      const LatticePoint& b = prefixes[idx % prefixes.size()];
      if (auto w = check_block_monotone(op, block, &a, &b, sorted_box, scan)) {
        return VerificationReport::fail("p2", std::move(*w));
      }
    }
  }
  return VerificationReport::pass("p2");
}

std::vector<VerificationReport> check_operation(const LatticeOperation& op, long box_radius) {
  return {check_p1(op, box_radius), check_p2(op, box_radius), check_complement(op, box_radius)};
}

}  // namespace dtransport
