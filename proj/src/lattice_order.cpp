#include "dtransport/lattice_order.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dtransport {

namespace {

void require_same_dim(const LatticePoint& a, const LatticePoint& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("dimension mismatch: " + a.to_string() + " vs " +
                                b.to_string());
  }
}

}  // namespace

LatticePoint::LatticePoint(std::vector<Integer> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw std::invalid_argument("lattice point needs at least one coordinate");
  }
}

LatticePoint::LatticePoint(std::initializer_list<long> coords) {
  coords_.reserve(coords.size());
  for (long c : coords) coords_.emplace_back(c);
  if (coords_.empty()) {
    throw std::invalid_argument("lattice point needs at least one coordinate");
  }
}

LatticePoint LatticePoint::zero(std::size_t dim) { return filled(dim, 0); }

LatticePoint LatticePoint::basis(std::size_t dim, std::size_t axis, long scale) {
  std::vector<Integer> c(dim, Integer(0));
  c.at(axis) = scale;
  return LatticePoint(std::move(c));
}

LatticePoint LatticePoint::filled(std::size_t dim, long value) {
  return LatticePoint(std::vector<Integer>(dim, Integer(value)));
}

LatticePoint LatticePoint::operator+(const LatticePoint& other) const {
  require_same_dim(*this, other);
  std::vector<Integer> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + other.coords_[i];
  return LatticePoint(std::move(c));
}

LatticePoint LatticePoint::operator-(const LatticePoint& other) const {
  require_same_dim(*this, other);
  std::vector<Integer> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] - other.coords_[i];
  return LatticePoint(std::move(c));
}

LatticePoint LatticePoint::operator-() const {
  std::vector<Integer> c(coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return LatticePoint(std::move(c));
}

LatticePoint LatticePoint::slice(std::size_t offset, std::size_t length) const {
  if (length == 0 || offset + length > coords_.size()) {
    throw std::out_of_range("slice outside point of dim " + std::to_string(dim()));
  }
  return LatticePoint(std::vector<Integer>(coords_.begin() + offset,
                                           coords_.begin() + offset + length));
}

bool LatticePoint::operator==(const LatticePoint& other) const {
  return coords_ == other.coords_;
}

std::strong_ordering LatticePoint::operator<=>(const LatticePoint& other) const {
  const std::size_t n = std::min(coords_.size(), other.coords_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = cmp(coords_[i], other.coords_[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return coords_.size() <=> other.coords_.size();
}

std::string LatticePoint::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ',';
    out += coords_[i].get_str();
  }
  return out + ")";
}

LatticePoint concat(const LatticePoint& head, const LatticePoint& tail) {
  std::vector<Integer> c(head.coords().begin(), head.coords().end());
  c.insert(c.end(), tail.coords().begin(), tail.coords().end());
  return LatticePoint(std::move(c));
}

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::less: return "less";
    case Ordering::equal: return "equal";
    case Ordering::greater: return "greater";
  }
  return "?";
}

AdditiveTotalOrder::AdditiveTotalOrder(std::vector<std::size_t> perm,
                                       std::vector<int> signs)
    : perm_(std::move(perm)), signs_(std::move(signs)) {
  if (perm_.empty()) throw std::invalid_argument("order dimension must be positive");
  if (signs_.size() != perm_.size()) {
    throw std::invalid_argument("order needs one sign per coordinate");
  }
  std::vector<std::size_t> sorted = perm_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) throw std::invalid_argument("order perm is not a permutation");
  }
  for (int s : signs_) {
    if (s != 1 && s != -1) throw std::invalid_argument("order signs must be +1 or -1");
  }
}

AdditiveTotalOrder AdditiveTotalOrder::standard(std::size_t dim) {
  std::vector<std::size_t> perm(dim);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  return AdditiveTotalOrder(std::move(perm), std::vector<int>(dim, 1));
}

Ordering AdditiveTotalOrder::compare(const LatticePoint& x, const LatticePoint& y) const {
  if (x.dim() != dim() || y.dim() != dim()) {
    throw std::invalid_argument("order of dim " + std::to_string(dim()) +
                                " cannot compare " + x.to_string() + " and " +
                                y.to_string());
  }
  for (std::size_t axis : perm_) {
    int c = cmp(x[axis], y[axis]);
    if (c == 0) continue;
    if (signs_[axis] < 0) c = -c;
    return c < 0 ? Ordering::less : Ordering::greater;
  }
  return Ordering::equal;
}

LatticePoint AdditiveTotalOrder::unit() const {
  const std::size_t last = perm_.back();
  return LatticePoint::basis(dim(), last, signs_[last]);
}

void AdditiveTotalOrder::sort(std::vector<LatticePoint>& points) const {
  std::stable_sort(points.begin(), points.end(),
                   [this](const LatticePoint& a, const LatticePoint& b) { return less(a, b); });
}

Decomposition::Decomposition(std::vector<Block> blocks, std::vector<std::size_t> offsets)
    : blocks_(std::move(blocks)), offsets_(std::move(offsets)), total_dim_(offsets_.back()) {}

Decomposition Decomposition::make(std::vector<Block> blocks) {
  if (blocks.empty()) throw std::invalid_argument("decomposition needs at least one block");
  std::vector<std::size_t> offsets{0};
  for (const Block& b : blocks) {
    if (b.dim == 0) throw std::invalid_argument("block dims must be positive");
    if (b.order.dim() != b.dim) {
      throw std::invalid_argument("block of dim " + std::to_string(b.dim) +
                                  " carries an order of dim " +
                                  std::to_string(b.order.dim()));
    }
    offsets.push_back(offsets.back() + b.dim);
  }
  return Decomposition(std::move(blocks), std::move(offsets));
}

Decomposition Decomposition::coordinatewise(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("dimension must be positive");
  std::vector<Block> blocks(dim, Block{1, AdditiveTotalOrder::standard(1)});
  return make(std::move(blocks));
}

Decomposition Decomposition::single(const AdditiveTotalOrder& order) {
  return make({Block{order.dim(), order}});
}

LatticePoint Decomposition::component(const LatticePoint& x, std::size_t i) const {
  if (x.dim() != total_dim_) throw std::invalid_argument("point does not match decomposition");
  return x.slice(offsets_.at(i), blocks_.at(i).dim);
}

std::vector<LatticePoint> Decomposition::split(const LatticePoint& x) const {
  std::vector<LatticePoint> out;
  out.reserve(blocks_.size());
  for (std::size_t i = 0; i < blocks_.size(); ++i) out.push_back(component(x, i));
  return out;
}

LatticePoint Decomposition::prefix(const LatticePoint& x, std::size_t count) const {
  if (x.dim() != total_dim_) throw std::invalid_argument("point does not match decomposition");
  if (count == 0 || count > blocks_.size()) throw std::out_of_range("prefix block count");
  return x.slice(0, offsets_[count]);
}

Decomposition concat(const Decomposition& head, const Decomposition& tail) {
  std::vector<Block> blocks = head.blocks();
  blocks.insert(blocks.end(), tail.blocks().begin(), tail.blocks().end());
  return Decomposition::make(std::move(blocks));
}

}  // namespace dtransport
