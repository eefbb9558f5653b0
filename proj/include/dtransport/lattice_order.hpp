#pragma once

// Points of Z^n, signed-permutation lexicographic orders on blocks Z^l, and
// block decompositions Z^n = G_1 x ... x G_k.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "dtransport/exact.hpp"

namespace dtransport {

/// Immutable point of Z^n with arbitrary-precision coordinates. The built-in
/// comparison is the ambient lexicographic order, used only for canonical
/// storage; order-dependent algorithms take an AdditiveTotalOrder.
class LatticePoint {
 public:
  explicit LatticePoint(std::vector<Integer> coords);
  LatticePoint(std::initializer_list<long> coords);

  static LatticePoint zero(std::size_t dim);
  static LatticePoint basis(std::size_t dim, std::size_t axis, long scale = 1);
  static LatticePoint filled(std::size_t dim, long value);

  std::size_t dim() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Integer> coords() const { return coords_; }

  LatticePoint operator+(const LatticePoint& other) const;
  LatticePoint operator-(const LatticePoint& other) const;
  LatticePoint operator-() const;

  /// Coordinates [offset, offset + length).
  LatticePoint slice(std::size_t offset, std::size_t length) const;

  bool operator==(const LatticePoint& other) const;
  std::strong_ordering operator<=>(const LatticePoint& other) const;

  /// "(1,-2,3)".
  std::string to_string() const;

 private:
  std::vector<Integer> coords_;
};

LatticePoint concat(const LatticePoint& head, const LatticePoint& tail);

enum class Ordering { less, equal, greater };

const char* to_string(Ordering o);

/// x << y iff (signs[p_0]*x[p_0], signs[p_1]*x[p_1], ...) lexicographically
/// precedes the same tuple for y, where p = perm.
class AdditiveTotalOrder {
 public:
  /// `perm` is 0-based. Throws std::invalid_argument unless perm is a
  /// permutation of {0..dim-1} and every sign is +1 or -1.
  AdditiveTotalOrder(std::vector<std::size_t> perm, std::vector<int> signs);

  static AdditiveTotalOrder standard(std::size_t dim);

  std::size_t dim() const { return perm_.size(); }
  const std::vector<std::size_t>& perm() const { return perm_; }
  const std::vector<int>& signs() const { return signs_; }

  /// Throws std::invalid_argument on dimension mismatch.
  Ordering compare(const LatticePoint& x, const LatticePoint& y) const;
  bool less(const LatticePoint& x, const LatticePoint& y) const {
    return compare(x, y) == Ordering::less;
  }
  bool less_equal(const LatticePoint& x, const LatticePoint& y) const {
    return compare(x, y) != Ordering::greater;
  }

  /// Minimal element strictly above zero: sign * e_p for the last compared axis p.
  LatticePoint unit() const;

  /// Stable sort in increasing order.
  void sort(std::vector<LatticePoint>& points) const;

  bool operator==(const AdditiveTotalOrder&) const = default;

 private:
  std::vector<std::size_t> perm_;
  std::vector<int> signs_;
};

struct Block {
  std::size_t dim;
  AdditiveTotalOrder order;

  bool operator==(const Block&) const = default;
};

class Decomposition {
 public:
  /// Throws std::invalid_argument on empty block lists, zero block dims or
  /// when an order's dimension differs from its block's.
  static Decomposition make(std::vector<Block> blocks);

  /// One standard-ordered block of size 1 per coordinate.
  static Decomposition coordinatewise(std::size_t dim);
  static Decomposition single(const AdditiveTotalOrder& order);

  std::size_t total_dim() const { return total_dim_; }
  std::size_t block_count() const { return blocks_.size(); }
  const Block& block(std::size_t i) const { return blocks_.at(i); }
  const std::vector<Block>& blocks() const { return blocks_; }
  /// Index of the first coordinate of block i; offset(block_count()) == total_dim().
  std::size_t offset(std::size_t i) const { return offsets_.at(i); }

  /// Block i of x.
  LatticePoint component(const LatticePoint& x, std::size_t i) const;
  /// (x_1, ..., x_k).
  std::vector<LatticePoint> split(const LatticePoint& x) const;
  /// x_{1:count} as a single point of dim offset(count); count >= 1.
  LatticePoint prefix(const LatticePoint& x, std::size_t count) const;

  bool operator==(const Decomposition&) const = default;

 private:
  Decomposition(std::vector<Block> blocks, std::vector<std::size_t> offsets);

  std::vector<Block> blocks_;
  std::vector<std::size_t> offsets_;
  std::size_t total_dim_ = 0;
};

Decomposition concat(const Decomposition& head, const Decomposition& tail);

}  // namespace dtransport
