#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace crownkit {

using Point = std::uint32_t;

/// A permutation of {0..degree-1}, stored as its image array.
///
/// Composition order is fixed project-wide as left-then-right:
/// (p * q)[x] = q[p[x]], i.e. p acts first. Cycle notation I/O is
/// 1-based; points are 0-based everywhere else.
class Perm {
 public:
  Perm() = default;
  explicit Perm(Point degree);                    // identity
  explicit Perm(std::vector<Point> images);       // validates bijection

  static Perm parse_cycles(std::string_view text, Point degree);

  Point degree() const { return static_cast<Point>(images_.size()); }
  Point operator[](Point x) const { return images_[x]; }
  const std::vector<Point>& images() const { return images_; }

  Perm operator*(const Perm& rhs) const;          // this first, rhs second
  Perm inverse() const;

  bool is_identity() const;
  std::uint64_t order() const;                    // lcm of cycle lengths

  std::string cycle_string() const;               // "()" for the identity

  bool operator==(const Perm& o) const { return images_ == o.images_; }
  std::strong_ordering operator<=>(const Perm& o) const { return images_ <=> o.images_; }

 private:
  std::vector<Point> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::uint64_t h = 1469598103934665603ull;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace crownkit
