#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crownkit/perm.hpp"

namespace crownkit {

struct GroupCaps {
  std::uint64_t element_cap = 200000;  // full element list built iff order <= this
  std::uint64_t mult_table_cap = 4096; // flat multiplication table iff order <= this
  Point degree_cap = 100000;
};

namespace detail {

struct ChainLevel {
  Point beta = 0;
  std::vector<Perm> gens;                  // strong generators for this level
  std::vector<std::int32_t> slot;          // point -> orbit position, -1 outside
  std::vector<Point> orbit;                // BFS order, orbit[0] == beta
  std::vector<Perm> trans;                 // beta^{trans[i]} == orbit[i]
  std::vector<Perm> trans_inv;
  void rebuild(Point degree);
};

/// Deterministic Schreier–Sims chain: each level's generator set is the
/// full deduplicated Schreier generator set of the level above, and the
/// base point is the smallest point moved by the level's generators.
/// Identical generator lists always produce identical chains.
class StabChain {
 public:
  StabChain() = default;
  StabChain(Point degree, const std::vector<Perm>& gens);

  bool contains(const Perm& p) const;
  std::uint64_t order() const;  // overflow-checked product of orbit sizes
  const std::vector<ChainLevel>& levels() const { return levels_; }

  // Appends every group element to `out` (unspecified order).
  void enumerate(std::vector<Perm>& out) const;

 private:
  Point degree_ = 0;
  std::vector<ChainLevel> levels_;
};

}  // namespace detail

class PermGroup;
using GroupPtr = std::shared_ptr<const PermGroup>;

/// A finite permutation group, immutable after construction. The stabilizer
/// chain, order, and (within the element cap) the lexicographically sorted
/// element list are built eagerly; element index 0 is always the identity.
class PermGroup {
 public:
  static GroupPtr make(Point degree, std::vector<Perm> gens, std::string name = "",
                       GroupCaps caps = {});

  Point degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::string& name() const { return name_; }
  std::uint64_t order() const { return order_; }
  const GroupCaps& caps() const { return caps_; }

  bool contains(const Perm& p) const;

  bool has_elements() const { return !elements_.empty() || order_ == 1; }
  const std::vector<Perm>& elements() const;          // throws CapError above cap
  const Perm& element(std::uint32_t i) const { return elements()[i]; }
  std::optional<std::uint32_t> index_of(const Perm& p) const;
  std::uint32_t index_of_checked(const Perm& p) const; // throws InputError if absent

  // Element-index arithmetic (requires the element list).
  std::uint32_t mult(std::uint32_t i, std::uint32_t j) const;
  std::uint32_t inv(std::uint32_t i) const { return inverse_[i]; }
  std::uint32_t conj(std::uint32_t x, std::uint32_t g) const {
    return mult(mult(inv(g), x), g);
  }
  std::uint64_t element_order(std::uint32_t i) const { return elements()[i].order(); }

  bool is_abelian() const;
  bool is_trivial() const { return order_ == 1; }

  std::vector<std::vector<Point>> orbits() const;  // sorted by minimum point
  bool is_transitive() const;

  // Conjugacy classes as element-index vectors; class representatives are the
  // minimal indices, classes sorted by representative.
  const std::vector<std::vector<std::uint32_t>>& conjugacy_classes() const;
  std::uint64_t class_size_of(std::uint32_t i) const;

  std::uint64_t smallest_prime_divisor() const;  // of the order; 1 for the trivial group

 private:
  PermGroup() = default;

  Point degree_ = 0;
  std::vector<Perm> gens_;
  std::string name_;
  GroupCaps caps_;
  detail::StabChain chain_;
  std::uint64_t order_ = 1;

  std::vector<Perm> elements_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint16_t> mult_table_;  // order^2 entries when within mult_table_cap
  std::vector<std::vector<std::uint32_t>> classes_;
  std::vector<std::uint32_t> class_size_by_elem_;
  std::uint64_t smallest_prime_ = 1;
};

// Order of <gens> on `degree` points without keeping the group around.
std::uint64_t group_order(Point degree, const std::vector<Perm>& gens);

}  // namespace crownkit
