#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "crownkit/bitset.hpp"
#include "crownkit/perm_group.hpp"

namespace crownkit {

/// A subgroup of a parent PermGroup, canonically represented as a bitset
/// over the parent's sorted element indexing. Equality of subgroups is
/// bitset equality.
struct SubgroupHandle {
  GroupPtr parent;
  Bitset bits;
  std::uint64_t order = 0;
  std::vector<std::uint32_t> witness;  // small generating set (element indices)

  bool contains_index(std::uint32_t i) const { return bits.test(i); }
  bool is_trivial() const { return order == 1; }
  bool is_full() const { return parent && order == parent->order(); }
  bool contains(const SubgroupHandle& other) const { return other.bits.subset_of(bits); }
  std::uint64_t index_in_parent() const { return parent->order() / order; }

  // Greedy minimal generating sequence in element-index order; deterministic
  // given the bitset. Used for witness logging and report descriptors.
  std::vector<std::uint32_t> canonical_generators() const;
  std::vector<Perm> generator_perms() const;

  // Cycle-string descriptor of the canonical generators, "()" when trivial.
  std::string describe() const;

  bool operator==(const SubgroupHandle& o) const { return bits == o.bits; }
};

// Orders handles by (order, lexicographic bitset); the project-wide tie-break.
bool handle_less(const SubgroupHandle& a, const SubgroupHandle& b);

/// Result of a subgroup closure. When `hit_limit` is set the closure grew
/// past the supplied bound and `bits` is unspecified; callers that pass
/// limit = largest-proper-subgroup-order use it as a cheap "= G" test.
struct Closure {
  Bitset bits;
  std::vector<std::uint32_t> members;  // BFS discovery order
  bool hit_limit = false;
};

// Closure of {identity} ∪ seeds under right multiplication by seeds.
Closure close_indices(const PermGroup& G, std::span<const std::uint32_t> seeds,
                      std::uint64_t limit = 0);

// Largest order a proper subgroup of G can have (|G| / smallest prime divisor).
std::uint64_t proper_order_bound(const PermGroup& G);

// True iff <seeds> = G, decided with an early-exit closure.
bool generates_whole(const PermGroup& G, std::span<const std::uint32_t> seeds);

SubgroupHandle handle_from_bits(GroupPtr G, Bitset bits);
SubgroupHandle handle_from_indices(GroupPtr G, std::span<const std::uint32_t> gens);
SubgroupHandle handle_from_perms(GroupPtr G, const std::vector<Perm>& gens);
SubgroupHandle trivial_subgroup(GroupPtr G);
SubgroupHandle full_subgroup(GroupPtr G);

SubgroupHandle conjugate_subgroup(const SubgroupHandle& H, std::uint32_t g);
bool is_normal_in_parent(const SubgroupHandle& H);

// Join <H, K> (closure of the union).
SubgroupHandle join(const SubgroupHandle& H, const SubgroupHandle& K);
// Intersection (bitwise AND; automatically a subgroup).
SubgroupHandle intersect(const SubgroupHandle& H, const SubgroupHandle& K);

// |HK| = |H||K| / |H ∩ K| — the set product size, no closure taken.
std::uint64_t product_size(const SubgroupHandle& H, const SubgroupHandle& K);

}  // namespace crownkit
