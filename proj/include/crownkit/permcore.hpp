#pragma once

#include <optional>

#include "crownkit/subgroup.hpp"

namespace crownkit {

struct OrbitPartition {
  std::vector<std::vector<Point>> orbits;  // sorted by minimum point
  bool transitive = false;
};

OrbitPartition orbit_partition(const PermGroup& G);

// G_omega as a handle (element filter; requires the element list).
SubgroupHandle point_stabilizer(GroupPtr G, Point omega);

/// A homomorphism out of a group with full element list. Coset-action homs
/// carry the coset table and can map arbitrary elements.
struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<Perm> generator_images;       // one per source generator
  Bitset kernel_bits;                       // over source elements
  std::vector<std::uint32_t> coset_of;      // source element -> target point
  std::vector<std::uint32_t> coset_rep;     // target point -> minimal source element
  bool identity_hom = false;                // target == source, map is identity

  Perm map(const Perm& p) const;            // any element of source
  Perm map_index(std::uint32_t i) const;
  std::uint32_t map_to_index(std::uint32_t i) const;  // target element index

  Bitset image_of_subgroup(const Bitset& src) const;
  Bitset preimage_of_subgroup(const Bitset& tgt) const;
  SubgroupHandle kernel() const;
};

// Action of G on the right cosets of H; kernel = core_G(H). When H is the
// trivial subgroup the hom is the identity map on G itself (no degree blowup).
GroupHom coset_action(GroupPtr G, const SubgroupHandle& H);

SubgroupHandle normal_closure(GroupPtr G, const std::vector<Perm>& seeds);
SubgroupHandle normal_closure_indices(GroupPtr G, std::span<const std::uint32_t> seeds);

// Largest normal subgroup of G inside M (= intersection of the conjugates).
SubgroupHandle core_of_subgroup(const SubgroupHandle& M);

// {g in G : gs = sg for all s in S}; S need not lie inside G.
SubgroupHandle centralizer_of(GroupPtr G, const std::vector<Perm>& S);

// Direct product on the disjoint union of domains: the first factor acts on
// [0, deg G), the second on [deg G, deg G + deg H).
GroupPtr direct_product(const GroupPtr& G, const GroupPtr& H, GroupCaps caps = {});
GroupPtr direct_product_many(const std::vector<GroupPtr>& factors, GroupCaps caps = {});

Perm embed_perm(const Perm& p, Point total_degree, Point offset);

// Derived series by iterated normal closure of generator commutators; works
// without element lists.
bool is_soluble(const PermGroup& G);

// Derived subgroup generators (normal closure of generator commutators),
// exposed for the solubility cross-checks.
std::vector<Perm> derived_subgroup_generators(Point degree, const std::vector<Perm>& gens);

}  // namespace crownkit
