#pragma once

#include "crownkit/permcore.hpp"

namespace crownkit {

struct IntervalOptions {
  std::size_t node_cap = 100000;  // abort past this many distinct subgroups
};

struct IntervalNode {
  SubgroupHandle subgroup;
  bool maximal_in_parent = false;  // proper, and every 1-element extension is G
};

// Every subgroup K with H <= K <= G, by single-element-extension BFS from H.
// Sorted by (order, lexicographic bitset). Throws CapError past the node cap.
std::vector<IntervalNode> interval_subgroups(const SubgroupHandle& H,
                                             IntervalOptions opts = {});

// <S> inside G as a canonical handle.
SubgroupHandle generated_subgroup(GroupPtr G, const std::vector<Perm>& S);

// The maximal subgroups M < G with H <= M; the count is max(H, G).
std::vector<SubgroupHandle> maximal_overgroups(const SubgroupHandle& H,
                                               IntervalOptions opts = {});

// Some maximal M >= K: repeatedly extend by the first element (index order)
// that keeps the subgroup proper. Deterministic. Throws InputError if K = G.
SubgroupHandle greedy_maximal_overgroup(const SubgroupHandle& K);

// Intersection of all maximal subgroups of G.
SubgroupHandle frattini(GroupPtr G);

// All normal subgroups: join-closure of the normal closures of the
// conjugacy classes, plus the trivial subgroup. Sorted by (order, bitset).
std::vector<SubgroupHandle> normal_subgroups(GroupPtr G);

// Normal subgroups of a subgroup H (normality relative to H itself).
std::vector<SubgroupHandle> normal_subgroups_of(const SubgroupHandle& H);

std::vector<SubgroupHandle> minimal_normal_subgroups(GroupPtr G);
SubgroupHandle socle(GroupPtr G);

/// A chief factor X/Y of the parent, carried with everything the crown
/// machinery consumes: a canonical indexing of the factor elements (Y-cosets
/// inside X), factor multiplication through the parent, and the conjugation
/// action of each parent generator.
struct ChiefFactor {
  GroupPtr parent;
  SubgroupHandle upper;  // X
  SubgroupHandle lower;  // Y
  std::uint64_t size = 0;

  std::vector<std::uint32_t> reps;      // factor element -> minimal parent element
  std::vector<std::uint32_t> coset_of;  // parent element -> factor element (UINT32_MAX outside X)
  std::vector<std::vector<std::uint32_t>> action;  // per parent generator
  std::vector<std::uint32_t> inverse;

  bool abelian = false;
  bool frattini = false;

  std::uint32_t mult(std::uint32_t a, std::uint32_t b) const {
    return coset_of[parent->mult(reps[a], reps[b])];
  }
  std::uint32_t inv(std::uint32_t a) const { return inverse[a]; }
  std::uint64_t element_order(std::uint32_t a) const;
  bool same_factor(const ChiefFactor& o) const {
    return upper.bits == o.upper.bits && lower.bits == o.lower.bits;
  }

  // Regular realization of the factor as a PermGroup (right multiplication
  // on the factor elements).
  GroupPtr regular_realization() const;
};

// Builds the factor data for normal subgroups Y < X of G; X/Y need not be
// verified chief here, callers pass chief pairs.
ChiefFactor make_chief_factor(GroupPtr G, const SubgroupHandle& X, const SubgroupHandle& Y);

struct ChiefSeries {
  std::vector<ChiefFactor> factors;  // bottom to top
};

// Greedy bottom-up chief series; `seed` permutes the choice among minimal
// normal overgroups so tests can build distinct series.
ChiefSeries chief_series(GroupPtr G, std::uint64_t seed = 0);

// True iff F abelian and X/Y <= Phi(G/Y), computed in the coset realization.
bool is_frattini_factor(const ChiefFactor& F);

/// Full subgroup lattice of a group with maximality flags, shared by the
/// verification harness so per-pair queries are subset filters instead of
/// repeated BFS runs.
struct GroupLattice {
  GroupPtr group;
  std::vector<IntervalNode> nodes;          // all subgroups
  std::vector<std::size_t> maximal_ids;

  std::uint64_t count_maximal_over(const Bitset& h) const;
  std::vector<std::size_t> maximal_over(const Bitset& h) const;
  Bitset intersection_of_maximal_over(const Bitset& h) const;  // H~ (whole G if none)
};

GroupLattice build_lattice(GroupPtr G, IntervalOptions opts = {});

// Representatives of conjugacy classes of subgroups, each the (order, bitset)
// minimum of its class.
std::vector<SubgroupHandle> subgroup_classes(const GroupLattice& lat);

}  // namespace crownkit
