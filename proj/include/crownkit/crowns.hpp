#pragma once

#include <optional>

#include "crownkit/lattice.hpp"

namespace crownkit {

/// A monolithic primitive group: a unique minimal normal subgroup (the
/// socle) and a core-free maximal subgroup. Construction verifies both.
struct MonolithicGroup {
  GroupPtr group;
  SubgroupHandle socle_handle;
  bool socle_is_abelian = false;
  std::vector<SubgroupHandle> socle_simple_factors;
};

// Checks the monolithic-primitive invariants and assembles the record;
// throws InputError when the group is not monolithic primitive.
MonolithicGroup as_monolithic(GroupPtr G);

// G-isomorphism of chief factors of the same group: an isomorphism
// commuting with the conjugation action. Abelian factors go through the
// intertwiner space over F_p; nonabelian factors through propagation
// backtracking seeded by a single element (chief factors are G-irreducible).
bool g_isomorphic(const ChiefFactor& A, const ChiefFactor& B);

// G-equivalence: G-isomorphism, or (nonabelian case) an isomorphism phi
// twisted by a 1-cocycle tau: G -> B with phi(a^g) = tau(g)^-1 phi(a)^g tau(g);
// this is exactly the commuting-diagram definition. Abelian factors are
// G-equivalent iff G-isomorphic.
bool g_equivalent(const ChiefFactor& A, const ChiefFactor& B);

// Number of non-Frattini factors in a chief series of G that are
// G-equivalent to A.
unsigned delta_count(GroupPtr G, const ChiefFactor& A, std::uint64_t seed = 0);

// The monolithic primitive group associated with a non-Frattini chief
// factor: A x| (G/C_G(A)) in the affine realization on the |A| elements of A
// when A is abelian, G/C_G(A) (regular, since C_G(A) is normal) otherwise.
MonolithicGroup monolithic_associated(GroupPtr G, const ChiefFactor& A);

// Crown-based power L_k on k disjoint copies of L's domain: generated by
// the diagonal copies of L's generators plus the socle generators in each
// coordinate. |L_k| = |soc L|^(k-1) |L|, verified.
GroupPtr crown_based_power(const MonolithicGroup& L, unsigned k);

struct CrownRecord {
  ChiefFactor factor;
  MonolithicGroup monolithic;       // L_A
  unsigned delta = 0;               // delta_G(A)
  SubgroupHandle R;                 // R_G(A)
  SubgroupHandle I;                 // I_G(A): I/R = soc(G/R)
  std::vector<SubgroupHandle> members;  // N_A
};

// R_G(A), I_G(A), delta_G(A) and N_A for a non-Frattini chief factor; the
// postcondition G/R isomorphic to (L_A)_delta is checked internally.
CrownRecord compute_crown(GroupPtr G, const ChiefFactor& A);

struct Strip {
  std::vector<unsigned> support;
  SubgroupHandle subgroup;
};

struct StripDecomposition {
  std::vector<std::uint64_t> projection_orders;  // |pi_i(X)| per factor
  bool is_subdirect = false;                     // every projection full
  std::vector<Strip> strips;                     // pairwise disjoint full strips
};

// Scott decomposition of X <= S_1 x ... x S_k (nonabelian simple factors,
// product on disjoint domains). Full strips are returned whenever every
// nontrivial projection is full; the trivial subgroup yields no strips.
StripDecomposition strip_decomposition(const std::vector<GroupPtr>& factors,
                                       const SubgroupHandle& X);

struct GroupIso {
  std::vector<Perm> generator_images;      // images of G1's generator list
  std::vector<std::uint32_t> element_map;  // G1 element index -> G2 element index
};

// Backtracking isomorphism search with invariant prefilters (order, element
// order histogram, class size histogram, abelian invariants). Order cap 10000.
std::optional<GroupIso> iso_search(const GroupPtr& G1, const GroupPtr& G2);

bool is_isomorphic(const GroupPtr& G1, const GroupPtr& G2);

}  // namespace crownkit
