#pragma once

#include "crownkit/lattice.hpp"

namespace crownkit {

/// A G-invariant partition of the domain. Blocks are canonically sorted:
/// points ascending within blocks, blocks by minimum point.
struct BlockSystem {
  std::vector<std::vector<Point>> blocks;
  std::vector<std::uint32_t> block_of;

  static BlockSystem from_blocks(Point degree, std::vector<std::vector<Point>> blocks);
  std::string to_string() const;  // 1-based, e.g. "{1,3}{2,4}"
  bool operator==(const BlockSystem& o) const { return blocks == o.blocks; }
  bool is_singletons() const { return blocks.size() == block_of.size(); }
  bool is_one_block() const { return blocks.size() == 1; }
};

// True iff every generator maps every block onto a block. Throws InputError
// when P is not a partition of the domain.
bool is_block_system(const PermGroup& G, const BlockSystem& P);

// The system attached to an interval subgroup K in [G_omega, G]: the block
// through omega is omega^K and the system is its G-translate orbit.
BlockSystem system_of_interval_subgroup(const PermGroup& G, const SubgroupHandle& K,
                                        Point omega);

// One system per maximal subgroup of G containing G_omega; the count is
// max(G_omega, G). With exclude_trivial the singleton system (a maximal
// point stabilizer, i.e. a primitive group) is dropped.
std::vector<BlockSystem> maximal_block_systems(GroupPtr G, Point omega,
                                               bool exclude_trivial = false);

// Systems of every subgroup in the interval [G_omega, G], deduplicated.
std::vector<BlockSystem> all_block_systems(GroupPtr G, Point omega);

// Setwise stabilizer of a point set, as a handle.
SubgroupHandle setwise_stabilizer(GroupPtr G, const std::vector<Point>& set);

}  // namespace crownkit
