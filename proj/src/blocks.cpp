#include "crownkit/blocks.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "crownkit/errors.hpp"

namespace crownkit {

BlockSystem BlockSystem::from_blocks(Point degree, std::vector<std::vector<Point>> blocks) {
  BlockSystem s;
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  s.block_of.assign(degree, UINT32_MAX);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (Point p : blocks[i]) {
      if (p >= degree) throw InputError("partition point out of range");
      if (s.block_of[p] != UINT32_MAX) throw InputError("partition blocks overlap");
      s.block_of[p] = static_cast<std::uint32_t>(i);
    }
  }
  for (Point p = 0; p < degree; ++p)
    if (s.block_of[p] == UINT32_MAX) throw InputError("partition does not cover the domain");
  s.blocks = std::move(blocks);
  return s;
}

std::string BlockSystem::to_string() const {
  std::ostringstream os;
  for (const auto& b : blocks) {
    os << '{';
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) os << ',';
      os << (b[i] + 1);
    }
    os << '}';
  }
  return os.str();
}

bool is_block_system(const PermGroup& G, const BlockSystem& P) {
  if (P.block_of.size() != G.degree()) throw InputError("partition degree mismatch");
  for (const Perm& g : G.generators()) {
    for (const auto& b : P.blocks) {
      std::uint32_t target = P.block_of[g[b.front()]];
      if (P.blocks[target].size() != b.size()) return false;
      for (Point p : b)
        if (P.block_of[g[p]] != target) return false;
    }
  }
  return true;
}

BlockSystem system_of_interval_subgroup(const PermGroup& G, const SubgroupHandle& K,
                                        Point omega) {
  // Block through omega: omega^K.
  std::set<Point> block0;
  K.bits.for_each_set([&](std::size_t i) {
    block0.insert(const_cast<const PermGroup&>(G).element(static_cast<std::uint32_t>(i))[omega]);
  });

  // Orbit of the block under the generators, acting setwise.
  std::vector<std::vector<Point>> blocks;
  std::set<std::vector<Point>> seen;
  std::vector<Point> b0(block0.begin(), block0.end());
  blocks.push_back(b0);
  seen.insert(b0);
  for (std::size_t head = 0; head < blocks.size(); ++head) {
    std::vector<Point> cur = blocks[head];
    for (const Perm& g : G.generators()) {
      std::vector<Point> img;
      img.reserve(cur.size());
      for (Point p : cur) img.push_back(g[p]);
      std::sort(img.begin(), img.end());
      if (seen.insert(img).second) blocks.push_back(std::move(img));
    }
  }
  return BlockSystem::from_blocks(G.degree(), std::move(blocks));
}

std::vector<BlockSystem> maximal_block_systems(GroupPtr G, Point omega, bool exclude_trivial) {
  if (!G->is_transitive()) throw InputError("block systems require a transitive group");
  if (omega >= G->degree()) throw InputError("base point out of range");

  SubgroupHandle stab = point_stabilizer(G, omega);
  std::vector<BlockSystem> out;
  for (const SubgroupHandle& M : maximal_overgroups(stab)) {
    BlockSystem s = system_of_interval_subgroup(*G, M, omega);
    if (exclude_trivial && s.is_singletons()) continue;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<BlockSystem> all_block_systems(GroupPtr G, Point omega) {
  if (!G->is_transitive()) throw InputError("block systems require a transitive group");
  if (omega >= G->degree()) throw InputError("base point out of range");

  SubgroupHandle stab = point_stabilizer(G, omega);
  std::vector<BlockSystem> out;
  std::set<std::string> seen;
  for (const IntervalNode& node : interval_subgroups(stab)) {
    BlockSystem s = system_of_interval_subgroup(*G, node.subgroup, omega);
    if (seen.insert(s.to_string()).second) out.push_back(std::move(s));
  }
  return out;
}

SubgroupHandle setwise_stabilizer(GroupPtr G, const std::vector<Point>& set) {
  const auto& els = G->elements();
  std::vector<bool> in_set(G->degree(), false);
  for (Point p : set) in_set.at(p) = true;
  Bitset b(els.size());
  for (std::size_t i = 0; i < els.size(); ++i) {
    bool ok = true;
    for (Point p : set)
      if (!in_set[els[i][p]]) {
        ok = false;
        break;
      }
    if (ok) b.set(i);
  }
  return handle_from_bits(std::move(G), std::move(b));
}

}  // namespace crownkit
