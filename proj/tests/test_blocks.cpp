#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "crownkit/catalog.hpp"
#include "crownkit/errors.hpp"
#include "support/oracles.hpp"

using namespace crownkit;

namespace {

BlockSystem parts(Point degree, std::vector<std::vector<Point>> blocks) {
  return BlockSystem::from_blocks(degree, std::move(blocks));
}

std::vector<GroupPtr> transitive_small() {
  std::vector<GroupPtr> out;
  for (const char* name : {"Cyclic(4)", "Cyclic(6)", "Dihedral(4)", "Dihedral(6)", "Sym(3)",
                           "Sym(4)", "Alt(4)", "ElemAbelian(2,2)"})
    out.push_back(builtin_group(name));
  return out;
}

}  // namespace

TEST_CASE("is_block_system") {
  GroupPtr c4 = builtin_group("Cyclic(4)");

  CHECK(is_block_system(*c4, parts(4, {{0}, {1}, {2}, {3}})));
  CHECK(is_block_system(*c4, parts(4, {{0, 1, 2, 3}})));
  CHECK(is_block_system(*c4, parts(4, {{0, 2}, {1, 3}})));
  CHECK_FALSE(is_block_system(*c4, parts(4, {{0, 1}, {2, 3}})));

  CHECK_THROWS_AS(parts(4, {{0, 1}, {1, 2, 3}}), InputError);  // overlap
  CHECK_THROWS_AS(parts(4, {{0, 1}}), InputError);             // not covering
  CHECK(parts(4, {{2, 0}, {3, 1}}).to_string() == "{1,3}{2,4}");
}

TEST_CASE("maximal block systems match the spec examples") {
  SUBCASE("regular C4 has one maximal system") {
    auto systems = maximal_block_systems(builtin_group("Cyclic(4)"), 0);
    REQUIRE(systems.size() == 1);
    CHECK(systems[0].to_string() == "{1,3}{2,4}");
  }
  SUBCASE("D4 on the square has one maximal system through 1") {
    auto systems = maximal_block_systems(builtin_group("Dihedral(4)"), 0);
    REQUIRE(systems.size() == 1);
    CHECK(systems[0].to_string() == "{1,3}{2,4}");
  }
  SUBCASE("natural S4 is primitive: the singleton system") {
    auto systems = maximal_block_systems(builtin_group("Sym(4)"), 0);
    REQUIRE(systems.size() == 1);
    CHECK(systems[0].is_singletons());
    CHECK(maximal_block_systems(builtin_group("Sym(4)"), 0, /*exclude_trivial=*/true).empty());
  }
  CHECK_THROWS_AS(maximal_block_systems(builtin_group("CrownPower(Cyclic(2),2)"), 0),
                  InputError);  // intransitive
}

TEST_CASE("all block systems") {
  CHECK(all_block_systems(builtin_group("Cyclic(4)"), 0).size() == 3);
  CHECK(all_block_systems(builtin_group("Sym(4)"), 0).size() == 2);
  CHECK(all_block_systems(builtin_group("Dihedral(4)"), 0).size() == 3);

  SUBCASE("always contains the singleton and one-block partitions") {
    for (const GroupPtr& g : transitive_small()) {
      bool singleton = false, oneblock = false;
      for (const BlockSystem& s : all_block_systems(g, 0)) {
        CHECK(is_block_system(*g, s));
        singleton |= s.is_singletons();
        oneblock |= s.is_one_block();
      }
      CHECK(singleton);
      CHECK(oneblock);
    }
  }
}

TEST_CASE("correspondence soundness: setwise stabilizer recovers the subgroup") {
  for (const GroupPtr& g : transitive_small()) {
    CAPTURE(g->name());
    SubgroupHandle stab = point_stabilizer(g, 0);
    for (const IntervalNode& node : interval_subgroups(stab)) {
      BlockSystem s = system_of_interval_subgroup(*g, node.subgroup, 0);
      SubgroupHandle back = setwise_stabilizer(g, s.blocks[s.block_of[0]]);
      CHECK(back.bits == node.subgroup.bits);
    }
  }
}

TEST_CASE("maximal system count equals max(G_w, G) and the partition oracle") {
  for (const GroupPtr& g : transitive_small()) {
    CAPTURE(g->name());
    std::uint64_t expected = maximal_overgroups(point_stabilizer(g, 0)).size();
    auto systems = maximal_block_systems(g, 0);
    CHECK(systems.size() == expected);

    std::set<std::string> distinct;
    for (const BlockSystem& s : systems) {
      CHECK(is_block_system(*g, s));
      distinct.insert(s.to_string());
    }
    CHECK(distinct.size() == systems.size());

    if (g->degree() <= 7)
      CHECK(oracles::maximal_system_count_by_partitions(g, 0) == expected);
  }
}

TEST_CASE("count is independent of the base point") {
  for (const GroupPtr& g : transitive_small()) {
    std::uint64_t base = maximal_block_systems(g, 0).size();
    for (Point w = 1; w < g->degree(); ++w)
      CHECK(maximal_block_systems(g, w).size() == base);
  }
}

TEST_CASE("partition enumeration hits the Bell numbers") {
  auto bell = [](Point n) {
    std::uint64_t count = 0;
    oracles::for_each_partition(n, [&](const auto&) { ++count; });
    return count;
  };
  CHECK(bell(1) == 1);
  CHECK(bell(3) == 5);
  CHECK(bell(5) == 52);
  CHECK(bell(7) == 877);
}
