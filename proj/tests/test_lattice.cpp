#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "crownkit/catalog.hpp"
#include "crownkit/errors.hpp"
#include "support/oracles.hpp"

using namespace crownkit;

namespace {
Perm cyc(const char* s, Point n) { return Perm::parse_cycles(s, n); }
}

TEST_CASE("generated subgroups") {
  GroupPtr s4 = builtin_group("Sym(4)");
  CHECK(generated_subgroup(s4, {}).order == 1);
  CHECK(generated_subgroup(s4, {cyc("(1 2)", 4), cyc("(3 4)", 4)}).order == 4);

  std::vector<Perm> a4_and_swap{cyc("(1 2 3)", 4), cyc("(1 2)(3 4)", 4), cyc("(1 2)", 4)};
  CHECK(generated_subgroup(s4, a4_and_swap).order == 24);
  CHECK_THROWS_AS(generated_subgroup(s4, {cyc("(1 2 3 4 5)", 5)}), InputError);

  SUBCASE("parent above the element cap is refused") {
    GroupCaps tight;
    tight.element_cap = 4;
    GroupPtr small = PermGroup::make(4, s4->generators(), "S4", tight);
    CHECK_THROWS_AS(generated_subgroup(small, {cyc("(1 2)", 4)}), CapError);
  }

  // max(G, G) = 0: the whole group has no maximal overgroups.
  CHECK(maximal_overgroups(full_subgroup(s4)).empty());
}

TEST_CASE("maximal overgroups") {
  GroupPtr s4 = builtin_group("Sym(4)");
  auto maxes = maximal_overgroups(trivial_subgroup(s4));
  REQUIRE(maxes.size() == 8);
  std::map<std::uint64_t, int> by_order;
  for (const auto& m : maxes) ++by_order[m.order];
  CHECK(by_order[12] == 1);
  CHECK(by_order[8] == 3);
  CHECK(by_order[6] == 4);

  CHECK(maximal_overgroups(trivial_subgroup(builtin_group("Cyclic(5)"))).size() == 1);
  CHECK(maximal_overgroups(trivial_subgroup(builtin_group("ElemAbelian(2,2)"))).size() == 3);

  SUBCASE("list is sorted by (order, bitset) and every member is tight") {
    SubgroupHandle h = handle_from_perms(s4, {cyc("(1 2)", 4)});
    auto over = maximal_overgroups(h);
    CHECK(over.size() == 3);
    for (std::size_t i = 1; i < over.size(); ++i) CHECK(handle_less(over[i - 1], over[i]));
    for (const auto& m : over) {
      CHECK(h.bits.subset_of(m.bits));
      CHECK(m.order < s4->order());
      CHECK(oracles::is_maximal_direct(s4, m));
    }
  }
}

TEST_CASE("interval BFS agrees with brute-force subgroup enumeration") {
  std::vector<GroupPtr> groups;
  for (const char* name : {"Sym(4)", "Dihedral(4)", "Alt(4)", "Cyclic(12)", "ElemAbelian(2,3)",
                           "Dihedral(6)", "Sym(3)"})
    groups.push_back(builtin_group(name));
  groups.push_back(direct_product(builtin_group("Sym(4)"), builtin_group("Cyclic(2)")));

  for (const GroupPtr& g : groups) {
    CAPTURE(g->name());
    auto nodes = interval_subgroups(trivial_subgroup(g));
    auto brute = oracles::all_subgroups_bruteforce(g);
    REQUIRE(nodes.size() == brute.size());

    std::sort(brute.begin(), brute.end(), [](const Bitset& a, const Bitset& b) {
      if (a.count() != b.count()) return a.count() < b.count();
      return a.lex_less(b);
    });
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      CHECK(nodes[i].subgroup.bits == brute[i]);
      CHECK(nodes[i].maximal_in_parent == oracles::is_maximal_direct(g, nodes[i].subgroup));
    }
  }
}

TEST_CASE("max(H,G) is conjugation invariant") {
  GroupPtr s4 = builtin_group("Sym(4)");
  for (const char* seed : {"(1 2)", "(1 2 3)", "(1 2 3 4)", "(1 2)(3 4)"}) {
    SubgroupHandle h = handle_from_perms(s4, {cyc(seed, 4)});
    std::uint64_t base = maximal_overgroups(h).size();
    for (std::uint32_t g = 0; g < s4->order(); ++g)
      CHECK(maximal_overgroups(conjugate_subgroup(h, g)).size() == base);
  }
}

TEST_CASE("greedy maximal overgroup") {
  GroupPtr s4 = builtin_group("Sym(4)");

  SubgroupHandle a4 = handle_from_perms(s4, {cyc("(1 2 3)", 4), cyc("(1 2)(3 4)", 4)});
  CHECK(greedy_maximal_overgroup(a4).bits == a4.bits);  // already maximal

  SubgroupHandle c3 = handle_from_perms(s4, {cyc("(1 2 3)", 4)});
  SubgroupHandle m = greedy_maximal_overgroup(c3);
  bool found = false;
  for (const auto& mx : maximal_overgroups(c3))
    if (mx.bits == m.bits) found = true;
  CHECK(found);

  GroupPtr c4 = builtin_group("Cyclic(4)");
  CHECK(greedy_maximal_overgroup(trivial_subgroup(c4)).order == 2);
  CHECK_THROWS_AS(greedy_maximal_overgroup(full_subgroup(c4)), InputError);
}

TEST_CASE("frattini subgroups") {
  CHECK(frattini(builtin_group("Sym(4)")).order == 1);
  CHECK(frattini(builtin_group("Cyclic(4)")).order == 2);
  CHECK(frattini(builtin_group("ElemAbelian(2,2)")).order == 1);
  CHECK(frattini(builtin_group("Cyclic(12)")).order == 2);

  SUBCASE("normal and inside every maximal subgroup") {
    for (const char* name : {"Cyclic(8)", "Dihedral(4)", "Sym(4)", "Cyclic(9)"}) {
      GroupPtr g = builtin_group(name);
      SubgroupHandle phi = frattini(g);
      CHECK(is_normal_in_parent(phi));
      for (const auto& m : maximal_overgroups(trivial_subgroup(g)))
        CHECK(phi.bits.subset_of(m.bits));
    }
  }
}

TEST_CASE("normal subgroup enumeration") {
  GroupPtr s4 = builtin_group("Sym(4)");
  auto normals = normal_subgroups(s4);
  REQUIRE(normals.size() == 4);
  CHECK(normals[0].order == 1);
  CHECK(normals[1].order == 4);
  CHECK(normals[2].order == 12);
  CHECK(normals[3].order == 24);

  CHECK(normal_subgroups(builtin_group("ElemAbelian(2,2)")).size() == 5);
  CHECK(normal_subgroups(builtin_group("Alt(5)")).size() == 2);

  SUBCASE("closed under intersection and join, conjugation invariant") {
    for (const char* name : {"Sym(4)", "Dihedral(6)", "ElemAbelian(2,3)", "Alt(4)"}) {
      GroupPtr g = builtin_group(name);
      auto ns = normal_subgroups(g);
      auto find = [&](const Bitset& b) {
        for (const auto& n : ns)
          if (n.bits == b) return true;
        return false;
      };
      for (const auto& a : ns) {
        CHECK(is_normal_in_parent(a));
        for (const auto& b : ns) {
          CHECK(find((a.bits & b.bits)));
          CHECK(find(join(a, b).bits));
        }
      }
    }
  }
}

TEST_CASE("minimal normal subgroups and socle") {
  GroupPtr s4 = builtin_group("Sym(4)");
  auto mins = minimal_normal_subgroups(s4);
  REQUIRE(mins.size() == 1);
  CHECK(mins[0].order == 4);
  CHECK(socle(s4).order == 4);

  CHECK(minimal_normal_subgroups(builtin_group("ElemAbelian(2,2)")).size() == 3);
  CHECK(socle(builtin_group("ElemAbelian(2,2)")).order == 4);
  CHECK(socle(builtin_group("Alt(5)")).order == 60);

  SUBCASE("the two direct factors of A5 x A5") {
    GroupPtr p = direct_product(builtin_group("Alt(5)"), builtin_group("Alt(5)"));
    auto m2 = minimal_normal_subgroups(p);
    REQUIRE(m2.size() == 2);
    CHECK(m2[0].order == 60);
    CHECK(m2[1].order == 60);
    CHECK((m2[0].bits & m2[1].bits).count() == 1);
  }

  CHECK_THROWS_AS(minimal_normal_subgroups(PermGroup::make(1, {})), InputError);
}

TEST_CASE("chief series") {
  auto orders = [](const ChiefSeries& s) {
    std::vector<std::uint64_t> out;
    for (const auto& f : s.factors) out.push_back(f.size);
    return out;
  };

  CHECK(orders(chief_series(builtin_group("Sym(4)"))) ==
        std::vector<std::uint64_t>{4, 3, 2});
  CHECK(orders(chief_series(builtin_group("Cyclic(4)"))) == std::vector<std::uint64_t>{2, 2});
  CHECK(orders(chief_series(builtin_group("Alt(5)"))) == std::vector<std::uint64_t>{60});

  SUBCASE("chains correctly and factor multiset is seed independent") {
    for (const char* name : {"Sym(4)", "Cyclic(12)", "ElemAbelian(2,3)", "Dihedral(6)"}) {
      GroupPtr g = builtin_group(name);
      ChiefSeries s0 = chief_series(g, 0);
      CHECK(s0.factors.front().lower.order == 1);
      CHECK(s0.factors.back().upper.order == g->order());
      for (std::size_t i = 1; i < s0.factors.size(); ++i)
        CHECK(s0.factors[i].lower.bits == s0.factors[i - 1].upper.bits);

      auto m0 = orders(s0);
      auto m1 = orders(chief_series(g, 1));
      std::sort(m0.begin(), m0.end());
      std::sort(m1.begin(), m1.end());
      CHECK(m0 == m1);
    }
  }
}

TEST_CASE("frattini chief factors") {
  GroupPtr c4 = builtin_group("Cyclic(4)");
  ChiefSeries s = chief_series(c4);
  CHECK(s.factors[0].frattini);       // the bottom C2 is Phi(C4)
  CHECK_FALSE(s.factors[1].frattini); // the top factor is complement-free upward

  GroupPtr s4 = builtin_group("Sym(4)");
  for (const ChiefFactor& f : chief_series(s4).factors) CHECK_FALSE(f.frattini);

  GroupPtr a5 = builtin_group("Alt(5)");
  CHECK_FALSE(chief_series(a5).factors[0].frattini);  // nonabelian, never Frattini
}

TEST_CASE("subgroup classes") {
  GroupPtr s4 = builtin_group("Sym(4)");
  GroupLattice lat = build_lattice(s4);
  CHECK(lat.nodes.size() == 30);
  auto classes = subgroup_classes(lat);
  CHECK(classes.size() == 11);  // S4 has 11 conjugacy classes of subgroups

  SUBCASE("lattice query matches direct interval BFS") {
    for (const IntervalNode& node : lat.nodes) {
      if (node.subgroup.order == s4->order()) continue;
      CHECK(lat.count_maximal_over(node.subgroup.bits) ==
            maximal_overgroups(node.subgroup).size());
    }
  }
}

TEST_CASE("interval cap raises a loud error") {
  GroupPtr g = builtin_group("ElemAbelian(2,3)");
  IntervalOptions tight;
  tight.node_cap = 3;
  CHECK_THROWS_AS(interval_subgroups(trivial_subgroup(g), tight), CapError);
}
