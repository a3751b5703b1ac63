#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "crownkit/catalog.hpp"
#include "crownkit/errors.hpp"
#include "support/oracles.hpp"

using namespace crownkit;

namespace {

Perm cyc(const char* s, Point n) { return Perm::parse_cycles(s, n); }

// A5 x A5 with its two factor chief factors (the paper's standard example
// of equivalent-but-not-isomorphic G-groups).
struct A5Squared {
  GroupPtr G;
  ChiefFactor left, right;
  A5Squared()
      : G(direct_product(builtin_group("Alt(5)"), builtin_group("Alt(5)"))),
        left(make_left()),
        right(make_right()) {}
  ChiefFactor make_left() {
    auto mins = minimal_normal_subgroups(G);
    return make_chief_factor(G, mins[0], trivial_subgroup(G));
  }
  ChiefFactor make_right() {
    auto mins = minimal_normal_subgroups(G);
    return make_chief_factor(G, mins[1], trivial_subgroup(G));
  }
};

}  // namespace

TEST_CASE("iso_search") {
  GroupPtr s4 = builtin_group("Sym(4)");
  CHECK(is_isomorphic(s4, builtin_group("Sym(4)")));
  CHECK_FALSE(is_isomorphic(builtin_group("Cyclic(4)"), builtin_group("ElemAbelian(2,2)")));

  SUBCASE("finds isomorphisms across different realizations") {
    GroupPtr d4 = builtin_group("Dihedral(4)");
    GroupPtr d4_regular = oracles::regular_realization(d4);
    CHECK(d4_regular->degree() == 8);
    auto iso = iso_search(d4, d4_regular);
    REQUIRE(iso.has_value());
    // The element map is a genuine isomorphism.
    for (std::uint32_t x = 0; x < d4->order(); ++x)
      for (std::uint32_t y = 0; y < d4->order(); ++y)
        CHECK(iso->element_map[d4->mult(x, y)] ==
              d4_regular->mult(iso->element_map[x], iso->element_map[y]));
  }

  SUBCASE("distinguishes the two nonabelian groups of order 8") {
    GroupPtr d8 = builtin_group("Dihedral(4)");
    // Quaternion group as a subgroup of S8 (regular realization).
    std::vector<Perm> qgens{cyc("(1 2 3 4)(5 8 7 6)", 8), cyc("(1 5 3 7)(2 6 4 8)", 8)};
    GroupPtr q8 = PermGroup::make(8, qgens, "Q8");
    REQUIRE(q8->order() == 8);
    CHECK_FALSE(is_isomorphic(d8, q8));
  }

  CHECK_FALSE(is_isomorphic(builtin_group("Sym(3)"), builtin_group("Cyclic(6)")));
  CHECK(is_isomorphic(builtin_group("CrownPower(Cyclic(2),2)"),
                      builtin_group("ElemAbelian(2,2)")));
}

TEST_CASE("G-isomorphism of chief factors") {
  SUBCASE("a factor is G-isomorphic to itself") {
    GroupPtr s4 = builtin_group("Sym(4)");
    ChiefSeries s = chief_series(s4);
    for (const ChiefFactor& f : s.factors) CHECK(g_isomorphic(f, f));
  }

  SUBCASE("the three minimal normals of C2 x C2 are pairwise G-isomorphic") {
    GroupPtr v4 = builtin_group("ElemAbelian(2,2)");
    auto mins = minimal_normal_subgroups(v4);
    REQUIRE(mins.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        ChiefFactor a = make_chief_factor(v4, mins[i], trivial_subgroup(v4));
        ChiefFactor b = make_chief_factor(v4, mins[j], trivial_subgroup(v4));
        CHECK(g_isomorphic(a, b));
      }
  }

  SUBCASE("the two factors of A5 x A5 are not G-isomorphic but are G-equivalent") {
    A5Squared ex;
    CHECK_FALSE(g_isomorphic(ex.left, ex.right));
    CHECK(g_equivalent(ex.left, ex.right));
  }

  SUBCASE("factors of different orders are neither") {
    GroupPtr s4 = builtin_group("Sym(4)");
    ChiefSeries s = chief_series(s4);
    CHECK_FALSE(g_isomorphic(s.factors[0], s.factors[1]));
    CHECK_FALSE(g_equivalent(s.factors[0], s.factors[1]));
  }
}

TEST_CASE("G-equivalence") {
  SUBCASE("abelian factors: equivalent iff G-isomorphic") {
    for (const char* name : {"ElemAbelian(2,3)", "Cyclic(12)", "Sym(4)", "Dihedral(6)"}) {
      GroupPtr g = builtin_group(name);
      ChiefSeries s0 = chief_series(g, 0);
      ChiefSeries s1 = chief_series(g, 1);
      for (const ChiefFactor& a : s0.factors)
        for (const ChiefFactor& b : s1.factors) {
          if (!a.abelian || !b.abelian) continue;
          CHECK(g_equivalent(a, b) == g_isomorphic(a, b));
        }
    }
  }

  SUBCASE("matches the maximal-subgroup criterion on small groups") {
    for (const char* name : {"Sym(4)", "Dihedral(6)", "Alt(4)", "Cyclic(12)", "ElemAbelian(2,3)",
                             "Sym(3)"}) {
      GroupPtr g = builtin_group(name);
      CAPTURE(name);
      ChiefSeries s0 = chief_series(g, 0);
      ChiefSeries s1 = chief_series(g, 1);
      for (const ChiefFactor& a : s0.factors)
        for (const ChiefFactor& b : s1.factors)
          CHECK(g_equivalent(a, b) == oracles::g_equivalent_by_maximal_criterion(g, a, b));
    }
  }

  SUBCASE("the paper example passes the maximal-subgroup criterion too") {
    // The full maximal list of A5 x A5 is out of reach, but the witness is
    // explicit: the diagonal is maximal and core-free, and G/1 has two
    // minimal normals G-isomorphic to the two factors.
    A5Squared ex;
    GroupPtr a5 = builtin_group("Alt(5)");
    std::vector<Perm> diag_gens;
    for (const Perm& g : a5->generators()) {
      std::vector<Point> img(10);
      for (Point x = 0; x < 5; ++x) {
        img[x] = g[x];
        img[5 + x] = 5 + g[x];
      }
      diag_gens.push_back(Perm(std::move(img)));
    }
    SubgroupHandle diag = handle_from_perms(ex.G, diag_gens);
    CHECK(diag.order == 60);
    CHECK(core_of_subgroup(diag).order == 1);
    CHECK(oracles::is_maximal_direct(ex.G, diag));
    CHECK(g_isomorphic(ex.left, ex.left));
    CHECK(g_isomorphic(ex.right, ex.right));
  }

  SUBCASE("is an equivalence relation on the chief factors") {
    for (const char* name : {"Sym(4)", "Cyclic(12)", "ElemAbelian(2,3)", "Dihedral(6)"}) {
      GroupPtr g = builtin_group(name);
      std::vector<ChiefFactor> fs = chief_series(g, 0).factors;
      for (const ChiefFactor& f : chief_series(g, 1).factors) fs.push_back(f);
      for (const auto& a : fs) {
        CHECK(g_equivalent(a, a));
        for (const auto& b : fs) {
          CHECK(g_equivalent(a, b) == g_equivalent(b, a));
          for (const auto& c : fs)
            if (g_equivalent(a, b) && g_equivalent(b, c)) CHECK(g_equivalent(a, c));
        }
      }
    }
  }
}

TEST_CASE("delta counts") {
  GroupPtr v4 = builtin_group("ElemAbelian(2,2)");
  ChiefFactor a = chief_series(v4).factors[0];
  CHECK(delta_count(v4, a) == 2);

  GroupPtr c4 = builtin_group("Cyclic(4)");
  ChiefSeries s = chief_series(c4);
  CHECK(delta_count(c4, s.factors[1]) == 1);  // bottom factor is Frattini

  GroupPtr s4 = builtin_group("Sym(4)");
  ChiefSeries ss = chief_series(s4);
  CHECK(delta_count(s4, ss.factors[2]) == 1);  // top C2

  SUBCASE("invariant across series seeds") {
    for (const CatalogEntry& e : default_catalog()) {
      GroupPtr g = e.build();
      if (g->order() > 100) continue;
      for (const ChiefFactor& f : chief_series(g, 0).factors) {
        if (f.frattini) continue;
        CHECK(delta_count(g, f, 0) == delta_count(g, f, 1));
      }
    }
  }
}

TEST_CASE("monolithic groups") {
  MonolithicGroup s4 = as_monolithic(builtin_group("Sym(4)"));
  CHECK(s4.socle_handle.order == 4);
  CHECK(s4.socle_is_abelian);
  CHECK(s4.socle_simple_factors.size() == 2);

  MonolithicGroup a5 = as_monolithic(builtin_group("Alt(5)"));
  CHECK(a5.socle_handle.order == 60);
  CHECK_FALSE(a5.socle_is_abelian);
  CHECK(a5.socle_simple_factors.size() == 1);

  CHECK_THROWS_AS(as_monolithic(builtin_group("ElemAbelian(2,2)")), InputError);
  CHECK_THROWS_AS(as_monolithic(builtin_group("Cyclic(4)")), InputError);  // Phi != 1
  CHECK_THROWS_AS(as_monolithic(builtin_group("Cyclic(6)")), InputError);  // two minimal normals
}

TEST_CASE("monolithic_associated") {
  SUBCASE("S4 and its Klein-four factor give the affine S4 again") {
    GroupPtr s4 = builtin_group("Sym(4)");
    ChiefFactor v4 = chief_series(s4).factors[0];
    MonolithicGroup l = monolithic_associated(s4, v4);
    CHECK(l.group->degree() == 4);
    CHECK(l.group->order() == 24);
    CHECK(is_isomorphic(l.group, s4));
  }
  SUBCASE("abelian group: L_A is the factor itself") {
    GroupPtr c2 = builtin_group("Cyclic(2)");
    ChiefFactor f = chief_series(c2).factors[0];
    MonolithicGroup l = monolithic_associated(c2, f);
    CHECK(l.group->order() == 2);
  }
  SUBCASE("A5 x A5 factor: L_A is A5") {
    A5Squared ex;
    MonolithicGroup l = monolithic_associated(ex.G, ex.left);
    CHECK(l.group->order() == 60);
    CHECK(is_isomorphic(l.group, builtin_group("Alt(5)")));
  }
  SUBCASE("Frattini factors are refused") {
    GroupPtr c4 = builtin_group("Cyclic(4)");
    ChiefFactor bottom = chief_series(c4).factors[0];
    CHECK_THROWS_AS(monolithic_associated(c4, bottom), InputError);
  }
}

TEST_CASE("crown-based powers") {
  MonolithicGroup s4 = as_monolithic(builtin_group("Sym(4)"));
  CHECK(is_isomorphic(crown_based_power(s4, 1), builtin_group("Sym(4)")));
  CHECK(crown_based_power(s4, 2)->order() == 96);

  MonolithicGroup c2 = as_monolithic(builtin_group("Cyclic(2)"));
  GroupPtr c2_3 = crown_based_power(c2, 3);
  CHECK(c2_3->order() == 8);
  CHECK(is_isomorphic(c2_3, builtin_group("ElemAbelian(2,3)")));

  SUBCASE("|L_k| = |soc L|^(k-1) |L|") {
    MonolithicGroup a5 = as_monolithic(builtin_group("Alt(5)"));
    CHECK(crown_based_power(a5, 2)->order() == 3600);
    MonolithicGroup s3 = as_monolithic(builtin_group("Sym(3)"));
    CHECK(crown_based_power(s3, 3)->order() == 9 * 6);
  }

  SUBCASE("minimal normals of a nonabelian-socle power: k of them, equivalent, non-isomorphic") {
    MonolithicGroup a5 = as_monolithic(builtin_group("Alt(5)"));
    GroupPtr l2 = crown_based_power(a5, 2);
    auto mins = minimal_normal_subgroups(l2);
    REQUIRE(mins.size() == 2);
    ChiefFactor f0 = make_chief_factor(l2, mins[0], trivial_subgroup(l2));
    ChiefFactor f1 = make_chief_factor(l2, mins[1], trivial_subgroup(l2));
    CHECK(g_equivalent(f0, f1));
    CHECK_FALSE(g_isomorphic(f0, f1));
  }
}

TEST_CASE("compute_crown") {
  SUBCASE("C2 x C2: R = 1, I = G, delta = 2") {
    GroupPtr v4 = builtin_group("ElemAbelian(2,2)");
    CrownRecord rec = compute_crown(v4, chief_series(v4).factors[0]);
    CHECK(rec.R.order == 1);
    CHECK(rec.I.order == 4);
    CHECK(rec.delta == 2);
    CHECK(rec.members.size() == 3);
  }
  SUBCASE("S4, V4 factor: R = 1, I = V4, delta = 1") {
    GroupPtr s4 = builtin_group("Sym(4)");
    CrownRecord rec = compute_crown(s4, chief_series(s4).factors[0]);
    CHECK(rec.R.order == 1);
    CHECK(rec.I.order == 4);
    CHECK(rec.delta == 1);
    CHECK(rec.members.size() == 1);
    CHECK(rec.members[0].order == 1);
    CHECK(is_normal_in_parent(rec.R));
    CHECK(is_normal_in_parent(rec.I));
    CHECK(rec.R.bits.subset_of(rec.I.bits));
  }
  SUBCASE("S4, top factor: L_A = C2, N_A = {A4}, R = A4, I = S4") {
    GroupPtr s4 = builtin_group("Sym(4)");
    CrownRecord rec = compute_crown(s4, chief_series(s4).factors[2]);
    CHECK(rec.monolithic.group->order() == 2);
    CHECK(rec.R.order == 12);
    CHECK(rec.I.order == 24);
    REQUIRE(rec.members.size() == 1);
    CHECK(rec.members[0].order == 12);
  }
  SUBCASE("crown reconstruction holds for small-catalog factor classes") {
    for (const char* name : {"Cyclic(6)", "Dihedral(6)", "Alt(4)", "AGL(1,5)"}) {
      GroupPtr g = (std::string(name) == "AGL(1,5)")
                       ? PermGroup::make(5,
                                         {cyc("(1 2 3 4 5)", 5), cyc("(2 3 5 4)", 5)},
                                         "AGL(1,5)")
                       : builtin_group(name);
      CAPTURE(name);
      for (const ChiefFactor& f : chief_series(g).factors) {
        if (f.frattini) continue;
        CrownRecord rec = compute_crown(g, f);  // postcondition checked inside
        GroupHom q = coset_action(g, rec.R);
        CHECK(is_isomorphic(q.target, crown_based_power(rec.monolithic, rec.delta)));
      }
    }
  }
}

TEST_CASE("strip decompositions") {
  GroupPtr a5 = builtin_group("Alt(5)");
  std::vector<GroupPtr> factors{a5, a5};
  GroupPtr p = direct_product(a5, a5);

  auto embed_pair = [&](const Perm& x, const Perm& y) {
    std::vector<Point> img(10);
    for (Point i = 0; i < 5; ++i) {
      img[i] = x[i];
      img[5 + i] = 5 + y[i];
    }
    return Perm(std::move(img));
  };

  SUBCASE("full diagonal: one strip with support {0,1}") {
    std::vector<Perm> gens;
    for (const Perm& g : a5->generators()) gens.push_back(embed_pair(g, g));
    StripDecomposition d = strip_decomposition(factors, handle_from_perms(p, gens));
    CHECK(d.is_subdirect);
    REQUIRE(d.strips.size() == 1);
    CHECK(d.strips[0].support == std::vector<unsigned>{0, 1});
    CHECK(d.strips[0].subgroup.order == 60);
  }

  SUBCASE("A5 x 1: one full strip with support {0}") {
    std::vector<Perm> gens;
    for (const Perm& g : a5->generators()) gens.push_back(embed_pair(g, Perm(5)));
    StripDecomposition d = strip_decomposition(factors, handle_from_perms(p, gens));
    CHECK_FALSE(d.is_subdirect);
    REQUIRE(d.strips.size() == 1);
    CHECK(d.strips[0].support == std::vector<unsigned>{0});
    CHECK(d.strips[0].subgroup.order == 60);
  }

  SUBCASE("twisted diagonal by an outer automorphism: one full strip") {
    Perm t = cyc("(1 2)", 5);  // conjugation by a transposition is outer on A5
    std::vector<Perm> gens;
    for (const Perm& g : a5->generators())
      gens.push_back(embed_pair(g, t.inverse() * g * t));
    StripDecomposition d = strip_decomposition(factors, handle_from_perms(p, gens));
    CHECK(d.is_subdirect);
    REQUIRE(d.strips.size() == 1);
    CHECK(d.strips[0].support == std::vector<unsigned>{0, 1});
  }

  SUBCASE("the full product splits into two strips") {
    StripDecomposition d = strip_decomposition(factors, full_subgroup(p));
    CHECK(d.is_subdirect);
    REQUIRE(d.strips.size() == 2);
    std::uint64_t product = 1;
    for (const Strip& s : d.strips) product *= s.subgroup.order;
    CHECK(product == 3600);
  }

  SUBCASE("proper projections yield no strips") {
    SubgroupHandle a4a4 = [&] {
      GroupPtr s = a5;
      SubgroupHandle stab = point_stabilizer(s, 0);
      std::vector<Perm> gens;
      for (const Perm& g : stab.generator_perms()) {
        gens.push_back(embed_pair(g, Perm(5)));
        gens.push_back(embed_pair(Perm(5), g));
      }
      return handle_from_perms(p, gens);
    }();
    CHECK(a4a4.order == 144);
    StripDecomposition d = strip_decomposition(factors, a4a4);
    CHECK_FALSE(d.is_subdirect);
    CHECK(d.strips.empty());
    CHECK(d.projection_orders == std::vector<std::uint64_t>{12, 12});
  }

  SUBCASE("the trivial subgroup yields no strips") {
    StripDecomposition d = strip_decomposition(factors, trivial_subgroup(p));
    CHECK_FALSE(d.is_subdirect);
    CHECK(d.strips.empty());
  }

  SUBCASE("factors must be nonabelian simple") {
    GroupPtr c3 = builtin_group("Cyclic(3)");
    GroupPtr pp = direct_product(c3, c3);
    CHECK_THROWS_AS(strip_decomposition({c3, c3}, trivial_subgroup(pp)), InputError);
  }
}
