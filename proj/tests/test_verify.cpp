#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "crownkit/errors.hpp"
#include "crownkit/verify.hpp"
#include "support/oracles.hpp"

using namespace crownkit;

namespace {

const BoundRow* find_row(const VerifyReport& r, const std::string& group,
                         const std::string& hdesc) {
  for (const BoundRow& row : r.rows)
    if (row.group == group && row.hdesc == hdesc) return &row;
  return nullptr;
}

VerifyReport run_on(const std::string& names, std::set<std::string> suites) {
  VerifyOptions opts;
  opts.suites = std::move(suites);
  return run_verify(catalog_from_names(names), opts);
}

}  // namespace

TEST_CASE("catalog loading") {
  SUBCASE("builtin names") {
    CHECK(builtin_group("Sym(4)")->order() == 24);
    CHECK(builtin_group("Alt(5)")->order() == 60);
    CHECK(builtin_group("Cyclic(6)")->order() == 6);
    CHECK(builtin_group("Dihedral(5)")->order() == 10);
    CHECK(builtin_group("ElemAbelian(3,2)")->order() == 9);
    CHECK(builtin_group("ElemAbelian(3,2)")->degree() == 9);
    CHECK(builtin_group("CrownPower(Sym(4),2)")->order() == 96);
    CHECK_THROWS_AS(builtin_group("Monster(1)"), InputError);
    CHECK_THROWS_AS(builtin_group("ElemAbelian(4,2)"), InputError);  // 4 is not prime
  }

  SUBCASE("JSON lines files") {
    std::string path = "/tmp/crownkit_test_catalog.jsonl";
    {
      std::ofstream out(path);
      out << "# comment line\n";
      out << R"({"name":"C4","degree":4,"generators":[[1,2,3,0]]})" << "\n";
      out << "\n";
      out << R"({"name":"V4","degree":4,"generators":[[1,0,3,2],[2,3,0,1]],"tags":["soluble-expected"]})"
          << "\n";
    }
    auto entries = load_catalog(path);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].build()->order() == 4);
    CHECK(entries[1].build()->order() == 4);
    CHECK(entries[1].tags.count("soluble-expected") == 1);
    std::remove(path.c_str());
  }

  SUBCASE("malformed records report the line number") {
    std::string path = "/tmp/crownkit_bad_catalog.jsonl";
    {
      std::ofstream out(path);
      out << R"({"name":"ok","degree":2,"generators":[[1,0]]})" << "\n";
      out << R"({"name":"bad","degree":3,"generators":[[0,0,1]]})" << "\n";
    }
    try {
      load_catalog(path);
      FAIL("expected InputError");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::remove(path.c_str());
  }

  CHECK_THROWS_AS(load_catalog("/nonexistent/nowhere.jsonl"), InputError);
  CHECK_THROWS_AS(catalog_from_names("NotAGroup(3)"), InputError);
}

TEST_CASE("soluble bound rows") {
  VerifyReport r = run_on("Cyclic(2),ElemAbelian(2,2),Sym(4)", {"soluble", "sotto"});
  CHECK(r.violations == 0);

  const BoundRow* c2 = find_row(r, "Cyclic(2)", "()");
  REQUIRE(c2);
  CHECK(c2->max_count == 1);
  CHECK(c2->index == 2);  // equality with |G:H| - 1

  const BoundRow* v4 = find_row(r, "ElemAbelian(2,2)", "()");
  REQUIRE(v4);
  CHECK(v4->max_count == 3);
  CHECK(v4->index == 4);

  SUBCASE("S4 with H = <(1 2)>: three maximal overgroups at index 12") {
    GroupPtr s4 = builtin_group("Sym(4)");
    SubgroupHandle h = handle_from_perms(s4, {Perm::parse_cycles("(1 2)", 4)});
    const BoundRow* row = find_row(r, "Sym(4)", h.describe());
    REQUIRE(row);
    CHECK(row->index == 12);
    CHECK(row->max_count == 3);
    CHECK(row->verdict == "pass");
  }

  SUBCASE("every soluble row respects the bound") {
    for (const BoundRow& row : r.rows)
      if (row.soluble) CHECK(row.max_count <= row.index - 1);
  }
}

TEST_CASE("ratio rows") {
  VerifyReport r = run_on("Cyclic(2),ElemAbelian(2,2),Sym(4)", {"ratio"});
  CHECK(find_row(r, "ElemAbelian(2,2)", "()")->ratio == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(find_row(r, "Sym(4)", "()")->ratio ==
        doctest::Approx(8.0 / std::pow(24.0, 1.5)).epsilon(1e-12));
  CHECK(find_row(r, "Cyclic(2)", "()")->ratio ==
        doctest::Approx(1.0 / std::pow(2.0, 1.5)).epsilon(1e-12));
  CHECK(r.max_ratio == doctest::Approx(0.375));
}

TEST_CASE("sigma/rho split") {
  VerifyReport r = run_on("ElemAbelian(2,2),Sym(4),Cyclic(6)", {"soluble", "sotto"});
  CHECK(r.violations == 0);

  const BoundRow* v4 = find_row(r, "ElemAbelian(2,2)", "()");
  REQUIRE(v4);
  CHECK(v4->sigma == 0);  // D = G: no proper maximal contains it
  CHECK(v4->rho == 3);

  const BoundRow* s4 = find_row(r, "Sym(4)", "()");
  REQUIRE(s4);
  CHECK(s4->sigma == 4);  // A4 and the three order-8 subgroups contain D = V4
  CHECK(s4->rho == 4);    // the four point stabilizers do not

  SUBCASE("sigma + rho = max whenever the split was computed") {
    for (const BoundRow& row : r.rows) {
      if (row.sigma < 0) continue;
      CHECK(row.sigma + row.rho == static_cast<std::int64_t>(row.max_count));
    }
  }

  SUBCASE("H maximal: sigma + rho = 1") {
    GroupPtr s4g = builtin_group("Sym(4)");
    SubgroupHandle a4 = handle_from_perms(
        s4g, {Perm::parse_cycles("(1 2 3)", 4), Perm::parse_cycles("(1 2)(3 4)", 4)});
    const BoundRow* row = find_row(r, "Sym(4)", a4.describe());
    REQUIRE(row);
    CHECK(row->max_count == 1);
    CHECK(row->sigma + row->rho == 1);
  }
}

TEST_CASE("the section reductions preserve max(H,G)") {
  for (const char* name : {"Sym(4)", "Cyclic(12)", "Dihedral(6)", "Alt(4)", "ElemAbelian(2,3)",
                           "CrownPower(Sym(4),2)"}) {
    GroupPtr g = builtin_group(name);
    CAPTURE(name);
    GroupLattice lat = build_lattice(g);

    for (const IntervalNode& node : lat.nodes) {
      const SubgroupHandle& h = node.subgroup;
      if (h.order == g->order()) continue;
      std::uint64_t expected = lat.count_maximal_over(h.bits);

      // max(H, G) = max(H~, G) with H~ the intersection of the maximals over H.
      Bitset h_tilde = lat.intersection_of_maximal_over(h.bits);
      CHECK(lat.count_maximal_over(h_tilde) == expected);

      // max(H, G) = max(H/N, G/N) for every normal N inside H.
      for (const SubgroupHandle& n : normal_subgroups(g)) {
        if (n.order == 1 || !n.bits.subset_of(h.bits)) continue;
        GroupHom q = coset_action(g, n);
        if (q.target->order() == 1) continue;
        SubgroupHandle h_img = handle_from_bits(q.target, q.image_of_subgroup(h.bits));
        CHECK(maximal_overgroups(h_img).size() == expected);
      }
    }
  }
}

TEST_CASE("sotto properties") {
  LemmaResult s4 = check_sotto_properties(builtin_group("Sym(4)"));
  CHECK(s4.pass);
  LemmaResult v4 = check_sotto_properties(builtin_group("ElemAbelian(2,2)"));
  CHECK(v4.pass);
  LemmaResult c6 = check_sotto_properties(builtin_group("Cyclic(6)"));
  CHECK(c6.pass);
  LemmaResult c4 = check_sotto_properties(builtin_group("Cyclic(4)"));
  CHECK(c4.skipped);  // Phi(C4) != 1

  SUBCASE("witness matches the expected S4 decomposition") {
    auto w = sotto_decomposition(builtin_group("Sym(4)"));
    REQUIRE(w.has_value());
    CHECK(w->crown.R.order == 1);
    CHECK(w->crown.I.order == 4);
    CHECK(w->D.order == 4);
  }
  SUBCASE("C6: R = C3, I = G, D = C2") {
    auto w = sotto_decomposition(builtin_group("Cyclic(6)"));
    REQUIRE(w.has_value());
    CHECK(w->crown.R.order == 3);
    CHECK(w->crown.I.order == 6);
    CHECK(w->D.order == 2);
  }
}

TEST_CASE("lemma harness on the canonical instances") {
  MonolithicGroup a5 = as_monolithic(builtin_group("Alt(5)"));
  MonolithicGroup s4 = as_monolithic(builtin_group("Sym(4)"));

  LemmaResult cs1 = check_lemma_crown_socle(a5, 1);
  CHECK(cs1.pass);
  CHECK(cs1.detail.find("equality witnessed") != std::string::npos);
  LemmaResult cs2 = check_lemma_crown_socle(a5, 2);
  CHECK(cs2.pass);
  CHECK(cs2.detail.find("equality witnessed") != std::string::npos);
  CHECK(check_lemma_crown_socle(s4, 2).skipped);  // abelian socle

  CHECK(check_lemma_normal_dichotomy(s4, 2).pass);
  CHECK(check_lemma_normal_dichotomy(a5, 2).pass);
  CHECK(check_case1_claim(a5, 1).pass);
  CHECK(check_case1_claim(a5, 2).pass);
}

TEST_CASE("report output") {
  VerifyReport r = run_on("Cyclic(2),ElemAbelian(2,2)", {"soluble", "ratio", "sotto"});

  SUBCASE("TSV header and determinism") {
    std::string tsv = r.to_tsv();
    CHECK(tsv.rfind("group\tH\tindex\tmax_count\tsigma\trho\tratio\tsoluble\tverdict\n", 0) == 0);
    VerifyReport again = run_on("Cyclic(2),ElemAbelian(2,2)", {"soluble", "ratio", "sotto"});
    CHECK(r.to_tsv() == again.to_tsv());
    CHECK(r.to_json() == again.to_json());
  }

  SUBCASE("rows are sorted by (group, H)") {
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
      const BoundRow& a = r.rows[i - 1];
      const BoundRow& b = r.rows[i];
      CHECK((a.group < b.group || (a.group == b.group && a.hdesc < b.hdesc)));
    }
  }

  SUBCASE("jobs > 1 folds to the identical report") {
    VerifyOptions opts;
    opts.suites = {"soluble", "ratio", "sotto"};
    opts.jobs = 4;
    VerifyReport parallel =
        run_verify(catalog_from_names("Cyclic(2),ElemAbelian(2,2)"), opts);
    CHECK(parallel.to_json() == r.to_json());
  }

  CHECK(r.exit_code() == 0);
}

TEST_CASE("strict soluble mode rejects insoluble entries") {
  VerifyOptions opts;
  opts.suites = {"soluble"};
  opts.strict_soluble = true;
  CHECK_THROWS_AS(run_verify(catalog_from_names("Alt(5)"), opts), InputError);
}

TEST_CASE("max-order filter") {
  VerifyOptions opts;
  opts.suites = {"ratio"};
  opts.max_order = 10;
  VerifyReport r = run_verify(catalog_from_names("Cyclic(2),Sym(4)"), opts);
  CHECK(find_row(r, "Cyclic(2)", "()"));
  CHECK_FALSE(find_row(r, "Sym(4)", "()"));
}
