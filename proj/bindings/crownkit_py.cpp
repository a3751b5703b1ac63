#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crownkit/errors.hpp"
#include "crownkit/verify.hpp"

namespace py = pybind11;
using namespace crownkit;

namespace {

// Thin holder so the immutable shared group can cross the boundary.
struct PyGroup {
  GroupPtr g;
};

PyGroup make_group(const std::string& name) { return {resolve_group(name)}; }

PyGroup group_from_generators(Point degree, const std::vector<std::vector<Point>>& images,
                              const std::string& name) {
  std::vector<Perm> gens;
  for (const auto& arr : images) gens.push_back(Perm(std::vector<Point>(arr.begin(), arr.end())));
  return {PermGroup::make(degree, std::move(gens), name)};
}

SubgroupHandle subgroup_from_cycles(const PyGroup& G, const std::vector<std::string>& cycles) {
  std::vector<Perm> gens;
  for (const std::string& s : cycles) gens.push_back(Perm::parse_cycles(s, G.g->degree()));
  return gens.empty() ? trivial_subgroup(G.g) : generated_subgroup(G.g, gens);
}

py::list systems_to_py(const std::vector<BlockSystem>& systems) {
  py::list out;
  for (const BlockSystem& s : systems) {
    py::list blocks;
    for (const auto& b : s.blocks) {
      py::list block;
      for (Point p : b) block.append(p + 1);  // 1-based, matching the text format
      blocks.append(block);
    }
    out.append(blocks);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "finite permutation groups: block systems, maximal overgroup counts, crowns";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CapError>(m, "CapError", PyExc_RuntimeError);

  py::class_<Perm>(m, "Perm")
      .def(py::init([](const std::string& cycles, Point degree) {
             return Perm::parse_cycles(cycles, degree);
           }),
           py::arg("cycles"), py::arg("degree"))
      .def(py::init([](const std::vector<Point>& images) { return Perm(images); }),
           py::arg("images"))
      .def_property_readonly("degree", &Perm::degree)
      .def_property_readonly("images", [](const Perm& p) { return p.images(); })
      .def("__mul__", &Perm::operator*)
      .def("inverse", &Perm::inverse)
      .def("order", &Perm::order)
      .def("is_identity", &Perm::is_identity)
      .def("__eq__", [](const Perm& a, const Perm& b) { return a == b; })
      .def("__repr__", [](const Perm& p) { return p.cycle_string(); })
      .def("__str__", [](const Perm& p) { return p.cycle_string(); });

  py::class_<PyGroup>(m, "Group")
      .def_property_readonly("degree", [](const PyGroup& g) { return g.g->degree(); })
      .def_property_readonly("order", [](const PyGroup& g) { return g.g->order(); })
      .def_property_readonly("name", [](const PyGroup& g) { return g.g->name(); })
      .def("contains", [](const PyGroup& g, const Perm& p) { return g.g->contains(p); })
      .def("is_transitive", [](const PyGroup& g) { return g.g->is_transitive(); })
      .def("is_abelian", [](const PyGroup& g) { return g.g->is_abelian(); })
      .def("is_soluble", [](const PyGroup& g) { return is_soluble(*g.g); })
      .def("orbits", [](const PyGroup& g) { return g.g->orbits(); })
      .def("generators",
           [](const PyGroup& g) {
             std::vector<std::string> out;
             for (const Perm& p : g.g->generators()) out.push_back(p.cycle_string());
             return out;
           })
      .def("__repr__", [](const PyGroup& g) {
        return "<Group " + (g.g->name().empty() ? "?" : g.g->name()) + " of order " +
               std::to_string(g.g->order()) + ">";
      });

  m.def("group", &make_group, py::arg("name"),
        "builtin group by name, e.g. Sym(4), CrownPower(Alt(5),2)");
  m.def("group_from_generators", &group_from_generators, py::arg("degree"), py::arg("images"),
        py::arg("name") = "");

  m.def(
      "max_count",
      [](const PyGroup& G, const std::vector<std::string>& subgroup) {
        SubgroupHandle h = subgroup_from_cycles(G, subgroup);
        auto maxes = maximal_overgroups(h);
        std::vector<std::string> witnesses;
        for (const SubgroupHandle& mx : maxes) witnesses.push_back(mx.describe());
        return py::make_tuple(maxes.size(), witnesses);
      },
      py::arg("group"), py::arg("subgroup_generators"),
      "number of maximal subgroups containing <subgroup_generators>, with witnesses");

  m.def(
      "maximal_block_systems",
      [](const PyGroup& G, Point point, bool exclude_trivial) {
        return systems_to_py(maximal_block_systems(G.g, point, exclude_trivial));
      },
      py::arg("group"), py::arg("point") = 0, py::arg("exclude_trivial") = false);

  m.def(
      "all_block_systems",
      [](const PyGroup& G, Point point) { return systems_to_py(all_block_systems(G.g, point)); },
      py::arg("group"), py::arg("point") = 0);

  m.def(
      "chief_factors",
      [](const PyGroup& G) {
        py::list out;
        for (const ChiefFactor& f : chief_series(G.g).factors) {
          py::dict d;
          d["order"] = f.size;
          d["abelian"] = f.abelian;
          d["frattini"] = f.frattini;
          out.append(d);
        }
        return out;
      },
      py::arg("group"));

  m.def(
      "crowns",
      [](const PyGroup& G) {
        py::list out;
        std::vector<ChiefFactor> reps;
        for (const ChiefFactor& f : chief_series(G.g).factors) {
          if (f.frattini) continue;
          bool seen = false;
          for (const ChiefFactor& r : reps)
            if (g_equivalent(r, f)) seen = true;
          if (seen) continue;
          reps.push_back(f);
          CrownRecord rec = compute_crown(G.g, f);
          py::dict d;
          d["factor_order"] = rec.factor.size;
          d["delta"] = rec.delta;
          d["R_order"] = rec.R.order;
          d["I_order"] = rec.I.order;
          d["monolithic_order"] = rec.monolithic.group->order();
          d["members"] = rec.members.size();
          out.append(d);
        }
        return out;
      },
      py::arg("group"));

  m.def("is_isomorphic",
        [](const PyGroup& a, const PyGroup& b) { return is_isomorphic(a.g, b.g); });

  m.def(
      "run_verify",
      [](const std::string& catalog, const std::vector<std::string>& suites,
         std::uint64_t max_order, int jobs) {
        VerifyOptions opts;
        opts.suites = std::set<std::string>(suites.begin(), suites.end());
        opts.max_order = max_order;
        opts.jobs = jobs;
        VerifyReport rep = run_verify(resolve_catalog(catalog), opts);
        py::dict d;
        d["exit_code"] = rep.exit_code();
        d["violations"] = rep.violations;
        d["rows"] = rep.rows.size();
        d["max_ratio"] = rep.max_ratio;
        d["max_ratio_witness"] = rep.max_ratio_witness;
        d["tsv"] = rep.to_tsv();
        d["json"] = rep.to_json();
        return d;
      },
      py::arg("catalog") = "default",
      py::arg("suites") = std::vector<std::string>{"all"}, py::arg("max_order") = 0,
      py::arg("jobs") = 1);
}
