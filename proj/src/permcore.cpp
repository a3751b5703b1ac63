#include "crownkit/permcore.hpp"

#include <algorithm>

#include "crownkit/errors.hpp"

namespace crownkit {

OrbitPartition orbit_partition(const PermGroup& G) {
  OrbitPartition out;
  out.orbits = G.orbits();
  out.transitive = out.orbits.size() == 1;
  return out;
}

SubgroupHandle point_stabilizer(GroupPtr G, Point omega) {
  if (omega >= G->degree()) throw InputError("stabilizer point out of range");
  const auto& els = G->elements();
  Bitset b(els.size());
  for (std::size_t i = 0; i < els.size(); ++i)
    if (els[i][omega] == omega) b.set(i);
  return handle_from_bits(std::move(G), std::move(b));
}

Perm GroupHom::map(const Perm& p) const { return map_index(source->index_of_checked(p)); }

Perm GroupHom::map_index(std::uint32_t i) const {
  if (identity_hom) return source->element(i);
  const Point deg = target->degree();
  std::vector<Point> img(deg);
  for (Point c = 0; c < deg; ++c) img[c] = coset_of[source->mult(coset_rep[c], i)];
  return Perm(std::move(img));
}

std::uint32_t GroupHom::map_to_index(std::uint32_t i) const {
  if (identity_hom) return i;
  return target->index_of_checked(map_index(i));
}

Bitset GroupHom::image_of_subgroup(const Bitset& src) const {
  if (identity_hom) return src;
  Bitset out(target->elements().size());
  src.for_each_set([&](std::size_t i) { out.set(map_to_index(static_cast<std::uint32_t>(i))); });
  return out;
}

Bitset GroupHom::preimage_of_subgroup(const Bitset& tgt) const {
  if (identity_hom) return tgt;
  Bitset out(source->elements().size());
  for (std::uint32_t e = 0; e < source->elements().size(); ++e)
    if (tgt.test(map_to_index(e))) out.set(e);
  return out;
}

SubgroupHandle GroupHom::kernel() const { return handle_from_bits(source, kernel_bits); }

GroupHom coset_action(GroupPtr G, const SubgroupHandle& H) {
  if (H.parent.get() != G.get()) throw InputError("subgroup does not belong to this group");
  const auto& els = G->elements();
  const std::uint32_t n = static_cast<std::uint32_t>(els.size());

  GroupHom hom;
  hom.source = G;

  if (H.order == 1) {
    hom.target = G;
    hom.generator_images = G->generators();
    hom.kernel_bits = Bitset(n);
    hom.kernel_bits.set(0);
    hom.identity_hom = true;
    return hom;
  }

  std::vector<std::uint32_t> coset_of(n, UINT32_MAX);
  std::vector<std::uint32_t> h_members;
  H.bits.for_each_set([&](std::size_t i) { h_members.push_back(static_cast<std::uint32_t>(i)); });

  std::uint32_t n_cosets = 0;
  for (std::uint32_t x = 0; x < n; ++x) {
    if (coset_of[x] != UINT32_MAX) continue;
    for (std::uint32_t h : h_members) coset_of[G->mult(h, x)] = n_cosets;
    ++n_cosets;
  }

  std::vector<std::uint32_t> reps(n_cosets, UINT32_MAX);
  for (std::uint32_t e = 0; e < n; ++e)
    if (reps[coset_of[e]] == UINT32_MAX) reps[coset_of[e]] = e;

  std::vector<Perm> images;
  for (const Perm& gen : G->generators()) {
    std::uint32_t gi = G->index_of_checked(gen);
    std::vector<Point> img(n_cosets);
    for (std::uint32_t c = 0; c < n_cosets; ++c) img[c] = coset_of[G->mult(reps[c], gi)];
    images.push_back(Perm(std::move(img)));
  }

  std::string qname = G->name().empty()
                          ? ""
                          : G->name() + "/#" + std::to_string(H.order);
  hom.target = PermGroup::make(n_cosets, images, std::move(qname), G->caps());
  hom.generator_images = std::move(images);
  hom.coset_of = std::move(coset_of);
  hom.coset_rep = std::move(reps);
  hom.kernel_bits = core_of_subgroup(H).bits;
  return hom;
}

SubgroupHandle normal_closure_indices(GroupPtr G, std::span<const std::uint32_t> seeds) {
  std::vector<std::uint32_t> gens(seeds.begin(), seeds.end());
  std::vector<std::uint32_t> g_idx;
  for (const Perm& g : G->generators()) g_idx.push_back(G->index_of_checked(g));

  Closure c = close_indices(*G, gens);
  // Rounds of: collect every conjugate escaping the current subgroup, add
  // them as generators, re-close. Terminates once conjugation-stable.
  bool stable = false;
  while (!stable) {
    stable = true;
    for (std::uint32_t m : c.members) {
      for (std::uint32_t g : g_idx) {
        std::uint32_t cj = G->conj(m, g);
        if (!c.bits.test(cj)) {
          gens.push_back(cj);
          stable = false;
        }
      }
    }
    if (!stable) c = close_indices(*G, gens);
  }
  SubgroupHandle h;
  h.parent = std::move(G);
  h.bits = std::move(c.bits);
  h.order = c.members.size();
  h.witness = std::move(gens);
  return h;
}

SubgroupHandle normal_closure(GroupPtr G, const std::vector<Perm>& seeds) {
  std::vector<std::uint32_t> idx;
  for (const Perm& p : seeds) idx.push_back(G->index_of_checked(p));
  return normal_closure_indices(std::move(G), idx);
}

SubgroupHandle core_of_subgroup(const SubgroupHandle& M) {
  const PermGroup& G = *M.parent;
  std::vector<std::uint32_t> g_idx;
  for (const Perm& g : G.generators()) g_idx.push_back(G.index_of_checked(g));

  Bitset core = M.bits;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t g : g_idx) {
      Bitset conj(core.size());
      core.for_each_set(
          [&](std::size_t i) { conj.set(G.conj(static_cast<std::uint32_t>(i), g)); });
      Bitset next = core & conj;
      if (!(next == core)) {
        core = std::move(next);
        changed = true;
      }
    }
  }
  return handle_from_bits(M.parent, std::move(core));
}

SubgroupHandle centralizer_of(GroupPtr G, const std::vector<Perm>& S) {
  for (const Perm& s : S)
    if (s.degree() != G->degree()) throw InputError("centralizer argument degree mismatch");
  const auto& els = G->elements();
  Bitset b(els.size());
  for (std::size_t i = 0; i < els.size(); ++i) {
    bool ok = true;
    for (const Perm& s : S) {
      if (!(els[i] * s == s * els[i])) {
        ok = false;
        break;
      }
    }
    if (ok) b.set(i);
  }
  return handle_from_bits(std::move(G), std::move(b));
}

Perm embed_perm(const Perm& p, Point total_degree, Point offset) {
  std::vector<Point> img(total_degree);
  for (Point x = 0; x < total_degree; ++x) img[x] = x;
  for (Point x = 0; x < p.degree(); ++x) img[offset + x] = offset + p[x];
  return Perm(std::move(img));
}

GroupPtr direct_product(const GroupPtr& G, const GroupPtr& H, GroupCaps caps) {
  return direct_product_many({G, H}, caps);
}

GroupPtr direct_product_many(const std::vector<GroupPtr>& factors, GroupCaps caps) {
  Point total = 0;
  for (const auto& f : factors) total += f->degree();
  std::vector<Perm> gens;
  Point offset = 0;
  std::string name;
  for (const auto& f : factors) {
    for (const Perm& g : f->generators()) gens.push_back(embed_perm(g, total, offset));
    offset += f->degree();
    if (!name.empty()) name += "x";
    name += f->name().empty() ? "?" : f->name();
  }
  return PermGroup::make(total, std::move(gens), std::move(name), caps);
}

namespace {

// Normal closure of `seeds` inside <gens>, returned as a generating list.
std::vector<Perm> normal_closure_gens(Point degree, const std::vector<Perm>& gens,
                                      std::vector<Perm> seeds) {
  std::vector<Perm> closure_gens;
  for (Perm& s : seeds)
    if (!s.is_identity()) closure_gens.push_back(std::move(s));
  detail::StabChain chain(degree, closure_gens);
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < closure_gens.size() && !grew; ++i) {
      for (const Perm& g : gens) {
        Perm conj = g.inverse() * closure_gens[i] * g;
        if (!chain.contains(conj)) {
          closure_gens.push_back(conj);
          chain = detail::StabChain(degree, closure_gens);
          grew = true;
          break;
        }
      }
    }
  }
  return closure_gens;
}

}  // namespace

std::vector<Perm> derived_subgroup_generators(Point degree, const std::vector<Perm>& gens) {
  std::vector<Perm> comms;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (i == j) continue;
      Perm c = gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j];
      if (!c.is_identity()) comms.push_back(std::move(c));
    }
  return normal_closure_gens(degree, gens, std::move(comms));
}

bool is_soluble(const PermGroup& G) {
  std::vector<Perm> cur = G.generators();
  std::uint64_t cur_order = G.order();
  while (cur_order > 1) {
    std::vector<Perm> next = derived_subgroup_generators(G.degree(), cur);
    std::uint64_t next_order = next.empty() ? 1 : detail::StabChain(G.degree(), next).order();
    if (next_order == cur_order) return false;  // perfect nontrivial group
    cur = std::move(next);
    cur_order = next_order;
  }
  return true;
}

}  // namespace crownkit
