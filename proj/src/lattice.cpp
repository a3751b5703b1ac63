#include "crownkit/lattice.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "crownkit/errors.hpp"

namespace crownkit {

namespace {

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

}  // namespace

std::vector<IntervalNode> interval_subgroups(const SubgroupHandle& H, IntervalOptions opts) {
  const GroupPtr& G = H.parent;
  const std::uint64_t whole = G->order();
  const std::uint64_t proper_bound = proper_order_bound(*G);
  const std::size_t n = G->elements().size();

  std::unordered_set<Bitset, BitsetHash> seen;
  std::vector<IntervalNode> nodes;
  std::vector<std::size_t> queue;

  auto push = [&](SubgroupHandle sub) {
    if (seen.insert(sub.bits).second) {
      if (nodes.size() >= opts.node_cap)
        throw CapError("interval [H,G] exceeds " + std::to_string(opts.node_cap) +
                       " subgroups");
      nodes.push_back(IntervalNode{std::move(sub), false});
      queue.push_back(nodes.size() - 1);
    }
  };

  SubgroupHandle start = H;
  if (start.witness.empty()) start.witness = start.canonical_generators();
  push(std::move(start));

  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::size_t id = queue[qi];
    const std::uint64_t node_order = nodes[id].subgroup.order;
    if (node_order == whole) continue;

    bool all_extensions_whole = true;
    Bitset covered = nodes[id].subgroup.bits;
    std::vector<std::uint32_t> members;
    nodes[id].subgroup.bits.for_each_set(
        [&](std::size_t i) { members.push_back(static_cast<std::uint32_t>(i)); });

    for (std::size_t g = covered.next_clear(0); g < n; g = covered.next_clear(g + 1)) {
      // <K, g'> = <K, g> for any g' in the coset Kg, so mark the coset done.
      for (std::uint32_t m : members) covered.set(G->mult(m, static_cast<std::uint32_t>(g)));

      std::vector<std::uint32_t> gens = nodes[id].subgroup.witness;
      gens.push_back(static_cast<std::uint32_t>(g));
      Closure c = close_indices(*G, gens, proper_bound);
      if (c.hit_limit || c.members.size() == whole) continue;  // extension is all of G

      all_extensions_whole = false;
      SubgroupHandle sub;
      sub.parent = G;
      sub.bits = std::move(c.bits);
      sub.order = c.members.size();
      sub.witness = std::move(gens);
      push(std::move(sub));
    }
    nodes[id].maximal_in_parent = all_extensions_whole && node_order != whole;
  }

  // The whole group is always in the interval.
  {
    SubgroupHandle g_full = full_subgroup(G);
    if (seen.insert(g_full.bits).second) nodes.push_back(IntervalNode{std::move(g_full), false});
  }

  std::sort(nodes.begin(), nodes.end(), [](const IntervalNode& a, const IntervalNode& b) {
    return handle_less(a.subgroup, b.subgroup);
  });
  return nodes;
}

SubgroupHandle generated_subgroup(GroupPtr G, const std::vector<Perm>& S) {
  return handle_from_perms(std::move(G), S);
}

std::vector<SubgroupHandle> maximal_overgroups(const SubgroupHandle& H, IntervalOptions opts) {
  std::vector<SubgroupHandle> out;
  for (IntervalNode& node : interval_subgroups(H, opts))
    if (node.maximal_in_parent) out.push_back(std::move(node.subgroup));
  return out;  // interval_subgroups already sorts by (order, bitset)
}

SubgroupHandle greedy_maximal_overgroup(const SubgroupHandle& K) {
  const GroupPtr& G = K.parent;
  const std::uint64_t whole = G->order();
  if (K.order == whole) throw InputError("greedy maximal overgroup of the whole group");
  const std::uint64_t proper_bound = proper_order_bound(*G);
  const std::size_t n = G->elements().size();

  SubgroupHandle cur = K;
  if (cur.witness.empty()) cur.witness = cur.canonical_generators();
  bool grew = true;
  while (grew) {
    grew = false;
    // Every element of a coset (cur)g yields the same extension, so failed
    // cosets are marked off; the first successful extension is unchanged.
    Bitset covered = cur.bits;
    std::vector<std::uint32_t> members;
    cur.bits.for_each_set(
        [&](std::size_t i) { members.push_back(static_cast<std::uint32_t>(i)); });
    for (std::size_t g = covered.next_clear(0); g < n; g = covered.next_clear(g + 1)) {
      std::vector<std::uint32_t> gens = cur.witness;
      gens.push_back(static_cast<std::uint32_t>(g));
      Closure c = close_indices(*G, gens, proper_bound);
      if (c.hit_limit || c.members.size() == whole) {
        for (std::uint32_t m : members) covered.set(G->mult(m, static_cast<std::uint32_t>(g)));
        continue;
      }
      cur.bits = std::move(c.bits);
      cur.order = c.members.size();
      cur.witness = std::move(gens);
      grew = true;
      break;
    }
  }
  return cur;
}

SubgroupHandle frattini(GroupPtr G) {
  auto maxes = maximal_overgroups(trivial_subgroup(G));
  Bitset acc;
  if (maxes.empty()) {
    return full_subgroup(G);  // trivial group: empty intersection convention
  }
  acc = maxes.front().bits;
  for (std::size_t i = 1; i < maxes.size(); ++i) acc &= maxes[i].bits;
  return handle_from_bits(std::move(G), std::move(acc));
}

namespace {

std::vector<SubgroupHandle> normal_subgroups_impl(GroupPtr G, const SubgroupHandle& within) {
  // Conjugacy classes of `within` under its own elements, normal closures of
  // class representatives inside `within`, then join-closure.
  const PermGroup& P = *G;
  std::vector<std::uint32_t> members;
  within.bits.for_each_set([&](std::size_t i) { members.push_back(static_cast<std::uint32_t>(i)); });
  const auto wgens = within.witness.empty() ? within.canonical_generators() : within.witness;

  // Class representatives.
  Bitset visited(within.bits.size());
  std::vector<std::uint32_t> reps;
  for (std::uint32_t m : members) {
    if (visited.test(m)) continue;
    reps.push_back(m);
    std::vector<std::uint32_t> orbit{m};
    visited.set(m);
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (std::uint32_t g : wgens) {
        std::uint32_t c = P.conj(orbit[head], g);
        if (!visited.test(c)) {
          visited.set(c);
          orbit.push_back(c);
        }
      }
    }
  }

  auto ncl_within = [&](std::vector<std::uint32_t> seeds) -> SubgroupHandle {
    Closure c = close_indices(P, seeds);
    bool stable = false;
    while (!stable) {
      stable = true;
      for (std::uint32_t m : c.members) {
        for (std::uint32_t g : wgens) {
          std::uint32_t cj = P.conj(m, g);
          if (!c.bits.test(cj)) {
            seeds.push_back(cj);
            stable = false;
          }
        }
      }
      if (!stable) c = close_indices(P, seeds);
    }
    SubgroupHandle h;
    h.parent = G;
    h.bits = std::move(c.bits);
    h.order = c.members.size();
    h.witness = std::move(seeds);
    return h;
  };

  std::unordered_set<Bitset, BitsetHash> seen;
  std::vector<SubgroupHandle> normals;
  auto add = [&](SubgroupHandle h) -> bool {
    if (seen.insert(h.bits).second) {
      normals.push_back(std::move(h));
      return true;
    }
    return false;
  };

  add(handle_from_bits(G, [&] {
        Bitset b(within.bits.size());
        b.set(0);
        return b;
      }()));
  for (std::uint32_t r : reps)
    if (r != 0) add(ncl_within({r}));

  // Join closure.
  for (std::size_t i = 0; i < normals.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (normals[j].bits.subset_of(normals[i].bits) ||
          normals[i].bits.subset_of(normals[j].bits))
        continue;
      std::vector<std::uint32_t> seeds = normals[i].witness;
      seeds.insert(seeds.end(), normals[j].witness.begin(), normals[j].witness.end());
      add(ncl_within(std::move(seeds)));
    }
  }

  std::sort(normals.begin(), normals.end(), handle_less);
  return normals;
}

}  // namespace

std::vector<SubgroupHandle> normal_subgroups(GroupPtr G) {
  return normal_subgroups_impl(G, full_subgroup(G));
}

std::vector<SubgroupHandle> normal_subgroups_of(const SubgroupHandle& H) {
  return normal_subgroups_impl(H.parent, H);
}

std::vector<SubgroupHandle> minimal_normal_subgroups(GroupPtr G) {
  if (G->order() == 1) throw InputError("minimal normal subgroups of the trivial group");
  auto normals = normal_subgroups(std::move(G));
  std::vector<SubgroupHandle> out;
  for (const SubgroupHandle& n : normals) {
    if (n.order == 1) continue;
    bool minimal = true;
    for (const SubgroupHandle& m : normals) {
      if (m.order == 1 || m.order >= n.order) continue;
      if (m.bits.subset_of(n.bits)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(n);
  }
  return out;
}

SubgroupHandle socle(GroupPtr G) {
  auto mins = minimal_normal_subgroups(G);
  std::vector<std::uint32_t> gens;
  for (const SubgroupHandle& m : mins)
    gens.insert(gens.end(), m.witness.begin(), m.witness.end());
  return handle_from_indices(std::move(G), gens);
}

std::uint64_t ChiefFactor::element_order(std::uint32_t a) const {
  std::uint64_t ord = 1;
  std::uint32_t x = a;
  while (x != 0) {
    x = mult(x, a);
    ++ord;
  }
  return ord;
}

GroupPtr ChiefFactor::regular_realization() const {
  std::vector<Perm> gens;
  // Right multiplication by a factor generator permutes the factor elements.
  // A generating set: images of the upper subgroup's witnesses.
  std::vector<std::uint32_t> fgens;
  for (std::uint32_t w : upper.witness.empty() ? upper.canonical_generators() : upper.witness) {
    std::uint32_t f = coset_of[w];
    if (f != 0) fgens.push_back(f);
  }
  for (std::uint32_t f : fgens) {
    std::vector<Point> img(size);
    for (std::uint32_t a = 0; a < size; ++a) img[a] = mult(a, f);
    gens.push_back(Perm(std::move(img)));
  }
  return PermGroup::make(static_cast<Point>(size), gens, "factor", parent->caps());
}

ChiefFactor make_chief_factor(GroupPtr G, const SubgroupHandle& X, const SubgroupHandle& Y) {
  ChiefFactor f;
  f.parent = G;
  f.upper = X;
  f.lower = Y;
  f.size = X.order / Y.order;

  const std::size_t n = G->elements().size();
  f.coset_of.assign(n, UINT32_MAX);
  std::vector<std::uint32_t> y_members;
  Y.bits.for_each_set([&](std::size_t i) { y_members.push_back(static_cast<std::uint32_t>(i)); });

  std::uint32_t next_id = 0;
  X.bits.for_each_set([&](std::size_t xi) {
    std::uint32_t x = static_cast<std::uint32_t>(xi);
    if (f.coset_of[x] != UINT32_MAX) return;
    f.reps.push_back(x);
    for (std::uint32_t y : y_members) f.coset_of[G->mult(y, x)] = next_id;
    ++next_id;
  });
  // reps are discovered in ascending element order, so reps[0] is the
  // identity coset and each rep is minimal in its coset.

  for (const Perm& gen : G->generators()) {
    std::uint32_t gi = G->index_of_checked(gen);
    std::vector<std::uint32_t> act(f.size);
    for (std::uint32_t a = 0; a < f.size; ++a) act[a] = f.coset_of[G->conj(f.reps[a], gi)];
    f.action.push_back(std::move(act));
  }

  f.inverse.resize(f.size);
  for (std::uint32_t a = 0; a < f.size; ++a)
    f.inverse[a] = f.coset_of[G->inv(f.reps[a])];

  f.abelian = true;
  for (std::uint32_t a = 0; a < f.size && f.abelian; ++a)
    for (std::uint32_t b = a + 1; b < f.size; ++b)
      if (f.mult(a, b) != f.mult(b, a)) {
        f.abelian = false;
        break;
      }

  f.frattini = is_frattini_factor(f);
  return f;
}

bool is_frattini_factor(const ChiefFactor& F) {
  if (!F.abelian) return false;
  GroupHom q = coset_action(F.parent, F.lower);
  SubgroupHandle phi = frattini(q.target);
  Bitset ximg = q.image_of_subgroup(F.upper.bits);
  return ximg.subset_of(phi.bits);
}

ChiefSeries chief_series(GroupPtr G, std::uint64_t seed) {
  auto normals = normal_subgroups(G);
  ChiefSeries series;
  SplitMix64 rng(seed);

  SubgroupHandle cur = trivial_subgroup(G);
  const std::uint64_t whole = G->order();
  while (cur.order < whole) {
    // Minimal normal overgroups of cur in the normal lattice.
    std::vector<const SubgroupHandle*> candidates;
    for (const SubgroupHandle& nxt : normals) {
      if (nxt.order <= cur.order || !cur.bits.subset_of(nxt.bits)) continue;
      bool minimal = true;
      for (const SubgroupHandle& mid : normals) {
        if (mid.order <= cur.order || mid.order >= nxt.order) continue;
        if (cur.bits.subset_of(mid.bits) && mid.bits.subset_of(nxt.bits)) {
          minimal = false;
          break;
        }
      }
      if (minimal) candidates.push_back(&nxt);
    }
    if (candidates.empty()) throw InternalError("normal lattice has no cover; bug");
    const SubgroupHandle& chosen = *candidates[rng.next() % candidates.size()];
    series.factors.push_back(make_chief_factor(G, chosen, cur));
    cur = chosen;
  }
  return series;
}

std::uint64_t GroupLattice::count_maximal_over(const Bitset& h) const {
  std::uint64_t c = 0;
  for (std::size_t id : maximal_ids)
    if (h.subset_of(nodes[id].subgroup.bits)) ++c;
  return c;
}

std::vector<std::size_t> GroupLattice::maximal_over(const Bitset& h) const {
  std::vector<std::size_t> out;
  for (std::size_t id : maximal_ids)
    if (h.subset_of(nodes[id].subgroup.bits)) out.push_back(id);
  return out;
}

Bitset GroupLattice::intersection_of_maximal_over(const Bitset& h) const {
  Bitset acc;
  bool first = true;
  for (std::size_t id : maximal_ids) {
    if (!h.subset_of(nodes[id].subgroup.bits)) continue;
    if (first) {
      acc = nodes[id].subgroup.bits;
      first = false;
    } else {
      acc &= nodes[id].subgroup.bits;
    }
  }
  if (first) {
    // No maximal subgroup above h means h = G.
    acc = Bitset(group->elements().size());
    for (std::size_t i = 0; i < group->elements().size(); ++i) acc.set(i);
  }
  return acc;
}

GroupLattice build_lattice(GroupPtr G, IntervalOptions opts) {
  GroupLattice lat;
  lat.group = G;
  lat.nodes = interval_subgroups(trivial_subgroup(G), opts);
  for (std::size_t i = 0; i < lat.nodes.size(); ++i)
    if (lat.nodes[i].maximal_in_parent) lat.maximal_ids.push_back(i);
  return lat;
}

std::vector<SubgroupHandle> subgroup_classes(const GroupLattice& lat) {
  const PermGroup& G = *lat.group;
  std::vector<std::uint32_t> g_idx;
  for (const Perm& g : G.generators()) g_idx.push_back(G.index_of_checked(g));

  std::unordered_map<Bitset, std::size_t, BitsetHash> id_of;
  for (std::size_t i = 0; i < lat.nodes.size(); ++i) id_of[lat.nodes[i].subgroup.bits] = i;

  std::vector<bool> visited(lat.nodes.size(), false);
  std::vector<SubgroupHandle> reps;
  for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
    if (visited[i]) continue;
    // Orbit of the subgroup under conjugation; nodes are sorted by
    // (order, bitset), so the first unvisited node is its class minimum.
    std::vector<std::size_t> orbit{i};
    visited[i] = true;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (std::uint32_t g : g_idx) {
        SubgroupHandle c = conjugate_subgroup(lat.nodes[orbit[head]].subgroup, g);
        auto it = id_of.find(c.bits);
        if (it == id_of.end()) throw InternalError("conjugate escaped the lattice");
        if (!visited[it->second]) {
          visited[it->second] = true;
          orbit.push_back(it->second);
        }
      }
    }
    reps.push_back(lat.nodes[i].subgroup);
  }
  return reps;
}

}  // namespace crownkit
