#include "crownkit/subgroup.hpp"

#include <algorithm>

#include "crownkit/errors.hpp"

namespace crownkit {

bool handle_less(const SubgroupHandle& a, const SubgroupHandle& b) {
  if (a.order != b.order) return a.order < b.order;
  return a.bits.lex_less(b.bits);
}

Closure close_indices(const PermGroup& G, std::span<const std::uint32_t> seeds,
                      std::uint64_t limit) {
  const std::size_t n = G.elements().size();
  Closure c;
  c.bits = Bitset(n);
  c.bits.set(0);
  c.members.push_back(0);
  for (std::uint32_t s : seeds) {
    if (!c.bits.test(s)) {
      c.bits.set(s);
      c.members.push_back(s);
    }
  }
  // In a finite group <S> is exactly the set of words over S, so a right-
  // multiplication BFS by the seeds suffices (inverses are powers).
  for (std::size_t head = 0; head < c.members.size(); ++head) {
    std::uint32_t m = c.members[head];
    for (std::uint32_t s : seeds) {
      std::uint32_t t = G.mult(m, s);
      if (!c.bits.test(t)) {
        c.bits.set(t);
        c.members.push_back(t);
        if (limit && c.members.size() > limit) {
          c.hit_limit = true;
          return c;
        }
      }
    }
  }
  return c;
}

std::uint64_t proper_order_bound(const PermGroup& G) {
  std::uint64_t p = G.smallest_prime_divisor();
  return p <= 1 ? 1 : G.order() / p;
}

bool generates_whole(const PermGroup& G, std::span<const std::uint32_t> seeds) {
  Closure c = close_indices(G, seeds, proper_order_bound(G));
  if (c.hit_limit) return true;  // larger than any proper subgroup
  return c.members.size() == G.order();
}

SubgroupHandle handle_from_bits(GroupPtr G, Bitset bits) {
  SubgroupHandle h;
  h.parent = std::move(G);
  h.order = bits.count();
  h.bits = std::move(bits);
  h.witness = h.canonical_generators();
  return h;
}

SubgroupHandle handle_from_indices(GroupPtr G, std::span<const std::uint32_t> gens) {
  Closure c = close_indices(*G, gens);
  SubgroupHandle h;
  h.parent = std::move(G);
  h.bits = std::move(c.bits);
  h.order = c.members.size();
  h.witness.assign(gens.begin(), gens.end());
  return h;
}

SubgroupHandle handle_from_perms(GroupPtr G, const std::vector<Perm>& gens) {
  std::vector<std::uint32_t> idx;
  idx.reserve(gens.size());
  for (const Perm& g : gens) idx.push_back(G->index_of_checked(g));
  return handle_from_indices(std::move(G), idx);
}

SubgroupHandle trivial_subgroup(GroupPtr G) {
  Bitset b(G->elements().size());
  b.set(0);
  SubgroupHandle h;
  h.parent = std::move(G);
  h.bits = std::move(b);
  h.order = 1;
  return h;
}

SubgroupHandle full_subgroup(GroupPtr G) {
  const std::size_t n = G->elements().size();
  Bitset b(n);
  for (std::size_t i = 0; i < n; ++i) b.set(i);
  SubgroupHandle h;
  h.parent = std::move(G);
  h.bits = std::move(b);
  h.order = n;
  std::vector<std::uint32_t> gens;
  for (const Perm& g : h.parent->generators()) gens.push_back(h.parent->index_of_checked(g));
  h.witness = std::move(gens);
  return h;
}

std::vector<std::uint32_t> SubgroupHandle::canonical_generators() const {
  std::vector<std::uint32_t> gens;
  if (order <= 1) return gens;
  Bitset have(bits.size());
  have.set(0);
  std::uint64_t have_count = 1;
  while (have_count < order) {
    std::size_t next = 0;
    for (next = bits.next_set(0); next < bits.size(); next = bits.next_set(next + 1))
      if (!have.test(next)) break;
    gens.push_back(static_cast<std::uint32_t>(next));
    Closure c = close_indices(*parent, gens);
    have = c.bits;
    have_count = c.members.size();
  }
  return gens;
}

std::vector<Perm> SubgroupHandle::generator_perms() const {
  std::vector<Perm> out;
  const auto& gens = witness.empty() ? canonical_generators() : witness;
  for (std::uint32_t i : gens) out.push_back(parent->element(i));
  return out;
}

std::string SubgroupHandle::describe() const {
  auto gens = canonical_generators();
  if (gens.empty()) return "()";
  std::string s;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) s += ',';
    s += parent->element(gens[i]).cycle_string();
  }
  return s;
}

SubgroupHandle conjugate_subgroup(const SubgroupHandle& H, std::uint32_t g) {
  const PermGroup& G = *H.parent;
  Bitset b(H.bits.size());
  H.bits.for_each_set([&](std::size_t i) { b.set(G.conj(static_cast<std::uint32_t>(i), g)); });
  SubgroupHandle out;
  out.parent = H.parent;
  out.bits = std::move(b);
  out.order = H.order;
  for (std::uint32_t w : H.witness) out.witness.push_back(G.conj(w, g));
  return out;
}

bool is_normal_in_parent(const SubgroupHandle& H) {
  const PermGroup& G = *H.parent;
  for (const Perm& gp : G.generators()) {
    std::uint32_t g = G.index_of_checked(gp);
    bool ok = true;
    for (std::uint32_t w : H.witness.empty() ? H.canonical_generators() : H.witness) {
      if (!H.bits.test(G.conj(w, g))) {
        ok = false;
        break;
      }
    }
    if (ok) continue;
    return false;
  }
  return true;
}

SubgroupHandle join(const SubgroupHandle& H, const SubgroupHandle& K) {
  std::vector<std::uint32_t> gens = H.witness.empty() ? H.canonical_generators() : H.witness;
  const auto& kg = K.witness.empty() ? K.canonical_generators() : K.witness;
  gens.insert(gens.end(), kg.begin(), kg.end());
  return handle_from_indices(H.parent, gens);
}

SubgroupHandle intersect(const SubgroupHandle& H, const SubgroupHandle& K) {
  return handle_from_bits(H.parent, H.bits & K.bits);
}

std::uint64_t product_size(const SubgroupHandle& H, const SubgroupHandle& K) {
  std::uint64_t inter = (H.bits & K.bits).count();
  return H.order * K.order / inter;
}

}  // namespace crownkit
