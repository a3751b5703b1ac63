#include "crownkit/crowns.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "crownkit/errors.hpp"

namespace crownkit {

namespace {

constexpr std::uint32_t kUnset = UINT32_MAX;

/// Extends seed pairs (a -> b) to an injective partial homomorphism by
/// closing under products (all pairs of knowns) and, when supplied, the
/// per-generator conjugation actions. Returns the map and the number of
/// determined source elements, or nullopt on any conflict.
template <typename MultA, typename MultB>
std::optional<std::vector<std::uint32_t>> propagate_hom(
    std::uint32_t n_a, std::uint32_t n_b, MultA&& mult_a, MultB&& mult_b,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& seeds,
    const std::vector<std::vector<std::uint32_t>>* act_a,
    const std::vector<std::vector<std::uint32_t>>* act_b, std::uint32_t* known_count) {
  std::vector<std::uint32_t> map(n_a, kUnset), rmap(n_b, kUnset);
  std::vector<std::uint32_t> knowns;

  auto assign = [&](std::uint32_t x, std::uint32_t y) -> bool {
    if (map[x] != kUnset) return map[x] == y;
    if (rmap[y] != kUnset) return false;
    map[x] = y;
    rmap[y] = x;
    knowns.push_back(x);
    return true;
  };

  if (!assign(0, 0)) return std::nullopt;
  for (auto [x, y] : seeds)
    if (!assign(x, y)) return std::nullopt;

  for (std::size_t head = 0; head < knowns.size(); ++head) {
    std::uint32_t x = knowns[head];
    if (act_a) {
      for (std::size_t t = 0; t < act_a->size(); ++t)
        if (!assign((*act_a)[t][x], (*act_b)[t][map[x]])) return std::nullopt;
    }
    for (std::size_t j = 0; j <= head; ++j) {
      std::uint32_t y = knowns[j];
      if (!assign(mult_a(x, y), mult_b(map[x], map[y]))) return std::nullopt;
      if (!assign(mult_a(y, x), mult_b(map[y], map[x]))) return std::nullopt;
    }
  }
  if (known_count) *known_count = static_cast<std::uint32_t>(knowns.size());
  return map;
}

// Subgroup closure in factor-index space (right multiplication by seeds).
std::vector<std::uint32_t> factor_closure(const ChiefFactor& F,
                                          const std::vector<std::uint32_t>& seeds) {
  std::vector<bool> in(F.size, false);
  std::vector<std::uint32_t> members{0};
  in[0] = true;
  for (std::uint32_t s : seeds)
    if (!in[s]) {
      in[s] = true;
      members.push_back(s);
    }
  for (std::size_t head = 0; head < members.size(); ++head)
    for (std::uint32_t s : seeds) {
      std::uint32_t t = F.mult(members[head], s);
      if (!in[t]) {
        in[t] = true;
        members.push_back(t);
      }
    }
  return members;
}

std::vector<std::uint32_t> factor_generating_sequence(const ChiefFactor& F) {
  std::vector<std::uint32_t> gens;
  std::vector<bool> spanned(F.size, false);
  spanned[0] = true;
  std::uint64_t span_size = 1;
  while (span_size < F.size) {
    std::uint32_t pick = kUnset;
    for (std::uint32_t e = 1; e < F.size; ++e)
      if (!spanned[e]) {
        pick = e;
        break;
      }
    gens.push_back(pick);
    auto members = factor_closure(F, gens);
    std::fill(spanned.begin(), spanned.end(), false);
    for (std::uint32_t m : members) spanned[m] = true;
    span_size = members.size();
  }
  return gens;
}

// Orbit sizes of factor elements under the given index-permutations.
std::vector<std::uint32_t> orbit_sizes_under(const ChiefFactor& F,
                                             const std::vector<std::vector<std::uint32_t>>& maps) {
  std::vector<std::uint32_t> sizes(F.size, 0);
  std::vector<bool> visited(F.size, false);
  for (std::uint32_t e = 0; e < F.size; ++e) {
    if (visited[e]) continue;
    std::vector<std::uint32_t> orb{e};
    visited[e] = true;
    for (std::size_t head = 0; head < orb.size(); ++head)
      for (const auto& m : maps) {
        std::uint32_t t = m[orb[head]];
        if (!visited[t]) {
          visited[t] = true;
          orb.push_back(t);
        }
      }
    for (std::uint32_t m : orb) sizes[m] = static_cast<std::uint32_t>(orb.size());
  }
  return sizes;
}

// Conjugation maps x -> g^-1 x g inside the factor, one per listed element.
std::vector<std::vector<std::uint32_t>> inner_conj_maps(const ChiefFactor& F,
                                                        const std::vector<std::uint32_t>& gens) {
  std::vector<std::vector<std::uint32_t>> maps;
  for (std::uint32_t g : gens) {
    std::vector<std::uint32_t> m(F.size);
    std::uint32_t gi = F.inv(g);
    for (std::uint32_t x = 0; x < F.size; ++x) m[x] = F.mult(F.mult(gi, x), g);
    maps.push_back(std::move(m));
  }
  return maps;
}

// ---- abelian chief factors as F_p modules ---------------------------------

struct ModuleData {
  std::uint32_t p = 0;
  std::uint32_t dim = 0;
  std::vector<std::uint32_t> basis;                 // factor element indices
  std::vector<std::vector<std::uint8_t>> coords;    // per factor element
  std::vector<std::vector<std::uint8_t>> matrices;  // per parent generator (col-major)
};

ModuleData module_of(const ChiefFactor& F) {
  ModuleData md;
  if (F.size < 2) throw InternalError("trivial chief factor has no module structure");
  md.p = static_cast<std::uint32_t>(F.element_order(1));

  const std::uint32_t n = static_cast<std::uint32_t>(F.size);
  std::vector<bool> in_span(n, false);
  in_span[0] = true;
  std::vector<std::uint32_t> span{0};
  md.coords.assign(n, {});

  for (std::uint32_t e = 1; e < n; ++e) {
    if (in_span[e]) continue;
    std::uint32_t j = md.dim++;
    md.basis.push_back(e);
    for (std::uint32_t s : span) md.coords[s].resize(md.dim, 0);

    std::vector<std::uint32_t> old_span = span;
    std::uint32_t power = e;
    for (std::uint32_t t = 1; t < md.p; ++t) {
      for (std::uint32_t s : old_span) {
        std::uint32_t ns = F.mult(s, power);
        if (in_span[ns]) throw InternalError("module span collision; factor not elementary abelian");
        in_span[ns] = true;
        md.coords[ns] = md.coords[s];
        md.coords[ns][j] = static_cast<std::uint8_t>(t);
        span.push_back(ns);
      }
      power = F.mult(power, e);
    }
  }
  if (span.size() != n) throw InternalError("module span did not cover the factor");

  for (const auto& act : F.action) {
    std::vector<std::uint8_t> mat(std::size_t(md.dim) * md.dim, 0);
    for (std::uint32_t j = 0; j < md.dim; ++j) {
      const auto& c = md.coords[act[md.basis[j]]];
      for (std::uint32_t i = 0; i < md.dim; ++i) mat[std::size_t(j) * md.dim + i] = c[i];
    }
    md.matrices.push_back(std::move(mat));
  }
  return md;
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
  std::uint32_t r = 1;
  a %= p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
  }
  return r;
}

// Rank of a dim x dim matrix (col-major) over F_p.
std::uint32_t matrix_rank(std::vector<std::uint8_t> m, std::uint32_t dim, std::uint32_t p) {
  auto at = [&](std::uint32_t row, std::uint32_t col) -> std::uint8_t& {
    return m[std::size_t(col) * dim + row];
  };
  std::uint32_t rank = 0;
  for (std::uint32_t col = 0; col < dim && rank < dim; ++col) {
    std::uint32_t pivot = kUnset;
    for (std::uint32_t row = rank; row < dim; ++row)
      if (at(row, col) % p) {
        pivot = row;
        break;
      }
    if (pivot == kUnset) continue;
    for (std::uint32_t c = 0; c < dim; ++c) std::swap(at(pivot, c), at(rank, c));
    std::uint32_t inv = mod_inv(at(rank, col), p);
    for (std::uint32_t row = 0; row < dim; ++row) {
      if (row == rank) continue;
      std::uint32_t f = at(row, col) % p;
      if (!f) continue;
      std::uint32_t scale = f * inv % p;
      for (std::uint32_t c = 0; c < dim; ++c)
        at(row, c) = static_cast<std::uint8_t>((at(row, c) + p - scale * at(rank, c) % p) % p);
    }
    ++rank;
  }
  return rank;
}

// Null space basis of the row-major system over F_p.
std::vector<std::vector<std::uint8_t>> null_space(std::vector<std::vector<std::uint8_t>> rows,
                                                  std::uint32_t n_cols, std::uint32_t p) {
  std::vector<std::int32_t> pivot_of_col(n_cols, -1);
  std::uint32_t rank = 0;
  for (std::uint32_t col = 0; col < n_cols; ++col) {
    std::uint32_t pivot = kUnset;
    for (std::uint32_t r = rank; r < rows.size(); ++r)
      if (rows[r][col] % p) {
        pivot = r;
        break;
      }
    if (pivot == kUnset) continue;
    std::swap(rows[pivot], rows[rank]);
    std::uint32_t inv = mod_inv(rows[rank][col], p);
    for (auto& v : rows[rank]) v = static_cast<std::uint8_t>(v * inv % p);
    for (std::uint32_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      std::uint32_t f = rows[r][col] % p;
      if (!f) continue;
      for (std::uint32_t c = 0; c < n_cols; ++c)
        rows[r][c] =
            static_cast<std::uint8_t>((rows[r][c] + p - f * rows[rank][c] % p) % p);
    }
    pivot_of_col[col] = static_cast<std::int32_t>(rank);
    ++rank;
  }
  std::vector<std::vector<std::uint8_t>> basis;
  for (std::uint32_t col = 0; col < n_cols; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    std::vector<std::uint8_t> v(n_cols, 0);
    v[col] = 1;
    for (std::uint32_t c2 = 0; c2 < n_cols; ++c2)
      if (pivot_of_col[c2] >= 0)
        v[c2] = static_cast<std::uint8_t>((p - rows[pivot_of_col[c2]][col] % p) % p);
    basis.push_back(std::move(v));
  }
  return basis;
}

bool modules_isomorphic(const ChiefFactor& A, const ChiefFactor& B) {
  ModuleData ma = module_of(A);
  ModuleData mb = module_of(B);
  if (ma.p != mb.p || ma.dim != mb.dim) return false;
  const std::uint32_t p = ma.p, d = ma.dim;

  // Intertwiner system T * Ag = Bg * T; unknowns T flattened col-major,
  // T[i + d*k] = T_{i,k}.
  std::vector<std::vector<std::uint8_t>> rows;
  for (std::size_t g = 0; g < ma.matrices.size(); ++g) {
    const auto& Ag = ma.matrices[g];
    const auto& Bg = mb.matrices[g];
    for (std::uint32_t i = 0; i < d; ++i)
      for (std::uint32_t j = 0; j < d; ++j) {
        std::vector<std::uint8_t> row(std::size_t(d) * d, 0);
        for (std::uint32_t k = 0; k < d; ++k) {
          std::uint32_t idx = i + d * k;  // + T_{i,k} * Ag_{k,j}
          row[idx] = static_cast<std::uint8_t>((row[idx] + Ag[std::size_t(j) * d + k]) % p);
        }
        for (std::uint32_t k = 0; k < d; ++k) {
          std::uint32_t idx = k + d * j;  // - Bg_{i,k} * T_{k,j}
          row[idx] =
              static_cast<std::uint8_t>((row[idx] + p - Bg[std::size_t(k) * d + i] % p) % p);
        }
        rows.push_back(std::move(row));
      }
  }

  auto basis = null_space(std::move(rows), d * d, p);
  if (basis.empty()) return false;

  if (double(basis.size()) * std::log2(double(p)) > 20.0)
    throw CapError("intertwiner space above 2^20; abelian G-isomorphism sweep refused");

  // Deterministic sweep over all nonzero coefficient vectors.
  std::vector<std::uint32_t> coef(basis.size(), 0);
  while (true) {
    std::size_t pos = 0;
    while (pos < coef.size() && coef[pos] == p - 1) coef[pos++] = 0;
    if (pos == coef.size()) break;
    ++coef[pos];

    std::vector<std::uint8_t> T(std::size_t(d) * d, 0);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (!coef[b]) continue;
      for (std::size_t i = 0; i < T.size(); ++i)
        T[i] = static_cast<std::uint8_t>((T[i] + coef[b] * basis[b][i]) % p);
    }
    if (matrix_rank(std::move(T), d, p) == d) return true;
  }
  return false;
}

// Enumerates abstract isomorphisms A -> B (ignoring the G-action), calling
// fn with each full map until fn returns true.
bool for_each_abstract_iso(const ChiefFactor& A, const ChiefFactor& B,
                           const std::function<bool(const std::vector<std::uint32_t>&)>& fn) {
  if (A.size != B.size) return false;
  auto gens_a = factor_generating_sequence(A);
  auto gens_b = factor_generating_sequence(B);
  auto class_a = orbit_sizes_under(A, inner_conj_maps(A, gens_a));
  auto class_b = orbit_sizes_under(B, inner_conj_maps(B, gens_b));

  auto mult_a = [&](std::uint32_t x, std::uint32_t y) { return A.mult(x, y); };
  auto mult_b = [&](std::uint32_t x, std::uint32_t y) { return B.mult(x, y); };
  const std::uint32_t na = static_cast<std::uint32_t>(A.size);
  const std::uint32_t nb = static_cast<std::uint32_t>(B.size);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> assigned;
  std::function<bool(std::size_t)> rec = [&](std::size_t level) -> bool {
    if (level == gens_a.size()) {
      std::uint32_t known = 0;
      auto m = propagate_hom(na, nb, mult_a, mult_b, assigned, nullptr, nullptr, &known);
      if (m && known == na) return fn(*m);
      return false;
    }
    std::uint32_t g = gens_a[level];
    std::uint64_t ord = A.element_order(g);
    for (std::uint32_t b = 1; b < nb; ++b) {
      if (class_b[b] != class_a[g] || B.element_order(b) != ord) continue;
      assigned.emplace_back(g, b);
      auto m = propagate_hom(na, nb, mult_a, mult_b, assigned, nullptr, nullptr, nullptr);
      if (m && rec(level + 1)) return true;
      assigned.pop_back();
    }
    return false;
  };
  return rec(0);
}

}  // namespace

bool g_isomorphic(const ChiefFactor& A, const ChiefFactor& B) {
  if (A.parent.get() != B.parent.get())
    throw InputError("G-isomorphism requires chief factors of the same group");
  if (A.same_factor(B)) return true;
  if (A.size != B.size) return false;
  if (A.abelian != B.abelian) return false;
  if (A.abelian) return modules_isomorphic(A, B);

  if (A.size > 10000) throw CapError("nonabelian chief factor above backtracking cap");

  // G-orbit sizes are invariants of a G-isomorphism; a chief factor is
  // generated by the G-orbit of any nontrivial element, so one seed decides.
  auto sizes_a = orbit_sizes_under(A, A.action);
  auto sizes_b = orbit_sizes_under(B, B.action);

  std::uint32_t a1 = 1;
  std::uint32_t best = kUnset;
  for (std::uint32_t e = 1; e < A.size; ++e)
    if (sizes_a[e] < best) {
      best = sizes_a[e];
      a1 = e;
    }
  std::uint64_t ord_a1 = A.element_order(a1);

  auto mult_a = [&](std::uint32_t x, std::uint32_t y) { return A.mult(x, y); };
  auto mult_b = [&](std::uint32_t x, std::uint32_t y) { return B.mult(x, y); };

  for (std::uint32_t b = 1; b < B.size; ++b) {
    if (sizes_b[b] != best || B.element_order(b) != ord_a1) continue;
    std::uint32_t known = 0;
    auto m = propagate_hom(static_cast<std::uint32_t>(A.size),
                           static_cast<std::uint32_t>(B.size), mult_a, mult_b, {{a1, b}},
                           &A.action, &B.action, &known);
    if (m && known == A.size) return true;
  }
  return false;
}

bool g_equivalent(const ChiefFactor& A, const ChiefFactor& B) {
  if (A.parent.get() != B.parent.get())
    throw InputError("G-equivalence requires chief factors of the same group");
  if (A.same_factor(B)) return true;
  if (A.size != B.size) return false;
  if (A.abelian != B.abelian) return false;
  if (A.abelian) return g_isomorphic(A, B);  // abelian: equivalent iff G-isomorphic
  if (g_isomorphic(A, B)) return true;

  // Commuting-diagram search: an isomorphism phi: A -> B plus tau: G -> B
  // with phi(a^g) = tau(g)^-1 phi(a)^g tau(g) and tau a 1-cocycle. The map
  // (g, a) -> (g, tau(g) phi(a)) is then the required Phi.
  const PermGroup& G = *A.parent;
  const std::uint32_t ng = static_cast<std::uint32_t>(G.elements().size());

  std::vector<std::uint32_t> gen_idx;
  for (const Perm& g : G.generators()) gen_idx.push_back(G.index_of_checked(g));
  auto b_gens = factor_generating_sequence(B);

  return for_each_abstract_iso(A, B, [&](const std::vector<std::uint32_t>& phi) -> bool {
    std::vector<std::uint32_t> phi_inv(B.size);
    for (std::uint32_t x = 0; x < A.size; ++x) phi_inv[phi[x]] = x;

    // Per generator t: conj_tau must equal beta ∘ gamma^-1 where beta is the
    // transported A-action and gamma the B-action. Z(B)=1 makes tau unique.
    std::vector<std::uint32_t> tau(A.action.size(), kUnset);
    for (std::size_t t = 0; t < A.action.size(); ++t) {
      std::vector<std::uint32_t> act_b_inv(B.size);
      for (std::uint32_t x = 0; x < B.size; ++x) act_b_inv[B.action[t][x]] = x;
      auto zeta = [&](std::uint32_t b) { return phi[A.action[t][phi_inv[act_b_inv[b]]]]; };

      for (std::uint32_t c = 0; c < B.size; ++c) {
        std::uint32_t ci = B.inv(c);
        bool ok = true;
        for (std::uint32_t bg : b_gens)
          if (zeta(bg) != B.mult(B.mult(ci, bg), c)) {
            ok = false;
            break;
          }
        for (std::uint32_t x = 0; x < B.size && ok; ++x)
          if (zeta(x) != B.mult(B.mult(ci, x), c)) ok = false;
        if (ok) {
          tau[t] = c;
          break;
        }
      }
      if (tau[t] == kUnset) return false;
    }

    // Cocycle well-definedness over all of G: v(x s_t) = v(x)^{s_t} tau_t.
    std::vector<std::uint32_t> v(ng, kUnset);
    v[0] = 0;
    std::vector<std::uint32_t> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::uint32_t x = queue[head];
      for (std::size_t t = 0; t < gen_idx.size(); ++t) {
        std::uint32_t xs = G.mult(x, gen_idx[t]);
        std::uint32_t val = B.mult(B.action[t][v[x]], tau[t]);
        if (v[xs] == kUnset) {
          v[xs] = val;
          queue.push_back(xs);
        } else if (v[xs] != val) {
          return false;
        }
      }
    }
    return true;
  });
}

unsigned delta_count(GroupPtr G, const ChiefFactor& A, std::uint64_t seed) {
  ChiefSeries series = chief_series(G, seed);
  unsigned count = 0;
  for (const ChiefFactor& F : series.factors)
    if (!F.frattini && g_equivalent(F, A)) ++count;
  return count;
}

MonolithicGroup as_monolithic(GroupPtr G) {
  auto mins = minimal_normal_subgroups(G);
  if (mins.size() != 1)
    throw InputError("group is not monolithic: " + std::to_string(mins.size()) +
                     " minimal normal subgroups");
  MonolithicGroup m;
  m.group = G;
  m.socle_handle = mins.front();

  auto socle_gens = m.socle_handle.generator_perms();
  m.socle_is_abelian = true;
  for (std::size_t i = 0; i < socle_gens.size() && m.socle_is_abelian; ++i)
    for (std::size_t j = i + 1; j < socle_gens.size(); ++j)
      if (!(socle_gens[i] * socle_gens[j] == socle_gens[j] * socle_gens[i])) {
        m.socle_is_abelian = false;
        break;
      }

  if (m.socle_is_abelian) {
    // Primitive iff the socle is complemented iff Phi(G) = 1.
    if (frattini(G).order != 1)
      throw InputError("abelian socle lies inside the Frattini subgroup; group not primitive");
    std::vector<std::uint32_t> basis;
    Bitset span(G->elements().size());
    span.set(0);
    m.socle_handle.bits.for_each_set([&](std::size_t i) {
      if (span.test(i)) return;
      basis.push_back(static_cast<std::uint32_t>(i));
      span = close_indices(*G, basis).bits;
    });
    for (std::uint32_t b : basis) {
      std::vector<std::uint32_t> one{b};
      m.socle_simple_factors.push_back(handle_from_indices(G, one));
    }
  } else {
    // A unique nonabelian minimal normal subgroup forces C_G(soc) = 1, which
    // already yields a core-free maximal subgroup; assert the centralizer.
    if (centralizer_of(G, socle_gens).order != 1)
      throw InternalError("nonabelian socle with nontrivial centralizer");
    auto socle_normals = normal_subgroups_of(m.socle_handle);
    for (const SubgroupHandle& n : socle_normals) {
      if (n.order == 1) continue;
      bool minimal = true;
      for (const SubgroupHandle& k : socle_normals) {
        if (k.order == 1 || k.order >= n.order) continue;
        if (k.bits.subset_of(n.bits)) {
          minimal = false;
          break;
        }
      }
      if (minimal) m.socle_simple_factors.push_back(n);
    }
  }
  return m;
}

MonolithicGroup monolithic_associated(GroupPtr G, const ChiefFactor& A) {
  if (A.frattini)
    throw InputError("Frattini chief factor: associated monolithic group not computed");

  // C_G(A): elements acting trivially on the factor (checked on factor gens).
  auto fgens = factor_generating_sequence(A);
  const std::uint32_t n = static_cast<std::uint32_t>(G->elements().size());
  Bitset cbits(n);
  for (std::uint32_t e = 0; e < n; ++e) {
    bool central = true;
    for (std::uint32_t f : fgens)
      if (A.coset_of[G->conj(A.reps[f], e)] != f) {
        central = false;
        break;
      }
    if (central) cbits.set(e);
  }
  SubgroupHandle C = handle_from_bits(G, std::move(cbits));

  GroupPtr L;
  if (A.abelian) {
    // Affine realization on the |A| elements of A: translations plus the
    // induced G-action, the minimal faithful primitive realization.
    std::vector<Perm> gens;
    for (std::uint32_t f : fgens) {
      std::vector<Point> img(A.size);
      for (std::uint32_t x = 0; x < A.size; ++x) img[x] = A.mult(x, f);
      gens.push_back(Perm(std::move(img)));
    }
    for (const auto& act : A.action) {
      std::vector<Point> img(act.begin(), act.end());
      Perm p(std::move(img));
      if (!p.is_identity()) gens.push_back(std::move(p));
    }
    L = PermGroup::make(static_cast<Point>(A.size), gens,
                        "L[" + std::to_string(A.size) + "]", G->caps());
    std::uint64_t expected = A.size * (G->order() / C.order);
    if (L->order() != expected)
      throw InternalError("affine monolithic realization has wrong order");
  } else {
    // C_G(A) is the kernel of G -> Aut(A), hence normal: the coset action is
    // the regular realization of G/C_G(A).
    GroupHom q = coset_action(G, C);
    L = q.target;
  }

  MonolithicGroup m = as_monolithic(L);
  if (m.socle_handle.order != A.size)
    throw InternalError("monolithic socle does not match the chief factor");
  return m;
}

GroupPtr crown_based_power(const MonolithicGroup& L, unsigned k) {
  if (k == 0) throw InputError("crown-based power needs k >= 1");
  const GroupPtr& base = L.group;
  const Point deg = base->degree();
  const Point total = deg * k;
  if (total > base->caps().degree_cap) throw CapError("crown-based power degree cap exceeded");

  std::vector<Perm> gens;
  for (const Perm& g : base->generators()) {
    std::vector<Point> img(total);
    for (unsigned c = 0; c < k; ++c)
      for (Point x = 0; x < deg; ++x) img[c * deg + x] = c * deg + g[x];
    gens.push_back(Perm(std::move(img)));
  }
  for (const Perm& s : L.socle_handle.generator_perms())
    for (unsigned c = 0; c < k; ++c) gens.push_back(embed_perm(s, total, c * deg));

  std::string name = base->name().empty() ? "L" : base->name();
  GroupPtr out = PermGroup::make(total, std::move(gens),
                                 "(" + name + ")_" + std::to_string(k), base->caps());

  std::uint64_t expected = base->order();
  for (unsigned c = 1; c < k; ++c) expected *= L.socle_handle.order;
  if (out->order() != expected)
    throw InternalError("crown-based power order mismatch: got " + std::to_string(out->order()) +
                        ", expected " + std::to_string(expected));
  return out;
}

CrownRecord compute_crown(GroupPtr G, const ChiefFactor& A) {
  CrownRecord rec;
  rec.factor = A;
  rec.monolithic = monolithic_associated(G, A);
  rec.delta = delta_count(G, A, 0);

  const std::uint64_t l_order = rec.monolithic.group->order();
  for (const SubgroupHandle& N : normal_subgroups(G)) {
    if (G->order() % N.order != 0 || G->order() / N.order != l_order) continue;
    GroupHom q = coset_action(G, N);
    if (!is_isomorphic(q.target, rec.monolithic.group)) continue;
    SubgroupHandle soc_q = socle(q.target);
    Bitset i_bits = q.preimage_of_subgroup(soc_q.bits);
    ChiefFactor soc_factor = make_chief_factor(G, handle_from_bits(G, std::move(i_bits)), N);
    if (g_equivalent(soc_factor, A)) rec.members.push_back(N);
  }
  if (rec.members.empty())
    throw InternalError("no member of N_A found; factor was Frattini or a bug");

  Bitset r_bits = rec.members.front().bits;
  for (std::size_t i = 1; i < rec.members.size(); ++i) r_bits &= rec.members[i].bits;
  rec.R = handle_from_bits(G, std::move(r_bits));

  GroupHom qr = coset_action(G, rec.R);
  SubgroupHandle soc_r = socle(qr.target);
  rec.I = handle_from_bits(G, qr.preimage_of_subgroup(soc_r.bits));

  GroupPtr power = crown_based_power(rec.monolithic, rec.delta);
  if (!is_isomorphic(qr.target, power))
    throw InternalError("G/R is not isomorphic to the crown-based power (L_A)_delta");
  return rec;
}

StripDecomposition strip_decomposition(const std::vector<GroupPtr>& factors,
                                       const SubgroupHandle& X) {
  const GroupPtr& P = X.parent;
  Point total = 0;
  std::uint64_t prod_order = 1;
  std::vector<Point> offset;
  for (const auto& f : factors) {
    offset.push_back(total);
    total += f->degree();
    prod_order *= f->order();
    if (f->order() == 1 || is_soluble(*f)) throw InputError("strip factors must be nonabelian simple");
    if (normal_subgroups(f).size() != 2) throw InputError("strip factor is not simple");
  }
  if (total != P->degree() || prod_order != P->order())
    throw InputError("X's parent is not the direct product of the given factors");

  const unsigned kappa = static_cast<unsigned>(factors.size());
  std::vector<std::uint32_t> members;
  X.bits.for_each_set([&](std::size_t i) { members.push_back(static_cast<std::uint32_t>(i)); });

  auto restrict_to = [&](const Perm& p, unsigned i) {
    std::vector<Point> img(factors[i]->degree());
    for (Point x = 0; x < factors[i]->degree(); ++x) img[x] = p[offset[i] + x] - offset[i];
    return Perm(std::move(img));
  };

  StripDecomposition out;
  out.projection_orders.resize(kappa);
  for (unsigned i = 0; i < kappa; ++i) {
    std::set<Perm> proj;
    for (std::uint32_t m : members) proj.insert(restrict_to(P->element(m), i));
    out.projection_orders[i] = proj.size();
  }

  out.is_subdirect = true;
  for (unsigned i = 0; i < kappa; ++i)
    if (out.projection_orders[i] != factors[i]->order()) out.is_subdirect = false;

  if (X.order == 1) return out;  // strips require X != 1

  std::vector<unsigned> supp;
  for (unsigned i = 0; i < kappa; ++i) {
    if (out.projection_orders[i] == 1) continue;
    if (out.projection_orders[i] != factors[i]->order()) return out;  // proper projection
    supp.push_back(i);
  }

  // Linkage over the support: i ~ j iff the pair projection is a diagonal
  // (Goursat on simple factors leaves only |S| or |S_i||S_j|).
  std::vector<unsigned> comp(kappa, UINT32_MAX);
  for (unsigned s : supp) comp[s] = s;
  std::function<unsigned(unsigned)> find = [&](unsigned x) -> unsigned {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (std::size_t a = 0; a < supp.size(); ++a)
    for (std::size_t b = a + 1; b < supp.size(); ++b) {
      unsigned i = supp[a], j = supp[b];
      std::set<std::vector<Point>> pairs;
      for (std::uint32_t m : members) {
        const Perm& p = P->element(m);
        std::vector<Point> key;
        key.reserve(factors[i]->degree() + factors[j]->degree());
        for (Point x = 0; x < factors[i]->degree(); ++x) key.push_back(p[offset[i] + x]);
        for (Point x = 0; x < factors[j]->degree(); ++x) key.push_back(p[offset[j] + x]);
        pairs.insert(std::move(key));
      }
      if (pairs.size() == factors[i]->order() * factors[j]->order()) continue;
      comp[find(i)] = find(j);
    }

  std::map<unsigned, std::vector<unsigned>> classes;
  for (unsigned s : supp) classes[find(s)].push_back(s);

  std::uint64_t order_product = 1;
  for (auto& [root, cls] : classes) {
    std::sort(cls.begin(), cls.end());
    Bitset tbits(X.bits.size());
    for (std::uint32_t m : members) {
      const Perm& p = P->element(m);
      bool inside = true;
      for (unsigned i = 0; i < kappa && inside; ++i) {
        if (std::find(cls.begin(), cls.end(), i) != cls.end()) continue;
        for (Point x = 0; x < factors[i]->degree(); ++x)
          if (p[offset[i] + x] != offset[i] + x) {
            inside = false;
            break;
          }
      }
      if (inside) tbits.set(m);
    }
    Strip strip;
    strip.support = cls;
    strip.subgroup = handle_from_bits(P, std::move(tbits));
    order_product *= strip.subgroup.order;
    out.strips.push_back(std::move(strip));
  }

  if (order_product != X.order)
    throw InternalError("subdirect subgroup is not a product of full strips (Scott violation)");
  for (const Strip& s : out.strips)
    for (unsigned i : s.support) {
      std::set<Perm> proj;
      s.subgroup.bits.for_each_set([&](std::size_t m) {
        proj.insert(restrict_to(P->element(static_cast<std::uint32_t>(m)), i));
      });
      if (proj.size() != factors[i]->order())
        throw InternalError("strip is not full on its support (Scott violation)");
    }
  return out;
}

std::optional<GroupIso> iso_search(const GroupPtr& G1, const GroupPtr& G2) {
  if (G1->order() > 10000 || G2->order() > 10000)
    throw CapError("iso_search order cap (10000) exceeded");
  if (G1->order() != G2->order()) return std::nullopt;
  const std::uint32_t n = static_cast<std::uint32_t>(G1->order());

  if (n == 1) {
    GroupIso iso;
    iso.element_map = {0};
    for (std::size_t i = 0; i < G1->generators().size(); ++i)
      iso.generator_images.push_back(Perm(G2->degree()));
    return iso;
  }

  auto profile = [](const PermGroup& G) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint32_t> hist;
    for (std::uint32_t i = 0; i < G.order(); ++i)
      ++hist[{G.element_order(i), G.class_size_of(i)}];
    return hist;
  };
  if (profile(*G1) != profile(*G2)) return std::nullopt;
  if (G1->is_abelian() != G2->is_abelian()) return std::nullopt;

  // Greedy generating sequence, smallest classes first to shrink candidates.
  std::vector<std::uint32_t> gens;
  {
    Bitset span(n);
    span.set(0);
    std::uint64_t span_size = 1;
    while (span_size < n) {
      std::uint32_t pick = kUnset;
      std::uint64_t best_cls = UINT64_MAX;
      for (std::uint32_t e = 1; e < n; ++e) {
        if (span.test(e)) continue;
        std::uint64_t cls = G1->class_size_of(e);
        if (cls < best_cls) {
          best_cls = cls;
          pick = e;
        }
      }
      gens.push_back(pick);
      Closure c = close_indices(*G1, gens);
      span = c.bits;
      span_size = c.members.size();
    }
  }

  auto mult1 = [&](std::uint32_t x, std::uint32_t y) { return G1->mult(x, y); };
  auto mult2 = [&](std::uint32_t x, std::uint32_t y) { return G2->mult(x, y); };

  std::vector<std::pair<std::uint32_t, std::uint32_t>> assigned;
  std::vector<std::uint32_t> full_map;

  std::function<bool(std::size_t)> rec = [&](std::size_t level) -> bool {
    std::uint32_t g = gens[level];
    std::uint64_t ord = G1->element_order(g);
    std::uint64_t cls = G1->class_size_of(g);
    for (std::uint32_t h = 1; h < n; ++h) {
      if (G2->element_order(h) != ord || G2->class_size_of(h) != cls) continue;
      bool ok = true;
      for (auto [ga, ha] : assigned) {
        if (G1->element_order(G1->mult(ga, g)) != G2->element_order(G2->mult(ha, h)) ||
            G1->element_order(G1->mult(g, ga)) != G2->element_order(G2->mult(h, ha))) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      assigned.emplace_back(g, h);
      std::uint32_t known = 0;
      auto m = propagate_hom(n, n, mult1, mult2, assigned, nullptr, nullptr, &known);
      if (m) {
        if (level + 1 == gens.size()) {
          if (known == n) {
            full_map = std::move(*m);
            return true;
          }
        } else if (rec(level + 1)) {
          return true;
        }
      }
      assigned.pop_back();
    }
    return false;
  };

  if (!rec(0)) return std::nullopt;

  GroupIso iso;
  iso.element_map = std::move(full_map);
  for (const Perm& g : G1->generators())
    iso.generator_images.push_back(G2->element(iso.element_map[G1->index_of_checked(g)]));
  return iso;
}

bool is_isomorphic(const GroupPtr& G1, const GroupPtr& G2) {
  return iso_search(G1, G2).has_value();
}

}  // namespace crownkit
