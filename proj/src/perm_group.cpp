#include "crownkit/perm_group.hpp"

#include <algorithm>
#include <set>
#include <limits>

#include "crownkit/errors.hpp"

namespace crownkit {

namespace detail {

void ChainLevel::rebuild(Point degree) {
  slot.assign(degree, -1);
  orbit.clear();
  trans.clear();
  trans_inv.clear();

  orbit.push_back(beta);
  slot[beta] = 0;
  trans.push_back(Perm(degree));
  trans_inv.push_back(Perm(degree));

  for (std::size_t head = 0; head < orbit.size(); ++head) {
    Point p = orbit[head];
    for (const Perm& g : gens) {
      Point q = g[p];
      if (slot[q] < 0) {
        slot[q] = static_cast<std::int32_t>(orbit.size());
        orbit.push_back(q);
        trans.push_back(trans[head] * g);
        trans_inv.push_back(trans.back().inverse());
      }
    }
  }
}

StabChain::StabChain(Point degree, const std::vector<Perm>& gens) : degree_(degree) {
  std::set<Perm> current;
  for (const Perm& g : gens) {
    if (g.degree() != degree) throw InputError("generator degree mismatch");
    if (!g.is_identity()) current.insert(g);
  }

  while (!current.empty()) {
    ChainLevel lev;
    Point beta = degree;
    for (const Perm& g : current) {
      for (Point x = 0; x < beta; ++x)
        if (g[x] != x) {
          beta = x;
          break;
        }
    }
    lev.beta = beta;
    lev.gens.assign(current.begin(), current.end());
    lev.rebuild(degree_);

    std::set<Perm> next;
    for (std::size_t i = 0; i < lev.orbit.size(); ++i) {
      for (const Perm& g : lev.gens) {
        Point q = g[lev.orbit[i]];
        Perm schreier = lev.trans[i] * g * lev.trans_inv[lev.slot[q]];
        if (!schreier.is_identity()) next.insert(std::move(schreier));
      }
    }
    levels_.push_back(std::move(lev));
    current = std::move(next);
  }
}

bool StabChain::contains(const Perm& p) const {
  Perm h = p;
  for (const ChainLevel& lev : levels_) {
    Point q = h[lev.beta];
    if (q == lev.beta) continue;
    if (lev.slot[q] < 0) return false;
    h = h * lev.trans_inv[lev.slot[q]];
  }
  return h.is_identity();
}

std::uint64_t StabChain::order() const {
  std::uint64_t ord = 1;
  for (const ChainLevel& lev : levels_) {
    std::uint64_t n = lev.orbit.size();
    if (ord > std::numeric_limits<std::uint64_t>::max() / n)
      throw CapError("group order overflows 64 bits");
    ord *= n;
  }
  return ord;
}

void StabChain::enumerate(std::vector<Perm>& out) const {
  out.clear();
  out.push_back(Perm(degree_));
  // Sifting factors g as u_deepest * ... * u_0, so fold transversals from the
  // deepest level outward, appending each level's factor on the right.
  for (std::size_t li = levels_.size(); li-- > 0;) {
    const ChainLevel& lev = levels_[li];
    std::vector<Perm> next;
    next.reserve(out.size() * lev.trans.size());
    for (const Perm& head : out)
      for (const Perm& u : lev.trans) next.push_back(head * u);
    out = std::move(next);
  }
}

}  // namespace detail

GroupPtr PermGroup::make(Point degree, std::vector<Perm> gens, std::string name,
                         GroupCaps caps) {
  if (degree == 0) throw InputError("degree 0 group is not supported");
  if (degree > caps.degree_cap) throw CapError("degree exceeds degree cap");
  for (const Perm& g : gens)
    if (g.degree() != degree) throw InputError("generator degree mismatch");

  auto g = std::shared_ptr<PermGroup>(new PermGroup());
  g->degree_ = degree;
  g->gens_ = std::move(gens);
  g->name_ = std::move(name);
  g->caps_ = caps;
  g->chain_ = detail::StabChain(degree, g->gens_);
  g->order_ = g->chain_.order();

  {
    std::uint64_t n = g->order_;
    if (n == 1) {
      g->smallest_prime_ = 1;
    } else {
      std::uint64_t p = 2;
      while (p * p <= n && n % p != 0) ++p;
      g->smallest_prime_ = (p * p > n) ? n : p;
    }
  }

  if (g->order_ <= caps.element_cap) {
    g->chain_.enumerate(g->elements_);
    std::sort(g->elements_.begin(), g->elements_.end());
    // The identity is lexicographically minimal, so it lands at index 0.

    const std::uint32_t n = static_cast<std::uint32_t>(g->elements_.size());
    g->inverse_.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      Perm inv = g->elements_[i].inverse();
      auto it = std::lower_bound(g->elements_.begin(), g->elements_.end(), inv);
      g->inverse_[i] = static_cast<std::uint32_t>(it - g->elements_.begin());
    }

    if (g->order_ <= caps.mult_table_cap) {
      // t[i][j*s] = t[i][j]*s lets each row be filled along a Cayley BFS of
      // right multiplication, with only one composition per (element, gen).
      std::vector<std::vector<std::uint32_t>> col;  // per generator: x -> x*s
      for (const Perm& gen : g->gens_) {
        std::vector<std::uint32_t> c(n);
        for (std::uint32_t x = 0; x < n; ++x) {
          Perm prod = g->elements_[x] * gen;
          auto it = std::lower_bound(g->elements_.begin(), g->elements_.end(), prod);
          c[x] = static_cast<std::uint32_t>(it - g->elements_.begin());
        }
        col.push_back(std::move(c));
      }
      // BFS tree over element indices: child = parent * gen.
      {
        std::vector<bool> seen(n, false);
        std::vector<std::uint32_t> queue{0};
        seen[0] = true;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> parent(n, {0, 0});
        for (std::size_t head = 0; head < queue.size(); ++head) {
          std::uint32_t j = queue[head];
          for (std::uint32_t s = 0; s < col.size(); ++s) {
            std::uint32_t k = col[s][j];
            if (!seen[k]) {
              seen[k] = true;
              parent[k] = {j, s};
              queue.push_back(k);
            }
          }
        }
        g->mult_table_.resize(std::size_t(n) * n);
        for (std::uint32_t i = 0; i < n; ++i) {
          std::uint16_t* row = g->mult_table_.data() + std::size_t(i) * n;
          row[0] = static_cast<std::uint16_t>(i);
          for (std::size_t head = 1; head < queue.size(); ++head) {
            std::uint32_t k = queue[head];
            row[k] = static_cast<std::uint16_t>(col[parent[k].second][row[parent[k].first]]);
          }
        }
      }
    }

    // Conjugacy classes by orbit closure under generator conjugation.
    std::vector<bool> seen(n, false);
    g->class_size_by_elem_.resize(n);
    std::vector<std::uint32_t> gen_idx;
    for (const Perm& gen : g->gens_) {
      auto it = std::lower_bound(g->elements_.begin(), g->elements_.end(), gen);
      gen_idx.push_back(static_cast<std::uint32_t>(it - g->elements_.begin()));
    }
    for (std::uint32_t i = 0; i < n; ++i) {
      if (seen[i]) continue;
      std::vector<std::uint32_t> cls{i};
      seen[i] = true;
      for (std::size_t head = 0; head < cls.size(); ++head) {
        for (std::uint32_t gi : gen_idx) {
          std::uint32_t c = g->conj(cls[head], gi);
          if (!seen[c]) {
            seen[c] = true;
            cls.push_back(c);
          }
        }
      }
      std::sort(cls.begin(), cls.end());
      g->classes_.push_back(std::move(cls));
    }
    for (const auto& cls : g->classes_)
      for (std::uint32_t e : cls)
        g->class_size_by_elem_[e] = static_cast<std::uint32_t>(cls.size());
  }

  return g;
}

bool PermGroup::contains(const Perm& p) const {
  if (p.degree() != degree_) throw InputError("membership test across degrees");
  return chain_.contains(p);
}

const std::vector<Perm>& PermGroup::elements() const {
  if (elements_.empty())
    throw CapError("group " + (name_.empty() ? std::string("<unnamed>") : name_) +
                   " of order " + std::to_string(order_) +
                   " exceeds the element cap; full element list unavailable");
  return elements_;
}

std::optional<std::uint32_t> PermGroup::index_of(const Perm& p) const {
  const auto& els = elements();
  auto it = std::lower_bound(els.begin(), els.end(), p);
  if (it == els.end() || !(*it == p)) return std::nullopt;
  return static_cast<std::uint32_t>(it - els.begin());
}

std::uint32_t PermGroup::index_of_checked(const Perm& p) const {
  auto idx = index_of(p);
  if (!idx) throw InputError("permutation is not an element of " +
                             (name_.empty() ? std::string("the group") : name_));
  return *idx;
}

std::uint32_t PermGroup::mult(std::uint32_t i, std::uint32_t j) const {
  if (!mult_table_.empty()) return mult_table_[std::size_t(i) * elements_.size() + j];
  Perm prod = elements()[i] * elements()[j];
  auto it = std::lower_bound(elements_.begin(), elements_.end(), prod);
  return static_cast<std::uint32_t>(it - elements_.begin());
}

bool PermGroup::is_abelian() const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (!(gens_[i] * gens_[j] == gens_[j] * gens_[i])) return false;
  return true;
}

std::vector<std::vector<Point>> PermGroup::orbits() const {
  std::vector<std::int32_t> which(degree_, -1);
  std::vector<std::vector<Point>> out;
  for (Point p = 0; p < degree_; ++p) {
    if (which[p] >= 0) continue;
    std::vector<Point> orb{p};
    which[p] = static_cast<std::int32_t>(out.size());
    for (std::size_t head = 0; head < orb.size(); ++head) {
      for (const Perm& g : gens_) {
        Point q = g[orb[head]];
        if (which[q] < 0) {
          which[q] = which[p];
          orb.push_back(q);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

bool PermGroup::is_transitive() const { return orbits().size() == 1; }

const std::vector<std::vector<std::uint32_t>>& PermGroup::conjugacy_classes() const {
  if (classes_.empty() && order_ > 1) elements();  // trigger the cap error
  return classes_;
}

std::uint64_t PermGroup::class_size_of(std::uint32_t i) const {
  elements();
  return class_size_by_elem_[i];
}

std::uint64_t PermGroup::smallest_prime_divisor() const { return smallest_prime_; }

std::uint64_t group_order(Point degree, const std::vector<Perm>& gens) {
  if (degree == 0) throw InputError("degree 0 group is not supported");
  return detail::StabChain(degree, gens).order();
}

}  // namespace crownkit
