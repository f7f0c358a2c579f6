#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "wcg/commutator.hpp"

#ifdef WCG_ORACLE_TRACE
#include <cstdio>
#endif

namespace wcg {

namespace {

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

// A word belongs to the kernel iff every listed projection reduces to the
// empty word. If some projection deletes only trivial factors it is the
// identity map on words, so the kernel is the empty word alone.
bool some_projection_is_injective(const FreeProduct& fp,
                                  const std::vector<std::uint32_t>& kills) {
  for (std::uint32_t mask : kills) {
    bool kills_something = false;
    for (int f = 0; f < fp.factor_count(); ++f)
      if (((mask >> f) & 1u) && fp.factor(f).order() > 1) {
        kills_something = true;
        break;
      }
    if (!kills_something) return true;
  }
  return false;
}

// Upper bound on every per-length image S_len, used to stop a run exactly
// once S_len reaches it (S_len is monotone and contained in the bound, so no
// later length can add anything).
//
// Derivation. Write a kernel word as g_1 ... g_n with g_i in factor phi(i).
// For each factor f that survives some projection, deleting all other
// factors from that vanishing projection shows the ordered product of the
// f-syllables is the identity. Collecting the evaluation factor-by-factor
// (preserving the order within each factor) in the class-2 quotient D/γ₃(J)
// leaves one central correction term C_ab per unordered factor pair {a,b},
// a product of commutators [leg_a(p), leg_b(q)]. A projection that keeps
// exactly the two factors {a,b} forces C_ab = e the same way. Hence every
// evaluation lies in γ₃(J) joined with the pair spans not forced to vanish.
// When a projection keeps three or more factors only the abelianization
// argument applies, giving [J,J]; when some factor is deleted by every
// projection even that fails and the bound degrades to J itself.
Subgroup evaluation_bound(const FreeProduct& fp, const Cotuple& legs,
                          const std::vector<std::uint32_t>& kills) {
  const GroupPtr& dptr = legs.target();
  const int nfac = fp.factor_count();

  std::vector<Subgroup> images;
  for (int f = 0; f < nfac; ++f) images.push_back(image(legs.legs[f]));
  Subgroup j = trivial_subgroup(dptr);
  for (const Subgroup& im : images) j = join(j, im);

  std::vector<int> live;  // factors that can contribute syllables
  for (int f = 0; f < nfac; ++f)
    if (fp.factor(f).order() > 1) live.push_back(f);

  for (int f : live) {
    bool survives_somewhere = false;
    for (std::uint32_t mask : kills)
      if (!((mask >> f) & 1u)) survives_somewhere = true;
    if (!survives_somewhere) return j;
  }

  std::vector<std::vector<int>> kept(kills.size());
  for (std::size_t p = 0; p < kills.size(); ++p)
    for (int f : live)
      if (!((kills[p] >> f) & 1u)) kept[p].push_back(f);

  Subgroup derived = higgins_binary(j, j);
  for (const auto& k : kept)
    if (k.size() > 2) return derived;

  Subgroup bound = higgins_binary(derived, j);  // γ₃(J)
  for (std::size_t a = 0; a < live.size(); ++a)
    for (std::size_t b = a + 1; b < live.size(); ++b) {
      bool constrained = false;
      for (const auto& k : kept)
        if (k.size() == 2 && k[0] == live[a] && k[1] == live[b])
          constrained = true;
      if (!constrained)
        bound = join(bound, higgins_binary(images[live[a]], images[live[b]]));
    }
  return bound;
}

OracleRun finished_run(Subgroup s, const OracleParams& p, int last_growth) {
  OracleRun run;
  run.subgroup = std::move(s);
  run.depth = p.depth;
  run.last_growth = last_growth;
  run.stable = (p.depth - last_growth) >= p.window;
  return run;
}

// ---------------------------------------------------------------------------
// Meet-in-the-middle engine (ambient order <= 64)
// ---------------------------------------------------------------------------

// Hash-consed persistent reduced words with open addressing. Id 0 is the
// empty word; any other id is (prefix word, final syllable), so appending a
// syllable is O(1) and equal projections get equal ids.
class FlatArena {
public:
  FlatArena() : nodes_(1, Node{-1, 0, -1, 0}) { rehash(1u << 12); }

  std::int32_t length(std::int32_t id) const { return nodes_[id].len; }

  std::int32_t append(std::int32_t id, int factor, int elem,
                      const FiniteGroup& fac) {
    const Node n = nodes_[id];
    if (id != 0 && n.factor == factor) {
      int prod = fac.mul(n.elem, elem);
      if (prod == FiniteGroup::kIdentity) return n.prefix;
      return intern(n.prefix, factor, prod);
    }
    return intern(id, factor, elem);
  }

private:
  struct Node {
    std::int32_t prefix;
    std::int32_t len;
    std::int16_t factor;
    std::uint16_t elem;
  };

  static constexpr std::uint64_t kEmpty = ~0ull;

  std::int32_t intern(std::int32_t prefix, int factor, int elem) {
    // elem >= 1 always, so the packed key is never zero
    const std::uint32_t key = (static_cast<std::uint32_t>(prefix) << 8) |
                              (static_cast<std::uint32_t>(factor) << 6) |
                              static_cast<std::uint32_t>(elem);
    std::size_t i = hash(key) & (table_.size() - 1);
    while (table_[i] != kEmpty) {
      if (static_cast<std::uint32_t>(table_[i] >> 24) == key)
        return static_cast<std::int32_t>(table_[i] & 0xFFFFFF);
      i = (i + 1) & (table_.size() - 1);
    }
    const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    if (id >= (1 << 24)) throw std::runtime_error("oracle projection arena overflow");
    nodes_.push_back(Node{prefix, nodes_[prefix].len + 1,
                          static_cast<std::int16_t>(factor),
                          static_cast<std::uint16_t>(elem)});
    table_[i] = (static_cast<std::uint64_t>(key) << 24) |
                static_cast<std::uint64_t>(id);
    if (nodes_.size() * 10 > table_.size() * 7) grow();
    return id;
  }

  static std::size_t hash(std::uint32_t key) {
    std::uint64_t h = key * 0x9E3779B97F4A7C15ull;
    return static_cast<std::size_t>(h >> 24);
  }

  void rehash(std::size_t n) { table_.assign(n, kEmpty); }

  void grow() {
    std::vector<std::uint64_t> old = std::move(table_);
    rehash(old.size() * 2);
    for (std::uint64_t slot : old) {
      if (slot == kEmpty) continue;
      std::size_t i = hash(static_cast<std::uint32_t>(slot >> 24)) &
                      (table_.size() - 1);
      while (table_[i] != kEmpty) i = (i + 1) & (table_.size() - 1);
      table_[i] = slot;
    }
  }

  std::vector<Node> nodes_;
  std::vector<std::uint64_t> table_;
};

// One prefix state: interned projection words plus the factor of the final
// syllable, and the set of ambient values reached by prefixes in the state.
template <typename MaskInt>
struct FlatEntry {
  std::uint64_t k1;  // proj0 << 32 | proj1
  std::uint32_t k2;  // proj2 << 2 | last (last = 3 for the empty word)
  MaskInt mask;
};

template <typename MaskInt>
bool key_less(const FlatEntry<MaskInt>& a, const FlatEntry<MaskInt>& b) {
  return a.k1 != b.k1 ? a.k1 < b.k1 : a.k2 < b.k2;
}

// Evaluations of kernel words of length a+b, split as p * q with |p| = a and
// |q| = b. The projections of q must invert those of p, so q^{-1} is itself a
// length-b prefix with exactly p's projection ids, and its final factor is
// the factor following the split point, which differs from p's final factor
// in a reduced word. This gives a bijection between length-(a+b) kernel words
// and pairs of layer entries with equal projection keys and distinct lasts,
// with evaluation mask(p) * mask(q^{-1})^{-1}.
template <typename MaskInt>
std::uint64_t join_layers(const std::vector<FlatEntry<MaskInt>>& a,
                          const std::vector<FlatEntry<MaskInt>>& b,
                          const FiniteGroup& d, std::uint64_t& cost,
                          std::uint64_t cost_cap) {
  std::uint64_t out = 0;
  std::size_t i = 0, j = 0;
  auto group_key = [](const FlatEntry<MaskInt>& e) {
    return std::pair<std::uint64_t, std::uint32_t>(e.k1, e.k2 >> 2);
  };
  while (i < a.size() && j < b.size()) {
    auto ka = group_key(a[i]);
    auto kb = group_key(b[j]);
    if (ka < kb) {
      ++i;
      continue;
    }
    if (kb < ka) {
      ++j;
      continue;
    }
    std::size_t i2 = i, j2 = j;
    while (i2 < a.size() && group_key(a[i2]) == ka) ++i2;
    while (j2 < b.size() && group_key(b[j2]) == ka) ++j2;
    for (std::size_t u = i; u < i2; ++u)
      for (std::size_t v = j; v < j2; ++v) {
        if ((a[u].k2 & 3u) == (b[v].k2 & 3u)) continue;
        if (++cost > cost_cap)
          throw std::runtime_error("oracle enumeration cap exceeded");
        std::uint64_t mb = b[v].mask;
        while (mb) {
          const int y = std::countr_zero(mb);
          mb &= mb - 1;
          const int yi = d.inv(y);
          std::uint64_t ma = a[u].mask;
          while (ma) {
            const int x = std::countr_zero(ma);
            ma &= ma - 1;
            out |= 1ull << d.mul(x, yi);
          }
        }
      }
    i = i2;
    j = j2;
  }
  return out;
}

template <typename MaskInt>
OracleRun run_mitm(const FreeProduct& fp, const Cotuple& legs,
                   const std::vector<std::uint32_t>& kills,
                   const OracleParams& p, const Subgroup& bound) {
  const GroupPtr dptr = legs.target();
  const FiniteGroup& d = *dptr;
  const int nfac = fp.factor_count();
  const int nproj = static_cast<int>(kills.size());
  const int half = (p.depth + 1) / 2;

  std::uint64_t bound_mask = 0;
  for (int m : bound.members) bound_mask |= 1ull << m;
  bool bound_valid = true;

  // leg values per (factor, element)
  std::array<std::vector<int>, 3> leg_val;
  int branch_sum = 0;
  for (int f = 0; f < nfac; ++f) {
    leg_val[f].resize(fp.factor(f).order());
    for (int e = 0; e < fp.factor(f).order(); ++e) leg_val[f][e] = legs.legs[f](e);
    branch_sum += fp.factor(f).order() - 1;
  }

  std::vector<FlatArena> arena(nproj);
  using Entry = FlatEntry<MaskInt>;
  std::vector<std::vector<Entry>> layers(static_cast<std::size_t>(half) + 1);
  layers[0].push_back(Entry{0, 3u, static_cast<MaskInt>(
                                       1ull << FiniteGroup::kIdentity)});

  Subgroup s = trivial_subgroup(dptr);
  std::uint64_t s_mask = 1ull << FiniteGroup::kIdentity;
  int last_growth = 0;
  bool saturated = false;
  std::uint64_t cost = 0;

  auto absorb = [&](std::uint64_t found, int len) {
    if (found & ~s_mask) {
      std::vector<int> gens = s.members;
      std::uint64_t bits = found & ~s_mask;
      while (bits) {
        gens.push_back(std::countr_zero(bits));
        bits &= bits - 1;
      }
      s = generate_subgroup(dptr, gens);
      s_mask = 0;
      for (int m : s.members) s_mask |= 1ull << m;
      last_growth = len;
      if (bound_valid && (s_mask & ~bound_mask)) bound_valid = false;
    }
    if (bound_valid && s_mask == bound_mask) saturated = true;
  };

  auto harvest_layer = [&](const std::vector<Entry>& layer, int len) {
    std::uint64_t found = 0;
    for (const Entry& e : layer) {
      if (e.k1 != 0 || (e.k2 >> 2) != 0) break;  // sorted: kernel keys first
      found |= e.mask;
    }
    absorb(found, len);
  };

  harvest_layer(layers[0], 0);

  for (int len = 1; len <= half && !saturated; ++len) {
    const std::vector<Entry>& prev = layers[len - 1];
    std::vector<Entry>& out = layers[len];
    out.reserve(prev.size() * static_cast<std::size_t>(branch_sum));
    for (const Entry& src : prev) {
      std::int32_t pr[3] = {static_cast<std::int32_t>(src.k1 >> 32),
                            static_cast<std::int32_t>(src.k1 & 0xFFFFFFFFu),
                            static_cast<std::int32_t>(src.k2 >> 2)};
      const int last = static_cast<int>(src.k2 & 3u);
      for (int f = 0; f < nfac; ++f) {
        if (f == last) continue;
        const FiniteGroup& fac = fp.factor(f);
        for (int e = 1; e < fac.order(); ++e) {
          if (++cost > p.cost_cap)
            throw std::runtime_error("oracle enumeration cap exceeded");
          std::int32_t np[3] = {pr[0], pr[1], pr[2]};
          for (int j = 0; j < nproj; ++j)
            if (!((kills[j] >> f) & 1u)) np[j] = arena[j].append(pr[j], f, e, fac);
          const int t = leg_val[f][e];
          MaskInt shifted = 0;
          std::uint64_t mb = src.mask;
          while (mb) {
            const int x = std::countr_zero(mb);
            mb &= mb - 1;
            shifted |= static_cast<MaskInt>(1ull << d.mul(x, t));
          }
          out.push_back(Entry{(static_cast<std::uint64_t>(np[0]) << 32) |
                                  static_cast<std::uint32_t>(np[1]),
                              (static_cast<std::uint32_t>(np[2]) << 2) |
                                  static_cast<std::uint32_t>(f),
                              shifted});
        }
      }
    }
    std::sort(out.begin(), out.end(), key_less<MaskInt>);
    // merge states with equal keys
    std::size_t w = 0;
    for (std::size_t r = 0; r < out.size(); ++r) {
      if (w > 0 && out[w - 1].k1 == out[r].k1 && out[w - 1].k2 == out[r].k2) {
        out[w - 1].mask |= out[r].mask;
      } else {
        out[w++] = out[r];
      }
    }
    out.resize(w);
#ifdef WCG_ORACLE_TRACE
    std::fprintf(stderr, "layer %d: states=%zu cost=%llu\n", len, out.size(),
                 static_cast<unsigned long long>(cost));
#endif
    harvest_layer(out, len);
  }

  for (int len = half + 1; len <= p.depth && !saturated; ++len) {
    std::uint64_t found = join_layers<MaskInt>(layers[len - half], layers[half],
                                               d, cost, p.cost_cap);
    absorb(found, len);
  }

  return finished_run(std::move(s), p, last_growth);
}

// ---------------------------------------------------------------------------
// Plain layered walk for large ambient groups (order > 64)
// ---------------------------------------------------------------------------

class PwArena {
public:
  PwArena() { nodes_.push_back(Node{-1, 0, -1, 0}); }

  std::int32_t length(std::int32_t id) const { return nodes_[id].len; }

  std::int32_t append(std::int32_t id, int factor, int elem, const FiniteGroup& fac) {
    const Node n = nodes_[id];
    if (id != 0 && n.factor == factor) {
      int prod = fac.mul(n.elem, elem);
      if (prod == FiniteGroup::kIdentity) return n.prefix;
      return intern(n.prefix, factor, prod);
    }
    return intern(id, factor, elem);
  }

private:
  struct Node {
    std::int32_t prefix;
    std::int32_t len;
    std::int16_t factor;
    std::uint16_t elem;
  };

  std::int32_t intern(std::int32_t prefix, int factor, int elem) {
    std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(prefix)) << 19) |
                        (static_cast<std::uint64_t>(factor) << 16) |
                        static_cast<std::uint64_t>(elem);
    auto [it, inserted] = memo_.try_emplace(key, static_cast<std::int32_t>(nodes_.size()));
    if (inserted)
      nodes_.push_back(Node{prefix, nodes_[prefix].len + 1,
                            static_cast<std::int16_t>(factor),
                            static_cast<std::uint16_t>(elem)});
    return it->second;
  }

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::int32_t> memo_;
};

struct StateKey {
  std::array<std::int32_t, 3> proj;
  std::int8_t last;

  bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (std::int32_t v : k.proj) {
      h ^= static_cast<std::uint32_t>(v) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    h ^= static_cast<std::uint64_t>(static_cast<std::uint8_t>(k.last)) * 0x100000001B3ull;
    return static_cast<std::size_t>(h);
  }
};

// Set of ambient elements reached at a state, for arbitrary ambient order.
struct BigMask {
  std::vector<std::uint64_t> words;

  static BigMask single(int e) {
    BigMask out;
    out.set(e);
    return out;
  }
  void set(int e) {
    std::size_t w = static_cast<std::size_t>(e) >> 6;
    if (words.size() <= w) words.resize(w + 1, 0);
    words[w] |= 1ull << (e & 63);
  }
  void merge(const BigMask& o) {
    if (words.size() < o.words.size()) words.resize(o.words.size(), 0);
    for (std::size_t i = 0; i < o.words.size(); ++i) words[i] |= o.words[i];
  }
  BigMask shifted(const FiniteGroup& d, int t) const {
    BigMask out;
    for_each([&](int e) { out.set(d.mul(e, t)); });
    return out;
  }
  template <typename F>
  void for_each(F f) const {
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t b = words[w];
      while (b) {
        f(static_cast<int>(w * 64) + std::countr_zero(b));
        b &= b - 1;
      }
    }
  }
};

OracleRun run_dp(const FreeProduct& fp, const Cotuple& legs,
                 const std::vector<std::uint32_t>& kills, const OracleParams& p,
                 const Subgroup& bound) {
  const GroupPtr dptr = legs.target();
  const FiniteGroup& d = *dptr;
  const int nfac = fp.factor_count();
  const int nproj = static_cast<int>(kills.size());

  int max_contrib = 1;
  for (int f = 0; f < nfac; ++f) {
    int c = 0;
    for (int j = 0; j < nproj; ++j)
      if (!((kills[j] >> f) & 1u)) ++c;
    if (c > max_contrib) max_contrib = c;
  }

  std::vector<PwArena> arena(nproj);
  using StateMap = std::unordered_map<StateKey, BigMask, StateKeyHash>;
  StateMap cur;
  cur.emplace(StateKey{{0, 0, 0}, -1}, BigMask::single(FiniteGroup::kIdentity));

  Subgroup s = trivial_subgroup(dptr);
  std::vector<char> in_s(d.order(), 0);
  in_s[FiniteGroup::kIdentity] = 1;
  std::vector<char> in_bound(d.order(), 0);
  for (int m : bound.members) in_bound[m] = 1;
  bool bound_valid = true;
  bool saturated = false;
  int last_growth = 0;
  std::uint64_t cost = 0;

  auto harvest = [&](int len) {
    std::vector<int> fresh;
    for (const auto& [key, mask] : cur) {
      if (key.proj[0] != 0 || key.proj[1] != 0 || key.proj[2] != 0) continue;
      mask.for_each([&](int e) {
        if (!in_s[e]) fresh.push_back(e);
      });
    }
    if (!fresh.empty()) {
      fresh.insert(fresh.end(), s.members.begin(), s.members.end());
      s = generate_subgroup(dptr, fresh);
      std::fill(in_s.begin(), in_s.end(), 0);
      for (int m : s.members) in_s[m] = 1;
      last_growth = len;
      for (int m : s.members)
        if (!in_bound[m]) bound_valid = false;
    }
    if (bound_valid && s.order() == bound.order()) saturated = true;
  };

  harvest(0);
  for (int len = 0; len < p.depth && !cur.empty() && !saturated; ++len) {
    const int remaining = p.depth - len - 1;
    StateMap next;
    next.reserve(cur.size());
    for (const auto& [key, mask] : cur) {
      for (int f = 0; f < nfac; ++f) {
        if (f == key.last) continue;
        const FiniteGroup& fac = fp.factor(f);
        for (int e = 1; e < fac.order(); ++e) {
          if (++cost > p.cost_cap)
            throw std::runtime_error("oracle enumeration cap exceeded");
          StateKey nk = key;
          nk.last = static_cast<std::int8_t>(f);
          int total = 0;
          bool viable = true;
          for (int j = 0; j < nproj; ++j) {
            if (!((kills[j] >> f) & 1u))
              nk.proj[j] = arena[j].append(key.proj[j], f, e, fac);
            int plen = arena[j].length(nk.proj[j]);
            if (plen > remaining) {
              viable = false;
              break;
            }
            total += plen;
          }
          if (!viable || total > max_contrib * remaining) continue;
          next[nk].merge(mask.shifted(d, legs.legs[f](e)));
        }
      }
    }
    cur = std::move(next);
    harvest(len + 1);
  }

  return finished_run(std::move(s), p, last_growth);
}

}  // namespace

OracleRun projection_kernel_image(const FreeProduct& fp, const Cotuple& legs,
                                  const std::vector<std::uint32_t>& kill_masks,
                                  const OracleParams& params) {
  if (fp.factor_count() > 3 || kill_masks.size() > 3)
    throw std::invalid_argument("projection-kernel oracle supports up to 3 factors");
  if (fp.factor_count() != static_cast<int>(legs.legs.size()))
    throw std::invalid_argument("cotuple arity does not match the free product");
  if (params.depth < 0) throw std::invalid_argument("oracle depth must be >= 0");
  if (params.window < 1) throw std::invalid_argument("oracle window must be >= 1");

  const GroupPtr dptr = legs.target();

  if (some_projection_is_injective(fp, kill_masks))
    return finished_run(trivial_subgroup(dptr), params, 0);

  Subgroup bound = evaluation_bound(fp, legs, kill_masks);
  if (bound.is_trivial())
    return finished_run(trivial_subgroup(dptr), params, 0);

  if (dptr->order() > 64) return run_dp(fp, legs, kill_masks, params, bound);
  if (dptr->order() <= 16)
    return run_mitm<std::uint16_t>(fp, legs, kill_masks, params, bound);
  return run_mitm<std::uint64_t>(fp, legs, kill_masks, params, bound);
}

}  // namespace wcg
