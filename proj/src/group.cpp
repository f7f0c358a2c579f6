#include "wcg/group.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

namespace wcg {

FiniteGroup::FiniteGroup(std::string label, int order,
                         std::vector<std::uint16_t> table)
    : label_(std::move(label)), order_(order), table_(std::move(table)) {
  if (order_ < 1) throw std::invalid_argument("group order must be positive");
  if (order_ > 0xFFFF) throw std::invalid_argument("group order exceeds table encoding");
  if (table_.size() != static_cast<std::size_t>(order_) * order_)
    throw std::invalid_argument("multiplication table has wrong size");
  for (std::uint16_t v : table_)
    if (v >= order_) throw std::invalid_argument("table entry out of range");

  // identity pinned at 0
  for (int g = 0; g < order_; ++g)
    if (mul(0, g) != g || mul(g, 0) != g)
      throw std::invalid_argument("index 0 is not an identity in '" + label_ + "'");

  // rows and columns are permutations
  std::vector<char> seen(order_);
  for (int a = 0; a < order_; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < order_; ++b) {
      int v = mul(a, b);
      if (seen[v]) throw std::invalid_argument("row " + std::to_string(a) + " is not a permutation");
      seen[v] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < order_; ++b) {
      int v = mul(b, a);
      if (seen[v]) throw std::invalid_argument("column " + std::to_string(a) + " is not a permutation");
      seen[v] = 1;
    }
  }

  inv_.assign(order_, 0);
  for (int a = 0; a < order_; ++a) {
    int found = -1;
    for (int b = 0; b < order_; ++b)
      if (mul(a, b) == kIdentity) { found = b; break; }
    if (found < 0 || mul(found, a) != kIdentity)
      throw std::invalid_argument("element " + std::to_string(a) + " has no two-sided inverse");
    inv_[a] = static_cast<std::uint16_t>(found);
  }

  validate();
}

void FiniteGroup::validate() const {
  auto check = [this](int a, int b, int c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      throw std::invalid_argument("multiplication in '" + label_ + "' is not associative");
  };
  if (order_ <= kExhaustiveLawOrder) {
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        for (int c = 0; c < order_; ++c) check(a, b, c);
  } else {
    std::mt19937 rng(12345);  // fixed seed: validation must be reproducible
    std::uniform_int_distribution<int> pick(0, order_ - 1);
    for (int i = 0; i < 10000; ++i) check(pick(rng), pick(rng), pick(rng));
  }
}

int FiniteGroup::element_order(int a) const {
  int n = 1;
  int x = a;
  while (x != kIdentity) {
    x = mul(x, a);
    ++n;
  }
  return n;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

GroupPtr make_group(std::string label, int order, std::vector<std::uint16_t> table) {
  return std::make_shared<const FiniteGroup>(std::move(label), order, std::move(table));
}

GroupPtr make_group(std::string label, const std::vector<std::vector<int>>& rows) {
  int n = static_cast<int>(rows.size());
  std::vector<std::uint16_t> table;
  table.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("Cayley table is not square");
    for (int v : row) {
      if (v < 0 || v >= n) throw std::invalid_argument("Cayley table entry out of range");
      table.push_back(static_cast<std::uint16_t>(v));
    }
  }
  return make_group(std::move(label), n, std::move(table));
}

bool Subgroup::contains(int g) const {
  return std::binary_search(members.begin(), members.end(), g);
}

Subgroup trivial_subgroup(GroupPtr g) { return Subgroup{std::move(g), {0}}; }

Subgroup full_subgroup(GroupPtr g) {
  std::vector<int> all(g->order());
  for (int i = 0; i < static_cast<int>(all.size()); ++i) all[i] = i;
  return Subgroup{std::move(g), std::move(all)};
}

namespace {

// Closure of a seed set under multiplication and inverse, as a sorted vector.
std::vector<int> close_under_ops(const FiniteGroup& g, std::vector<int> seed) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> queue;
  auto add = [&](int x) {
    if (!in[x]) {
      in[x] = 1;
      queue.push_back(x);
    }
  };
  add(FiniteGroup::kIdentity);
  for (int x : seed) {
    if (x < 0 || x >= g.order()) throw std::out_of_range("generator index out of range");
    add(x);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int a = queue[head];
    add(g.inv(a));
    // products with everything already collected, in both orders
    for (std::size_t j = 0; j <= head; ++j) {
      add(g.mul(a, queue[j]));
      add(g.mul(queue[j], a));
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

}  // namespace

Subgroup generate_subgroup(GroupPtr g, std::span<const int> gens) {
  std::vector<int> seed(gens.begin(), gens.end());
  auto members = close_under_ops(*g, std::move(seed));
  return Subgroup{std::move(g), std::move(members)};
}

Subgroup normal_closure(GroupPtr g, std::span<const int> seed) {
  std::vector<int> current(seed.begin(), seed.end());
  auto members = close_under_ops(*g, current);
  for (;;) {
    std::vector<int> conj;
    conj.reserve(members.size());
    bool grew = false;
    std::vector<char> in(g->order(), 0);
    for (int m : members) in[m] = 1;
    std::vector<int> next = members;
    for (int x = 0; x < g->order(); ++x) {
      for (int m : members) {
        int c = g->conjugate(x, m);
        if (!in[c]) {
          in[c] = 1;
          next.push_back(c);
          grew = true;
        }
      }
    }
    if (!grew) break;
    members = close_under_ops(*g, std::move(next));
  }
  return Subgroup{std::move(g), std::move(members)};
}

Subgroup join(const Subgroup& h1, const Subgroup& h2) {
  if (h1.parent != h2.parent)
    throw std::invalid_argument("join of subgroups with different parents");
  std::vector<int> seed = h1.members;
  seed.insert(seed.end(), h2.members.begin(), h2.members.end());
  return generate_subgroup(h1.parent, seed);
}

bool is_normal(const Subgroup& h) {
  const FiniteGroup& g = *h.parent;
  for (int x = 0; x < g.order(); ++x)
    for (int m : h.members)
      if (!h.contains(g.conjugate(x, m))) return false;
  return true;
}

bool subgroups_equal(const Subgroup& h1, const Subgroup& h2) {
  if (h1.parent != h2.parent)
    throw std::invalid_argument("comparing subgroups with different parents");
  return h1.members == h2.members;
}

std::vector<Subgroup> all_subgroups(GroupPtr g) {
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> queue;
  std::vector<int> triv{0};
  found.insert(triv);
  queue.push_back(triv);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::vector<int> base = queue[head];
    for (int x = 1; x < g->order(); ++x) {
      if (std::binary_search(base.begin(), base.end(), x)) continue;
      std::vector<int> seed = base;
      seed.push_back(x);
      auto ext = close_under_ops(*g, std::move(seed));
      if (found.insert(ext).second) queue.push_back(std::move(ext));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& m : found) out.push_back(Subgroup{g, m});
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return out;
}

Homomorphism::Homomorphism(GroupPtr source, GroupPtr target, std::vector<int> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != source_->order())
    throw std::invalid_argument("homomorphism image list has wrong length");
  for (int v : images_)
    if (v < 0 || v >= target_->order())
      throw std::invalid_argument("homomorphism image out of range");
  for (int a = 0; a < source_->order(); ++a)
    for (int b = 0; b < source_->order(); ++b)
      if (images_[source_->mul(a, b)] != target_->mul(images_[a], images_[b]))
        throw std::invalid_argument("map is not a homomorphism at (" +
                                    std::to_string(a) + ", " + std::to_string(b) + ")");
  if (images_[FiniteGroup::kIdentity] != FiniteGroup::kIdentity)
    throw std::invalid_argument("homomorphism does not preserve the identity");
}

Homomorphism Homomorphism::identity(GroupPtr g) {
  std::vector<int> im(g->order());
  for (int i = 0; i < static_cast<int>(im.size()); ++i) im[i] = i;
  return Homomorphism(g, g, std::move(im));
}

Homomorphism Homomorphism::trivial(GroupPtr source, GroupPtr target) {
  std::vector<int> im(source->order(), FiniteGroup::kIdentity);
  return Homomorphism(std::move(source), std::move(target), std::move(im));
}

Homomorphism Homomorphism::compose(const Homomorphism& outer, const Homomorphism& inner) {
  if (inner.target_ != outer.source_)
    throw std::invalid_argument("composition of non-matching homomorphisms");
  std::vector<int> im(inner.source_->order());
  for (int a = 0; a < inner.source_->order(); ++a) im[a] = outer(inner(a));
  return Homomorphism(inner.source_, outer.target_, std::move(im));
}

bool Homomorphism::equals(const Homomorphism& other) const {
  return source_ == other.source_ && target_ == other.target_ && images_ == other.images_;
}

Subgroup kernel(const Homomorphism& h) {
  std::vector<int> members;
  for (int a = 0; a < h.source()->order(); ++a)
    if (h(a) == FiniteGroup::kIdentity) members.push_back(a);
  return Subgroup{h.source(), std::move(members)};
}

Subgroup image(const Homomorphism& h) {
  std::vector<int> members;
  std::vector<char> seen(h.target()->order(), 0);
  for (int a = 0; a < h.source()->order(); ++a) {
    int v = h(a);
    if (!seen[v]) {
      seen[v] = 1;
      members.push_back(v);
    }
  }
  std::sort(members.begin(), members.end());
  return Subgroup{h.target(), std::move(members)};
}

EmbeddedGroup subgroup_as_group(const Subgroup& h, std::string label) {
  const FiniteGroup& p = *h.parent;
  int n = h.order();
  std::vector<int> rank(p.order(), -1);
  for (int i = 0; i < n; ++i) rank[h.members[i]] = i;
  std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int v = rank[p.mul(h.members[i], h.members[j])];
      if (v < 0) throw std::invalid_argument("member set is not closed under multiplication");
      table[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint16_t>(v);
    }
  GroupPtr g = make_group(std::move(label), n, std::move(table));
  Homomorphism incl(g, h.parent, h.members);
  return EmbeddedGroup{std::move(g), std::move(incl)};
}

int PullbackGroup::index_of(int a, int c) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(a, c));
  if (it == pairs.end() || *it != std::make_pair(a, c)) return -1;
  return static_cast<int>(it - pairs.begin());
}

PullbackGroup pullback(const Homomorphism& f, const Homomorphism& g,
                       const std::optional<Homomorphism>& r,
                       const std::optional<Homomorphism>& s) {
  if (f.target() != g.target())
    throw std::invalid_argument("pullback legs have different codomains");
  const GroupPtr& A = f.source();
  const GroupPtr& C = g.source();
  if (r) {
    if (r->source() != f.target() || r->target() != A)
      throw std::invalid_argument("r does not go B -> A");
    for (int b = 0; b < f.target()->order(); ++b)
      if (f((*r)(b)) != b) throw std::invalid_argument("r is not a section of f");
  }
  if (s) {
    if (s->source() != g.target() || s->target() != C)
      throw std::invalid_argument("s does not go B -> C");
    for (int b = 0; b < g.target()->order(); ++b)
      if (g((*s)(b)) != b) throw std::invalid_argument("s is not a section of g");
  }

  std::vector<std::pair<int, int>> pairs;  // lexicographic by construction
  for (int a = 0; a < A->order(); ++a)
    for (int c = 0; c < C->order(); ++c)
      if (f(a) == g(c)) pairs.emplace_back(a, c);

  int n = static_cast<int>(pairs.size());
  auto idx = [&](int a, int c) {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(a, c));
    return static_cast<int>(it - pairs.begin());
  };
  std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int a = A->mul(pairs[i].first, pairs[j].first);
      int c = C->mul(pairs[i].second, pairs[j].second);
      table[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint16_t>(idx(a, c));
    }
  GroupPtr carrier = make_group(f.source()->label() + "x_B" + g.source()->label(),
                                n, std::move(table));

  std::vector<int> p1(n), p2(n);
  for (int i = 0; i < n; ++i) {
    p1[i] = pairs[i].first;
    p2[i] = pairs[i].second;
  }
  Homomorphism proj1(carrier, A, std::move(p1));
  Homomorphism proj2(carrier, C, std::move(p2));

  std::optional<Homomorphism> inj1, inj2;
  if (r && s) {
    std::vector<int> e1(A->order()), e2(C->order());
    for (int a = 0; a < A->order(); ++a) e1[a] = idx(a, (*s)(f(a)));
    for (int c = 0; c < C->order(); ++c) e2[c] = idx((*r)(g(c)), c);
    inj1.emplace(A, carrier, std::move(e1));
    inj2.emplace(C, carrier, std::move(e2));
  }
  return PullbackGroup{std::move(carrier), std::move(pairs), std::move(proj1),
                       std::move(proj2), std::move(inj1), std::move(inj2)};
}

std::vector<int> generating_sequence(const FiniteGroup& g) {
  std::vector<int> gens;
  std::vector<char> in(g.order(), 0);
  in[0] = 1;
  int covered = 1;
  while (covered < g.order()) {
    int next = -1;
    for (int x = 1; x < g.order(); ++x)
      if (!in[x]) { next = x; break; }
    gens.push_back(next);
    // regrow the closure with the new generator
    std::fill(in.begin(), in.end(), 0);
    std::vector<int> queue;
    auto add = [&](int v) {
      if (!in[v]) { in[v] = 1; queue.push_back(v); }
    };
    add(0);
    for (int s : gens) add(s);
    for (std::size_t h = 0; h < queue.size(); ++h) {
      add(g.inv(queue[h]));
      for (std::size_t j = 0; j <= h; ++j) {
        add(g.mul(queue[h], queue[j]));
        add(g.mul(queue[j], queue[h]));
      }
    }
    covered = static_cast<int>(queue.size());
  }
  return gens;
}

std::vector<Homomorphism> enumerate_homomorphisms(GroupPtr a, GroupPtr b) {
  std::vector<int> gens = generating_sequence(*a);
  std::vector<Homomorphism> out;
  if (gens.empty()) {
    out.push_back(Homomorphism::trivial(a, b));
    return out;
  }

  // Every element of a as a word in the generating sequence: BFS with parents.
  struct Deriv { int parent; int gen; };
  std::vector<Deriv> deriv(a->order(), Deriv{-1, -1});
  std::vector<int> bfs{0};
  std::vector<char> seen(a->order(), 0);
  seen[0] = 1;
  for (std::size_t h = 0; h < bfs.size(); ++h) {
    for (int gi = 0; gi < static_cast<int>(gens.size()); ++gi) {
      int nxt = a->mul(bfs[h], gens[gi]);
      if (!seen[nxt]) {
        seen[nxt] = 1;
        deriv[nxt] = Deriv{bfs[h], gi};
        bfs.push_back(nxt);
      }
    }
  }

  std::vector<int> assign(gens.size(), 0);
  std::vector<int> im(a->order());
  auto try_assignment = [&]() {
    im[0] = 0;
    for (std::size_t h = 1; h < bfs.size(); ++h) {
      int x = bfs[h];
      im[x] = b->mul(im[deriv[x].parent], assign[deriv[x].gen]);
    }
    for (int p = 0; p < a->order(); ++p)
      for (int q = 0; q < a->order(); ++q)
        if (im[a->mul(p, q)] != b->mul(im[p], im[q])) return;
    out.push_back(Homomorphism(a, b, im));
  };

  // odometer over generator images, pruned by element-order divisibility
  std::vector<std::vector<int>> choices(gens.size());
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    int og = a->element_order(gens[gi]);
    for (int v = 0; v < b->order(); ++v)
      if (og % b->element_order(v) == 0) choices[gi].push_back(v);
  }
  std::vector<std::size_t> pos(gens.size(), 0);
  for (;;) {
    for (std::size_t gi = 0; gi < gens.size(); ++gi) assign[gi] = choices[gi][pos[gi]];
    try_assignment();
    std::size_t k = 0;
    while (k < gens.size() && ++pos[k] == choices[k].size()) {
      pos[k] = 0;
      ++k;
    }
    if (k == gens.size()) break;
  }
  return out;
}

}  // namespace wcg
