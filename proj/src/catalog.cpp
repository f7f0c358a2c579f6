#include "wcg/catalog.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace wcg {

GroupPtr cyclic_group(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
  std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[static_cast<std::size_t>(i) * n + j] = static_cast<std::uint16_t>((i + j) % n);
  return make_group("C" + std::to_string(n), n, std::move(table));
}

GroupPtr dihedral_group(int n) {
  if (n < 3) throw std::invalid_argument("dihedral group needs n >= 3");
  // indices 0..n-1: rotations r^i; n..2n-1: reflections s r^i
  int m = 2 * n;
  auto enc = [n](bool flip, int rot) { return (flip ? n : 0) + ((rot % n + n) % n); };
  std::vector<std::uint16_t> table(static_cast<std::size_t>(m) * m);
  for (int a = 0; a < m; ++a) {
    bool fa = a >= n;
    int ra = fa ? a - n : a;
    for (int b = 0; b < m; ++b) {
      bool fb = b >= n;
      int rb = fb ? b - n : b;
      // (s^fa r^ra)(s^fb r^rb) = s^(fa^fb) r^(rb + (fb ? -ra : ra))
      int rot = fb ? rb - ra : rb + ra;
      table[static_cast<std::size_t>(a) * m + b] =
          static_cast<std::uint16_t>(enc(fa != fb, rot));
    }
  }
  return make_group("D" + std::to_string(n), m, std::move(table));
}

GroupPtr quaternion_group() {
  // indices: 0..3 = 1, i, j, k; 4..7 = -1, -i, -j, -k
  // unit table with sign, units indexed 0=1, 1=i, 2=j, 3=k
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{+1, +1, +1, +1},
                                 {+1, -1, +1, -1},
                                 {+1, -1, -1, +1},
                                 {+1, +1, -1, -1}};
  int n = 8;
  std::vector<std::uint16_t> table(64);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ua = a & 3, ub = b & 3;
      int s = sign[ua][ub] * ((a >= 4) ? -1 : 1) * ((b >= 4) ? -1 : 1);
      int u = unit[ua][ub];
      table[static_cast<std::size_t>(a) * n + b] =
          static_cast<std::uint16_t>(s > 0 ? u : u + 4);
    }
  return make_group("Q8", n, std::move(table));
}

GroupPtr group_from_permutations(std::string label, int degree,
                                 const std::vector<std::vector<int>>& generators,
                                 int order_cap) {
  if (degree < 1) throw std::invalid_argument("permutation degree must be positive");
  auto check_perm = [degree](const std::vector<int>& p) {
    if (static_cast<int>(p.size()) != degree)
      throw std::invalid_argument("generator has wrong degree");
    std::vector<char> seen(degree, 0);
    for (int v : p) {
      if (v < 0 || v >= degree || seen[v])
        throw std::invalid_argument("generator is not a permutation");
      seen[v] = 1;
    }
  };
  std::vector<int> id(degree);
  for (int i = 0; i < degree; ++i) id[i] = i;

  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  seen.insert(id);
  queue.push_back(id);
  for (const auto& g : generators) {
    check_perm(g);
    if (seen.insert(g).second) queue.push_back(g);
  }
  auto compose = [degree](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> out(degree);
    for (int i = 0; i < degree; ++i) out[i] = p[q[i]];
    return out;
  };
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : generators) {
      auto prod = compose(queue[head], g);
      if (seen.insert(prod).second) {
        if (static_cast<int>(seen.size()) > order_cap)
          throw std::runtime_error("permutation closure exceeds order cap " +
                                   std::to_string(order_cap));
        queue.push_back(std::move(prod));
      }
    }
  }

  std::vector<std::vector<int>> elems(seen.begin(), seen.end());  // lex sorted; identity first
  int n = static_cast<int>(elems.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index[elems[i]] = i;
  std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[static_cast<std::size_t>(i) * n + j] =
          static_cast<std::uint16_t>(index[compose(elems[i], elems[j])]);
  return make_group(std::move(label), n, std::move(table));
}

GroupPtr symmetric_group(int n) {
  if (n < 1) throw std::invalid_argument("symmetric group degree must be positive");
  if (n == 1) return make_group("S1", 1, {0});
  std::vector<int> transposition(n), cycle(n);
  for (int i = 0; i < n; ++i) {
    transposition[i] = i;
    cycle[i] = (i + 1) % n;
  }
  std::swap(transposition[0], transposition[1]);
  return group_from_permutations("S" + std::to_string(n), n, {transposition, cycle});
}

GroupPtr alternating_group_4() {
  return group_from_permutations("A4", 4, {{1, 0, 3, 2}, {1, 2, 0, 3}});
}

GroupPtr klein_four_group() {
  return group_from_permutations("V4", 4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
}

Catalog Catalog::builtins() {
  Catalog c;
  for (int n = 1; n <= 16; ++n) c.add(cyclic_group(n));
  for (int n = 3; n <= 6; ++n) c.add(dihedral_group(n));
  c.add(quaternion_group());
  c.add(symmetric_group(3));
  c.add(symmetric_group(4));
  c.add(alternating_group_4());
  c.add(klein_four_group());
  return c;
}

void Catalog::add(GroupPtr g) {
  auto [it, inserted] = groups_.emplace(g->label(), std::move(g));
  if (!inserted) throw std::invalid_argument("duplicate group label '" + it->first + "'");
}

GroupPtr Catalog::find(const std::string& label) const {
  auto it = groups_.find(label);
  if (it == groups_.end()) throw std::out_of_range("no group named '" + label + "'");
  return it->second;
}

GroupPtr Catalog::find_or_null(const std::string& label) const {
  auto it = groups_.find(label);
  return it == groups_.end() ? nullptr : it->second;
}

std::vector<std::string> Catalog::labels() const {
  std::vector<std::string> out;
  out.reserve(groups_.size());
  for (const auto& [k, v] : groups_) out.push_back(k);
  return out;
}

}  // namespace wcg
