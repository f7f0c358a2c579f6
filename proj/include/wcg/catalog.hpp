#pragma once

#include <map>
#include <string>
#include <vector>

#include "wcg/group.hpp"

namespace wcg {

constexpr int kDefaultOrderCap = 10080;

GroupPtr cyclic_group(int n);
GroupPtr dihedral_group(int n);  // order 2n, n >= 3
GroupPtr quaternion_group();
GroupPtr symmetric_group(int n);  // n <= 4 intended
GroupPtr alternating_group_4();
GroupPtr klein_four_group();

/// Closure of permutation generators (image arrays on 0..degree-1) under
/// composition. Elements are numbered by lexicographic order of the
/// permutation arrays, which puts the identity at index 0.
GroupPtr group_from_permutations(std::string label, int degree,
                                 const std::vector<std::vector<int>>& generators,
                                 int order_cap = kDefaultOrderCap);

/// Named group collection: the built-in small groups plus user loads.
class Catalog {
public:
  static Catalog builtins();

  void add(GroupPtr g);
  GroupPtr find(const std::string& label) const;  // throws when absent
  GroupPtr find_or_null(const std::string& label) const;
  std::vector<std::string> labels() const;

private:
  std::map<std::string, GroupPtr> groups_;
};

}  // namespace wcg
