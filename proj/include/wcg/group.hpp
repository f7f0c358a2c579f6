#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wcg {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group on indices 0..order-1, identity pinned at index 0.
/// The full multiplication table is stored; values are immutable once built.
/// Construction validates the group laws (exhaustively up to order 64,
/// by fixed-seed sampling of at least 10^4 triples above that).
class FiniteGroup {
public:
  static constexpr int kIdentity = 0;
  static constexpr int kExhaustiveLawOrder = 64;

  FiniteGroup(std::string label, int order, std::vector<std::uint16_t> table);

  int order() const noexcept { return order_; }
  const std::string& label() const noexcept { return label_; }

  int mul(int a, int b) const {
    return table_[static_cast<std::size_t>(a) * order_ + b];
  }
  int inv(int a) const { return inv_[a]; }

  // g h g^-1
  int conjugate(int g, int h) const { return mul(mul(g, h), inv(g)); }
  // a b a^-1 b^-1
  int commutator(int a, int b) const {
    return mul(mul(a, b), mul(inv(a), inv(b)));
  }

  int element_order(int a) const;
  bool is_abelian() const;

private:
  void validate() const;

  std::string label_;
  int order_;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint16_t> inv_;
};

GroupPtr make_group(std::string label, int order, std::vector<std::uint16_t> table);
GroupPtr make_group(std::string label, const std::vector<std::vector<int>>& rows);

/// A subgroup given by its sorted member set inside a shared parent group.
struct Subgroup {
  GroupPtr parent;
  std::vector<int> members;  // sorted, duplicate-free, contains 0

  int order() const noexcept { return static_cast<int>(members.size()); }
  bool contains(int g) const;
  bool is_trivial() const noexcept { return members.size() == 1; }
  bool is_full() const noexcept {
    return static_cast<int>(members.size()) == parent->order();
  }
};

Subgroup trivial_subgroup(GroupPtr g);
Subgroup full_subgroup(GroupPtr g);

Subgroup generate_subgroup(GroupPtr g, std::span<const int> gens);
Subgroup normal_closure(GroupPtr g, std::span<const int> seed);
Subgroup join(const Subgroup& h1, const Subgroup& h2);
bool is_normal(const Subgroup& h);
bool subgroups_equal(const Subgroup& h1, const Subgroup& h2);

/// Every subgroup of g, found by saturating one-generator extensions.
/// Intended for small groups (catalog scale).
std::vector<Subgroup> all_subgroups(GroupPtr g);

/// A total structure-preserving map between finite groups.
/// The homomorphism property is verified on every pair at construction.
class Homomorphism {
public:
  Homomorphism(GroupPtr source, GroupPtr target, std::vector<int> images);

  int operator()(int a) const { return images_[a]; }
  const GroupPtr& source() const noexcept { return source_; }
  const GroupPtr& target() const noexcept { return target_; }
  const std::vector<int>& images() const noexcept { return images_; }

  static Homomorphism identity(GroupPtr g);
  static Homomorphism trivial(GroupPtr source, GroupPtr target);
  // outer after inner
  static Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner);

  bool equals(const Homomorphism& other) const;

private:
  GroupPtr source_;
  GroupPtr target_;
  std::vector<int> images_;
};

Subgroup kernel(const Homomorphism& h);
Subgroup image(const Homomorphism& h);

/// A subgroup repackaged as a standalone group, with its inclusion map.
/// Member order is preserved, so index 0 is still the identity.
struct EmbeddedGroup {
  GroupPtr group;
  Homomorphism inclusion;  // group -> parent of the original subgroup
};

EmbeddedGroup subgroup_as_group(const Subgroup& h, std::string label);

/// Pullback A x_B C of f: A -> B and g: C -> B. The carrier is a group on
/// the matching pairs (a, c), ordered lexicographically by (a, c).
/// When sections r of f and s of g are supplied, the injections
/// e1 = <1_A, s f> and e2 = <r g, 1_C> are available.
struct PullbackGroup {
  GroupPtr carrier;
  std::vector<std::pair<int, int>> pairs;  // carrier index -> (a, c)
  Homomorphism proj1;                      // carrier -> A
  Homomorphism proj2;                      // carrier -> C
  std::optional<Homomorphism> inj1;        // A -> carrier
  std::optional<Homomorphism> inj2;        // C -> carrier

  int index_of(int a, int c) const;  // -1 when (a, c) is not in the carrier
};

PullbackGroup pullback(const Homomorphism& f, const Homomorphism& g,
                       const std::optional<Homomorphism>& r = std::nullopt,
                       const std::optional<Homomorphism>& s = std::nullopt);

/// All homomorphisms from a to b, enumerated through generator images.
std::vector<Homomorphism> enumerate_homomorphisms(GroupPtr a, GroupPtr b);

/// A short generating sequence for g, grown greedily.
std::vector<int> generating_sequence(const FiniteGroup& g);

}  // namespace wcg
