#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "wcg/group.hpp"

namespace wcg {

/// A free product of finitely many finite groups, identified by the order
/// of its factor list. Words belong to one specific FreeProduct instance.
struct FreeProduct {
  std::vector<GroupPtr> factors;

  int factor_count() const noexcept { return static_cast<int>(factors.size()); }
  const FiniteGroup& factor(int i) const { return *factors[i]; }
};

struct Syllable {
  int factor;
  int elem;

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// A reduced word: no identity syllables, no adjacent syllables from the
/// same factor. The empty word is the group identity. Construct through
/// reduce(); the invariant is maintained by every operation.
struct Word {
  const FreeProduct* product = nullptr;
  std::vector<Syllable> syllables;

  bool empty() const noexcept { return syllables.empty(); }
  int length() const noexcept { return static_cast<int>(syllables.size()); }

  friend bool operator==(const Word& a, const Word& b) {
    return a.product == b.product && a.syllables == b.syllables;
  }
};

Word reduce(const FreeProduct& fp, std::vector<Syllable> raw);
Word concat(const Word& u, const Word& v);
Word invert(const Word& u);
Word kill_factor(const Word& u, int factor);

/// Per-factor homomorphisms into a common target.
struct Cotuple {
  std::vector<Homomorphism> legs;

  Cotuple(std::vector<Homomorphism> l);
  const GroupPtr& target() const { return legs.front().target(); }
};

int evaluate(const Word& u, const Cotuple& c);

// Membership predicates on reduced words.
bool in_flat(const Word& u, int kept_factor);   // kernel of the retraction deleting kept_factor
bool in_diamond2(const Word& u);                // two-factor co-smash kernel
bool in_diamond2_by_products(const Word& u);    // same set, by syllable products per factor
bool in_diamond3(const Word& u);                // three-factor co-smash kernel
bool in_weighted_kernel(const Word& u);         // factors 0 = W, 1 = X, 2 = Y

constexpr std::uint64_t kDefaultWordCap = 100'000'000;

/// Visits every reduced word of length <= max_syllables exactly once, in
/// length-then-lexicographic order on (factor, element) pairs. Returns the
/// number of words visited; throws when the cap is exceeded.
std::uint64_t enumerate_words(const FreeProduct& fp, int max_syllables,
                              const std::function<void(const Word&)>& visit,
                              std::uint64_t cap = kDefaultWordCap);

std::vector<Word> enumerate_words_list(const FreeProduct& fp, int max_syllables,
                                       std::uint64_t cap = kDefaultWordCap);

/// Parses the CLI word literal: semicolon-separated `factor:element` tokens.
Word parse_word(const FreeProduct& fp, std::string_view literal);
std::string format_word(const Word& u);

}  // namespace wcg
