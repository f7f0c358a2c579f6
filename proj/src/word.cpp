#include "wcg/word.hpp"

#include <charconv>
#include <stdexcept>

namespace wcg {

namespace {

void check_syllable(const FreeProduct& fp, const Syllable& s) {
  if (s.factor < 0 || s.factor >= fp.factor_count())
    throw std::out_of_range("syllable factor index out of range");
  if (s.elem < 0 || s.elem >= fp.factor(s.factor).order())
    throw std::out_of_range("syllable element index out of range");
}

// Appends one syllable to a reduced syllable stack, keeping it reduced.
void push_reduced(const FreeProduct& fp, std::vector<Syllable>& stack, Syllable s) {
  if (s.elem == FiniteGroup::kIdentity) return;
  if (!stack.empty() && stack.back().factor == s.factor) {
    int prod = fp.factor(s.factor).mul(stack.back().elem, s.elem);
    stack.pop_back();
    if (prod != FiniteGroup::kIdentity) stack.push_back(Syllable{s.factor, prod});
  } else {
    stack.push_back(s);
  }
}

}  // namespace

Word reduce(const FreeProduct& fp, std::vector<Syllable> raw) {
  std::vector<Syllable> stack;
  stack.reserve(raw.size());
  for (const Syllable& s : raw) {
    check_syllable(fp, s);
    push_reduced(fp, stack, s);
  }
  return Word{&fp, std::move(stack)};
}

Word concat(const Word& u, const Word& v) {
  if (u.product != v.product)
    throw std::invalid_argument("concat of words from different free products");
  std::vector<Syllable> stack = u.syllables;
  for (const Syllable& s : v.syllables) push_reduced(*u.product, stack, s);
  return Word{u.product, std::move(stack)};
}

Word invert(const Word& u) {
  std::vector<Syllable> out;
  out.reserve(u.syllables.size());
  for (auto it = u.syllables.rbegin(); it != u.syllables.rend(); ++it)
    out.push_back(Syllable{it->factor, u.product->factor(it->factor).inv(it->elem)});
  return Word{u.product, std::move(out)};  // still reduced: inverses of non-identity
}

Word kill_factor(const Word& u, int factor) {
  if (factor < 0 || factor >= u.product->factor_count())
    throw std::out_of_range("kill_factor index out of range");
  std::vector<Syllable> stack;
  for (const Syllable& s : u.syllables)
    if (s.factor != factor) push_reduced(*u.product, stack, s);
  return Word{u.product, std::move(stack)};
}

Cotuple::Cotuple(std::vector<Homomorphism> l) : legs(std::move(l)) {
  if (legs.empty()) throw std::invalid_argument("cotuple needs at least one leg");
  for (const auto& h : legs)
    if (h.target() != legs.front().target())
      throw std::invalid_argument("cotuple legs have different targets");
}

int evaluate(const Word& u, const Cotuple& c) {
  if (u.product->factor_count() != static_cast<int>(c.legs.size()))
    throw std::invalid_argument("cotuple arity does not match the free product");
  const FiniteGroup& d = *c.target();
  int acc = FiniteGroup::kIdentity;
  for (const Syllable& s : u.syllables) acc = d.mul(acc, c.legs[s.factor](s.elem));
  return acc;
}

bool in_flat(const Word& u, int kept_factor) {
  if (u.product->factor_count() != 2)
    throw std::invalid_argument("in_flat expects a two-factor word");
  return kill_factor(u, kept_factor).empty();
}

bool in_diamond2_by_products(const Word& u) {
  if (u.product->factor_count() != 2)
    throw std::invalid_argument("in_diamond2 expects a two-factor word");
  int prod[2] = {FiniteGroup::kIdentity, FiniteGroup::kIdentity};
  for (const Syllable& s : u.syllables)
    prod[s.factor] = u.product->factor(s.factor).mul(prod[s.factor], s.elem);
  return prod[0] == FiniteGroup::kIdentity && prod[1] == FiniteGroup::kIdentity;
}

bool in_diamond2(const Word& u) {
  bool by_kill = in_flat(u, 0) && in_flat(u, 1);
  // For two factors, killing one factor leaves a one-factor word, which is
  // trivial exactly when that factor's syllable product is the identity; the
  // two characterizations must agree.
  if (by_kill != in_diamond2_by_products(u))
    throw std::logic_error("in_diamond2 characterizations disagree");
  return by_kill;
}

bool in_diamond3(const Word& u) {
  if (u.product->factor_count() != 3)
    throw std::invalid_argument("in_diamond3 expects a three-factor word");
  return kill_factor(u, 0).empty() && kill_factor(u, 1).empty() &&
         kill_factor(u, 2).empty();
}

bool in_weighted_kernel(const Word& u) {
  if (u.product->factor_count() != 3)
    throw std::invalid_argument("in_weighted_kernel expects a three-factor word");
  return kill_factor(u, 2).empty() && kill_factor(u, 1).empty();
}

std::uint64_t enumerate_words(const FreeProduct& fp, int max_syllables,
                              const std::function<void(const Word&)>& visit,
                              std::uint64_t cap) {
  if (max_syllables < 0) throw std::invalid_argument("max_syllables must be >= 0");
  std::uint64_t count = 0;
  Word current{&fp, {}};
  auto emit = [&](const Word& w) {
    if (++count > cap) throw std::runtime_error("word enumeration cap exceeded");
    visit(w);
  };

  // depth-first in (factor, element) order emits each fixed length in
  // lexicographic order; lengths are swept outermost
  std::function<void(int, int)> grow = [&](int remaining, int last_factor) {
    if (remaining == 0) {
      emit(current);
      return;
    }
    for (int f = 0; f < fp.factor_count(); ++f) {
      if (f == last_factor) continue;
      for (int e = 1; e < fp.factor(f).order(); ++e) {
        current.syllables.push_back(Syllable{f, e});
        grow(remaining - 1, f);
        current.syllables.pop_back();
      }
    }
  };
  for (int len = 0; len <= max_syllables; ++len) grow(len, -1);
  return count;
}

std::vector<Word> enumerate_words_list(const FreeProduct& fp, int max_syllables,
                                       std::uint64_t cap) {
  std::vector<Word> out;
  enumerate_words(fp, max_syllables, [&](const Word& w) { out.push_back(w); }, cap);
  return out;
}

Word parse_word(const FreeProduct& fp, std::string_view literal) {
  std::vector<Syllable> raw;
  std::size_t pos = 0;
  while (pos < literal.size()) {
    std::size_t end = literal.find(';', pos);
    if (end == std::string_view::npos) end = literal.size();
    std::string_view token = literal.substr(pos, end - pos);
    std::size_t colon = token.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("word token missing ':': " + std::string(token));
    int f = 0, e = 0;
    auto r1 = std::from_chars(token.data(), token.data() + colon, f);
    auto r2 = std::from_chars(token.data() + colon + 1, token.data() + token.size(), e);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} ||
        r1.ptr != token.data() + colon || r2.ptr != token.data() + token.size())
      throw std::invalid_argument("malformed word token: " + std::string(token));
    raw.push_back(Syllable{f, e});
    pos = end + 1;
  }
  return reduce(fp, std::move(raw));
}

std::string format_word(const Word& u) {
  std::string out;
  for (std::size_t i = 0; i < u.syllables.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(u.syllables[i].factor);
    out += ':';
    out += std::to_string(u.syllables[i].elem);
  }
  return out;
}

}  // namespace wcg
