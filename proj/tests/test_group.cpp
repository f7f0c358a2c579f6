#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "wcg/catalog.hpp"
#include "wcg/group.hpp"

using namespace wcg;

TEST_CASE("trivial Cayley table builds the one-element group") {
  GroupPtr g = make_group("triv", {{0}});
  CHECK(g->order() == 1);
  CHECK(g->mul(0, 0) == 0);
}

TEST_CASE("permutation generators close to S3") {
  // oracle: naive orbit enumeration over all 3! permutations
  GroupPtr g = group_from_permutations("S3", 3, {{1, 0, 2}, {1, 2, 0}});
  CHECK(g->order() == 6);
  CHECK_FALSE(g->is_abelian());
}

TEST_CASE("cyclic group of order 4 is abelian with g^4 = e") {
  GroupPtr g = cyclic_group(4);
  CHECK(g->order() == 4);
  CHECK(g->is_abelian());
  for (int x = 0; x < 4; ++x) {
    int p = 0;
    for (int i = 0; i < 4; ++i) p = g->mul(p, x);
    CHECK(p == FiniteGroup::kIdentity);
  }
}

TEST_CASE("construction rejects broken tables") {
  CHECK_THROWS(make_group("bad", {{0, 1}, {1, 1}}));        // row not a permutation
  CHECK_THROWS(make_group("noid", {{1, 0}, {0, 1}}));       // identity not at 0
  CHECK_THROWS(group_from_permutations("big", 5,
                                       {{1, 2, 3, 4, 0}, {1, 0, 2, 3, 4}}, 30));
}

TEST_CASE("generate_subgroup") {
  GroupPtr s3 = symmetric_group(3);
  SUBCASE("empty generating set gives the trivial subgroup") {
    Subgroup h = generate_subgroup(s3, {});
    CHECK(h.members == std::vector<int>{0});
  }
  SUBCASE("a transposition generates order 2, adding a 3-cycle gives all of S3") {
    int transposition = -1, threecycle = -1;
    for (int x = 1; x < 6; ++x) {
      if (s3->element_order(x) == 2 && transposition < 0) transposition = x;
      if (s3->element_order(x) == 3 && threecycle < 0) threecycle = x;
    }
    std::vector<int> t{transposition};
    CHECK(generate_subgroup(s3, t).order() == 2);
    std::vector<int> both{transposition, threecycle};
    CHECK(generate_subgroup(s3, both).order() == 6);
  }
  SUBCASE("out-of-range generator throws") {
    std::vector<int> bad{17};
    CHECK_THROWS(generate_subgroup(s3, bad));
  }
}

TEST_CASE("generate_subgroup is monotone and idempotent") {
  GroupPtr g = dihedral_group(4);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> small, large;
    for (int x = 0; x < g->order(); ++x) {
      if (rng() % 3 == 0) small.push_back(x);
    }
    large = small;
    large.push_back(static_cast<int>(rng() % g->order()));
    Subgroup hs = generate_subgroup(g, small);
    Subgroup hl = generate_subgroup(g, large);
    CHECK(std::includes(hl.members.begin(), hl.members.end(), hs.members.begin(),
                        hs.members.end()));
    Subgroup again = generate_subgroup(g, hs.members);
    CHECK(subgroups_equal(again, hs));
  }
}

TEST_CASE("normal closure") {
  GroupPtr s3 = symmetric_group(3);
  int transposition = -1;
  for (int x = 1; x < 6; ++x)
    if (s3->element_order(x) == 2) { transposition = x; break; }

  SUBCASE("conjugates of a transposition generate all of S3") {
    std::vector<int> t{transposition};
    CHECK(normal_closure(s3, t).order() == 6);
  }
  SUBCASE("empty seed gives the trivial subgroup") {
    CHECK(normal_closure(s3, {}).is_trivial());
  }
  SUBCASE("in an abelian group the normal closure is just the closure") {
    GroupPtr c12 = cyclic_group(12);
    for (int x = 0; x < 12; ++x) {
      std::vector<int> seed{x};
      CHECK(subgroups_equal(normal_closure(c12, seed), generate_subgroup(c12, seed)));
    }
  }
  SUBCASE("normal closure contains the plain closure") {
    GroupPtr d4 = dihedral_group(4);
    for (int x = 0; x < d4->order(); ++x) {
      std::vector<int> seed{x};
      Subgroup nc = normal_closure(d4, seed);
      Subgroup gc = generate_subgroup(d4, seed);
      CHECK(std::includes(nc.members.begin(), nc.members.end(), gc.members.begin(),
                          gc.members.end()));
      CHECK(is_normal(nc));
    }
  }
}

TEST_CASE("kernel and image") {
  GroupPtr s3 = symmetric_group(3);
  GroupPtr c2 = cyclic_group(2);

  SUBCASE("identity map") {
    Homomorphism h = Homomorphism::identity(s3);
    CHECK(kernel(h).is_trivial());
    CHECK(image(h).is_full());
  }
  SUBCASE("constant-to-identity map") {
    Homomorphism h = Homomorphism::trivial(s3, c2);
    CHECK(kernel(h).is_full());
    CHECK(image(h).is_trivial());
  }
  SUBCASE("sign map S3 -> C2") {
    std::vector<int> sign(6);
    for (int x = 0; x < 6; ++x) sign[x] = s3->element_order(x) == 2 ? 1 : 0;
    Homomorphism h(s3, c2, sign);
    Subgroup k = kernel(h);
    CHECK(k.order() == 3);
    CHECK(is_normal(k));
    CHECK(image(h).order() == 2);
  }
  SUBCASE("kernels are always normal") {
    GroupPtr d4 = dihedral_group(4);
    for (const auto& h : enumerate_homomorphisms(d4, s3)) CHECK(is_normal(kernel(h)));
  }
}

TEST_CASE("homomorphism construction validates the defining law") {
  GroupPtr c4 = cyclic_group(4);
  GroupPtr c2 = cyclic_group(2);
  CHECK_THROWS(Homomorphism(c4, c2, {0, 1, 1, 0}));
  CHECK_NOTHROW(Homomorphism(c4, c2, {0, 1, 0, 1}));
}

TEST_CASE("join") {
  GroupPtr s3 = symmetric_group(3);
  int transposition = -1, threecycle = -1;
  for (int x = 1; x < 6; ++x) {
    if (s3->element_order(x) == 2 && transposition < 0) transposition = x;
    if (s3->element_order(x) == 3 && threecycle < 0) threecycle = x;
  }
  std::vector<int> t{transposition}, c{threecycle};
  Subgroup ht = generate_subgroup(s3, t);
  Subgroup hc = generate_subgroup(s3, c);
  CHECK(subgroups_equal(join(ht, trivial_subgroup(s3)), ht));
  CHECK(subgroups_equal(join(ht, ht), ht));
  CHECK(join(ht, hc).is_full());
  GroupPtr other = cyclic_group(3);
  CHECK_THROWS(join(ht, trivial_subgroup(other)));
}

TEST_CASE("normality checks in S3") {
  GroupPtr s3 = symmetric_group(3);
  CHECK(is_normal(full_subgroup(s3)));
  CHECK(is_normal(trivial_subgroup(s3)));
  for (int x = 1; x < 6; ++x) {
    std::vector<int> seed{x};
    Subgroup h = generate_subgroup(s3, seed);
    if (h.order() == 3) CHECK(is_normal(h));   // A3, index 2
    if (h.order() == 2) CHECK_FALSE(is_normal(h));  // a transposition escapes
  }
}

TEST_CASE("all_subgroups finds the full lattice") {
  CHECK(all_subgroups(symmetric_group(3)).size() == 6);
  CHECK(all_subgroups(cyclic_group(12)).size() == 6);
  CHECK(all_subgroups(dihedral_group(4)).size() == 10);
  CHECK(all_subgroups(quaternion_group()).size() == 6);
  CHECK(all_subgroups(alternating_group_4()).size() == 10);
}

TEST_CASE("pullback") {
  GroupPtr s3 = symmetric_group(3);
  GroupPtr c2 = cyclic_group(2);
  std::vector<int> sign(6);
  for (int x = 0; x < 6; ++x) sign[x] = s3->element_order(x) == 2 ? 1 : 0;
  Homomorphism f(s3, c2, sign);

  SUBCASE("pullback along the identity is the domain") {
    PullbackGroup pb = pullback(f, Homomorphism::identity(c2));
    CHECK(pb.carrier->order() == 6);
  }
  SUBCASE("pullback over the trivial group is the direct product") {
    GroupPtr c1 = cyclic_group(1);
    Homomorphism ta = Homomorphism::trivial(s3, c1);
    Homomorphism tc = Homomorphism::trivial(c2, c1);
    PullbackGroup pb = pullback(ta, tc);
    CHECK(pb.carrier->order() == 12);
  }
  SUBCASE("sign x sign has 18 matching pairs") {
    PullbackGroup pb = pullback(f, f);
    CHECK(pb.carrier->order() == 18);
  }
  SUBCASE("mismatched codomains throw") {
    Homomorphism g = Homomorphism::identity(s3);
    CHECK_THROWS(pullback(f, g));
  }
  SUBCASE("sections give injections with the generation identity") {
    int transposition = -1;
    for (int x = 1; x < 6; ++x)
      if (sign[x] == 1) { transposition = x; break; }
    std::vector<int> sec{0, transposition};
    Homomorphism r(c2, s3, sec);
    PullbackGroup pb = pullback(f, f, r, r);
    REQUIRE(pb.inj1.has_value());
    REQUIRE(pb.inj2.has_value());
    // e1(r(b)) = (r(b), s(b)) = e2(s(b)), and here s = r
    for (int b = 0; b < 2; ++b) {
      CHECK((*pb.inj1)(r(b)) == (*pb.inj2)(r(b)));
      CHECK(pb.proj1((*pb.inj1)(r(b))) == r(b));
    }
    // every carrier element (a, c) factors as e1(a) * e2(s(f(a))^-1 c)
    for (int i = 0; i < pb.carrier->order(); ++i) {
      auto [a, c] = pb.pairs[i];
      int tail = s3->mul(s3->inv(r(f(a))), c);
      int rebuilt = pb.carrier->mul((*pb.inj1)(a), (*pb.inj2)(tail));
      CHECK(rebuilt == i);
    }
    // projections retract the injections
    for (int a = 0; a < 6; ++a) CHECK(pb.proj1((*pb.inj1)(a)) == a);
    for (int c = 0; c < 6; ++c) CHECK(pb.proj2((*pb.inj2)(c)) == c);
  }
  SUBCASE("non-section r is rejected") {
    Homomorphism bad = Homomorphism::trivial(c2, s3);
    CHECK_THROWS(pullback(f, f, bad, std::nullopt));
  }
}

TEST_CASE("enumerate_homomorphisms agrees with brute force on small pairs") {
  GroupPtr c6 = cyclic_group(6);
  GroupPtr s3 = symmetric_group(3);
  GroupPtr c2 = cyclic_group(2);
  GroupPtr v4 = klein_four_group();

  auto brute_count = [](GroupPtr a, GroupPtr b) {
    int n = a->order();
    long long count = 0;
    std::vector<int> im(n, 0);
    std::function<void(int)> rec = [&](int pos) {
      if (pos == n) {
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q)
            if (im[a->mul(p, q)] != b->mul(im[p], im[q])) return;
        ++count;
        return;
      }
      for (int v = 0; v < b->order(); ++v) {
        im[pos] = v;
        rec(pos + 1);
      }
    };
    rec(1);  // im[0] = 0 forced
    return count;
  };

  CHECK(static_cast<long long>(enumerate_homomorphisms(c6, c2).size()) ==
        brute_count(c6, c2));
  CHECK(static_cast<long long>(enumerate_homomorphisms(v4, c6).size()) ==
        brute_count(v4, c6));
  CHECK(static_cast<long long>(enumerate_homomorphisms(s3, s3).size()) ==
        brute_count(s3, s3));
  CHECK(static_cast<long long>(enumerate_homomorphisms(v4, v4).size()) ==
        brute_count(v4, v4));
}

TEST_CASE("subgroup_as_group preserves structure") {
  GroupPtr d6 = dihedral_group(6);
  for (const Subgroup& h : all_subgroups(d6)) {
    EmbeddedGroup e = subgroup_as_group(h, "H");
    CHECK(e.group->order() == h.order());
    CHECK(subgroups_equal(image(e.inclusion), h));
  }
}

TEST_CASE("catalog builtins") {
  Catalog c = Catalog::builtins();
  CHECK(c.find("C16")->order() == 16);
  CHECK(c.find("D6")->order() == 12);
  CHECK(c.find("Q8")->order() == 8);
  CHECK(c.find("S4")->order() == 24);
  CHECK(c.find("A4")->order() == 12);
  CHECK(c.find("V4")->order() == 4);
  CHECK_THROWS(c.find("E8"));
  std::set<std::string> labels;
  for (const auto& l : c.labels()) labels.insert(l);
  CHECK(labels.size() == c.labels().size());
}
