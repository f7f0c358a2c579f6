#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "wcg/catalog.hpp"
#include "wcg/commutator.hpp"
#include "wcg/sweep.hpp"
#include "wcg/word.hpp"

using namespace wcg;

namespace {

Subgroup sub(GroupPtr g, std::vector<int> gens) {
  return generate_subgroup(std::move(g), gens);
}

Subgroup a3_in_s3(const GroupPtr& s3) {
  std::vector<int> members;
  for (int x = 0; x < 6; ++x)
    if (s3->element_order(x) != 2) members.push_back(x);
  return Subgroup{s3, members};
}

// Reference oracle: literal bounded enumeration over the free product,
// membership by the word predicates, incremental closure by length.
// Deliberately independent of the dynamic-programming implementation.
struct NaiveRun {
  Subgroup subgroup;
  int last_growth;
};

NaiveRun naive_kernel_image(const FreeProduct& fp, const Cotuple& legs,
                            const std::function<bool(const Word&)>& member,
                            int depth) {
  Subgroup s = trivial_subgroup(legs.target());
  int last_growth = 0;
  int current_len = 0;
  std::vector<int> bucket;
  auto flush = [&](int len) {
    if (bucket.empty()) return;
    bucket.insert(bucket.end(), s.members.begin(), s.members.end());
    Subgroup next = generate_subgroup(legs.target(), bucket);
    if (next.members != s.members) {
      s = std::move(next);
      last_growth = len;
    }
    bucket.clear();
  };
  enumerate_words(fp, depth, [&](const Word& u) {
    if (u.length() != current_len) {
      flush(current_len);
      current_len = u.length();
    }
    if (member(u)) bucket.push_back(evaluate(u, legs));
  });
  flush(current_len);
  return NaiveRun{std::move(s), last_growth};
}

NaiveRun naive_higgins(const std::vector<Subgroup>& subgroups, int depth) {
  FreeProduct fp;
  std::vector<Homomorphism> legs;
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    EmbeddedGroup e = subgroup_as_group(subgroups[i], "F" + std::to_string(i));
    fp.factors.push_back(e.group);
    legs.push_back(std::move(e.inclusion));
  }
  Cotuple cot(std::move(legs));
  auto member = [&](const Word& u) {
    return subgroups.size() == 2 ? in_diamond2(u) : in_diamond3(u);
  };
  return naive_kernel_image(fp, cot, member, depth);
}

NaiveRun naive_weighted(const WeightedCospan& c, int depth) {
  FreeProduct fp{{c.w.source(), c.x.source(), c.y.source()}};
  Cotuple cot({c.w, c.x, c.y});
  return naive_kernel_image(fp, cot,
                            [](const Word& u) { return in_weighted_kernel(u); },
                            depth);
}

WeightedCospan inclusion_cospan(const Subgroup& x, const Subgroup& y,
                                const Subgroup& w) {
  return WeightedCospan(subgroup_as_group(x, "X").inclusion,
                        subgroup_as_group(y, "Y").inclusion,
                        subgroup_as_group(w, "W").inclusion);
}

}  // namespace

TEST_CASE("higgins_binary") {
  GroupPtr s3 = symmetric_group(3);
  Subgroup a3 = a3_in_s3(s3);

  SUBCASE("abelian ambient group gives the trivial subgroup") {
    GroupPtr c12 = cyclic_group(12);
    auto subs = all_subgroups(c12);
    for (const auto& k : subs)
      for (const auto& l : subs) CHECK(higgins_binary(k, l).is_trivial());
  }
  SUBCASE("[S3, S3] = A3") {
    Subgroup c = higgins_binary(full_subgroup(s3), full_subgroup(s3));
    CHECK(subgroups_equal(c, a3));
  }
  SUBCASE("trivial factor kills the commutator") {
    CHECK(higgins_binary(trivial_subgroup(s3), full_subgroup(s3)).is_trivial());
  }
  SUBCASE("symmetry and monotonicity") {
    GroupPtr d4 = dihedral_group(4);
    auto subs = all_subgroups(d4);
    for (const auto& k : subs)
      for (const auto& l : subs) {
        Subgroup kl = higgins_binary(k, l);
        CHECK(subgroups_equal(kl, higgins_binary(l, k)));
        for (const auto& k2 : subs) {
          if (std::includes(k.members.begin(), k.members.end(),
                            k2.members.begin(), k2.members.end())) {
            Subgroup smaller = higgins_binary(k2, l);
            CHECK(std::includes(kl.members.begin(), kl.members.end(),
                                smaller.members.begin(), smaller.members.end()));
          }
        }
      }
  }
  SUBCASE("parent mismatch throws") {
    CHECK_THROWS(higgins_binary(full_subgroup(s3), full_subgroup(cyclic_group(6))));
  }
}

TEST_CASE("higgins_ternary") {
  GroupPtr s3 = symmetric_group(3);
  Subgroup a3 = a3_in_s3(s3);

  CHECK(subgroups_equal(
      higgins_ternary(full_subgroup(s3), full_subgroup(s3), full_subgroup(s3)), a3));
  CHECK(higgins_ternary(trivial_subgroup(s3), full_subgroup(s3), full_subgroup(s3))
            .is_trivial());

  GroupPtr c8 = cyclic_group(8);
  CHECK(higgins_ternary(full_subgroup(c8), full_subgroup(c8), full_subgroup(c8))
            .is_trivial());

  SUBCASE("invariant under argument permutations") {
    GroupPtr q8 = quaternion_group();
    auto subs = all_subgroups(q8);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
      const Subgroup& k = subs[rng() % subs.size()];
      const Subgroup& l = subs[rng() % subs.size()];
      const Subgroup& m = subs[rng() % subs.size()];
      Subgroup base = higgins_ternary(k, l, m);
      CHECK(subgroups_equal(base, higgins_ternary(k, m, l)));
      CHECK(subgroups_equal(base, higgins_ternary(l, k, m)));
      CHECK(subgroups_equal(base, higgins_ternary(l, m, k)));
      CHECK(subgroups_equal(base, higgins_ternary(m, k, l)));
      CHECK(subgroups_equal(base, higgins_ternary(m, l, k)));
    }
  }
}

TEST_CASE("higgins_oracle matches the naive enumeration oracle") {
  GroupPtr s3 = symmetric_group(3);
  GroupPtr q8 = quaternion_group();
  GroupPtr d4 = dihedral_group(4);
  Subgroup a3 = a3_in_s3(s3);

  auto check_instance = [](const std::vector<Subgroup>& subs, int depth) {
    OracleParams p;
    p.depth = depth;
    OracleRun fast = higgins_oracle(subs, p);
    NaiveRun slow = naive_higgins(subs, depth);
    CHECK(fast.subgroup.members == slow.subgroup.members);
    CHECK(fast.last_growth == slow.last_growth);
  };

  check_instance({full_subgroup(s3), full_subgroup(s3)}, 8);
  check_instance({a3, a3}, 6);
  check_instance({a3, full_subgroup(s3)}, 7);
  check_instance({full_subgroup(q8), full_subgroup(q8)}, 6);
  check_instance({full_subgroup(d4), sub(d4, {1})}, 6);
  // ternary
  check_instance({a3, a3, full_subgroup(s3)}, 7);
  check_instance({sub(q8, {1}), sub(q8, {2}), sub(q8, {3})}, 7);
  check_instance({full_subgroup(s3), full_subgroup(s3), full_subgroup(s3)}, 6);
}

TEST_CASE("higgins_oracle spot values") {
  GroupPtr s3 = symmetric_group(3);
  Subgroup a3 = a3_in_s3(s3);
  OracleParams p;

  SUBCASE("abelian ambient stabilizes immediately") {
    GroupPtr c6 = cyclic_group(6);
    OracleRun run = higgins_oracle({full_subgroup(c6), full_subgroup(c6)}, p);
    CHECK(run.subgroup.is_trivial());
    CHECK(run.last_growth == 0);
    CHECK(run.stable);
  }
  SUBCASE("binary S3 x S3 gives A3, matching the formula") {
    p.depth = 8;
    OracleRun run = higgins_oracle({full_subgroup(s3), full_subgroup(s3)}, p);
    CHECK(subgroups_equal(run.subgroup, a3));
    CHECK(run.stable);
    CHECK(subgroups_equal(run.subgroup,
                          higgins_binary(full_subgroup(s3), full_subgroup(s3))));
  }
  SUBCASE("ternary [A3, A3, S3] is trivial") {
    p.depth = 12;
    OracleRun run = higgins_oracle({a3, a3, full_subgroup(s3)}, p);
    CHECK(run.subgroup.is_trivial());
    CHECK(run.stable);
  }
  SUBCASE("tiny cap triggers the enumeration-cap error") {
    p.cost_cap = 10;
    p.depth = 8;
    CHECK_THROWS(higgins_oracle({full_subgroup(s3), full_subgroup(s3)}, p));
  }
}

TEST_CASE("weighted_commutator formula path") {
  GroupPtr s3 = symmetric_group(3);
  Subgroup a3 = a3_in_s3(s3);

  SUBCASE("trivial weight reduces to the binary commutator (Huq case)") {
    auto subs = all_subgroups(s3);
    for (const auto& x : subs)
      for (const auto& y : subs) {
        WeightedCospan c = inclusion_cospan(x, y, trivial_subgroup(s3));
        CHECK(subgroups_equal(weighted_commutator(c), higgins_binary(x, y)));
      }
  }
  SUBCASE("x = y = incl A3, w = 1_S3 vanishes") {
    WeightedCospan c = inclusion_cospan(a3, a3, full_subgroup(s3));
    CHECK(weighted_commutator(c).is_trivial());
    CHECK(commutes_over(c));
  }
  SUBCASE("x = y = w = 1_S3 gives A3") {
    WeightedCospan c = inclusion_cospan(full_subgroup(s3), full_subgroup(s3),
                                        full_subgroup(s3));
    CHECK(subgroups_equal(weighted_commutator(c), a3));
    CHECK_FALSE(commutes_over(c));
  }
}

TEST_CASE("weighted_commutator_oracle matches naive enumeration") {
  GroupPtr s3 = symmetric_group(3);
  GroupPtr q8 = quaternion_group();
  Subgroup a3 = a3_in_s3(s3);

  auto check_instance = [](const WeightedCospan& c, int depth) {
    OracleParams p;
    p.depth = depth;
    OracleRun fast = weighted_commutator_oracle(c, p);
    NaiveRun slow = naive_weighted(c, depth);
    CHECK(fast.subgroup.members == slow.subgroup.members);
    CHECK(fast.last_growth == slow.last_growth);
  };

  check_instance(inclusion_cospan(a3, a3, full_subgroup(s3)), 8);
  check_instance(inclusion_cospan(full_subgroup(s3), a3, a3), 7);
  check_instance(inclusion_cospan(sub(s3, {1}), sub(s3, {1}), full_subgroup(s3)), 9);
  check_instance(inclusion_cospan(sub(q8, {1}), sub(q8, {2}), sub(q8, {4})), 7);

  // non-inclusion legs too
  GroupPtr c2 = cyclic_group(2);
  std::vector<int> sign(6);
  for (int x = 0; x < 6; ++x) sign[x] = s3->element_order(x) == 2 ? 1 : 0;
  Homomorphism sgn(s3, c2, sign);
  int transposition = 0;
  for (int x = 1; x < 6; ++x)
    if (sign[x] == 1) { transposition = x; break; }
  Homomorphism section(c2, s3, {0, transposition});
  WeightedCospan mixed(Homomorphism::identity(s3),
                       Homomorphism::compose(section, sgn), section);
  check_instance(mixed, 7);
}

TEST_CASE("weighted oracle spot values at full depth") {
  GroupPtr s3 = symmetric_group(3);
  Subgroup a3 = a3_in_s3(s3);
  OracleParams p;  // depth 12, window 2

  SUBCASE("all legs trivial") {
    GroupPtr c1 = cyclic_group(1);
    Homomorphism t = Homomorphism::trivial(c1, s3);
    WeightedCospan c(t, t, t);
    OracleRun run = weighted_commutator_oracle(c, p);
    CHECK(run.subgroup.is_trivial());
    CHECK(run.last_growth == 0);
  }
  SUBCASE("x = y = incl A3, w = 1_S3") {
    OracleRun run = weighted_commutator_oracle(
        inclusion_cospan(a3, a3, full_subgroup(s3)), p);
    CHECK(run.subgroup.is_trivial());
    CHECK(run.stable);
  }
  SUBCASE("x = y = w = 1_S3") {
    OracleRun run = weighted_commutator_oracle(
        inclusion_cospan(full_subgroup(s3), full_subgroup(s3), full_subgroup(s3)), p);
    CHECK(subgroups_equal(run.subgroup, a3));
    CHECK(run.stable);
  }
  SUBCASE("the ternary term can appear late: X = Y = <t>, W = S3") {
    // binary [X, Y] is trivial but the weighted commutator is A3; the first
    // contributing kernel words are conjugated commutators of length 8
    WeightedCospan c =
        inclusion_cospan(sub(s3, {1}), sub(s3, {1}), full_subgroup(s3));
    OracleRun run = weighted_commutator_oracle(c, p);
    CHECK(subgroups_equal(run.subgroup, a3_in_s3(s3)));
    CHECK(run.last_growth == 8);
    CHECK(run.stable);
    CHECK(higgins_binary(sub(s3, {1}), sub(s3, {1})).is_trivial());
    CHECK(subgroups_equal(weighted_commutator(c), run.subgroup));
  }
}

TEST_CASE("weighted_normal_commutator") {
  GroupPtr s3 = symmetric_group(3);
  Subgroup a3 = a3_in_s3(s3);

  SUBCASE("already-normal commutator is unchanged") {
    WeightedCospan c = inclusion_cospan(full_subgroup(s3), full_subgroup(s3),
                                        full_subgroup(s3));
    Subgroup k = weighted_commutator(c);
    CHECK(is_normal(k));
    CHECK(subgroups_equal(weighted_normal_commutator(c), k));
    CHECK(subgroups_equal(weighted_normal_commutator(c), a3));
  }
  SUBCASE("abelian codomain") {
    GroupPtr c6 = cyclic_group(6);
    WeightedCospan c = inclusion_cospan(full_subgroup(c6), full_subgroup(c6),
                                        full_subgroup(c6));
    CHECK(subgroups_equal(weighted_normal_commutator(c), weighted_commutator(c)));
  }
  SUBCASE("normal closure contains the subobject commutator") {
    GroupPtr d4 = dihedral_group(4);
    auto subs = all_subgroups(d4);
    for (const auto& x : subs)
      for (const auto& y : subs) {
        WeightedCospan c = inclusion_cospan(x, y, full_subgroup(d4));
        Subgroup k = weighted_commutator(c);
        Subgroup n = weighted_normal_commutator(c);
        CHECK(is_normal(n));
        CHECK(std::includes(n.members.begin(), n.members.end(), k.members.begin(),
                            k.members.end()));
        if (is_normal(k)) CHECK(subgroups_equal(n, k));
      }
  }
}

TEST_CASE("admissible") {
  GroupPtr s3 = symmetric_group(3);
  GroupPtr c1 = cyclic_group(1);
  GroupPtr c6 = cyclic_group(6);

  SUBCASE("degenerate split C = B always admits phi = alpha pi1") {
    Homomorphism f = Homomorphism::trivial(s3, c1);
    Homomorphism r = Homomorphism::trivial(c1, s3);
    Homomorphism g = Homomorphism::identity(c1);
    AdmissibilityDiagram d(f, r, g, g, Homomorphism::identity(s3),
                           Homomorphism::trivial(c1, s3),
                           Homomorphism::trivial(c1, s3));
    auto phi = admissible(d);
    REQUIRE(phi.has_value());
  }
  SUBCASE("B trivial, alpha = gamma = 1_S3 is not admissible") {
    Homomorphism f = Homomorphism::trivial(s3, c1);
    Homomorphism r = Homomorphism::trivial(c1, s3);
    AdmissibilityDiagram d(f, r, f, r, Homomorphism::identity(s3),
                           Homomorphism::trivial(c1, s3),
                           Homomorphism::identity(s3));
    CHECK_FALSE(admissible(d).has_value());
  }
  SUBCASE("B trivial, abelian codomain is always admissible") {
    Homomorphism f = Homomorphism::trivial(s3, c1);
    Homomorphism r = Homomorphism::trivial(c1, s3);
    for (const auto& alpha : enumerate_homomorphisms(s3, c6))
      for (const auto& gamma : enumerate_homomorphisms(s3, c6)) {
        AdmissibilityDiagram d(f, r, f, r, alpha, Homomorphism::trivial(c1, c6),
                               gamma);
        CHECK(admissible(d).has_value());
      }
  }
  SUBCASE("invalid diagram data is rejected") {
    Homomorphism f = Homomorphism::trivial(s3, c1);
    Homomorphism r = Homomorphism::trivial(c1, s3);
    Homomorphism bad_beta = Homomorphism::identity(c6);
    CHECK_THROWS(AdmissibilityDiagram(f, r, f, r, Homomorphism::identity(s3),
                                      bad_beta, Homomorphism::identity(s3)));
  }
}

TEST_CASE("cospan_of_diagram and the admissibility translation") {
  GroupPtr s3 = symmetric_group(3);
  GroupPtr c1 = cyclic_group(1);
  GroupPtr c6 = cyclic_group(6);
  Homomorphism f = Homomorphism::trivial(s3, c1);
  Homomorphism r = Homomorphism::trivial(c1, s3);

  SUBCASE("the S3 counterexample translates to a non-commuting cospan") {
    AdmissibilityDiagram d(f, r, f, r, Homomorphism::identity(s3),
                           Homomorphism::trivial(c1, s3),
                           Homomorphism::identity(s3));
    WeightedCospan c = cospan_of_diagram(d);
    CHECK_FALSE(commutes_over(c));
    CHECK_FALSE(admissible(d).has_value());
  }
  SUBCASE("abelian codomain: both sides are positive") {
    AdmissibilityDiagram d(f, r, f, r,
                           enumerate_homomorphisms(s3, c6).back(),
                           Homomorphism::trivial(c1, c6),
                           enumerate_homomorphisms(s3, c6).back());
    WeightedCospan c = cospan_of_diagram(d);
    CHECK(commutes_over(c));
    CHECK(admissible(d).has_value());
  }
  SUBCASE("degenerate split: Y is trivial and the cospan always commutes") {
    Homomorphism g = Homomorphism::identity(c1);
    AdmissibilityDiagram d(f, r, g, g, Homomorphism::identity(s3),
                           Homomorphism::trivial(c1, s3),
                           Homomorphism::trivial(c1, s3));
    WeightedCospan c = cospan_of_diagram(d);
    CHECK(kernel(d.g).is_trivial());
    CHECK(commutes_over(c));
    CHECK(admissible(d).has_value());
  }
}

TEST_CASE("verify_decomposition") {
  GroupPtr s3 = symmetric_group(3);
  GroupPtr c6 = cyclic_group(6);
  Subgroup a3 = a3_in_s3(s3);

  SUBCASE("abelian codomain: both routes trivial") {
    CommutatorReport rep = verify_decomposition(
        inclusion_cospan(full_subgroup(c6), full_subgroup(c6), full_subgroup(c6)));
    CHECK(rep.equal);
    CHECK(rep.stable);
    CHECK(rep.formula.is_trivial());
    REQUIRE(rep.oracle.has_value());
    CHECK(rep.oracle->is_trivial());
  }
  SUBCASE("S3 identity cospan: both routes give A3") {
    CommutatorReport rep = verify_decomposition(
        inclusion_cospan(full_subgroup(s3), full_subgroup(s3), full_subgroup(s3)));
    CHECK(rep.equal);
    CHECK(rep.stable);
    CHECK(subgroups_equal(rep.formula, a3));
  }
  SUBCASE("A3 inclusions with full weight: both routes trivial") {
    CommutatorReport rep = verify_decomposition(
        inclusion_cospan(a3, a3, full_subgroup(s3)));
    CHECK(rep.equal);
    CHECK(rep.stable);
    CHECK(rep.formula.is_trivial());
  }
}

TEST_CASE("oracle containment of both decomposition terms") {
  GroupPtr d4 = dihedral_group(4);
  auto subs = all_subgroups(d4);
  OracleParams p;
  p.depth = 10;
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Subgroup& x = subs[rng() % subs.size()];
    const Subgroup& y = subs[rng() % subs.size()];
    const Subgroup& w = subs[rng() % subs.size()];
    WeightedCospan c = inclusion_cospan(x, y, w);
    OracleRun run = weighted_commutator_oracle(c, p);
    REQUIRE(run.stable);
    Subgroup binary = higgins_binary(x, y);
    Subgroup ternary = higgins_ternary(x, y, w);
    CHECK(std::includes(run.subgroup.members.begin(), run.subgroup.members.end(),
                        binary.members.begin(), binary.members.end()));
    CHECK(std::includes(run.subgroup.members.begin(), run.subgroup.members.end(),
                        ternary.members.begin(), ternary.members.end()));
  }
}

TEST_CASE("decomposition campaign on a small catalog slice") {
  Catalog cat = Catalog::builtins();
  CampaignConfig cfg;
  cfg.groups = {"C4", "S3", "V4"};
  cfg.max_order = 8;
  cfg.depth = 10;
  cfg.jobs = 2;
  CampaignResult res = run_decomposition_campaign(cat, cfg);
  CHECK(res.summary.instances > 0);
  CHECK(res.summary.mismatches == 0);
  CHECK(res.summary.unstable == 0);
  CHECK(res.summary.huq_violations == 0);
  CHECK(res.summary.vanishing_violations == 0);
  CHECK(res.summary.weight_dependence_violations == 0);
  CHECK(static_cast<long long>(res.reports.size()) == res.summary.instances);

  SUBCASE("campaign output does not depend on the parallelism degree") {
    cfg.jobs = 1;
    CampaignResult serial = run_decomposition_campaign(cat, cfg);
    REQUIRE(serial.reports.size() == res.reports.size());
    for (std::size_t i = 0; i < serial.reports.size(); ++i) {
      CHECK(serial.reports[i].subject == res.reports[i].subject);
      CHECK(serial.reports[i].formula.members == res.reports[i].formula.members);
      CHECK(serial.reports[i].equal == res.reports[i].equal);
    }
  }
  SUBCASE("config validation") {
    cfg.depth = 3;
    CHECK_THROWS(cfg.validate());
    cfg.depth = 10;
    cfg.window = 0;
    CHECK_THROWS(cfg.validate());
  }
}
