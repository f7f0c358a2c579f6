#include "wcg/commutator.hpp"

#include <stdexcept>
#include <utility>

namespace wcg {

WeightedCospan::WeightedCospan(Homomorphism x_, Homomorphism y_, Homomorphism w_)
    : d(x_.target()), x(std::move(x_)), y(std::move(y_)), w(std::move(w_)) {
  if (y.target() != d || w.target() != d)
    throw std::invalid_argument("weighted cospan legs must share a codomain");
}

AdmissibilityDiagram::AdmissibilityDiagram(Homomorphism f_, Homomorphism r_,
                                           Homomorphism g_, Homomorphism s_,
                                           Homomorphism alpha_, Homomorphism beta_,
                                           Homomorphism gamma_)
    : f(std::move(f_)), r(std::move(r_)), g(std::move(g_)), s(std::move(s_)),
      alpha(std::move(alpha_)), beta(std::move(beta_)), gamma(std::move(gamma_)) {
  const GroupPtr& a = f.source();
  const GroupPtr& b = f.target();
  const GroupPtr& c = g.source();
  if (g.target() != b) throw std::invalid_argument("f and g must share the base B");
  if (r.source() != b || r.target() != a) throw std::invalid_argument("r must go B -> A");
  if (s.source() != b || s.target() != c) throw std::invalid_argument("s must go B -> C");
  if (alpha.source() != a || beta.source() != b || gamma.source() != c)
    throw std::invalid_argument("alpha, beta, gamma have wrong domains");
  const GroupPtr& d = alpha.target();
  if (beta.target() != d || gamma.target() != d)
    throw std::invalid_argument("alpha, beta, gamma must share a codomain");
  for (int v = 0; v < b->order(); ++v) {
    if (f(r(v)) != v) throw std::invalid_argument("r is not a section of f");
    if (g(s(v)) != v) throw std::invalid_argument("s is not a section of g");
    if (alpha(r(v)) != beta(v) || gamma(s(v)) != beta(v))
      throw std::invalid_argument("alpha r = beta = gamma s fails");
  }
}

Subgroup higgins_binary(const Subgroup& k, const Subgroup& l) {
  if (k.parent != l.parent)
    throw std::invalid_argument("higgins_binary needs subgroups of one group");
  const FiniteGroup& g = *k.parent;
  std::vector<int> gens;
  std::vector<char> seen(g.order(), 0);
  for (int a : k.members)
    for (int b : l.members) {
      int c = g.commutator(a, b);
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  return generate_subgroup(k.parent, gens);
}

Subgroup higgins_ternary(const Subgroup& k, const Subgroup& l, const Subgroup& m) {
  if (k.parent != l.parent || l.parent != m.parent)
    throw std::invalid_argument("higgins_ternary needs subgroups of one group");
  Subgroup kl_m = higgins_binary(higgins_binary(k, l), m);
  Subgroup lm_k = higgins_binary(higgins_binary(l, m), k);
  Subgroup mk_l = higgins_binary(higgins_binary(m, k), l);
  return join(join(kl_m, lm_k), mk_l);
}

OracleRun higgins_oracle(const std::vector<Subgroup>& subgroups,
                         const OracleParams& params) {
  if (subgroups.size() != 2 && subgroups.size() != 3)
    throw std::invalid_argument("higgins_oracle takes 2 or 3 subgroups");
  for (const auto& h : subgroups)
    if (h.parent != subgroups.front().parent)
      throw std::invalid_argument("higgins_oracle needs subgroups of one group");

  FreeProduct fp;
  std::vector<Homomorphism> legs;
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    EmbeddedGroup e = subgroup_as_group(subgroups[i], "F" + std::to_string(i));
    fp.factors.push_back(e.group);
    legs.push_back(std::move(e.inclusion));
  }
  std::vector<std::uint32_t> kills;
  for (std::size_t i = 0; i < subgroups.size(); ++i) kills.push_back(1u << i);
  return projection_kernel_image(fp, Cotuple(std::move(legs)), kills, params);
}

Subgroup weighted_commutator(const WeightedCospan& c) {
  Subgroup im_x = image(c.x);
  Subgroup im_y = image(c.y);
  Subgroup im_w = image(c.w);
  return join(higgins_binary(im_x, im_y), higgins_ternary(im_x, im_y, im_w));
}

OracleRun weighted_commutator_oracle(const WeightedCospan& c,
                                     const OracleParams& params) {
  FreeProduct fp;
  fp.factors = {c.w.source(), c.x.source(), c.y.source()};  // 0=W, 1=X, 2=Y
  Cotuple legs({c.w, c.x, c.y});
  // kernel of the comparison to (W+X) x_W (W+Y): both factor-killing
  // projections must be trivial
  std::vector<std::uint32_t> kills = {1u << 2, 1u << 1};
  return projection_kernel_image(fp, legs, kills, params);
}

Subgroup weighted_normal_commutator(const WeightedCospan& c) {
  Subgroup k = weighted_commutator(c);
  return normal_closure(c.d, k.members);
}

bool commutes_over(const WeightedCospan& c) {
  return weighted_commutator(c).is_trivial();
}

std::optional<Homomorphism> admissible(const AdmissibilityDiagram& d) {
  PullbackGroup pb = pullback(d.f, d.g, d.r, d.s);
  return admissible_on(d, pb);
}

std::optional<Homomorphism> admissible_on(const AdmissibilityDiagram& d,
                                          const PullbackGroup& pb) {
  const FiniteGroup& target = *d.alpha.target();
  const FiniteGroup& cgrp = *d.g.source();
  int n = pb.carrier->order();

  // phi(a, c) = alpha(a) * gamma(s(f(a))^-1 * c), the only map compatible
  // with both injections
  std::vector<int> phi(n);
  for (int i = 0; i < n; ++i) {
    auto [a, c] = pb.pairs[i];
    int base = cgrp.inv(d.s(d.f(a)));
    phi[i] = target.mul(d.alpha(a), d.gamma(cgrp.mul(base, c)));
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (phi[pb.carrier->mul(i, j)] != target.mul(phi[i], phi[j]))
        return std::nullopt;

  Homomorphism hom(pb.carrier, d.alpha.target(), std::move(phi));
  // the candidate restricts to alpha and gamma along the injections
  for (int a = 0; a < d.f.source()->order(); ++a)
    if (hom((*pb.inj1)(a)) != d.alpha(a))
      throw std::logic_error("internal multiplication does not restrict to alpha");
  for (int c = 0; c < cgrp.order(); ++c)
    if (hom((*pb.inj2)(c)) != d.gamma(c))
      throw std::logic_error("internal multiplication does not restrict to gamma");
  return hom;
}

WeightedCospan cospan_of_diagram(const AdmissibilityDiagram& d) {
  EmbeddedGroup kx = subgroup_as_group(kernel(d.f), "Ker(f)");
  EmbeddedGroup ky = subgroup_as_group(kernel(d.g), "Ker(g)");
  Homomorphism x = Homomorphism::compose(d.alpha, kx.inclusion);
  Homomorphism y = Homomorphism::compose(d.gamma, ky.inclusion);
  return WeightedCospan(std::move(x), std::move(y), d.beta);
}

CommutatorReport verify_decomposition(const WeightedCospan& c,
                                      const OracleParams& params,
                                      std::string subject) {
  CommutatorReport report;
  report.subject = std::move(subject);
  report.formula = weighted_commutator(c);
  OracleRun run = weighted_commutator_oracle(c, params);
  report.depth = run.depth;
  report.last_growth = run.last_growth;
  report.stable = run.stable;
  report.equal = subgroups_equal(report.formula, run.subgroup);
  report.oracle = std::move(run.subgroup);
  return report;
}

}  // namespace wcg
