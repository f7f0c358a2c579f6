#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wcg/group.hpp"
#include "wcg/word.hpp"

namespace wcg {

/// The cospan (x, y) into D together with the weight w.
struct WeightedCospan {
  GroupPtr d;
  Homomorphism x;  // X -> D
  Homomorphism y;  // Y -> D
  Homomorphism w;  // W -> D

  WeightedCospan(Homomorphism x_, Homomorphism y_, Homomorphism w_);
};

/// Two split epimorphisms f, g over a common base B with compatible maps
/// into D: f r = 1_B = g s and alpha r = beta = gamma s.
struct AdmissibilityDiagram {
  Homomorphism f;      // A -> B
  Homomorphism r;      // B -> A, section of f
  Homomorphism g;      // C -> B
  Homomorphism s;      // B -> C, section of g
  Homomorphism alpha;  // A -> D
  Homomorphism beta;   // B -> D
  Homomorphism gamma;  // C -> D

  AdmissibilityDiagram(Homomorphism f_, Homomorphism r_, Homomorphism g_,
                       Homomorphism s_, Homomorphism alpha_, Homomorphism beta_,
                       Homomorphism gamma_);
};

struct OracleParams {
  int depth = 12;
  int window = 2;
  std::uint64_t cost_cap = 2'000'000'000;
};

/// Result of a bounded-depth enumeration oracle, with the evidence needed
/// to decide whether the bounded value can be trusted.
struct OracleRun {
  Subgroup subgroup;
  int depth = 0;
  int last_growth = 0;  // largest word length at which the subgroup grew
  bool stable = false;  // no growth during the final `window` lengths
};

struct CommutatorReport {
  std::string subject;
  Subgroup formula;
  std::optional<Subgroup> oracle;
  bool equal = false;
  int depth = 0;
  int last_growth = 0;
  bool stable = false;
};

// --- Higgins commutators -------------------------------------------------

/// Subgroup of the ambient group generated by {[k, l] : k in K, l in L}.
Subgroup higgins_binary(const Subgroup& k, const Subgroup& l);

/// Ternary commutator [K, L, M] via the iterated-binary join
/// [[K,L],M] v [[L,M],K] v [[M,K],L]. This closed form is certified
/// against higgins_oracle by the test suite, not assumed.
Subgroup higgins_ternary(const Subgroup& k, const Subgroup& l, const Subgroup& m);

/// Enumeration-based commutator: words in the free product of the given
/// subgroups that die under every factor-killing projection, evaluated
/// through the inclusion maps and closed to a subgroup length by length.
OracleRun higgins_oracle(const std::vector<Subgroup>& subgroups,
                         const OracleParams& params = {});

// --- Weighted commutators -------------------------------------------------

/// Decomposition formula path: [Im x, Im y] v [Im x, Im y, Im w].
Subgroup weighted_commutator(const WeightedCospan& c);

/// Direct image of the kernel of W+X+Y -> (W+X) x_W (W+Y) under <w, x, y>,
/// computed by bounded enumeration over the domains of w, x, y. A word lies
/// in the kernel exactly when killing X and killing Y each reduce it to the
/// empty word.
OracleRun weighted_commutator_oracle(const WeightedCospan& c,
                                     const OracleParams& params = {});

Subgroup weighted_normal_commutator(const WeightedCospan& c);

/// x and y commute over w iff the weighted subobject commutator vanishes.
bool commutes_over(const WeightedCospan& c);

// --- Admissibility ---------------------------------------------------------

/// The unique candidate internal multiplication on A x_B C is
/// phi(a, c) = alpha(a) * gamma(s(f(a))^-1 * c); it is returned exactly when
/// it is a homomorphism.
std::optional<Homomorphism> admissible(const AdmissibilityDiagram& d);

/// Same check against a pullback computed once and reused across maps;
/// pb must be pullback(d.f, d.g, d.r, d.s).
std::optional<Homomorphism> admissible_on(const AdmissibilityDiagram& d,
                                          const PullbackGroup& pb);

/// The induced weighted cospan: x = alpha on Ker(f), y = gamma on Ker(g),
/// w = beta.
WeightedCospan cospan_of_diagram(const AdmissibilityDiagram& d);

CommutatorReport verify_decomposition(const WeightedCospan& c,
                                      const OracleParams& params = {},
                                      std::string subject = {});

// --- Generic projection-kernel image (oracle core) -------------------------

/// Image in D of {words u over the factors : every listed projection of u is
/// trivial}, restricted to words of at most `depth` syllables. Projection j
/// deletes the factors in kill_masks[j] and reduces. Equivalent to
/// enumerating all reduced words, filtering, evaluating through the cotuple
/// and closing length by length; computed as a dynamic program over
/// projection remainders so that deep instances stay tractable.
OracleRun projection_kernel_image(const FreeProduct& fp, const Cotuple& legs,
                                  const std::vector<std::uint32_t>& kill_masks,
                                  const OracleParams& params);

}  // namespace wcg
