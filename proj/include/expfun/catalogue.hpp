#pragma once

#include "expfun/hopf.hpp"
#include "expfun/morphism.hpp"

#include <optional>
#include <string>

namespace expfun::catalogue {

using hopf::HopfPresentation;
using la::Scalar;

enum class Kind { S, Lambda, Gamma, S_n, Gamma_n, G_n, Morava };

struct AlgebraKind {
  Kind kind = Kind::S;
  int n = 0;  // truncation level for S_n, Gamma_n, G_n
};

AlgebraKind parse_kind(const std::string& name, int n = 0);
std::string kind_name(Kind k);

// generator F_{r,i}: degree i, weight p^r
struct GeneratorSpec {
  int r = 0;
  long i = 0;
  int multiplicity = 1;
};

// binomial coefficient mod p by Lucas' theorem
Scalar binomial_mod(long n, long k, int p);
long ipow(long base, int e);

// degree-0 generators need a weight bound to stay finite
HopfPresentation make(int p, AlgebraKind kind, GeneratorSpec gen, long degree_bound,
                      std::optional<long> weight_bound = std::nullopt);

// weight w -> p^r w (and degree d -> p^r d when scale_degrees)
HopfPresentation twist_regrade(const HopfPresentation& h, int r, bool scale_degrees = false);

// the self-dual algebra: a_m = coeff[m] * y^{exponent[m]}
struct MoravaBasis {
  std::vector<Scalar> coeff;
  std::vector<int> exponent;
};
MoravaBasis morava_basis(int p);

// a_i -> b_i, b_i dual to y^i, as a matrix into the dual basis of a restricted_dual
la::FpMatrix morava_duality_witness(int p);
// named checks: axioms on both sides, witness a Hopf isomorphism, degrees times p
std::vector<std::pair<std::string, hopf::Report>> morava_selfduality(int p);

// Gamma_n -> G_n -> S^{(n)} and S^{(n+1)} -> G_n -> Gamma_{n+1} on F_{r,i}
struct Extension {
  hopf::HopfMorphism f, g;
};
Extension gn_gamma_sequence(int p, int n, GeneratorSpec gen, long degree_bound);
Extension gn_symmetric_sequence(int p, int n, GeneratorSpec gen, long degree_bound);

}  // namespace expfun::catalogue
