#pragma once

#include "expfun/hopf.hpp"

namespace expfun::hopf {

// linear map between presentations as one matrix (target.size() x source.size());
// it must respect the (degree, weight) blocks
struct HopfMorphism {
  HopfPtr source, target;
  FpMatrix matrix;
};

HopfMorphism identity(const HopfPtr& h);
HopfMorphism unit_counit(const HopfPtr& source, const HopfPtr& target);
HopfMorphism compose(const HopfMorphism& g, const HopfMorphism& f);
HopfMorphism convolution(const HopfMorphism& f, const HopfMorphism& g);
HopfMorphism convolution_power(const HopfMorphism& f, int k);

// convolution inverse of the identity
FpMatrix antipode(const HopfPresentation& h);

struct MorphismCheck {
  bool respect_grading = true;  // off for the self-duality witness
  bool respect_weight = true;
};
Report check_morphism(const HopfMorphism& f, MorphismCheck opts = {});

// columns whose image is beyond the window are flagged unknown
struct LinearMap {
  FpMatrix matrix;
  std::vector<bool> known;
};

// x -> x^p and the p-fold diagonal coefficient extraction; both reject odd
// degrees at odd p
LinearMap frobenius(const HopfPresentation& h);
LinearMap verschiebung(const HopfPresentation& h);

struct Kernel {
  HopfPtr algebra;
  HopfMorphism inclusion;
};
struct Cokernel {
  HopfPtr algebra;
  HopfMorphism projection;
  std::vector<int> representatives;  // ambient basis index of each quotient basis element
};

// closure failures inside the window throw std::runtime_error
Kernel hopf_kernel(const HopfMorphism& f);
Cokernel hopf_cokernel(const HopfMorphism& f);

// sub-presentation on per-block column spans (must contain the unit and close)
Kernel sub_presentation(const HopfPtr& h, const GradedSubspace& s);
// quotient by a Hopf ideal given per block
Cokernel quotient_presentation(const HopfPtr& h, const GradedSubspace& ideal);
// ideal generated by a per-block subspace of the augmentation ideal
GradedSubspace generated_ideal(const HopfPresentation& h, const GradedSubspace& gens);

struct ExactTriple {
  bool ok = false;
  std::string reason;
};
ExactTriple check_exact_triple(const HopfMorphism& f, const HopfMorphism& g);

// Hopf sections s of g (g s = id): enumerate the affine solution space of the
// linear equations and test each candidate
struct SectionSearch {
  bool exhausted = false;  // false when the affine space was too large to enumerate
  long affine_dimension = 0;
  long candidates = 0;
  long hopf_sections = 0;
};
SectionSearch find_hopf_sections(const HopfMorphism& g, long max_candidates = 1 << 16);

// graded dual with degrees kept: (H*)^d = (H^d)*, pairing with Koszul signs
HopfPresentation restricted_dual(const HopfPresentation& h);

}  // namespace expfun::hopf
