#pragma once

#include "expfun/hopf.hpp"

namespace expfun::hopf {

enum class Filtration { primitive, augmentation };

// P_k = k + ker of the (k+1)-fold reduced diagonal
GradedSubspace primitive_filtration(const HopfPresentation& h, int k);
// Q_{-k}: k-fold products of the augmentation ideal
GradedSubspace augmentation_filtration(const HopfPresentation& h, int k);

// kernel of the iterated reduced diagonal computed from its definition (slow path)
GradedSubspace reduced_diagonal_kernel(const HopfPresentation& h, int k);

struct Stabilization {
  bool monotone = true;
  bool stable_once_equal = true;
  int stable_from = -1;  // first level i with F_i = F_{i+1}
  bool exhaustive = false;  // P_i reaches everything, resp. Q_{-i} reaches zero
};
Stabilization check_stabilization(const HopfPresentation& h, Filtration f, int max_level);

// throws when the filtration does not exhaust (resp. separate) the window
HopfPresentation associated_graded(const HopfPresentation& h, Filtration f);

// a primitive x with 1, x, ..., x^{e-1} a basis and x^e = 0, e = dim h
struct PowerGenerator {
  Vec element;
  long exponent = 0;
};
std::optional<PowerGenerator> primitive_power_generator(const HopfPresentation& h, long candidate_cap = 4096);

}  // namespace expfun::hopf
