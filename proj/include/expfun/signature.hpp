#pragma once

#include "expfun/dieudonne.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace expfun::sig {

// degree -> multiplicity of the twisted simple placed there; no zero entries
using Profile = std::map<int, int>;

struct Pair {
  Profile P, Q;
  auto operator<=>(const Pair&) const = default;
};

using Multiset = std::map<Pair, int>;

Multiset signature_of(const std::vector<Pair>& summands);
Pair truncate(const Pair& x, int k);
bool nonzero_at(const Pair& x, int k);
bool is_zero(const Pair& x);

Multiset fake_truncation(const Multiset& sigma, int k);
// phi[k] for k = 0..support_bound; throws std::invalid_argument when no sigma fits
Multiset reconstruct_from_phi(const std::vector<Multiset>& phi, int support_bound);

// (P, Q) profile of one string summand, read inside degrees <= bound
Pair pair_of_string(int p, const dieu::StringSpec& s, int bound);

std::string to_string(const Pair& x);
std::string to_string(const Multiset& m);

}  // namespace expfun::sig
