#include "expfun/signature.hpp"

#include <stdexcept>

namespace expfun::sig {

Multiset signature_of(const std::vector<Pair>& summands) {
  Multiset out;
  for (const auto& s : summands) {
    for (const auto& prof : {s.P, s.Q})
      for (const auto& [d, m] : prof)
        if (m <= 0 || d < 0) throw std::invalid_argument("profiles carry positive multiplicities in nonnegative degrees");
    if (!is_zero(s)) ++out[s];
  }
  return out;
}

Pair truncate(const Pair& x, int k) {
  Pair out;
  for (const auto& [d, m] : x.P)
    if (d <= k) out.P[d] = m;
  for (const auto& [d, m] : x.Q)
    if (d <= k) out.Q[d] = m;
  return out;
}

bool nonzero_at(const Pair& x, int k) { return x.P.count(k) || x.Q.count(k); }

bool is_zero(const Pair& x) { return x.P.empty() && x.Q.empty(); }

Multiset fake_truncation(const Multiset& sigma, int k) {
  Multiset out;
  for (const auto& [x, m] : sigma)
    if (nonzero_at(x, k)) out[truncate(x, k)] += m;
  return out;
}

Multiset reconstruct_from_phi(const std::vector<Multiset>& phi, int support_bound) {
  if (static_cast<int>(phi.size()) != support_bound + 1) throw std::invalid_argument("need phi_0 .. phi_bound");
  // tau_k from phi_k and tau_{k-1}
  Multiset tau;
  for (int k = 0; k <= support_bound; ++k) {
    const Multiset& f = phi[static_cast<std::size_t>(k)];
    for (const auto& [x, m] : f) {
      if (m <= 0) throw std::invalid_argument("nonpositive multiplicity in phi_" + std::to_string(k));
      if (!nonzero_at(x, k)) throw std::invalid_argument("phi_" + std::to_string(k) + " holds a pair vanishing in degree k");
      for (const auto& prof : {x.P, x.Q})
        if (!prof.empty() && prof.rbegin()->first > k)
          throw std::invalid_argument("phi_" + std::to_string(k) + " holds a pair beyond degree k");
      Pair below = truncate(x, k - 1);
      if (is_zero(below)) continue;
      auto it = tau.find(below);
      if (it == tau.end() || it->second < m)
        throw std::invalid_argument("phi_" + std::to_string(k) + " extends pairs missing from the previous truncation");
      if ((it->second -= m) == 0) tau.erase(it);
    }
    for (const auto& [x, m] : f) tau[x] += m;
  }
  return tau;
}

Pair pair_of_string(int p, const dieu::StringSpec& s, int bound) {
  auto prof = dieu::recover_PQ(dieu::make_string(p, s, bound));
  Pair out;
  for (std::size_t k = 0; k < prof.P.size(); ++k) {
    if (prof.P[k]) out.P[static_cast<int>(k)] = static_cast<int>(prof.P[k]);
    if (prof.Q[k]) out.Q[static_cast<int>(k)] = static_cast<int>(prof.Q[k]);
  }
  return out;
}

namespace {

std::string show(const Profile& p) {
  if (p.empty()) return "0";
  std::string out;
  for (const auto& [d, m] : p) {
    if (!out.empty()) out += "+";
    out += (m == 1 ? "" : std::to_string(m) + "*") + "I(" + std::to_string(d) + ")";
  }
  return out;
}

}  // namespace

std::string to_string(const Pair& x) { return "(" + show(x.P) + "," + show(x.Q) + ")"; }

std::string to_string(const Multiset& m) {
  std::string out = "{";
  for (const auto& [x, k] : m) {
    if (out.size() > 1) out += ", ";
    out += to_string(x);
    if (k > 1) out += "x" + std::to_string(k);
  }
  return out + "}";
}

}  // namespace expfun::sig
