#pragma once

// generators and cross-checks shared by the unit tests and the acceptance run

#include "expfun/catalogue.hpp"
#include "expfun/morphism.hpp"
#include "expfun/dieudonne.hpp"
#include "expfun/signature.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace support {

using namespace expfun;

inline la::FpMatrix random_invertible(int p, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, p - 1);
  while (true) {
    la::FpMatrix m(p, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.set(i, j, d(rng));
    if (la::rank(m) == n) return m;
  }
}

// F o V against Id^{*p}, on the columns where both sides are inside the window
inline bool fv_consistent(const hopf::HopfPresentation& h) {
  auto F = hopf::frobenius(h);
  auto V = hopf::verschiebung(h);
  auto power = hopf::convolution_power(hopf::identity(std::make_shared<const hopf::HopfPresentation>(h)), h.p());
  la::FpMatrix fv = F.matrix * V.matrix;
  for (int c = 0; c < h.size(); ++c) {
    bool known = true;
    for (int r = 0; r < h.size(); ++r)
      if (V.matrix(r, c) != 0 && !F.known[static_cast<std::size_t>(r)]) known = false;
    if (!known) continue;
    for (int r = 0; r < h.size(); ++r)
      if (fv(r, c) != power.matrix(r, c)) return false;
  }
  return true;
}

struct StringSum {
  std::vector<dieu::StringSpec> specs;  // sorted like decompose output
  dieu::DieudonneModule module;
};

// up to max_strings strings inside degrees <= bound, block dims capped
inline StringSum random_string_sum(int p, std::mt19937_64& rng, int max_strings = 6, int max_bound = 8, int max_block = 5) {
  std::uniform_int_distribution<int> pick_bound(1, max_bound), pick_count(1, max_strings), coin(0, 1);
  const int bound = pick_bound(rng);
  const int count = pick_count(rng);
  std::vector<int> load(static_cast<std::size_t>(bound + 1), 0);
  std::vector<dieu::StringSpec> specs;
  for (int tries = 0; static_cast<int>(specs.size()) < count && tries < 100; ++tries) {
    int r = std::uniform_int_distribution<int>(0, bound)(rng);
    int len = std::uniform_int_distribution<int>(0, bound - r)(rng);
    bool fits = true;
    for (int k = r; k <= r + len; ++k) fits = fits && load[static_cast<std::size_t>(k)] < max_block;
    if (!fits) continue;
    std::string w;
    for (int k = 0; k < len; ++k) w += coin(rng) ? 'F' : 'V';
    for (int k = r; k <= r + len; ++k) ++load[static_cast<std::size_t>(k)];
    specs.push_back({r, w, dieu::Tail::none});
  }
  dieu::DieudonneModule m(p, std::vector<int>(static_cast<std::size_t>(bound + 1), 0));
  for (const auto& s : specs) m = dieu::direct_sum(m, dieu::make_string(p, s, bound));
  std::vector<la::FpMatrix> change;
  for (int i = 0; i <= bound; ++i) change.push_back(random_invertible(p, m.dim(i), rng));
  m = dieu::change_basis(m, change);
  std::sort(specs.begin(), specs.end(), [](const auto& a, const auto& b) { return std::tie(a.r, a.word) < std::tie(b.r, b.word); });
  return {specs, m};
}

// recover_PQ o dieudonne_of against direct primitives / indecomposables; empty when consistent
inline std::string dictionary_mismatch(const hopf::HopfPresentation& h) {
  auto P = hopf::primitives(h).dims_by_degree();
  auto Q = hopf::indecomposables(h).dims_by_degree();
  std::map<long, long> P2, Q2;
  for (const auto& [n, m] : dieu::dieudonne_of(h)) {
    auto prof = dieu::recover_PQ(m);
    for (std::size_t k = 0; k < prof.P.size(); ++k) {
      long d = dieu::hopf_degree(n, static_cast<int>(k), h.p());
      if (prof.P[k]) P2[d] = prof.P[k];
      if (prof.Q[k]) Q2[d] = prof.Q[k];
    }
  }
  auto show = [](const std::map<long, long>& m) {
    std::string s;
    for (const auto& [d, v] : m) s += std::to_string(d) + ":" + std::to_string(v) + " ";
    return s;
  };
  if (P != P2) return "P direct " + show(P) + "vs dictionary " + show(P2);
  if (Q != Q2) return "Q direct " + show(Q) + "vs dictionary " + show(Q2);
  return "";
}

// catalogue algebras the dictionary covers, generator degree 2 unless noted
inline std::vector<hopf::HopfPresentation> dictionary_catalogue(int p, long D) {
  using catalogue::Kind;
  std::vector<hopf::HopfPresentation> out;
  for (auto kind : std::vector<catalogue::AlgebraKind>{{Kind::S}, {Kind::Gamma}, {Kind::S_n, 1}, {Kind::S_n, 2},
                                                       {Kind::Gamma_n, 1}, {Kind::Gamma_n, 2}, {Kind::G_n, 0}, {Kind::G_n, 1},
                                                       {Kind::G_n, 2}})
    out.push_back(catalogue::make(p, kind, {0, 2}, D));
  out.push_back(catalogue::make(p, {Kind::S}, {1, 2L * p}, D));
  out.push_back(catalogue::make(p, {Kind::Gamma}, {0, 4}, D));
  if (p == 2) out.push_back(catalogue::make(p, {Kind::Lambda}, {0, 2}, D));
  return out;
}

inline sig::Profile random_profile(std::mt19937_64& rng, int support) {
  sig::Profile out;
  std::uniform_int_distribution<int> deg(0, support), mult(1, 2), count(0, 2);
  int n = count(rng);
  for (int k = 0; k < n; ++k) out[deg(rng)] = mult(rng);
  return out;
}

inline sig::Multiset random_signature(std::mt19937_64& rng, int support) {
  std::vector<sig::Pair> pairs;
  int n = std::uniform_int_distribution<int>(0, 7)(rng);
  for (int k = 0; k < n; ++k) {
    sig::Pair x{random_profile(rng, support), random_profile(rng, support)};
    if (sig::is_zero(x)) continue;
    int copies = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int c = 0; c < copies; ++c) pairs.push_back(x);
  }
  return sig::signature_of(pairs);
}

inline std::vector<sig::Multiset> phi_sequence(const sig::Multiset& s, int support) {
  std::vector<sig::Multiset> out;
  for (int k = 0; k <= support; ++k) out.push_back(sig::fake_truncation(s, k));
  return out;
}

}  // namespace support
