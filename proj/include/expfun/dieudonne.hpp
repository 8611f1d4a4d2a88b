#pragma once

#include "expfun/hopf.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace expfun::dieu {

using la::FpMatrix;
using la::Scalar;

// graded spaces M^0..M^bound with F_i: M^i -> M^{i+1} and V_i: M^{i+1} -> M^i
class DieudonneModule {
 public:
  DieudonneModule(int p, std::vector<int> dims);

  int p() const { return p_; }
  int degree_bound() const { return static_cast<int>(dims_.size()) - 1; }
  int dim(int i) const { return i >= 0 && i <= degree_bound() ? dims_[static_cast<std::size_t>(i)] : 0; }
  const std::vector<int>& dims() const { return dims_; }
  int total_dim() const;

  const FpMatrix& F(int i) const { return F_[static_cast<std::size_t>(i)]; }
  const FpMatrix& V(int i) const { return V_[static_cast<std::size_t>(i)]; }
  void set_F(int i, FpMatrix m);
  void set_V(int i, FpMatrix m);

  bool operator==(const DieudonneModule&) const = default;

 private:
  int p_;
  std::vector<int> dims_;
  std::vector<FpMatrix> F_, V_;  // one per edge i -> i+1
};

hopf::Report validate(const DieudonneModule& m);

enum class Tail { none, F, V };

struct StringSpec {
  int r = 0;
  std::string word;  // letters F and V
  Tail tail = Tail::none;

  // the word spelled out up to degree bound
  std::string expanded(int bound) const;
  bool operator==(const StringSpec&) const = default;
};

// (r, word) of the string as seen inside degrees <= bound
std::pair<int, std::string> within_window(const StringSpec& s, int bound);
bool equal_within_window(const StringSpec& a, const StringSpec& b, int bound);
std::string to_string(const StringSpec& s);

DieudonneModule make_string(int p, const StringSpec& s, int degree_bound);
DieudonneModule direct_sum(const DieudonneModule& a, const DieudonneModule& b);
// new basis of M^i given by the columns of change[i]
DieudonneModule change_basis(const DieudonneModule& m, const std::vector<FpMatrix>& change);

// dims of ker V_{k-1} and coker F_{k-1} per slot k (slot 0: dim M^0)
struct Profiles {
  std::vector<long> P, Q;
};
Profiles recover_PQ(const DieudonneModule& m);

// Hopf degree of slot k for the part indexed by n (p does not divide n)
long hopf_degree(long n, int k, int p);

// one module per n with 2n <= degree bound; throws std::domain_error outside
// the supported classes (primitively generated, or catalogue factors)
std::map<long, DieudonneModule> dieudonne_of(const hopf::HopfPresentation& h);

// multiset of strings, sorted; specs are finite words cut at the window
std::vector<StringSpec> decompose(const DieudonneModule& m, std::uint64_t seed = 0);
// brute-force complement search (small modules only)
std::vector<StringSpec> decompose_bruteforce(const DieudonneModule& m);

// End(M) as a basis of tuples of block matrices
std::vector<std::vector<FpMatrix>> endomorphisms(const DieudonneModule& m);

}  // namespace expfun::dieu
