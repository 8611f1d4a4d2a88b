#pragma once

#include "expfun/fp_matrix.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace expfun::hopf {

using la::FpMatrix;
using la::Scalar;

struct Grading {
  enum class Kind { natural, cyclic };
  Kind kind = Kind::natural;
  int modulus = 0;  // cyclic only

  static Grading natural() { return {}; }
  static Grading cyclic(int n);

  long normalize(long d) const;
  long add(long a, long b) const { return normalize(a + b); }
  bool operator==(const Grading& o) const { return kind == o.kind && modulus == o.modulus; }
};

struct BasisElement {
  std::string label;
  long degree = 0;
  long weight = 0;
};

struct Term {
  int index;
  Scalar coeff;
  bool operator==(const Term&) const = default;
};
using Vec = std::vector<Term>;  // sorted by index, coefficients nonzero

struct Term2 {
  int left, right;
  Scalar coeff;
  bool operator==(const Term2&) const = default;
};
using Vec2 = std::vector<Term2>;  // sorted by (left, right)

// (degree, weight) block label
struct BlockKey {
  long degree, weight;
  auto operator<=>(const BlockKey&) const = default;
};

// provenance of catalogue-built algebras; tensor products concatenate
struct Factor {
  std::string kind;  // S, Lambda, Gamma, S_n, Gamma_n, G_n, Morava
  int n = 0;
  int r = 0;
  long i = 0;
  int multiplicity = 1;
  bool operator==(const Factor&) const = default;
};

class HopfPresentation {
 public:
  HopfPresentation(int p, Grading grading, long degree_bound, std::vector<BasisElement> basis, int unit);

  int p() const { return p_; }
  const Grading& grading() const { return grading_; }
  long degree_bound() const { return degree_bound_; }
  std::optional<long> weight_bound() const { return weight_bound_; }
  long weight_modulus() const { return weight_modulus_; }
  int size() const { return static_cast<int>(basis_.size()); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const BasisElement& element(int i) const { return basis_[static_cast<std::size_t>(i)]; }
  int unit() const { return unit_; }
  Scalar counit(int i) const { return i == unit_ ? 1 : 0; }

  void set_weight_bound(std::optional<long> wb) { weight_bound_ = wb; }
  void set_weight_modulus(long m) { weight_modulus_ = m; }
  long normalize_weight(long w) const { return weight_modulus_ > 0 ? ((w % weight_modulus_) + weight_modulus_) % weight_modulus_ : w; }

  // a product whose degree/weight lies beyond the window is unknown, not zero
  bool in_window(long degree, long weight) const;
  bool product_known(int i, int j) const;

  const Vec& product(int i, int j) const { return mu_[idx(i, j)]; }
  const Vec2& coproduct(int i) const { return delta_[static_cast<std::size_t>(i)]; }
  void set_product(int i, int j, Vec v);
  void set_coproduct(int i, Vec2 v);

  const std::map<BlockKey, std::vector<int>>& blocks() const { return blocks_; }
  BlockKey block_of(int i) const { return {element(i).degree, element(i).weight}; }
  // position of basis index i inside its block
  int position(int i) const { return position_[static_cast<std::size_t>(i)]; }
  std::optional<int> find_label(const std::string& label) const;

  const std::vector<Factor>& factors() const { return factors_; }
  void set_factors(std::vector<Factor> f) { factors_ = std::move(f); }

  // Koszul sign (-1)^{|a||b|} on basis degrees
  Scalar sign(int a, int b) const;
  bool odd(int a) const;

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * basis_.size() + static_cast<std::size_t>(j); }

  int p_;
  Grading grading_;
  long degree_bound_;
  std::optional<long> weight_bound_;
  long weight_modulus_ = 0;
  std::vector<BasisElement> basis_;
  int unit_;
  std::vector<Vec> mu_;
  std::vector<Vec2> delta_;
  std::map<BlockKey, std::vector<int>> blocks_;
  std::vector<int> position_;
  std::vector<Factor> factors_;
};

using HopfPtr = std::shared_ptr<const HopfPresentation>;

// sparse helpers
Vec add(const Vec& a, const Vec& b, int p);
Vec scale(const Vec& a, Scalar s, int p);
Vec basis_vec(int i);
// product of two vectors; nullopt when some needed product is outside the window
std::optional<Vec> multiply(const HopfPresentation& h, const Vec& a, const Vec& b);
Vec2 comultiply(const HopfPresentation& h, const Vec& a);
Vec to_sparse(const FpMatrix& column, const std::vector<int>& indices);

struct Report {
  bool ok = true;
  std::string failure;  // name of the first violated identity
  std::vector<std::string> witnesses;
  long checked = 0;
  long skipped = 0;  // identities touching products beyond the window

  void fail(std::string what, std::vector<std::string> who);
};

Report verify_axioms(const HopfPresentation& h);

// H1 ⊗ H2 with Koszul signs; the window is the smaller of the two
HopfPresentation tensor_product(const HopfPresentation& a, const HopfPresentation& b);
HopfPresentation trivial_algebra(int p, Grading g = Grading::natural(), long degree_bound = 0);

// per-block subspaces; columns are coordinates in the block's own ordering
struct GradedSubspace {
  std::map<BlockKey, FpMatrix> blocks;
  long dim(const BlockKey& k) const;
  std::map<long, long> dims_by_degree() const;
  std::map<BlockKey, long> dims() const;
  long total() const;
};

GradedSubspace primitives(const HopfPresentation& h);
GradedSubspace indecomposables(const HopfPresentation& h);

Report validate_weight_decomposition(const HopfPresentation& h);

}  // namespace expfun::hopf
