#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

namespace expfun::la {

using Index = Eigen::Index;
using Scalar = std::int64_t;
using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

bool is_prime(int n);

/* Arithmetic in F_p on residues in [0, p). */
class PrimeField {
 public:
  explicit PrimeField(int p);

  int p() const { return p_; }
  Scalar reduce(Scalar a) const {
    a %= p_;
    return a < 0 ? a + p_ : a;
  }
  Scalar add(Scalar a, Scalar b) const { return reduce(a + b); }
  Scalar sub(Scalar a, Scalar b) const { return reduce(a - b); }
  Scalar mul(Scalar a, Scalar b) const { return reduce(a * b); }
  Scalar neg(Scalar a) const { return reduce(-a); }
  Scalar inv(Scalar a) const;
  Scalar pow(Scalar a, std::uint64_t e) const;

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  int p_;
  std::vector<Scalar> inverse_;
};

// shared, lazily built field tables (p is always small here)
const PrimeField& field(int p);

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(int p, Index rows, Index cols);
  FpMatrix(int p, const Dense& entries);

  static FpMatrix identity(int p, Index n);
  static FpMatrix from_rows(int p, std::initializer_list<std::initializer_list<Scalar>> rows);
  static FpMatrix column(int p, const std::vector<Scalar>& entries);

  int p() const { return p_; }
  Index rows() const { return data_.rows(); }
  Index cols() const { return data_.cols(); }
  bool empty() const { return data_.size() == 0; }

  Scalar operator()(Index r, Index c) const { return data_(r, c); }
  void set(Index r, Index c, Scalar v) { data_(r, c) = field(p_).reduce(v); }
  void add_to(Index r, Index c, Scalar v) { data_(r, c) = field(p_).reduce(data_(r, c) + v); }

  const Dense& dense() const { return data_; }

  FpMatrix col(Index c) const;
  FpMatrix cols_subset(const std::vector<Index>& which) const;
  FpMatrix rows_subset(const std::vector<Index>& which) const;
  bool is_zero() const;

  bool operator==(const FpMatrix& o) const {
    return p_ == o.p_ && data_.rows() == o.data_.rows() && data_.cols() == o.data_.cols() &&
           data_ == o.data_;
  }
  bool operator!=(const FpMatrix& o) const { return !(*this == o); }

 private:
  int p_ = 2;
  Dense data_;
};

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
FpMatrix operator+(const FpMatrix& a, const FpMatrix& b);
FpMatrix operator-(const FpMatrix& a, const FpMatrix& b);
FpMatrix operator*(Scalar s, const FpMatrix& a);

FpMatrix transpose(const FpMatrix& m);
FpMatrix hstack(const FpMatrix& a, const FpMatrix& b);
FpMatrix vstack(const FpMatrix& a, const FpMatrix& b);
FpMatrix block_diagonal(const std::vector<FpMatrix>& blocks);

struct Rref {
  FpMatrix matrix;
  std::vector<Index> pivots;
  Index rank = 0;
};

Rref rref(const FpMatrix& m);
Index rank(const FpMatrix& m);

// columns span {v : m v = 0}
FpMatrix kernel_basis(const FpMatrix& m);
// independent columns spanning the column space of m (reduced echelon, transposed)
FpMatrix image_basis(const FpMatrix& m);
std::optional<FpMatrix> solve(const FpMatrix& a, const FpMatrix& b);
std::optional<FpMatrix> inverse(const FpMatrix& m);
bool in_span(const FpMatrix& basis, const FpMatrix& v);

enum class SubspaceOp { intersect, sum, quotient };

// a, b: column spans in the same ambient space. quotient returns columns of a
// representing a basis of a/(a ∩ b), chosen greedily in column order.
FpMatrix subspace(SubspaceOp op, const FpMatrix& a, const FpMatrix& b);

// a^n for square a
FpMatrix power(const FpMatrix& a, std::uint64_t n);

}  // namespace expfun::la
