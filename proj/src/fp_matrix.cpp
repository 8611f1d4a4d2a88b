#include "expfun/fp_matrix.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace expfun::la {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(int p) : p_(p), inverse_(static_cast<std::size_t>(p), 0) {
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
  for (Scalar a = 1; a < p; ++a)
    for (Scalar b = 1; b < p; ++b)
      if ((a * b) % p == 1) inverse_[static_cast<std::size_t>(a)] = b;
}

Scalar PrimeField::inv(Scalar a) const {
  a = reduce(a);
  if (a == 0) throw std::domain_error("inverse of zero in F_p");
  return inverse_[static_cast<std::size_t>(a)];
}

Scalar PrimeField::pow(Scalar a, std::uint64_t e) const {
  Scalar base = reduce(a), out = 1;
  while (e) {
    if (e & 1) out = mul(out, base);
    base = mul(base, base);
    e >>= 1;
  }
  return out;
}

const PrimeField& field(int p) {
  static std::mutex lock;
  static std::map<int, std::unique_ptr<PrimeField>> fields;
  std::lock_guard<std::mutex> guard(lock);
  auto& slot = fields[p];
  if (!slot) slot = std::make_unique<PrimeField>(p);
  return *slot;
}

namespace {

void reduce_all(Dense& d, int p) {
  const auto& f = field(p);
  Scalar* x = d.data();
  for (Index k = 0; k < d.size(); ++k) x[k] = f.reduce(x[k]);
}

void require_same_field(const FpMatrix& a, const FpMatrix& b) {
  if (a.p() != b.p()) throw std::invalid_argument("matrices over different fields");
}

}  // namespace

FpMatrix::FpMatrix(int p, Index rows, Index cols) : p_(p), data_(Dense::Zero(rows, cols)) {
  field(p);
}

FpMatrix::FpMatrix(int p, const Dense& entries) : p_(p), data_(entries) { reduce_all(data_, p); }

FpMatrix FpMatrix::identity(int p, Index n) {
  FpMatrix m(p, n, n);
  m.data_.setIdentity();
  return m;
}

FpMatrix FpMatrix::from_rows(int p, std::initializer_list<std::initializer_list<Scalar>> rows) {
  Index r = static_cast<Index>(rows.size());
  Index c = r ? static_cast<Index>(rows.begin()->size()) : 0;
  FpMatrix m(p, r, c);
  Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != c) throw std::invalid_argument("ragged rows");
    Index j = 0;
    for (Scalar v : row) m.set(i, j++, v);
    ++i;
  }
  return m;
}

FpMatrix FpMatrix::column(int p, const std::vector<Scalar>& entries) {
  FpMatrix m(p, static_cast<Index>(entries.size()), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(static_cast<Index>(i), 0, entries[i]);
  return m;
}

FpMatrix FpMatrix::col(Index c) const { return FpMatrix(p_, data_.col(c)); }

FpMatrix FpMatrix::cols_subset(const std::vector<Index>& which) const {
  FpMatrix out(p_, rows(), static_cast<Index>(which.size()));
  for (std::size_t k = 0; k < which.size(); ++k) out.data_.col(static_cast<Index>(k)) = data_.col(which[k]);
  return out;
}

FpMatrix FpMatrix::rows_subset(const std::vector<Index>& which) const {
  FpMatrix out(p_, static_cast<Index>(which.size()), cols());
  for (std::size_t k = 0; k < which.size(); ++k) out.data_.row(static_cast<Index>(k)) = data_.row(which[k]);
  return out;
}

bool FpMatrix::is_zero() const { return data_.size() == 0 || (data_.array() == 0).all(); }

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) throw std::invalid_argument("product shape mismatch");
  Dense prod = a.dense() * b.dense();
  return FpMatrix(a.p(), prod);
}

FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("sum shape mismatch");
  return FpMatrix(a.p(), Dense(a.dense() + b.dense()));
}

FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("difference shape mismatch");
  return FpMatrix(a.p(), Dense(a.dense() - b.dense()));
}

FpMatrix operator*(Scalar s, const FpMatrix& a) {
  return FpMatrix(a.p(), Dense(a.dense() * field(a.p()).reduce(s)));
}

FpMatrix transpose(const FpMatrix& m) { return FpMatrix(m.p(), Dense(m.dense().transpose())); }

FpMatrix hstack(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  Dense d(a.rows(), a.cols() + b.cols());
  d << a.dense(), b.dense();
  return FpMatrix(a.p(), d);
}

FpMatrix vstack(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
  Dense d(a.rows() + b.rows(), a.cols());
  d << a.dense(), b.dense();
  return FpMatrix(a.p(), d);
}

FpMatrix block_diagonal(const std::vector<FpMatrix>& blocks) {
  if (blocks.empty()) return FpMatrix(2, 0, 0);
  Index r = 0, c = 0;
  for (const auto& b : blocks) r += b.rows(), c += b.cols();
  Dense d = Dense::Zero(r, c);
  Index i = 0, j = 0;
  for (const auto& b : blocks) {
    d.block(i, j, b.rows(), b.cols()) = b.dense();
    i += b.rows();
    j += b.cols();
  }
  return FpMatrix(blocks.front().p(), d);
}

Rref rref(const FpMatrix& m) {
  const auto& f = field(m.p());
  const Scalar p = m.p();
  Dense d = m.dense();
  const Index rows = d.rows(), cols = d.cols();
  Rref out;
  Index lead = 0;
  for (Index c = 0; c < cols && lead < rows; ++c) {
    Index piv = -1;
    for (Index r = lead; r < rows; ++r)
      if (d(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != lead) d.row(piv).swap(d.row(lead));
    Scalar* prow = &d(lead, 0);
    Scalar s = f.inv(prow[c]);
    if (s != 1)
      for (Index k = c; k < cols; ++k) prow[k] = (prow[k] * s) % p;
    for (Index r = 0; r < rows; ++r) {
      if (r == lead) continue;
      Scalar* row = &d(r, 0);
      Scalar factor = row[c];
      if (factor == 0) continue;
      factor = p - factor;
      for (Index k = c; k < cols; ++k)
        if (prow[k]) row[k] = (row[k] + factor * prow[k]) % p;
    }
    out.pivots.push_back(c);
    ++lead;
  }
  out.rank = lead;
  out.matrix = FpMatrix(m.p(), d);
  return out;
}

Index rank(const FpMatrix& m) {
  // forward elimination only
  const auto& f = field(m.p());
  const Scalar p = m.p();
  Dense d = m.dense();
  const Index rows = d.rows(), cols = d.cols();
  Index lead = 0;
  for (Index c = 0; c < cols && lead < rows; ++c) {
    Index piv = -1;
    for (Index r = lead; r < rows; ++r)
      if (d(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != lead) d.row(piv).swap(d.row(lead));
    Scalar* prow = &d(lead, 0);
    Scalar s = f.inv(prow[c]);
    for (Index k = c; k < cols; ++k) prow[k] = (prow[k] * s) % p;
    for (Index r = lead + 1; r < rows; ++r) {
      Scalar* row = &d(r, 0);
      Scalar factor = row[c];
      if (factor == 0) continue;
      factor = p - factor;
      for (Index k = c; k < cols; ++k)
        if (prow[k]) row[k] = (row[k] + factor * prow[k]) % p;
    }
    ++lead;
  }
  return lead;
}

FpMatrix kernel_basis(const FpMatrix& m) {
  Rref rr = rref(m);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index c : rr.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Index> free;
  for (Index c = 0; c < cols; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  FpMatrix k(m.p(), cols, static_cast<Index>(free.size()));
  for (std::size_t j = 0; j < free.size(); ++j) {
    Index fc = free[j];
    k.set(fc, static_cast<Index>(j), 1);
    for (std::size_t r = 0; r < rr.pivots.size(); ++r)
      k.set(rr.pivots[r], static_cast<Index>(j), -rr.matrix(static_cast<Index>(r), fc));
  }
  return k;
}

FpMatrix image_basis(const FpMatrix& m) {
  Rref rr = rref(transpose(m));
  std::vector<Index> rows(static_cast<std::size_t>(rr.rank));
  for (Index r = 0; r < rr.rank; ++r) rows[static_cast<std::size_t>(r)] = r;
  return transpose(rr.matrix.rows_subset(rows));
}

std::optional<FpMatrix> solve(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
  Rref rr = rref(hstack(a, b));
  const Index n = a.cols();
  for (Index c : rr.pivots)
    if (c >= n) return std::nullopt;
  FpMatrix x(a.p(), n, b.cols());
  for (std::size_t r = 0; r < rr.pivots.size(); ++r)
    for (Index j = 0; j < b.cols(); ++j) x.set(rr.pivots[r], j, rr.matrix(static_cast<Index>(r), n + j));
  return x;
}

std::optional<FpMatrix> inverse(const FpMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const Index n = m.rows();
  Rref rr = rref(hstack(m, FpMatrix::identity(m.p(), n)));
  if (rr.rank < n || (n > 0 && rr.pivots[static_cast<std::size_t>(n - 1)] >= n)) return std::nullopt;
  std::vector<Index> right(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) right[static_cast<std::size_t>(j)] = n + j;
  return rr.matrix.cols_subset(right);
}

bool in_span(const FpMatrix& basis, const FpMatrix& v) {
  if (basis.cols() == 0) return v.is_zero();
  return rank(hstack(basis, v)) == rank(basis);
}

FpMatrix subspace(SubspaceOp op, const FpMatrix& a, const FpMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("subspaces live in different ambient spaces");
  const int p = a.p();
  switch (op) {
    case SubspaceOp::sum:
      return image_basis(hstack(a, b));
    case SubspaceOp::intersect: {
      // x with a x = b y
      FpMatrix ab = hstack(a, FpMatrix(p, Dense(-b.dense())));
      FpMatrix k = kernel_basis(ab);
      std::vector<Index> top(static_cast<std::size_t>(a.cols()));
      for (Index i = 0; i < a.cols(); ++i) top[static_cast<std::size_t>(i)] = i;
      return image_basis(a * k.rows_subset(top));
    }
    case SubspaceOp::quotient: {
      // leftmost pivots of [basis(b) | a] past the b part are the greedy choice
      FpMatrix base = image_basis(b);
      std::vector<Index> keep;
      for (Index c : rref(hstack(base, a)).pivots)
        if (c >= base.cols()) keep.push_back(c - base.cols());
      return a.cols_subset(keep);
    }
  }
  throw std::logic_error("unreachable");
}

FpMatrix power(const FpMatrix& a, std::uint64_t n) {
  FpMatrix out = FpMatrix::identity(a.p(), a.rows()), base = a;
  while (n) {
    if (n & 1) out = out * base;
    base = base * base;
    n >>= 1;
  }
  return out;
}

}  // namespace expfun::la
