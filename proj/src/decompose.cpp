#include "expfun/dieudonne.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace expfun::dieu {

using la::Index;
using la::Scalar;

std::vector<std::vector<FpMatrix>> endomorphisms(const DieudonneModule& m) {
  const int p = m.p();
  const int top = m.degree_bound();
  std::vector<Index> offset;
  Index vars = 0;
  for (int i = 0; i <= top; ++i) {
    offset.push_back(vars);
    vars += static_cast<Index>(m.dim(i)) * m.dim(i);
  }
  auto var = [&](int i, Index r, Index c) { return offset[static_cast<std::size_t>(i)] + r * m.dim(i) + c; };
  std::vector<std::tuple<Index, Index, Scalar>> eq;
  Index rows = 0;
  for (int i = 0; i < top; ++i) {
    const auto& F = m.F(i);
    const auto& V = m.V(i);
    const Index a = m.dim(i), b = m.dim(i + 1);
    // Theta_{i+1} F - F Theta_i
    for (Index r = 0; r < b; ++r)
      for (Index c = 0; c < a; ++c, ++rows) {
        for (Index k = 0; k < b; ++k)
          if (F(k, c)) eq.emplace_back(rows, var(i + 1, r, k), F(k, c));
        for (Index k = 0; k < a; ++k)
          if (F(r, k)) eq.emplace_back(rows, var(i, k, c), -F(r, k));
      }
    // Theta_i V - V Theta_{i+1}
    for (Index r = 0; r < a; ++r)
      for (Index c = 0; c < b; ++c, ++rows) {
        for (Index k = 0; k < a; ++k)
          if (V(k, c)) eq.emplace_back(rows, var(i, r, k), V(k, c));
        for (Index k = 0; k < b; ++k)
          if (V(r, k)) eq.emplace_back(rows, var(i + 1, k, c), -V(r, k));
      }
  }
  FpMatrix sys(p, rows, vars);
  for (const auto& [r, c, v] : eq) sys.add_to(r, c, v);
  FpMatrix ker = la::kernel_basis(sys);
  std::vector<std::vector<FpMatrix>> out;
  for (Index j = 0; j < ker.cols(); ++j) {
    std::vector<FpMatrix> theta;
    for (int i = 0; i <= top; ++i) {
      FpMatrix t(p, m.dim(i), m.dim(i));
      for (Index r = 0; r < m.dim(i); ++r)
        for (Index c = 0; c < m.dim(i); ++c) t.set(r, c, ker(var(i, r, c), j));
      theta.push_back(t);
    }
    out.push_back(theta);
  }
  return out;
}

namespace {

// restriction to a graded submodule spanned per degree by the columns of basis[i]
DieudonneModule restrict(const DieudonneModule& m, const std::vector<FpMatrix>& basis) {
  std::vector<int> dims;
  for (const auto& b : basis) dims.push_back(static_cast<int>(b.cols()));
  DieudonneModule out(m.p(), dims);
  for (int i = 0; i < m.degree_bound(); ++i) {
    auto u = static_cast<std::size_t>(i);
    auto f = la::solve(basis[u + 1], m.F(i) * basis[u]);
    auto v = la::solve(basis[u], m.V(i) * basis[u + 1]);
    if (!f || !v) throw std::logic_error("subspace is not a submodule");
    out.set_F(i, *f);
    out.set_V(i, *v);
  }
  return out;
}

StringSpec identify(const DieudonneModule& m) {
  int first = -1, last = -1;
  for (int i = 0; i <= m.degree_bound(); ++i) {
    if (m.dim(i) == 0) continue;
    if (m.dim(i) != 1) throw std::logic_error("indecomposable summand with a block of dimension > 1");
    if (first < 0) first = i;
    if (last >= 0 && last != i - 1) throw std::logic_error("indecomposable summand with a gap");
    last = i;
  }
  if (first < 0) throw std::logic_error("empty summand");
  StringSpec s{first, "", Tail::none};
  for (int i = first; i < last; ++i) {
    bool f = m.F(i)(0, 0) != 0, v = m.V(i)(0, 0) != 0;
    if (f == v) throw std::logic_error("summand is not a string");
    s.word += f ? 'F' : 'V';
  }
  return s;
}

void sort_specs(std::vector<StringSpec>& v) {
  std::sort(v.begin(), v.end(), [](const StringSpec& a, const StringSpec& b) { return std::tie(a.r, a.word) < std::tie(b.r, b.word); });
}

// contiguous runs of nonzero degrees
std::vector<std::vector<FpMatrix>> support_components(const DieudonneModule& m) {
  std::vector<std::vector<FpMatrix>> out;
  const int p = m.p();
  int i = 0;
  while (i <= m.degree_bound()) {
    if (m.dim(i) == 0) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 <= m.degree_bound() && m.dim(j + 1) > 0) ++j;
    std::vector<FpMatrix> basis;
    for (int k = 0; k <= m.degree_bound(); ++k)
      basis.push_back(k >= i && k <= j ? FpMatrix::identity(p, m.dim(k)) : FpMatrix(p, m.dim(k), 0));
    out.push_back(basis);
    i = j + 1;
  }
  return out;
}

class Splitter {
 public:
  explicit Splitter(std::uint64_t seed) : rng_(seed) {}

  void run(const DieudonneModule& m, std::vector<StringSpec>& out) {
    if (m.total_dim() == 0) return;
    auto ends = endomorphisms(m);
    if (ends.size() == 1) {
      out.push_back(identify(m));
      return;
    }
    const int p = m.p();
    const int N = m.total_dim();
    std::uniform_int_distribution<int> coef(0, p - 1);
    for (int attempt = 0; attempt < budget_; ++attempt) {
      std::vector<FpMatrix> theta;
      for (int i = 0; i <= m.degree_bound(); ++i) theta.emplace_back(p, m.dim(i), m.dim(i));
      for (const auto& e : ends) {
        Scalar c = coef(rng_);
        if (!c) continue;
        for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = theta[i] + c * e[i];
      }
      for (Scalar lambda = 0; lambda < p; ++lambda) {
        std::vector<FpMatrix> ker, img;
        long kdim = 0;
        for (int i = 0; i <= m.degree_bound(); ++i) {
          auto u = static_cast<std::size_t>(i);
          FpMatrix t = theta[u] - lambda * FpMatrix::identity(p, m.dim(i));
          FpMatrix tn = la::power(t, N);
          ker.push_back(la::kernel_basis(tn));
          img.push_back(la::image_basis(tn));
          kdim += ker.back().cols();
        }
        if (kdim == 0 || kdim == N) continue;
        run(restrict(m, ker), out);
        run(restrict(m, img), out);
        return;
      }
    }
    std::string partial;
    for (const auto& s : out) partial += to_string(s) + " ";
    throw std::runtime_error("idempotent search budget exhausted; partial decomposition: " + partial);
  }

 private:
  std::mt19937_64 rng_;
  int budget_ = 400;
};

}  // namespace

std::vector<StringSpec> decompose(const DieudonneModule& m, std::uint64_t seed) {
  std::vector<StringSpec> out;
  Splitter split(seed);
  for (const auto& basis : support_components(m)) split.run(restrict(m, basis), out);
  sort_specs(out);
  return out;
}

namespace {

// all subspaces of F_p^d as column bases in rref-canonical form
std::vector<FpMatrix> all_subspaces(int p, int d) {
  std::vector<FpMatrix> vectors;
  long total = 1;
  for (int k = 0; k < d; ++k) total *= p;
  for (long code = 1; code < total; ++code) {
    FpMatrix v(p, d, 1);
    long c = code;
    for (int k = 0; k < d; ++k) {
      v.set(k, 0, c % p);
      c /= p;
    }
    vectors.push_back(v);
  }
  auto key = [&](const FpMatrix& span) {
    auto r = la::rref(la::transpose(span));
    std::vector<Scalar> k;
    for (Index i = 0; i < r.rank; ++i)
      for (Index j = 0; j < r.matrix.cols(); ++j) k.push_back(r.matrix(i, j));
    return k;
  };
  std::set<std::vector<Scalar>> seen;
  std::vector<FpMatrix> out{FpMatrix(p, d, 0)};
  seen.insert(key(out.front()));
  for (std::size_t at = 0; at < out.size(); ++at)
    for (const auto& v : vectors) {
      FpMatrix s = la::image_basis(la::hstack(out[at], v));
      if (s.cols() == out[at].cols()) continue;
      if (seen.insert(key(s)).second) out.push_back(s);
    }
  return out;
}

bool is_submodule(const DieudonneModule& m, const std::vector<FpMatrix>& u) {
  for (int i = 0; i < m.degree_bound(); ++i) {
    auto k = static_cast<std::size_t>(i);
    if (!la::in_span(u[k + 1], m.F(i) * u[k])) return false;
    if (!la::in_span(u[k], m.V(i) * u[k + 1])) return false;
  }
  return true;
}

void brute(const DieudonneModule& m, std::vector<StringSpec>& out) {
  if (m.total_dim() == 0) return;
  const int top = m.degree_bound();
  std::vector<std::vector<FpMatrix>> subs;
  for (int i = 0; i <= top; ++i) subs.push_back(all_subspaces(m.p(), m.dim(i)));
  std::vector<std::vector<FpMatrix>> modules;
  std::vector<std::size_t> pick(static_cast<std::size_t>(top + 1), 0);
  while (true) {
    std::vector<FpMatrix> u;
    for (int i = 0; i <= top; ++i) u.push_back(subs[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]]);
    if (is_submodule(m, u)) modules.push_back(u);
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == subs[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  auto dim = [](const std::vector<FpMatrix>& u) {
    long t = 0;
    for (const auto& b : u) t += b.cols();
    return t;
  };
  for (const auto& u : modules) {
    long du = dim(u);
    if (du == 0 || du == m.total_dim()) continue;
    for (const auto& w : modules) {
      if (du + dim(w) != m.total_dim()) continue;
      bool complement = true;
      for (int i = 0; i <= top && complement; ++i) {
        auto k = static_cast<std::size_t>(i);
        complement = la::rank(la::hstack(u[k], w[k])) == m.dim(i);
      }
      if (!complement) continue;
      brute(restrict(m, u), out);
      brute(restrict(m, w), out);
      return;
    }
  }
  out.push_back(identify(m));
}

}  // namespace

std::vector<StringSpec> decompose_bruteforce(const DieudonneModule& m) {
  if (m.total_dim() > 6) throw std::invalid_argument("brute-force decomposition is for tiny modules");
  std::vector<StringSpec> out;
  brute(m, out);
  sort_specs(out);
  return out;
}

}  // namespace expfun::dieu
