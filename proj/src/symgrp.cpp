#include "expfun/symgrp.hpp"

#include "expfun/bar.hpp"
#include "expfun/catalogue.hpp"
#include "expfun/fp_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace expfun::symgrp {

using la::FpMatrix;
using la::Index;
using la::Scalar;

long NakaokaTuple::degree() const { return std::accumulate(entries.begin(), entries.end(), 0L); }

bool admissible(int p, const std::vector<long>& j) {
  if (j.empty()) return false;
  const long m = 2L * (p - 1);
  for (long x : j)
    if (x <= 0 || (x % m != 0 && (x + 1) % m != 0)) return false;
  for (std::size_t l = 0; l + 1 < j.size(); ++l)
    if (j[l] > p * j[l + 1]) return false;
  long tail = std::accumulate(j.begin() + 1, j.end(), 0L);
  return j.front() > (p - 1) * tail;
}

std::vector<NakaokaTuple> nakaoka_tuples(int p, int k, long degree_bound) {
  if (!la::is_prime(p)) throw std::invalid_argument("p must be prime");
  if (k < 1) throw std::invalid_argument("twist level starts at 1");
  std::vector<NakaokaTuple> out;
  std::vector<long> cur;
  auto grow = [&](auto& self, long budget) -> void {
    if (static_cast<int>(cur.size()) == k) {
      if (admissible(p, cur)) out.push_back({cur});
      return;
    }
    const long rest = k - static_cast<long>(cur.size()) - 1;  // each later entry is at least 1
    for (long x = 1; x + rest <= budget; ++x) {
      cur.push_back(x);
      self(self, budget - x);
      cur.pop_back();
    }
  };
  grow(grow, degree_bound);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::pair(a.degree(), a.entries) < std::pair(b.degree(), b.entries);
  });
  return out;
}

std::vector<long> symgroup_homology_dims(int p, int d, int dim_v, int i_bound) {
  if (!la::is_prime(p)) throw std::invalid_argument("p must be prime");
  if (d < 0 || dim_v < 0 || i_bound < 0) throw std::invalid_argument("sizes must be nonnegative");
  std::vector<bar::SeriesGenerator> gens;
  for (int c = 0; c < dim_v; ++c) gens.push_back({false, 0, 0});
  for (int k = 1; catalogue::ipow(p, k) <= d; ++k)
    for (const auto& t : nakaoka_tuples(p, k, i_bound)) {
      bool exterior = p != 2 && t.degree() % 2 != 0;
      for (int c = 0; c < dim_v; ++c) gens.push_back({exterior, k, t.degree()});
    }
  auto series = bar::poincare_series(p, gens, i_bound, d);
  std::vector<long> out(static_cast<std::size_t>(i_bound + 1), 0);
  for (const auto& [cell, n] : series)
    if (cell.weight == d) out[static_cast<std::size_t>(cell.degree)] += n;
  return out;
}

namespace {

using Perm = std::vector<int>;

struct Group {
  std::vector<Perm> elements;  // identity first
  std::vector<std::vector<int>> mul;
  std::vector<int> inv;
  int index(const Perm& g) const {
    return static_cast<int>(std::find(elements.begin(), elements.end(), g) - elements.begin());
  }
};

Group symmetric(int d) {
  Group g;
  Perm id(static_cast<std::size_t>(d));
  std::iota(id.begin(), id.end(), 0);
  Perm x = id;
  do g.elements.push_back(x);
  while (std::next_permutation(x.begin(), x.end()));
  const auto n = g.elements.size();
  g.mul.assign(n, std::vector<int>(n));
  g.inv.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Perm c(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = g.elements[a][static_cast<std::size_t>(g.elements[b][static_cast<std::size_t>(i)])];
      int k = g.index(c);
      g.mul[a][b] = k;
      if (k == 0) g.inv[a] = static_cast<int>(b);
    }
  return g;
}

// place permutation on V^{⊗d}: factor i moves to position sigma(i)
std::vector<FpMatrix> tensor_action(int p, const Group& g, int d, int dim_v) {
  long n = catalogue::ipow(dim_v, d);
  std::vector<FpMatrix> out;
  for (const auto& sigma : g.elements) {
    FpMatrix m(p, n, n);
    for (long idx = 0; idx < n; ++idx) {
      std::vector<long> digits(static_cast<std::size_t>(d));
      long rest = idx;
      for (int i = 0; i < d; ++i) {
        digits[static_cast<std::size_t>(i)] = rest % dim_v;
        rest /= dim_v;
      }
      std::vector<long> moved(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) moved[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])] = digits[static_cast<std::size_t>(i)];
      long target = 0;
      for (int i = d; i-- > 0;) target = target * dim_v + moved[static_cast<std::size_t>(i)];
      m.set(target, idx, 1);
    }
    out.push_back(m);
  }
  return out;
}

void check_caps(int p, int d, int dim_v, int i_bound) {
  if (!la::is_prime(p)) throw std::invalid_argument("p must be prime");
  if (d < 1 || d > 3 || dim_v < 1 || dim_v > 2 || i_bound < 0 || i_bound > 4)
    throw std::invalid_argument("oracle caps: d <= 3, dim V <= 2, i <= 4");
}

// left multiplication by group element a on the free module kG^m, basis (g, j) -> j * |G| + g
FpMatrix translate(int p, const Group& g, int a, const FpMatrix& v) {
  const auto n = static_cast<Index>(g.elements.size());
  FpMatrix out(p, v.rows(), 1);
  for (Index r = 0; r < v.rows(); ++r)
    if (v(r, 0)) out.set((r / n) * n + g.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(r % n)], 0, v(r, 0));
  return out;
}

}  // namespace

std::vector<long> brute_group_homology(int p, int d, int dim_v, int i_bound) {
  check_caps(p, d, dim_v, i_bound);
  const Group g = symmetric(d);
  const auto order = static_cast<Index>(g.elements.size());
  const auto rho = tensor_action(p, g, d, dim_v);
  const Index dim_m = rho.front().rows();

  // generators of each syzygy, as vectors in the previous free module
  std::vector<std::vector<FpMatrix>> gens;
  FpMatrix augmentation(p, 1, order);
  for (Index c = 0; c < order; ++c) augmentation.set(0, c, 1);
  FpMatrix previous = augmentation;  // F_{i-1} -> F_{i-2} as an F_p matrix
  for (int i = 1; i <= i_bound + 1; ++i) {
    FpMatrix kernel = la::kernel_basis(previous);
    FpMatrix reached(p, kernel.rows(), 0);
    std::vector<FpMatrix> chosen;
    for (Index c = 0; c < kernel.cols(); ++c) {
      FpMatrix v = kernel.col(c);
      if (la::in_span(reached, v)) continue;
      chosen.push_back(v);
      for (Index a = 0; a < order; ++a) reached = la::hstack(reached, translate(p, g, static_cast<int>(a), v));
      reached = la::image_basis(reached);
      if (reached.cols() == kernel.cols()) break;
    }
    FpMatrix map(p, kernel.rows(), order * static_cast<Index>(chosen.size()));
    for (std::size_t j = 0; j < chosen.size(); ++j)
      for (Index a = 0; a < order; ++a) {
        FpMatrix col = translate(p, g, static_cast<int>(a), chosen[j]);
        for (Index r = 0; r < col.rows(); ++r) map.set(r, static_cast<Index>(j) * order + a, col(r, 0));
      }
    gens.push_back(chosen);
    previous = map;
  }

  // M ⊗_G F_i = M^{m_i}; generator e_j -> sum over (g, l) of v_j[g, l] g e_l, m ⊗ g e_l = g^{-1} m in slot l
  std::vector<Index> rank_count(static_cast<std::size_t>(i_bound + 3), 0);
  std::vector<Index> sizes{1};
  for (const auto& gj : gens) sizes.push_back(static_cast<Index>(gj.size()));
  for (int i = 1; i <= i_bound + 1; ++i) {
    const auto& chosen = gens[static_cast<std::size_t>(i - 1)];
    const Index rows = sizes[static_cast<std::size_t>(i - 1)] * dim_m, cols = sizes[static_cast<std::size_t>(i)] * dim_m;
    FpMatrix d_i(p, rows, cols);
    for (std::size_t j = 0; j < chosen.size(); ++j)
      for (Index r = 0; r < chosen[j].rows(); ++r) {
        Scalar c = chosen[j](r, 0);
        if (!c) continue;
        const Index l = r / order;
        const int a = static_cast<int>(r % order);
        const FpMatrix& act = rho[static_cast<std::size_t>(g.inv[static_cast<std::size_t>(a)])];
        for (Index x = 0; x < dim_m; ++x)
          for (Index y = 0; y < dim_m; ++y)
            if (act(x, y)) d_i.add_to(l * dim_m + x, static_cast<Index>(j) * dim_m + y, c * act(x, y));
      }
    rank_count[static_cast<std::size_t>(i)] = la::rank(d_i);
  }
  std::vector<long> out;
  for (int i = 0; i <= i_bound; ++i) {
    auto u = static_cast<std::size_t>(i);
    out.push_back(static_cast<long>(sizes[u] * dim_m - rank_count[u] - rank_count[u + 1]));
  }
  return out;
}

std::vector<long> bar_group_homology(int p, int d, int dim_v, int i_bound) {
  check_caps(p, d, dim_v, i_bound);
  const Group g = symmetric(d);
  const auto rho = tensor_action(p, g, d, dim_v);
  const Index dim_m = rho.front().rows();
  const long bar = static_cast<long>(g.elements.size()) - 1;  // non-identity elements 1..|G|-1
  if (catalogue::ipow(bar, i_bound + 1) * dim_m > 20000) throw std::invalid_argument("normalized bar complex too large");

  auto word_of = [&](long code, int n) {
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      w[static_cast<std::size_t>(k)] = static_cast<int>(code % bar) + 1;
      code /= bar;
    }
    return w;
  };
  auto code_of = [&](const std::vector<int>& w) {
    long code = 0;
    for (std::size_t k = w.size(); k-- > 0;) code = code * bar + (w[k] - 1);
    return code;
  };
  std::vector<Index> ranks(static_cast<std::size_t>(i_bound + 3), 0);
  for (int n = 1; n <= i_bound + 1; ++n) {
    const long src = catalogue::ipow(bar, n), dst = catalogue::ipow(bar, n - 1);
    FpMatrix dn(p, dst * dim_m, src * dim_m);
    for (long code = 0; code < src; ++code) {
      auto w = word_of(code, n);
      auto put = [&](const std::vector<int>& target, const FpMatrix& act, Scalar sign) {
        const long t = code_of(target);
        for (Index x = 0; x < dim_m; ++x)
          for (Index y = 0; y < dim_m; ++y)
            if (act(x, y)) dn.add_to(t * dim_m + x, code * dim_m + y, sign * act(x, y));
      };
      const FpMatrix id = FpMatrix::identity(p, dim_m);
      // m.g1 = g1^{-1} m
      put(std::vector<int>(w.begin() + 1, w.end()), rho[static_cast<std::size_t>(g.inv[static_cast<std::size_t>(w[0])])], 1);
      for (int k = 0; k + 1 < n; ++k) {
        int prod = g.mul[static_cast<std::size_t>(w[static_cast<std::size_t>(k)])][static_cast<std::size_t>(w[static_cast<std::size_t>(k + 1)])];
        if (prod == 0) continue;
        std::vector<int> t(w.begin(), w.begin() + k);
        t.push_back(prod);
        t.insert(t.end(), w.begin() + k + 2, w.end());
        put(t, id, (k + 1) % 2 ? -1 : 1);
      }
      put(std::vector<int>(w.begin(), w.end() - 1), id, n % 2 ? -1 : 1);
    }
    ranks[static_cast<std::size_t>(n)] = la::rank(dn);
  }
  std::vector<long> out;
  for (int i = 0; i <= i_bound; ++i) {
    auto u = static_cast<std::size_t>(i);
    out.push_back(catalogue::ipow(bar, i) * dim_m - ranks[u] - ranks[u + 1]);
  }
  return out;
}

std::string tuple_json(const NakaokaTuple& t) {
  std::string s = "{\"k\":" + std::to_string(t.entries.size()) + ",\"degree\":" + std::to_string(t.degree()) + ",\"entries\":[";
  for (std::size_t i = 0; i < t.entries.size(); ++i) s += (i ? "," : "") + std::to_string(t.entries[i]);
  return s + "]}";
}

}  // namespace expfun::symgrp
