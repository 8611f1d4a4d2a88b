#include "expfun/bar.hpp"

#include <stdexcept>

namespace expfun::bar {

using catalogue::ipow;
using catalogue::Kind;

std::map<Cell, long> poincare_series(int p, const std::vector<SeriesGenerator>& gens, long max_degree,
                                     std::optional<long> max_weight) {
  std::map<Cell, long> acc{{{0, 0}, 1}};
  for (const auto& g : gens) {
    if (g.degree < 0 || g.s < 0) throw std::invalid_argument("generators need nonnegative degree and twist");
    if (g.degree == 0 && !max_weight) throw std::invalid_argument("degree-0 generators need a weight bound");
    const long w = ipow(p, g.s);
    std::map<Cell, long> next;
    for (const auto& [cell, n] : acc)
      for (long m = 0; !(g.exterior && m > 1); ++m) {
        Cell c{cell.degree + m * g.degree, cell.weight + m * w};
        if (c.degree > max_degree || (max_weight && c.weight > *max_weight)) break;
        next[c] += n;
      }
    acc = std::move(next);
  }
  return acc;
}

namespace {

struct Window {
  long degree;
  std::optional<long> weight;
  bool outside(long d, int s, int p) const { return d > degree || (weight && ipow(p, s) > *weight); }
};

void gamma_input(int p, int r, long i, const Window& w, std::vector<SeriesGenerator>& out) {
  if (i == 0 && !w.weight) throw std::invalid_argument("degree-0 generators need a weight bound");
  for (int k = 0;; ++k) {
    const long q = ipow(p, k);
    if (p == 2) {
      if (w.outside(q * i + 1, r + k, p)) return;
      out.push_back({false, r + k, q * i + 1});
    } else {
      if (w.outside(q * i + 1, r + k, p)) return;
      out.push_back({true, r + k, q * i + 1});
      if (!w.outside(p * q * i + 2, r + k + 1, p)) out.push_back({false, r + k + 1, p * q * i + 2});
    }
  }
}

std::vector<SeriesGenerator> first_level(catalogue::AlgebraKind kind, int r, long i, int p, const Window& w) {
  const bool odd = i % 2 != 0;
  std::vector<SeriesGenerator> out;
  switch (kind.kind) {
    case Kind::S:
      if (p != 2 && odd) throw std::invalid_argument("S needs an even generator degree at odd p");
      out.push_back({true, r, i + 1});
      break;
    case Kind::Lambda:
      if (p != 2 && !odd) throw std::invalid_argument("Lambda needs an odd generator degree at odd p");
      out.push_back({false, r, i + 1});
      break;
    case Kind::S_n:
      if (kind.n < 1) throw std::invalid_argument("truncation level must be at least 1");
      if (p != 2 && odd) throw std::invalid_argument("S_n needs an even generator degree at odd p");
      if (p == 2 && kind.n == 1) {
        out.push_back({false, r, i + 1});
      } else {
        out.push_back({true, r, i + 1});
        out.push_back({false, r + kind.n, ipow(p, kind.n) * i + 2});
      }
      break;
    case Kind::Gamma:
      if (p != 2 && odd) throw std::invalid_argument("Gamma needs an even generator degree at odd p");
      gamma_input(p, r, i, w, out);
      break;
    default:
      throw std::invalid_argument("no closed form for Tor over " + catalogue::kind_name(kind.kind));
  }
  std::erase_if(out, [&](const SeriesGenerator& g) { return w.outside(g.degree, g.s, p); });
  return out;
}

}  // namespace

std::vector<SeriesGenerator> tor_generators(catalogue::AlgebraKind kind, catalogue::GeneratorSpec gen, int p, int j,
                                            long max_degree, std::optional<long> max_weight) {
  if (j != 1 && j != 2) throw std::invalid_argument("closed forms cover levels 1 and 2");
  if (gen.multiplicity != 1) throw std::invalid_argument("closed forms take a single generator");
  Window w{max_degree, max_weight};
  auto level = first_level(kind, gen.r, gen.i, p, w);
  if (j == 1) return level;
  std::vector<SeriesGenerator> out;
  for (const auto& g : level) {
    auto next = first_level({g.exterior ? Kind::Lambda : Kind::Gamma}, g.s, g.degree, p, w);
    out.insert(out.end(), next.begin(), next.end());
  }
  return out;
}

TorTable expected_tor(catalogue::AlgebraKind kind, catalogue::GeneratorSpec gen, int p, int j, long max_degree,
                      std::optional<long> max_weight) {
  TorTable t;
  t.level = j;
  t.totals = poincare_series(p, tor_generators(kind, gen, p, j, max_degree, max_weight), max_degree, max_weight);
  return t;
}

std::vector<SeriesGenerator> e_generators(ETarget x, catalogue::AlgebraKind input, int r, int p, long max_degree,
                                          long max_weight) {
  if (input.kind != Kind::S && input.kind != Kind::S_n) throw std::invalid_argument("E is tabulated on S and S_n inputs");
  if (input.kind == Kind::S_n && input.n < 1) throw std::invalid_argument("truncation level must be at least 1");
  if (r < 0) throw std::invalid_argument("twist must be nonnegative");
  Window w{max_degree, max_weight};
  const int n = input.n;
  auto P = [&](int e) { return ipow(p, e); };
  std::vector<SeriesGenerator> out;
  auto add = [&](bool exterior, int s, long degree) {
    if (!w.outside(degree, s, p)) out.push_back({exterior, s, degree});
  };
  if (x == ETarget::Lambda) {
    if (input.kind == Kind::S_n && p == 2 && n == 1) {
      add(false, r, 2 * P(r) - 1);
    } else {
      add(true, r, 2 * P(r) - 1);
      if (input.kind == Kind::S_n) add(false, r + n, 2 * P(r + n) - 2);
    }
    return out;
  }
  if (input.kind == Kind::S) {
    add(false, r, 2 * P(r) - 2);
    return out;
  }
  if (p != 2) {
    add(false, r, 2 * P(r) - 2);
    for (int k = 0; P(r + n + k) <= max_weight; ++k) {
      add(true, r + n + k, 2 * P(r + n + k) - 2 * P(k) - 1);
      add(false, r + n + k + 1, 2 * P(r + n + k + 1) - 2 * P(k + 1) - 2);
    }
  } else if (n == 1) {
    for (int k = 0; P(r + k) <= max_weight; ++k) add(false, r + k, 2 * P(r + k) - P(k) - 1);
  } else {
    add(false, r, 2 * P(r) - 2);
    for (int k = 0; P(r + n + k) <= max_weight; ++k) add(false, r + n + k, 2 * P(r + n + k) - 2 * P(k) - 1);
  }
  return out;
}

TorTable expected_E(ETarget x, catalogue::AlgebraKind input, int r, int p, long max_degree, long max_weight) {
  TorTable t;
  t.level = x == ETarget::Lambda ? 1 : 2;
  t.totals = poincare_series(p, e_generators(x, input, r, p, max_degree, max_weight), max_degree, max_weight);
  return t;
}

TorTable regrade_E(const TorTable& t, ETarget x) {
  if (t.level != (x == ETarget::Lambda ? 1 : 2)) throw std::invalid_argument("E(Lambda,-) regrades level 1, E(S,-) level 2");
  TorTable out;
  out.level = t.level;
  for (const auto& [c, n] : t.totals) {
    long d = 2 * c.weight - c.degree;
    if (d < 0) throw std::domain_error("regraded degree is negative at total degree " + std::to_string(c.degree));
    out.totals[{d, c.weight}] += n;
  }
  return out;
}

}  // namespace expfun::bar
