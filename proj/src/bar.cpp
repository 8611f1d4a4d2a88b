#include "expfun/bar.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace expfun::bar {

using hopf::HopfPresentation;
using la::Index;
using la::Scalar;

const std::vector<Word>& BarComplex::words(const Slot& k) const {
  static const std::vector<Word> none;
  auto it = chains.find(k);
  return it == chains.end() ? none : it->second;
}

long BarComplex::dim(const Slot& k) const { return static_cast<long>(words(k).size()); }

namespace {

Slot below(const Slot& k) { return {k.s - 1, k.internal, k.weight}; }
Slot above(const Slot& k) { return {k.s + 1, k.internal, k.weight}; }

std::map<Word, int> index_of(const std::vector<Word>& words) {
  std::map<Word, int> out;
  for (std::size_t i = 0; i < words.size(); ++i) out.emplace(words[i], static_cast<int>(i));
  return out;
}

FpMatrix differential_of(const BarComplex& c, const Slot& k) {
  const auto& a = *c.base;
  const int p = a.p();
  const auto& src = c.words(k);
  const auto& dst = c.words(below(k));
  FpMatrix d(p, static_cast<Index>(dst.size()), static_cast<Index>(src.size()));
  if (k.s < 2) return d;
  auto where = index_of(dst);
  for (std::size_t col = 0; col < src.size(); ++col) {
    const Word& w = src[col];
    long eps = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      eps += a.element(w[i]).degree + 1;
      if (!a.product_known(w[i], w[i + 1])) throw std::invalid_argument("bar differential needs a product outside the algebra window");
      Scalar sign = (p != 2 && eps % 2 != 0) ? p - 1 : 1;
      for (const auto& t : a.product(w[i], w[i + 1])) {
        Word merged(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        merged.push_back(t.index);
        merged.insert(merged.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
        auto it = where.find(merged);
        if (it == where.end()) throw std::logic_error("bar differential left the enumerated chains");
        d.add_to(it->second, static_cast<Index>(col), sign * t.coeff);
      }
    }
  }
  return d;
}

}  // namespace

BarComplex reduced_bar(const HopfPresentation& a, Bounds bounds) {
  if (a.grading().kind != hopf::Grading::Kind::natural) throw std::domain_error("the bar construction needs a natural grading");
  if (a.weight_modulus() != 0) throw std::domain_error("the bar construction needs integral weights");
  for (int i = 0; i < a.size(); ++i)
    if (i != a.unit() && a.element(i).degree == 0 && a.element(i).weight == 0)
      throw std::domain_error("algebra is not connected: " + a.element(i).label + " sits in degree 0 and weight 0");
  if (bounds.max_degree < 0) throw std::invalid_argument("degree bound must be nonnegative");
  if (a.degree_bound() < bounds.max_degree) throw std::invalid_argument("bar degree bound exceeds the algebra window");
  if (a.weight_bound()) {
    if (!bounds.max_weight) bounds.max_weight = a.weight_bound();
    if (*bounds.max_weight > *a.weight_bound()) throw std::invalid_argument("bar weight bound exceeds the algebra window");
  }

  BarComplex c;
  c.base = std::make_shared<const HopfPresentation>(a);
  c.bounds = bounds;
  const long top = bounds.max_degree + 1;
  std::vector<int> letters;
  for (int i = 0; i < a.size(); ++i)
    if (i != a.unit()) letters.push_back(i);
  c.chains[{0, 0, 0}] = {Word{}};

  Word word;
  auto grow = [&](auto& self, long s, long internal, long weight) -> void {
    for (int l : letters) {
      const auto& e = a.element(l);
      const long ns = s + 1, ni = internal + e.degree, nw = weight + e.weight;
      if (bounds.max_weight && nw > *bounds.max_weight) continue;
      const bool past_s = bounds.max_s && ns > *bounds.max_s;
      if (ns + ni > top || (bounds.max_s && ns > *bounds.max_s + 1)) {
        c.complete_below_weight = std::min(c.complete_below_weight, nw);
        continue;
      }
      if (ns + ni == top || past_s) c.complete_below_weight = std::min(c.complete_below_weight, nw);
      word.push_back(l);
      c.chains[{ns, ni, nw}].push_back(word);
      self(self, ns, ni, nw);
      word.pop_back();
    }
  };
  grow(grow, 0, 0, 0);

  for (const auto& [k, words] : c.chains) c.differential.emplace(k, differential_of(c, k));
  if (!d_squared_zero(c)) throw std::logic_error("bar differential does not square to zero");
  return c;
}

bool d_squared_zero(const BarComplex& c) {
  for (const auto& [k, d] : c.differential) {
    if (k.s < 2) continue;
    auto it = c.differential.find(below(k));
    if (it == c.differential.end()) {
      if (d.rows() != 0) return false;
      continue;
    }
    if (!(it->second * d).is_zero()) return false;
  }
  return true;
}

namespace {

bool reported(const BarComplex& c, const Slot& k) {
  return k.total() <= c.bounds.max_degree && !(c.bounds.max_s && k.s > *c.bounds.max_s);
}

}  // namespace

TorTable homology_table(const BarComplex& c) {
  TorTable t;
  std::map<Slot, long> ranks;
  auto rank_of = [&](const Slot& k) -> long {
    auto it = c.differential.find(k);
    if (it == c.differential.end()) return 0;
    auto [r, fresh] = ranks.try_emplace(k, 0);
    if (fresh) r->second = la::rank(it->second);
    return r->second;
  };
  for (const auto& [k, words] : c.chains) {
    if (!reported(c, k)) continue;
    long h = static_cast<long>(words.size()) - rank_of(k) - rank_of(above(k));
    if (h == 0) continue;
    t.slots[k] = h;
    t.totals[{k.total(), k.weight}] += h;
  }
  return t;
}

std::map<Cell, long> window(const std::map<Cell, long>& t, long max_degree, std::optional<long> max_weight) {
  std::map<Cell, long> out;
  for (const auto& [cell, n] : t)
    if (cell.degree <= max_degree && (!max_weight || cell.weight <= *max_weight) && n) out[cell] = n;
  return out;
}

// ---------------------------------------------------------------- Tor as a Hopf algebra

namespace {

using Sparse = std::vector<std::pair<int, Scalar>>;

struct HomologyBlock {
  std::map<Word, int> index;
  std::vector<Sparse> reps;  // one chain per class
  FpMatrix projection;       // chains -> class coordinates, zero on boundaries and on a complement of cycles
  int first_class = 0;
};

// chains = boundaries + representatives + complement; keep the representative coordinates
HomologyBlock homology_block(const BarComplex& c, const Slot& k) {
  const int p = c.base->p();
  const auto& words = c.words(k);
  const auto n = static_cast<Index>(words.size());
  const FpMatrix& out = c.differential.at(k);
  FpMatrix cycles = out.rows() ? la::kernel_basis(out) : FpMatrix::identity(p, n);
  auto in = c.differential.find(above(k));
  FpMatrix boundaries = in == c.differential.end() ? FpMatrix(p, n, 0) : la::image_basis(in->second);
  FpMatrix reps = la::subspace(la::SubspaceOp::quotient, cycles, boundaries);
  HomologyBlock b;
  if (reps.cols() == 0) return b;
  FpMatrix rest = la::subspace(la::SubspaceOp::quotient, FpMatrix::identity(p, n), la::hstack(boundaries, reps));
  auto inv = la::inverse(la::hstack(la::hstack(boundaries, reps), rest));
  if (!inv) throw std::logic_error("homology splitting is not a basis");
  std::vector<Index> rows;
  for (Index r = 0; r < reps.cols(); ++r) rows.push_back(boundaries.cols() + r);
  b.projection = inv->rows_subset(rows);
  b.index = index_of(words);
  for (Index j = 0; j < reps.cols(); ++j) {
    Sparse v;
    for (Index i = 0; i < n; ++i)
      if (reps(i, j)) v.emplace_back(static_cast<int>(i), reps(i, j));
    b.reps.push_back(std::move(v));
  }
  return b;
}

// all shuffles of u and v with suspended-degree Koszul signs
template <class Emit>
void shuffles(const HopfPresentation& a, const Word& u, const Word& v, Emit&& emit) {
  const int p = a.p();
  std::vector<int> suffix(u.size() + 1, 0);  // parity of sum of (|u_k|+1) for k >= i
  for (std::size_t i = u.size(); i-- > 0;) suffix[i] = (suffix[i + 1] + static_cast<int>(a.element(u[i]).degree + 1)) & 1;
  Word acc;
  auto step = [&](auto& self, std::size_t i, std::size_t j, int parity) -> void {
    if (i == u.size() && j == v.size()) {
      emit(acc, (p != 2 && parity) ? Scalar(p - 1) : Scalar(1));
      return;
    }
    if (i < u.size()) {
      acc.push_back(u[i]);
      self(self, i + 1, j, parity);
      acc.pop_back();
    }
    if (j < v.size()) {
      acc.push_back(v[j]);
      int flip = static_cast<int>((a.element(v[j]).degree + 1) & 1) & suffix[i];
      self(self, i, j + 1, parity ^ flip);
      acc.pop_back();
    }
  };
  step(step, 0, 0, 0);
}

}  // namespace

HopfPresentation tor_hopf(const BarComplex& c) {
  if (c.bounds.max_s) throw std::invalid_argument("the Hopf structure on Tor needs an uncapped homological degree");
  const auto& a = *c.base;
  const int p = a.p();

  std::map<Slot, HomologyBlock> blocks;
  std::vector<hopf::BasisElement> basis;
  std::vector<Slot> slot_of;
  for (const auto& [k, words] : c.chains) {
    if (!reported(c, k)) continue;
    auto b = homology_block(c, k);
    if (b.reps.empty()) continue;
    b.first_class = static_cast<int>(basis.size());
    for (std::size_t j = 0; j < b.reps.size(); ++j) {
      std::ostringstream label;
      if (k.s == 0)
        label << "1";
      else
        label << "[" << k.s << "," << k.internal << "," << k.weight << "]#" << j;
      basis.push_back({label.str(), k.total(), k.weight});
      slot_of.push_back(k);
    }
    blocks.emplace(k, std::move(b));
  }
  HopfPresentation h(p, hopf::Grading::natural(), c.bounds.max_degree, basis, 0);
  h.set_weight_bound(c.bounds.max_weight);

  auto project = [&](const Slot& k, const FpMatrix& chain) {
    const auto& b = blocks.at(k);
    return b.projection * chain;
  };

  const int n = h.size();
  for (int x = 1; x < n; ++x)
    for (int y = 1; y < n; ++y) {
      if (!h.product_known(x, y)) continue;
      const Slot& kx = slot_of[static_cast<std::size_t>(x)];
      const Slot& ky = slot_of[static_cast<std::size_t>(y)];
      Slot kz{kx.s + ky.s, kx.internal + ky.internal, kx.weight + ky.weight};
      auto target = blocks.find(kz);
      if (target == blocks.end()) {
        h.set_product(x, y, {});
        continue;
      }
      const auto& bx = blocks.at(kx);
      const auto& by = blocks.at(ky);
      const auto& ux = c.words(kx);
      const auto& uy = c.words(ky);
      FpMatrix chain(p, c.dim(kz), 1);
      for (const auto& [i, ci] : bx.reps[static_cast<std::size_t>(x - bx.first_class)])
        for (const auto& [j, cj] : by.reps[static_cast<std::size_t>(y - by.first_class)])
          shuffles(a, ux[static_cast<std::size_t>(i)], uy[static_cast<std::size_t>(j)], [&](const Word& w, Scalar sign) {
            chain.add_to(target->second.index.at(w), 0, sign * ci % p * cj);
          });
      FpMatrix coords = project(kz, chain);
      hopf::Vec v;
      for (Index r = 0; r < coords.rows(); ++r)
        if (coords(r, 0)) v.push_back({target->second.first_class + static_cast<int>(r), coords(r, 0)});
      h.set_product(x, y, std::move(v));
    }

  for (int x = 1; x < n; ++x) {
    const Slot& k = slot_of[static_cast<std::size_t>(x)];
    const auto& bx = blocks.at(k);
    const auto& words = c.words(k);
    std::map<std::pair<Slot, Slot>, std::vector<std::tuple<int, int, Scalar>>> pieces;
    for (const auto& [i, ci] : bx.reps[static_cast<std::size_t>(x - bx.first_class)]) {
      const Word& w = words[static_cast<std::size_t>(i)];
      Slot left{0, 0, 0};
      for (std::size_t cut = 0; cut <= w.size(); ++cut) {
        if (cut > 0) {
          const auto& e = a.element(w[cut - 1]);
          left = {left.s + 1, left.internal + e.degree, left.weight + e.weight};
        }
        Slot right{k.s - left.s, k.internal - left.internal, k.weight - left.weight};
        auto bl = blocks.find(left);
        auto br = blocks.find(right);
        if (bl == blocks.end() || br == blocks.end()) continue;
        Word lw(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(cut));
        Word rw(w.begin() + static_cast<std::ptrdiff_t>(cut), w.end());
        pieces[{left, right}].emplace_back(bl->second.index.at(lw), br->second.index.at(rw), ci);
      }
    }
    hopf::Vec2 out;
    for (const auto& [key, terms] : pieces) {
      const auto& bl = blocks.at(key.first);
      const auto& br = blocks.at(key.second);
      FpMatrix m(p, c.dim(key.first), c.dim(key.second));
      for (const auto& [i, j, v] : terms) m.add_to(i, j, v);
      FpMatrix coords = bl.projection * m * la::transpose(br.projection);
      for (Index r = 0; r < coords.rows(); ++r)
        for (Index s = 0; s < coords.cols(); ++s)
          if (coords(r, s)) out.push_back({bl.first_class + static_cast<int>(r), br.first_class + static_cast<int>(s), coords(r, s)});
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return std::pair(l.left, l.right) < std::pair(r.left, r.right); });
    h.set_coproduct(x, std::move(out));
  }
  return h;
}

// ---------------------------------------------------------------- cofree identification

namespace {

std::optional<int> log_p(long w, int p) {
  int r = 0;
  while (w > 1 && w % p == 0) {
    w /= p;
    ++r;
  }
  if (w != 1) return std::nullopt;
  return r;
}

std::string describe(const Cell& c) { return "(degree " + std::to_string(c.degree) + ", weight " + std::to_string(c.weight) + ")"; }

}  // namespace

Identification identify_cofree(const HopfPresentation& h) {
  Identification out;
  if (h.grading().kind != hopf::Grading::Kind::natural || h.weight_modulus() != 0) {
    out.mismatch = "only naturally graded algebras with integral weights are identified";
    return out;
  }
  const int p = h.p();
  std::map<Cell, long> actual;
  for (const auto& [key, members] : h.blocks()) actual[{key.degree, key.weight}] += static_cast<long>(members.size());
  const auto prim = hopf::primitives(h).dims();

  std::vector<bool> conventions{true};  // odd degrees exterior
  if (p == 2) conventions.push_back(false);
  for (bool parity : conventions) {
    std::vector<CofreeGenerator> gens;
    std::vector<SeriesGenerator> series;
    std::string problem;
    for (const auto& [key, m] : prim) {
      auto r = log_p(key.weight, p);
      if (!r) {
        problem = "primitive weight " + std::to_string(key.weight) + " is not a power of p";
        break;
      }
      bool exterior = parity && key.degree % 2 != 0;
      gens.push_back({exterior ? catalogue::Kind::Lambda : catalogue::Kind::Gamma, *r, key.degree, static_cast<int>(m)});
      for (long k = 0; k < m; ++k) series.push_back({exterior, *r, key.degree});
    }
    if (problem.empty()) {
      auto model = poincare_series(p, series, h.degree_bound(), h.weight_bound());
      std::set<Cell> cells;
      for (const auto& [c, n] : actual) cells.insert(c);
      for (const auto& [c, n] : model) cells.insert(c);
      for (const auto& c : cells) {
        long x = actual.count(c) ? actual.at(c) : 0, y = model.count(c) ? model.at(c) : 0;
        if (x != y) {
          problem = "block " + describe(c) + " has dimension " + std::to_string(x) + " but the cofree model has " + std::to_string(y);
          break;
        }
      }
    }
    if (problem.empty()) {
      out.ok = true;
      out.generators = gens;
      out.mismatch.clear();
      return out;
    }
    if (out.mismatch.empty()) out.mismatch = problem;
  }
  return out;
}

HopfPresentation cofree_model(int p, const std::vector<CofreeGenerator>& gens, long degree_bound,
                              std::optional<long> weight_bound) {
  HopfPresentation out = hopf::trivial_algebra(p, hopf::Grading::natural(), degree_bound);
  out.set_weight_bound(weight_bound);
  for (const auto& g : gens) {
    auto factor = catalogue::make(p, {g.kind}, {g.r, g.degree, g.multiplicity}, degree_bound, weight_bound);
    out = hopf::tensor_product(out, factor);
  }
  out.set_weight_bound(weight_bound);
  return out;
}

Iterated tor_iterated(const HopfPresentation& a, int j, Bounds bounds) {
  if (j < 1) throw std::invalid_argument("iteration level starts at 1");
  Iterated out;
  HopfPresentation current = a;
  std::optional<long> weight = bounds.max_weight ? bounds.max_weight : a.weight_bound();
  for (int level = 1; level < j; ++level) {
    auto h = tor_hopf(reduced_bar(current, bounds));
    auto id = identify_cofree(h);
    out.stages.push_back(id);
    if (!id.ok) throw std::runtime_error("level " + std::to_string(level) + " Tor is not cofree: " + id.mismatch);
    current = cofree_model(a.p(), id.generators, bounds.max_degree, weight);
  }
  out.table = homology_table(reduced_bar(current, bounds));
  out.table.level = j;
  return out;
}

long euler_per_weight(const BarComplex& c, long weight) {
  if (weight >= c.complete_below_weight || (c.bounds.max_weight && weight > *c.bounds.max_weight))
    throw std::invalid_argument("weight " + std::to_string(weight) + " is not fully enumerated");
  long chi = 0;
  for (const auto& [k, words] : c.chains)
    if (k.weight == weight) chi += (k.s % 2 ? -1 : 1) * static_cast<long>(words.size());
  return chi;
}

long euler_per_weight(const TorTable& t, long weight) {
  long chi = 0;
  for (const auto& [k, n] : t.slots)
    if (k.weight == weight) chi += (k.s % 2 ? -1 : 1) * n;
  return chi;
}

std::string slots_csv(const TorTable& t) {
  std::ostringstream out;
  out << "s,internal_degree,weight,dim\n";
  for (const auto& [k, n] : t.slots) out << k.s << ',' << k.internal << ',' << k.weight << ',' << n << '\n';
  return out.str();
}

std::string totals_csv(const TorTable& t) {
  std::ostringstream out;
  out << "total_degree,weight,dim\n";
  for (const auto& [c, n] : t.totals) out << c.degree << ',' << c.weight << ',' << n << '\n';
  return out.str();
}

}  // namespace expfun::bar
