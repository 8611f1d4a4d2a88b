#include "expfun/filtration.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace expfun::hopf {

using la::Index;

namespace {

using Chain = std::map<BlockKey, FpMatrix>;  // full-block coordinates

std::vector<int> augmentation_members(const HopfPresentation& h, const std::vector<int>& members) {
  std::vector<int> out;
  for (int i : members)
    if (i != h.unit()) out.push_back(i);
  return out;
}

// rows annihilate exactly the span
FpMatrix annihilator(const FpMatrix& span, Index ambient, int p) {
  if (span.cols() == 0) return FpMatrix::identity(p, ambient);
  return la::transpose(la::kernel_basis(la::transpose(span)));
}

Chain zero_chain(const HopfPresentation& h) {
  Chain c;
  for (const auto& [key, members] : h.blocks()) c.emplace(key, FpMatrix(h.p(), static_cast<Index>(members.size()), 0));
  return c;
}

Chain whole_ideal(const HopfPresentation& h) {
  Chain c;
  for (const auto& [key, members] : h.blocks()) {
    auto aug = augmentation_members(h, members);
    FpMatrix m(h.p(), static_cast<Index>(members.size()), static_cast<Index>(aug.size()));
    for (std::size_t k = 0; k < aug.size(); ++k) m.set(h.position(aug[k]), static_cast<Index>(k), 1);
    c.emplace(key, m);
  }
  return c;
}

// sparse assembly of a matrix whose rows are labelled by arbitrary keys
template <class Key>
struct Assembly {
  std::map<Key, Index> rows;
  std::vector<std::tuple<Index, Index, Scalar>> entries;
  void add(const Key& k, Index col, Scalar v) {
    auto [it, fresh] = rows.emplace(k, static_cast<Index>(rows.size()));
    (void)fresh;
    entries.emplace_back(it->second, col, v);
  }
  FpMatrix build(int p, Index cols) const {
    FpMatrix m(p, static_cast<Index>(rows.size()), cols);
    for (const auto& [r, c, v] : entries) m.add_to(r, c, v);
    return m;
  }
};

FpMatrix lift_aug(const HopfPresentation& h, const std::vector<int>& members, const std::vector<int>& aug, const FpMatrix& k) {
  FpMatrix out(h.p(), static_cast<Index>(members.size()), k.cols());
  for (std::size_t c = 0; c < aug.size(); ++c)
    for (Index j = 0; j < k.cols(); ++j) out.set(h.position(aug[c]), j, k(static_cast<Index>(c), j));
  return out;
}

// {x in the ideal : reduced diagonal of x lies in prev (x) ideal}
Chain next_primitive_level(const HopfPresentation& h, const Chain& prev) {
  const int p = h.p();
  const int u = h.unit();
  Chain quot;
  for (const auto& [key, members] : h.blocks()) quot.emplace(key, annihilator(prev.at(key), static_cast<Index>(members.size()), p));
  Chain out;
  for (const auto& [key, members] : h.blocks()) {
    auto aug = augmentation_members(h, members);
    Assembly<std::tuple<BlockKey, Index, int>> a;
    for (std::size_t c = 0; c < aug.size(); ++c)
      for (const auto& t : h.coproduct(aug[c])) {
        if (t.left == u || t.right == u) continue;
        BlockKey lb = h.block_of(t.left);
        const auto& q = quot.at(lb);
        for (Index r = 0; r < q.rows(); ++r)
          if (Scalar v = q(r, h.position(t.left))) a.add({lb, r, t.right}, static_cast<Index>(c), v * t.coeff);
      }
    out.emplace(key, lift_aug(h, members, aug, la::kernel_basis(a.build(p, static_cast<Index>(aug.size())))));
  }
  return out;
}

Chain next_power(const HopfPresentation& h, const Chain& prev) {
  const int p = h.p();
  std::map<BlockKey, std::vector<Vec>> gens;
  for (const auto& [key, span] : prev) {
    const auto& members = h.blocks().at(key);
    for (Index c = 0; c < span.cols(); ++c) {
      Vec x = to_sparse(span.col(c), members);
      for (int b = 0; b < h.size(); ++b) {
        if (b == h.unit()) continue;
        auto y = multiply(h, x, basis_vec(b));
        if (!y || y->empty()) continue;
        gens[h.block_of(y->front().index)].push_back(*y);
      }
    }
  }
  Chain out = zero_chain(h);
  for (auto& [key, vs] : gens) {
    const auto& members = h.blocks().at(key);
    FpMatrix m(p, static_cast<Index>(members.size()), static_cast<Index>(vs.size()));
    for (std::size_t c = 0; c < vs.size(); ++c)
      for (const auto& t : vs[c]) m.set(h.position(t.index), static_cast<Index>(c), t.coeff);
    out[key] = la::image_basis(m);
  }
  return out;
}

bool same(const Chain& a, const Chain& b) {
  for (const auto& [key, m] : a)
    if (m.cols() != b.at(key).cols()) return false;
  return true;
}

bool contained(const Chain& small, const Chain& big) {
  for (const auto& [key, m] : small) {
    if (m.cols() == 0) continue;
    const auto& B = big.at(key);
    if (la::rank(la::hstack(B, m)) != B.cols()) return false;
  }
  return true;
}

GradedSubspace with_unit(const HopfPresentation& h, const Chain& c) {
  GradedSubspace out;
  for (const auto& [key, m] : c) {
    if (key == h.block_of(h.unit())) {
      const auto& members = h.blocks().at(key);
      FpMatrix e(h.p(), static_cast<Index>(members.size()), 1);
      e.set(h.position(h.unit()), 0, 1);
      out.blocks.emplace(key, la::hstack(e, m));
    } else {
      out.blocks.emplace(key, m);
    }
  }
  return out;
}

GradedSubspace without_unit(const Chain& c) { return GradedSubspace{c}; }

std::vector<Chain> primitive_chain(const HopfPresentation& h, int levels) {
  std::vector<Chain> out{zero_chain(h)};
  for (int k = 1; k <= levels; ++k) out.push_back(next_primitive_level(h, out.back()));
  return out;
}

std::vector<Chain> power_chain(const HopfPresentation& h, int levels) {
  std::vector<Chain> out{whole_ideal(h)};  // index 0 holds Q_{-1}
  for (int k = 2; k <= levels; ++k) out.push_back(next_power(h, out.back()));
  return out;
}

long ideal_dim(const HopfPresentation& h) { return h.size() - 1; }

long chain_total(const Chain& c) {
  long t = 0;
  for (const auto& [k, m] : c) t += m.cols();
  return t;
}

}  // namespace

GradedSubspace primitive_filtration(const HopfPresentation& h, int k) {
  if (k < 0) throw std::invalid_argument("filtration level must be nonnegative");
  return with_unit(h, primitive_chain(h, k).back());
}

GradedSubspace augmentation_filtration(const HopfPresentation& h, int k) {
  if (k < 1) throw std::invalid_argument("augmentation filtration starts at level 1");
  return without_unit(power_chain(h, k).back());
}

GradedSubspace reduced_diagonal_kernel(const HopfPresentation& h, int k) {
  const int p = h.p();
  const int u = h.unit();
  Chain out;
  for (const auto& [key, members] : h.blocks()) {
    auto aug = augmentation_members(h, members);
    Assembly<std::vector<int>> a;
    for (std::size_t c = 0; c < aug.size(); ++c) {
      // tensors in the ideal, split the first factor k times
      std::map<std::vector<int>, Scalar> cur{{{aug[c]}, 1}};
      for (int step = 0; step < k; ++step) {
        std::map<std::vector<int>, Scalar> next;
        for (const auto& [word, coeff] : cur)
          for (const auto& t : h.coproduct(word.front())) {
            if (t.left == u || t.right == u) continue;
            std::vector<int> w{t.left, t.right};
            w.insert(w.end(), word.begin() + 1, word.end());
            auto& slot = next[w];
            slot = la::field(p).add(slot, coeff * t.coeff);
          }
        std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
        cur = std::move(next);
      }
      for (const auto& [word, coeff] : cur) a.add(word, static_cast<Index>(c), coeff);
    }
    out.emplace(key, lift_aug(h, members, aug, la::kernel_basis(a.build(p, static_cast<Index>(aug.size())))));
  }
  return with_unit(h, out);
}

Stabilization check_stabilization(const HopfPresentation& h, Filtration f, int max_level) {
  Stabilization s;
  auto chain = f == Filtration::primitive ? primitive_chain(h, max_level) : power_chain(h, max_level);
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const Chain& a = chain[k];
    const Chain& b = chain[k + 1];
    bool ok = f == Filtration::primitive ? contained(a, b) : contained(b, a);
    if (!ok) s.monotone = false;
    if (same(a, b) && s.stable_from < 0) s.stable_from = static_cast<int>(k) + (f == Filtration::primitive ? 0 : 1);
    if (s.stable_from >= 0 && !same(a, b)) s.stable_once_equal = false;
  }
  long last = chain_total(chain.back());
  s.exhaustive = f == Filtration::primitive ? last == ideal_dim(h) : last == 0;
  return s;
}

namespace {

struct Adapted {
  std::map<BlockKey, FpMatrix> inverse;       // block coordinates -> adapted coordinates
  std::map<BlockKey, FpMatrix> basis;         // adapted vectors as columns
  std::map<BlockKey, std::vector<int>> level;  // order value per adapted vector
};

// order value: P-level for the coradical filtration, minus the power for the augmentation one
Adapted adapted_basis(const HopfPresentation& h, Filtration f) {
  const int p = h.p();
  const int max_level = h.size() + 1;
  std::vector<Chain> chain = f == Filtration::primitive ? primitive_chain(h, max_level) : power_chain(h, max_level);
  if (f == Filtration::primitive && chain_total(chain.back()) != ideal_dim(h))
    throw std::runtime_error("primitive filtration does not exhaust the window");
  if (f == Filtration::augmentation && chain_total(chain.back()) != 0)
    throw std::runtime_error("augmentation filtration does not reach zero in the window");
  Adapted out;
  for (const auto& [key, members] : h.blocks()) {
    const Index dim = static_cast<Index>(members.size());
    FpMatrix cols(p, dim, 0);
    std::vector<int> lv;
    if (key == h.block_of(h.unit())) {
      FpMatrix e(p, dim, 1);
      e.set(h.position(h.unit()), 0, 1);
      cols = e;
      lv.push_back(0);
    }
    if (f == Filtration::primitive) {
      for (std::size_t k = 1; k < chain.size(); ++k) {
        FpMatrix fresh = la::subspace(la::SubspaceOp::quotient, chain[k].at(key), chain[k - 1].at(key));
        cols = la::hstack(cols, fresh);
        lv.insert(lv.end(), static_cast<std::size_t>(fresh.cols()), static_cast<int>(k));
      }
    } else {
      // chain[k] is Q_{-(k+1)}; walk from the deepest power up
      for (std::size_t k = chain.size(); k-- > 0;) {
        FpMatrix deeper = k + 1 < chain.size() ? chain[k + 1].at(key) : FpMatrix(p, dim, 0);
        FpMatrix fresh = la::subspace(la::SubspaceOp::quotient, chain[k].at(key), deeper);
        cols = la::hstack(cols, fresh);
        lv.insert(lv.end(), static_cast<std::size_t>(fresh.cols()), -static_cast<int>(k + 1));
      }
    }
    auto inv = la::inverse(cols);
    if (!inv) throw std::logic_error("adapted basis is not a basis");
    out.inverse.emplace(key, *inv);
    out.basis.emplace(key, cols);
    out.level.emplace(key, lv);
  }
  return out;
}

}  // namespace

HopfPresentation associated_graded(const HopfPresentation& h, Filtration f) {
  const int p = h.p();
  Adapted ad = adapted_basis(h, f);
  // new basis: blocks in order, adapted vectors in order
  std::vector<BasisElement> basis;
  std::vector<int> order;                           // order value per new element
  std::map<std::pair<BlockKey, Index>, int> where;  // (block, adapted column) -> new index
  std::vector<Vec> vectors;
  int unit = -1;
  for (const auto& [key, members] : h.blocks()) {
    const auto& cols = ad.basis.at(key);
    const auto& lv = ad.level.at(key);
    for (Index c = 0; c < cols.cols(); ++c) {
      Vec v = to_sparse(cols.col(c), members);
      int level = lv[static_cast<std::size_t>(c)];
      std::string label = h.element(v.front().index).label;
      if (key == h.block_of(h.unit()) && c == 0) {
        unit = static_cast<int>(basis.size());
        label = "1";
      } else {
        label += "@" + std::to_string(f == Filtration::primitive ? level : -level);
      }
      where[{key, c}] = static_cast<int>(basis.size());
      basis.push_back({label, key.degree, key.weight});
      order.push_back(level);
      vectors.push_back(v);
    }
  }
  HopfPresentation g(p, h.grading(), h.degree_bound(), basis, unit);
  g.set_weight_bound(h.weight_bound());
  g.set_weight_modulus(h.weight_modulus());
  g.set_factors(h.factors());

  auto coords = [&](const Vec& v) {
    // sparse global vector -> list of (new index, coeff)
    std::map<BlockKey, FpMatrix> parts;
    for (const auto& t : v) {
      BlockKey k = h.block_of(t.index);
      auto it = parts.find(k);
      if (it == parts.end()) it = parts.emplace(k, FpMatrix(p, static_cast<Index>(h.blocks().at(k).size()), 1)).first;
      it->second.set(h.position(t.index), 0, t.coeff);
    }
    std::vector<Term> out;
    for (const auto& [k, col] : parts) {
      FpMatrix a = ad.inverse.at(k) * col;
      for (Index r = 0; r < a.rows(); ++r)
        if (a(r, 0)) out.push_back({where.at({k, r}), a(r, 0)});
    }
    return out;
  };

  const int n = g.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!g.product_known(i, j)) continue;
      auto prod = multiply(h, vectors[static_cast<std::size_t>(i)], vectors[static_cast<std::size_t>(j)]);
      if (!prod) throw std::logic_error("product unexpectedly outside the window");
      int want = order[static_cast<std::size_t>(i)] + order[static_cast<std::size_t>(j)];
      Vec kept;
      for (const auto& t : coords(*prod)) {
        int o = order[static_cast<std::size_t>(t.index)];
        if (o > want) throw std::runtime_error("filtration is not multiplicative at " + basis[static_cast<std::size_t>(i)].label);
        if (o == want) kept.push_back(t);
      }
      std::sort(kept.begin(), kept.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
      g.set_product(i, j, kept);
    }
  for (int i = 0; i < n; ++i) {
    int want = order[static_cast<std::size_t>(i)];
    std::map<std::pair<int, int>, Scalar> acc;
    Vec2 d = comultiply(h, vectors[static_cast<std::size_t>(i)]);
    // expand each side in adapted coordinates
    std::map<int, std::vector<Term>> left_cache, right_cache;
    for (const auto& t : d) {
      auto& lc = left_cache[t.left];
      if (lc.empty()) lc = coords(basis_vec(t.left));
      auto& rc = right_cache[t.right];
      if (rc.empty()) rc = coords(basis_vec(t.right));
      for (const auto& a : lc)
        for (const auto& b : rc) {
          auto& slot = acc[{a.index, b.index}];
          slot = la::field(p).add(slot, t.coeff * a.coeff % p * b.coeff);
        }
    }
    Vec2 kept;
    for (const auto& [key, v] : acc) {
      if (!v) continue;
      int o = order[static_cast<std::size_t>(key.first)] + order[static_cast<std::size_t>(key.second)];
      if (o > want) throw std::runtime_error("filtration is not comultiplicative at " + basis[static_cast<std::size_t>(i)].label);
      if (o == want) kept.push_back({key.first, key.second, v});
    }
    g.set_coproduct(i, kept);
  }
  return g;
}

std::optional<PowerGenerator> primitive_power_generator(const HopfPresentation& h, long candidate_cap) {
  const int p = h.p();
  const long e = h.size();
  GradedSubspace P = primitives(h);
  for (const auto& [key, span] : P.blocks) {
    const Index d = span.cols();
    if (d == 0) continue;
    const auto& members = h.blocks().at(key);
    long total = 1;
    for (Index k = 0; k < d && total <= candidate_cap; ++k) total *= p;
    total = std::min(total, candidate_cap);
    for (long code = 1; code < total; ++code) {
      FpMatrix coeff(p, d, 1);
      long c = code;
      for (Index k = 0; k < d; ++k) {
        coeff.set(k, 0, c % p);
        c /= p;
      }
      Vec x = to_sparse(span * coeff, members);
      // powers 1, x, ..., x^{e-1} must be a basis and x^e must vanish
      FpMatrix powers(p, h.size(), static_cast<Index>(e));
      std::optional<Vec> acc = basis_vec(h.unit());
      bool ok = true;
      for (long k = 0; k < e && ok; ++k) {
        for (const auto& t : *acc) powers.set(t.index, static_cast<Index>(k), t.coeff);
        acc = multiply(h, *acc, x);
        if (!acc) ok = false;
      }
      if (!ok || !acc->empty() || la::rank(powers) != e) continue;
      return PowerGenerator{x, e};
    }
  }
  return std::nullopt;
}

}  // namespace expfun::hopf
