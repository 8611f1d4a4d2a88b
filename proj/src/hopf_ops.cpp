#include "expfun/morphism.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace expfun::hopf {

using la::Index;

namespace {

std::vector<Vec> sparse_columns(const FpMatrix& m) {
  std::vector<Vec> cols(static_cast<std::size_t>(m.cols()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      if (m(r, c)) cols[static_cast<std::size_t>(c)].push_back({static_cast<int>(r), m(r, c)});
  return cols;
}

void require_same_ends(const HopfMorphism& f, const HopfMorphism& g) {
  if (f.source->size() != g.source->size() || f.target->size() != g.target->size() ||
      f.source->p() != g.source->p())
    throw std::invalid_argument("morphisms with different source or target");
}

// coordinates of vectors in a block relative to an independent column basis
struct BlockCoords {
  FpMatrix basis;                  // d x k
  std::vector<Index> pivot_rows;   // k rows where basis restricted is invertible
  FpMatrix inverse;                // k x k

  explicit BlockCoords(const FpMatrix& b) : basis(b) {
    la::Rref rr = la::rref(la::transpose(b));
    pivot_rows = rr.pivots;
    inverse = *la::inverse(b.rows_subset(pivot_rows));
  }
  std::optional<FpMatrix> coords(const FpMatrix& v) const {
    FpMatrix c = inverse * v.rows_subset(pivot_rows);
    if (basis * c != v) return std::nullopt;
    return c;
  }
};

std::string combo_label(const HopfPresentation& h, const Vec& v) {
  if (v.size() == 1 && v[0].coeff == 1) return h.element(v[0].index).label;
  std::string out;
  for (const auto& t : v) {
    if (!out.empty()) out += "+";
    if (t.coeff != 1) out += std::to_string(t.coeff) + "*";
    out += h.element(t.index).label;
  }
  return "(" + out + ")";
}

}  // namespace

HopfMorphism identity(const HopfPtr& h) { return {h, h, FpMatrix::identity(h->p(), h->size())}; }

HopfMorphism unit_counit(const HopfPtr& source, const HopfPtr& target) {
  FpMatrix m(source->p(), target->size(), source->size());
  m.set(target->unit(), source->unit(), 1);
  return {source, target, m};
}

HopfMorphism compose(const HopfMorphism& g, const HopfMorphism& f) {
  return {f.source, g.target, g.matrix * f.matrix};
}

HopfMorphism convolution(const HopfMorphism& f, const HopfMorphism& g) {
  require_same_ends(f, g);
  const auto& S = *f.source;
  const auto& T = *f.target;
  const int p = S.p();
  auto fc = sparse_columns(f.matrix);
  auto gc = sparse_columns(g.matrix);
  FpMatrix out(p, T.size(), S.size());
  for (int b = 0; b < S.size(); ++b)
    for (const auto& t : S.coproduct(b))
      for (const auto& x : fc[static_cast<std::size_t>(t.left)])
        for (const auto& y : gc[static_cast<std::size_t>(t.right)]) {
          if (!T.product_known(x.index, y.index)) throw std::runtime_error("convolution left the window");
          Scalar c = t.coeff * x.coeff % p * y.coeff % p;
          for (const auto& z : T.product(x.index, y.index)) out.add_to(z.index, b, c * z.coeff);
        }
  return {f.source, f.target, out};
}

HopfMorphism convolution_power(const HopfMorphism& f, int k) {
  HopfMorphism acc = unit_counit(f.source, f.target);
  for (int i = 0; i < k; ++i) acc = convolution(acc, f);
  return acc;
}

FpMatrix antipode(const HopfPresentation& h) {
  auto hp = std::make_shared<HopfPresentation>(h);
  HopfMorphism eta = unit_counit(hp, hp);
  HopfMorphism j{hp, hp, FpMatrix::identity(h.p(), h.size()) - eta.matrix};
  FpMatrix chi = eta.matrix;
  HopfMorphism power = j;
  for (int k = 1; k <= h.size() + 1 && !power.matrix.is_zero(); ++k) {
    chi = (k % 2 ? chi - power.matrix : chi + power.matrix);
    power = convolution(power, j);
  }
  if (!power.matrix.is_zero()) throw std::runtime_error("augmentation ideal is not conilpotent in the window");
  return chi;
}

Report check_morphism(const HopfMorphism& f, MorphismCheck opts) {
  Report rep;
  const auto& S = *f.source;
  const auto& T = *f.target;
  const int p = S.p();
  if (f.matrix.rows() != T.size() || f.matrix.cols() != S.size()) {
    rep.fail("shape", {});
    return rep;
  }
  auto cols = sparse_columns(f.matrix);
  for (int i = 0; i < S.size() && rep.ok; ++i)
    for (const auto& t : cols[static_cast<std::size_t>(i)]) {
      if (opts.respect_grading && T.element(t.index).degree != S.element(i).degree)
        rep.fail("degree", {S.element(i).label, T.element(t.index).label});
      if (opts.respect_weight && T.element(t.index).weight != S.element(i).weight)
        rep.fail("weight", {S.element(i).label, T.element(t.index).label});
    }
  if (cols[static_cast<std::size_t>(S.unit())] != basis_vec(T.unit())) rep.fail("unit", {});
  for (int i = 0; i < S.size() && rep.ok; ++i) {
    Scalar e = 0;
    for (const auto& t : cols[static_cast<std::size_t>(i)])
      if (t.index == T.unit()) e = t.coeff;
    if (e != S.counit(i)) rep.fail("counit", {S.element(i).label});
  }
  for (int i = 0; i < S.size() && rep.ok; ++i)
    for (int j = 0; j < S.size() && rep.ok; ++j) {
      if (!S.product_known(i, j)) {
        ++rep.skipped;
        continue;
      }
      std::vector<Term> lhs;
      for (const auto& t : S.product(i, j))
        for (const auto& u : cols[static_cast<std::size_t>(t.index)]) lhs.push_back({u.index, t.coeff * u.coeff});
      auto rhs = multiply(T, cols[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
      if (!rhs) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      if (add(lhs, {}, p) != *rhs) rep.fail("multiplicative", {S.element(i).label, S.element(j).label});
    }
  for (int i = 0; i < S.size() && rep.ok; ++i) {
    ++rep.checked;
    Vec2 lhs = comultiply(T, cols[static_cast<std::size_t>(i)]);
    std::map<std::pair<int, int>, Scalar> acc;
    for (const auto& t : S.coproduct(i))
      for (const auto& a : cols[static_cast<std::size_t>(t.left)])
        for (const auto& b : cols[static_cast<std::size_t>(t.right)]) {
          auto& slot = acc[{a.index, b.index}];
          slot = la::field(p).add(slot, t.coeff * a.coeff % p * b.coeff);
        }
    Vec2 rhs;
    for (const auto& [k, v] : acc)
      if (v) rhs.push_back({k.first, k.second, v});
    if (lhs != rhs) rep.fail("comultiplicative", {S.element(i).label});
  }
  return rep;
}

// ---------------------------------------------------------------- F and V

namespace {

void reject_odd(const HopfPresentation& h) {
  if (h.p() == 2) return;
  for (int i = 0; i < h.size(); ++i)
    if (h.odd(i)) throw std::invalid_argument("Frobenius/Verschiebung need even degrees at odd p: " + h.element(i).label);
}

}  // namespace

LinearMap frobenius(const HopfPresentation& h) {
  reject_odd(h);
  LinearMap out{FpMatrix(h.p(), h.size(), h.size()), std::vector<bool>(static_cast<std::size_t>(h.size()), true)};
  for (int i = 0; i < h.size(); ++i) {
    std::optional<Vec> acc = basis_vec(h.unit());
    for (int k = 0; k < h.p() && acc; ++k) acc = multiply(h, *acc, basis_vec(i));
    if (!acc) {
      out.known[static_cast<std::size_t>(i)] = false;
      continue;
    }
    for (const auto& t : *acc) out.matrix.set(t.index, i, t.coeff);
  }
  return out;
}

LinearMap verschiebung(const HopfPresentation& h) {
  reject_odd(h);
  const int p = h.p();
  LinearMap out{FpMatrix(p, h.size(), h.size()), std::vector<bool>(static_cast<std::size_t>(h.size()), true)};
  for (int b = 0; b < h.size(); ++b) {
    // states (c, last): all leading tensor factors equal c
    std::map<std::pair<int, int>, Scalar> state;
    for (const auto& t : h.coproduct(b)) state[{t.left, t.right}] = t.coeff;
    for (int step = 2; step < p; ++step) {
      std::map<std::pair<int, int>, Scalar> next;
      for (const auto& [key, coeff] : state)
        for (const auto& t : h.coproduct(key.second))
          if (t.left == key.first) {
            auto& slot = next[{key.first, t.right}];
            slot = la::field(p).add(slot, coeff * t.coeff);
          }
      std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
      state = std::move(next);
    }
    for (const auto& [key, coeff] : state)
      if (key.first == key.second) out.matrix.add_to(key.first, b, coeff);
  }
  return out;
}

// ---------------------------------------------------------------- sub and quotient

Kernel sub_presentation(const HopfPtr& hp, const GradedSubspace& s) {
  const auto& h = *hp;
  const int p = h.p();
  const BlockKey unit_key = h.block_of(h.unit());
  std::vector<BasisElement> basis;
  std::vector<Vec> vecs;
  std::map<BlockKey, std::vector<int>> members;
  std::map<BlockKey, BlockCoords> coords;
  int unit = -1;
  for (const auto& [key, cols] : s.blocks) {
    const auto& amb = h.blocks().at(key);
    FpMatrix b = la::image_basis(cols);
    if (key == unit_key) {
      // put the unit first, keep the rest in the augmentation ideal
      FpMatrix e(p, b.rows(), 1);
      e.set(h.position(h.unit()), 0, 1);
      if (!la::in_span(b, e)) throw std::runtime_error("subspace misses the unit");
      FpMatrix rest = b;
      for (Index c = 0; c < rest.cols(); ++c) rest.set(h.position(h.unit()), c, 0);
      rest = la::subspace(la::SubspaceOp::quotient, rest, e);
      b = la::hstack(e, la::image_basis(rest));
    }
    if (b.cols() == 0) continue;
    coords.emplace(key, BlockCoords(b));
    for (Index c = 0; c < b.cols(); ++c) {
      Vec v = to_sparse(b.col(c), amb);
      if (key == unit_key && c == 0) unit = static_cast<int>(basis.size());
      members[key].push_back(static_cast<int>(basis.size()));
      basis.push_back({combo_label(h, v), key.degree, key.weight});
      vecs.push_back(v);
    }
  }
  if (unit < 0) throw std::runtime_error("subspace misses the unit");
  auto sub = std::make_shared<HopfPresentation>(p, h.grading(), h.degree_bound(), basis, unit);
  sub->set_weight_bound(h.weight_bound());
  sub->set_weight_modulus(h.weight_modulus());
  const int n = sub->size();

  auto block_column = [&](const Vec& v, const BlockKey& key) {
    const auto& amb = h.blocks().at(key);
    FpMatrix col(p, static_cast<Index>(amb.size()), 1);
    for (const auto& t : v) col.set(h.position(t.index), 0, t.coeff);
    return col;
  };

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!sub->product_known(a, b)) continue;
      auto prod = multiply(h, vecs[static_cast<std::size_t>(a)], vecs[static_cast<std::size_t>(b)]);
      if (!prod) continue;
      if (prod->empty()) continue;
      BlockKey key = h.block_of(prod->front().index);
      auto it = coords.find(key);
      auto c = it == coords.end() ? std::nullopt : it->second.coords(block_column(*prod, key));
      if (!c) throw std::runtime_error("sub-presentation not closed under product: " + basis[static_cast<std::size_t>(a)].label +
                                       " * " + basis[static_cast<std::size_t>(b)].label);
      Vec out;
      for (Index r = 0; r < c->rows(); ++r)
        if ((*c)(r, 0)) out.push_back({members[key][static_cast<std::size_t>(r)], (*c)(r, 0)});
      sub->set_product(a, b, out);
    }
  for (int a = 0; a < n; ++a) {
    Vec2 d = comultiply(h, vecs[static_cast<std::size_t>(a)]);
    // group by block pair
    std::map<std::pair<BlockKey, BlockKey>, std::vector<Term2>> groups;
    for (const auto& t : d) groups[{h.block_of(t.left), h.block_of(t.right)}].push_back(t);
    std::vector<Term2> acc;
    for (const auto& [keys, terms] : groups) {
      auto l = coords.find(keys.first);
      auto r = coords.find(keys.second);
      if (l == coords.end() || r == coords.end())
        throw std::runtime_error("sub-presentation not closed under coproduct: " + basis[static_cast<std::size_t>(a)].label);
      const auto& la_ = h.blocks().at(keys.first);
      const auto& ra = h.blocks().at(keys.second);
      FpMatrix D(p, static_cast<Index>(la_.size()), static_cast<Index>(ra.size()));
      for (const auto& t : terms) D.set(h.position(t.left), h.position(t.right), t.coeff);
      FpMatrix C = l->second.inverse * D.rows_subset(l->second.pivot_rows);
      C = la::transpose(r->second.inverse * la::transpose(C).rows_subset(r->second.pivot_rows));
      if (l->second.basis * C * la::transpose(r->second.basis) != D)
        throw std::runtime_error("sub-presentation not closed under coproduct: " + basis[static_cast<std::size_t>(a)].label);
      for (Index x = 0; x < C.rows(); ++x)
        for (Index y = 0; y < C.cols(); ++y)
          if (C(x, y))
            acc.push_back({members[keys.first][static_cast<std::size_t>(x)], members[keys.second][static_cast<std::size_t>(y)], C(x, y)});
    }
    std::sort(acc.begin(), acc.end(), [](const Term2& x, const Term2& y) {
      return x.left != y.left ? x.left < y.left : x.right < y.right;
    });
    sub->set_coproduct(a, acc);
  }
  FpMatrix inc(p, h.size(), n);
  for (int a = 0; a < n; ++a)
    for (const auto& t : vecs[static_cast<std::size_t>(a)]) inc.set(t.index, a, t.coeff);
  return {sub, {sub, hp, inc}};
}

GradedSubspace generated_ideal(const HopfPresentation& h, const GradedSubspace& gens) {
  const int p = h.p();
  std::map<BlockKey, std::vector<Vec>> spans;
  for (const auto& [key, cols] : gens.blocks) {
    const auto& amb = h.blocks().at(key);
    for (Index c = 0; c < cols.cols(); ++c) {
      Vec g = to_sparse(cols.col(c), amb);
      if (g.empty()) continue;
      for (int k = 0; k < h.size(); ++k) {
        auto prod = multiply(h, basis_vec(k), g);
        if (!prod || prod->empty()) continue;
        spans[h.block_of(prod->front().index)].push_back(*prod);
      }
    }
  }
  GradedSubspace out;
  for (const auto& [key, amb] : h.blocks()) {
    auto it = spans.find(key);
    if (it == spans.end()) {
      out.blocks.emplace(key, FpMatrix(p, static_cast<Index>(amb.size()), 0));
      continue;
    }
    FpMatrix m(p, static_cast<Index>(amb.size()), static_cast<Index>(it->second.size()));
    for (std::size_t c = 0; c < it->second.size(); ++c)
      for (const auto& t : it->second[c]) m.set(h.position(t.index), static_cast<Index>(c), t.coeff);
    out.blocks.emplace(key, la::image_basis(m));
  }
  return out;
}

Cokernel quotient_presentation(const HopfPtr& hp, const GradedSubspace& ideal) {
  const auto& h = *hp;
  const int p = h.p();
  std::vector<BasisElement> basis;
  std::vector<int> rep_of;                 // quotient index -> ambient index
  std::map<BlockKey, FpMatrix> projector;  // k x d per block
  std::map<BlockKey, std::vector<int>> members;
  int unit = -1;
  for (const auto& [key, amb] : h.blocks()) {
    const Index d = static_cast<Index>(amb.size());
    auto it = ideal.blocks.find(key);
    FpMatrix I = it == ideal.blocks.end() ? FpMatrix(p, d, 0) : la::image_basis(it->second);
    FpMatrix reps = la::subspace(la::SubspaceOp::quotient, FpMatrix::identity(p, d), I);
    if (reps.cols() == 0) continue;
    FpMatrix full = la::hstack(reps, I);
    FpMatrix inv = *la::inverse(full);
    std::vector<Index> top(static_cast<std::size_t>(reps.cols()));
    for (Index r = 0; r < reps.cols(); ++r) top[static_cast<std::size_t>(r)] = r;
    projector.emplace(key, inv.rows_subset(top));
    for (Index c = 0; c < reps.cols(); ++c) {
      int amb_index = -1;
      for (Index r = 0; r < d; ++r)
        if (reps(r, c)) amb_index = amb[static_cast<std::size_t>(r)];
      if (amb_index == h.unit()) unit = static_cast<int>(basis.size());
      members[key].push_back(static_cast<int>(basis.size()));
      rep_of.push_back(amb_index);
      basis.push_back(h.element(amb_index));
    }
  }
  if (unit < 0) throw std::runtime_error("ideal contains the unit");
  auto q = std::make_shared<HopfPresentation>(p, h.grading(), h.degree_bound(), basis, unit);
  q->set_weight_bound(h.weight_bound());
  q->set_weight_modulus(h.weight_modulus());
  const int n = q->size();

  auto project = [&](const Vec& v) {
    std::map<BlockKey, FpMatrix> cols;
    for (const auto& t : v) {
      BlockKey key = h.block_of(t.index);
      auto it = cols.find(key);
      if (it == cols.end()) it = cols.emplace(key, FpMatrix(p, static_cast<Index>(h.blocks().at(key).size()), 1)).first;
      it->second.set(h.position(t.index), 0, t.coeff);
    }
    Vec out;
    for (const auto& [key, col] : cols) {
      auto pj = projector.find(key);
      if (pj == projector.end()) continue;
      FpMatrix c = pj->second * col;
      for (Index r = 0; r < c.rows(); ++r)
        if (c(r, 0)) out.push_back({members[key][static_cast<std::size_t>(r)], c(r, 0)});
    }
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
    return out;
  };

  std::vector<Vec> proj_basis(static_cast<std::size_t>(h.size()));
  for (int i = 0; i < h.size(); ++i) proj_basis[static_cast<std::size_t>(i)] = project(basis_vec(i));

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!q->product_known(a, b)) continue;
      q->set_product(a, b, project(h.product(rep_of[static_cast<std::size_t>(a)], rep_of[static_cast<std::size_t>(b)])));
    }
  for (int a = 0; a < n; ++a) {
    std::map<std::pair<int, int>, Scalar> acc;
    for (const auto& t : h.coproduct(rep_of[static_cast<std::size_t>(a)]))
      for (const auto& x : proj_basis[static_cast<std::size_t>(t.left)])
        for (const auto& y : proj_basis[static_cast<std::size_t>(t.right)]) {
          auto& slot = acc[{x.index, y.index}];
          slot = la::field(p).add(slot, t.coeff * x.coeff % p * y.coeff);
        }
    Vec2 out;
    for (const auto& [k, v] : acc)
      if (v) out.push_back({k.first, k.second, v});
    q->set_coproduct(a, out);
  }
  FpMatrix pm(p, n, h.size());
  for (int i = 0; i < h.size(); ++i)
    for (const auto& t : proj_basis[static_cast<std::size_t>(i)]) pm.set(t.index, i, t.coeff);
  return {q, {hp, q, pm}, rep_of};
}

Kernel hopf_kernel(const HopfMorphism& f) {
  const auto& H = *f.source;
  const auto& T = *f.target;
  const int p = H.p();
  auto fc = sparse_columns(f.matrix);
  GradedSubspace ker;
  for (const auto& [key, amb] : H.blocks()) {
    std::map<std::pair<int, int>, Index> rows;
    std::vector<std::vector<std::pair<std::pair<int, int>, Scalar>>> entries(amb.size());
    for (std::size_t c = 0; c < amb.size(); ++c) {
      int b = amb[c];
      for (const auto& t : H.coproduct(b))
        for (const auto& x : fc[static_cast<std::size_t>(t.left)]) entries[c].push_back({{x.index, t.right}, t.coeff * x.coeff % p});
      entries[c].push_back({{T.unit(), b}, p - 1});
      for (const auto& e : entries[c]) rows.emplace(e.first, 0);
    }
    Index r = 0;
    for (auto& kv : rows) kv.second = r++;
    FpMatrix m(p, r, static_cast<Index>(amb.size()));
    for (std::size_t c = 0; c < amb.size(); ++c)
      for (const auto& e : entries[c]) m.add_to(rows[e.first], static_cast<Index>(c), e.second);
    ker.blocks.emplace(key, la::kernel_basis(m));
  }
  return sub_presentation(f.source, ker);
}

Cokernel hopf_cokernel(const HopfMorphism& f) {
  const auto& S = *f.source;
  const auto& T = *f.target;
  const int p = S.p();
  auto fc = sparse_columns(f.matrix);
  std::map<BlockKey, std::vector<Vec>> images;
  for (int i = 0; i < S.size(); ++i) {
    if (i == S.unit() || fc[static_cast<std::size_t>(i)].empty()) continue;
    const Vec& v = fc[static_cast<std::size_t>(i)];
    images[T.block_of(v.front().index)].push_back(v);
  }
  GradedSubspace gens;
  for (const auto& [key, vs] : images) {
    FpMatrix m(p, static_cast<Index>(T.blocks().at(key).size()), static_cast<Index>(vs.size()));
    for (std::size_t c = 0; c < vs.size(); ++c)
      for (const auto& t : vs[c]) m.set(T.position(t.index), static_cast<Index>(c), t.coeff);
    gens.blocks.emplace(key, m);
  }
  return quotient_presentation(f.target, generated_ideal(T, gens));
}

ExactTriple check_exact_triple(const HopfMorphism& f, const HopfMorphism& g) {
  ExactTriple out;
  if (f.target->size() != g.source->size()) {
    out.reason = "f and g are not composable";
    return out;
  }
  if (auto r = check_morphism(f); !r.ok) {
    out.reason = "f is not a Hopf morphism (" + r.failure + ")";
    return out;
  }
  if (auto r = check_morphism(g); !r.ok) {
    out.reason = "g is not a Hopf morphism (" + r.failure + ")";
    return out;
  }
  if (la::rank(f.matrix) != f.source->size()) {
    out.reason = "f is not injective";
    return out;
  }
  if (la::rank(g.matrix) != g.target->size()) {
    out.reason = "g is not surjective";
    return out;
  }
  if (g.matrix * f.matrix != unit_counit(f.source, g.target).matrix) {
    out.reason = "g f differs from the unit-counit map";
    return out;
  }
  Cokernel cok = hopf_cokernel(f);
  const auto& Q = *cok.algebra;
  FpMatrix lift(f.target->p(), f.target->size(), Q.size());
  for (int a = 0; a < Q.size(); ++a) lift.set(cok.representatives[static_cast<std::size_t>(a)], a, 1);
  FpMatrix induced = g.matrix * lift;
  if (!(g.matrix * la::kernel_basis(cok.projection.matrix)).is_zero()) {
    out.reason = "g does not vanish on the ideal generated by the image of f";
    return out;
  }
  if (!la::inverse(induced)) {
    out.reason = "the induced map from the cokernel of f is not an isomorphism";
    return out;
  }
  out.ok = true;
  return out;
}

SectionSearch find_hopf_sections(const HopfMorphism& g, long max_candidates) {
  const auto& H = *g.source;
  const auto& B = *g.target;
  const int p = H.p();
  SectionSearch out;
  struct BlockSystem {
    BlockKey key;
    FpMatrix particular;  // dH x dB
    FpMatrix kernel;      // dH x k
  };
  std::vector<BlockSystem> systems;
  for (const auto& [key, bmem] : B.blocks()) {
    auto hit = H.blocks().find(key);
    if (hit == H.blocks().end()) {
      out.exhausted = true;
      return out;  // no candidates at all
    }
    const auto& hmem = hit->second;
    FpMatrix gb(p, static_cast<Index>(bmem.size()), static_cast<Index>(hmem.size()));
    for (std::size_t c = 0; c < hmem.size(); ++c)
      for (std::size_t r = 0; r < bmem.size(); ++r) gb.set(static_cast<Index>(r), static_cast<Index>(c), g.matrix(bmem[r], hmem[c]));
    auto part = la::solve(gb, FpMatrix::identity(p, static_cast<Index>(bmem.size())));
    if (!part) {
      out.exhausted = true;
      return out;
    }
    FpMatrix k = la::kernel_basis(gb);
    out.affine_dimension += k.cols() * static_cast<long>(bmem.size());
    systems.push_back({key, *part, k});
  }
  double count = std::pow(static_cast<double>(p), static_cast<double>(out.affine_dimension));
  if (count > static_cast<double>(max_candidates)) return out;
  long total = static_cast<long>(count);
  for (long code = 0; code < total; ++code) {
    long c = code;
    FpMatrix s(p, H.size(), B.size());
    for (const auto& sys : systems) {
      const auto& hmem = H.blocks().at(sys.key);
      const auto& bmem = B.blocks().at(sys.key);
      FpMatrix x(p, sys.kernel.cols(), static_cast<Index>(bmem.size()));
      for (Index i = 0; i < x.rows(); ++i)
        for (Index j = 0; j < x.cols(); ++j) {
          x.set(i, j, c % p);
          c /= p;
        }
      FpMatrix blk = sys.particular + sys.kernel * x;
      for (Index i = 0; i < blk.rows(); ++i)
        for (Index j = 0; j < blk.cols(); ++j) s.set(hmem[static_cast<std::size_t>(i)], bmem[static_cast<std::size_t>(j)], blk(i, j));
    }
    ++out.candidates;
    if (check_morphism({g.target, g.source, s}).ok) ++out.hopf_sections;
  }
  out.exhausted = true;
  return out;
}

HopfPresentation restricted_dual(const HopfPresentation& h) {
  const int p = h.p();
  std::vector<BasisElement> basis = h.basis();
  for (auto& b : basis) b.label += "*";
  HopfPresentation d(p, h.grading(), h.degree_bound(), basis, h.unit());
  d.set_weight_bound(h.weight_bound());
  d.set_weight_modulus(h.weight_modulus());
  const int n = h.size();
  std::vector<std::vector<Term>> prod(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    for (const auto& t : h.coproduct(k))
      prod[static_cast<std::size_t>(t.left) * static_cast<std::size_t>(n) + static_cast<std::size_t>(t.right)].push_back(
          {k, t.coeff * h.sign(t.left, t.right)});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!d.product_known(i, j)) continue;
      auto& v = prod[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
      d.set_product(i, j, add(v, {}, p));
    }
  std::vector<std::vector<Term2>> co(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!h.product_known(i, j)) continue;
      for (const auto& t : h.product(i, j)) co[static_cast<std::size_t>(t.index)].push_back({i, j, t.coeff * h.sign(i, j)});
    }
  for (int k = 0; k < n; ++k) {
    std::map<std::pair<int, int>, Scalar> acc;
    for (const auto& t : co[static_cast<std::size_t>(k)]) {
      auto& slot = acc[{t.left, t.right}];
      slot = la::field(p).add(slot, t.coeff);
    }
    Vec2 out;
    for (const auto& [key, v] : acc)
      if (v) out.push_back({key.first, key.second, v});
    d.set_coproduct(k, out);
  }
  return d;
}

}  // namespace expfun::hopf
