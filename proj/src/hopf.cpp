#include "expfun/hopf.hpp"

#include "expfun/morphism.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace expfun::hopf {

Grading Grading::cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic grading needs a positive modulus");
  return {Kind::cyclic, n};
}

long Grading::normalize(long d) const {
  if (kind == Kind::natural) return d;
  long m = modulus;
  return ((d % m) + m) % m;
}

HopfPresentation::HopfPresentation(int p, Grading grading, long degree_bound, std::vector<BasisElement> basis,
                                   int unit)
    : p_(p), grading_(grading), degree_bound_(degree_bound), basis_(std::move(basis)), unit_(unit) {
  la::field(p);
  const std::size_t n = basis_.size();
  if (unit < 0 || static_cast<std::size_t>(unit) >= n) throw std::invalid_argument("unit index out of range");
  if (grading_.kind == Grading::Kind::cyclic && p != 2 && grading_.modulus % 2 != 0)
    throw std::invalid_argument("odd cyclic modulus leaves degree parity undefined at odd p");
  mu_.assign(n * n, {});
  delta_.assign(n, {});
  position_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& b = basis_[i];
    b.degree = grading_.normalize(b.degree);
    auto& members = blocks_[{b.degree, b.weight}];
    position_[i] = static_cast<int>(members.size());
    members.push_back(static_cast<int>(i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    mu_[idx(unit, static_cast<int>(i))] = basis_vec(static_cast<int>(i));
    mu_[idx(static_cast<int>(i), unit)] = basis_vec(static_cast<int>(i));
  }
  delta_[static_cast<std::size_t>(unit)] = {{unit, unit, 1}};
}

bool HopfPresentation::in_window(long degree, long weight) const {
  if (grading_.kind == Grading::Kind::natural && degree > degree_bound_) return false;
  if (weight_modulus_ == 0 && weight_bound_ && weight > *weight_bound_) return false;
  return true;
}

bool HopfPresentation::product_known(int i, int j) const {
  const auto& a = element(i);
  const auto& b = element(j);
  return in_window(a.degree + b.degree, a.weight + b.weight);
}

void HopfPresentation::set_product(int i, int j, Vec v) { mu_[idx(i, j)] = std::move(v); }
void HopfPresentation::set_coproduct(int i, Vec2 v) { delta_[static_cast<std::size_t>(i)] = std::move(v); }

std::optional<int> HopfPresentation::find_label(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (basis_[static_cast<std::size_t>(i)].label == label) return i;
  return std::nullopt;
}

bool HopfPresentation::odd(int a) const { return p_ != 2 && (element(a).degree % 2 != 0); }

Scalar HopfPresentation::sign(int a, int b) const { return (odd(a) && odd(b)) ? -1 : 1; }

// ---------------------------------------------------------------- sparse

namespace {

Vec normalize_terms(std::vector<Term>& terms, int p) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
  const auto& f = la::field(p);
  Vec out;
  for (const auto& t : terms) {
    if (!out.empty() && out.back().index == t.index)
      out.back().coeff = f.add(out.back().coeff, t.coeff);
    else
      out.push_back({t.index, f.reduce(t.coeff)});
  }
  std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
  return out;
}

Vec2 normalize_terms2(std::vector<Term2>& terms, int p) {
  std::sort(terms.begin(), terms.end(), [](const Term2& a, const Term2& b) {
    return a.left != b.left ? a.left < b.left : a.right < b.right;
  });
  const auto& f = la::field(p);
  Vec2 out;
  for (const auto& t : terms) {
    if (!out.empty() && out.back().left == t.left && out.back().right == t.right)
      out.back().coeff = f.add(out.back().coeff, t.coeff);
    else
      out.push_back({t.left, t.right, f.reduce(t.coeff)});
  }
  std::erase_if(out, [](const Term2& t) { return t.coeff == 0; });
  return out;
}

std::string show(const HopfPresentation& h, const Vec& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : v) {
    if (!first) os << " + ";
    first = false;
    if (t.coeff != 1) os << t.coeff << "*";
    os << h.element(t.index).label;
  }
  return os.str();
}

std::string show(const HopfPresentation& h, const Vec2& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : v) {
    if (!first) os << " + ";
    first = false;
    if (t.coeff != 1) os << t.coeff << "*";
    os << h.element(t.left).label << "⊗" << h.element(t.right).label;
  }
  return os.str();
}

}  // namespace

Vec add(const Vec& a, const Vec& b, int p) {
  std::vector<Term> all(a);
  all.insert(all.end(), b.begin(), b.end());
  return normalize_terms(all, p);
}

Vec scale(const Vec& a, Scalar s, int p) {
  std::vector<Term> all;
  for (const auto& t : a) all.push_back({t.index, t.coeff * la::field(p).reduce(s)});
  return normalize_terms(all, p);
}

Vec basis_vec(int i) { return {{i, 1}}; }

std::optional<Vec> multiply(const HopfPresentation& h, const Vec& a, const Vec& b) {
  std::vector<Term> acc;
  for (const auto& x : a)
    for (const auto& y : b) {
      if (!h.product_known(x.index, y.index)) return std::nullopt;
      for (const auto& z : h.product(x.index, y.index)) acc.push_back({z.index, z.coeff * x.coeff * y.coeff % h.p()});
    }
  return normalize_terms(acc, h.p());
}

Vec2 comultiply(const HopfPresentation& h, const Vec& a) {
  std::vector<Term2> acc;
  for (const auto& x : a)
    for (const auto& t : h.coproduct(x.index)) acc.push_back({t.left, t.right, t.coeff * x.coeff % h.p()});
  return normalize_terms2(acc, h.p());
}

Vec to_sparse(const FpMatrix& column, const std::vector<int>& indices) {
  Vec out;
  for (la::Index r = 0; r < column.rows(); ++r)
    if (column(r, 0) != 0) out.push_back({indices[static_cast<std::size_t>(r)], column(r, 0)});
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.index < b.index; });
  return out;
}

void Report::fail(std::string what, std::vector<std::string> who) {
  if (!ok) return;
  ok = false;
  failure = std::move(what);
  witnesses = std::move(who);
}

// ---------------------------------------------------------------- axioms

namespace {

// (x ⊗ y)(z ⊗ w) = (-1)^{|y||z|} xz ⊗ yw; nullopt if some product is unknown
std::optional<Vec2> multiply2(const HopfPresentation& h, const Vec2& a, const Vec2& b) {
  std::vector<Term2> acc;
  const int p = h.p();
  for (const auto& s : a)
    for (const auto& t : b) {
      if (!h.product_known(s.left, t.left) || !h.product_known(s.right, t.right)) return std::nullopt;
      Scalar c = s.coeff * t.coeff % p * h.sign(s.right, t.left);
      for (const auto& u : h.product(s.left, t.left))
        for (const auto& v : h.product(s.right, t.right))
          acc.push_back({u.index, v.index, (c * u.coeff % p) * v.coeff % p});
    }
  return normalize_terms2(acc, p);
}

struct Triple {
  int a, b, c;
  auto operator<=>(const Triple&) const = default;
};

std::map<Triple, Scalar> coassoc_left(const HopfPresentation& h, int x) {
  std::map<Triple, Scalar> out;
  for (const auto& t : h.coproduct(x))
    for (const auto& s : h.coproduct(t.left)) {
      auto& slot = out[{s.left, s.right, t.right}];
      slot = la::field(h.p()).add(slot, s.coeff * t.coeff);
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::map<Triple, Scalar> coassoc_right(const HopfPresentation& h, int x) {
  std::map<Triple, Scalar> out;
  for (const auto& t : h.coproduct(x))
    for (const auto& s : h.coproduct(t.right)) {
      auto& slot = out[{t.left, s.left, s.right}];
      slot = la::field(h.p()).add(slot, s.coeff * t.coeff);
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

Report verify_axioms(const HopfPresentation& h) {
  Report rep;
  const int n = h.size();
  const int u = h.unit();
  const int p = h.p();

  // gradings
  if (h.element(u).degree != 0 || h.element(u).weight != 0) rep.fail("unit grading", {h.element(u).label});
  for (int i = 0; i < n && rep.ok; ++i) {
    const auto& e = h.element(i);
    for (const auto& t : h.coproduct(i)) {
      const auto& l = h.element(t.left);
      const auto& r = h.element(t.right);
      if (h.grading().add(l.degree, r.degree) != e.degree || h.normalize_weight(l.weight + r.weight) != e.weight)
        rep.fail("coproduct grading", {e.label, l.label + "⊗" + r.label});
    }
    for (int j = 0; j < n && rep.ok; ++j) {
      if (!h.product_known(i, j)) continue;
      const auto& f = h.element(j);
      for (const auto& t : h.product(i, j)) {
        const auto& g = h.element(t.index);
        if (h.grading().add(e.degree, f.degree) != g.degree || h.normalize_weight(e.weight + f.weight) != g.weight)
          rep.fail("product grading", {e.label, f.label, g.label});
      }
    }
  }
  if (!rep.ok) return rep;

  // unit and counit
  for (int i = 0; i < n && rep.ok; ++i) {
    ++rep.checked;
    if (h.product(u, i) != basis_vec(i) || h.product(i, u) != basis_vec(i))
      rep.fail("unit", {h.element(i).label});
  }
  for (int i = 0; i < n && rep.ok; ++i) {
    ++rep.checked;
    std::vector<Term> left, right;
    for (const auto& t : h.coproduct(i)) {
      if (t.left == u) left.push_back({t.right, t.coeff});
      if (t.right == u) right.push_back({t.left, t.coeff});
    }
    std::sort(left.begin(), left.end(), [](auto& a, auto& b) { return a.index < b.index; });
    std::sort(right.begin(), right.end(), [](auto& a, auto& b) { return a.index < b.index; });
    if (left != basis_vec(i) || right != basis_vec(i))
      rep.fail("counit", {h.element(i).label, show(h, h.coproduct(i))});
  }
  if (h.coproduct(u).size() != 1 || h.coproduct(u)[0].left != u || h.coproduct(u)[0].right != u || h.coproduct(u)[0].coeff != 1)
    rep.fail("coproduct of unit", {show(h, h.coproduct(u))});
  // counit is multiplicative: products of augmentation-ideal elements avoid the unit
  for (int i = 0; i < n && rep.ok; ++i)
    for (int j = 0; j < n && rep.ok; ++j) {
      if (i == u || j == u || !h.product_known(i, j)) continue;
      for (const auto& t : h.product(i, j))
        if (t.index == u) rep.fail("counit multiplicative", {h.element(i).label, h.element(j).label});
    }
  if (!rep.ok) return rep;

  // commutativity
  for (int i = 0; i < n && rep.ok; ++i)
    for (int j = i + 1; j < n && rep.ok; ++j) {
      if (!h.product_known(i, j)) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      if (h.product(i, j) != scale(h.product(j, i), h.sign(i, j), p))
        rep.fail("graded commutativity", {h.element(i).label, h.element(j).label, show(h, h.product(i, j)),
                                          show(h, h.product(j, i))});
    }
  if (!rep.ok) return rep;

  // associativity
  for (int i = 0; i < n && rep.ok; ++i) {
    if (i == u) continue;
    for (int j = 0; j < n && rep.ok; ++j) {
      if (j == u) continue;
      if (!h.product_known(i, j)) {
        ++rep.skipped;
        continue;
      }
      const Vec& ij = h.product(i, j);
      for (int k = 0; k < n && rep.ok; ++k) {
        if (k == u) continue;
        auto lhs = multiply(h, ij, basis_vec(k));
        auto jk = h.product_known(j, k) ? std::optional<Vec>(h.product(j, k)) : std::nullopt;
        std::optional<Vec> rhs = jk ? multiply(h, basis_vec(i), *jk) : std::nullopt;
        if (!lhs || !rhs) {
          ++rep.skipped;
          continue;
        }
        ++rep.checked;
        if (*lhs != *rhs)
          rep.fail("associativity", {h.element(i).label, h.element(j).label, h.element(k).label, show(h, *lhs),
                                     show(h, *rhs)});
      }
    }
  }
  if (!rep.ok) return rep;

  // coassociativity and cocommutativity
  for (int i = 0; i < n && rep.ok; ++i) {
    ++rep.checked;
    if (coassoc_left(h, i) != coassoc_right(h, i)) rep.fail("coassociativity", {h.element(i).label});
    std::vector<Term2> swapped;
    for (const auto& t : h.coproduct(i)) swapped.push_back({t.right, t.left, t.coeff * h.sign(t.left, t.right)});
    if (normalize_terms2(swapped, p) != h.coproduct(i))
      rep.fail("graded cocommutativity", {h.element(i).label, show(h, h.coproduct(i))});
  }
  if (!rep.ok) return rep;

  // bialgebra compatibility
  for (int i = 0; i < n && rep.ok; ++i)
    for (int j = 0; j < n && rep.ok; ++j) {
      if (i == u || j == u) continue;
      if (!h.product_known(i, j)) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      Vec2 lhs = comultiply(h, h.product(i, j));
      auto rhs = multiply2(h, h.coproduct(i), h.coproduct(j));
      if (!rhs) {
        ++rep.skipped;
        continue;
      }
      if (lhs != *rhs)
        rep.fail("bialgebra compatibility", {h.element(i).label, h.element(j).label, show(h, lhs), show(h, *rhs)});
    }
  if (!rep.ok) return rep;

  // antipode identities
  FpMatrix chi = antipode(h);
  for (int i = 0; i < n && rep.ok; ++i) {
    std::vector<Term> left, right;
    for (const auto& t : h.coproduct(i)) {
      for (la::Index r = 0; r < chi.rows(); ++r) {
        Scalar c = chi(r, t.left);
        if (c) {
          int a = static_cast<int>(r);
          for (const auto& z : h.product(a, t.right)) left.push_back({z.index, c * t.coeff % p * z.coeff});
        }
        Scalar d = chi(r, t.right);
        if (d) {
          int b = static_cast<int>(r);
          for (const auto& z : h.product(t.left, b)) right.push_back({z.index, d * t.coeff % p * z.coeff});
        }
      }
    }
    ++rep.checked;
    Vec expect = i == u ? basis_vec(u) : Vec{};
    if (normalize_terms(left, p) != expect || normalize_terms(right, p) != expect)
      rep.fail("antipode", {h.element(i).label});
  }
  return rep;
}

// ---------------------------------------------------------------- tensor

HopfPresentation trivial_algebra(int p, Grading g, long degree_bound) {
  HopfPresentation h(p, g, degree_bound, {{"1", 0, 0}}, 0);
  return h;
}

namespace {

std::string pair_label(const HopfPresentation& a, int i, const HopfPresentation& b, int j) {
  if (j == b.unit()) return a.element(i).label;
  if (i == a.unit()) return b.element(j).label;
  return a.element(i).label + "⊗" + b.element(j).label;
}

}  // namespace

HopfPresentation tensor_product(const HopfPresentation& a, const HopfPresentation& b) {
  if (a.p() != b.p()) throw std::invalid_argument("tensor product over different fields");
  if (!(a.grading() == b.grading())) throw std::invalid_argument("tensor product of different grading groups");
  if (a.weight_modulus() != b.weight_modulus()) throw std::invalid_argument("tensor product of different weight moduli");
  const int p = a.p();
  const long bound = std::min(a.degree_bound(), b.degree_bound());
  std::optional<long> wb;
  if (a.weight_bound() && b.weight_bound()) wb = std::min(*a.weight_bound(), *b.weight_bound());
  else if (a.weight_bound()) wb = a.weight_bound();
  else if (b.weight_bound()) wb = b.weight_bound();

  const bool natural = a.grading().kind == Grading::Kind::natural;
  std::vector<BasisElement> basis;
  std::vector<std::pair<int, int>> origin;
  std::map<std::pair<int, int>, int> where;
  int unit = -1;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      long d = a.element(i).degree + b.element(j).degree;
      long w = a.element(i).weight + b.element(j).weight;
      if (natural && d > bound) continue;
      if (wb && a.weight_modulus() == 0 && w > *wb) continue;
      if (i == a.unit() && j == b.unit()) unit = static_cast<int>(basis.size());
      where[{i, j}] = static_cast<int>(basis.size());
      origin.push_back({i, j});
      basis.push_back({pair_label(a, i, b, j), a.grading().normalize(d), a.normalize_weight(w)});
    }
  HopfPresentation t(p, a.grading(), bound, basis, unit);
  t.set_weight_bound(wb);
  t.set_weight_modulus(a.weight_modulus());
  auto fa = a.factors();
  for (const auto& f : b.factors()) fa.push_back(f);
  t.set_factors(fa);

  const int n = t.size();
  for (int x = 0; x < n; ++x) {
    auto [i, j] = origin[static_cast<std::size_t>(x)];
    for (int y = 0; y < n; ++y) {
      if (!t.product_known(x, y)) continue;
      auto [k, l] = origin[static_cast<std::size_t>(y)];
      std::vector<Term> acc;
      Scalar s = (b.odd(j) && a.odd(k)) ? -1 : 1;
      for (const auto& u : a.product(i, k))
        for (const auto& v : b.product(j, l)) {
          auto it = where.find({u.index, v.index});
          if (it == where.end()) continue;  // beyond the window
          acc.push_back({it->second, s * u.coeff * v.coeff % p});
        }
      t.set_product(x, y, normalize_terms(acc, p));
    }
    std::vector<Term2> acc;
    for (const auto& s : a.coproduct(i))
      for (const auto& r : b.coproduct(j)) {
        Scalar sg = (a.odd(s.right) && b.odd(r.left)) ? -1 : 1;
        auto l = where.find({s.left, r.left});
        auto rr = where.find({s.right, r.right});
        if (l == where.end() || rr == where.end()) throw std::logic_error("tensor coproduct left the window");
        acc.push_back({l->second, rr->second, sg * s.coeff * r.coeff % p});
      }
    t.set_coproduct(x, normalize_terms2(acc, p));
  }
  return t;
}

// ---------------------------------------------------------------- P and Q

long GradedSubspace::dim(const BlockKey& k) const {
  auto it = blocks.find(k);
  return it == blocks.end() ? 0 : static_cast<long>(it->second.cols());
}

std::map<long, long> GradedSubspace::dims_by_degree() const {
  std::map<long, long> out;
  for (const auto& [k, m] : blocks)
    if (m.cols()) out[k.degree] += m.cols();
  return out;
}

std::map<BlockKey, long> GradedSubspace::dims() const {
  std::map<BlockKey, long> out;
  for (const auto& [k, m] : blocks)
    if (m.cols()) out[k] = m.cols();
  return out;
}

long GradedSubspace::total() const {
  long t = 0;
  for (const auto& [k, m] : blocks) t += m.cols();
  return t;
}

GradedSubspace primitives(const HopfPresentation& h) {
  GradedSubspace out;
  const int u = h.unit();
  for (const auto& [key, members] : h.blocks()) {
    std::vector<int> aug;
    for (int i : members)
      if (i != u) aug.push_back(i);
    std::map<std::pair<int, int>, la::Index> rows;
    for (int i : aug)
      for (const auto& t : h.coproduct(i))
        if (t.left != u && t.right != u) rows.emplace(std::make_pair(t.left, t.right), 0);
    la::Index r = 0;
    for (auto& kv : rows) kv.second = r++;
    FpMatrix m(h.p(), r, static_cast<la::Index>(aug.size()));
    for (std::size_t c = 0; c < aug.size(); ++c)
      for (const auto& t : h.coproduct(aug[c]))
        if (t.left != u && t.right != u) m.set(rows[{t.left, t.right}], static_cast<la::Index>(c), t.coeff);
    FpMatrix ker = la::kernel_basis(m);
    // lift to block coordinates
    FpMatrix lifted(h.p(), static_cast<la::Index>(members.size()), ker.cols());
    for (std::size_t c = 0; c < aug.size(); ++c)
      for (la::Index j = 0; j < ker.cols(); ++j)
        lifted.set(h.position(aug[c]), j, ker(static_cast<la::Index>(c), j));
    out.blocks.emplace(key, lifted);
  }
  return out;
}

GradedSubspace indecomposables(const HopfPresentation& h) {
  GradedSubspace out;
  const int u = h.unit();
  const int n = h.size();
  std::map<BlockKey, std::vector<Vec>> squares;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (i == u || j == u || !h.product_known(i, j)) continue;
      const Vec& v = h.product(i, j);
      if (v.empty()) continue;
      squares[h.block_of(v.front().index)].push_back(v);
    }
  for (const auto& [key, members] : h.blocks()) {
    const la::Index d = static_cast<la::Index>(members.size());
    auto it = squares.find(key);
    FpMatrix dec(h.p(), d, 0);
    if (it != squares.end()) {
      dec = FpMatrix(h.p(), d, static_cast<la::Index>(it->second.size()));
      for (std::size_t c = 0; c < it->second.size(); ++c)
        for (const auto& t : it->second[c]) dec.set(h.position(t.index), static_cast<la::Index>(c), t.coeff);
    }
    // the unit line is not part of the augmentation ideal
    std::vector<la::Index> aug;
    for (int i : members)
      if (i != u) aug.push_back(h.position(i));
    FpMatrix ambient = FpMatrix::identity(h.p(), d).cols_subset(aug);
    out.blocks.emplace(key, la::subspace(la::SubspaceOp::quotient, ambient, dec));
  }
  return out;
}

// ---------------------------------------------------------------- weights

namespace {

bool is_p_power(long w, int p, long modulus) {
  if (modulus > 0) {
    long q = 1;
    for (int k = 0; k < 64; ++k) {
      if (q % modulus == w % modulus) return true;
      q = (q * p) % modulus;
    }
    return false;
  }
  if (w < 1) return false;
  while (w % p == 0) w /= p;
  return w == 1;
}

}  // namespace

Report validate_weight_decomposition(const HopfPresentation& h) {
  Report rep;
  const int n = h.size();
  if (h.element(h.unit()).weight != 0 || h.element(h.unit()).degree != 0)
    rep.fail("unit line not in degree 0 weight 0", {h.element(h.unit()).label});
  for (int i = 0; i < n && rep.ok; ++i) {
    ++rep.checked;
    for (const auto& t : h.coproduct(i))
      if (h.normalize_weight(h.element(t.left).weight + h.element(t.right).weight) != h.element(i).weight)
        rep.fail("coproduct changes weight", {h.element(i).label});
    for (int j = 0; j < n && rep.ok; ++j) {
      if (!h.product_known(i, j)) continue;
      for (const auto& t : h.product(i, j))
        if (h.normalize_weight(h.element(i).weight + h.element(j).weight) != h.element(t.index).weight)
          rep.fail("product changes weight", {h.element(i).label, h.element(j).label});
    }
  }
  if (!rep.ok) return rep;
  for (const auto& [k, m] : primitives(h).blocks)
    if (m.cols() && !is_p_power(k.weight, h.p(), h.weight_modulus()))
      rep.fail("primitive outside p-power weights", {"degree " + std::to_string(k.degree), "weight " + std::to_string(k.weight)});
  for (const auto& [k, m] : indecomposables(h).blocks)
    if (m.cols() && !is_p_power(k.weight, h.p(), h.weight_modulus()))
      rep.fail("indecomposable outside p-power weights",
               {"degree " + std::to_string(k.degree), "weight " + std::to_string(k.weight)});
  return rep;
}

}  // namespace expfun::hopf
