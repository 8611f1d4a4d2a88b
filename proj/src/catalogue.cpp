#include "expfun/catalogue.hpp"

#include <limits>
#include <map>
#include <stdexcept>

namespace expfun::catalogue {

using hopf::BasisElement;
using hopf::Grading;
using hopf::Term;
using hopf::Term2;
using hopf::Vec;
using hopf::Vec2;

AlgebraKind parse_kind(const std::string& name, int n) {
  if (name == "S") return {Kind::S, 0};
  if (name == "Lambda") return {Kind::Lambda, 0};
  if (name == "Gamma") return {Kind::Gamma, 0};
  if (name == "S_n") return {Kind::S_n, n};
  if (name == "Gamma_n") return {Kind::Gamma_n, n};
  if (name == "G_n") return {Kind::G_n, n};
  if (name == "Morava") return {Kind::Morava, 0};
  throw std::invalid_argument("unknown algebra kind: " + name);
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::S: return "S";
    case Kind::Lambda: return "Lambda";
    case Kind::Gamma: return "Gamma";
    case Kind::S_n: return "S_n";
    case Kind::Gamma_n: return "Gamma_n";
    case Kind::G_n: return "G_n";
    case Kind::Morava: return "Morava";
  }
  return "?";
}

long ipow(long base, int e) {
  long out = 1;
  for (int k = 0; k < e; ++k) out *= base;
  return out;
}

Scalar binomial_mod(long n, long k, int p) {
  if (k < 0 || k > n) return 0;
  const auto& f = la::field(p);
  Scalar out = 1;
  while (n > 0 || k > 0) {
    long a = n % p, b = k % p;
    if (b > a) return 0;
    // small binomial by the multiplicative formula inside F_p
    Scalar num = 1, den = 1;
    for (long t = 0; t < b; ++t) {
      num = f.mul(num, a - t);
      den = f.mul(den, t + 1);
    }
    out = f.mul(out, f.mul(num, f.inv(den)));
    n /= p;
    k /= p;
  }
  return out;
}

namespace {

std::string power_label(const std::string& g, long k) {
  if (k == 0) return "1";
  if (k == 1) return g;
  return g + "^" + std::to_string(k);
}

std::string divided_label(const std::string& g, long k) {
  if (k == 0) return "1";
  return g + std::to_string(k);
}

void check_parity(int p, Kind kind, long i) {
  if (p == 2) return;
  bool odd = i % 2 != 0;
  if (kind == Kind::Lambda && !odd) throw std::invalid_argument("Lambda needs an odd generator degree at odd p");
  if (kind != Kind::Lambda && kind != Kind::Morava && odd)
    throw std::invalid_argument(kind_name(kind) + " needs an even generator degree at odd p");
}

// number of basis steps k (k * i <= D and k * weight <= W), capped at cap
long steps(long i, long weight, long D, std::optional<long> W, long cap) {
  long k = 0;
  while (k + 1 <= cap) {
    long next = k + 1;
    if (next * i > D) break;
    if (W && next * weight > *W) break;
    if (i == 0 && !W) throw std::invalid_argument("degree-0 generator needs a weight bound");
    k = next;
  }
  return k;
}

// one-generator monomial algebras: S, S_n, Lambda (polynomial = true) or Gamma, Gamma_n
HopfPresentation monogenic(int p, bool polynomial, long top, const std::string& g, long i, long weight, long D,
                           std::optional<long> W) {
  long kmax = steps(i, weight, D, W, top);
  std::vector<BasisElement> basis;
  for (long k = 0; k <= kmax; ++k)
    basis.push_back({polynomial ? power_label(g, k) : divided_label(g, k), k * i, k * weight});
  HopfPresentation h(p, Grading::natural(), D, basis, 0);
  h.set_weight_bound(W);
  const int n = static_cast<int>(basis.size());
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b) {
      if (!h.product_known(a, b)) continue;
      long s = a + b;
      Scalar c = polynomial ? 1 : binomial_mod(s, a, p);
      if (s > top || s >= n || c == 0) {
        h.set_product(a, b, {});
        continue;
      }
      h.set_product(a, b, {{static_cast<int>(s), c}});
    }
  for (int m = 0; m < n; ++m) {
    Vec2 d;
    for (int k = 0; k <= m; ++k) {
      Scalar c = polynomial ? binomial_mod(m, k, p) : 1;
      if (c) d.push_back({k, m - k, c});
    }
    h.set_coproduct(m, d);
  }
  return h;
}

}  // namespace

HopfPresentation make_one(int p, AlgebraKind kind, const GeneratorSpec& gen, long D, std::optional<long> W,
                          const std::string& suffix);

HopfPresentation make(int p, AlgebraKind kind, GeneratorSpec gen, long degree_bound, std::optional<long> weight_bound) {
  if (!la::is_prime(p)) throw std::invalid_argument("p must be prime");
  if (gen.multiplicity < 1) throw std::invalid_argument("multiplicity must be positive");
  if (gen.r < 0 || gen.i < 0) throw std::invalid_argument("twist and degree must be nonnegative");
  if (gen.multiplicity == 1) return make_one(p, kind, gen, degree_bound, weight_bound, "");
  HopfPresentation acc = make_one(p, kind, gen, degree_bound, weight_bound, "1");
  for (int m = 2; m <= gen.multiplicity; ++m)
    acc = hopf::tensor_product(acc, make_one(p, kind, gen, degree_bound, weight_bound, std::to_string(m)));
  return acc;
}

namespace {

HopfPresentation make_gn(int p, int n, const GeneratorSpec& gen, long D, std::optional<long> W, const std::string& sfx);
HopfPresentation make_morava(int p);
MoravaBasis solve_morava(int p);

}  // namespace

HopfPresentation make_one(int p, AlgebraKind kind, const GeneratorSpec& gen, long D, std::optional<long> W,
                          const std::string& suffix) {
  const long weight = ipow(p, gen.r);
  if (kind.kind == Kind::Morava) return make_morava(p);
  check_parity(p, kind.kind, gen.i);
  if ((kind.kind == Kind::S_n || kind.kind == Kind::Gamma_n) && kind.n < 1)
    throw std::invalid_argument("truncation level must be at least 1");
  if (kind.kind == Kind::G_n && kind.n < 0) throw std::invalid_argument("G_n needs n >= 0");
  const long inf = std::numeric_limits<long>::max() / 4;
  std::optional<HopfPresentation> h;
  switch (kind.kind) {
    case Kind::S: h = monogenic(p, true, inf, "x" + suffix, gen.i, weight, D, W); break;
    case Kind::Lambda: h = monogenic(p, true, 1, "x" + suffix, gen.i, weight, D, W); break;
    case Kind::S_n: h = monogenic(p, true, ipow(p, kind.n) - 1, "x" + suffix, gen.i, weight, D, W); break;
    case Kind::Gamma: h = monogenic(p, false, inf, "g" + suffix + "_", gen.i, weight, D, W); break;
    case Kind::Gamma_n: h = monogenic(p, false, ipow(p, kind.n) - 1, "g" + suffix + "_", gen.i, weight, D, W); break;
    case Kind::G_n: h = make_gn(p, kind.n, gen, D, W, suffix); break;
    case Kind::Morava: break;
  }
  h->set_factors({{kind_name(kind.kind), kind.n, gen.r, gen.i, 1}});
  return *h;
}

namespace {

// sparse tensor-square arithmetic used while building coproducts
using Tensor = std::map<std::pair<int, int>, Scalar>;

Tensor tensor_multiply(const HopfPresentation& h, const Tensor& a, const Tensor& b) {
  const int p = h.p();
  Tensor out;
  for (const auto& [x, cx] : a)
    for (const auto& [y, cy] : b) {
      Scalar s = h.sign(x.second, y.first);
      for (const auto& u : h.product(x.first, y.first))
        for (const auto& v : h.product(x.second, y.second)) {
          auto& slot = out[{u.index, v.index}];
          slot = la::field(p).add(slot, s * cx % p * cy % p * u.coeff % p * v.coeff);
        }
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Vec2 to_vec2(const Tensor& t) {
  Vec2 out;
  for (const auto& [k, v] : t) out.push_back({k.first, k.second, v});
  return out;
}

HopfPresentation make_gn(int p, int n, const GeneratorSpec& gen, long D, std::optional<long> W, const std::string& sfx) {
  const long q = ipow(p, n);
  const long weight = ipow(p, gen.r);
  const long i = gen.i;
  if (i == 0 && !W) throw std::invalid_argument("degree-0 generator needs a weight bound");
  std::vector<BasisElement> basis;
  std::map<std::pair<long, long>, int> where;  // (a, j) -> index
  std::vector<std::pair<long, long>> origin;
  for (long j = 0;; ++j) {
    bool any = false;
    for (long a = 0; a < q; ++a) {
      long s = a + q * j;
      if (s * i > D || (W && s * weight > *W)) continue;
      any = true;
      std::string lbl;
      if (a) lbl = "t" + sfx + "_" + std::to_string(a);
      if (j) lbl += (lbl.empty() ? "" : "*") + power_label("y" + sfx, j);
      if (lbl.empty()) lbl = "1";
      where[{a, j}] = static_cast<int>(basis.size());
      origin.push_back({a, j});
      basis.push_back({lbl, s * i, s * weight});
    }
    if (!any) break;
  }
  HopfPresentation h(p, Grading::natural(), D, basis, 0);
  h.set_weight_bound(W);
  const int size = h.size();
  for (int x = 1; x < size; ++x)
    for (int y = 1; y < size; ++y) {
      if (!h.product_known(x, y)) continue;
      auto [a, j] = origin[static_cast<std::size_t>(x)];
      auto [b, k] = origin[static_cast<std::size_t>(y)];
      Scalar c = a + b < q ? binomial_mod(a + b, a, p) : 0;
      auto it = where.find({a + b, j + k});
      if (c == 0 || it == where.end()) {
        h.set_product(x, y, {});
        continue;
      }
      h.set_product(x, y, {{it->second, c}});
    }
  // coproducts of t_a, then y, then t_a y^j multiplicatively
  auto t_index = [&](long a) { return where.at({a, 0}); };
  std::vector<Tensor> delta_t(static_cast<std::size_t>(q));
  for (long a = 0; a < q; ++a) {
    if (!where.count({a, 0})) continue;
    for (long k = 0; k <= a; ++k) delta_t[static_cast<std::size_t>(a)][{t_index(k), t_index(a - k)}] = 1;
  }
  Tensor delta_y;
  bool has_y = where.count({0, 1}) > 0;
  if (has_y) {
    int yi = where.at({0, 1});
    delta_y[{yi, 0}] = 1;
    delta_y[{0, yi}] = 1;
    for (long k = 1; k < q; ++k) delta_y[{t_index(k), t_index(q - k)}] = 1;
  }
  for (int x = 0; x < size; ++x) {
    auto [a, j] = origin[static_cast<std::size_t>(x)];
    Tensor acc = delta_t[static_cast<std::size_t>(a)];
    for (long m = 0; m < j; ++m) acc = tensor_multiply(h, acc, delta_y);
    h.set_coproduct(x, to_vec2(acc));
  }
  return h;
}

int morava_exponent(int p, int m) {
  const int top = p * p - 1;
  if (m == top) return top;
  return (p * m) % top;
}

MoravaBasis solve_morava(int p) {
  const int top = p * p - 1;
  const int N = 2 * top;
  const auto& f = la::field(p);
  // polynomial model k[y]/y^{p^2}, deg y = 2p
  std::vector<BasisElement> ybasis;
  for (int e = 0; e <= top; ++e) ybasis.push_back({power_label("y", e), 2L * p * e, 0});
  HopfPresentation Y(p, Grading::cyclic(N), 0, ybasis, 0);
  for (int a = 1; a <= top; ++a)
    for (int b = 1; b <= top; ++b) Y.set_product(a, b, a + b <= top ? Vec{{a + b, 1}} : Vec{});
  Tensor dy;
  dy[{1, 0}] = 1;
  dy[{0, 1}] = 1;
  std::vector<Scalar> factorial(static_cast<std::size_t>(p), 1);
  for (int k = 1; k < p; ++k) factorial[static_cast<std::size_t>(k)] = f.mul(factorial[static_cast<std::size_t>(k - 1)], k);
  for (int k = 1; k < p; ++k)
    dy[{p * k, p * (p - k)}] = f.inv(f.mul(factorial[static_cast<std::size_t>(k)], factorial[static_cast<std::size_t>(p - k)]));
  std::vector<Tensor> dpow(static_cast<std::size_t>(top + 1));
  dpow[0][{0, 0}] = 1;
  for (int e = 1; e <= top; ++e) dpow[static_cast<std::size_t>(e)] = tensor_multiply(Y, dpow[static_cast<std::size_t>(e - 1)], dy);

  // a_m = c_m y^{sigma(m)} with Delta a_m = sum a_k (x) a_{m-k}; a_1 = y^p
  std::vector<Scalar> c(static_cast<std::size_t>(top + 1), 0);
  c[0] = 1;
  c[1] = 1;
  auto coeff = [&](int m, int k) {
    auto& d = dpow[static_cast<std::size_t>(morava_exponent(p, m))];
    auto it = d.find({morava_exponent(p, k), morava_exponent(p, m - k)});
    return it == d.end() ? Scalar{0} : it->second;
  };
  for (int m = 2; m <= top; ++m) {
    Scalar d1 = coeff(m, 1);
    if (d1 == 0) throw std::runtime_error("self-dual basis change failed at a_" + std::to_string(m));
    c[static_cast<std::size_t>(m)] = f.mul(c[static_cast<std::size_t>(m - 1)], f.inv(d1));
  }
  for (int m = 0; m <= top; ++m) {
    for (int k = 0; k <= m; ++k) {
      Scalar want = f.mul(c[static_cast<std::size_t>(k)], c[static_cast<std::size_t>(m - k)]);
      if (f.mul(c[static_cast<std::size_t>(m)], coeff(m, k)) != want)
        throw std::runtime_error("self-dual basis change inconsistent at a_" + std::to_string(m));
    }
    if (dpow[static_cast<std::size_t>(morava_exponent(p, m))].size() != static_cast<std::size_t>(m + 1))
      throw std::runtime_error("self-dual coproduct has extra terms at a_" + std::to_string(m));
  }
  MoravaBasis out;
  out.coeff = c;
  for (int m = 0; m <= top; ++m) out.exponent.push_back(morava_exponent(p, m));
  return out;
}

HopfPresentation make_morava(int p) {
  const int top = p * p - 1;
  const int N = 2 * top;
  const auto& f = la::field(p);
  MoravaBasis mb = solve_morava(p);
  const auto& c = mb.coeff;
  std::vector<BasisElement> basis;
  for (int m = 0; m <= top; ++m) basis.push_back({m == 0 ? std::string("1") : "a" + std::to_string(m), 2L * m, m % top});
  HopfPresentation h(p, Grading::cyclic(N), 0, basis, 0);
  h.set_weight_modulus(top);
  std::vector<int> by_exponent(static_cast<std::size_t>(top + 1));
  for (int m = 0; m <= top; ++m) by_exponent[static_cast<std::size_t>(morava_exponent(p, m))] = m;
  for (int i = 1; i <= top; ++i)
    for (int j = 1; j <= top; ++j) {
      int e = morava_exponent(p, i) + morava_exponent(p, j);
      if (e > top) {
        h.set_product(i, j, {});
        continue;
      }
      int m = by_exponent[static_cast<std::size_t>(e)];
      Scalar v = f.mul(f.mul(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(j)]), f.inv(c[static_cast<std::size_t>(m)]));
      h.set_product(i, j, {{m, v}});
    }
  for (int m = 0; m <= top; ++m) {
    Vec2 d;
    for (int k = 0; k <= m; ++k) d.push_back({k, m - k, 1});
    h.set_coproduct(m, d);
  }
  h.set_factors({{"Morava", 0, 0, 0, 1}});
  return h;
}

}  // namespace

MoravaBasis morava_basis(int p) { return solve_morava(p); }

la::FpMatrix morava_duality_witness(int p) {
  MoravaBasis mb = morava_basis(p);
  const int top = p * p - 1;
  // b_i(y^j) = delta_ij; b_i(a_m) = c_m delta_{i, sigma(m)}, so b_i = c_m a_m^* with sigma(m) = i
  la::FpMatrix w(p, top + 1, top + 1);
  for (int m = 0; m <= top; ++m) w.set(m, mb.exponent[static_cast<std::size_t>(m)], mb.coeff[static_cast<std::size_t>(m)]);
  return w;
}

std::vector<std::pair<std::string, hopf::Report>> morava_selfduality(int p) {
  auto m = std::make_shared<const HopfPresentation>(make(p, {Kind::Morava}, {}, 0));
  auto dual = std::make_shared<const HopfPresentation>(hopf::restricted_dual(*m));
  hopf::HopfMorphism w{m, dual, morava_duality_witness(p)};
  std::vector<std::pair<std::string, hopf::Report>> out{
      {"axioms", hopf::verify_axioms(*m)},
      {"dual axioms", hopf::verify_axioms(*dual)},
      {"witness is a Hopf map", hopf::check_morphism(w, {.respect_grading = false, .respect_weight = false})}};
  hopf::Report iso, degrees;
  if (!la::inverse(w.matrix)) iso.fail("witness is not invertible", {});
  for (int i = 0; i < m->size(); ++i)
    for (int r = 0; r < dual->size(); ++r)
      if (w.matrix(r, i) && m->grading().normalize(p * m->element(i).degree) != dual->element(r).degree)
        degrees.fail("degree not multiplied by p", {m->element(i).label});
  out.emplace_back("witness invertible", iso);
  out.emplace_back("degrees multiplied by p", degrees);
  return out;
}

HopfPresentation twist_regrade(const HopfPresentation& h, int r, bool scale_degrees) {
  if (r < 0) throw std::invalid_argument("twist level must be nonnegative");
  const long q = ipow(h.p(), r);
  std::vector<BasisElement> basis = h.basis();
  for (auto& b : basis) {
    b.weight = h.weight_modulus() ? (b.weight * q) % h.weight_modulus() : b.weight * q;
    if (scale_degrees) b.degree *= q;
  }
  long bound = scale_degrees ? h.degree_bound() * q : h.degree_bound();
  HopfPresentation out(h.p(), h.grading(), bound, basis, h.unit());
  if (h.weight_bound()) out.set_weight_bound(*h.weight_bound() * q);
  out.set_weight_modulus(h.weight_modulus());
  for (int i = 0; i < h.size(); ++i) {
    out.set_coproduct(i, h.coproduct(i));
    for (int j = 0; j < h.size(); ++j)
      if (h.product_known(i, j)) out.set_product(i, j, h.product(i, j));
  }
  auto fs = h.factors();
  for (auto& f : fs) f.r += r;
  out.set_factors(fs);
  return out;
}

}  // namespace expfun::catalogue

namespace expfun::catalogue {

namespace {

std::string gn_label(long a, long j) {
  std::string lbl;
  if (a) lbl = "t_" + std::to_string(a);
  if (j) lbl += (lbl.empty() ? "" : "*") + power_label("y", j);
  return lbl.empty() ? "1" : lbl;
}

int index_of(const HopfPresentation& h, const std::string& label) {
  auto k = h.find_label(label);
  if (!k) throw std::logic_error("missing basis element " + label);
  return *k;
}

}  // namespace

Extension gn_gamma_sequence(int p, int n, GeneratorSpec gen, long degree_bound) {
  const long q = ipow(p, n);
  auto gam = std::make_shared<const HopfPresentation>(make(p, {Kind::Gamma_n, n}, gen, degree_bound));
  auto gn = std::make_shared<const HopfPresentation>(make(p, {Kind::G_n, n}, gen, degree_bound));
  auto sym = std::make_shared<const HopfPresentation>(make(p, {Kind::S}, {gen.r + n, q * gen.i, 1}, degree_bound));
  la::FpMatrix f(p, gn->size(), gam->size());
  for (int k = 0; k < gam->size(); ++k) f.set(index_of(*gn, gn_label(k, 0)), k, 1);
  la::FpMatrix g(p, sym->size(), gn->size());
  for (int j = 0; j < sym->size(); ++j) g.set(j, index_of(*gn, gn_label(0, j)), 1);
  return {{gam, gn, f}, {gn, sym, g}};
}

Extension gn_symmetric_sequence(int p, int n, GeneratorSpec gen, long degree_bound) {
  const long q = ipow(p, n);
  auto sym = std::make_shared<const HopfPresentation>(make(p, {Kind::S}, {gen.r + n + 1, p * q * gen.i, 1}, degree_bound));
  auto gn = std::make_shared<const HopfPresentation>(make(p, {Kind::G_n, n}, gen, degree_bound));
  auto gam = std::make_shared<const HopfPresentation>(make(p, {Kind::Gamma_n, n + 1}, gen, degree_bound));
  la::FpMatrix f(p, gn->size(), sym->size());
  for (int k = 0; k < sym->size(); ++k) f.set(index_of(*gn, gn_label(0, p * k)), k, 1);
  // t_a y^j -> gamma_a gamma_q^j
  la::FpMatrix g(p, gam->size(), gn->size());
  for (int x = 0; x < gn->size(); ++x) {
    long s = gn->element(x).degree / gen.i;
    if (gen.i == 0) throw std::invalid_argument("degree-0 generator unsupported here");
    long a = s % q, j = s / q;
    if (gn_label(a, j) != gn->element(x).label) throw std::logic_error("unexpected G_n basis order");
    std::optional<hopf::Vec> v = hopf::basis_vec(static_cast<int>(a));
    for (long m = 0; m < j && v; ++m) v = hopf::multiply(*gam, *v, hopf::basis_vec(static_cast<int>(q)));
    if (!v) throw std::invalid_argument("window too small for the projection");
    for (const auto& t : *v) g.set(t.index, x, t.coeff);
  }
  return {{sym, gn, f}, {gn, gam, g}};
}

}  // namespace expfun::catalogue
