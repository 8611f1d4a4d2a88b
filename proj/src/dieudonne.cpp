#include "expfun/dieudonne.hpp"

#include "expfun/catalogue.hpp"
#include "expfun/morphism.hpp"

#include <stdexcept>

namespace expfun::dieu {

using la::Index;

DieudonneModule::DieudonneModule(int p, std::vector<int> dims) : p_(p), dims_(std::move(dims)) {
  if (!la::is_prime(p)) throw std::invalid_argument("p must be prime");
  if (dims_.empty()) throw std::invalid_argument("module needs at least degree 0");
  for (int d : dims_)
    if (d < 0) throw std::invalid_argument("negative dimension");
  for (std::size_t i = 0; i + 1 < dims_.size(); ++i) {
    F_.emplace_back(p, dims_[i + 1], dims_[i]);
    V_.emplace_back(p, dims_[i], dims_[i + 1]);
  }
}

int DieudonneModule::total_dim() const {
  int t = 0;
  for (int d : dims_) t += d;
  return t;
}

void DieudonneModule::set_F(int i, FpMatrix m) {
  auto& slot = F_.at(static_cast<std::size_t>(i));
  if (m.rows() != slot.rows() || m.cols() != slot.cols() || m.p() != p_) throw std::invalid_argument("F has the wrong shape");
  slot = std::move(m);
}

void DieudonneModule::set_V(int i, FpMatrix m) {
  auto& slot = V_.at(static_cast<std::size_t>(i));
  if (m.rows() != slot.rows() || m.cols() != slot.cols() || m.p() != p_) throw std::invalid_argument("V has the wrong shape");
  slot = std::move(m);
}

hopf::Report validate(const DieudonneModule& m) {
  hopf::Report rep;
  for (int i = 0; i < m.degree_bound(); ++i) {
    ++rep.checked;
    if (!(m.F(i) * m.V(i)).is_zero()) rep.fail("F V != 0", {"degree " + std::to_string(i)});
    if (!(m.V(i) * m.F(i)).is_zero()) rep.fail("V F != 0", {"degree " + std::to_string(i)});
  }
  return rep;
}

std::string StringSpec::expanded(int bound) const {
  int room = bound - r;
  if (room < 0) return "";
  if (static_cast<int>(word.size()) >= room) return word.substr(0, static_cast<std::size_t>(room));
  std::string w = word;
  if (tail != Tail::none) w.append(static_cast<std::size_t>(room) - w.size(), tail == Tail::F ? 'F' : 'V');
  return w;
}

std::pair<int, std::string> within_window(const StringSpec& s, int bound) { return {s.r, s.expanded(bound)}; }

bool equal_within_window(const StringSpec& a, const StringSpec& b, int bound) {
  return within_window(a, bound) == within_window(b, bound);
}

std::string to_string(const StringSpec& s) {
  std::string w = s.word;
  if (s.tail == Tail::F) w += "F^inf";
  if (s.tail == Tail::V) w += "V^inf";
  return "(" + std::to_string(s.r) + "," + (w.empty() ? "eps" : w) + ")";
}

DieudonneModule make_string(int p, const StringSpec& s, int degree_bound) {
  for (char c : s.word)
    if (c != 'F' && c != 'V') throw std::invalid_argument("FV-words use the letters F and V");
  if (s.r < 0) throw std::invalid_argument("string start must be nonnegative");
  if (degree_bound < 0) throw std::invalid_argument("degree bound must be nonnegative");
  std::vector<int> dims(static_cast<std::size_t>(degree_bound + 1), 0);
  std::string w = s.expanded(degree_bound);
  if (s.r > degree_bound) return DieudonneModule(p, dims);
  for (std::size_t k = 0; k <= w.size(); ++k) dims[static_cast<std::size_t>(s.r) + k] = 1;
  DieudonneModule m(p, dims);
  for (std::size_t k = 0; k < w.size(); ++k) {
    int i = s.r + static_cast<int>(k);
    if (w[k] == 'F')
      m.set_F(i, FpMatrix::identity(p, 1));
    else
      m.set_V(i, FpMatrix::identity(p, 1));
  }
  return m;
}

DieudonneModule direct_sum(const DieudonneModule& a, const DieudonneModule& b) {
  if (a.p() != b.p()) throw std::invalid_argument("direct sum over different fields");
  const int bound = std::max(a.degree_bound(), b.degree_bound());
  std::vector<int> dims;
  for (int i = 0; i <= bound; ++i) dims.push_back(a.dim(i) + b.dim(i));
  DieudonneModule m(a.p(), dims);
  auto op = [&](const DieudonneModule& x, int i, bool f) {
    if (i < x.degree_bound()) return f ? x.F(i) : x.V(i);
    return f ? FpMatrix(x.p(), x.dim(i + 1), x.dim(i)) : FpMatrix(x.p(), x.dim(i), x.dim(i + 1));
  };
  for (int i = 0; i < bound; ++i) {
    m.set_F(i, la::block_diagonal({op(a, i, true), op(b, i, true)}));
    m.set_V(i, la::block_diagonal({op(a, i, false), op(b, i, false)}));
  }
  return m;
}

DieudonneModule change_basis(const DieudonneModule& m, const std::vector<FpMatrix>& change) {
  if (static_cast<int>(change.size()) != m.degree_bound() + 1) throw std::invalid_argument("one basis change per degree");
  std::vector<FpMatrix> inv;
  for (int i = 0; i <= m.degree_bound(); ++i) {
    auto x = la::inverse(change[static_cast<std::size_t>(i)]);
    if (!x || x->rows() != m.dim(i)) throw std::invalid_argument("basis change must be invertible of the block size");
    inv.push_back(*x);
  }
  DieudonneModule out(m.p(), m.dims());
  for (int i = 0; i < m.degree_bound(); ++i) {
    auto u = static_cast<std::size_t>(i);
    out.set_F(i, inv[u + 1] * m.F(i) * change[u]);
    out.set_V(i, inv[u] * m.V(i) * change[u + 1]);
  }
  return out;
}

Profiles recover_PQ(const DieudonneModule& m) {
  Profiles out;
  for (int k = 0; k <= m.degree_bound(); ++k) {
    if (k == 0) {
      out.P.push_back(m.dim(0));
      out.Q.push_back(m.dim(0));
      continue;
    }
    out.P.push_back(m.dim(k) - la::rank(m.V(k - 1)));
    out.Q.push_back(m.dim(k) - la::rank(m.F(k - 1)));
  }
  return out;
}

long hopf_degree(long n, int k, int p) { return 2 * n * catalogue::ipow(p, k); }

namespace {

using hopf::HopfPresentation;

// slots k with 2 n p^k inside the window, for each n prime to p
std::map<long, int> slot_bounds(const HopfPresentation& h) {
  std::map<long, int> out;
  const int p = h.p();
  for (long n = 1; 2 * n <= h.degree_bound(); ++n) {
    if (n % p == 0) continue;
    int k = 0;
    while (hopf_degree(n, k + 1, p) <= h.degree_bound()) ++k;
    out[n] = k;
  }
  return out;
}

StringSpec string_of_factor(const hopf::Factor& f, int p, long& n, int& k) {
  if (f.kind == "Morava") throw std::domain_error("the self-dual algebra is outside the supported classes");
  if (f.i <= 0 || f.i % 2 != 0) throw std::domain_error("Dieudonne modules need a positive even generator degree");
  n = f.i / 2;
  k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (f.kind == "S") return {k, "", Tail::F};
  if (f.kind == "Gamma") return {k, "", Tail::V};
  if (f.kind == "S_n") return {k, std::string(static_cast<std::size_t>(f.n - 1), 'F'), Tail::none};
  if (f.kind == "Gamma_n") return {k, std::string(static_cast<std::size_t>(f.n - 1), 'V'), Tail::none};
  if (f.kind == "G_n") return {k, std::string(static_cast<std::size_t>(f.n), 'V'), Tail::F};
  if (f.kind == "Lambda" && p == 2) return {k, "", Tail::none};
  throw std::domain_error("unsupported factor " + f.kind);
}

std::map<long, DieudonneModule> from_factors(const HopfPresentation& h) {
  const int p = h.p();
  std::map<long, DieudonneModule> out;
  auto bounds = slot_bounds(h);
  for (const auto& [n, k] : bounds) out.emplace(n, DieudonneModule(p, std::vector<int>(static_cast<std::size_t>(k + 1), 0)));
  for (const auto& f : h.factors()) {
    long n = 0;
    int k = 0;
    StringSpec s = string_of_factor(f, p, n, k);
    auto it = out.find(n);
    if (it == out.end() || k > bounds.at(n)) continue;
    DieudonneModule piece = make_string(p, s, bounds.at(n));
    for (int m = 0; m < f.multiplicity; ++m) it->second = direct_sum(it->second, piece);
  }
  return out;
}

// primitives in a fixed degree as global sparse vectors
std::vector<hopf::Vec> primitives_in_degree(const HopfPresentation& h, const hopf::GradedSubspace& P, long d) {
  std::vector<hopf::Vec> out;
  for (const auto& [key, span] : P.blocks) {
    if (key.degree != d) continue;
    const auto& members = h.blocks().at(key);
    for (Index c = 0; c < span.cols(); ++c) out.push_back(hopf::to_sparse(span.col(c), members));
  }
  return out;
}

std::map<long, DieudonneModule> from_primitives(const HopfPresentation& h) {
  const int p = h.p();
  auto P = hopf::primitives(h);
  std::map<long, DieudonneModule> out;
  for (const auto& [n, top] : slot_bounds(h)) {
    std::vector<std::vector<hopf::Vec>> slots;
    std::vector<int> dims;
    for (int k = 0; k <= top; ++k) {
      slots.push_back(primitives_in_degree(h, P, hopf_degree(n, k, p)));
      dims.push_back(static_cast<int>(slots.back().size()));
    }
    DieudonneModule m(p, dims);
    for (int k = 0; k < top; ++k) {
      const auto& src = slots[static_cast<std::size_t>(k)];
      const auto& dst = slots[static_cast<std::size_t>(k + 1)];
      FpMatrix basis(p, h.size(), static_cast<Index>(dst.size()));
      for (std::size_t c = 0; c < dst.size(); ++c)
        for (const auto& t : dst[c]) basis.set(t.index, static_cast<Index>(c), t.coeff);
      FpMatrix images(p, h.size(), static_cast<Index>(src.size()));
      for (std::size_t c = 0; c < src.size(); ++c) {
        std::optional<hopf::Vec> acc = hopf::basis_vec(h.unit());
        for (int e = 0; e < p && acc; ++e) acc = hopf::multiply(h, *acc, src[c]);
        if (!acc) throw std::logic_error("p-th power outside the window");
        for (const auto& t : *acc) images.set(t.index, static_cast<Index>(c), t.coeff);
      }
      auto coords = la::solve(basis, images);
      if (!coords) throw std::logic_error("p-th power of a primitive is not primitive");
      m.set_F(k, *coords);
    }
    out.emplace(n, m);
  }
  return out;
}

}  // namespace

std::map<long, DieudonneModule> dieudonne_of(const HopfPresentation& h) {
  if (h.grading().kind != hopf::Grading::Kind::natural) throw std::domain_error("cyclic gradings are outside the supported classes");
  std::map<long, DieudonneModule> out = h.factors().empty() ? std::map<long, DieudonneModule>{} : from_factors(h);
  if (h.factors().empty()) {
    for (int i = 0; i < h.size(); ++i)
      if (h.element(i).degree % 2 != 0 && i != h.unit()) throw std::domain_error("odd degrees are outside the supported classes");
    auto hp = std::make_shared<const HopfPresentation>(h);
    if (hopf::verschiebung(h).matrix != hopf::unit_counit(hp, hp).matrix)
      throw std::domain_error("not primitively generated and carries no catalogue factors");
    out = from_primitives(h);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.total_dim() == 0; });
  return out;
}

}  // namespace expfun::dieu
