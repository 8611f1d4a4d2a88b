#include "expfun/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace expfun::io {

using Json = nlohmann::ordered_json;
using hopf::HopfPresentation;
using la::Scalar;

namespace {

Json parse_document(const std::string& text, const char* schema) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("top level must be an object");
  if (doc.value("schema", std::string{}) != schema) throw FormatError(std::string("expected schema ") + schema);
  return doc;
}

template <class T>
T field(const Json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) throw FormatError(std::string("missing field ") + name);
  try {
    return obj.at(name).get<T>();
  } catch (const Json::exception&) {
    throw FormatError(std::string("field ") + name + " has the wrong type");
  }
}

const Json& array_field(const Json& obj, const char* name) {
  if (!obj.contains(name) || !obj.at(name).is_array()) throw FormatError(std::string("field ") + name + " must be an array");
  return obj.at(name);
}

std::string text_of(const Json& doc) { return doc.dump(1) + "\n"; }

}  // namespace

std::string dump_hopf(const HopfPresentation& h) {
  Json doc;
  doc["schema"] = "hopf-v1";
  doc["p"] = h.p();
  Json grading;
  grading["kind"] = h.grading().kind == hopf::Grading::Kind::natural ? "natural" : "cyclic";
  if (h.grading().kind == hopf::Grading::Kind::cyclic) grading["modulus"] = h.grading().modulus;
  doc["grading"] = grading;
  doc["degree_bound"] = h.degree_bound();
  if (h.weight_bound()) doc["weight_bound"] = *h.weight_bound();
  if (h.weight_modulus()) doc["weight_modulus"] = h.weight_modulus();
  doc["unit"] = h.unit();
  Json basis = Json::array();
  for (const auto& b : h.basis()) basis.push_back({{"label", b.label}, {"degree", b.degree}, {"weight", b.weight}});
  doc["basis"] = basis;
  Json mu = Json::array();
  for (int i = 0; i < h.size(); ++i)
    for (int j = 0; j < h.size(); ++j) {
      if (i == h.unit() || j == h.unit() || h.product(i, j).empty()) continue;
      Json out = Json::array();
      for (const auto& t : h.product(i, j)) out.push_back({{"k", t.index}, {"coeff", t.coeff}});
      mu.push_back({{"i", i}, {"j", j}, {"out", out}});
    }
  doc["mu"] = mu;
  Json delta = Json::array();
  for (int i = 0; i < h.size(); ++i) {
    if (i == h.unit()) continue;
    Json out = Json::array();
    for (const auto& t : h.coproduct(i)) out.push_back({{"k", t.left}, {"l", t.right}, {"coeff", t.coeff}});
    delta.push_back({{"i", i}, {"out", out}});
  }
  doc["delta"] = delta;
  if (!h.factors().empty()) {
    Json factors = Json::array();
    for (const auto& f : h.factors())
      factors.push_back({{"kind", f.kind}, {"n", f.n}, {"r", f.r}, {"i", f.i}, {"multiplicity", f.multiplicity}});
    doc["factors"] = factors;
  }
  return text_of(doc);
}

HopfPresentation parse_hopf(const std::string& text) {
  Json doc = parse_document(text, "hopf-v1");
  const int p = field<int>(doc, "p");
  if (!la::is_prime(p)) throw FormatError("p must be prime");
  if (!doc.contains("grading") || !doc.at("grading").is_object()) throw FormatError("missing field grading");
  const Json& g = doc.at("grading");
  auto kind = field<std::string>(g, "kind");
  hopf::Grading grading;
  if (kind == "cyclic") {
    const int modulus = field<int>(g, "modulus");
    if (modulus <= 0) throw FormatError("cyclic modulus must be positive");
    grading = hopf::Grading::cyclic(modulus);
  } else if (kind != "natural") {
    throw FormatError("grading kind must be natural or cyclic");
  }
  const long bound = field<long>(doc, "degree_bound");
  if (bound < 0) throw FormatError("degree_bound must be nonnegative");

  std::vector<hopf::BasisElement> basis;
  for (const auto& b : array_field(doc, "basis")) {
    hopf::BasisElement e{field<std::string>(b, "label"), field<long>(b, "degree"), field<long>(b, "weight")};
    if (grading.kind == hopf::Grading::Kind::natural && (e.degree < 0 || e.degree > bound))
      throw FormatError("basis element " + e.label + " outside the degree window");
    if (grading.normalize(e.degree) != e.degree) throw FormatError("basis degree of " + e.label + " is not reduced");
    basis.push_back(std::move(e));
  }
  const int n = static_cast<int>(basis.size());
  const int unit = field<int>(doc, "unit");
  if (unit < 0 || unit >= n) throw FormatError("unit index out of range");
  if (basis[static_cast<std::size_t>(unit)].degree != 0 || basis[static_cast<std::size_t>(unit)].weight != 0)
    throw FormatError("unit must sit in degree 0 and weight 0");

  std::optional<HopfPresentation> built;
  try {
    built.emplace(p, grading, bound, basis, unit);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  HopfPresentation& h = *built;
  if (doc.contains("weight_bound")) h.set_weight_bound(field<long>(doc, "weight_bound"));
  if (doc.contains("weight_modulus")) {
    long m = field<long>(doc, "weight_modulus");
    if (m < 0) throw FormatError("weight_modulus must be nonnegative");
    h.set_weight_modulus(m);
  }

  auto index = [&](const Json& obj, const char* name) {
    int i = field<int>(obj, name);
    if (i < 0 || i >= n) throw FormatError(std::string("index ") + name + " out of range");
    return i;
  };
  auto coefficient = [&](const Json& obj) {
    auto c = field<long>(obj, "coeff");
    if (c <= 0 || c >= p) throw FormatError("coefficients must lie in 1..p-1");
    return static_cast<Scalar>(c);
  };
  auto deg = [&](int i) { return h.element(i).degree; };
  auto wt = [&](int i) { return h.element(i).weight; };

  for (const auto& entry : array_field(doc, "mu")) {
    int i = index(entry, "i"), j = index(entry, "j");
    if (i == unit || j == unit) throw FormatError("products with the unit are implicit");
    if (!h.product_known(i, j)) throw FormatError("product listed outside the window");
    hopf::Vec v;
    for (const auto& t : array_field(entry, "out")) {
      int k = index(t, "k");
      if (!v.empty() && v.back().index >= k) throw FormatError("product terms must be strictly increasing");
      if (deg(k) != grading.add(deg(i), deg(j)) || wt(k) != h.normalize_weight(wt(i) + wt(j)))
        throw FormatError("product term of the wrong degree or weight");
      v.push_back({k, coefficient(t)});
    }
    h.set_product(i, j, std::move(v));
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto& entry : array_field(doc, "delta")) {
    int i = index(entry, "i");
    if (i == unit) throw FormatError("the coproduct of the unit is implicit");
    if (seen[static_cast<std::size_t>(i)]) throw FormatError("coproduct listed twice");
    seen[static_cast<std::size_t>(i)] = true;
    hopf::Vec2 v;
    for (const auto& t : array_field(entry, "out")) {
      int k = index(t, "k"), l = index(t, "l");
      if (!v.empty() && std::pair(v.back().left, v.back().right) >= std::pair(k, l))
        throw FormatError("coproduct terms must be strictly increasing");
      if (grading.add(deg(k), deg(l)) != deg(i) || h.normalize_weight(wt(k) + wt(l)) != wt(i))
        throw FormatError("coproduct term of the wrong degree or weight");
      v.push_back({k, l, coefficient(t)});
    }
    h.set_coproduct(i, std::move(v));
  }
  if (doc.contains("factors")) {
    std::vector<hopf::Factor> factors;
    for (const auto& f : array_field(doc, "factors"))
      factors.push_back({field<std::string>(f, "kind"), field<int>(f, "n"), field<int>(f, "r"), field<long>(f, "i"),
                         field<int>(f, "multiplicity")});
    h.set_factors(std::move(factors));
  }
  return std::move(h);
}

std::string dump_dieudonne(const dieu::DieudonneModule& m) {
  auto rows = [](const la::FpMatrix& a) {
    Json out = Json::array();
    for (la::Index r = 0; r < a.rows(); ++r) {
      Json row = Json::array();
      for (la::Index c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
      out.push_back(row);
    }
    return out;
  };
  Json doc;
  doc["schema"] = "dieu-v1";
  doc["p"] = m.p();
  doc["degree_bound"] = m.degree_bound();
  doc["dims"] = m.dims();
  Json F = Json::array(), V = Json::array();
  for (int i = 0; i < m.degree_bound(); ++i) {
    F.push_back(rows(m.F(i)));
    V.push_back(rows(m.V(i)));
  }
  doc["F"] = F;
  doc["V"] = V;
  return text_of(doc);
}

dieu::DieudonneModule parse_dieudonne(const std::string& text) {
  Json doc = parse_document(text, "dieu-v1");
  const int p = field<int>(doc, "p");
  if (!la::is_prime(p)) throw FormatError("p must be prime");
  const int bound = field<int>(doc, "degree_bound");
  auto dims = field<std::vector<int>>(doc, "dims");
  if (bound < 0 || static_cast<int>(dims.size()) != bound + 1) throw FormatError("dims must list degrees 0..degree_bound");
  for (int d : dims)
    if (d < 0) throw FormatError("negative dimension");
  dieu::DieudonneModule m(p, dims);
  const Json& F = array_field(doc, "F");
  const Json& V = array_field(doc, "V");
  if (static_cast<int>(F.size()) != bound || static_cast<int>(V.size()) != bound) throw FormatError("one F and one V matrix per edge");
  auto matrix = [&](const Json& rows, int r, int c) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != r) throw FormatError("matrix has the wrong number of rows");
    la::FpMatrix a(p, r, c);
    for (int i = 0; i < r; ++i) {
      const Json& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != c) throw FormatError("matrix row has the wrong length");
      for (int j = 0; j < c; ++j) {
        if (!row[static_cast<std::size_t>(j)].is_number_integer()) throw FormatError("matrix entries must be integers");
        long v = row[static_cast<std::size_t>(j)].get<long>();
        if (v < 0 || v >= p) throw FormatError("matrix entries must lie in 0..p-1");
        a.set(i, j, v);
      }
    }
    return a;
  };
  for (int i = 0; i < bound; ++i) {
    auto u = static_cast<std::size_t>(i);
    m.set_F(i, matrix(F[u], dims[u + 1], dims[u]));
    m.set_V(i, matrix(V[u], dims[u], dims[u + 1]));
  }
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace expfun::io
