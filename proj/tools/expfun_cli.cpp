#include <CLI11.hpp>
#include <json.hpp>

#include "expfun/bar.hpp"
#include "expfun/catalogue.hpp"
#include "expfun/dieudonne.hpp"
#include "expfun/filtration.hpp"
#include "expfun/io.hpp"
#include "expfun/signature.hpp"
#include "expfun/symgrp.hpp"

#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>

using namespace expfun;
using json = nlohmann::ordered_json;
using catalogue::Kind;

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  int p = 2;
  long bound = 16;
  std::optional<long> weight_bound;
  std::optional<int> hom_bound;
  std::optional<std::uint64_t> seed;
  std::string format;
  std::string out;

  std::string source;  // kind name or input file
  long gen_degree = 2;
  int twist = 0;
  int n = 1;
  int multiplicity = 1;
  int iterate = 1;
  bool all = false;
  std::string e_target;
  std::string view = "both";
  std::string filtration = "coradical";
  std::string word;
  std::optional<int> k;
  std::optional<int> support_bound;
  int d = 2;
  int dim_v = 1;
  std::string oracle = "series";
};

void validate(const Options& o) {
  if (!la::is_prime(o.p)) throw InputError("--p must be prime, got " + std::to_string(o.p));
  if (o.bound < 1) throw InputError("--bound must be positive");
  if (o.weight_bound && *o.weight_bound < 1) throw InputError("--weight-bound must be positive");
  if (o.hom_bound && *o.hom_bound < 1) throw InputError("--hom-bound must be positive");
}

void require_format(const Options& o, std::initializer_list<std::string> allowed) {
  if (o.format.empty()) return;
  for (const auto& f : allowed)
    if (f == o.format) return;
  throw InputError("format " + o.format + " is not available here");
}

std::uint64_t seed_of(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("EXPFUN_SEED")) {
    try {
      std::size_t used = 0;
      auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError("EXPFUN_SEED is not an unsigned integer");
  }
  return 0;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty())
    std::cout << text;
  else
    io::write_file(o.out, text);
}

std::string line(const json& j) { return j.dump() + "\n"; }

bool is_kind_name(const std::string& s) {
  for (const char* k : {"S", "Lambda", "Gamma", "S_n", "Gamma_n", "G_n", "Morava"})
    if (s == k) return true;
  return false;
}

catalogue::AlgebraKind kind_of(const Options& o, const std::string& name) { return catalogue::parse_kind(name, o.n); }

hopf::HopfPresentation build(const Options& o, const std::string& name) {
  return catalogue::make(o.p, kind_of(o, name), {o.twist, o.gen_degree, o.multiplicity}, o.bound, o.weight_bound);
}

hopf::HopfPresentation load_or_build(const Options& o) {
  if (is_kind_name(o.source)) return build(o, o.source);
  return io::parse_hopf(io::read_file(o.source));
}

std::string kind_label(catalogue::AlgebraKind k) {
  std::string s = catalogue::kind_name(k.kind);
  return k.n ? s + "(" + std::to_string(k.n) + ")" : s;
}

// ---- signature documents

json profile_json(const sig::Profile& p) {
  json a = json::array();
  for (auto [d, m] : p) a.push_back({d, m});
  return a;
}

json multiset_json(const sig::Multiset& m) {
  json a = json::array();
  for (const auto& [x, k] : m) a.push_back({{"P", profile_json(x.P)}, {"Q", profile_json(x.Q)}, {"count", k}});
  return a;
}

sig::Profile parse_profile(const json& j) {
  if (!j.is_array()) throw io::FormatError("profile must be a list of [degree, multiplicity]");
  sig::Profile p;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw io::FormatError("profile entries are [degree, multiplicity]");
    int d = e[0].get<int>(), m = e[1].get<int>();
    if (d < 0 || m < 1) throw io::FormatError("profile degrees are nonnegative, multiplicities positive");
    p[d] += m;
  }
  return p;
}

sig::Multiset parse_multiset(const json& j) {
  if (!j.is_array()) throw io::FormatError("multiset must be a list");
  sig::Multiset m;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("P") || !e.contains("Q") || !e.contains("count") || !e["count"].is_number_integer())
      throw io::FormatError("multiset entries need P, Q and count");
    sig::Pair x{parse_profile(e["P"]), parse_profile(e["Q"])};
    int k = e["count"].get<int>();
    if (k < 1 || sig::is_zero(x)) throw io::FormatError("multiset entries need a positive count and a nonzero pair");
    m[x] += k;
  }
  return m;
}

json parse_document(const std::string& path, const std::string& schema) {
  json j;
  try {
    j = json::parse(io::read_file(path));
  } catch (const json::parse_error& e) {
    throw io::FormatError(std::string("not JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", "") != schema) throw io::FormatError("expected a " + schema + " document");
  return j;
}

std::string signature_document(const sig::Multiset& m) {
  json j{{"schema", "sig-v1"}, {"text", sig::to_string(m)}, {"pairs", multiset_json(m)}};
  return j.dump(1) + "\n";
}

// ---- subcommands

int cmd_catalogue(const Options& o) {
  require_format(o, {"json"});
  auto h = build(o, o.source);
  emit(o, io::dump_hopf(h));
  return 0;
}

int cmd_verify(const Options& o) {
  require_format(o, {"json"});
  auto h = io::parse_hopf(io::read_file(o.source));
  auto r = hopf::verify_axioms(h);
  json j{{"check", "axioms"}, {"ok", r.ok}, {"checked", r.checked}, {"skipped", r.skipped}};
  if (!r.ok) j["failure"] = r.failure, j["witnesses"] = r.witnesses;
  emit(o, line(j));
  return r.ok ? 0 : 1;
}

bar::TorTable compute_tor(const hopf::HopfPresentation& a, int j, const bar::Bounds& b) {
  if (j < 1) throw InputError("--iterate must be at least 1");
  if (j == 1) return bar::homology_table(bar::reduced_bar(a, b));
  return bar::tor_iterated(a, j, b).table;
}

int cmd_tor(const Options& o) {
  require_format(o, {"csv", "json"});
  auto a = load_or_build(o);
  auto t = compute_tor(a, o.iterate, {o.bound, o.weight_bound, o.hom_bound});
  if (o.view != "slots" && o.view != "totals" && o.view != "both") throw InputError("--view is slots, totals or both");
  if (o.format == "json") {
    json j{{"level", t.level}};
    if (o.view != "totals") {
      j["slots"] = json::array();
      for (const auto& [k, n] : t.slots)
        j["slots"].push_back({{"s", k.s}, {"internal_degree", k.internal}, {"weight", k.weight}, {"dim", n}});
    }
    if (o.view != "slots") {
      j["totals"] = json::array();
      for (const auto& [c, n] : t.totals) j["totals"].push_back({{"total_degree", c.degree}, {"weight", c.weight}, {"dim", n}});
    }
    emit(o, j.dump(1) + "\n");
  } else if (o.view == "slots") {
    emit(o, bar::slots_csv(t));
  } else if (o.view == "totals") {
    emit(o, bar::totals_csv(t));
  } else {
    emit(o, bar::slots_csv(t) + "\n" + bar::totals_csv(t));
  }
  return 0;
}

std::string first_difference(const std::map<bar::Cell, long>& got, const std::map<bar::Cell, long>& want) {
  std::set<bar::Cell> cells;
  for (const auto& [c, n] : got) cells.insert(c);
  for (const auto& [c, n] : want) cells.insert(c);
  for (const auto& c : cells) {
    long g = got.contains(c) ? got.at(c) : 0, w = want.contains(c) ? want.at(c) : 0;
    if (g != w)
      return "degree " + std::to_string(c.degree) + " weight " + std::to_string(c.weight) + ": computed " +
             std::to_string(g) + ", expected " + std::to_string(w);
  }
  return {};
}

struct TorCase {
  catalogue::AlgebraKind kind;
  int r;
  long i;
  int level;
};

json run_case(const Options& o, const TorCase& c) {
  auto a = catalogue::make(o.p, c.kind, {c.r, c.i}, o.bound, o.weight_bound);
  auto got = bar::window(compute_tor(a, c.level, {o.bound, o.weight_bound, std::nullopt}).totals, o.bound, o.weight_bound);
  auto want = bar::window(bar::expected_tor(c.kind, {c.r, c.i}, o.p, c.level, o.bound, o.weight_bound).totals, o.bound,
                          o.weight_bound);
  json j{{"case", "Tor" + std::to_string(c.level) + " " + kind_label(c.kind) + " r=" + std::to_string(c.r) +
                      " i=" + std::to_string(c.i)},
         {"ok", got == want}};
  if (got != want) j["difference"] = first_difference(got, want);
  return j;
}

json run_e_case(const Options& o, bar::ETarget x, catalogue::AlgebraKind kind, int r) {
  const long W = o.weight_bound.value_or(8), D = 2 * W;
  auto a = catalogue::make(o.p, kind, {r, 0}, D, W);
  auto computed = x == bar::ETarget::Lambda ? bar::homology_table(bar::reduced_bar(a, {D}))
                                            : bar::tor_iterated(a, 2, {D}).table;
  auto got = bar::regrade_E(computed, x).totals;
  auto want = bar::expected_E(x, kind, r, o.p, D, W).totals;
  json j{{"case", std::string("E(") + (x == bar::ETarget::Lambda ? "Lambda" : "S") + ") " + kind_label(kind) +
                      " r=" + std::to_string(r)},
         {"ok", got == want}};
  if (got != want) j["difference"] = first_difference(got, want);
  return j;
}

int cmd_verify_tor(const Options& o) {
  require_format(o, {"json"});
  std::vector<std::function<json()>> cases;
  if (o.all) {
    const bool odd_p = o.p != 2;
    std::vector<long> even{2, 4}, lambda_degrees = odd_p ? std::vector<long>{1, 3} : even;
    std::vector<catalogue::AlgebraKind> s_like{{Kind::S}, {Kind::S_n, 1}, {Kind::S_n, 2}};
    for (int r : {0, 1}) {
      for (auto k : s_like)
        for (long i : even) cases.push_back([&o, k, r, i] { return run_case(o, {k, r, i, 1}); });
      for (long i : lambda_degrees) cases.push_back([&o, r, i] { return run_case(o, {{Kind::Lambda}, r, i, 1}); });
      cases.push_back([&o, r] { return run_case(o, {{Kind::Gamma}, r, 2, 1}); });
      cases.push_back([&o, r] { return run_case(o, {{Kind::S}, r, 2, 2}); });
      cases.push_back([&o, r, l = lambda_degrees.front()] { return run_case(o, {{Kind::Lambda}, r, l, 2}); });
      for (auto k : s_like)
        for (auto x : {bar::ETarget::Lambda, bar::ETarget::S}) cases.push_back([&o, x, k, r] { return run_e_case(o, x, k, r); });
    }
  } else {
    if (o.source.empty()) throw InputError("verify-tor needs a kind or --all");
    auto kind = kind_of(o, o.source);
    if (!o.e_target.empty()) {
      if (o.e_target != "lambda" && o.e_target != "s") throw InputError("--e is lambda or s");
      auto x = o.e_target == "lambda" ? bar::ETarget::Lambda : bar::ETarget::S;
      cases.push_back([&o, x, kind] { return run_e_case(o, x, kind, o.twist); });
    } else {
      cases.push_back([&o, kind] { return run_case(o, {kind, o.twist, o.gen_degree, o.iterate}); });
    }
  }
  std::string text;
  bool ok = true;
  for (const auto& c : cases) {
    auto j = c();
    ok = ok && j["ok"].get<bool>();
    text += line(j);
  }
  emit(o, text);
  return ok ? 0 : 1;
}

int cmd_string(const Options& o) {
  require_format(o, {"json"});
  emit(o, io::dump_dieudonne(dieu::make_string(o.p, {o.twist, o.word, dieu::Tail::none}, static_cast<int>(o.bound))));
  return 0;
}

int cmd_decompose(const Options& o) {
  require_format(o, {"json"});
  auto m = io::parse_dieudonne(io::read_file(o.source));
  json list = json::array();
  for (const auto& s : dieu::decompose(m, seed_of(o))) {
    json e{{"r", s.r}, {"word", s.word}};
    if (s.tail != dieu::Tail::none) e["tail"] = s.tail == dieu::Tail::F ? "F" : "V";
    list.push_back(e);
  }
  json j{{"schema", "strings-v1"}, {"p", m.p()}, {"degree_bound", m.degree_bound()}, {"strings", list}};
  emit(o, j.dump(1) + "\n");
  return 0;
}

int cmd_signature(const Options& o) {
  require_format(o, {"json"});
  auto m = io::parse_dieudonne(io::read_file(o.source));
  std::vector<sig::Pair> pairs;
  for (const auto& s : dieu::decompose(m, seed_of(o))) pairs.push_back(sig::pair_of_string(m.p(), s, m.degree_bound()));
  emit(o, signature_document(sig::signature_of(pairs)));
  return 0;
}

int cmd_phi(const Options& o) {
  require_format(o, {"json"});
  auto sigma = parse_multiset(parse_document(o.source, "sig-v1").at("pairs"));
  int support = 0;
  for (const auto& [x, k] : sigma)
    for (const auto* prof : {&x.P, &x.Q})
      if (!prof->empty()) support = std::max(support, prof->rbegin()->first);
  if (o.support_bound) {
    if (*o.support_bound < support) throw InputError("--support-bound is below the signature's support");
    support = *o.support_bound;
  }
  json phi = json::array();
  for (int k = 0; k <= support; ++k) phi.push_back(multiset_json(sig::fake_truncation(sigma, k)));
  json j{{"schema", "phi-v1"}, {"support_bound", support}, {"phi", phi}};
  emit(o, j.dump(1) + "\n");
  return 0;
}

int cmd_reconstruct(const Options& o) {
  require_format(o, {"json"});
  auto doc = parse_document(o.source, "phi-v1");
  if (!doc.contains("support_bound") || !doc["support_bound"].is_number_integer() || !doc.contains("phi") ||
      !doc["phi"].is_array())
    throw io::FormatError("phi-v1 needs support_bound and phi");
  int support = doc["support_bound"].get<int>();
  if (support < 0 || doc["phi"].size() != static_cast<std::size_t>(support + 1))
    throw io::FormatError("phi-v1 needs one multiset per level 0..support_bound");
  std::vector<sig::Multiset> phi;
  for (const auto& m : doc["phi"]) phi.push_back(parse_multiset(m));
  emit(o, signature_document(sig::reconstruct_from_phi(phi, support)));
  return 0;
}

int cmd_nakaoka(const Options& o) {
  require_format(o, {"json"});
  std::string text;
  if (o.k) {
    for (const auto& t : symgrp::nakaoka_tuples(o.p, *o.k, o.bound)) text += symgrp::tuple_json(t) + "\n";
  } else {
    for (int k = 1;; ++k) {
      auto ts = symgrp::nakaoka_tuples(o.p, k, o.bound);
      if (ts.empty()) break;
      for (const auto& t : ts) text += symgrp::tuple_json(t) + "\n";
    }
  }
  emit(o, text);
  return 0;
}

int cmd_symhom(const Options& o) {
  require_format(o, {"csv", "json"});
  const int top = o.hom_bound.value_or(8);
  std::vector<long> dims;
  if (o.oracle == "series")
    dims = symgrp::symgroup_homology_dims(o.p, o.d, o.dim_v, top);
  else if (o.oracle == "resolution")
    dims = symgrp::brute_group_homology(o.p, o.d, o.dim_v, top);
  else if (o.oracle == "bar")
    dims = symgrp::bar_group_homology(o.p, o.d, o.dim_v, top);
  else
    throw InputError("--oracle is series, resolution or bar");
  if (o.format == "json") {
    json a = json::array();
    for (std::size_t i = 0; i < dims.size(); ++i) a.push_back({{"i", i}, {"dim", dims[i]}});
    emit(o, a.dump(1) + "\n");
  } else {
    std::string text = "i,dim\n";
    for (std::size_t i = 0; i < dims.size(); ++i) text += std::to_string(i) + "," + std::to_string(dims[i]) + "\n";
    emit(o, text);
  }
  return 0;
}

int cmd_selfdual(const Options& o) {
  require_format(o, {"json"});
  auto checks = catalogue::morava_selfduality(o.p);
  std::string text;
  bool ok = true;
  for (const auto& [name, r] : checks) {
    json j{{"check", name}, {"ok", r.ok}};
    if (!r.ok) j["failure"] = r.failure, j["witnesses"] = r.witnesses;
    ok = ok && r.ok;
    text += line(j);
  }
  emit(o, text);
  return ok ? 0 : 1;
}

int cmd_gr(const Options& o) {
  require_format(o, {"json"});
  hopf::Filtration f;
  if (o.filtration == "coradical")
    f = hopf::Filtration::primitive;
  else if (o.filtration == "augmentation")
    f = hopf::Filtration::augmentation;
  else
    throw InputError("--filtration is coradical or augmentation");
  emit(o, io::dump_hopf(hopf::associated_graded(load_or_build(o), f)));
  return 0;
}

void common(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "prime");
  sub->add_option("--bound", o.bound, "degree bound");
  sub->add_option("--weight-bound", o.weight_bound, "weight bound");
  sub->add_option("--hom-bound", o.hom_bound, "homological bound");
  sub->add_option("--seed", o.seed, "random seed (default $EXPFUN_SEED, then 0)");
  sub->add_option("--format", o.format, "json or csv");
  sub->add_option("--out", o.out, "output file (default stdout)");
}

void generator(CLI::App* sub, Options& o) {
  sub->add_option("--gen-degree", o.gen_degree, "generator degree i");
  sub->add_option("--twist", o.twist, "Frobenius twist r (weight p^r)");
  sub->add_option("--n", o.n, "truncation level for S_n, Gamma_n, G_n");
  sub->add_option("--multiplicity", o.multiplicity, "copies of the generator");
}

int report_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Hopf algebra and Dieudonne module computations over F_p"};
  app.require_subcommand(1);
  Options o;
  std::map<CLI::App*, std::function<int(const Options&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help, std::function<int(const Options&)> run) {
    auto* sub = app.add_subcommand(name, help);
    common(sub, o);
    handlers[sub] = std::move(run);
    return sub;
  };

  auto* cat = add("catalogue", "emit a catalogue algebra as hopf-v1", cmd_catalogue);
  cat->add_option("kind", o.source, "S, Lambda, Gamma, S_n, Gamma_n, G_n or Morava")->required();
  generator(cat, o);

  add("verify", "check the Hopf axioms of a hopf-v1 file", cmd_verify)->add_option("file", o.source)->required();

  auto* tor = add("tor", "Tor table of a catalogue kind or hopf-v1 file", cmd_tor);
  tor->add_option("source", o.source, "kind name or file")->required();
  tor->add_option("--iterate", o.iterate, "iterated level j");
  tor->add_option("--view", o.view, "slots, totals or both");
  generator(tor, o);

  auto* vt = add("verify-tor", "compare Tor tables with the closed forms", cmd_verify_tor);
  vt->add_option("kind", o.source);
  vt->add_flag("--all", o.all, "run the whole grid at --p");
  vt->add_option("--iterate", o.iterate, "iterated level j");
  vt->add_option("--e", o.e_target, "lambda or s: regraded E table, degree-0 generator");
  generator(vt, o);

  auto* st = add("string", "emit a string module as dieu-v1", cmd_string);
  st->add_option("--word", o.word, "FV-word");
  st->add_option("--twist", o.twist, "starting degree r");

  add("decompose", "decompose a dieu-v1 module into strings", cmd_decompose)->add_option("file", o.source)->required();
  add("signature", "signature of a dieu-v1 module", cmd_signature)->add_option("file", o.source)->required();

  auto* phi = add("phi", "fake truncations of a sig-v1 signature", cmd_phi);
  phi->add_option("file", o.source)->required();
  phi->add_option("--support-bound", o.support_bound, "last level");

  add("reconstruct", "signature from a phi-v1 document", cmd_reconstruct)->add_option("file", o.source)->required();

  add("nakaoka", "admissible tuples as JSON lines", cmd_nakaoka)->add_option("--k", o.k, "tuple length");

  auto* sh = add("symhom", "dims of H_i(S_d, V^d)", cmd_symhom);
  sh->add_option("--d", o.d, "degree d");
  sh->add_option("--dim-v", o.dim_v, "dim V");
  sh->add_option("--oracle", o.oracle, "series, resolution or bar");

  add("selfdual-check", "self-duality suite for the Morava algebra", cmd_selfdual);

  auto* gr = add("gr", "associated graded of a kind or hopf-v1 file", cmd_gr);
  gr->add_option("source", o.source, "kind name or file")->required();
  gr->add_option("--filtration", o.filtration, "coradical or augmentation");
  generator(gr, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_error("usage", e.what());
  }

  try {
    validate(o);
    for (const auto& [sub, run] : handlers)
      if (sub->parsed()) return run(o);
  } catch (const InputError& e) {
    return report_error("input", e.what());
  } catch (const io::FormatError& e) {
    return report_error("format", e.what());
  } catch (const std::invalid_argument& e) {
    return report_error("input", e.what());
  } catch (const std::domain_error& e) {
    return report_error("unsupported", e.what());
  } catch (const std::exception& e) {
    return report_error("failure", e.what());
  }
  return 2;
}
