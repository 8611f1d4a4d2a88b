#pragma once

#include "expfun/catalogue.hpp"
#include "expfun/hopf.hpp"

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace expfun::bar {

using la::FpMatrix;

// total degree = s + internal degree
struct Bounds {
  long max_degree = 0;
  std::optional<long> max_weight;
  std::optional<int> max_s;
};

struct Slot {
  long s = 0, internal = 0, weight = 0;
  long total() const { return s + internal; }
  auto operator<=>(const Slot&) const = default;
};

// (degree, weight)
struct Cell {
  long degree = 0, weight = 0;
  auto operator<=>(const Cell&) const = default;
};

using Word = std::vector<int>;  // basis indices of augmentation ideal elements

struct BarComplex {
  hopf::HopfPtr base;
  Bounds bounds;
  // chains are enumerated one total degree past the bound so that homology up to it is exact
  std::map<Slot, std::vector<Word>> chains;
  std::map<Slot, FpMatrix> differential;  // slot -> (s-1, internal, weight)
  long complete_below_weight = std::numeric_limits<long>::max();

  const std::vector<Word>& words(const Slot& k) const;
  long dim(const Slot& k) const;
};

// throws std::domain_error on disconnected or cyclically graded input,
// std::invalid_argument when the bounds exceed the algebra's window
BarComplex reduced_bar(const hopf::HopfPresentation& a, Bounds bounds);
bool d_squared_zero(const BarComplex& c);

struct TorTable {
  int level = 1;
  std::map<Slot, long> slots;  // empty for closed forms
  std::map<Cell, long> totals;
};

TorTable homology_table(const BarComplex& c);
// restriction of the collapsed view to degree <= max_degree, weight <= max_weight
std::map<Cell, long> window(const std::map<Cell, long>& t, long max_degree, std::optional<long> max_weight);

// shuffle product and deconcatenation on chosen homology representatives
hopf::HopfPresentation tor_hopf(const BarComplex& c);

struct CofreeGenerator {
  catalogue::Kind kind = catalogue::Kind::Gamma;  // Lambda or Gamma
  int r = 0;                                      // weight p^r
  long degree = 0;
  int multiplicity = 1;
  bool operator==(const CofreeGenerator&) const = default;
};

struct Identification {
  bool ok = false;
  std::vector<CofreeGenerator> generators;
  std::string mismatch;
};

Identification identify_cofree(const hopf::HopfPresentation& h);
hopf::HopfPresentation cofree_model(int p, const std::vector<CofreeGenerator>& gens, long degree_bound,
                                    std::optional<long> weight_bound);

struct Iterated {
  TorTable table;
  std::vector<Identification> stages;  // one per re-modelling step
};

// level j by re-barring the cofree model of the previous level
Iterated tor_iterated(const hopf::HopfPresentation& a, int j, Bounds bounds);

// closed forms: tensor products of exterior / divided power generators
struct SeriesGenerator {
  bool exterior = false;
  int s = 0;  // weight p^s
  long degree = 0;
  bool operator==(const SeriesGenerator&) const = default;
};

std::map<Cell, long> poincare_series(int p, const std::vector<SeriesGenerator>& gens, long max_degree,
                                     std::optional<long> max_weight);

std::vector<SeriesGenerator> tor_generators(catalogue::AlgebraKind kind, catalogue::GeneratorSpec gen, int p, int j,
                                            long max_degree, std::optional<long> max_weight);
TorTable expected_tor(catalogue::AlgebraKind kind, catalogue::GeneratorSpec gen, int p, int j, long max_degree,
                      std::optional<long> max_weight);

enum class ETarget { Lambda, S };

// input is S or S_n twisted r times; degrees are the regraded ones
std::vector<SeriesGenerator> e_generators(ETarget x, catalogue::AlgebraKind input, int r, int p, long max_degree,
                                          long max_weight);
TorTable expected_E(ETarget x, catalogue::AlgebraKind input, int r, int p, long max_degree, long max_weight);

// (total i, weight k) -> (2k - i, k); tables of level 1 for Lambda, level 2 for S
TorTable regrade_E(const TorTable& t, ETarget x);

// alternating sums over s
long euler_per_weight(const BarComplex& c, long weight);
long euler_per_weight(const TorTable& t, long weight);

std::string slots_csv(const TorTable& t);
std::string totals_csv(const TorTable& t);

}  // namespace expfun::bar
