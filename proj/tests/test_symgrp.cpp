#include <doctest.h>

#include "expfun/symgrp.hpp"

#include <set>
#include <stdexcept>

using namespace expfun::symgrp;

namespace {

std::set<long> degrees(const std::vector<NakaokaTuple>& ts) {
  std::set<long> out;
  for (const auto& t : ts) out.insert(t.degree());
  return out;
}

std::set<long> nonzero(const std::vector<long>& dims) {
  std::set<long> out;
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (dims[i]) out.insert(static_cast<long>(i));
  return out;
}

}  // namespace

TEST_CASE("Nakaoka tuples") {
  CHECK(degrees(nakaoka_tuples(2, 1, 5)) == std::set<long>{1, 2, 3, 4, 5});
  CHECK(degrees(nakaoka_tuples(3, 1, 8)) == std::set<long>{3, 4, 7, 8});
  CHECK(nakaoka_tuples(2, 2, 3) == std::vector<NakaokaTuple>{{{2, 1}}});
  CHECK_FALSE(admissible(2, {1, 1}));
  CHECK_FALSE(admissible(3, {4, 4}));
  CHECK(admissible(3, {8, 3}));
  CHECK_FALSE(admissible(3, {12, 3}));
  for (const auto& t : nakaoka_tuples(3, 2, 40)) CHECK(admissible(3, t.entries));
  CHECK(tuple_json({{2, 1}}) == R"({"k":2,"degree":3,"entries":[2,1]})");
  CHECK_THROWS_AS(nakaoka_tuples(4, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(nakaoka_tuples(2, 0, 5), std::invalid_argument);
}

TEST_CASE("symmetric group homology from the series") {
  CHECK(symgroup_homology_dims(2, 2, 1, 10) == std::vector<long>(11, 1));
  CHECK(nonzero(symgroup_homology_dims(3, 3, 1, 11)) == std::set<long>{0, 3, 4, 7, 8, 11});
  for (int p : {2, 3, 5})
    for (int v : {1, 2, 3}) CHECK(symgroup_homology_dims(p, 1, v, 4) == std::vector<long>{v, 0, 0, 0, 0});
  // below the prime only coinvariants survive
  for (int d = 1; d < 5; ++d) {
    auto dims = symgroup_homology_dims(5, d, 2, 12);
    for (std::size_t i = 1; i < dims.size(); ++i) CHECK(dims[i] == 0);
  }
  CHECK(symgroup_homology_dims(3, 0, 2, 3) == std::vector<long>{1, 0, 0, 0});
}

TEST_CASE("exponential convolution across dim V") {
  const int bound = 10;
  for (int p : {2, 3})
    for (int d = 0; d <= 6; ++d)
      for (int a = 1; a <= 2; ++a) {
        const int b = 3 - a;
        std::vector<long> conv(bound + 1, 0);
        for (int k = 0; k <= d; ++k) {
          auto x = symgroup_homology_dims(p, k, a, bound), y = symgroup_homology_dims(p, d - k, b, bound);
          for (int i = 0; i <= bound; ++i)
            for (int j = 0; i + j <= bound; ++j) conv[static_cast<std::size_t>(i + j)] += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
        }
        INFO(p << " d=" << d << " a=" << a);
        CHECK(conv == symgroup_homology_dims(p, d, 3, bound));
      }
}

TEST_CASE("linear algebra oracles") {
  CHECK(brute_group_homology(2, 2, 1, 4) == std::vector<long>{1, 1, 1, 1, 1});
  CHECK(brute_group_homology(3, 2, 1, 4) == std::vector<long>{1, 0, 0, 0, 0});
  CHECK(brute_group_homology(3, 2, 2, 4)[0] == 3);
  for (int p : {2, 3})
    for (int d = 1; d <= 3; ++d)
      for (int v = 1; v <= 2; ++v) {
        INFO(p << " d=" << d << " dimV=" << v);
        auto brute = brute_group_homology(p, d, v, 4);
        CHECK(brute == symgroup_homology_dims(p, d, v, 4));
        int top = d == 3 ? (v == 1 ? 3 : 2) : 4;
        auto bar = bar_group_homology(p, d, v, top);
        CHECK(bar == std::vector<long>(brute.begin(), brute.begin() + top + 1));
      }
  CHECK_THROWS_AS(brute_group_homology(2, 4, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(brute_group_homology(2, 2, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(brute_group_homology(2, 2, 1, 5), std::invalid_argument);
}
