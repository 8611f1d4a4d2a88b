#include <doctest.h>

#include "expfun/io.hpp"
#include "support.hpp"

using namespace expfun;
using catalogue::Kind;

TEST_CASE("hopf-v1 round trip") {
  std::vector<hopf::HopfPresentation> list;
  for (int p : {2, 3}) {
    auto some = support::dictionary_catalogue(p, 2L * p * p);
    list.insert(list.end(), some.begin(), some.end());
    list.push_back(catalogue::make(p, {Kind::Lambda}, {0, 3}, 12));
    list.push_back(hopf::tensor_product(some[0], some[1]));
  }
  list.push_back(catalogue::make(3, {Kind::Morava}, {}, 0));
  for (const auto& h : list) {
    auto text = io::dump_hopf(h);
    auto back = io::parse_hopf(text);
    CHECK(io::dump_hopf(back) == text);
    CHECK(back.factors() == h.factors());
    CHECK(back.size() == h.size());
    CHECK(hopf::verify_axioms(back).ok);
  }
}

TEST_CASE("hopf-v1 rejects malformed documents") {
  auto text = io::dump_hopf(catalogue::make(3, {Kind::S}, {0, 2}, 8));
  CHECK_THROWS_AS(io::parse_hopf("{"), io::FormatError);
  CHECK_THROWS_AS(io::parse_hopf("[]"), io::FormatError);
  CHECK_THROWS_AS(io::parse_hopf(R"({"schema":"dieu-v1"})"), io::FormatError);
  auto edit = [&](const std::string& from, const std::string& to) {
    auto t = text;
    auto at = t.find(from);
    REQUIRE(at != std::string::npos);
    return t.replace(at, from.size(), to);
  };
  CHECK_THROWS_AS(io::parse_hopf(edit("\"p\": 3", "\"p\": 4")), io::FormatError);
  CHECK_THROWS_AS(io::parse_hopf(edit("\"unit\": 0", "\"unit\": 99")), io::FormatError);
  CHECK_THROWS_AS(io::parse_hopf(edit("\"degree_bound\": 8", "\"degree_bound\": 2")), io::FormatError);
  CHECK_THROWS_AS(io::parse_hopf(edit("\"coeff\": 1", "\"coeff\": 3")), io::FormatError);
  CHECK_THROWS_AS(io::parse_hopf(edit("\"k\": 2", "\"k\": 1")), io::FormatError);
}

TEST_CASE("dieu-v1 round trip") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = support::random_string_sum(trial % 2 ? 3 : 2, rng);
    auto text = io::dump_dieudonne(s.module);
    auto back = io::parse_dieudonne(text);
    CHECK(back == s.module);
    CHECK(io::dump_dieudonne(back) == text);
  }
  CHECK_THROWS_AS(io::parse_dieudonne(R"({"schema":"dieu-v1","p":2,"degree_bound":1,"dims":[1,1],"F":[[[2]]],"V":[[[0]]]})"),
                  io::FormatError);
  CHECK_THROWS_AS(io::parse_dieudonne(R"({"schema":"dieu-v1","p":2,"degree_bound":1,"dims":[1],"F":[],"V":[]})"),
                  io::FormatError);
  auto ok = io::parse_dieudonne(R"({"schema":"dieu-v1","p":2,"degree_bound":1,"dims":[1,1],"F":[[[1]]],"V":[[[0]]]})");
  CHECK(dieu::decompose(ok) == std::vector<dieu::StringSpec>{{0, "F", dieu::Tail::none}});
}
