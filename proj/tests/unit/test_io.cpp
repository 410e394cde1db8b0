#include <cstring>
#include <random>
#include <string>

#include "doctest.h"
#include "graphon_ldp/errors.hpp"
#include "graphon_ldp/io.hpp"
#include "helpers.hpp"

using namespace gldp;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_graph(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(parse_rational("2/4") == Rational(1, 2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(make_rational("123456789012345678901234567890", "3") ==
        Rational(BigInt("41152263004115226300411522630")));
  CHECK(rational_from_double(0.1) != Rational(1, 10));
  CHECK(to_double(rational_from_double(0.1)) == 0.1);
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), ValidationError);
  CHECK(round_to_grid(0.3, BigInt(3), 4, Rounding::Up) == Rational(15, 48));
  CHECK(round_to_grid(0.3, BigInt(3), 4, Rounding::Down) == Rational(14, 48));
}

TEST_CASE("graphon JSON round trip is exact") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const StepGraphon f = testing::random_graphon(rng, 1 + trial % 6, 12);
    const StepGraphon back = parse_graphon(graphon_to_json(f).dump());
    CHECK(back == f);
    for (std::size_t i = 0; i < f.flat_values().size(); ++i)
      CHECK(std::memcmp(&f.flat_values()[i], &back.flat_values()[i], sizeof(double)) == 0);
  }
  const StepGraphon g = parse_graphon(R"({"gamma": ["1/3", [2, 3]], "values": [[0, 0.5], [0.5, 0]]})");
  CHECK(g.widths()[1] == Rational(2, 3));
  CHECK(g.value(0, 1) == 0.5);
}

TEST_CASE("graphon JSON errors name the field") {
  auto message = [](const std::string& text) -> std::string {
    try {
      parse_graphon(text);
    } catch (const ValidationError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message(R"({"values": [[0]]})").find("gamma") != std::string::npos);
  CHECK(message(R"({"gamma": ["1"]})").find("values") != std::string::npos);
  CHECK(message(R"({"gamma": ["1/2", "1/3"], "values": [[0, 0], [0, 0]]})") != "");
  CHECK(message(R"({"gamma": ["1/2", "1/2"], "values": [[0, 0.2], [0.3, 0]]})") != "");
  CHECK(message(R"({"gamma": ["1"], "values": [[1.5]]})") != "");
  CHECK(message("{not json") .find("malformed") != std::string::npos);
}

TEST_CASE("graph files") {
  const FiniteGraph c4 = parse_graph("# square\n4 4\n1 2\n2 3\n\n3 4\n4 1\n");
  CHECK(c4.vertex_count() == 4);
  CHECK(c4.regular_degree() == 2);
  const FiniteGraph again = parse_graph(graph_to_text(c4));
  CHECK(again.edges() == c4.edges());

  CHECK(error_of("3 2\n1 2\n2 2\n").find("line 3") != std::string::npos);
  CHECK(error_of("3 2\n1 2\n1 4\n").find("line 3") != std::string::npos);
  CHECK(error_of("3 2\n1 2\n2 1\n").find("duplicate") != std::string::npos);
  CHECK(error_of("3 1\nx y\n").find("line 2") != std::string::npos);
  CHECK(error_of("3 2\n1 2\n").find("expected 2 edges") != std::string::npos);
  CHECK(error_of("3 1\n1 2\n2 3\n").find("line 3") != std::string::npos);
  CHECK(error_of("").find("empty") != std::string::npos);
}

TEST_CASE("named graphs") {
  CHECK(FiniteGraph::named("c4").edge_count() == 4);
  CHECK(FiniteGraph::named("triangle").edge_count() == 3);
  CHECK(FiniteGraph::named("cube").regular_degree() == 3);
  CHECK(FiniteGraph::named("k33").edge_count() == 9);
  CHECK_THROWS_AS(FiniteGraph::named("dodecahedron"), ValidationError);
  CHECK(FiniteGraph::hypercube(3).is_bipartite());
  CHECK_FALSE(FiniteGraph::cycle(5).is_bipartite());
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(kInfinity) == "inf");
  CHECK(std::stod(format_double(1.0 / 3)) == 1.0 / 3);
}
