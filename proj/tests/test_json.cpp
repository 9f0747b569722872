#include <doctest.h>

#include <random>

#include "commands.hpp"
#include "test_util.hpp"

using namespace gconv;

TEST_CASE("complex and matrix JSON") {
  CHECK(complex_from_json(json(2.5)) == cplx(2.5, 0));
  CHECK(complex_from_json(json::array({1, -2})) == cplx(1, -2));
  CHECK_THROWS_AS(complex_from_json(json("x")), ParseError);
  CHECK_THROWS_AS(complex_from_json(json::array({1, 2, 3})), ParseError);
  Mat m(2, 3);
  m << cplx(1, 2), 3, cplx(0, -1), 4, 5, cplx(6, 7);
  CHECK(max_abs(matrix_from_json(matrix_to_json(m)) - m) == 0.0);
  CHECK_THROWS_AS(matrix_from_json(json::parse("[[1, 2], [3]]")), ParseError);
}

TEST_CASE("space JSON round trip") {
  auto s4 = build_group("S4");
  auto H = subgroup_from_labels(s4, "(12) (123)");
  auto K = subgroup_from_labels(s4, "(12) (34)");
  for (auto sp : {group_space(s4), left_space(H), right_space(K), double_space(H, K)}) {
    auto back = space_from_json(space_to_json(*sp));
    CHECK(back->kind() == sp->kind());
    REQUIRE(back->size() == sp->size());
    for (std::size_t x = 0; x < sp->size(); ++x) CHECK(back->coset(x) == sp->coset(x));
  }
  CHECK_THROWS_AS(space_from_json(space_to_json(*left_space(H)), build_group("S3")), MismatchError);
  CHECK_THROWS_AS(space_from_json(json::parse(R"j({"group": "S4", "quotient": {"kind": "SIDEWAYS"}})j")), ParseError);
  CHECK_THROWS_AS(space_from_json(json::parse(R"j({"group": "S4", "quotient": {"kind": "DOUBLE", "H": ["(12)"]}})j")),
                  ParseError);
  // A bare quotient defaults to LEFT; H given as one string.
  auto sp = space_from_json(json::parse(R"j({"group": "S3", "quotient": {"H": "(12)"}})j"));
  CHECK(sp->kind() == SpaceKind::Left);
  CHECK(sp->size() == 3);
}

TEST_CASE("function JSON round trip is lossless") {
  std::mt19937_64 rng(11);
  auto d4 = build_group("D4");
  auto H = subgroup_from_labels(d4, "s0");
  for (auto sp : {group_space(d4), left_space(H), double_space(H, H)}) {
    auto f = test::random_function(sp, 2, 3, rng);
    auto text = function_to_json(f).dump();
    auto back = function_from_json(json::parse(text));
    CHECK(back.rows() == 2);
    CHECK(back.cols() == 3);
    CHECK(back.max_abs_diff(f) == 0.0);
  }
  auto sp = left_space(H);
  auto j = json::parse(R"j({"space": {"group": "D4", "quotient": {"kind": "LEFT", "H": ["s0"]}},
                           "values": [1, [0, 1], 2.5, [3, -1]]})j");
  auto f = function_from_json(j);
  CHECK(f.scalar_at(1) == cplx(0, 1));
  j["values"].erase(0);
  CHECK_THROWS_AS(function_from_json(j), MismatchError);
}

TEST_CASE("network JSON round trip") {
  std::mt19937_64 rng(12);
  auto s4 = build_group("S4");
  auto H0 = subgroup_from_labels(s4, "(12) (123)");
  auto H1 = subgroup_from_labels(s4, "(12) (34)");
  auto net = random_network(s4, {H0, H1, H0}, {2, 3, 1}, Nonlinearity::ModulusRelu, rng);
  auto back = network_from_json(json::parse(network_to_json(net).dump()));
  REQUIRE(back.layers().size() == 2);
  CHECK(back.layers()[1].nonlinearity == Nonlinearity::ModulusRelu);
  auto f = test::random_function(left_space(H0), 1, 2, rng);
  auto g = function_from_json(function_to_json(f), back.group());
  CHECK(forward(back, g).back().max_abs_diff(forward(net, f).back()) == 0.0);
  CHECK(network_to_json(back) == network_to_json(net));
}

TEST_CASE("report pass logic and JSON round trip") {
  Report r;
  r.command = "verify";
  r.config = {{"seed", 3}};
  r.add("small", 1e-12, 1e-9);
  r.add("gap", 0.3, 0.1, "above");
  r.add_count("count", 4, 4);
  CHECK(r.pass());
  r.add_count("off by one", 5, 4);
  CHECK_FALSE(r.pass());
  CHECK_FALSE(r.to_json().contains("result"));
  CHECK_FALSE(r.to_json()["checks"][0].contains("seconds"));

  r.timing = true;
  r.checks[0].seconds = 0.25;
  r.result = {{"x", 1}};
  auto back = Report::from_json(json::parse(r.to_json().dump()));
  CHECK(back.to_json() == r.to_json());
  CHECK(back.timing);
  CHECK(back.table().find("FAILED") != std::string::npos);
}

TEST_CASE("commands: group, irreps, solve-basis") {
  auto g = run_command("group", json::parse(R"j({"group": "Z4"})j"));
  CHECK(g.pass());
  CHECK(g.result["order"] == 4);
  CHECK(g.result["labels"] == json::parse(R"j(["0", "1", "2", "3"])j"));

  auto c = run_command("group", json::parse(R"j({"action": "cosets", "group": "S3", "quotient": {"kind": "RIGHT", "H": "(12)"}})j"));
  CHECK(c.pass());
  CHECK(c.result["size"] == 3);

  auto i = run_command("irreps", json::parse(R"j({"group": "S4"})j"));
  CHECK(i.pass());
  CHECK(i.result["irreps"].size() == 5);

  auto b = run_command("solve-basis", json::parse(R"j({"group": "S4", "h": "(12) (123)", "k": "(12) (34)"})j"));
  CHECK(b.pass());
  CHECK(b.result["dimension"] == 2);

  CHECK_THROWS_AS(run_command("nope", json::object()), ParseError);
  CHECK_THROWS_AS(run_command("group", json::parse(R"j({"group": "Q8"})j")), ParseError);
}

TEST_CASE("commands: convolution routes agree for every case") {
  std::mt19937_64 rng(13);
  auto s4 = build_group("S4");
  auto H = subgroup_from_labels(s4, "(12) (123)");
  auto K = subgroup_from_labels(s4, "(12) (34)");
  struct Pair {
    ConvolutionCase c;
    SpacePtr a, b;
  };
  for (const auto& p : {Pair{ConvolutionCase::Def4, left_space(H), left_space(K)},
                        Pair{ConvolutionCase::One, group_space(s4), left_space(H)},
                        Pair{ConvolutionCase::Two, left_space(H), right_space(H)},
                        Pair{ConvolutionCase::Three, left_space(H), double_space(H, K)}}) {
    auto f = test::random_function(p.a, 1, 1, rng);
    auto g = test::random_function(p.b, 1, 1, rng);
    auto a = run_convolution(p.c, f, g, false);
    auto b = run_convolution(p.c, f, g, true);
    CHECK(a.space()->size() == b.space()->size());
    CHECK(a.max_abs_diff(b) < 1e-10);
  }
}

TEST_CASE("commands: deterministic output for a fixed seed") {
  auto req = json::parse(R"j({"name": "mpnn", "n": 4, "layers": 2, "seed": 7})j");
  CHECK(run_command("demo", req).to_json().dump() == run_command("demo", req).to_json().dump());
  auto v = json::parse(R"j({"suite": "representatives", "seed": 5})j");
  CHECK(run_command("verify", v).to_json().dump() == run_command("verify", v).to_json().dump());
}
