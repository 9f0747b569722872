#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "group.hpp"
#include "quotient.hpp"
#include "test_util.hpp"

using namespace gconv;

TEST_CASE("build_group: small families") {
  auto z4 = build_group("Z4");
  CHECK(z4->order() == 4);
  CHECK(z4->mul(1, 3) == 0);
  CHECK(z4->labels() == std::vector<std::string>{"0", "1", "2", "3"});

  auto s3 = build_group("S3");
  CHECK(s3->order() == 6);
  CHECK(s3->label(0) == "e");

  auto d4 = build_group("D4");
  CHECK(d4->order() == 8);
  CHECK(d4->check_associativity());
}

TEST_CASE("build_group: Cayley invariants hold for every test group") {
  for (const char* spec : {"Z1", "Z12", "D1", "D2", "D3", "D4", "D6", "S1", "S2", "S3", "S4", "S5", "Z4xZ4",
                           "Z8xZ8", "S3xZ2", "D3xZ2xZ2"}) {
    CAPTURE(spec);
    auto g = build_group(spec);
    CHECK(g->check_identity());
    CHECK(g->check_inverse());
    CHECK(g->check_latin_square());
    if (g->order() <= 120) CHECK(g->check_associativity());
  }
}

TEST_CASE("build_group: product labels and mixed-radix ids") {
  auto g = build_group("Z4xZ4");
  CHECK(g->order() == 16);
  CHECK(g->label(5) == "1|1");
  CHECK(g->mul(g->parse_element("1|3"), g->parse_element("3|2")) == g->parse_element("0|1"));
}

TEST_CASE("build_group: errors") {
  CHECK_THROWS_AS(build_group("Q8"), ParseError);
  CHECK_THROWS_AS(build_group("Z"), ParseError);
  CHECK_THROWS_AS(build_group("Z0"), ParseError);
  CHECK_THROWS_AS(build_group("Z4x"), ParseError);
  CHECK_THROWS_AS(build_group("S7"), ResourceError);
  CHECK_THROWS_AS(build_group("S6xZ2"), ResourceError);
  CHECK(build_group("S6")->order() == 720);
}

TEST_CASE("subgroup_from_generators") {
  auto s3 = build_group("S3");
  auto h = subgroup_from_labels(s3, "(12)");
  CHECK(h->order() == 2);
  CHECK(h->contains(0));

  CHECK(subgroup_from_generators(s3, {})->order() == 1);

  // Brute-force closure oracle: keep multiplying until nothing new appears.
  auto s4 = build_group("S4");
  std::vector<element_t> gens{s4->parse_element("(12)"), s4->parse_element("(123)")};
  std::set<element_t> oracle{0};
  for (bool grew = true; grew;) {
    grew = false;
    for (element_t a : std::vector<element_t>(oracle.begin(), oracle.end()))
      for (element_t b : gens) grew |= oracle.insert(s4->mul(a, b)).second;
  }
  auto s3_in_s4 = subgroup_from_generators(s4, gens);
  CHECK(s3_in_s4->order() == 6);
  CHECK(std::vector<element_t>(oracle.begin(), oracle.end()) == s3_in_s4->members());
  for (element_t m : s3_in_s4->members()) CHECK(s4->label(m).find('4') == std::string::npos);

  CHECK_THROWS_AS(subgroup_from_labels(s3, "(14)"), ParseError);
}

TEST_CASE("coset_space: counts and partition") {
  auto s3 = build_group("S3");
  auto h = subgroup_from_labels(s3, "(12)");
  auto left = left_space(h);
  CHECK(left->size() == 3);
  auto dbl = double_space(h, h);
  CHECK(dbl->size() == 2);
  std::multiset<std::size_t> sizes{dbl->coset(0).size(), dbl->coset(1).size()};
  CHECK(sizes == std::multiset<std::size_t>{2, 4});

  auto triv = left_space(trivial_subgroup(s3));
  CHECK(triv->size() == 6);
  for (element_t g = 0; g < 6; ++g) CHECK(triv->coset(triv->point_of(g)) == std::vector<element_t>{g});

  CHECK_THROWS(coset_space(s3, SpaceKind::Double, h, nullptr));

  for (auto space : {left, right_space(h), dbl}) {
    std::vector<int> hit(6, 0);
    for (std::size_t x = 0; x < space->size(); ++x) {
      CHECK(space->representative(x) == space->coset(x).front());
      if (x > 0) CHECK(space->representative(x) > space->representative(x - 1));
      for (element_t g : space->coset(x)) {
        ++hit[g];
        CHECK(space->point_of(g) == x);
      }
    }
    CHECK(std::all_of(hit.begin(), hit.end(), [](int c) { return c == 1; }));
  }
}

TEST_CASE("act: identity, definition, composition and transitivity") {
  auto s3 = build_group("S3");
  auto h = subgroup_from_labels(s3, "(12)");
  auto X = left_space(h);
  for (std::size_t x = 0; x < X->size(); ++x) CHECK(act(0, x, *X) == x);
  const element_t c = s3->parse_element("(123)");
  CHECK(act(c, 0, *X) == X->point_of(c));

  for (const char* spec : {"S3", "S4", "D4", "Z12"}) {
    auto g = build_group(spec);
    for (auto H : {trivial_subgroup(g), subgroup_from_generators(g, {g->generators()[0]})}) {
      auto sp = left_space(H);
      for (element_t a = 0; a < g->order(); ++a)
        for (element_t b = 0; b < g->order(); ++b)
          for (std::size_t x = 0; x < sp->size(); ++x)
            REQUIRE(act(g->mul(b, a), x, *sp) == act(b, act(a, x, *sp), *sp));
      std::set<std::size_t> orbit;
      for (element_t a = 0; a < g->order(); ++a) orbit.insert(act(a, 0, *sp));
      CHECK(orbit.size() == sp->size());
    }
  }
  CHECK_THROWS(act(1, 0, *right_space(h)));
}

TEST_CASE("translate is a left action and lift/project are consistent") {
  std::mt19937_64 rng(3);
  auto s3 = build_group("S3");
  auto h = subgroup_from_labels(s3, "(12)");
  auto X = left_space(h);
  auto f = test::random_function(X, 1, 1, rng);
  CHECK(translate(0, f).max_abs_diff(f) == 0.0);
  for (element_t a = 0; a < 6; ++a)
    for (element_t b = 0; b < 6; ++b)
      CHECK(translate(b, translate(a, f)).max_abs_diff(translate(s3->mul(b, a), f)) == 0.0);

  // Indicator of one coset lifts to the indicator of its elements.
  std::vector<cplx> ind(X->size(), 0.0);
  ind[1] = 1.0;
  auto up = lift(SpaceFunction::scalar(X, ind));
  for (element_t g = 0; g < 6; ++g) CHECK(up.scalar_at(g) == (X->point_of(g) == 1 ? cplx(1) : cplx(0)));

  // project(lift(f)) = f, and projection agrees with a per-coset mean.
  for (auto sp : {X, right_space(h), double_space(h, h)}) {
    auto q = test::random_function(sp, 2, 1, rng);
    CHECK(project(lift(q), sp).max_abs_diff(q) < 1e-15);
  }
  auto onG = test::random_function(group_space(s3), 1, 1, rng);
  auto down = project(onG, X);
  for (std::size_t x = 0; x < X->size(); ++x) {
    cplx mean = 0;
    int count = 0;
    for (element_t g = 0; g < 6; ++g)
      if (std::find(X->coset(x).begin(), X->coset(x).end(), g) != X->coset(x).end()) {
        mean += onG.scalar_at(g);
        ++count;
      }
    CHECK(std::abs(down.scalar_at(x) - mean / double(count)) < 1e-15);
  }
  auto c = SpaceFunction::scalar(group_space(s3), std::vector<cplx>(6, cplx(2.5, -1)));
  CHECK(project(c, X).max_abs_diff(SpaceFunction::scalar(X, std::vector<cplx>(3, cplx(2.5, -1)))) < 1e-15);

  // lift . project is idempotent.
  auto lp = lift(project(onG, X));
  CHECK(lift(project(lp, X)).max_abs_diff(lp) < 1e-15);
}

TEST_CASE("lifted functions carry one-sided invariances exactly") {
  std::mt19937_64 rng(5);
  auto s4 = build_group("S4");
  auto H = subgroup_from_labels(s4, "(12) (123)");
  auto K = subgroup_from_labels(s4, "(12) (34)");
  auto fl = lift(test::random_function(left_space(H), 1, 1, rng));
  auto fr = lift(test::random_function(right_space(H), 1, 1, rng));
  auto fd = lift(test::random_function(double_space(H, K), 1, 1, rng));
  for (element_t u = 0; u < s4->order(); ++u) {
    for (element_t h : H->members()) {
      CHECK(fl.scalar_at(s4->mul(u, h)) == fl.scalar_at(u));
      CHECK(fr.scalar_at(s4->mul(h, u)) == fr.scalar_at(u));
      CHECK(fd.scalar_at(s4->mul(h, u)) == fd.scalar_at(u));
    }
    for (element_t k : K->members()) CHECK(fd.scalar_at(s4->mul(u, k)) == fd.scalar_at(u));
  }
}
