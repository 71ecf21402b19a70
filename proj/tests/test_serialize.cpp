#include <doctest.h>

#include "sfglearn/learner.hpp"
#include "sfglearn/serialize.hpp"

using namespace sfglearn;

namespace {

std::vector<Rational> vals(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

}  // namespace

TEST_CASE("field headers parse and serialize") {
  CHECK(field_from_json(json::parse(R"({"field":{"kind":"rational"}})")).kind ==
        FieldDesc::Kind::Rational);
  FieldDesc mod = field_from_json(json::parse(R"({"field":{"kind":"mod","p":97}})"));
  CHECK(mod.kind == FieldDesc::Kind::Mod);
  CHECK(mod.p == 97);
  CHECK(field_to_json(FieldDesc::rational())["kind"] == "rational");
  CHECK(field_to_json(FieldDesc::mod(97))["p"] == 97);

  CHECK_THROWS_AS(field_from_json(json::parse(R"({"x":1})")), ParseError);
  CHECK_THROWS_AS(field_from_json(json::parse(R"({"field":{"kind":"float"}})")), ParseError);
  CHECK_THROWS_AS(field_from_json(json::parse(R"({"field":{"kind":"mod","p":6}})")), Error);
}

TEST_CASE("scalars are strings in num/den form") {
  FieldDesc fd = FieldDesc::rational();
  std::vector<Rational> xs = scalars_from_json<Rational>(json::parse(R"(["1","-3/7","0"])"), fd);
  CHECK(xs == std::vector<Rational>{Rational(1), Rational(-3, 7), Rational(0)});
  CHECK(scalars_to_json(xs) == json::parse(R"(["1","-3/7","0"])"));
  CHECK_THROWS_AS(scalars_from_json<Rational>(json::parse(R"([1])"), fd), ParseError);
  CHECK_THROWS_AS(scalars_from_json<Rational>(json::parse(R"("1")"), fd), ParseError);
}

TEST_CASE("the documented teacher example parses") {
  json doc = json::parse(
      R"({"field":{"kind":"rational"},"kind":"rational_function","p":["1"],"q":["1","-1","-1"]})");
  FieldDesc fd = field_from_json(doc);
  Teacher<Rational> t{teacher_from_json<Rational>(doc, fd)};
  CHECK(t.peek_prefix(6) == vals({1, 1, 2, 3, 5, 8}));
  CHECK(t.order_bound() == 2);
}

TEST_CASE("teacher variants round trip through their payloads") {
  FieldDesc fd = FieldDesc::rational();

  SUBCASE("recurrence") {
    json doc = json::parse(
        R"({"field":{"kind":"rational"},"kind":"recurrence","initial":["1","1"],"coeffs":["1","1"]})");
    Teacher<Rational> t{teacher_from_json<Rational>(doc, fd)};
    CHECK(t.membership(5) == Rational(8));
    CHECK_THROWS_AS(
        teacher_from_json<Rational>(
            json::parse(
                R"({"field":{"kind":"rational"},"kind":"recurrence","initial":["1"],"coeffs":["1","1"]})"),
            fd),
        ParseError);
  }

  SUBCASE("raw prefix") {
    json doc = json::parse(
        R"({"field":{"kind":"rational"},"kind":"raw_prefix","values":["2","4","8"],"order_bound":1})");
    Teacher<Rational> t{teacher_from_json<Rational>(doc, fd)};
    CHECK(t.membership(2) == Rational(8));
    CHECK(t.order_bound() == 1);
  }

  SUBCASE("unknown kind") {
    CHECK_THROWS_AS(
        teacher_from_json<Rational>(
            json::parse(R"({"field":{"kind":"rational"},"kind":"magic"})"), fd),
        ParseError);
  }
}

TEST_CASE("automaton documents round trip losslessly") {
  FieldDesc fd = FieldDesc::rational();
  Wsa<Rational> w = wsa_from_closed_table(vals({1, 1}), vals({1, 1}));
  json doc = wsa_to_json(w, fd);
  CHECK(doc["kind"] == "wsa");
  Wsa<Rational> back = wsa_from_json<Rational>(doc, fd);
  CHECK(back.n_states == 2);
  CHECK(back.output == w.output);
  CHECK(back.trans == w.trans);
  CHECK(back.start == w.start);
  CHECK(wsa_to_json(back, fd) == doc);

  CHECK_THROWS_AS(wsa_from_json<Rational>(
                      json::parse(R"({"kind":"wsa","states":2,"start":0,"output":["1"],
                                      "transitions":[["1","0"],["0","1"]]})"),
                      fd),
                  ParseError);
}

TEST_CASE("graph documents round trip losslessly") {
  FieldDesc fd = FieldDesc::rational();
  Csfg<Rational> g = csfg_from_closed_table(vals({1, 1}), vals({1, 1}));
  json doc = csfg_to_json(g, fd);
  CHECK(doc["kind"] == "csfg");
  Csfg<Rational> back = csfg_from_json<Rational>(doc, fd);
  CHECK(back.vertices.size() == g.vertices.size());
  CHECK(back.edges == g.edges);
  CHECK(back.initial_state() == g.initial_state());
  CHECK(csfg_to_json(back, fd) == doc);
  CHECK(csfg_stream(back, 6) == csfg_stream(g, 6));

  CHECK_THROWS_AS(
      csfg_from_json<Rational>(
          json::parse(R"({"kind":"csfg","vertices":[{"kind":"gizmo"}],"edges":[]})"), fd),
      ParseError);
  CHECK_THROWS_AS(
      csfg_from_json<Rational>(
          json::parse(R"({"kind":"csfg","vertices":[{"kind":"adder"}],"edges":[[0]]})"), fd),
      ParseError);
}

TEST_CASE("model loader dispatches on kind") {
  FieldDesc fd = FieldDesc::rational();
  Wsa<Rational> w = wsa_from_closed_table(vals({1}), vals({2}));
  Model<Rational> m = model_from_json<Rational>(wsa_to_json(w, fd), fd);
  CHECK(std::holds_alternative<Wsa<Rational>>(m));
  Csfg<Rational> g = csfg_from_closed_table(vals({1}), vals({2}));
  Model<Rational> m2 = model_from_json<Rational>(csfg_to_json(g, fd), fd);
  CHECK(std::holds_alternative<Csfg<Rational>>(m2));
  CHECK_THROWS_AS(model_from_json<Rational>(json::parse(R"({"kind":"recurrence"})"), fd),
                  ParseError);
}

TEST_CASE("modular documents parse residues and fractions") {
  json doc = json::parse(
      R"({"field":{"kind":"mod","p":97},"kind":"recurrence","initial":["1","1/2"],"coeffs":["0","96"]})");
  FieldDesc fd = field_from_json(doc);
  Teacher<ModInt> t{teacher_from_json<ModInt>(doc, fd)};
  CHECK(t.membership(0) == ModInt::make(1, 97));
  CHECK(t.membership(1) == ModInt::make(49, 97));  // 1/2 mod 97
  // coeffs (0, -1): sigma_2 = -sigma_1
  CHECK(t.membership(2) == ModInt::make(48, 97));

  Wsa<ModInt> w;
  w.n_states = 1;
  w.start = 0;
  w.output = {ModInt::make(3, 97)};
  w.trans = Matrix<ModInt>(1, 1);
  w.trans.at(0, 0) = ModInt::make(5, 97);
  json round = wsa_to_json(w, fd);
  Wsa<ModInt> back = wsa_from_json<ModInt>(round, fd);
  CHECK(wsa_stream(back, 4) == wsa_stream(w, 4));
}

TEST_CASE("learned models survive a serialize-learn round trip") {
  FieldDesc fd = FieldDesc::rational();
  Teacher<Rational> t{
      TeacherSpec<Rational>{RecurrenceSpec<Rational>{vals({1, 2}), vals({-1, 2})}}};
  LearnResult<Rational> r = learn(t);
  // feed the serialized graph back in as a hidden-model teacher
  json doc = csfg_to_json(r.csfg, fd);
  Teacher<Rational> again{teacher_from_json<Rational>(doc, fd)};
  LearnResult<Rational> r2 = learn(again);
  CHECK(r2.order == r.order);
  CHECK(wsa_stream(r2.wsa, 12) == t.peek_prefix(12));
}
