#include <doctest.h>

#include <random>

#include "sfglearn/csfg.hpp"
#include "sfglearn/field.hpp"
#include "sfglearn/streams.hpp"
#include "sfglearn/teacher.hpp"
#include "sfglearn/wsa.hpp"

using namespace sfglearn;

namespace {

std::vector<Rational> vals(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

Polynomial<Rational> poly(std::initializer_list<long> coeffs) {
  std::vector<Rational> v;
  for (long c : coeffs) v.push_back(Rational(c));
  return Polynomial<Rational>::of(std::move(v));
}

TeacherSpec<Rational> fib_spec() {
  return RationalStreamSpec<Rational>{poly({1}), poly({1, -1, -1})};
}

Csfg<Rational> counter_graph() {
  Csfg<Rational> g;
  std::size_t r1 = g.add_vertex(VertexKind::Register, Rational(1));
  std::size_t r2 = g.add_vertex(VertexKind::Register, Rational(1));
  std::size_t c1 = g.add_vertex(VertexKind::Copier);
  std::size_t c2 = g.add_vertex(VertexKind::Copier);
  std::size_t a = g.add_vertex(VertexKind::Adder);
  std::size_t out = g.add_vertex(VertexKind::Output);
  g.add_edge(r1, c1);
  g.add_edge(c1, out);
  g.add_edge(c1, a);
  g.add_edge(r2, c2);
  g.add_edge(c2, a);
  g.add_edge(c2, r2);
  g.add_edge(a, r1);
  return g;
}

Wsa<Rational> counter_wsa() {
  Wsa<Rational> w;
  w.n_states = 2;
  w.start = 0;
  w.output = vals({1, 2});
  w.trans = Matrix<Rational>(2, 2);
  w.trans.at(0, 1) = Rational(1);
  w.trans.at(1, 0) = Rational(-1);
  w.trans.at(1, 1) = Rational(2);
  return w;
}

}  // namespace

TEST_CASE("membership answers across teacher variants") {
  Teacher<Rational> fib{fib_spec()};
  CHECK(fib.membership(4) == Rational(5));
  CHECK(fib.membership(0) == Rational(1));

  Teacher<Rational> hidden_graph{TeacherSpec<Rational>{counter_graph()}};
  CHECK(hidden_graph.membership(2) == Rational(3));

  Teacher<Rational> hidden_wsa{TeacherSpec<Rational>{counter_wsa()}};
  CHECK(hidden_wsa.membership(3) == Rational(4));

  Teacher<Rational> rec{
      TeacherSpec<Rational>{RecurrenceSpec<Rational>{vals({1, 1}), vals({1, 1})}}};
  CHECK(rec.membership(5) == Rational(8));
}

TEST_CASE("membership counts distinct indices only") {
  Teacher<Rational> t{fib_spec()};
  (void)t.membership(3);
  (void)t.membership(3);
  (void)t.membership(1);
  (void)t.membership(3);
  CHECK(t.stats().membership_queries == 2);
  CHECK(t.stats().max_index == 3);
}

TEST_CASE("raw prefix teachers stop at their data") {
  RawPrefixSpec<Rational> raw{vals({4, 2, 1}), std::nullopt};
  Teacher<Rational> t{TeacherSpec<Rational>{raw}};
  CHECK(t.membership(2) == Rational(1));
  CHECK_THROWS_AS(t.membership(3), IndexBeyondPrefix);
  CHECK_THROWS_AS(t.peek_prefix(4), PrefixTooShort);
}

TEST_CASE("order bounds per teacher variant") {
  CHECK(Teacher<Rational>{fib_spec()}.order_bound() == 2);
  CHECK(Teacher<Rational>{TeacherSpec<Rational>{counter_wsa()}}.order_bound() == 2);
  CHECK(Teacher<Rational>{TeacherSpec<Rational>{counter_graph()}}.order_bound() == 2);
  CHECK(Teacher<Rational>{
            TeacherSpec<Rational>{RecurrenceSpec<Rational>{vals({1, 1}), vals({1, 1})}}}
            .order_bound() == 2);
  CHECK(!Teacher<Rational>{TeacherSpec<Rational>{RawPrefixSpec<Rational>{vals({1}), std::nullopt}}}
             .order_bound()
             .has_value());
  CHECK(Teacher<Rational>{TeacherSpec<Rational>{RawPrefixSpec<Rational>{vals({1}), 1}}}
            .order_bound() == 1);
  // numerator degree can dominate: p = (0,1), q = (1) is the one-shot-at-1 stream of order 2
  CHECK(Teacher<Rational>{TeacherSpec<Rational>{RationalStreamSpec<Rational>{
            poly({0, 1}), poly({1})}}}
            .order_bound() == 2);
}

TEST_CASE("equivalence verdicts on the worked hypotheses") {
  Teacher<Rational> t{fib_spec()};
  // constant-1 one-state hypothesis: first learning round's guess
  Wsa<Rational> constant = wsa_from_closed_table(vals({1}), vals({1}));
  CHECK(!t.equivalence(constant, EquivalenceMode::exact()));
  CHECK(t.last_mismatch() == 2);  // 1,1,1,... vs 1,1,2,...

  Wsa<Rational> learned = wsa_from_closed_table(vals({1, 1}), vals({1, 1}));
  CHECK(t.equivalence(learned, EquivalenceMode::exact()));
  CHECK(t.stats().equivalence_queries == 2);

  Csfg<Rational> learned_graph = csfg_from_closed_table(vals({1, 1}), vals({1, 1}));
  CHECK(t.equivalence(learned_graph, EquivalenceMode::exact()));
}

TEST_CASE("a teacher accepts its own hidden automaton") {
  Teacher<Rational> t{TeacherSpec<Rational>{counter_wsa()}};
  CHECK(t.equivalence(counter_wsa(), EquivalenceMode::exact()));
  Teacher<Rational> g{TeacherSpec<Rational>{counter_graph()}};
  CHECK(g.equivalence(counter_graph(), EquivalenceMode::exact()));
}

TEST_CASE("exact mode requires an order bound") {
  RawPrefixSpec<Rational> raw{vals({1, 2, 4, 8, 16, 32}), std::nullopt};
  Teacher<Rational> t{TeacherSpec<Rational>{raw}};
  Wsa<Rational> hyp = wsa_from_closed_table(vals({1}), vals({2}));
  CHECK_THROWS_AS(t.equivalence(hyp, EquivalenceMode::exact()), Error);
  // bounded mode works within the prefix and overruns beyond it
  CHECK(t.equivalence(hyp, EquivalenceMode::bounded(6)));
  CHECK_THROWS_AS(t.equivalence(hyp, EquivalenceMode::bounded(7)), PrefixTooShort);
}

TEST_CASE("bounded mode is a semi-decision") {
  // stream 1,1,2,3,5,8,... vs constant-1: agree on 2 positions, differ later
  Teacher<Rational> t{fib_spec()};
  Wsa<Rational> constant = wsa_from_closed_table(vals({1}), vals({1}));
  CHECK(t.equivalence(constant, EquivalenceMode::bounded(2)));   // fooled
  CHECK(!t.equivalence(constant, EquivalenceMode::bounded(5)));  // caught
}

TEST_CASE("exact verdicts match long brute-force comparison") {
  std::mt19937_64 rng(5150);
  auto draw = [&](std::mt19937_64& r) { return Rational(static_cast<long>(r() % 5) - 2); };
  int disagreements = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 5;
    RecurrenceSpec<Rational> spec = random_recurrence_of_order<Rational>(n, rng, draw);
    Teacher<Rational> t{TeacherSpec<Rational>{spec}};
    // random small hypothesis automaton
    Wsa<Rational> hyp;
    hyp.n_states = 1 + rng() % 3;
    hyp.start = 0;
    hyp.trans = Matrix<Rational>(hyp.n_states, hyp.n_states);
    hyp.output.resize(hyp.n_states);
    for (auto& o : hyp.output) o = Rational(static_cast<long>(rng() % 3) - 1);
    for (std::size_t r = 0; r < hyp.n_states; ++r)
      for (std::size_t c = 0; c < hyp.n_states; ++c)
        hyp.trans.at(r, c) = Rational(static_cast<long>(rng() % 3) - 1);
    bool verdict = t.equivalence(hyp, EquivalenceMode::exact());
    bool brute = wsa_stream(hyp, 50) == t.peek_prefix(50);
    CHECK(verdict == brute);
    if (!verdict) ++disagreements;
  }
  CHECK(disagreements > 0);  // the sample included genuine rejections
}

TEST_CASE("hidden-graph teachers validate their graph") {
  Csfg<Rational> broken;
  broken.add_vertex(VertexKind::Register, Rational(1));
  Teacher<Rational> t{TeacherSpec<Rational>{broken}};
  CHECK_THROWS_AS(t.membership(0), InvalidGraph);
}

TEST_CASE("teachers over the modular field") {
  RecurrenceSpec<ModInt> spec{{ModInt::make(1, 97), ModInt::make(1, 97)},
                              {ModInt::make(1, 97), ModInt::make(1, 97)}};
  Teacher<ModInt> t{TeacherSpec<ModInt>{spec}};
  CHECK(t.membership(5) == ModInt::make(8, 97));
  std::vector<ModInt> sigma{ModInt::make(1, 97), ModInt::make(1, 97)};
  std::vector<ModInt> cs{ModInt::make(1, 97), ModInt::make(1, 97)};
  CHECK(t.equivalence(wsa_from_closed_table(sigma, cs), EquivalenceMode::exact()));
}
