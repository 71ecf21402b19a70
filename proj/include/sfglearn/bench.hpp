#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "sfglearn/field.hpp"
#include "sfglearn/learner.hpp"
#include "sfglearn/streams.hpp"
#include "sfglearn/teacher.hpp"

namespace sfglearn {

struct BenchRow {
  std::size_t order = 0;
  GrowthStrategy strategy = GrowthStrategy::Linear;
  QueryStats stats;
  double wall_time_ms = 0.0;
  std::uint64_t field_ops = 0;
};

inline const char* strategy_name(GrowthStrategy s) {
  return s == GrowthStrategy::Linear ? "linear" : "doubling";
}

// The harness measures algorithmic growth, so it wants unit-cost field
// operations: it runs over the mod-97 field, where every multiplication
// costs the same. Rational coefficients grow with the order and would turn
// the timing into a bignum benchmark instead.
inline constexpr std::uint64_t kBenchPrime = 97;

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t order, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (order * 1000003ULL + trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// One teacher per (order, trial): a random recurrence with coefficients drawn
// uniformly from {-2..2}, resampled until its Hankel rank confirms the exact
// order. Both strategies learn the same teacher. Deterministic given seed.
inline std::vector<BenchRow> run_bench(const std::vector<std::size_t>& orders,
                                       std::size_t trials, std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  rows.reserve(orders.size() * trials * 2);
  for (std::size_t order : orders) {
    for (std::size_t trial = 0; trial < trials; ++trial) {
      std::mt19937_64 rng(detail::mix_seed(seed, order, trial));
      auto draw = [](std::mt19937_64& r) {
        long v = static_cast<long>(r() % 5) - 2;
        return ModInt::make(v, kBenchPrime);
      };
      RecurrenceSpec<ModInt> spec = random_recurrence_of_order<ModInt>(order, rng, draw);
      for (GrowthStrategy strategy : {GrowthStrategy::Linear, GrowthStrategy::Doubling}) {
        Teacher<ModInt> teacher{spec};
        LearnerConfig config;
        config.growth = strategy;
        fieldops::counter() = 0;
        auto t0 = Clock::now();
        LearnResult<ModInt> result = learn(teacher, config);
        auto t1 = Clock::now();
        BenchRow row;
        row.order = order;
        row.strategy = strategy;
        row.stats = result.stats;
        row.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        row.field_ops = fieldops::counter();
        rows.push_back(row);
      }
    }
  }
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out =
      "order,strategy,membership_queries,max_index,equivalence_queries,"
      "closedness_checks,wall_time_ms,field_ops\n";
  for (const BenchRow& r : rows) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%zu,%s,%zu,%zu,%zu,%zu,%.3f,%llu\n", r.order,
                  strategy_name(r.strategy), r.stats.membership_queries, r.stats.max_index,
                  r.stats.equivalence_queries, r.stats.closedness_checks, r.wall_time_ms,
                  static_cast<unsigned long long>(r.field_ops));
    out += buf;
  }
  return out;
}

}  // namespace sfglearn
