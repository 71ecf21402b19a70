#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sfglearn/csfg.hpp"
#include "sfglearn/obstable.hpp"
#include "sfglearn/teacher.hpp"
#include "sfglearn/wsa.hpp"

namespace sfglearn {

struct LearnerConfig {
  GrowthStrategy growth = GrowthStrategy::Linear;
  EquivalenceMode equivalence_mode = EquivalenceMode::exact();
  std::size_t max_size = 4096;  // hard cap on i, keeps bounded-mode runs finite
};

// One record per table size visited: whether the table closed there and, if a
// hypothesis was posed, the oracle's verdict.
struct IterationRecord {
  std::size_t iteration;
  std::size_t size;
  bool closed;
  std::optional<bool> equivalence;
};

template <typename F>
struct LearnResult {
  Wsa<F> wsa;
  Csfg<F> csfg;
  std::size_t order = 0;
  QueryStats stats;
  std::vector<IterationRecord> trace;
};

// The main learning loop. Starting from the size-1 table, expand until the
// table is closed, read off the hypothesis automaton and flow graph, and ask
// the oracle; a "no" (or a degenerate register system) expands the table and
// repeats. Each table size is checked for closedness exactly once.
template <typename F>
LearnResult<F> learn(Teacher<F>& teacher, const LearnerConfig& config = {}) {
  if (config.equivalence_mode.is_exact && !teacher.order_bound()) {
    throw Error("exact equivalence mode requires a teacher with a known order bound");
  }
  ObservationTable<F> table([&teacher](std::size_t n) { return teacher.membership(n); });
  std::size_t closedness_checks = 0;
  std::size_t solver_calls = 0;
  std::vector<IterationRecord> trace;

  while (true) {
    if (table.size() > config.max_size) {
      throw SizeCapExceeded("observation table exceeded max_size " +
                            std::to_string(config.max_size));
    }
    ++closedness_checks;
    ++solver_calls;
    SolveOutcome<F> cs = table.closure_coefficients();
    const std::size_t i = table.size();
    if (!cs) {
      trace.push_back({trace.size() + 1, i, false, std::nullopt});
      table.expand(config.growth);
      continue;
    }

    std::vector<F> sigma = table.prefix(i);
    Wsa<F> wsa = wsa_from_closed_table(sigma, *cs);
    bool accepted = false;
    std::optional<Csfg<F>> csfg;
    try {
      ++solver_calls;
      csfg = csfg_from_closed_table(sigma, *cs);
      accepted = teacher.equivalence(*csfg, config.equivalence_mode);
    } catch (const SingularSystem&) {
      // Degenerate register system: the hypothesis cannot be realized, treat
      // it like a rejected one and grow the table.
      accepted = false;
    }
    trace.push_back({trace.size() + 1, i, true, accepted});
    if (!accepted) {
      table.expand(config.growth);
      continue;
    }

    LearnResult<F> result;
    result.wsa = std::move(wsa);
    result.csfg = std::move(*csfg);
    result.order = i;
    result.stats = teacher.stats();
    result.stats.closedness_checks = closedness_checks;
    result.stats.solver_calls = solver_calls;
    result.trace = std::move(trace);
    return result;
  }
}

// One CSV row per iteration plus a closing stats row.
template <typename F>
std::string learn_trace_csv(const LearnResult<F>& result) {
  std::ostringstream os;
  os << "iteration,size,closed,equivalence\n";
  for (const IterationRecord& r : result.trace) {
    os << r.iteration << ',' << r.size << ',' << (r.closed ? "yes" : "no") << ',';
    if (r.equivalence) {
      os << (*r.equivalence ? "yes" : "no");
    } else {
      os << "-";
    }
    os << '\n';
  }
  const QueryStats& s = result.stats;
  os << "stats,membership_queries=" << s.membership_queries << ",max_index=" << s.max_index
     << ",equivalence_queries=" << s.equivalence_queries
     << ",closedness_checks=" << s.closedness_checks << ",solver_calls=" << s.solver_calls
     << '\n';
  return os.str();
}

}  // namespace sfglearn
