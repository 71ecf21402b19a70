#pragma once

#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "sfglearn/csfg.hpp"
#include "sfglearn/errors.hpp"
#include "sfglearn/streams.hpp"
#include "sfglearn/wsa.hpp"

namespace sfglearn {

// Counters for one learning session. Membership queries count distinct
// stream indices; all fields only ever grow.
struct QueryStats {
  std::size_t membership_queries = 0;
  std::size_t max_index = 0;
  std::size_t equivalence_queries = 0;
  std::size_t closedness_checks = 0;
  std::size_t solver_calls = 0;
};

// A raw prefix can only answer membership up to its length; without a
// declared order bound it supports bounded equivalence only.
template <typename F>
struct RawPrefixSpec {
  std::vector<F> values;
  std::optional<std::size_t> order_bound;
};

template <typename F>
using TeacherSpec =
    std::variant<RationalStreamSpec<F>, RecurrenceSpec<F>, Wsa<F>, Csfg<F>, RawPrefixSpec<F>>;

struct EquivalenceMode {
  bool is_exact = true;
  std::size_t bound = 0;  // compared positions in bounded mode

  static EquivalenceMode exact() { return {true, 0}; }
  static EquivalenceMode bounded(std::size_t k) { return {false, k}; }
};

// Oracle for a hidden stream: answers membership (the n-th stream value) and
// equivalence (yes/no against a hypothesis) queries, keeping QueryStats.
//
// Exact equivalence compares n_h + N positions where n_h is the hypothesis
// state/register count and N the teacher's order bound: the difference of the
// two streams satisfies a linear recurrence of order at most n_h + N, so that
// many leading zeros force it to be identically zero. Bounded mode compares a
// fixed number of positions and is a semi-decision only.
template <typename F>
class Teacher {
 public:
  explicit Teacher(TeacherSpec<F> spec) : spec_(std::move(spec)) {
    if (const auto* raw = std::get_if<RawPrefixSpec<F>>(&spec_)) {
      prefix_ = raw->values;
    }
  }

  F membership(std::size_t n) {
    if (std::holds_alternative<RawPrefixSpec<F>>(spec_) && n >= prefix_.size()) {
      throw IndexBeyondPrefix("membership index beyond raw prefix");
    }
    ensure_prefix(n + 1);
    if (queried_.insert(n).second) {
      ++stats_.membership_queries;
      if (n > stats_.max_index) stats_.max_index = n;
    }
    return prefix_[n];
  }

  // Upper bound on the hidden stream's order, when one is derivable from the
  // spec: max(deg q, deg p + 1) for a rational function (the stream satisfies
  // a recurrence of that order), the recurrence order, the state count, the
  // register count, or the declared bound of a raw prefix.
  std::optional<std::size_t> order_bound() const {
    return std::visit(
        [](const auto& s) -> std::optional<std::size_t> {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, RationalStreamSpec<F>>) {
            std::size_t dq = s.q.length() == 0 ? 0 : s.q.length() - 1;
            return std::max(dq, s.p.length());
          } else if constexpr (std::is_same_v<T, RecurrenceSpec<F>>) {
            return s.order();
          } else if constexpr (std::is_same_v<T, Wsa<F>>) {
            return s.n_states;
          } else if constexpr (std::is_same_v<T, Csfg<F>>) {
            return s.register_count();
          } else {
            return s.order_bound;
          }
        },
        spec_);
  }

  bool equivalence(const Wsa<F>& hypothesis, EquivalenceMode mode) {
    return check_equivalence(hypothesis.n_states,
                             [&](std::size_t len) { return wsa_stream(hypothesis, len); }, mode);
  }

  bool equivalence(const Csfg<F>& hypothesis, EquivalenceMode mode) {
    return check_equivalence(hypothesis.register_count(),
                             [&](std::size_t len) { return csfg_stream(hypothesis, len); }, mode);
  }

  const QueryStats& stats() const { return stats_; }

  // First mismatching index of the most recent "no" verdict. Diagnostic only;
  // the learner never sees it, the oracle interface stays strictly yes/no.
  std::optional<std::size_t> last_mismatch() const { return last_mismatch_; }

  // Direct view of the hidden stream for tests and reports; does not count as
  // a membership query.
  std::vector<F> peek_prefix(std::size_t count) {
    if (std::holds_alternative<RawPrefixSpec<F>>(spec_) && count > prefix_.size()) {
      throw PrefixTooShort("raw prefix shorter than requested");
    }
    ensure_prefix(count);
    return std::vector<F>(prefix_.begin(), prefix_.begin() + static_cast<std::ptrdiff_t>(count));
  }

 private:
  template <typename HypPrefix>
  bool check_equivalence(std::size_t hyp_order, HypPrefix&& hyp_prefix, EquivalenceMode mode) {
    std::size_t len;
    if (mode.is_exact) {
      std::optional<std::size_t> bound = order_bound();
      if (!bound) throw Error("exact equivalence requires an order bound");
      len = hyp_order + *bound;
    } else {
      len = mode.bound;
    }
    if (std::holds_alternative<RawPrefixSpec<F>>(spec_) && len > prefix_.size()) {
      throw PrefixTooShort("raw prefix too short for equivalence comparison");
    }
    ensure_prefix(len);
    ++stats_.equivalence_queries;
    std::vector<F> hyp = hyp_prefix(len);
    for (std::size_t t = 0; t < len; ++t) {
      if (!(hyp[t] == prefix_[t])) {
        last_mismatch_ = t;
        return false;
      }
    }
    last_mismatch_.reset();
    return true;
  }

  void ensure_prefix(std::size_t len) {
    if (prefix_.size() >= len) return;
    // Grow geometrically so repeated small extensions stay cheap for engines
    // that recompute from the start.
    std::size_t target = std::max(len, 2 * prefix_.size());
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, RationalStreamSpec<F>>) {
            prefix_ = rational_expand(s, target);
          } else if constexpr (std::is_same_v<T, RecurrenceSpec<F>>) {
            prefix_ = recurrence_expand(s, target);
          } else if constexpr (std::is_same_v<T, Wsa<F>>) {
            prefix_ = wsa_stream(s, target);
          } else if constexpr (std::is_same_v<T, Csfg<F>>) {
            prefix_ = csfg_stream(s, target);
          } else {
            throw IndexBeyondPrefix("raw prefix exhausted");
          }
        },
        spec_);
  }

  TeacherSpec<F> spec_;
  std::vector<F> prefix_;
  std::set<std::size_t> queried_;
  QueryStats stats_;
  std::optional<std::size_t> last_mismatch_;
};

}  // namespace sfglearn
