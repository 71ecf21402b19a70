#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sfglearn/field.hpp"
#include "sfglearn/matrix.hpp"

namespace sfglearn {

enum class GrowthStrategy { Linear, Doubling };

// Observation table (S, E) with S = E = {0..i-1}. The table is the learner's
// only view of the hidden stream: values arrive through the membership
// callback and are cached by stream index, so the cell (v, e) and every other
// cell with the same v+e cost a single query between them.
template <typename F>
class ObservationTable {
 public:
  using MembershipFn = std::function<F(std::size_t)>;

  explicit ObservationTable(MembershipFn membership) : membership_(std::move(membership)) {}

  std::size_t size() const { return size_; }

  // row(v)(e) = sigma_{v+e}
  F row(std::size_t v, std::size_t e) {
    if (v >= size_ || e >= size_) throw IndexOutOfRange("observation table row index");
    return fetch(v + e);
  }

  // srow(e) = sigma_{w+e+1} with w = i-1, the row just past the last one in S.
  F srow(std::size_t e) {
    if (e >= size_) throw IndexOutOfRange("observation table srow index");
    return fetch(size_ + e);
  }

  // Coefficients witnessing closedness: c with srow = sum_s c[s]*row(s), or
  // nullopt when srow is outside the span of the existing rows. When the rows
  // are still dependent the canonical free-variables-zero solution is
  // returned; any witness works because the equivalence query is the backstop.
  SolveOutcome<F> closure_coefficients() {
    Matrix<F> rows(size_, size_);
    for (std::size_t v = 0; v < size_; ++v)
      for (std::size_t e = 0; e < size_; ++e) rows.at(v, e) = row(v, e);
    std::vector<F> target;
    target.reserve(size_);
    for (std::size_t e = 0; e < size_; ++e) target.push_back(srow(e));
    return in_row_span(rows, std::move(target));
  }

  // Grows S and E together; the cache and query log carry over.
  void expand(GrowthStrategy strategy) {
    size_ = strategy == GrowthStrategy::Linear ? size_ + 1 : 2 * size_;
  }

  // First `count` stream values, from cache where possible.
  std::vector<F> prefix(std::size_t count) {
    std::vector<F> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) out.push_back(fetch(t));
    return out;
  }

  std::size_t distinct_queries() const { return distinct_; }
  std::size_t max_queried_index() const { return max_index_; }
  bool queried(std::size_t idx) const { return idx < cache_.size() && cache_[idx].has_value(); }

  // Plain-text i x i grid plus the srow line, for debugging.
  std::string dump() {
    std::ostringstream os;
    for (std::size_t v = 0; v < size_; ++v) {
      for (std::size_t e = 0; e < size_; ++e) {
        if (e) os << ' ';
        os << FieldTraits<F>::str(row(v, e));
      }
      os << '\n';
    }
    os << "srow:";
    for (std::size_t e = 0; e < size_; ++e) os << ' ' << FieldTraits<F>::str(srow(e));
    os << '\n';
    return os.str();
  }

 private:
  F fetch(std::size_t idx) {
    if (idx >= cache_.size()) cache_.resize(idx + 1);
    if (!cache_[idx]) {
      cache_[idx] = membership_(idx);
      ++distinct_;
      if (idx > max_index_) max_index_ = idx;
    }
    return *cache_[idx];
  }

  MembershipFn membership_;
  std::size_t size_ = 1;
  std::vector<std::optional<F>> cache_;  // stream index -> value; doubles as the query log
  std::size_t distinct_ = 0;
  std::size_t max_index_ = 0;
};

}  // namespace sfglearn
