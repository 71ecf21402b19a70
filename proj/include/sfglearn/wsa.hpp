#pragma once

#include <vector>

#include "sfglearn/errors.hpp"
#include "sfglearn/matrix.hpp"

namespace sfglearn {

// Weighted stream automaton: a weighted automaton over a singleton alphabet.
// trans.at(s, s2) is the weight of the transition s -> s2; the stream it
// represents starts at `start` with weight 1 (all other states weight 0).
template <typename F>
struct Wsa {
  std::size_t n_states = 0;
  std::vector<F> output;
  Matrix<F> trans;
  std::size_t start = 0;
};

// Hypothesis automaton read off a closed observation table: a chain
// 0 -> 1 -> ... -> i-1 with unit weights, closure coefficients on the
// transitions out of state i-1, and the first stream values as outputs.
// For i = 1 the chain rule writes nothing and the coefficient rule alone
// sets the self-loop.
template <typename F>
Wsa<F> wsa_from_closed_table(const std::vector<F>& sigma_prefix, const std::vector<F>& cs) {
  if (sigma_prefix.empty() || sigma_prefix.size() != cs.size()) {
    throw DimensionMismatch("hypothesis needs equal, non-empty prefix and coefficients");
  }
  const std::size_t i = sigma_prefix.size();
  Wsa<F> w;
  w.n_states = i;
  w.output = sigma_prefix;
  w.trans = Matrix<F>(i, i);
  for (std::size_t s = 0; s + 1 < i; ++s) w.trans.at(s, s + 1) = F(1);
  for (std::size_t s = 0; s < i; ++s) w.trans.at(i - 1, s) = cs[s];
  w.start = 0;
  return w;
}

// First `count` values of the represented stream, via iterated vector-matrix
// products: s_j = u_start * trans^j * output.
template <typename F>
std::vector<F> wsa_stream(const Wsa<F>& w, std::size_t count) {
  std::vector<F> u(w.n_states, F(0));
  if (w.n_states > 0) u[w.start] = F(1);
  std::vector<F> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    F s(0);
    for (std::size_t q = 0; q < w.n_states; ++q) s += u[q] * w.output[q];
    out.push_back(s);
    std::vector<F> next(w.n_states, F(0));
    for (std::size_t q = 0; q < w.n_states; ++q) {
      if (u[q].is_zero()) continue;
      for (std::size_t q2 = 0; q2 < w.n_states; ++q2) next[q2] += u[q] * w.trans.at(q, q2);
    }
    u = std::move(next);
  }
  return out;
}

namespace detail {

template <typename F>
void sum_paths(const Wsa<F>& w, std::size_t state, std::size_t remaining, const F& weight, F& acc) {
  if (remaining == 0) {
    acc += weight * w.output[state];
    return;
  }
  for (std::size_t next = 0; next < w.n_states; ++next) {
    sum_paths(w, next, remaining - 1, weight * w.trans.at(state, next), acc);
  }
}

}  // namespace detail

// Literal path semantics: s_n is the sum over all length-n paths from the
// start state of the product of transition weights times the output weight of
// the final state. Exponential in `count`; test oracle only.
template <typename F>
std::vector<F> wsa_stream_bruteforce(const Wsa<F>& w, std::size_t count) {
  std::vector<F> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    F acc(0);
    if (w.n_states > 0) detail::sum_paths(w, w.start, n, F(1), acc);
    out.push_back(acc);
  }
  return out;
}

}  // namespace sfglearn
