#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sfglearn/errors.hpp"
#include "sfglearn/matrix.hpp"

namespace sfglearn {

// A stream with finitely many non-zero elements, stored as coefficients by
// position. Canonical form strips trailing zeros; the empty vector is the
// zero polynomial.
template <typename F>
struct Polynomial {
  std::vector<F> coeffs;

  static Polynomial of(std::vector<F> cs) {
    while (!cs.empty() && cs.back().is_zero()) cs.pop_back();
    return Polynomial{std::move(cs)};
  }

  bool is_zero() const { return coeffs.empty(); }

  // degree + 1; 0 for the zero polynomial.
  std::size_t length() const { return coeffs.size(); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs == b.coeffs; }
};

// sigma = p/q with q invertible as a stream (q0 != 0).
template <typename F>
struct RationalStreamSpec {
  Polynomial<F> p, q;
};

// Order-n linear recurrence: the first n values plus the coefficients that
// express each later value in terms of the n preceding ones.
template <typename F>
struct RecurrenceSpec {
  std::vector<F> initial;
  std::vector<F> coeffs;

  std::size_t order() const { return initial.size(); }
};

// Convolution product: (p*q)_n = sum_{k<=n} p_k q_{n-k}.
template <typename F>
Polynomial<F> poly_convolve(const Polynomial<F>& p, const Polynomial<F>& q) {
  if (p.is_zero() || q.is_zero()) return Polynomial<F>{};
  std::vector<F> out(p.length() + q.length() - 1, F(0));
  for (std::size_t i = 0; i < p.length(); ++i)
    for (std::size_t j = 0; j < q.length(); ++j) out[i + j] += p.coeffs[i] * q.coeffs[j];
  return Polynomial<F>::of(std::move(out));
}

// First `count` values of p/q via the division recurrence
//   q0 * sigma_n = p_n - sum_{k=1..n} q_k * sigma_{n-k}.
template <typename F>
std::vector<F> rational_expand(const RationalStreamSpec<F>& spec, std::size_t count) {
  if (spec.q.is_zero() || spec.q.coeffs[0].is_zero()) throw NonInvertibleDenominator();
  const F q0_inv = spec.q.coeffs[0].inverse();
  std::vector<F> sigma;
  sigma.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    F acc = n < spec.p.length() ? spec.p.coeffs[n] : F(0);
    const std::size_t kmax = std::min(n, spec.q.length() - 1);
    for (std::size_t k = 1; k <= kmax; ++k) acc -= spec.q.coeffs[k] * sigma[n - k];
    sigma.push_back(acc * q0_inv);
  }
  return sigma;
}

template <typename F>
std::vector<F> recurrence_expand(const RecurrenceSpec<F>& spec, std::size_t count) {
  if (spec.initial.size() != spec.coeffs.size()) {
    throw DimensionMismatch("recurrence: initial and coeffs must have equal length");
  }
  const std::size_t n = spec.order();
  std::vector<F> sigma;
  sigma.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    if (t < n) {
      sigma.push_back(spec.initial[t]);
    } else {
      F acc(0);
      for (std::size_t i = 0; i < n; ++i) acc += spec.coeffs[i] * sigma[t - n + i];
      sigma.push_back(acc);
    }
  }
  return sigma;
}

// Drops the first j elements.
template <typename F>
std::vector<F> stream_derivative(const std::vector<F>& prefix, std::size_t j) {
  if (j >= prefix.size() && j != 0) throw IndexOutOfRange("stream derivative order exceeds prefix");
  return std::vector<F>(prefix.begin() + static_cast<std::ptrdiff_t>(j), prefix.end());
}

// Exact rank of the n x n Hankel matrix H[v][e] = sigma_{v+e}. This is the
// independence test for the first n stream derivatives, truncated to length n.
template <typename F>
std::size_t hankel_rank(const std::vector<F>& prefix, std::size_t n) {
  if (n == 0) return 0;
  if (prefix.size() < 2 * n - 1) throw PrefixTooShort("hankel_rank needs 2n-1 stream values");
  Matrix<F> h(n, n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t e = 0; e < n; ++e) h.at(v, e) = prefix[v + e];
  return rank(h);
}

// Draws recurrence specs until the expansion's n x n Hankel matrix has full
// rank, i.e. the stream's order is exactly n. `draw` supplies random field
// elements. After `max_attempts` failures falls back to the delta stream
// (initial = e_{n-1}, coeffs = 0), whose Hankel matrix is an antidiagonal
// permutation and hence always nonsingular.
template <typename F, typename Draw>
RecurrenceSpec<F> random_recurrence_of_order(std::size_t n, std::mt19937_64& rng, Draw&& draw,
                                             std::size_t max_attempts = 500) {
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    RecurrenceSpec<F> spec;
    spec.initial.reserve(n);
    spec.coeffs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) spec.initial.push_back(draw(rng));
    for (std::size_t i = 0; i < n; ++i) spec.coeffs.push_back(draw(rng));
    std::vector<F> prefix = recurrence_expand(spec, 2 * n + 1);
    if (hankel_rank(prefix, n) == n) return spec;
  }
  RecurrenceSpec<F> delta;
  delta.initial.assign(n, F(0));
  delta.initial[n - 1] = F(1);
  delta.coeffs.assign(n, F(0));
  return delta;
}

}  // namespace sfglearn
