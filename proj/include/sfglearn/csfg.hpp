#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sfglearn/errors.hpp"
#include "sfglearn/matrix.hpp"

namespace sfglearn {

enum class VertexKind { Adder, Copier, Multiplier, Register, Output };

inline const char* vertex_kind_name(VertexKind k) {
  switch (k) {
    case VertexKind::Adder: return "adder";
    case VertexKind::Copier: return "copier";
    case VertexKind::Multiplier: return "multiplier";
    case VertexKind::Register: return "register";
    case VertexKind::Output: return "output";
  }
  return "?";
}

// `value` is the gain of a multiplier or the initial value of a register;
// unused for the other kinds.
template <typename F>
struct Vertex {
  VertexKind kind;
  F value = F(0);
};

// Closed signal flow graph: adders, copiers, multipliers and unit-delay
// registers wired into a directed graph with no input vertices and exactly
// one output vertex. Vertex ids are indices into `vertices`.
template <typename F>
struct Csfg {
  std::vector<Vertex<F>> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::size_t add_vertex(VertexKind kind, F value = F(0)) {
    vertices.push_back(Vertex<F>{kind, std::move(value)});
    return vertices.size() - 1;
  }

  void add_edge(std::size_t from, std::size_t to) { edges.emplace_back(from, to); }

  std::vector<std::size_t> register_ids() const {
    std::vector<std::size_t> ids;
    for (std::size_t v = 0; v < vertices.size(); ++v)
      if (vertices[v].kind == VertexKind::Register) ids.push_back(v);
    return ids;
  }

  std::size_t register_count() const { return register_ids().size(); }

  std::vector<F> initial_state() const {
    std::vector<F> state;
    for (std::size_t v : register_ids()) state.push_back(vertices[v].value);
    return state;
  }

  void set_initial_state(const std::vector<F>& state) {
    std::vector<std::size_t> regs = register_ids();
    if (state.size() != regs.size()) throw DimensionMismatch("register state size mismatch");
    for (std::size_t k = 0; k < regs.size(); ++k) vertices[regs[k]].value = state[k];
  }
};

// vertex = nullopt for graph-level violations (missing output, no register).
struct Violation {
  std::optional<std::size_t> vertex;
  std::string rule;
};

// Checks the generator degree rules, the single-output/no-input shape, and
// that every cycle passes through a register (the register-free residual
// graph must be acyclic).
template <typename F>
std::vector<Violation> validate(const Csfg<F>& g) {
  std::vector<Violation> out;
  const std::size_t n = g.vertices.size();
  std::vector<std::size_t> indeg(n, 0), outdeg(n, 0);
  for (const auto& [from, to] : g.edges) {
    if (from >= n || to >= n) {
      out.push_back({std::nullopt, "edge references a vertex that does not exist"});
      return out;
    }
    ++outdeg[from];
    ++indeg[to];
  }

  std::size_t outputs = 0, registers = 0;
  for (std::size_t v = 0; v < n; ++v) {
    switch (g.vertices[v].kind) {
      case VertexKind::Adder:
        if (indeg[v] < 2) out.push_back({v, "adder needs at least two incoming edges"});
        if (outdeg[v] != 1) out.push_back({v, "adder needs exactly one outgoing edge"});
        break;
      case VertexKind::Copier:
        if (indeg[v] != 1) out.push_back({v, "copier needs exactly one incoming edge"});
        if (outdeg[v] < 2) out.push_back({v, "copier needs at least two outgoing edges"});
        break;
      case VertexKind::Multiplier:
        if (indeg[v] != 1) out.push_back({v, "multiplier needs exactly one incoming edge"});
        if (outdeg[v] != 1) out.push_back({v, "multiplier needs exactly one outgoing edge"});
        break;
      case VertexKind::Register:
        ++registers;
        if (indeg[v] != 1) out.push_back({v, "register needs exactly one incoming edge"});
        if (outdeg[v] != 1) out.push_back({v, "register needs exactly one outgoing edge"});
        break;
      case VertexKind::Output:
        ++outputs;
        if (indeg[v] != 1) out.push_back({v, "output needs exactly one incoming edge"});
        if (outdeg[v] != 0) out.push_back({v, "output must have no outgoing edges"});
        break;
    }
  }
  if (outputs != 1) out.push_back({std::nullopt, "graph must have exactly one output vertex"});
  if (registers == 0) out.push_back({std::nullopt, "graph must contain at least one register"});

  // Cycle rule: drop the registers and require the rest to be acyclic.
  std::vector<std::size_t> resid_indeg(n, 0);
  for (const auto& [from, to] : g.edges) {
    if (g.vertices[from].kind == VertexKind::Register) continue;
    if (g.vertices[to].kind == VertexKind::Register) continue;
    ++resid_indeg[to];
  }
  std::set<std::size_t> ready;
  std::size_t residual = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (g.vertices[v].kind == VertexKind::Register) continue;
    ++residual;
    if (resid_indeg[v] == 0) ready.insert(v);
  }
  std::size_t processed = 0;
  while (!ready.empty()) {
    std::size_t v = *ready.begin();
    ready.erase(ready.begin());
    ++processed;
    for (const auto& [from, to] : g.edges) {
      if (from != v || g.vertices[to].kind == VertexKind::Register) continue;
      if (--resid_indeg[to] == 0) ready.insert(to);
    }
  }
  if (processed < residual) {
    for (std::size_t v = 0; v < n; ++v) {
      if (g.vertices[v].kind != VertexKind::Register && resid_indeg[v] > 0) {
        out.push_back({v, "cycle without a register passes through this vertex"});
        break;
      }
    }
  }
  return out;
}

template <typename F>
bool is_valid(const Csfg<F>& g) {
  return validate(g).empty();
}

inline std::string describe(const std::vector<Violation>& vs) {
  std::string s;
  for (const auto& v : vs) {
    if (!s.empty()) s += "; ";
    if (v.vertex) s += "vertex " + std::to_string(*v.vertex) + ": ";
    s += v.rule;
  }
  return s;
}

// Synchronous evaluator. Each tick the registers emit their stored values,
// the register-free DAG propagates them (adders sum, copiers duplicate,
// multipliers scale), the output vertex's incoming value is the tick's
// output, and each register latches the value arriving on its incoming edge.
// The evaluation order is a topological order of the residual DAG, computed
// once; ties break by vertex id so runs are deterministic.
template <typename F>
class CsfgSimulator {
 public:
  explicit CsfgSimulator(const Csfg<F>& g) : g_(&g) {
    std::vector<Violation> vs = validate(g);
    if (!vs.empty()) throw InvalidGraph("invalid graph: " + describe(vs));
    const std::size_t n = g.vertices.size();
    inputs_.resize(n);
    std::vector<std::vector<std::size_t>> successors(n);
    std::vector<std::size_t> indeg(n, 0);
    for (const auto& [from, to] : g.edges) {
      inputs_[to].push_back(from);
      if (g.vertices[from].kind != VertexKind::Register &&
          g.vertices[to].kind != VertexKind::Register) {
        successors[from].push_back(to);
        ++indeg[to];
      }
    }
    registers_ = g.register_ids();
    std::set<std::size_t> ready;
    for (std::size_t v = 0; v < n; ++v) {
      if (g.vertices[v].kind == VertexKind::Register) continue;
      if (g.vertices[v].kind == VertexKind::Output) output_vertex_ = v;
      if (indeg[v] == 0) ready.insert(v);
    }
    while (!ready.empty()) {
      std::size_t v = *ready.begin();
      ready.erase(ready.begin());
      topo_.push_back(v);
      for (std::size_t to : successors[v]) {
        if (--indeg[to] == 0) ready.insert(to);
      }
    }
  }

  std::size_t register_count() const { return registers_.size(); }

  std::pair<F, std::vector<F>> tick(const std::vector<F>& state) const {
    if (state.size() != registers_.size()) throw InvalidGraph("register state size mismatch");
    std::vector<F> val(g_->vertices.size(), F(0));
    for (std::size_t k = 0; k < registers_.size(); ++k) val[registers_[k]] = state[k];
    for (std::size_t v : topo_) {
      switch (g_->vertices[v].kind) {
        case VertexKind::Adder: {
          F acc(0);
          for (std::size_t src : inputs_[v]) acc += val[src];
          val[v] = std::move(acc);
          break;
        }
        case VertexKind::Copier:
        case VertexKind::Output:
          val[v] = val[inputs_[v][0]];
          break;
        case VertexKind::Multiplier:
          val[v] = g_->vertices[v].value * val[inputs_[v][0]];
          break;
        case VertexKind::Register:
          break;  // not in topo_
      }
    }
    std::vector<F> next;
    next.reserve(registers_.size());
    for (std::size_t r : registers_) next.push_back(val[inputs_[r][0]]);
    return {val[output_vertex_], std::move(next)};
  }

  std::vector<F> run(std::vector<F> state, std::size_t count) const {
    std::vector<F> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
      auto [value, next] = tick(state);
      out.push_back(std::move(value));
      state = std::move(next);
    }
    return out;
  }

 private:
  const Csfg<F>* g_;
  std::vector<std::vector<std::size_t>> inputs_;
  std::vector<std::size_t> topo_;
  std::vector<std::size_t> registers_;
  std::size_t output_vertex_ = 0;
};

template <typename F>
std::pair<F, std::vector<F>> csfg_tick(const Csfg<F>& g, const std::vector<F>& state) {
  return CsfgSimulator<F>(g).tick(state);
}

// Iterates the tick from the stored initial register values.
template <typename F>
std::vector<F> csfg_stream(const Csfg<F>& g, std::size_t count) {
  CsfgSimulator<F> sim(g);
  return sim.run(g.initial_state(), count);
}

// Hypothesis graph shape for a closed table of size i, register initial
// values left at zero. Registers chain through adders a_0..a_{i-2}; copiers
// fan each register's value out to a sigma_j-gain multiplier feeding the
// final output adder; the last copier also drives the coefficient-gain
// multipliers n_j, where n_0 closes the loop into r_0 and n_j (j >= 1) feeds
// the adder in front of register r_j. For i = 1 there are no adders and m_0
// drives the output directly.
template <typename F>
Csfg<F> csfg_hypothesis_skeleton(const std::vector<F>& sigma_prefix, const std::vector<F>& cs) {
  if (sigma_prefix.empty() || sigma_prefix.size() != cs.size()) {
    throw DimensionMismatch("hypothesis needs equal, non-empty prefix and coefficients");
  }
  const std::size_t i = sigma_prefix.size();
  Csfg<F> g;
  std::vector<std::size_t> reg(i), cop(i), mul(i), coef(i);
  for (std::size_t j = 0; j < i; ++j) reg[j] = g.add_vertex(VertexKind::Register);
  for (std::size_t j = 0; j < i; ++j) cop[j] = g.add_vertex(VertexKind::Copier);
  std::vector<std::size_t> add(i >= 2 ? i - 1 : 0);
  std::size_t add_final = 0;
  if (i >= 2) {
    for (std::size_t j = 0; j + 1 < i; ++j) add[j] = g.add_vertex(VertexKind::Adder);
    add_final = g.add_vertex(VertexKind::Adder);
  }
  for (std::size_t j = 0; j < i; ++j) mul[j] = g.add_vertex(VertexKind::Multiplier, sigma_prefix[j]);
  for (std::size_t j = 0; j < i; ++j) coef[j] = g.add_vertex(VertexKind::Multiplier, cs[j]);
  const std::size_t out = g.add_vertex(VertexKind::Output);

  for (std::size_t j = 0; j < i; ++j) {
    g.add_edge(reg[j], cop[j]);
    g.add_edge(cop[j], mul[j]);
    g.add_edge(mul[j], i >= 2 ? add_final : out);
  }
  for (std::size_t j = 0; j + 1 < i; ++j) {
    g.add_edge(cop[j], add[j]);
    g.add_edge(add[j], reg[j + 1]);
  }
  g.add_edge(cop[i - 1], coef[0]);
  g.add_edge(coef[0], reg[0]);
  for (std::size_t j = 1; j < i; ++j) {
    g.add_edge(cop[i - 1], coef[j]);
    g.add_edge(coef[j], add[j - 1]);
  }
  if (i >= 2) g.add_edge(add_final, out);
  return g;
}

// Initial register values that make the hypothesis graph emit sigma_prefix.
// The graph is linear in its register state, so simulating one tick sequence
// per basis initialization e_j yields the columns of the i x i system the
// correctness argument sets up; solve_linear then pins the unknowns (free
// variables to zero when the system is degenerate).
template <typename F>
std::vector<F> solve_initial_registers(const std::vector<F>& sigma_prefix, const std::vector<F>& cs) {
  const std::size_t i = sigma_prefix.size();
  Csfg<F> skeleton = csfg_hypothesis_skeleton(sigma_prefix, cs);
  CsfgSimulator<F> sim(skeleton);
  // One tick of the skeleton is linear in the register state, so one basis
  // simulation per register recovers the whole tick map: out(r) = m.r and
  // next(r) = U.r. Row t of the system is then m.U^t, iterated as plain
  // vector-matrix products instead of re-simulating the graph i times.
  std::vector<F> out_row(i, F(0));
  Matrix<F> update(i, i);
  for (std::size_t j = 0; j < i; ++j) {
    std::vector<F> state(i, F(0));
    state[j] = F(1);
    auto [value, next] = sim.tick(state);
    out_row[j] = std::move(value);
    for (std::size_t r = 0; r < i; ++r) update.at(r, j) = std::move(next[r]);
  }
  Matrix<F> system(i, i);
  std::vector<F> row = out_row;
  for (std::size_t t = 0; t < i; ++t) {
    for (std::size_t j = 0; j < i; ++j) system.at(t, j) = row[j];
    if (t + 1 == i) break;
    std::vector<F> next_row(i, F(0));
    for (std::size_t k = 0; k < i; ++k) {
      if (row[k].is_zero()) continue;
      for (std::size_t j = 0; j < i; ++j) next_row[j] += row[k] * update.at(k, j);
    }
    row = std::move(next_row);
  }
  SolveOutcome<F> sol = solve_linear(system, sigma_prefix);
  if (!sol) throw SingularSystem();
  return *sol;
}

// Full hypothesis construction: skeleton plus solved register initial values.
template <typename F>
Csfg<F> csfg_from_closed_table(const std::vector<F>& sigma_prefix, const std::vector<F>& cs) {
  Csfg<F> g = csfg_hypothesis_skeleton(sigma_prefix, cs);
  g.set_initial_state(solve_initial_registers(sigma_prefix, cs));
  return g;
}

}  // namespace sfglearn
