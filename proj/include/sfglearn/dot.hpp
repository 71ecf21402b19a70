#pragma once

#include <sstream>
#include <string>

#include "sfglearn/csfg.hpp"
#include "sfglearn/field.hpp"
#include "sfglearn/wsa.hpp"

namespace sfglearn {

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

// Graphviz rendering of the flow graph. One node per vertex in id order:
// adders "+", copiers "c", multipliers show their gain in a box, registers
// show "x" with their initial value.
template <typename F>
std::string export_dot(const Csfg<F>& g) {
  std::ostringstream os;
  os << "digraph csfg {\n  rankdir=LR;\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& vx = g.vertices[v];
    os << "  v" << v << " [";
    switch (vx.kind) {
      case VertexKind::Adder:
        os << "shape=circle, label=\"+\"";
        break;
      case VertexKind::Copier:
        os << "shape=circle, label=\"c\"";
        break;
      case VertexKind::Multiplier:
        os << "shape=box, label=\"" << detail::dot_escape(FieldTraits<F>::str(vx.value)) << "\"";
        break;
      case VertexKind::Register:
        os << "shape=box, style=rounded, label=\"x "
           << detail::dot_escape(FieldTraits<F>::str(vx.value)) << "\"";
        break;
      case VertexKind::Output:
        os << "shape=doublecircle, label=\"out\"";
        break;
    }
    os << "];\n";
  }
  for (const auto& [from, to] : g.edges) {
    os << "  v" << from << " -> v" << to << ";\n";
  }
  os << "}\n";
  return os.str();
}

// States as circles; output weights drawn as double-stroke edges into
// anonymous sinks; zero-weight transitions are not drawn.
template <typename F>
std::string export_dot(const Wsa<F>& w) {
  std::ostringstream os;
  os << "digraph wsa {\n  rankdir=LR;\n";
  for (std::size_t q = 0; q < w.n_states; ++q) {
    os << "  q" << q << " [shape=circle, label=\"" << q << "\"";
    if (q == w.start) os << ", penwidth=2";
    os << "];\n";
  }
  for (std::size_t q = 0; q < w.n_states; ++q) {
    if (w.output[q].is_zero()) continue;
    os << "  o" << q << " [shape=none, label=\"\"];\n";
    os << "  q" << q << " -> o" << q << " [label=\""
       << detail::dot_escape(FieldTraits<F>::str(w.output[q]))
       << "\", color=\"black:black\"];\n";
  }
  for (std::size_t q = 0; q < w.n_states; ++q) {
    for (std::size_t q2 = 0; q2 < w.n_states; ++q2) {
      if (w.trans.at(q, q2).is_zero()) continue;
      os << "  q" << q << " -> q" << q2 << " [label=\""
         << detail::dot_escape(FieldTraits<F>::str(w.trans.at(q, q2))) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace sfglearn
