#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sfglearn/csfg.hpp"
#include "sfglearn/field.hpp"
#include "sfglearn/streams.hpp"
#include "sfglearn/teacher.hpp"
#include "sfglearn/wsa.hpp"

namespace sfglearn {

using json = nlohmann::json;

// Every document carries a field header:
//   {"kind": "rational"}  or  {"kind": "mod", "p": 97}
// and writes scalars as "num/den" / "num" strings.
inline FieldDesc field_from_json(const json& doc) {
  if (!doc.contains("field")) throw ParseError("missing \"field\" header");
  const json& f = doc.at("field");
  std::string kind = f.value("kind", "");
  if (kind == "rational") return FieldDesc::rational();
  if (kind == "mod") {
    if (!f.contains("p")) throw ParseError("mod field needs \"p\"");
    return FieldDesc::mod(f.at("p").get<std::uint64_t>());
  }
  throw ParseError("unknown field kind: \"" + kind + "\"");
}

inline json field_to_json(const FieldDesc& fd) {
  if (fd.kind == FieldDesc::Kind::Rational) return json{{"kind", "rational"}};
  return json{{"kind", "mod"}, {"p", fd.p}};
}

template <typename F>
std::vector<F> scalars_from_json(const json& arr, const FieldDesc& fd) {
  if (!arr.is_array()) throw ParseError("expected an array of scalars");
  std::vector<F> out;
  out.reserve(arr.size());
  for (const json& v : arr) {
    if (!v.is_string()) throw ParseError("scalars must be strings like \"-3/7\" or \"5\"");
    out.push_back(FieldTraits<F>::parse(v.get<std::string>(), fd));
  }
  return out;
}

template <typename F>
json scalars_to_json(const std::vector<F>& xs) {
  json arr = json::array();
  for (const F& x : xs) arr.push_back(FieldTraits<F>::str(x));
  return arr;
}

template <typename F>
json wsa_to_json(const Wsa<F>& w, const FieldDesc& fd) {
  json trans = json::array();
  for (std::size_t r = 0; r < w.n_states; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < w.n_states; ++c) row.push_back(FieldTraits<F>::str(w.trans.at(r, c)));
    trans.push_back(std::move(row));
  }
  return json{{"field", field_to_json(fd)},
              {"kind", "wsa"},
              {"states", w.n_states},
              {"start", w.start},
              {"output", scalars_to_json(w.output)},
              {"transitions", std::move(trans)}};
}

template <typename F>
Wsa<F> wsa_from_json(const json& doc, const FieldDesc& fd) {
  Wsa<F> w;
  w.n_states = doc.at("states").get<std::size_t>();
  w.start = doc.at("start").get<std::size_t>();
  w.output = scalars_from_json<F>(doc.at("output"), fd);
  if (w.output.size() != w.n_states) throw ParseError("wsa output length != states");
  if (w.start >= w.n_states && w.n_states > 0) throw ParseError("wsa start state out of range");
  const json& trans = doc.at("transitions");
  if (!trans.is_array() || trans.size() != w.n_states) throw ParseError("wsa transition matrix shape");
  w.trans = Matrix<F>(w.n_states, w.n_states);
  for (std::size_t r = 0; r < w.n_states; ++r) {
    std::vector<F> row = scalars_from_json<F>(trans.at(r), fd);
    if (row.size() != w.n_states) throw ParseError("wsa transition matrix shape");
    for (std::size_t c = 0; c < w.n_states; ++c) w.trans.at(r, c) = row[c];
  }
  return w;
}

template <typename F>
json csfg_to_json(const Csfg<F>& g, const FieldDesc& fd) {
  json vertices = json::array();
  for (const Vertex<F>& v : g.vertices) {
    json jv{{"kind", vertex_kind_name(v.kind)}};
    if (v.kind == VertexKind::Multiplier || v.kind == VertexKind::Register) {
      jv["value"] = FieldTraits<F>::str(v.value);
    }
    vertices.push_back(std::move(jv));
  }
  json edges = json::array();
  for (const auto& [from, to] : g.edges) edges.push_back(json::array({from, to}));
  return json{{"field", field_to_json(fd)},
              {"kind", "csfg"},
              {"vertices", std::move(vertices)},
              {"edges", std::move(edges)}};
}

template <typename F>
Csfg<F> csfg_from_json(const json& doc, const FieldDesc& fd) {
  Csfg<F> g;
  for (const json& jv : doc.at("vertices")) {
    std::string kind = jv.at("kind").get<std::string>();
    F value(0);
    if (jv.contains("value")) value = FieldTraits<F>::parse(jv.at("value").get<std::string>(), fd);
    if (kind == "adder") {
      g.add_vertex(VertexKind::Adder);
    } else if (kind == "copier") {
      g.add_vertex(VertexKind::Copier);
    } else if (kind == "multiplier") {
      g.add_vertex(VertexKind::Multiplier, std::move(value));
    } else if (kind == "register") {
      g.add_vertex(VertexKind::Register, std::move(value));
    } else if (kind == "output") {
      g.add_vertex(VertexKind::Output);
    } else {
      throw ParseError("unknown vertex kind: \"" + kind + "\"");
    }
  }
  for (const json& je : doc.at("edges")) {
    if (!je.is_array() || je.size() != 2) throw ParseError("edges must be [from, to] pairs");
    g.add_edge(je.at(0).get<std::size_t>(), je.at(1).get<std::size_t>());
  }
  return g;
}

template <typename F>
Polynomial<F> polynomial_from_json(const json& arr, const FieldDesc& fd) {
  return Polynomial<F>::of(scalars_from_json<F>(arr, fd));
}

// Teacher documents share the model kinds (a model file can be handed back
// as a hidden-automaton teacher) plus "rational_function", "recurrence" and
// "raw_prefix".
template <typename F>
TeacherSpec<F> teacher_from_json(const json& doc, const FieldDesc& fd) {
  std::string kind = doc.value("kind", "");
  if (kind == "rational_function") {
    // q0 = 0 is left for the expansion engine to reject: it is a domain
    // error, not a document-shape error.
    return RationalStreamSpec<F>{polynomial_from_json<F>(doc.at("p"), fd),
                                 polynomial_from_json<F>(doc.at("q"), fd)};
  }
  if (kind == "recurrence") {
    RecurrenceSpec<F> s{scalars_from_json<F>(doc.at("initial"), fd),
                        scalars_from_json<F>(doc.at("coeffs"), fd)};
    if (s.initial.size() != s.coeffs.size()) {
      throw ParseError("recurrence: initial and coeffs must have equal length");
    }
    return s;
  }
  if (kind == "wsa") return wsa_from_json<F>(doc, fd);
  if (kind == "csfg") return csfg_from_json<F>(doc, fd);
  if (kind == "raw_prefix") {
    RawPrefixSpec<F> s;
    s.values = scalars_from_json<F>(doc.at("values"), fd);
    if (doc.contains("order_bound")) s.order_bound = doc.at("order_bound").get<std::size_t>();
    return s;
  }
  throw ParseError("unknown teacher kind: \"" + kind + "\"");
}

template <typename F>
using Model = std::variant<Wsa<F>, Csfg<F>>;

template <typename F>
Model<F> model_from_json(const json& doc, const FieldDesc& fd) {
  std::string kind = doc.value("kind", "");
  if (kind == "wsa") return wsa_from_json<F>(doc, fd);
  if (kind == "csfg") return csfg_from_json<F>(doc, fd);
  throw ParseError("model kind must be \"wsa\" or \"csfg\", got \"" + kind + "\"");
}

}  // namespace sfglearn
