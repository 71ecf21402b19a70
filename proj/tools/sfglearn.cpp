#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfglearn/bench.hpp"
#include "sfglearn/dot.hpp"
#include "sfglearn/learner.hpp"
#include "sfglearn/serialize.hpp"

namespace {

using namespace sfglearn;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return doc;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << body;
}

// Runs fn with a default-constructed element of the document's field as a
// type tag, so commands stay field-generic.
template <typename Fn>
void with_field(const json& doc, Fn&& fn) {
  FieldDesc fd = field_from_json(doc);
  if (fd.kind == FieldDesc::Kind::Rational) {
    fn(fd, Rational());
  } else {
    fn(fd, ModInt::make(0, fd.p));
  }
}

EquivalenceMode parse_eq_mode(const std::string& text) {
  if (text == "exact") return EquivalenceMode::exact();
  if (text.rfind("bounded:", 0) == 0) {
    std::string num = text.substr(8);
    std::size_t idx = 0;
    unsigned long k = std::stoul(num, &idx);
    if (idx != num.size() || k == 0) throw ParseError("bad bound in --eq: " + text);
    return EquivalenceMode::bounded(k);
  }
  throw ParseError("--eq must be exact or bounded:K, got: " + text);
}

std::vector<std::size_t> parse_orders(const std::string& text) {
  auto parse_num = [&](const std::string& t) -> std::size_t {
    std::size_t idx = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(t, &idx);
    } catch (const std::exception&) {
      throw ParseError("bad order range: " + text);
    }
    if (idx != t.size() || v == 0) throw ParseError("bad order range: " + text);
    return v;
  };
  std::size_t lo = 0, hi = 0;
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    lo = hi = parse_num(text);
  } else {
    lo = parse_num(text.substr(0, dots));
    hi = parse_num(text.substr(dots + 2));
  }
  if (lo > hi) throw ParseError("empty order range: " + text);
  std::vector<std::size_t> orders;
  for (std::size_t n = lo; n <= hi; ++n) orders.push_back(n);
  return orders;
}

void cmd_expand(const std::string& teacher_file, std::size_t count) {
  json doc = load_json(teacher_file);
  with_field(doc, [&](const FieldDesc& fd, auto tag) {
    using F = decltype(tag);
    Teacher<F> teacher{teacher_from_json<F>(doc, fd)};
    for (const F& v : teacher.peek_prefix(count)) std::cout << FieldTraits<F>::str(v) << "\n";
  });
}

void cmd_learn(const std::string& teacher_file, const std::string& strategy,
               const std::string& eq, const std::string& out_dir) {
  json doc = load_json(teacher_file);
  if (strategy != "linear" && strategy != "doubling") {
    throw ParseError("--strategy must be linear or doubling, got: " + strategy);
  }
  LearnerConfig config;
  config.growth = strategy == "linear" ? GrowthStrategy::Linear : GrowthStrategy::Doubling;
  config.equivalence_mode = parse_eq_mode(eq);
  std::filesystem::create_directories(out_dir);
  with_field(doc, [&](const FieldDesc& fd, auto tag) {
    using F = decltype(tag);
    Teacher<F> teacher{teacher_from_json<F>(doc, fd)};
    LearnResult<F> result = learn(teacher, config);
    std::filesystem::path dir(out_dir);
    write_file((dir / "wsa.json").string(), wsa_to_json(result.wsa, fd).dump(2) + "\n");
    write_file((dir / "csfg.json").string(), csfg_to_json(result.csfg, fd).dump(2) + "\n");
    write_file((dir / "csfg.dot").string(), export_dot(result.csfg));
    write_file((dir / "stats.csv").string(), learn_trace_csv(result));
    const QueryStats& s = result.stats;
    std::cout << "order=" << result.order << " membership_queries=" << s.membership_queries
              << " max_index=" << s.max_index << " equivalence_queries=" << s.equivalence_queries
              << " closedness_checks=" << s.closedness_checks << " solver_calls=" << s.solver_calls
              << "\n";
  });
}

void cmd_simulate(const std::string& model_file, std::size_t count) {
  json doc = load_json(model_file);
  with_field(doc, [&](const FieldDesc& fd, auto tag) {
    using F = decltype(tag);
    Model<F> model = model_from_json<F>(doc, fd);
    std::vector<F> values;
    if (std::holds_alternative<Csfg<F>>(model)) {
      const Csfg<F>& g = std::get<Csfg<F>>(model);
      std::vector<Violation> violations = validate(g);
      if (!violations.empty()) {
        for (const Violation& v : violations) {
          std::cerr << "violation: " << describe(std::vector<Violation>{v}) << "\n";
        }
        throw InvalidGraph("model fails validation");
      }
      values = csfg_stream(g, count);
    } else {
      values = wsa_stream(std::get<Wsa<F>>(model), count);
    }
    for (const F& v : values) std::cout << FieldTraits<F>::str(v) << "\n";
  });
}

void cmd_bench(const std::string& orders_text, std::size_t trials, std::uint64_t seed,
               const std::string& out_csv) {
  std::vector<std::size_t> orders = parse_orders(orders_text);
  if (trials == 0) throw ParseError("--trials must be at least 1");
  std::string csv = bench_csv(run_bench(orders, trials, seed));
  if (out_csv.empty()) {
    std::cout << csv;
  } else {
    write_file(out_csv, csv);
    std::cout << "wrote " << orders.size() * trials * 2 << " rows to " << out_csv << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"learn, simulate and benchmark closed signal flow graphs over exact fields"};
  app.require_subcommand(1);

  std::string teacher_file, model_file, out_dir;
  std::string strategy = "linear", eq = "exact";
  std::size_t count = 10, trials = 1;
  std::string orders_text, out_csv;
  std::uint64_t seed = 0;

  CLI::App* expand = app.add_subcommand("expand", "print a prefix of a teacher's stream");
  expand->add_option("teacher", teacher_file, "teacher description file")->required();
  expand->add_option("--count", count, "number of values to print");

  CLI::App* learn_cmd = app.add_subcommand("learn", "learn a model from a teacher");
  learn_cmd->add_option("teacher", teacher_file, "teacher description file")->required();
  learn_cmd->add_option("--strategy", strategy, "linear | doubling");
  learn_cmd->add_option("--eq", eq, "exact | bounded:K");
  learn_cmd->add_option("--out", out_dir, "output directory")->required();

  CLI::App* simulate = app.add_subcommand("simulate", "run a model and print its stream");
  simulate->add_option("model", model_file, "model file (wsa or csfg)")->required();
  simulate->add_option("--count", count, "number of values to print");

  CLI::App* bench = app.add_subcommand("bench", "query-complexity benchmark over random teachers");
  bench->add_option("--orders", orders_text, "order range, e.g. 1..64")->required();
  bench->add_option("--trials", trials, "teachers per order");
  bench->add_option("--seed", seed, "RNG seed");
  bench->add_option("--out", out_csv, "CSV output path (default: stdout)");

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(expand)) cmd_expand(teacher_file, count);
    if (app.got_subcommand(learn_cmd)) cmd_learn(teacher_file, strategy, eq, out_dir);
    if (app.got_subcommand(simulate)) cmd_simulate(model_file, count);
    if (app.got_subcommand(bench)) cmd_bench(orders_text, trials, seed, out_csv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const sfglearn::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const sfglearn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
