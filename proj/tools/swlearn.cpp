// swlearn: generate, simulate, query, learn and compare switched systems.
//
// Exit codes: 0 success / equivalent, 1 not equivalent, 2 usage error or
// unreadable input, 3 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "swlearn/bench.hpp"

namespace {

using namespace swlearn;

constexpr int kOk = 0;
constexpr int kNotEquivalent = 1;
constexpr int kUsage = 2;
constexpr int kRuntime = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

std::string format_matrix(const Matrix& m, int precision) {
  std::string out = "[";
  for (Index r = 0; r < m.rows(); ++r) {
    out += r ? ",[" : "[";
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out += ",";
      out += format_number(m(r, c), precision);
    }
    out += "]";
  }
  return out + "]";
}

std::string format_vector(const Matrix& col, int precision) {
  std::string out = "(";
  for (Index r = 0; r < col.rows(); ++r) {
    if (r) out += ", ";
    out += format_number(col(r, 0), precision);
  }
  return out + ")";
}

Matrix parse_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--x0: cannot parse '" + item + "' as a number");
    }
  }
  if (values.empty()) throw UsageError("--x0 must list at least one number");
  Matrix x(static_cast<Index>(values.size()), 1);
  for (std::size_t i = 0; i < values.size(); ++i) x(static_cast<Index>(i), 0) = values[i];
  return x;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identification of event-driven switched linear systems"};
  app.require_subcommand(1);
  app.fallthrough();
  int precision = 6;
  app.add_option("--precision", precision, "Significant digits in printed numbers")->check(CLI::Range(1, 17));

  GenConfig gen;
  std::string gen_out;
  bool gen_allow_unreachable = false;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random switched system");
  gen_cmd->add_option("--nodes", gen.num_nodes, "Number of nodes |Q|")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--events", gen.num_events, "Number of events |Σ|")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--labels", gen.num_labels, "Number of labels |Λ|")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--dim", gen.dim, "Matrix dimension d")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "PRNG seed")->required();
  gen_cmd->add_option("--rank-threshold", gen.full_rank_threshold, "Smallest accepted pivot");
  gen_cmd->add_flag("--allow-unreachable", gen_allow_unreachable, "Keep nodes unreachable from the initial node");
  gen_cmd->add_option("--out", gen_out, "Output model file")->required();

  std::string sim_model, sim_x0, sim_word;
  auto* sim_cmd = app.add_subcommand("simulate", "Print the execution of a word from an initial state");
  sim_cmd->add_option("--model", sim_model, "Model file")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--x0", sim_x0, "Initial state, comma separated")->required();
  sim_cmd->add_option("--word", sim_word, "Space-separated event names")->required();

  std::string out_model, out_word;
  auto* out_cmd = app.add_subcommand("output", "Recover the output matrix of a word from IO queries");
  out_cmd->add_option("--model", out_model, "Model file (hidden system)")->required()->check(CLI::ExistingFile);
  out_cmd->add_option("--word", out_word, "Space-separated event names")->required();

  std::string learn_model, learn_eq = "exact", learn_out, learn_stats;
  std::size_t learn_bound = 0;
  double learn_tol = kLabelTolerance;
  std::size_t learn_max_rounds = 0;
  auto* learn_cmd = app.add_subcommand("learn", "Learn a model treating FILE as the hidden system");
  learn_cmd->add_option("--model", learn_model, "Hidden model file")->required()->check(CLI::ExistingFile);
  learn_cmd->add_option("--eq", learn_eq, "Equivalence oracle")->check(CLI::IsMember({"exact", "bounded"}));
  learn_cmd->add_option("--L", learn_bound, "Word length bound for --eq bounded (default 2|Q|+1)");
  learn_cmd->add_option("--tol", learn_tol, "Label tolerance")->check(CLI::PositiveNumber);
  learn_cmd->add_option("--max-rounds", learn_max_rounds, "Round budget (default 10|Σ|(|Q|+1))");
  learn_cmd->add_option("--out", learn_out, "Learned model file")->required();
  learn_cmd->add_option("--stats", learn_stats, "Stats JSON file");

  std::string eq_a, eq_b;
  double eq_tol = kLabelTolerance;
  auto* eq_cmd = app.add_subcommand("equiv", "Check two models for language equivalence");
  eq_cmd->add_option("--a", eq_a, "First model")->required()->check(CLI::ExistingFile);
  eq_cmd->add_option("--b", eq_b, "Second model")->required()->check(CLI::ExistingFile);
  eq_cmd->add_option("--tol", eq_tol, "Matrix tolerance")->check(CLI::NonNegativeNumber);

  std::string dot_model, dot_out;
  auto* dot_cmd = app.add_subcommand("export-dot", "Write a Graphviz rendering of a model");
  dot_cmd->add_option("--model", dot_model, "Model file")->required()->check(CLI::ExistingFile);
  dot_cmd->add_option("--out", dot_out, "DOT file")->required();

  std::string bench_grid, bench_out;
  unsigned bench_jobs = 1;
  auto* bench_cmd = app.add_subcommand("bench", "Run a seeded generate-and-learn sweep");
  bench_cmd->add_option("--grid", bench_grid, "Grid JSON file")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--out", bench_out, "CSV file")->required();
  bench_cmd->add_option("--jobs", bench_jobs, "Parallel workers")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (gen_cmd->parsed()) {
      gen.require_reachable = !gen_allow_unreachable;
      save_json_file(random_system(gen), gen_out);
      return kOk;
    }

    if (sim_cmd->parsed()) {
      const SwitchedSystem sys = load_json_file(sim_model);
      const Matrix x0 = parse_vector(sim_x0);
      if (x0.rows() != sys.d) {
        throw UsageError("--x0 has " + std::to_string(x0.rows()) + " entries, model has d = " + std::to_string(sys.d));
      }
      const Word w = parse_word(sys.fa.alphabet(), sim_word);
      for (const Matrix& x : exec(sys, x0, w)) std::cout << format_vector(x, precision) << "\n";
      return kOk;
    }

    if (out_cmd->parsed()) {
      WhiteBoxObservation obs(load_json_file(out_model));
      const Word w = parse_word(obs.alphabet(), out_word);
      std::cout << format_matrix(compute_output(obs, w), precision) << "\n";
      return kOk;
    }

    if (learn_cmd->parsed()) {
      const SwitchedSystem hidden = load_json_file(learn_model);
      LearnSetup setup{parse_equivalence_mode(learn_eq), learn_bound, learn_tol};
      LearnOptions options;
      options.max_rounds = learn_max_rounds;
      const LearnResult result = learn_hidden(hidden, setup, options);
      save_json_file(result.system, learn_out);
      if (!learn_stats.empty()) write_text(learn_stats, stats_json(result.stats));
      std::cerr << "learned " << result.system.fa.num_nodes() << " nodes in " << result.stats.rounds
                << " rounds\n";
      return kOk;
    }

    if (eq_cmd->parsed()) {
      const SwitchedSystem a = load_json_file(eq_a);
      const SwitchedSystem b = load_json_file(eq_b);
      if (a.d != b.d) throw DimensionMismatch("models have different dimensions");
      const auto cex = equivalent_systems(a, b, eq_tol);
      if (!cex) {
        std::cout << "equivalent\n";
        return kOk;
      }
      std::cout << "not equivalent\ncounterexample: " << format_word(a.fa.alphabet(), *cex) << "\n";
      return kNotEquivalent;
    }

    if (dot_cmd->parsed()) {
      write_text(dot_out, to_dot(load_json_file(dot_model)));
      return kOk;
    }

    if (bench_cmd->parsed()) {
      const BenchGrid grid = parse_grid(read_text(bench_grid));
      const auto rows = run_bench(grid, bench_jobs);
      write_text(bench_out, bench_csv(rows));
      bool all_verified = true;
      for (const auto& row : rows) {
        if (!row.verified) {
          all_verified = false;
          std::cerr << "seed " << row.config.seed << ": learned system is not equivalent to the hidden one\n";
        }
      }
      return all_verified ? kOk : kRuntime;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidEvent& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
