#include "swlearn/bench.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "json.hpp"

namespace swlearn {

EquivalenceMode parse_equivalence_mode(const std::string& name) {
  if (name == "exact") return EquivalenceMode::Exact;
  if (name == "bounded") return EquivalenceMode::Bounded;
  throw ParseError("unknown equivalence mode '" + name + "' (expected exact or bounded)");
}

LearnResult learn_hidden(const SwitchedSystem& hidden, const LearnSetup& setup, const LearnOptions& options) {
  WhiteBoxObservation obs(hidden);
  LearnOptions opts = options;
  opts.tol = setup.tol;
  if (setup.mode == EquivalenceMode::Exact) {
    WhiteBoxEquivalence eq(hidden, setup.tol);
    return learn(obs, eq, hidden.fa.alphabet(), hidden.d, opts);
  }
  const std::size_t bound = setup.max_length != 0 ? setup.max_length : 2 * hidden.fa.num_nodes() + 1;
  BoundedTestingEquivalence eq(obs, bound, setup.tol);
  return learn(obs, eq, hidden.fa.alphabet(), hidden.d, opts);
}

BenchGrid parse_grid(const std::string& text) {
  using json = nlohmann::json;
  BenchGrid grid;
  try {
    const json j = json::parse(text);
    if (j.contains("eq")) grid.setup.mode = parse_equivalence_mode(j.at("eq").get<std::string>());
    if (j.contains("L")) grid.setup.max_length = j.at("L").get<std::size_t>();
    if (j.contains("tol")) grid.setup.tol = j.at("tol").get<double>();
    if (!j.contains("runs") || !j.at("runs").is_array()) throw ParseError("grid needs a 'runs' array");
    for (const json& run : j.at("runs")) {
      GenConfig base;
      base.num_nodes = run.at("nodes").get<std::size_t>();
      base.num_events = run.at("events").get<std::size_t>();
      base.num_labels = run.at("labels").get<std::size_t>();
      base.dim = run.at("dim").get<Index>();
      if (run.contains("rank_threshold")) base.full_rank_threshold = run.at("rank_threshold").get<double>();
      std::vector<std::uint64_t> seeds;
      if (run.contains("seeds")) {
        seeds = run.at("seeds").get<std::vector<std::uint64_t>>();
      } else {
        seeds.push_back(run.value("seed", std::uint64_t{0}));
      }
      for (std::uint64_t s : seeds) {
        GenConfig cfg = base;
        cfg.seed = s;
        grid.configs.push_back(cfg);
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad grid: ") + e.what());
  }
  return grid;
}

std::vector<BenchRow> run_bench(const BenchGrid& grid, unsigned workers) {
  std::vector<BenchRow> rows(grid.configs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        const SwitchedSystem hidden = random_system(grid.configs[i]);
        const LearnResult result = learn_hidden(hidden, grid.setup);
        BenchRow& row = rows[i];
        row.config = grid.configs[i];
        row.stats = result.stats;
        row.hidden_nodes = hidden.fa.num_nodes();
        row.learned_nodes = result.system.fa.num_nodes();
        row.verified = !equivalent_systems(hidden, result.system, grid.setup.tol).has_value();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  workers = std::max(1u, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string bench_csv_header() {
  return "|Q|,|Σ|,|Λ|,d,seed,io_queries,output_computations,equivalence_queries,rounds,wall_ms";
}

std::string bench_csv_row(const BenchRow& row) {
  char wall[64];
  std::snprintf(wall, sizeof wall, "%.3f", row.stats.wall_ms);
  const auto& c = row.config;
  return std::to_string(c.num_nodes) + "," + std::to_string(c.num_events) + "," + std::to_string(c.num_labels) +
         "," + std::to_string(c.dim) + "," + std::to_string(c.seed) + "," + std::to_string(row.stats.io_queries) +
         "," + std::to_string(row.stats.output_computations) + "," +
         std::to_string(row.stats.equivalence_queries) + "," + std::to_string(row.stats.rounds) + "," + wall;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = bench_csv_header() + "\n";
  for (const auto& r : rows) out += bench_csv_row(r) + "\n";
  return out;
}

}  // namespace swlearn
