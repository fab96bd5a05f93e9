#include "swlearn/benchgen.hpp"

#include <limits>

namespace swlearn {

namespace {

constexpr int kReachabilityRetries = 64;
constexpr int kRankRetries = 1000;

}  // namespace

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double Rng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

SwitchedSystem random_system(const GenConfig& cfg) {
  if (cfg.num_nodes < 1 || cfg.num_events < 1 || cfg.num_labels < 1 || cfg.dim < 1) {
    throw ValidationError("random_system: all counts must be at least 1");
  }
  Rng rng(cfg.seed);
  const EventAlphabet alphabet = EventAlphabet::numbered(cfg.num_events);
  const std::size_t n = cfg.num_nodes;

  std::vector<LabelId> gamma(n);
  for (auto& g : gamma) g = static_cast<LabelId>(rng.below(cfg.num_labels));

  std::optional<Fa> fa;
  for (int attempt = 0; attempt < kReachabilityRetries; ++attempt) {
    std::vector<NodeId> delta(n * cfg.num_events);
    for (auto& t : delta) t = static_cast<NodeId>(rng.below(n));
    fa.emplace(alphabet, n, 0, std::move(delta), gamma);
    if (!cfg.require_reachable || reachable_part(*fa).num_nodes() == n) break;
  }
  if (cfg.require_reachable) fa = reachable_part(*fa);

  std::vector<Matrix> matrices;
  matrices.reserve(cfg.num_labels);
  for (std::size_t j = 0; j < cfg.num_labels; ++j) {
    Matrix m(cfg.dim, cfg.dim);
    int tries = 0;
    do {
      if (++tries > kRankRetries) {
        throw GenerationFailed("no full-rank matrix after " + std::to_string(kRankRetries) + " draws");
      }
      for (Index r = 0; r < cfg.dim; ++r)
        for (Index c = 0; c < cfg.dim; ++c) m(r, c) = rng.uniform(-1.0, 1.0);
    } while (!is_full_rank(m, cfg.full_rank_threshold));
    matrices.push_back(std::move(m));
  }

  SwitchedSystem sys{std::move(*fa), std::move(matrices), cfg.dim};
  if (!validate(sys, cfg.full_rank_threshold).empty()) throw GenerationFailed("generated system does not validate");
  return sys;
}

}  // namespace swlearn
