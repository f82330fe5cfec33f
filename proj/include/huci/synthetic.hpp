#pragma once

#include <cmath>
#include <random>
#include <string>

#include "huci/database.hpp"

namespace huci {

struct SyntheticParams {
  std::size_t n_transactions = 100;
  std::size_t n_items = 20;
  double avg_len = 5.0;
  std::int64_t quantity_max = 10;
  // External utilities are drawn log-normally and clamped to [0.01, 10],
  // stored fixed-point at `utility_scale` (100 keeps 0.01 exact).
  double lognormal_mu = 0.0;
  double lognormal_sigma = 1.0;
  std::int64_t utility_scale = 100;
  std::uint64_t seed = 0;
};

// Deterministic for a fixed seed. Transaction lengths are uniform in
// [1, 2*avg_len-1] clamped to n_items; items sampled without replacement;
// quantities uniform in [1, quantity_max].
inline TransactionDatabase generate_synthetic(const SyntheticParams& p) {
  if (p.n_transactions == 0 || p.n_items == 0 || p.quantity_max <= 0 || p.avg_len <= 0) {
    throw DatabaseError("synthetic parameters must be positive");
  }
  if (p.avg_len > static_cast<double>(p.n_items)) {
    throw DatabaseError("avg_len exceeds n_items");
  }
  std::mt19937_64 rng(p.seed);
  DatabaseBuilder builder;
  std::lognormal_distribution<double> ext(p.lognormal_mu, p.lognormal_sigma);
  for (std::size_t i = 0; i < p.n_items; ++i) {
    double v = std::clamp(ext(rng), 0.01, 10.0);
    Utility scaled = static_cast<Utility>(std::llround(v * static_cast<double>(p.utility_scale)));
    if (scaled < 1) scaled = 1;
    builder.add_item("i" + std::to_string(i + 1), scaled);
  }
  std::size_t max_len = std::min<std::size_t>(p.n_items, static_cast<std::size_t>(2.0 * p.avg_len) - 1);
  if (max_len < 1) max_len = 1;
  std::uniform_int_distribution<std::size_t> len_dist(1, max_len);
  std::uniform_int_distribution<std::int64_t> qty_dist(1, p.quantity_max);
  std::uniform_int_distribution<std::size_t> item_dist(0, p.n_items - 1);
  std::vector<char> used(p.n_items, 0);
  for (std::size_t t = 0; t < p.n_transactions; ++t) {
    std::size_t len = len_dist(rng);
    std::fill(used.begin(), used.end(), 0);
    std::vector<TransactionEntry> entries;
    entries.reserve(len);
    while (entries.size() < len) {
      std::size_t idx = item_dist(rng);
      if (used[idx]) continue;
      used[idx] = 1;
      entries.push_back({static_cast<ItemId>(idx), qty_dist(rng)});
    }
    builder.add_transaction(std::move(entries));
  }
  return builder.build();
}

}  // namespace huci
