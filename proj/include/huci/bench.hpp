#pragma once

#include <chrono>

#include "huci/closure.hpp"

namespace huci {

struct BenchRow {
  Utility min_util = 0;
  std::size_t hui_count = 0;
  std::size_t huci_count = 0;
  std::size_t hg_count = 0;        // assigned generators; self-generated not counted
  std::size_t combined = 0;        // huci_count + hg_count
  std::size_t self_generated = 0;  // closed itemsets that are their own generator
  std::size_t peak_level_count = 0;  // size of the largest H_k
  double wall_seconds = 0.0;
};

inline BenchRow bench_one(const TransactionDatabase& db, Utility min_util, const MineOptions& options = {}) {
  BenchRow row;
  row.min_util = min_util;
  auto start = std::chrono::steady_clock::now();
  LeveledHuiSet h = mine_hui(db, min_util, options);
  std::vector<ClosedRecord> closed = huci_miner(db, h);
  row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  row.hui_count = h.total_count();
  row.huci_count = closed.size();
  for (std::size_t k = 1; k <= h.max_length(); ++k) {
    row.peak_level_count = std::max(row.peak_level_count, h.level(k).size());
  }
  for (const ClosedRecord& r : closed) {
    row.hg_count += r.generators.size();
    if (r.self_generated()) ++row.self_generated;
  }
  row.combined = row.huci_count + row.hg_count;
  return row;
}

// One row per threshold; counts are non-increasing as min_util rises.
inline std::vector<BenchRow> run_bench(const TransactionDatabase& db, const std::vector<Utility>& thresholds,
                                       const MineOptions& options = {}) {
  std::vector<BenchRow> rows;
  rows.reserve(thresholds.size());
  for (Utility t : thresholds) rows.push_back(bench_one(db, t, options));
  return rows;
}

}  // namespace huci
