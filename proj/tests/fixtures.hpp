#pragma once

#include <map>
#include <random>
#include <string>

#include "huci/database.hpp"
#include "huci/io.hpp"

namespace huci::testing {

// The worked example database: nine transactions over items A..H.
inline const char* kExampleTransactions =
    "1;A(4),C(1),E(6),F(2)\n"
    "2;D(1),E(4),F(5)\n"
    "3;B(4),D(1),E(5),F(1)\n"
    "4;D(1),E(2),F(6)\n"
    "5;A(3),C(1),E(1)\n"
    "6;B(1),F(2),H(1)\n"
    "7;D(1),E(1),F(4),G(1),H(1)\n"
    "8;D(7),E(3)\n"
    "9;G(10)\n";

inline const char* kExampleUtilities =
    "A,3\nB,4\nC,5\nD,2\nE,1\nF,1\nG,2\nH,1\n";

inline TransactionDatabase example_database() {
  return parse_quantity_format(std::string(kExampleTransactions), std::string(kExampleUtilities));
}

// All high-utility itemsets of the example at threshold 20.
inline std::map<std::string, Utility> example_huis_at_20() {
  return {{"A", 21},   {"B", 20},   {"D", 22},   {"G", 22},   {"E", 22},    {"F", 20},   {"A C", 31},
          {"A E", 28}, {"B E", 21}, {"D F", 24}, {"B F", 23}, {"D E", 37},  {"E F", 36}, {"A C E", 38},
          {"A E F", 20}, {"D E F", 36}, {"B D E", 23}, {"B E F", 22}, {"A C E F", 25}, {"B D E F", 24}};
}

// Closed itemset -> generator list, from the worked run at threshold 20.
inline std::map<std::string, std::vector<std::string>> example_hucis_at_20() {
  return {{"G", {}},          {"F", {}},        {"E", {}},          {"B F", {"B"}},
          {"D E", {"D"}},     {"E F", {}},      {"A C E", {"A"}},   {"D E F", {"D F"}},
          {"B D E F", {"B E"}}, {"A C E F", {"A E F"}}};
}

// Small random databases for differential testing: <= 8 items,
// <= 12 transactions, quantities 1..5, external utilities 1..10.
inline TransactionDatabase random_small_database(std::mt19937_64& rng) {
  DatabaseBuilder builder;
  std::uniform_int_distribution<int> n_items_dist(1, 8);
  std::uniform_int_distribution<int> n_tx_dist(1, 12);
  std::uniform_int_distribution<Utility> ext_dist(1, 10);
  std::uniform_int_distribution<std::int64_t> qty_dist(1, 5);
  int n_items = n_items_dist(rng);
  int n_tx = n_tx_dist(rng);
  for (int i = 0; i < n_items; ++i) {
    builder.add_item(std::string(1, static_cast<char>('a' + i)), ext_dist(rng));
  }
  std::uniform_int_distribution<int> len_dist(1, n_items);
  std::uniform_int_distribution<int> item_dist(0, n_items - 1);
  for (int t = 0; t < n_tx; ++t) {
    int len = len_dist(rng);
    std::vector<char> used(static_cast<std::size_t>(n_items), 0);
    std::vector<TransactionEntry> entries;
    while (static_cast<int>(entries.size()) < len) {
      int idx = item_dist(rng);
      if (used[static_cast<std::size_t>(idx)]) continue;
      used[static_cast<std::size_t>(idx)] = 1;
      entries.push_back({static_cast<ItemId>(idx), qty_dist(rng)});
    }
    builder.add_transaction(std::move(entries));
  }
  return builder.build();
}

}  // namespace huci::testing
