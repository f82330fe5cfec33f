#pragma once

#include <atomic>
#include <cmath>
#include <memory>
#include <thread>
#include <unordered_map>

#include "huci/database.hpp"

namespace huci {

// Total order over items: TWU ascending, ties broken by item id.
struct TwuTable {
  std::vector<Utility> twu;            // indexed by item id
  std::vector<ItemId> order;           // all items sorted under the order
  std::vector<std::int32_t> rank;      // indexed by item id; position in `order`

  bool precedes(ItemId a, ItemId b) const { return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)]; }
};

inline TwuTable compute_twu(const TransactionDatabase& db) {
  TwuTable table;
  table.twu.assign(db.item_count(), 0);
  for (const Transaction& t : db.transactions()) {
    Utility tu = db.transaction_utility(t.tid);
    for (const TransactionEntry& e : t.entries) table.twu[static_cast<std::size_t>(e.item)] += tu;
  }
  table.order.resize(db.item_count());
  for (std::size_t i = 0; i < db.item_count(); ++i) table.order[i] = static_cast<ItemId>(i);
  std::sort(table.order.begin(), table.order.end(), [&](ItemId a, ItemId b) {
    Utility ta = table.twu[static_cast<std::size_t>(a)], tb = table.twu[static_cast<std::size_t>(b)];
    if (ta != tb) return ta < tb;
    return a < b;
  });
  table.rank.assign(db.item_count(), -1);
  for (std::size_t i = 0; i < table.order.size(); ++i) table.rank[static_cast<std::size_t>(table.order[i])] = static_cast<std::int32_t>(i);
  return table;
}

// twu(X): sum of tu over transactions containing X.
inline Utility itemset_twu(const TransactionDatabase& db, const Itemset& x) {
  Utility total = 0;
  for (const Transaction& t : db.transactions()) {
    if (db.transaction_contains(t, x)) total += db.transaction_utility(t.tid);
  }
  return total;
}

struct UtilityListElement {
  Tid tid = 0;
  Utility iutil = 0;  // utility of the itemset in this transaction
  Utility rutil = 0;  // utility of items strictly after the itemset's last item
};

struct UtilityList {
  std::vector<ItemId> itemset;  // increasing under the TWU order
  std::vector<UtilityListElement> elements;  // sorted by tid
  Utility sum_iutil = 0;
  Utility sum_rutil = 0;

  std::int64_t support_count() const { return static_cast<std::int64_t>(elements.size()); }

  void push(Tid tid, Utility iutil, Utility rutil) {
    elements.push_back({tid, iutil, rutil});
    sum_iutil += iutil;
    sum_rutil += rutil;
  }
};

// One utility-list per item whose TWU passes min_util; rutil is computed over
// surviving items only, under the TWU order.
inline std::vector<UtilityList> build_initial_lists(const TransactionDatabase& db, const TwuTable& twu,
                                                    Utility min_util) {
  std::vector<UtilityList> lists;
  std::vector<std::int32_t> list_index(db.item_count(), -1);
  for (ItemId id : twu.order) {
    if (twu.twu[static_cast<std::size_t>(id)] >= min_util && twu.twu[static_cast<std::size_t>(id)] > 0) {
      list_index[static_cast<std::size_t>(id)] = static_cast<std::int32_t>(lists.size());
      lists.push_back(UtilityList{{id}, {}, 0, 0});
    }
  }
  std::vector<const Transaction*> txs;
  txs.reserve(db.transactions().size());
  for (const Transaction& t : db.transactions()) txs.push_back(&t);
  std::sort(txs.begin(), txs.end(), [](const Transaction* a, const Transaction* b) { return a->tid < b->tid; });

  std::vector<std::pair<ItemId, Utility>> revised;
  for (const Transaction* t : txs) {
    revised.clear();
    for (const TransactionEntry& e : t->entries) {
      if (list_index[static_cast<std::size_t>(e.item)] < 0) continue;
      revised.emplace_back(e.item, db.item(e.item).external_utility * e.quantity);
    }
    std::sort(revised.begin(), revised.end(),
              [&](const auto& a, const auto& b) { return twu.precedes(a.first, b.first); });
    Utility remaining = 0;
    for (auto it = revised.rbegin(); it != revised.rend(); ++it) {
      lists[static_cast<std::size_t>(list_index[static_cast<std::size_t>(it->first)])].push(t->tid, it->second,
                                                                                           remaining);
      remaining += it->second;
    }
  }
  return lists;
}

// Joins two lists sharing a length-(k-1) prefix into the (k+1)-itemset list.
// iutil(xy,t) = iutil(x,t) + iutil(y,t) - iutil(prefix,t); rutil(xy,t) = rutil(y,t).
inline UtilityList join_lists(const UtilityList& px, const UtilityList& py, const UtilityList* prefix) {
  if (px.itemset.size() != py.itemset.size() || px.itemset.empty() ||
      !std::equal(px.itemset.begin(), px.itemset.end() - 1, py.itemset.begin(), py.itemset.end() - 1) ||
      px.itemset.back() == py.itemset.back()) {
    throw DatabaseError("join_lists: operand itemsets do not share a prefix");
  }
  if (prefix && !std::equal(prefix->itemset.begin(), prefix->itemset.end(), px.itemset.begin(),
                            px.itemset.end() - 1)) {
    throw DatabaseError("join_lists: prefix mismatch");
  }
  UtilityList out;
  out.itemset = px.itemset;
  out.itemset.push_back(py.itemset.back());
  auto ix = px.elements.begin();
  auto iy = py.elements.begin();
  auto ip = prefix ? prefix->elements.begin() : decltype(ix){};
  while (ix != px.elements.end() && iy != py.elements.end()) {
    if (ix->tid < iy->tid) {
      ++ix;
    } else if (iy->tid < ix->tid) {
      ++iy;
    } else {
      Utility iutil = ix->iutil + iy->iutil;
      if (prefix) {
        while (ip != prefix->elements.end() && ip->tid < ix->tid) ++ip;
        iutil -= ip->iutil;  // prefix contains every tid of its extensions
        ++ip;
      }
      out.push(ix->tid, iutil, iy->rutil);
      ++ix;
      ++iy;
    }
  }
  return out;
}

struct HuiRecord {
  Itemset itemset;  // canonical: sorted by item id
  std::int64_t support_count = 0;
  Utility utility = 0;
  bool closed = true;
  bool key = true;
};

// H_1..H_max with per-level exact lookup.
class LeveledHuiSet {
 public:
  void add(HuiRecord record) {
    std::size_t k = record.itemset.size();
    if (k == 0) return;
    if (levels_.size() < k) {
      levels_.resize(k);
      index_.resize(k);
    }
    index_[k - 1].emplace(record.itemset, levels_[k - 1].size());
    levels_[k - 1].push_back(std::move(record));
  }

  std::size_t max_length() const { return levels_.size(); }

  const std::vector<HuiRecord>& level(std::size_t k) const {
    static const std::vector<HuiRecord> empty;
    return (k >= 1 && k <= levels_.size()) ? levels_[k - 1] : empty;
  }

  std::vector<HuiRecord>& level_mutable(std::size_t k) { return levels_.at(k - 1); }

  const HuiRecord* find(const Itemset& x) const {
    if (x.empty() || x.size() > levels_.size()) return nullptr;
    const auto& idx = index_[x.size() - 1];
    auto it = idx.find(x);
    return it == idx.end() ? nullptr : &levels_[x.size() - 1][it->second];
  }

  HuiRecord* find_mutable(const Itemset& x) {
    return const_cast<HuiRecord*>(static_cast<const LeveledHuiSet*>(this)->find(x));
  }

  std::size_t total_count() const {
    std::size_t n = 0;
    for (const auto& l : levels_) n += l.size();
    return n;
  }

  std::vector<HuiRecord> flatten() const {
    std::vector<HuiRecord> out;
    out.reserve(total_count());
    for (const auto& l : levels_) out.insert(out.end(), l.begin(), l.end());
    return out;
  }

 private:
  std::vector<std::vector<HuiRecord>> levels_;
  std::vector<std::unordered_map<Itemset, std::size_t, ItemsetHash>> index_;
};

struct MineOptions {
  bool cooccurrence_pruning = true;  // pairwise-TWU join skipping; output-neutral
  unsigned threads = 1;              // 0 = hardware concurrency
};

namespace detail {

// Pairwise TWU of items co-occurring in at least one revised transaction.
class CooccurrenceMap {
 public:
  void add(ItemId a, ItemId b, Utility tu) { map_[key(a, b)] += tu; }

  Utility get(ItemId a, ItemId b) const {
    auto it = map_.find(key(a, b));
    return it == map_.end() ? 0 : it->second;
  }

 private:
  static std::uint64_t key(ItemId a, ItemId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  }
  std::unordered_map<std::uint64_t, Utility> map_;
};

struct MinerContext {
  Utility min_util = 0;
  bool use_eucs = false;
  const CooccurrenceMap* eucs = nullptr;
};

inline void emit(const UtilityList& ul, std::vector<HuiRecord>& out) {
  HuiRecord r;
  r.itemset = ul.itemset;
  std::sort(r.itemset.begin(), r.itemset.end());
  r.support_count = ul.support_count();
  r.utility = ul.sum_iutil;
  out.push_back(std::move(r));
}

inline void explore(const MinerContext& ctx, const UtilityList* prefix,
                    const std::vector<UtilityList>& extensions, std::vector<HuiRecord>& out) {
  for (std::size_t i = 0; i < extensions.size(); ++i) {
    const UtilityList& px = extensions[i];
    if (px.sum_iutil >= ctx.min_util && !px.elements.empty()) emit(px, out);
    if (px.sum_iutil + px.sum_rutil < ctx.min_util || px.elements.empty()) continue;
    std::vector<UtilityList> next;
    for (std::size_t j = i + 1; j < extensions.size(); ++j) {
      const UtilityList& py = extensions[j];
      if (ctx.use_eucs && ctx.eucs->get(px.itemset.back(), py.itemset.back()) < ctx.min_util) continue;
      UtilityList joined = join_lists(px, py, prefix);
      if (!joined.elements.empty()) next.push_back(std::move(joined));
    }
    if (!next.empty()) explore(ctx, &px, next, out);
  }
}

}  // namespace detail

// Complete high-utility itemset mining: exactly {X : u(X) >= min_util,
// supp(X) > 0}, with exact support and utility, partitioned by length.
inline LeveledHuiSet mine_hui(const TransactionDatabase& db, Utility min_util,
                              const MineOptions& options = {}) {
  TwuTable twu = compute_twu(db);
  std::vector<UtilityList> singles = build_initial_lists(db, twu, min_util);

  detail::CooccurrenceMap eucs;
  if (options.cooccurrence_pruning) {
    std::vector<char> promising(db.item_count(), 0);
    for (const UtilityList& ul : singles) promising[static_cast<std::size_t>(ul.itemset[0])] = 1;
    for (const Transaction& t : db.transactions()) {
      Utility tu = db.transaction_utility(t.tid);
      for (std::size_t a = 0; a < t.entries.size(); ++a) {
        if (!promising[static_cast<std::size_t>(t.entries[a].item)]) continue;
        for (std::size_t b = a + 1; b < t.entries.size(); ++b) {
          if (!promising[static_cast<std::size_t>(t.entries[b].item)]) continue;
          eucs.add(t.entries[a].item, t.entries[b].item, tu);
        }
      }
    }
  }

  detail::MinerContext ctx{min_util, options.cooccurrence_pruning, &eucs};

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  std::vector<std::vector<HuiRecord>> per_subtree(singles.size());

  auto run_subtree = [&](std::size_t i) {
    const UtilityList& px = singles[i];
    std::vector<HuiRecord>& out = per_subtree[i];
    if (px.sum_iutil >= ctx.min_util && !px.elements.empty()) detail::emit(px, out);
    if (px.sum_iutil + px.sum_rutil < ctx.min_util || px.elements.empty()) return;
    std::vector<UtilityList> next;
    for (std::size_t j = i + 1; j < singles.size(); ++j) {
      if (ctx.use_eucs && eucs.get(px.itemset.back(), singles[j].itemset.back()) < ctx.min_util) continue;
      UtilityList joined = join_lists(px, singles[j], nullptr);
      if (!joined.elements.empty()) next.push_back(std::move(joined));
    }
    if (!next.empty()) detail::explore(ctx, &px, next, out);
  };

  if (threads <= 1 || singles.size() <= 1) {
    for (std::size_t i = 0; i < singles.size(); ++i) run_subtree(i);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(singles.size()));
    for (unsigned w = 0; w < n; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = cursor.fetch_add(1); i < singles.size(); i = cursor.fetch_add(1)) run_subtree(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Merge in subtree order: output is independent of scheduling.
  LeveledHuiSet result;
  for (auto& chunk : per_subtree) {
    for (auto& rec : chunk) result.add(std::move(rec));
  }
  return result;
}

// Percentage thresholds resolve with ceiling to keep "at least min_util" exact.
inline Utility resolve_min_util_percent(Utility total_utility, double percent) {
  long double raw = static_cast<long double>(total_utility) * static_cast<long double>(percent) / 100.0L;
  return static_cast<Utility>(std::ceil(raw - 1e-9L));
}

}  // namespace huci
