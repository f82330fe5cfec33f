#pragma once

#include <list>
#include <unordered_map>

#include "huci/mining.hpp"

namespace huci {

// A high-utility closed itemset with its utility unit array and assigned
// high-utility generators. An empty generator list means the itemset is its
// own generator.
struct ClosedRecord {
  Itemset itemset;  // canonical: sorted by item id
  std::int64_t support_count = 0;
  Utility utility = 0;
  std::vector<Utility> unit_array;  // aligned with itemset order
  std::vector<Itemset> generators;

  bool self_generated() const { return generators.empty(); }
};

struct GeneratorEntry {
  Itemset itemset;
  std::int64_t support_count = 0;
  Utility utility = 0;
};

// Global set of not-yet-assigned high-utility generators.
class GeneratorPool {
 public:
  void add(GeneratorEntry entry) { entries_.push_back(std::move(entry)); }

  // Moves every proper subset of `target` out of the pool into `out`.
  // Each such generator's closure is exactly the first closed superset met
  // level-wise, so removal keeps later closed itemsets from capturing it.
  void extract_subsets_of(const Itemset& target, std::int64_t target_support,
                          std::vector<Itemset>& out, bool remove = true) {
    for (auto it = entries_.begin(); it != entries_.end();) {
      if (is_proper_subset(it->itemset, target)) {
        if (remove && it->support_count != target_support) {
          throw DatabaseError("generator support differs from its closed itemset; miner output inconsistent");
        }
        out.push_back(it->itemset);
        if (remove) {
          it = entries_.erase(it);
          continue;
        }
      }
      ++it;
    }
  }

  std::size_t size() const { return entries_.size(); }
  const std::list<GeneratorEntry>& entries() const { return entries_; }

 private:
  std::list<GeneratorEntry> entries_;
};

struct HuciOptions {
  // Disabling removal reproduces the faulty no-removal variant (a generator
  // then attaches to every closed superset); used by fault-injection tests.
  bool remove_assigned_generators = true;
};

// Per-item tid lists and singleton utility-lists, built in one database pass.
// Unit arrays come from these lists restricted to the closed itemset's
// supporting tids, with no further database scan.
class TidIndex {
 public:
  explicit TidIndex(const TransactionDatabase& db) {
    tids_.resize(db.item_count());
    item_tid_utility_.resize(db.item_count());
    std::vector<const Transaction*> txs;
    for (const Transaction& t : db.transactions()) txs.push_back(&t);
    std::sort(txs.begin(), txs.end(), [](const Transaction* a, const Transaction* b) { return a->tid < b->tid; });
    for (const Transaction* t : txs) {
      for (const TransactionEntry& e : t->entries) {
        tids_[static_cast<std::size_t>(e.item)].push_back(t->tid);
        item_tid_utility_[static_cast<std::size_t>(e.item)].emplace_back(
            t->tid, db.item(e.item).external_utility * e.quantity);
      }
    }
  }

  std::vector<Tid> supporting_tids(const Itemset& x) const {
    if (x.empty()) return {};
    std::vector<Tid> acc = tids_[static_cast<std::size_t>(x[0])];
    for (std::size_t i = 1; i < x.size() && !acc.empty(); ++i) {
      const auto& next = tids_[static_cast<std::size_t>(x[i])];
      std::vector<Tid> merged;
      std::set_intersection(acc.begin(), acc.end(), next.begin(), next.end(), std::back_inserter(merged));
      acc = std::move(merged);
    }
    return acc;
  }

  // luv(i, X) for each item of X, via the singleton utility-lists.
  std::vector<Utility> unit_array(const Itemset& x) const {
    std::vector<Tid> tids = supporting_tids(x);
    if (tids.empty()) throw DatabaseError("unit array requested for zero-support itemset");
    std::vector<Utility> out;
    out.reserve(x.size());
    for (ItemId id : x) {
      const auto& list = item_tid_utility_[static_cast<std::size_t>(id)];
      Utility luv = 0;
      auto it = list.begin();
      for (Tid tid : tids) {
        while (it != list.end() && it->first < tid) ++it;
        if (it != list.end() && it->first == tid) luv += it->second;
      }
      out.push_back(luv);
    }
    return out;
  }

 private:
  std::vector<std::vector<Tid>> tids_;
  std::vector<std::vector<std::pair<Tid, Utility>>> item_tid_utility_;
};

inline std::vector<Utility> compute_unit_array(const TransactionDatabase& db, const Itemset& x) {
  return TidIndex(db).unit_array(x);
}

// luv(X, record.itemset): sum of the aligned unit-array entries.
inline Utility local_utility_value(const ClosedRecord& record, const Itemset& x) {
  if (!is_subset(x, record.itemset)) throw DatabaseError("local_utility_value: not a subset");
  Utility total = 0;
  std::size_t j = 0;
  for (ItemId id : x) {
    while (j < record.itemset.size() && record.itemset[j] < id) ++j;
    total += record.unit_array[j];
  }
  return total;
}

// Assigns pool generators that are proper subsets of each closed itemset of
// one level, then (by the caller) the pool absorbs that level's non-closed keys.
inline void assign_generators(std::vector<ClosedRecord>& ch_level, GeneratorPool& pool,
                              bool remove = true) {
  for (ClosedRecord& ch : ch_level) {
    pool.extract_subsets_of(ch.itemset, ch.support_count, ch.generators, remove);
  }
}

// Level-wise identification of high-utility closed itemsets and their
// high-utility generators, from the complete HUI set.
inline std::vector<ClosedRecord> huci_miner(const TransactionDatabase& db, LeveledHuiSet h,
                                            const HuciOptions& options = {}) {
  std::size_t max = h.max_length();
  std::vector<ClosedRecord> result;
  if (max == 0) return result;

  TidIndex index(db);
  GeneratorPool pool;

  auto finalize_level = [&](std::size_t k) {
    // Closed flags of H_k are final here. Emit CH_k, assign generators from
    // the pool (which holds only non-closed keys of strictly smaller length),
    // then absorb H_k's non-closed keys.
    std::vector<ClosedRecord> ch;
    for (const HuiRecord& rec : h.level(k)) {
      if (!rec.closed) continue;
      ClosedRecord cr;
      cr.itemset = rec.itemset;
      cr.support_count = rec.support_count;
      cr.utility = rec.utility;
      ch.push_back(std::move(cr));
    }
    assign_generators(ch, pool, options.remove_assigned_generators);
    for (const HuiRecord& rec : h.level(k)) {
      if (rec.key && !rec.closed) pool.add({rec.itemset, rec.support_count, rec.utility});
    }
    for (ClosedRecord& cr : ch) {
      cr.unit_array = index.unit_array(cr.itemset);
      result.push_back(std::move(cr));
    }
  };

  for (std::size_t k = 2; k <= max; ++k) {
    for (HuiRecord& hk : h.level_mutable(k)) {
      if (hk.itemset.size() != k) throw DatabaseError("level index inconsistent with itemset length");
      for (std::size_t drop = k; drop-- > 0;) {
        // sub = itemset minus the item at position `drop`
        Itemset s;
        s.reserve(k - 1);
        for (std::size_t i = 0; i < k; ++i) {
          if (i != drop) s.push_back(hk.itemset[i]);
        }
        HuiRecord* parent = h.find_mutable(s);
        if (parent && parent->support_count == hk.support_count) {
          hk.key = false;
          parent->closed = false;
        }
      }
    }
    finalize_level(k - 1);
  }
  finalize_level(max);  // no longer level exists; every survivor is closed

  std::sort(result.begin(), result.end(), [](const ClosedRecord& a, const ClosedRecord& b) {
    if (a.itemset.size() != b.itemset.size()) return a.itemset.size() < b.itemset.size();
    return a.itemset < b.itemset;
  });
  for (ClosedRecord& cr : result) std::sort(cr.generators.begin(), cr.generators.end());
  return result;
}

// All HUIs of the record's equivalence class: every Z with g ⊆ Z ⊆ X for some
// generator g (or X itself when self-generated), utility read off the unit
// array, filtered by min_util. Support of every member equals the record's.
inline std::vector<std::pair<Itemset, Utility>> expand_class(const ClosedRecord& record, Utility min_util) {
  std::vector<std::pair<Itemset, Utility>> out;
  if (record.self_generated()) {
    out.emplace_back(record.itemset, record.utility);
    return out;
  }
  std::size_t n = record.itemset.size();
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    Itemset z;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ull << i)) z.push_back(record.itemset[i]);
    }
    bool covered = false;
    for (const Itemset& g : record.generators) {
      if (is_subset(g, z)) {
        covered = true;
        break;
      }
    }
    if (!covered) continue;
    Utility u = local_utility_value(record, z);
    if (u >= min_util) out.emplace_back(std::move(z), u);
  }
  return out;
}

}  // namespace huci
