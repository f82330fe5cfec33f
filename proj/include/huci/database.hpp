#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "huci/core.hpp"

namespace huci {

struct ItemInfo {
  ItemId id = 0;
  std::string name;
  Utility external_utility = 0;  // profit per unit quantity, fixed-point scaled
};

struct TransactionEntry {
  ItemId item = 0;
  std::int64_t quantity = 0;
};

struct Transaction {
  Tid tid = 0;
  std::vector<TransactionEntry> entries;  // sorted by item id, distinct items
};

struct SupportResult {
  std::int64_t count = 0;
  double ratio = 0.0;
  bool ratio_defined = true;  // false on an empty database
};

class DatabaseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable quantitative transaction database with a utility table.
// Built through DatabaseBuilder; safe to share across threads afterwards.
class TransactionDatabase {
 public:
  const std::vector<ItemInfo>& items() const { return items_; }
  const std::vector<Transaction>& transactions() const { return transactions_; }

  std::size_t item_count() const { return items_.size(); }

  const ItemInfo& item(ItemId id) const { return items_.at(static_cast<std::size_t>(id)); }

  std::optional<ItemId> find_item(const std::string& name) const {
    auto it = name_to_id_.find(name);
    if (it == name_to_id_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& item_name(ItemId id) const { return item(id).name; }

  const Transaction& transaction(Tid tid) const {
    auto it = tid_to_index_.find(tid);
    if (it == tid_to_index_.end()) throw DatabaseError("unknown transaction id " + std::to_string(tid));
    return transactions_[it->second];
  }

  bool has_transaction(Tid tid) const { return tid_to_index_.count(tid) > 0; }

  std::int64_t quantity(ItemId item, Tid tid) const {
    const Transaction& t = transaction(tid);
    auto it = std::lower_bound(t.entries.begin(), t.entries.end(), item,
                               [](const TransactionEntry& e, ItemId id) { return e.item < id; });
    if (it == t.entries.end() || it->item != item) return 0;
    return it->quantity;
  }

  // u(i, t) = p_i * q(i, t); 0 when the item is absent from the transaction.
  Utility item_utility(ItemId item_id, Tid tid) const {
    return item(item_id).external_utility * quantity(item_id, tid);
  }

  bool transaction_contains(const Transaction& t, const Itemset& x) const {
    auto it = t.entries.begin();
    for (ItemId id : x) {
      while (it != t.entries.end() && it->item < id) ++it;
      if (it == t.entries.end() || it->item != id) return false;
    }
    return true;
  }

  // u(X): summed utility of X over all transactions containing X.
  Utility itemset_utility(const Itemset& x) const {
    if (x.empty()) return 0;
    Utility total = 0;
    for (const Transaction& t : transactions_) {
      if (!transaction_contains(t, x)) continue;
      for (ItemId id : x) total += item(id).external_utility * quantity_in(t, id);
    }
    return total;
  }

  // tu(t): utility of the whole transaction.
  Utility transaction_utility(Tid tid) const {
    const Transaction& t = transaction(tid);
    Utility total = 0;
    for (const TransactionEntry& e : t.entries) total += item(e.item).external_utility * e.quantity;
    return total;
  }

  Utility total_utility() const {
    Utility total = 0;
    for (const Transaction& t : transactions_) {
      for (const TransactionEntry& e : t.entries) total += item(e.item).external_utility * e.quantity;
    }
    return total;
  }

  SupportResult support(const Itemset& x) const {
    SupportResult r;
    for (const Transaction& t : transactions_) {
      if (transaction_contains(t, x)) ++r.count;
    }
    if (transactions_.empty()) {
      r.ratio_defined = false;
    } else {
      r.ratio = static_cast<double>(r.count) / static_cast<double>(transactions_.size());
    }
    return r;
  }

  std::int64_t support_count(const Itemset& x) const { return support(x).count; }

  Itemset itemset_from_names(const std::vector<std::string>& names) const {
    Itemset out;
    out.reserve(names.size());
    for (const std::string& n : names) {
      auto id = find_item(n);
      if (!id) throw DatabaseError("unknown item name: " + n);
      out.push_back(*id);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string itemset_to_string(const Itemset& x, const char* sep = " ") const {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i) out += sep;
      out += item_name(x[i]);
    }
    return out;
  }

 private:
  friend class DatabaseBuilder;

  static std::int64_t quantity_in(const Transaction& t, ItemId id) {
    auto it = std::lower_bound(t.entries.begin(), t.entries.end(), id,
                               [](const TransactionEntry& e, ItemId i) { return e.item < i; });
    return (it != t.entries.end() && it->item == id) ? it->quantity : 0;
  }

  std::vector<ItemInfo> items_;
  std::vector<Transaction> transactions_;
  std::unordered_map<std::string, ItemId> name_to_id_;
  std::unordered_map<Tid, std::size_t> tid_to_index_;
};

class DatabaseBuilder {
 public:
  ItemId add_item(const std::string& name, Utility external_utility) {
    if (external_utility < 0) throw DatabaseError("negative external utility for item " + name);
    auto it = db_.name_to_id_.find(name);
    if (it != db_.name_to_id_.end()) {
      db_.items_[static_cast<std::size_t>(it->second)].external_utility = external_utility;
      return it->second;
    }
    ItemId id = static_cast<ItemId>(db_.items_.size());
    db_.items_.push_back(ItemInfo{id, name, external_utility});
    db_.name_to_id_.emplace(name, id);
    return id;
  }

  ItemId intern_item(const std::string& name) {
    auto it = db_.name_to_id_.find(name);
    if (it != db_.name_to_id_.end()) return it->second;
    return add_item(name, 0);
  }

  bool has_item(const std::string& name) const { return db_.name_to_id_.count(name) > 0; }

  // Entries with zero quantity are dropped: containment is defined only for
  // quantity > 0.
  Tid add_transaction(std::vector<TransactionEntry> entries, std::optional<Tid> tid = std::nullopt) {
    Transaction t;
    t.tid = tid.value_or(next_tid_);
    if (db_.tid_to_index_.count(t.tid)) throw DatabaseError("duplicate transaction id " + std::to_string(t.tid));
    std::sort(entries.begin(), entries.end(),
              [](const TransactionEntry& a, const TransactionEntry& b) { return a.item < b.item; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const TransactionEntry& e = entries[i];
      if (e.quantity < 0) throw DatabaseError("negative quantity in transaction " + std::to_string(t.tid));
      if (e.item < 0 || static_cast<std::size_t>(e.item) >= db_.items_.size()) {
        throw DatabaseError("unknown item id in transaction " + std::to_string(t.tid));
      }
      if (i > 0 && entries[i - 1].item == e.item) {
        throw DatabaseError("duplicate item in transaction " + std::to_string(t.tid));
      }
      if (e.quantity == 0) continue;
      t.entries.push_back(e);
    }
    db_.transactions_.push_back(std::move(t));
    db_.tid_to_index_.emplace(db_.transactions_.back().tid, db_.transactions_.size() - 1);
    next_tid_ = std::max(next_tid_, db_.transactions_.back().tid) + 1;
    return db_.transactions_.back().tid;
  }

  TransactionDatabase build() { return std::move(db_); }

 private:
  TransactionDatabase db_;
  Tid next_tid_ = 1;
};

}  // namespace huci
