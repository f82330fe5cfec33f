#pragma once

#include <bit>
#include <map>
#include <string>

#include "huci/closure.hpp"
#include "huci/rules.hpp"

namespace huci::oracle {

// Which constraint is applied first when computing generators.
enum class GeneratorOrdering {
  kUtilityFirst,  // high utility generators: no proper equal-support HUI subset
  kSupportFirst,  // generators with high utility: classic generators, then utility filter
};

struct OracleHui {
  Itemset itemset;
  std::int64_t support_count = 0;
  Utility utility = 0;
};

struct OracleClosedRecord {
  Itemset itemset;
  std::int64_t support_count = 0;
  Utility utility = 0;
  std::vector<Utility> unit_array;
  std::vector<Itemset> generators;
};

// Exhaustive reference implementation over the power set of occurring items.
// Support counting uses transaction bitsets; nothing is shared with the
// mining or closure engines.
class BruteForce {
 public:
  static constexpr std::size_t kDefaultCap = 16;

  explicit BruteForce(const TransactionDatabase& db, std::size_t item_cap = kDefaultCap) : db_(&db) {
    std::vector<char> occurs(db.item_count(), 0);
    for (const Transaction& t : db.transactions()) {
      for (const TransactionEntry& e : t.entries) occurs[static_cast<std::size_t>(e.item)] = 1;
    }
    for (std::size_t i = 0; i < occurs.size(); ++i) {
      if (occurs[i]) universe_.push_back(static_cast<ItemId>(i));
    }
    if (universe_.size() > item_cap) {
      throw DatabaseError("oracle enumeration cap exceeded: " + std::to_string(universe_.size()) +
                          " occurring items > cap " + std::to_string(item_cap));
    }
    std::vector<std::int32_t> pos(db.item_count(), -1);
    for (std::size_t i = 0; i < universe_.size(); ++i) pos[static_cast<std::size_t>(universe_[i])] = static_cast<std::int32_t>(i);
    std::vector<const Transaction*> txs;
    for (const Transaction& t : db.transactions()) txs.push_back(&t);
    std::sort(txs.begin(), txs.end(), [](const Transaction* a, const Transaction* b) { return a->tid < b->tid; });
    for (const Transaction* t : txs) {
      std::uint32_t mask = 0;
      std::vector<Utility> utils(universe_.size(), 0);
      for (const TransactionEntry& e : t->entries) {
        std::int32_t p = pos[static_cast<std::size_t>(e.item)];
        mask |= 1u << p;
        utils[static_cast<std::size_t>(p)] = db.item(e.item).external_utility * e.quantity;
      }
      tx_masks_.push_back(mask);
      tx_utils_.push_back(std::move(utils));
      tx_tids_.push_back(t->tid);
    }
  }

  std::size_t universe_size() const { return universe_.size(); }

  std::int64_t support(std::uint32_t mask) const {
    std::int64_t n = 0;
    for (std::uint32_t tm : tx_masks_) {
      if ((tm & mask) == mask) ++n;
    }
    return n;
  }

  Utility utility(std::uint32_t mask) const {
    Utility total = 0;
    for (std::size_t t = 0; t < tx_masks_.size(); ++t) {
      if ((tx_masks_[t] & mask) != mask) continue;
      std::uint32_t m = mask;
      while (m) {
        std::uint32_t bit = m & (~m + 1);
        total += tx_utils_[t][static_cast<std::size_t>(std::countr_zero(bit))];
        m ^= bit;
      }
    }
    return total;
  }

  // γ(X): intersection of all transactions containing X.
  std::uint32_t closure(std::uint32_t mask) const {
    std::uint32_t acc = ~0u;
    bool any = false;
    for (std::uint32_t tm : tx_masks_) {
      if ((tm & mask) == mask) {
        acc &= tm;
        any = true;
      }
    }
    if (!any) throw DatabaseError("closure of zero-support itemset");
    return acc;
  }

  Itemset to_itemset(std::uint32_t mask) const {
    Itemset out;
    std::uint32_t m = mask;
    while (m) {
      std::uint32_t bit = m & (~m + 1);
      out.push_back(universe_[static_cast<std::size_t>(std::countr_zero(bit))]);
      m ^= bit;
    }
    return out;
  }

  std::uint32_t to_mask(const Itemset& x) const {
    std::uint32_t mask = 0;
    for (ItemId id : x) {
      auto it = std::lower_bound(universe_.begin(), universe_.end(), id);
      if (it == universe_.end() || *it != id) throw DatabaseError("itemset contains a non-occurring item");
      mask |= 1u << (it - universe_.begin());
    }
    return mask;
  }

  std::vector<Utility> unit_array(std::uint32_t mask) const {
    std::vector<Utility> out;
    Itemset items = to_itemset(mask);
    for (ItemId id : items) {
      std::uint32_t bit = to_mask({id});
      Utility luv = 0;
      for (std::size_t t = 0; t < tx_masks_.size(); ++t) {
        if ((tx_masks_[t] & mask) == mask) {
          luv += tx_utils_[t][static_cast<std::size_t>(std::countr_zero(bit))];
        }
      }
      out.push_back(luv);
    }
    return out;
  }

  std::vector<OracleHui> high_utility_itemsets(Utility min_util) const {
    std::vector<OracleHui> out;
    std::uint32_t full = universe_.empty() ? 0 : (universe_.size() == 32 ? ~0u : (1u << universe_.size()) - 1);
    for (std::uint32_t mask = 1; mask <= full && full; ++mask) {
      std::int64_t supp = support(mask);
      if (supp == 0) continue;
      Utility u = utility(mask);
      if (u >= min_util) out.push_back({to_itemset(mask), supp, u});
    }
    return out;
  }

  std::vector<OracleClosedRecord> closures_and_generators(Utility min_util,
                                                          GeneratorOrdering ordering) const {
    std::vector<OracleHui> huis = high_utility_itemsets(min_util);
    std::map<std::uint32_t, OracleHui> by_mask;
    for (const OracleHui& h : huis) by_mask.emplace(to_mask(h.itemset), h);

    std::vector<OracleClosedRecord> closed;
    std::map<std::uint32_t, std::size_t> closed_index;
    for (const auto& [mask, h] : by_mask) {
      if (closure(mask) != mask) continue;
      OracleClosedRecord cr;
      cr.itemset = h.itemset;
      cr.support_count = h.support_count;
      cr.utility = h.utility;
      cr.unit_array = unit_array(mask);
      closed_index.emplace(mask, closed.size());
      closed.push_back(std::move(cr));
    }

    std::vector<std::uint32_t> generators;
    if (ordering == GeneratorOrdering::kUtilityFirst) {
      // Definition of high utility generator: HUI with no proper equal-support
      // HUI subset.
      for (const auto& [mask, h] : by_mask) {
        bool minimal = true;
        for (const auto& [other, oh] : by_mask) {
          if (other != mask && (mask & other) == other && oh.support_count == h.support_count) {
            minimal = false;
            break;
          }
        }
        if (minimal) generators.push_back(mask);
      }
    } else {
      // Classic generators first (no proper subset of any kind with equal
      // support, the empty set included), then the utility filter.
      for (const auto& [mask, h] : by_mask) {
        bool minimal = true;
        std::int64_t n_tx = static_cast<std::int64_t>(tx_masks_.size());
        if (h.support_count == n_tx) minimal = false;  // empty set has equal support
        if (minimal) {
          for (std::uint32_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) {
            if (support(sub) == h.support_count) {
              minimal = false;
              break;
            }
          }
        }
        if (minimal) generators.push_back(mask);
      }
    }

    for (std::uint32_t g : generators) {
      std::uint32_t gamma = closure(g);
      if (gamma == g) continue;  // closed itemsets are their own generators
      auto it = closed_index.find(gamma);
      if (it != closed_index.end()) closed[it->second].generators.push_back(to_itemset(g));
    }
    for (OracleClosedRecord& cr : closed) std::sort(cr.generators.begin(), cr.generators.end());
    std::sort(closed.begin(), closed.end(), [](const OracleClosedRecord& a, const OracleClosedRecord& b) {
      if (a.itemset.size() != b.itemset.size()) return a.itemset.size() < b.itemset.size();
      return a.itemset < b.itemset;
    });
    return closed;
  }

  std::vector<UtilityRule> valid_rules(Utility min_util, Fraction min_conf) const {
    std::vector<OracleHui> huis = high_utility_itemsets(min_util);
    std::map<std::uint32_t, const OracleHui*> by_mask;
    for (const OracleHui& h : huis) by_mask.emplace(to_mask(h.itemset), &h);
    std::vector<UtilityRule> out;
    for (const auto& [u_mask, u] : by_mask) {
      for (const auto& [x_mask, x] : by_mask) {
        if (x_mask == u_mask || (u_mask & x_mask) != x_mask) continue;
        Fraction conf{u->support_count, x->support_count};
        if (!(conf >= min_conf)) continue;
        UtilityRule r;
        r.antecedent = x->itemset;
        r.consequent = to_itemset(u_mask & ~x_mask);
        r.support_count = u->support_count;
        r.confidence = conf;
        r.utility_union = u->utility;
        r.utility_antecedent = x->utility;
        out.push_back(std::move(r));
      }
    }
    return out;
  }

  const TransactionDatabase& db() const { return *db_; }

 private:
  const TransactionDatabase* db_;
  std::vector<ItemId> universe_;
  std::vector<std::uint32_t> tx_masks_;
  std::vector<std::vector<Utility>> tx_utils_;
  std::vector<Tid> tx_tids_;
};

inline Itemset bruteforce_closure(const TransactionDatabase& db, const Itemset& x,
                                  std::size_t cap = BruteForce::kDefaultCap) {
  BruteForce bf(db, cap);
  return bf.to_itemset(bf.closure(bf.to_mask(x)));
}

struct Mismatch {
  std::string kind;  // "missing" | "extra" | "value-mismatch"
  std::string subject;
  std::string expected;
  std::string actual;
};

struct OracleReport {
  bool pass = true;
  std::vector<Mismatch> mismatches;

  void add(std::string kind, std::string subject, std::string expected = "", std::string actual = "") {
    pass = false;
    mismatches.push_back({std::move(kind), std::move(subject), std::move(expected), std::move(actual)});
  }
};

namespace detail {

inline std::string describe(const TransactionDatabase& db, const Itemset& x) {
  return db.itemset_to_string(x);
}

inline std::string describe_values(std::int64_t supp, Utility util) {
  return "supp=" + std::to_string(supp) + " util=" + std::to_string(util);
}

}  // namespace detail

// Set- and value-exact diff of engine outputs against the brute-force oracle.
inline OracleReport verify(const TransactionDatabase& db, Utility min_util, Fraction min_conf,
                           const LeveledHuiSet& engine_huis, const std::vector<ClosedRecord>& engine_closed,
                           const std::vector<UtilityRule>& engine_rules,
                           std::size_t cap = BruteForce::kDefaultCap) {
  BruteForce bf(db, cap);
  OracleReport report;

  std::map<Itemset, std::pair<std::int64_t, Utility>> expected_huis;
  for (const OracleHui& h : bf.high_utility_itemsets(min_util)) {
    expected_huis.emplace(h.itemset, std::make_pair(h.support_count, h.utility));
  }
  std::map<Itemset, std::pair<std::int64_t, Utility>> actual_huis;
  for (const HuiRecord& r : engine_huis.flatten()) {
    if (!actual_huis.emplace(r.itemset, std::make_pair(r.support_count, r.utility)).second) {
      report.add("value-mismatch", "hui " + detail::describe(db, r.itemset), "unique record", "duplicate record");
    }
  }
  for (const auto& [x, v] : expected_huis) {
    auto it = actual_huis.find(x);
    if (it == actual_huis.end()) {
      report.add("missing", "hui " + detail::describe(db, x), detail::describe_values(v.first, v.second));
    } else if (it->second != v) {
      report.add("value-mismatch", "hui " + detail::describe(db, x), detail::describe_values(v.first, v.second),
                 detail::describe_values(it->second.first, it->second.second));
    }
  }
  for (const auto& [x, v] : actual_huis) {
    if (!expected_huis.count(x)) {
      report.add("extra", "hui " + detail::describe(db, x), "", detail::describe_values(v.first, v.second));
    }
  }

  std::map<Itemset, OracleClosedRecord> expected_closed;
  for (OracleClosedRecord& cr : bf.closures_and_generators(min_util, GeneratorOrdering::kUtilityFirst)) {
    Itemset key = cr.itemset;
    expected_closed.emplace(std::move(key), std::move(cr));
  }
  std::map<Itemset, const ClosedRecord*> actual_closed;
  for (const ClosedRecord& cr : engine_closed) actual_closed.emplace(cr.itemset, &cr);
  for (const auto& [x, exp] : expected_closed) {
    auto it = actual_closed.find(x);
    if (it == actual_closed.end()) {
      report.add("missing", "closed " + detail::describe(db, x));
      continue;
    }
    const ClosedRecord& act = *it->second;
    if (act.support_count != exp.support_count || act.utility != exp.utility) {
      report.add("value-mismatch", "closed " + detail::describe(db, x),
                 detail::describe_values(exp.support_count, exp.utility),
                 detail::describe_values(act.support_count, act.utility));
    }
    if (act.unit_array != exp.unit_array) {
      report.add("value-mismatch", "unit array of " + detail::describe(db, x));
    }
    std::vector<Itemset> exp_gen = exp.generators, act_gen = act.generators;
    std::sort(exp_gen.begin(), exp_gen.end());
    std::sort(act_gen.begin(), act_gen.end());
    for (const Itemset& g : exp_gen) {
      if (!std::binary_search(act_gen.begin(), act_gen.end(), g)) {
        report.add("missing", "generator " + detail::describe(db, g) + " of " + detail::describe(db, x));
      }
    }
    for (const Itemset& g : act_gen) {
      if (!std::binary_search(exp_gen.begin(), exp_gen.end(), g)) {
        report.add("extra", "generator " + detail::describe(db, g) + " of " + detail::describe(db, x));
      }
    }
  }
  for (const auto& [x, cr] : actual_closed) {
    if (!expected_closed.count(x)) report.add("extra", "closed " + detail::describe(db, x));
  }

  auto rule_key = [](const UtilityRule& r) { return std::make_pair(r.antecedent, r.consequent); };
  std::map<std::pair<Itemset, Itemset>, const UtilityRule*> expected_rules, actual_rules;
  std::vector<UtilityRule> oracle_rules = bf.valid_rules(min_util, min_conf);
  for (const UtilityRule& r : oracle_rules) expected_rules.emplace(rule_key(r), &r);
  for (const UtilityRule& r : engine_rules) actual_rules.emplace(rule_key(r), &r);
  auto rule_name = [&](const std::pair<Itemset, Itemset>& k) {
    return "rule " + detail::describe(db, k.first) + " ==> " + detail::describe(db, k.second);
  };
  for (const auto& [k, r] : expected_rules) {
    auto it = actual_rules.find(k);
    if (it == actual_rules.end()) {
      report.add("missing", rule_name(k));
    } else if (it->second->support_count != r->support_count || !(it->second->confidence == r->confidence) ||
               it->second->utility_union != r->utility_union ||
               it->second->utility_antecedent != r->utility_antecedent) {
      report.add("value-mismatch", rule_name(k));
    }
  }
  for (const auto& [k, r] : actual_rules) {
    if (!expected_rules.count(k)) report.add("extra", rule_name(k));
  }
  return report;
}

}  // namespace huci::oracle
