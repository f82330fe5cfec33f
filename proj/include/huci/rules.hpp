#pragma once

#include "huci/mining.hpp"

namespace huci {

struct UtilityRule {
  Itemset antecedent;
  Itemset consequent;
  std::int64_t support_count = 0;  // of antecedent ∪ consequent
  Fraction confidence;
  Utility utility_union = 0;
  Utility utility_antecedent = 0;
};

// conf(X -> Y) = supp(X ∪ Y) / supp(X), exact.
inline Fraction rule_confidence(const TransactionDatabase& db, const Itemset& x, const Itemset& y) {
  std::int64_t sx = db.support_count(x);
  if (sx == 0) throw DatabaseError("rule_confidence: antecedent has zero support");
  std::int64_t sxy = db.support_count(set_union(x, y));
  return Fraction{sxy, sx};
}

// Exactly the rules X -> Y with X ∈ H, X ∪ Y ∈ H, Y ≠ ∅, X ∩ Y = ∅ and
// conf ≥ min_conf. Both thresholds on utility are implied by H membership.
// Deterministic order: by union itemset (length, then items), then antecedent.
inline std::vector<UtilityRule> generate_valid_rules(const LeveledHuiSet& h, Fraction min_conf) {
  std::vector<UtilityRule> rules;
  std::vector<const HuiRecord*> unions;
  for (std::size_t k = 2; k <= h.max_length(); ++k) {
    for (const HuiRecord& rec : h.level(k)) unions.push_back(&rec);
  }
  std::sort(unions.begin(), unions.end(), [](const HuiRecord* a, const HuiRecord* b) {
    if (a->itemset.size() != b->itemset.size()) return a->itemset.size() < b->itemset.size();
    return a->itemset < b->itemset;
  });
  for (const HuiRecord* u : unions) {
    std::size_t n = u->itemset.size();
    std::vector<Itemset> antecedents;
    for (std::uint64_t mask = 1; mask + 1 < (1ull << n); ++mask) {
      Itemset x;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1ull << i)) x.push_back(u->itemset[i]);
      }
      antecedents.push_back(std::move(x));
    }
    std::sort(antecedents.begin(), antecedents.end(), [](const Itemset& a, const Itemset& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    for (const Itemset& x : antecedents) {
      const HuiRecord* ax = h.find(x);
      if (!ax) continue;  // antecedent must itself be high utility
      Fraction conf{u->support_count, ax->support_count};
      if (!(conf >= min_conf)) continue;
      UtilityRule r;
      r.antecedent = x;
      r.consequent = set_difference(u->itemset, x);
      r.support_count = u->support_count;
      r.confidence = conf;
      r.utility_union = u->utility;
      r.utility_antecedent = ax->utility;
      rules.push_back(std::move(r));
    }
  }
  return rules;
}

}  // namespace huci
