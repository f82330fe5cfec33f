#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "huci/oracle.hpp"
#include "huci/rules.hpp"

using namespace huci;

namespace {

std::set<std::pair<Itemset, Itemset>> rule_keys(const std::vector<UtilityRule>& rules) {
  std::set<std::pair<Itemset, Itemset>> out;
  for (const UtilityRule& r : rules) out.emplace(r.antecedent, r.consequent);
  return out;
}

}  // namespace

TEST_CASE("confidence is an exact rational") {
  TransactionDatabase db = testing::example_database();
  Fraction c = rule_confidence(db, db.itemset_from_names({"E"}), db.itemset_from_names({"D"}));
  REQUIRE(c.num == 5);
  REQUIRE(c.den == 7);

  REQUIRE(rule_confidence(db, db.itemset_from_names({"A"}), {}) == Fraction{1, 1});
  REQUIRE(rule_confidence(db, db.itemset_from_names({"A"}), db.itemset_from_names({"C", "E"})) ==
          Fraction{1, 1});
  REQUIRE_THROWS_AS(rule_confidence(db, db.itemset_from_names({"A", "B"}), db.itemset_from_names({"E"})),
                    DatabaseError);
}

TEST_CASE("A -> CE is emitted at full confidence") {
  TransactionDatabase db = testing::example_database();
  std::vector<UtilityRule> rules = generate_valid_rules(mine_hui(db, 20), Fraction{1, 1});
  auto keys = rule_keys(rules);
  REQUIRE(keys.count({db.itemset_from_names({"A"}), db.itemset_from_names({"C", "E"})}) == 1);
  for (const UtilityRule& r : rules) {
    REQUIRE(r.confidence == Fraction{1, 1});
  }
}

TEST_CASE("E -> D rides the confidence threshold exactly") {
  TransactionDatabase db = testing::example_database();
  auto key = std::make_pair(db.itemset_from_names({"E"}), db.itemset_from_names({"D"}));
  LeveledHuiSet h = mine_hui(db, 20);
  REQUIRE(rule_keys(generate_valid_rules(h, Fraction{5, 7})).count(key) == 1);
  REQUIRE(rule_keys(generate_valid_rules(h, Fraction{36, 50})).count(key) == 0);  // just above 5/7
}

TEST_CASE("no rules from an empty set") {
  LeveledHuiSet empty;
  REQUIRE(generate_valid_rules(empty, Fraction{0, 1}).empty());
}

TEST_CASE("rule structure invariants") {
  TransactionDatabase db = testing::example_database();
  LeveledHuiSet h = mine_hui(db, 20);
  std::vector<UtilityRule> rules = generate_valid_rules(h, Fraction{1, 2});
  REQUIRE_FALSE(rules.empty());
  std::set<std::pair<Itemset, Itemset>> seen;
  for (const UtilityRule& r : rules) {
    REQUIRE_FALSE(r.consequent.empty());
    REQUIRE(set_intersection(r.antecedent, r.consequent).empty());
    Itemset u = set_union(r.antecedent, r.consequent);
    const HuiRecord* urec = h.find(u);
    const HuiRecord* arec = h.find(r.antecedent);
    REQUIRE(urec != nullptr);
    REQUIRE(arec != nullptr);
    REQUIRE(r.support_count == urec->support_count);
    REQUIRE(r.utility_union == urec->utility);
    REQUIRE(r.utility_antecedent == arec->utility);
    REQUIRE(r.confidence == Fraction{urec->support_count, arec->support_count});
    REQUIRE(seen.emplace(r.antecedent, r.consequent).second);  // deduplicated
  }
}

TEST_CASE("confidence is unchanged under equal-support consequent extension") {
  TransactionDatabase db = testing::example_database();
  LeveledHuiSet h = mine_hui(db, 20);
  std::vector<UtilityRule> rules = generate_valid_rules(h, Fraction{0, 1});
  std::map<std::pair<Itemset, Itemset>, const UtilityRule*> by_key;
  for (const UtilityRule& r : rules) by_key.emplace(std::make_pair(r.antecedent, r.consequent), &r);
  for (const UtilityRule& r : rules) {
    for (const UtilityRule& bigger : rules) {
      if (bigger.antecedent != r.antecedent || !is_proper_subset(r.consequent, bigger.consequent)) continue;
      if (bigger.support_count == r.support_count) {
        REQUIRE(bigger.confidence == r.confidence);
      }
    }
  }
}

TEST_CASE("differential: rule set equals the oracle on random databases") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    TransactionDatabase db = testing::random_small_database(rng);
    Utility total = db.total_utility();
    if (total == 0) continue;
    Utility min_util = 1 + static_cast<Utility>(rng() % static_cast<std::uint64_t>(total));
    Fraction min_conf{static_cast<std::int64_t>(rng() % 11), 10};

    std::vector<UtilityRule> engine = generate_valid_rules(mine_hui(db, min_util), min_conf);
    std::vector<UtilityRule> expected = oracle::BruteForce(db).valid_rules(min_util, min_conf);
    REQUIRE(rule_keys(engine) == rule_keys(expected));
    std::map<std::pair<Itemset, Itemset>, const UtilityRule*> exp_by_key;
    for (const UtilityRule& r : expected) exp_by_key.emplace(std::make_pair(r.antecedent, r.consequent), &r);
    for (const UtilityRule& r : engine) {
      const UtilityRule* e = exp_by_key.at({r.antecedent, r.consequent});
      REQUIRE(r.support_count == e->support_count);
      REQUIRE(r.confidence == e->confidence);
      REQUIRE(r.utility_union == e->utility_union);
      REQUIRE(r.utility_antecedent == e->utility_antecedent);
    }
  }
}

TEST_CASE("differential on the worked example at 0.7") {
  TransactionDatabase db = testing::example_database();
  std::vector<UtilityRule> engine = generate_valid_rules(mine_hui(db, 20), Fraction{7, 10});
  std::vector<UtilityRule> expected = oracle::BruteForce(db).valid_rules(20, Fraction{7, 10});
  REQUIRE(rule_keys(engine) == rule_keys(expected));
}
