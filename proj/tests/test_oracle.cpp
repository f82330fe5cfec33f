#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "huci/closure.hpp"
#include "huci/format.hpp"
#include "huci/oracle.hpp"
#include "huci/rules.hpp"

using namespace huci;

TEST_CASE("brute force finds the worked example's itemsets") {
  TransactionDatabase db = testing::example_database();
  oracle::BruteForce bf(db);
  std::map<std::string, Utility> mined;
  for (const auto& h : bf.high_utility_itemsets(20)) {
    mined.emplace(db.itemset_to_string(h.itemset), h.utility);
  }
  REQUIRE(mined == testing::example_huis_at_20());
  REQUIRE(bf.high_utility_itemsets(140).empty());

  DatabaseBuilder empty;
  TransactionDatabase edb = empty.build();
  REQUIRE(oracle::BruteForce(edb).high_utility_itemsets(0).empty());
}

TEST_CASE("enumeration cap is enforced") {
  DatabaseBuilder b;
  std::vector<TransactionEntry> entries;
  for (int i = 0; i < 17; ++i) entries.push_back({b.add_item("i" + std::to_string(i), 1), 1});
  b.add_transaction(std::move(entries));
  TransactionDatabase db = b.build();
  REQUIRE_THROWS_AS(oracle::BruteForce(db), DatabaseError);
  REQUIRE_NOTHROW(oracle::BruteForce(db, 17));
}

TEST_CASE("closure by transaction intersection") {
  TransactionDatabase db = testing::example_database();
  REQUIRE(oracle::bruteforce_closure(db, db.itemset_from_names({"A"})) ==
          db.itemset_from_names({"A", "C", "E"}));
  REQUIRE(oracle::bruteforce_closure(db, db.itemset_from_names({"D", "F"})) ==
          db.itemset_from_names({"D", "E", "F"}));
  Itemset g = db.itemset_from_names({"G"});
  REQUIRE(oracle::bruteforce_closure(db, g) == g);  // fixed point
  REQUIRE_THROWS_AS(oracle::bruteforce_closure(db, db.itemset_from_names({"A", "B"})), DatabaseError);
}

TEST_CASE("closure is idempotent and support-preserving") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 30; ++trial) {
    TransactionDatabase db = testing::random_small_database(rng);
    Itemset x;
    for (std::size_t i = 0; i < db.item_count(); ++i) {
      if (rng() % 2) x.push_back(static_cast<ItemId>(i));
    }
    if (x.empty() || db.support_count(x) == 0) continue;
    Itemset gamma = oracle::bruteforce_closure(db, x);
    REQUIRE(oracle::bruteforce_closure(db, gamma) == gamma);
    REQUIRE(db.support_count(gamma) == db.support_count(x));
  }
}

TEST_CASE("utility is bounded by twu for every itemset") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 30; ++trial) {
    TransactionDatabase db = testing::random_small_database(rng);
    for (const auto& h : oracle::BruteForce(db).high_utility_itemsets(1)) {
      REQUIRE(h.utility <= itemset_twu(db, h.itemset));
    }
  }
}

TEST_CASE("an itemset with no utility-preserving superset is closed") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    TransactionDatabase db = testing::random_small_database(rng);
    oracle::BruteForce bf(db);
    for (const auto& h : bf.high_utility_itemsets(1)) {
      // Corollary: if no positive-support superset Y has luv(X, Y) = u(X),
      // then X is closed.
      bool preserving_superset = false;
      std::uint32_t x = bf.to_mask(h.itemset);
      for (std::uint32_t y = 1; y < (1u << bf.universe_size()); ++y) {
        if (y == x || (y & x) != x || bf.support(y) == 0) continue;
        std::uint32_t common = x;
        // luv(X, Y) over Y's supporting transactions
        Utility luv = 0;
        std::vector<Utility> ua = bf.unit_array(y);
        Itemset y_items = bf.to_itemset(y);
        std::size_t j = 0;
        for (ItemId id : bf.to_itemset(common)) {
          while (y_items[j] != id) ++j;
          luv += ua[j];
        }
        if (luv == h.utility) {
          preserving_superset = true;
          break;
        }
      }
      if (!preserving_superset) {
        REQUIRE(bf.closure(x) == x);
      }
    }
  }
}

TEST_CASE("support-first and utility-first orderings diverge on ACFE") {
  TransactionDatabase db = testing::example_database();
  oracle::BruteForce bf(db);
  Itemset acfe = db.itemset_from_names({"A", "C", "E", "F"});

  auto utility_first = bf.closures_and_generators(20, oracle::GeneratorOrdering::kUtilityFirst);
  auto support_first = bf.closures_and_generators(20, oracle::GeneratorOrdering::kSupportFirst);

  // Closed sets are identical in both modes.
  std::set<Itemset> closed_u, closed_s;
  for (const auto& r : utility_first) closed_u.insert(r.itemset);
  for (const auto& r : support_first) closed_s.insert(r.itemset);
  REQUIRE(closed_u == closed_s);

  for (const auto& r : utility_first) {
    if (r.itemset == acfe) {
      REQUIRE(r.generators == std::vector<Itemset>{db.itemset_from_names({"A", "E", "F"})});
    }
  }
  for (const auto& r : support_first) {
    if (r.itemset == acfe) {
      REQUIRE(r.generators.empty());  // AF(1,14) and CF(1,7) fail the utility filter
    }
  }
}

TEST_CASE("utility-first closures reproduce the worked listing") {
  TransactionDatabase db = testing::example_database();
  auto records =
      oracle::BruteForce(db).closures_and_generators(20, oracle::GeneratorOrdering::kUtilityFirst);
  std::map<std::string, std::vector<std::string>> got;
  for (const auto& r : records) {
    std::vector<std::string> gens;
    for (const Itemset& g : r.generators) gens.push_back(db.itemset_to_string(g));
    got.emplace(db.itemset_to_string(r.itemset), gens);
  }
  REQUIRE(got == testing::example_hucis_at_20());
}

TEST_CASE("single-transaction database has one closed itemset") {
  TransactionDatabase db = parse_quantity_format(std::string("1;A(1),B(2)\n"), std::string("A,5\nB,3\n"));
  auto records = oracle::BruteForce(db).closures_and_generators(1, oracle::GeneratorOrdering::kUtilityFirst);
  REQUIRE(records.size() == 1);
  REQUIRE(records[0].itemset == db.itemset_from_names({"A", "B"}));
}

TEST_CASE("verify passes a correct engine on the worked example") {
  TransactionDatabase db = testing::example_database();
  LeveledHuiSet h = mine_hui(db, 20);
  std::vector<ClosedRecord> closed = huci_miner(db, mine_hui(db, 20));
  std::vector<UtilityRule> rules = generate_valid_rules(h, Fraction{7, 10});
  oracle::OracleReport report = oracle::verify(db, 20, Fraction{7, 10}, h, closed, rules);
  REQUIRE(report.pass);
  REQUIRE(report.mismatches.empty());
  REQUIRE(report_to_json(report)["verdict"] == "pass");
}

TEST_CASE("verify flags over-tightened pruning as missing itemsets") {
  TransactionDatabase db = testing::example_database();
  LeveledHuiSet h = mine_hui(db, 20);
  // Simulate a miner whose pruning drops every length-3 itemset.
  LeveledHuiSet damaged;
  for (const HuiRecord& r : h.flatten()) {
    if (r.itemset.size() != 3) damaged.add(r);
  }
  std::vector<ClosedRecord> closed = huci_miner(db, mine_hui(db, 20));
  std::vector<UtilityRule> rules = generate_valid_rules(h, Fraction{7, 10});
  oracle::OracleReport report = oracle::verify(db, 20, Fraction{7, 10}, damaged, closed, rules);
  REQUIRE_FALSE(report.pass);
  bool saw_missing = false;
  for (const auto& m : report.mismatches) saw_missing |= (m.kind == "missing");
  REQUIRE(saw_missing);
}

TEST_CASE("verify catches disabled generator removal: B wrongly attaches to BDFE") {
  TransactionDatabase db = testing::example_database();
  HuciOptions no_removal;
  no_removal.remove_assigned_generators = false;
  std::vector<ClosedRecord> closed = huci_miner(db, mine_hui(db, 20), no_removal);
  LeveledHuiSet h = mine_hui(db, 20);
  std::vector<UtilityRule> rules = generate_valid_rules(h, Fraction{7, 10});
  oracle::OracleReport report = oracle::verify(db, 20, Fraction{7, 10}, h, closed, rules);
  REQUIRE_FALSE(report.pass);
  bool saw_extra_b = false;
  for (const auto& m : report.mismatches) {
    if (m.kind == "extra" && m.subject.find("generator B of B D E F") != std::string::npos) saw_extra_b = true;
  }
  REQUIRE(saw_extra_b);
}

TEST_CASE("oracle report serializes mismatches to json") {
  oracle::OracleReport report;
  report.add("missing", "hui X", "supp=1 util=5");
  nlohmann::json j = report_to_json(report);
  REQUIRE(j["verdict"] == "fail");
  REQUIRE(j["mismatches"].size() == 1);
  REQUIRE(j["mismatches"][0]["kind"] == "missing");
}
