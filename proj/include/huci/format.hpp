#pragma once

#include <ostream>

#include <nlohmann/json.hpp>

#include "huci/closure.hpp"
#include "huci/oracle.hpp"
#include "huci/rules.hpp"

namespace huci {

inline void write_hui_line(const TransactionDatabase& db, const HuiRecord& r, std::ostream& out) {
  out << db.itemset_to_string(r.itemset) << " #SUP: " << r.support_count << " #UTIL: " << r.utility << '\n';
}

inline void write_hui_lines(const TransactionDatabase& db, const LeveledHuiSet& h, std::ostream& out) {
  for (const HuiRecord& r : h.flatten()) write_hui_line(db, r, out);
}

inline void write_closed_line(const TransactionDatabase& db, const ClosedRecord& r, std::ostream& out) {
  out << "CLOSED: " << db.itemset_to_string(r.itemset) << " #SUP: " << r.support_count
      << " #UTIL: " << r.utility << " #UA: ";
  for (std::size_t i = 0; i < r.unit_array.size(); ++i) {
    if (i) out << ',';
    out << r.unit_array[i];
  }
  out << " #GEN: [";
  for (std::size_t i = 0; i < r.generators.size(); ++i) {
    if (i) out << " | ";
    out << db.itemset_to_string(r.generators[i]);
  }
  out << "]\n";
}

inline void write_rule_line(const TransactionDatabase& db, const UtilityRule& r, std::ostream& out) {
  out << db.itemset_to_string(r.antecedent) << " ==> " << db.itemset_to_string(r.consequent)
      << " #SUP: " << r.support_count << " #CONF: " << r.confidence.value() << " #UTIL: " << r.utility_union
      << '\n';
}

inline nlohmann::json itemset_to_json(const TransactionDatabase& db, const Itemset& x) {
  nlohmann::json arr = nlohmann::json::array();
  for (ItemId id : x) arr.push_back(db.item_name(id));
  return arr;
}

inline nlohmann::json hui_to_json(const TransactionDatabase& db, const HuiRecord& r) {
  return {{"itemset", itemset_to_json(db, r.itemset)},
          {"support", r.support_count},
          {"utility", r.utility}};
}

inline nlohmann::json closed_to_json(const TransactionDatabase& db, const ClosedRecord& r) {
  nlohmann::json gens = nlohmann::json::array();
  for (const Itemset& g : r.generators) gens.push_back(itemset_to_json(db, g));
  return {{"itemset", itemset_to_json(db, r.itemset)},
          {"support", r.support_count},
          {"utility", r.utility},
          {"unit_array", r.unit_array},
          {"generators", gens},
          {"self_generated", r.self_generated()}};
}

inline nlohmann::json rule_to_json(const TransactionDatabase& db, const UtilityRule& r) {
  return {{"antecedent", itemset_to_json(db, r.antecedent)},
          {"consequent", itemset_to_json(db, r.consequent)},
          {"support", r.support_count},
          {"confidence", {{"num", r.confidence.num}, {"den", r.confidence.den}, {"value", r.confidence.value()}}},
          {"utility_union", r.utility_union},
          {"utility_antecedent", r.utility_antecedent}};
}

inline nlohmann::json report_to_json(const oracle::OracleReport& report) {
  nlohmann::json mismatches = nlohmann::json::array();
  for (const oracle::Mismatch& m : report.mismatches) {
    mismatches.push_back({{"kind", m.kind}, {"subject", m.subject}, {"expected", m.expected}, {"actual", m.actual}});
  }
  return {{"verdict", report.pass ? "pass" : "fail"}, {"mismatches", mismatches}};
}

}  // namespace huci
