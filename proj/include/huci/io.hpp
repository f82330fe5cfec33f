#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "huci/database.hpp"

namespace huci {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

inline std::int64_t parse_int(std::string_view s, std::size_t line, const char* what) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, std::string("bad ") + what + ": '" + std::string(s) + "'");
  }
  return v;
}

// Fixed-point parse: accepts integers or decimals, scaled by `scale`.
inline Utility parse_fixed(std::string_view s, std::int64_t scale, std::size_t line, const char* what) {
  s = trim(s);
  std::string text(s);
  std::size_t dot = text.find('.');
  if (dot == std::string::npos) return parse_int(s, line, what) * scale;
  std::int64_t whole = dot == 0 ? 0 : parse_int(text.substr(0, dot), line, what);
  std::string frac = text.substr(dot + 1);
  if (frac.empty()) return whole * scale;
  std::int64_t frac_v = parse_int(frac, line, what);
  std::int64_t denom = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) denom *= 10;
  if ((frac_v * scale) % denom != 0) {
    throw ParseError(line, std::string(what) + " '" + text + "' not representable at scale " + std::to_string(scale));
  }
  return whole * scale + frac_v * scale / denom;
}

}  // namespace detail

// SPMF utility format: each line `i1 i2 ... ik:TU:u1 u2 ... uk` where uj is
// the already-multiplied utility of item ij in that transaction. External
// utilities are folded in, so every item gets external_utility 1 and the
// quantity carries the per-transaction utility value.
inline TransactionDatabase parse_spmf(std::istream& in) {
  DatabaseBuilder builder;
  struct PendingTx {
    std::vector<std::pair<std::string, std::int64_t>> entries;
  };
  std::vector<PendingTx> pending;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = detail::trim(line);
    if (sv.empty() || sv.front() == '#' || sv.front() == '%' || sv.front() == '@') continue;
    auto parts = detail::split(sv, ':');
    if (parts.size() != 3) throw ParseError(line_no, "expected 'items:TU:utilities'");
    std::vector<std::string_view> item_toks, util_toks;
    for (auto tok : detail::split(parts[0], ' '))
      if (!detail::trim(tok).empty()) item_toks.push_back(detail::trim(tok));
    for (auto tok : detail::split(parts[2], ' '))
      if (!detail::trim(tok).empty()) util_toks.push_back(detail::trim(tok));
    if (item_toks.empty()) throw ParseError(line_no, "empty transaction");
    if (item_toks.size() != util_toks.size()) {
      throw ParseError(line_no, "item count does not match utility count");
    }
    std::int64_t declared_tu = detail::parse_int(parts[1], line_no, "transaction utility");
    PendingTx tx;
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < item_toks.size(); ++i) {
      std::int64_t u = detail::parse_int(util_toks[i], line_no, "utility");
      if (u < 0) throw ParseError(line_no, "negative utility");
      sum += u;
      tx.entries.emplace_back(std::string(item_toks[i]), u);
    }
    if (sum != declared_tu) {
      throw ParseError(line_no, "declared TU " + std::to_string(declared_tu) +
                                    " does not match utility sum " + std::to_string(sum));
    }
    pending.push_back(std::move(tx));
  }
  for (const PendingTx& tx : pending) {
    for (const auto& [name, u] : tx.entries) builder.add_item(name, 1);
  }
  for (const PendingTx& tx : pending) {
    std::vector<TransactionEntry> entries;
    for (const auto& [name, u] : tx.entries) entries.push_back({builder.intern_item(name), u});
    builder.add_transaction(std::move(entries));
  }
  return builder.build();
}

inline TransactionDatabase parse_spmf(const std::string& text) {
  std::istringstream in(text);
  return parse_spmf(in);
}

inline void write_spmf(const TransactionDatabase& db, std::ostream& out) {
  for (const Transaction& t : db.transactions()) {
    std::string items, utils;
    Utility tu = 0;
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      const TransactionEntry& e = t.entries[i];
      Utility u = db.item(e.item).external_utility * e.quantity;
      if (i) {
        items += ' ';
        utils += ' ';
      }
      items += db.item_name(e.item);
      utils += std::to_string(u);
      tu += u;
    }
    out << items << ':' << tu << ':' << utils << '\n';
  }
}

// Two-file quantity format. Transactions: `tid;item(qty),item(qty),...`.
// Utility table: `item,external_utility` CSV. Fractional external utilities
// are representable through the fixed-point scale.
inline TransactionDatabase parse_quantity_format(std::istream& transactions, std::istream& utilities,
                                                 std::int64_t scale = 1) {
  DatabaseBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(utilities, line)) {
    ++line_no;
    std::string_view sv = detail::trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    auto parts = detail::split(sv, ',');
    if (parts.size() != 2) throw ParseError(line_no, "utility table row must be 'item,external_utility'");
    std::string name(detail::trim(parts[0]));
    if (name.empty()) throw ParseError(line_no, "empty item name");
    Utility p = detail::parse_fixed(parts[1], scale, line_no, "external utility");
    if (p < 0) throw ParseError(line_no, "negative external utility");
    builder.add_item(name, p);
  }
  line_no = 0;
  while (std::getline(transactions, line)) {
    ++line_no;
    std::string_view sv = detail::trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    auto head = detail::split(sv, ';');
    if (head.size() != 2) throw ParseError(line_no, "transaction row must be 'tid;item(qty),...'");
    Tid tid = static_cast<Tid>(detail::parse_int(head[0], line_no, "tid"));
    std::vector<TransactionEntry> entries;
    for (auto tok : detail::split(head[1], ',')) {
      tok = detail::trim(tok);
      if (tok.empty()) continue;
      std::size_t open = tok.find('(');
      if (open == std::string_view::npos || tok.back() != ')') {
        throw ParseError(line_no, "expected 'item(qty)', got '" + std::string(tok) + "'");
      }
      std::string name(detail::trim(tok.substr(0, open)));
      std::int64_t qty = detail::parse_int(tok.substr(open + 1, tok.size() - open - 2), line_no, "quantity");
      if (qty < 0) throw ParseError(line_no, "negative quantity");
      if (!builder.has_item(name)) throw ParseError(line_no, "item '" + name + "' missing from utility table");
      entries.push_back({builder.intern_item(name), qty});
    }
    try {
      builder.add_transaction(std::move(entries), tid);
    } catch (const DatabaseError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return builder.build();
}

inline TransactionDatabase parse_quantity_format(const std::string& transactions, const std::string& utilities,
                                                 std::int64_t scale = 1) {
  std::istringstream t(transactions), u(utilities);
  return parse_quantity_format(t, u, scale);
}

inline void write_quantity_format(const TransactionDatabase& db, std::ostream& transactions,
                                  std::ostream& utilities, std::int64_t scale = 1) {
  for (const ItemInfo& info : db.items()) {
    if (info.external_utility % scale == 0) {
      utilities << info.name << ',' << info.external_utility / scale << '\n';
    } else {
      utilities << info.name << ',' << static_cast<double>(info.external_utility) / static_cast<double>(scale)
                << '\n';
    }
  }
  for (const Transaction& t : db.transactions()) {
    transactions << t.tid << ';';
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      if (i) transactions << ',';
      transactions << db.item_name(t.entries[i].item) << '(' << t.entries[i].quantity << ')';
    }
    transactions << '\n';
  }
}

}  // namespace huci
