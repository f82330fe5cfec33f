// Command-line frontend: mine / rules / verify / bench / gen.
//
// Exit codes: 0 ok, 1 usage error, 2 input error, 3 verification failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "huci/bench.hpp"
#include "huci/closure.hpp"
#include "huci/format.hpp"
#include "huci/io.hpp"
#include "huci/oracle.hpp"
#include "huci/rules.hpp"
#include "huci/synthetic.hpp"

namespace {

using namespace huci;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitVerification = 3;

struct CommonOptions {
  std::string input;
  std::string utilities;  // second file of the quantity format
  std::string format = "spmf";
  std::string min_util_spec = "0";
  std::string output;  // empty = stdout
  std::string output_format = "text";
  unsigned threads = 1;
  huci::Utility scale = 1;
  bool no_cooccurrence_pruning = false;
};

struct MinUtilSpec {
  double value = 0.0;
  bool percent = false;
};

MinUtilSpec parse_min_util(const std::string& spec) {
  std::string s = spec;
  MinUtilSpec out;
  if (!s.empty() && s.back() == '%') {
    out.percent = true;
    s.pop_back();
  }
  out.value = std::stod(s);
  if (out.percent && (out.value <= 0.0 || out.value > 100.0)) {
    throw CLI::ValidationError("--min-util", "percentage must be in (0, 100]");
  }
  if (out.value < 0.0) throw CLI::ValidationError("--min-util", "must be non-negative");
  return out;
}

unsigned thread_count(const CommonOptions& opts) {
  if (const char* env = std::getenv("HUCI_MAX_THREADS")) {
    unsigned cap = static_cast<unsigned>(std::stoul(env));
    if (cap > 0 && (opts.threads == 0 || opts.threads > cap)) return cap;
  }
  return opts.threads;
}

TransactionDatabase load_database(const CommonOptions& opts) {
  if (opts.format == "spmf") {
    std::ifstream in(opts.input);
    if (!in) throw DatabaseError("cannot open input file: " + opts.input);
    return parse_spmf(in);
  }
  if (opts.format == "quantity2file") {
    if (opts.utilities.empty()) throw DatabaseError("--utilities is required for quantity2file input");
    std::ifstream tx(opts.input), ut(opts.utilities);
    if (!tx) throw DatabaseError("cannot open input file: " + opts.input);
    if (!ut) throw DatabaseError("cannot open utility table: " + opts.utilities);
    return parse_quantity_format(tx, ut, opts.scale);
  }
  throw DatabaseError("unknown input format: " + opts.format);
}

Utility resolve_threshold(const TransactionDatabase& db, const MinUtilSpec& spec) {
  if (spec.percent) return resolve_min_util_percent(db.total_utility(), spec.value);
  return static_cast<Utility>(std::llround(spec.value));
}

class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DatabaseError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

MineOptions mine_options(const CommonOptions& opts) {
  MineOptions m;
  m.cooccurrence_pruning = !opts.no_cooccurrence_pruning;
  m.threads = thread_count(opts);
  return m;
}

int run_mine(const CommonOptions& opts, const std::string& mode) {
  TransactionDatabase db = load_database(opts);
  Utility min_util = resolve_threshold(db, parse_min_util(opts.min_util_spec));
  LeveledHuiSet h = mine_hui(db, min_util, mine_options(opts));
  OutputSink sink(opts.output);
  if (mode == "hui") {
    if (opts.output_format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const HuiRecord& r : h.flatten()) arr.push_back(hui_to_json(db, r));
      sink.stream() << nlohmann::json{{"min_util", min_util}, {"huis", arr}}.dump(2) << '\n';
    } else {
      write_hui_lines(db, h, sink.stream());
    }
    return kExitOk;
  }
  std::vector<ClosedRecord> closed = huci_miner(db, std::move(h));
  if (opts.output_format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const ClosedRecord& r : closed) arr.push_back(closed_to_json(db, r));
    sink.stream() << nlohmann::json{{"min_util", min_util}, {"closed", arr}}.dump(2) << '\n';
  } else {
    for (const ClosedRecord& r : closed) write_closed_line(db, r, sink.stream());
  }
  return kExitOk;
}

int run_rules(const CommonOptions& opts, double min_conf) {
  TransactionDatabase db = load_database(opts);
  Utility min_util = resolve_threshold(db, parse_min_util(opts.min_util_spec));
  Fraction conf{static_cast<std::int64_t>(std::llround(min_conf * 10000)), 10000};
  std::vector<UtilityRule> rules = generate_valid_rules(mine_hui(db, min_util, mine_options(opts)), conf);
  OutputSink sink(opts.output);
  if (opts.output_format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const UtilityRule& r : rules) arr.push_back(rule_to_json(db, r));
    sink.stream() << nlohmann::json{{"min_util", min_util}, {"min_conf", min_conf}, {"rules", arr}}.dump(2)
                  << '\n';
  } else {
    for (const UtilityRule& r : rules) write_rule_line(db, r, sink.stream());
  }
  return kExitOk;
}

int run_verify(const CommonOptions& opts, double min_conf, std::size_t max_items) {
  TransactionDatabase db = load_database(opts);
  Utility min_util = resolve_threshold(db, parse_min_util(opts.min_util_spec));
  Fraction conf{static_cast<std::int64_t>(std::llround(min_conf * 10000)), 10000};
  MineOptions m = mine_options(opts);
  LeveledHuiSet h = mine_hui(db, min_util, m);
  std::vector<ClosedRecord> closed = huci_miner(db, h);
  std::vector<UtilityRule> rules = generate_valid_rules(h, conf);
  oracle::OracleReport report = oracle::verify(db, min_util, conf, h, closed, rules, max_items);
  OutputSink sink(opts.output);
  sink.stream() << report_to_json(report).dump(2) << '\n';
  return report.pass ? kExitOk : kExitVerification;
}

int run_bench(const CommonOptions& opts, const std::vector<std::string>& threshold_specs) {
  TransactionDatabase db = load_database(opts);
  std::vector<Utility> thresholds;
  for (const std::string& spec : threshold_specs) {
    thresholds.push_back(resolve_threshold(db, parse_min_util(spec)));
  }
  std::vector<BenchRow> rows = run_bench(db, thresholds, mine_options(opts));
  OutputSink sink(opts.output);
  std::ostream& out = sink.stream();
  if (opts.output_format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const BenchRow& r : rows) {
      arr.push_back({{"min_util", r.min_util},
                     {"hui", r.hui_count},
                     {"huci", r.huci_count},
                     {"hg", r.hg_count},
                     {"huci_plus_hg", r.combined},
                     {"self_generated", r.self_generated},
                     {"peak_level_count", r.peak_level_count},
                     {"wall_seconds", r.wall_seconds}});
    }
    out << arr.dump(2) << '\n';
  } else if (opts.output_format == "csv") {
    out << "min_util,hui,huci,hg,huci_plus_hg,self_generated,peak_level_count,wall_seconds\n";
    for (const BenchRow& r : rows) {
      out << r.min_util << ',' << r.hui_count << ',' << r.huci_count << ',' << r.hg_count << ','
          << r.combined << ',' << r.self_generated << ',' << r.peak_level_count << ',' << r.wall_seconds
          << '\n';
    }
  } else {
    out << "min_util\t#HUI\t#HUCI\t#HG\t#HUCI+HG\tself-gen\tpeak\ttime(s)\n";
    for (const BenchRow& r : rows) {
      out << r.min_util << '\t' << r.hui_count << '\t' << r.huci_count << '\t' << r.hg_count << '\t'
          << r.combined << '\t' << r.self_generated << '\t' << r.peak_level_count << '\t' << r.wall_seconds
          << '\n';
    }
  }
  return kExitOk;
}

int run_gen(const SyntheticParams& params, const std::string& out_prefix, const std::string& format) {
  TransactionDatabase db = generate_synthetic(params);
  if (format == "spmf") {
    std::ofstream out(out_prefix + ".spmf");
    if (!out) throw DatabaseError("cannot write " + out_prefix + ".spmf");
    write_spmf(db, out);
  } else {
    std::ofstream tx(out_prefix + ".transactions"), ut(out_prefix + ".utilities");
    if (!tx || !ut) throw DatabaseError("cannot write output files with prefix " + out_prefix);
    write_quantity_format(db, tx, ut, params.utility_scale);
  }
  return kExitOk;
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool needs_min_util) {
  cmd->add_option("-i,--input", opts.input, "Input file (transactions)")->required();
  cmd->add_option("-u,--utilities", opts.utilities, "Utility table (quantity2file format)");
  cmd->add_option("-f,--format", opts.format, "Input format: spmf | quantity2file")
      ->check(CLI::IsMember({"spmf", "quantity2file"}));
  if (needs_min_util) {
    cmd->add_option("-m,--min-util", opts.min_util_spec,
                    "Minimum utility: absolute value or percentage like '0.5%' of the total "
                    "transaction utility (percentages resolve with ceiling)")
        ->required();
  }
  cmd->add_option("-o,--output", opts.output, "Output file (default stdout)");
  cmd->add_option("--output-format", opts.output_format, "Output format: text | json | csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--scale", opts.scale,
                  "Fixed-point scale for decimal utilities in quantity2file input (default 1)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("-t,--threads", opts.threads, "Worker threads (0 = all cores); HUCI_MAX_THREADS caps it");
  cmd->add_flag("--no-cooccurrence-pruning", opts.no_cooccurrence_pruning,
                "Disable pairwise-TWU join pruning (output is identical either way)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-utility itemset mining with closed-itemset and generator post-processing"};
  app.require_subcommand(1);

  CommonOptions mine_opts;
  std::string mine_mode = "hui";
  CLI::App* mine_cmd = app.add_subcommand("mine", "Mine high-utility itemsets or closed itemsets");
  add_common(mine_cmd, mine_opts, true);
  mine_cmd->add_option("--mode", mine_mode, "hui | huci")->check(CLI::IsMember({"hui", "huci"}));

  CommonOptions rules_opts;
  double rules_conf = 0.5;
  CLI::App* rules_cmd = app.add_subcommand("rules", "Generate valid utility-based association rules");
  add_common(rules_cmd, rules_opts, true);
  rules_cmd->add_option("-c,--min-conf", rules_conf, "Minimum confidence in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));

  CommonOptions verify_opts;
  double verify_conf = 0.5;
  std::size_t verify_cap = oracle::BruteForce::kDefaultCap;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check the engine against the brute-force oracle");
  add_common(verify_cmd, verify_opts, true);
  verify_cmd->add_option("-c,--min-conf", verify_conf, "Minimum confidence in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  verify_cmd->add_option("--max-items", verify_cap, "Oracle enumeration cap (distinct occurring items)");

  CommonOptions bench_opts;
  std::vector<std::string> bench_thresholds;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Pattern-count sweep over thresholds");
  add_common(bench_cmd, bench_opts, false);
  bench_cmd->add_option("--thresholds", bench_thresholds, "min_util values (absolute or percent)")
      ->required()
      ->expected(-1);

  SyntheticParams gen_params;
  std::string gen_prefix = "synthetic";
  std::string gen_format = "quantity2file";
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a synthetic database");
  gen_cmd->add_option("--transactions", gen_params.n_transactions, "Number of transactions");
  gen_cmd->add_option("--items", gen_params.n_items, "Number of distinct items");
  gen_cmd->add_option("--avg-len", gen_params.avg_len, "Average transaction length");
  gen_cmd->add_option("--quantity-max", gen_params.quantity_max, "Maximum quantity per entry");
  gen_cmd->add_option("--lognormal-mu", gen_params.lognormal_mu, "Log-normal mu for external utilities");
  gen_cmd->add_option("--lognormal-sigma", gen_params.lognormal_sigma, "Log-normal sigma");
  gen_cmd->add_option("--seed", gen_params.seed, "RNG seed");
  gen_cmd->add_option("--out-prefix", gen_prefix, "Output file prefix");
  gen_cmd->add_option("--gen-format", gen_format, "spmf | quantity2file")
      ->check(CLI::IsMember({"spmf", "quantity2file"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (mine_cmd->parsed()) return run_mine(mine_opts, mine_mode);
    if (rules_cmd->parsed()) return run_rules(rules_opts, rules_conf);
    if (verify_cmd->parsed()) return run_verify(verify_opts, verify_conf, verify_cap);
    if (bench_cmd->parsed()) return run_bench(bench_opts, bench_thresholds);
    if (gen_cmd->parsed()) return run_gen(gen_params, gen_prefix, gen_format);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DatabaseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}
