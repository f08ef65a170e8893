// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "quantacode/approx.hpp"
#include "quantacode/bounds.hpp"
#include "quantacode/coder.hpp"
#include "quantacode/error.hpp"
#include "quantacode/presets.hpp"
#include "quantacode/prob_model.hpp"

namespace quantacode::cli {

namespace {

struct RunConfig {
  std::string probs;
  std::uint64_t t = 0;
  std::uint64_t t_max = 0;
  unsigned width = 0;
  std::string target;
  std::string mode = "guaranteed";
  std::string kappa = "generic";
  std::string objective = "divergence";
  std::string format = "text";
  std::string input;
  std::string output;
  std::string table_path;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  unsigned precision = 0;
  bool framed = false;
  bool records_only = false;
};

ProbabilityVector source_from(const std::string& text) {
  if (auto preset = preset_source(text)) return *preset;
  return parse_probability_vector(text);
}

Kappa kappa_from(const std::string& name, const ProbabilityVector& p) {
  if (name == "golden") return Kappa::Golden;
  if (name == "generic") return Kappa::Generic;
  // auto
  return kappa_select(p.size() == 2 && looks_golden_equivalent(p[0]));
}

std::string provenance(std::uint64_t seed) {
  return "# quantacode " QUANTACODE_VERSION " precision=" + std::to_string(working_digits()) +
         " seed=" + std::to_string(seed) + "\n";
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

FrequencyTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open table '" + path + "'");
  return read_table(in);
}

/// Writes `text` to cfg.output when given, otherwise to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
  } else {
    write_text(cfg.output, text);
  }
}

int cmd_approximate(const RunConfig& cfg, std::ostream& out) {
  const auto p = source_from(cfg.probs);
  const Kappa kappa = kappa_from(cfg.kappa, p);
  std::optional<FrequencyTable> table;
  if (cfg.width != 0) {
    const Objective objective =
        cfg.objective == "delta" ? Objective::MinDelta : Objective::MinDivergence;
    table = best_table_under_width(p, cfg.width, objective, cfg.jobs);
  } else {
    table = round_min_max(p, cfg.t);
  }
  const auto report = bound_report(p, *table, kappa);
  std::ostringstream text;
  if (cfg.format == "csv") {
    text << provenance(cfg.seed);
    write_report_csv(text, report);
  } else {
    write_report_text(text, report);
  }
  out << text.str();
  const std::string table_text = table_to_string(*table, &p);
  if (cfg.output.empty()) {
    if (cfg.format != "csv") out << "table\n" << table_text;
  } else {
    write_text(cfg.output, table_text);
  }
  return kSuccess;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto p = source_from(cfg.probs);
  ScanOptions options;
  options.kappa = kappa_from(cfg.kappa, p);
  options.jobs = cfg.jobs;
  const auto scan = record_scan(p, cfg.t_max, options);
  std::ostringstream csv;
  csv << provenance(cfg.seed);
  write_scan_csv(csv, scan, cfg.records_only);
  emit(cfg, out, csv.str());
  err << "records: " << scan.records.size() << ", records beating the constant: "
      << scan.records_beating << ", all t beating the constant: " << scan.rows_beating
      << (scan.terminated_exact ? ", terminated at an exact table" : "") << '\n';
  return kSuccess;
}

int cmd_plan(const RunConfig& cfg, std::ostream& out) {
  const auto p = source_from(cfg.probs);
  PlanOptions options;
  options.kappa = kappa_from(cfg.kappa, p);
  options.jobs = cfg.jobs;
  const PlanMode mode = cfg.mode == "opportunistic" ? PlanMode::Opportunistic : PlanMode::Guaranteed;
  const auto plan = plan_precision(p, parse_rational(cfg.target), mode, options);
  std::ostringstream text;
  if (cfg.format == "csv") {
    text << provenance(cfg.seed);
    write_plan_csv(text, plan);
  } else {
    write_plan_text(text, plan);
  }
  out << text.str();
  if (!cfg.output.empty()) write_text(cfg.output, table_to_string(plan.table, &p));
  return kSuccess;
}

int cmd_encode(const RunConfig& cfg, std::ostream& err) {
  const auto table = load_table(cfg.table_path);
  const auto raw = read_bytes(cfg.input);
  const std::vector<Symbol> symbols(raw.begin(), raw.end());
  const auto bytes = cfg.framed ? encode_framed(symbols, table) : encode(symbols, table);
  write_bytes(cfg.output, bytes);
  err << "encoded " << symbols.size() << " symbols into " << bytes.size() << " bytes\n";
  return kSuccess;
}

int cmd_decode(const RunConfig& cfg, std::ostream& err) {
  const auto bytes = read_bytes(cfg.input);
  std::vector<Symbol> symbols;
  if (cfg.framed) {
    symbols = decode_framed(bytes).symbols;
  } else {
    if (cfg.table_path.empty()) {
      throw Error(ErrorCode::InvalidInput, "unframed decode needs --table and -n");
    }
    symbols = decode(bytes, cfg.n, load_table(cfg.table_path));
  }
  std::vector<std::uint8_t> raw;
  raw.reserve(symbols.size());
  for (auto s : symbols) {
    if (s > 0xFF) throw Error(ErrorCode::SymbolOutOfRange, "symbol does not fit in a byte");
    raw.push_back(static_cast<std::uint8_t>(s));
  }
  write_bytes(cfg.output, raw);
  err << "decoded " << symbols.size() << " symbols\n";
  return kSuccess;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const auto p = source_from(cfg.probs);
  const FrequencyTable table = cfg.table_path.empty()
                                   ? round_min_max(p, cfg.t)
                                   : with_canonical_order(p, load_table(cfg.table_path));
  const auto report = measure_rate(p, table, cfg.n, cfg.seed);
  std::ostringstream csv;
  csv << provenance(cfg.seed);
  write_rate_csv(csv, report);
  emit(cfg, out, csv.str());
  return report.lossless ? kSuccess : kInternalError;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::TargetUnachievableWithinScan: return kTargetUnachievable;
    case ErrorCode::Io: return kInternalError;
    default: return kInvalidInput;
  }
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"quantacode: frequency-table quantization, redundancy bounds and coder checks"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--precision", cfg.precision,
                 "working precision in decimal digits (default 50, or QUANTACODE_PRECISION)")
      ->check(CLI::Range(20u, 10000u));
  app.add_option("--jobs", cfg.jobs, "worker threads for scans")->check(CLI::Range(1u, 256u));

  const auto kappa_check = CLI::IsMember({"golden", "generic", "auto"});
  const auto format_check = CLI::IsMember({"text", "csv"});

  auto* approximate = app.add_subcommand("approximate", "min-max table for one t (or best under -W) and its bounds");
  approximate->add_option("-p,--probs", cfg.probs, "probabilities, or golden|silver|trio")->required();
  auto* approx_t = approximate->add_option("-t", cfg.t, "denominator t");
  auto* approx_w = approximate->add_option("-W,--width", cfg.width, "best table with t <= 2^W");
  approx_t->excludes(approx_w);
  approximate->add_option("--objective", cfg.objective, "delta|divergence (with -W)")
      ->check(CLI::IsMember({"delta", "divergence"}));
  approximate->add_option("--kappa", cfg.kappa, "golden|generic|auto")->check(kappa_check);
  approximate->add_option("--format", cfg.format, "text|csv")->check(format_check);
  approximate->add_option("-o,--out", cfg.output, "write the table file here");

  auto* scan = app.add_subcommand("scan", "record scan over t in [m, t_max] as CSV");
  scan->add_option("-p,--probs", cfg.probs, "probabilities, or golden|silver|trio")->required();
  scan->add_option("--t-max", cfg.t_max, "largest t")->required();
  scan->add_option("--kappa", cfg.kappa, "golden|generic|auto")->check(kappa_check);
  scan->add_flag("--records-only", cfg.records_only, "only emit record rows");
  scan->add_option("-o,--out", cfg.output, "CSV destination");

  auto* plan = app.add_subcommand("plan", "pick W, t and a table for a target redundancy");
  plan->add_option("-p,--probs", cfg.probs, "probabilities, or golden|silver|trio")->required();
  plan->add_option("-R,--target", cfg.target, "target redundancy in nats/symbol")->required();
  plan->add_option("--mode", cfg.mode, "guaranteed|opportunistic")
      ->check(CLI::IsMember({"guaranteed", "opportunistic"}));
  plan->add_option("--kappa", cfg.kappa, "golden|generic|auto")->check(kappa_check);
  plan->add_option("--format", cfg.format, "text|csv")->check(format_check);
  plan->add_option("-o,--out", cfg.output, "write the chosen table file here");

  auto* encode_cmd = app.add_subcommand("encode", "range-code a file of byte symbols");
  encode_cmd->add_option("-i,--in", cfg.input, "input file, one symbol per byte")->required();
  encode_cmd->add_option("-o,--out", cfg.output, "output stream")->required();
  encode_cmd->add_option("--table", cfg.table_path, "table file")->required();
  encode_cmd->add_flag("--framed", cfg.framed, "embed table and n (QC01 framing)");

  auto* decode_cmd = app.add_subcommand("decode", "decode a range-coded stream");
  decode_cmd->add_option("-i,--in", cfg.input, "input stream")->required();
  decode_cmd->add_option("-o,--out", cfg.output, "output file, one symbol per byte")->required();
  decode_cmd->add_option("--table", cfg.table_path, "table file (unframed streams)");
  decode_cmd->add_option("-n", cfg.n, "symbol count (unframed streams)");
  decode_cmd->add_flag("--framed", cfg.framed, "stream carries QC01 framing");

  auto* simulate = app.add_subcommand("simulate", "measure coder rate against H(p) + D(p||f/t)");
  simulate->add_option("-p,--probs", cfg.probs, "probabilities, or golden|silver|trio")->required();
  auto* sim_t = simulate->add_option("-t", cfg.t, "use the min-max table for this t");
  auto* sim_table = simulate->add_option("--table", cfg.table_path, "table file");
  sim_t->excludes(sim_table);
  simulate->add_option("-n", cfg.n, "symbols to draw")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", cfg.seed, "generator seed");
  simulate->add_option("-o,--out", cfg.output, "CSV destination");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }

  try {
    set_working_digits(cfg.precision != 0 ? cfg.precision : working_digits_from_env());
    if (approximate->parsed()) {
      if (approx_t->count() == 0 && approx_w->count() == 0) {
        throw Error(ErrorCode::InvalidInput, "approximate needs -t or -W");
      }
      return cmd_approximate(cfg, out);
    }
    if (scan->parsed()) return cmd_scan(cfg, out, err);
    if (plan->parsed()) return cmd_plan(cfg, out);
    if (encode_cmd->parsed()) return cmd_encode(cfg, err);
    if (decode_cmd->parsed()) return cmd_decode(cfg, err);
    if (simulate->parsed()) {
      if (sim_t->count() == 0 && sim_table->count() == 0) {
        throw Error(ErrorCode::InvalidInput, "simulate needs -t or --table");
      }
      return cmd_simulate(cfg, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("quantacode");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace quantacode::cli
