// SPDX-License-Identifier: Apache-2.0
//
// tdsim: system-level simulator for flexible-TDD massive MIMO HetNets.
//
// Subcommands:
//   two-cell       PCR analysis: SIR vs contamination ratio for RCR and ICR
//   hetnet         rate CDFs of the two-tier network, TDFLEX vs TD-LTE
//   antenna-sweep  hetnet at several macro array sizes with common seeds
//   oracle-check   exhaustive validation of the collision closed forms
//   schedule-dump  print the frame grids both schedulers emit for a load set
//
// Exit codes: 0 success, 1 usage, 2 config error, 3 oracle mismatch.

#include <CLI11.hpp>
#include <json.hpp>

#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tdsim/sim.hpp"
#include "tdsim/tdflex.hpp"

#ifndef TDSIM_GIT_REVISION
#define TDSIM_GIT_REVISION "unknown"
#endif

namespace {

namespace fs = std::filesystem;
using tdsim::SimConfig;

constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitOracleMismatch = 3;

struct GlobalOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  int threads = 1;
};

SimConfig load_config(const GlobalOptions& opts) {
  nlohmann::json j = nlohmann::json::object();
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw tdsim::ConfigError("cannot open config file: " + opts.config_path);
    try {
      in >> j;
    } catch (const nlohmann::json::parse_error& e) {
      throw tdsim::ConfigError("malformed config file " + opts.config_path + ": " + e.what());
    }
  }
  for (const auto& kv : opts.overrides) tdsim::apply_override(j, kv);
  if (opts.seed) j["seed"] = *opts.seed;
  const std::string source = opts.config_path.empty() ? "<defaults>" : opts.config_path;
  return tdsim::config_from_json(j, source);
}

void write_manifest(const SimConfig& config, const fs::path& dir,
                    const std::string& experiment) {
  nlohmann::json manifest;
  manifest["experiment"] = experiment;
  manifest["config"] = tdsim::to_json(config);
  manifest["config_hash"] = tdsim::config_hash(config);
  manifest["seed"] = config.seed;
  manifest["git_revision"] = TDSIM_GIT_REVISION;
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  out << manifest.dump(2) << '\n';
}

int cmd_two_cell(const GlobalOptions& opts) {
  const SimConfig config = load_config(opts);
  const auto points = tdsim::sim::run_two_cell(config);
  fs::create_directories(opts.out_dir);
  tdsim::sim::export_two_cell(points, fs::path(opts.out_dir) / "two_cell.csv");
  write_manifest(config, opts.out_dir, "two-cell");
  for (const auto& p : points) {
    std::printf("ratio %+6.1f dB | DL RCR %7.2f dB  ICR %7.2f dB | UL RCR %7.2f dB  ICR %7.2f dB\n",
                p.ratio_db, 10 * std::log10(p.dl_rcr), 10 * std::log10(p.dl_icr),
                10 * std::log10(p.ul_rcr), 10 * std::log10(p.ul_icr));
  }
  std::printf("wrote %s\n", (fs::path(opts.out_dir) / "two_cell.csv").c_str());
  return 0;
}

int cmd_hetnet(const GlobalOptions& opts) {
  const SimConfig config = load_config(opts);
  const auto result = tdsim::sim::run_hetnet(config, opts.threads);
  fs::create_directories(opts.out_dir);
  tdsim::sim::export_cdf(result, fs::path(opts.out_dir) / "rates_cdf.csv");
  write_manifest(config, opts.out_dir, "hetnet");
  for (const auto& [key, values] : result.samples) {
    const auto& [sched, dir, m] = key;
    std::printf("%-6s %s M=%-4d  n=%-6zu median %6.3f bps/Hz\n", tdsim::sim::to_string(sched),
                tdsim::beam::to_string(dir), m, values.size(),
                tdsim::sim::quantile(values, 0.5));
  }
  std::printf("wrote %s\n", (fs::path(opts.out_dir) / "rates_cdf.csv").c_str());
  return 0;
}

int cmd_antenna_sweep(const GlobalOptions& opts, const std::vector<int>& m_list) {
  const SimConfig config = load_config(opts);
  const auto result = tdsim::sim::run_antenna_sweep(config, m_list, opts.threads);
  fs::create_directories(opts.out_dir);
  tdsim::sim::export_cdf(result, fs::path(opts.out_dir) / "sweep_cdf.csv");
  write_manifest(config, opts.out_dir, "antenna-sweep");
  for (const auto& [key, values] : result.samples) {
    const auto& [sched, dir, m] = key;
    std::printf("%-6s %s M=%-4d  n=%-6zu median %6.3f bps/Hz\n", tdsim::sim::to_string(sched),
                tdsim::beam::to_string(dir), m, values.size(),
                tdsim::sim::quantile(values, 0.5));
  }
  std::printf("wrote %s\n", (fs::path(opts.out_dir) / "sweep_cdf.csv").c_str());
  return 0;
}

// Brute-force minimum ICR count over all orderings of both rows.
int min_collisions_by_enumeration(int n_data, int macro_nd, int small_nd,
                                  tdsim::frame::SlotMode training) {
  using tdsim::frame::SlotMode;
  const auto rows_with = [n_data](int n_d) {
    std::vector<std::vector<SlotMode>> rows;
    for (int mask = 0; mask < (1 << n_data); ++mask) {
      if (std::popcount(static_cast<unsigned>(mask)) != n_d) continue;
      std::vector<SlotMode> row(n_data);
      for (int t = 0; t < n_data; ++t) {
        row[t] = (mask >> t) & 1 ? SlotMode::D : SlotMode::U;
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };
  int best = n_data + 1;
  for (const auto& macro_row : rows_with(macro_nd)) {
    for (const auto& small_row : rows_with(small_nd)) {
      best = std::min(best, tdsim::frame::count_icr_collisions(macro_row, small_row, training));
    }
  }
  return best;
}

int cmd_oracle_check(int n_data) {
  using tdsim::deploy::LoadDistribution;
  using tdsim::frame::SlotMode;
  int mismatches = 0;
  tdsim::tdflex::SchedulerParams params;
  params.n_data = n_data;
  for (int macro_nd = 0; macro_nd <= n_data; ++macro_nd) {
    for (int small_nd = 0; small_nd <= n_data; ++small_nd) {
      LoadDistribution macro{static_cast<double>(macro_nd) / n_data,
                             1.0 - static_cast<double>(macro_nd) / n_data, macro_nd,
                             n_data - macro_nd};
      LoadDistribution small{static_cast<double>(small_nd) / n_data,
                             1.0 - static_cast<double>(small_nd) / n_data, small_nd,
                             n_data - small_nd};

      const auto c_pcrd = tdsim::tdflex::collisions_pcrd(macro, small, n_data,
                                                         /*b2b_guard=*/false);
      const int c_pcru = tdsim::tdflex::collisions_pcru(macro, small, n_data);
      const int brute_d = min_collisions_by_enumeration(n_data, macro_nd, small_nd, SlotMode::SD);
      const int brute_u = min_collisions_by_enumeration(n_data, macro_nd, small_nd, SlotMode::SU);
      if (!c_pcrd || *c_pcrd != brute_d || c_pcru != brute_u) {
        std::printf("MISMATCH closed form at n_D^M=%d n_D^S=%d N=%d\n", macro_nd, small_nd,
                    n_data);
        ++mismatches;
        continue;
      }

      // The emitted frame must attain the chosen count.
      const std::vector<LoadDistribution> loads = {macro, small};
      std::vector<tdsim::tdflex::CellDecision> decisions;
      const auto fm = tdsim::tdflex::tdflex_schedule(loads, params, &decisions);
      const int attained = tdsim::frame::count_icr_collisions(fm.data_row(0), fm.data_row(1),
                                                              fm.mode(1, 0));
      const int chosen = decisions[0].training == SlotMode::SD ? *decisions[0].c_pcrd
                                                               : decisions[0].c_pcru;
      if (attained != chosen) {
        std::printf("MISMATCH schedule at n_D^M=%d n_D^S=%d N=%d: attained %d, predicted %d\n",
                    macro_nd, small_nd, n_data, attained, chosen);
        ++mismatches;
      }
    }
  }
  if (mismatches > 0) {
    std::printf("oracle-check: %d mismatches at N=%d\n", mismatches, n_data);
    return kExitOracleMismatch;
  }
  std::printf("oracle-check: all %d load pairs match the enumeration oracle at N=%d\n",
              (n_data + 1) * (n_data + 1), n_data);
  return 0;
}

int cmd_schedule_dump(const GlobalOptions& opts, const std::string& loads_csv, int cells) {
  const SimConfig config = load_config(opts);
  std::vector<tdsim::deploy::LoadDistribution> loads;
  if (!loads_csv.empty()) {
    std::stringstream ss(loads_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const double l_d = std::stod(item);
      loads.push_back(tdsim::deploy::make_load(l_d, config.n_data));
    }
    if (loads.empty()) throw tdsim::ConfigError("--loads needs at least the macro load");
  } else {
    tdsim::Rng rng(config.seed);
    loads = tdsim::deploy::draw_loads(cells, config.n_data, rng);
  }

  tdsim::tdflex::SchedulerParams params;
  params.n_data = config.n_data;
  params.gamma = config.gamma_lin;

  std::vector<tdsim::tdflex::CellDecision> decisions;
  const auto tdflex_fm = tdsim::tdflex::tdflex_schedule(loads, params, &decisions);
  const auto tdlte_fm = tdsim::tdflex::tdlte_schedule(loads, params);

  std::printf("TDFLEX frame (row 0 = macro):\n%s\n\n", tdflex_fm.grid().c_str());
  std::printf("decision log:\n%s\n", tdsim::tdflex::decision_csv(decisions).c_str());
  std::printf("TD-LTE frame:\n%s\n", tdlte_fm.grid().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flexible-TDD massive MIMO HetNet simulator"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--config", opts.config_path, "Path to the JSON config file");
  app.add_option("--set", opts.overrides, "Override a config key, KEY=VALUE (repeatable)");
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Master seed (overrides the config)");
  app.add_option("--out", opts.out_dir, "Output directory");
  app.add_option("--threads", opts.threads, "Worker threads for Monte-Carlo drops")
      ->check(CLI::PositiveNumber);

  // Global flags may appear after the subcommand name.
  auto* two_cell = app.add_subcommand("two-cell", "Two-cell RCR/ICR SIR analysis");
  two_cell->fallthrough();
  auto* hetnet = app.add_subcommand("hetnet", "Two-tier rate CDFs, TDFLEX vs TD-LTE");
  hetnet->fallthrough();
  auto* sweep = app.add_subcommand("antenna-sweep", "hetnet across macro array sizes");
  sweep->fallthrough();
  std::vector<int> m_list = {32, 64, 128};
  sweep->add_option("--m-list", m_list, "Macro antenna counts to sweep");
  auto* oracle = app.add_subcommand("oracle-check", "Validate the collision closed forms");
  oracle->fallthrough();
  int oracle_n_data = 8;
  oracle->add_option("--n-data", oracle_n_data, "Data slots per frame")
      ->check(CLI::Range(1, 12));
  auto* dump = app.add_subcommand("schedule-dump", "Print both schedulers' frames");
  dump->fallthrough();
  std::string loads_csv;
  int dump_cells = 4;
  dump->add_option("--loads", loads_csv, "Comma-separated l_D per cell, macro first");
  dump->add_option("--cells", dump_cells, "Cells to draw loads for when --loads is absent")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints help or the error
    return e.get_exit_code() == 0 ? 0 : kExitUsage;
  }

  if (seed_opt->count() > 0) opts.seed = seed_value;

  try {
    if (two_cell->parsed()) return cmd_two_cell(opts);
    if (hetnet->parsed()) return cmd_hetnet(opts);
    if (sweep->parsed()) return cmd_antenna_sweep(opts, m_list);
    if (oracle->parsed()) return cmd_oracle_check(oracle_n_data);
    if (dump->parsed()) return cmd_schedule_dump(opts, loads_csv, dump_cells);
  } catch (const tdsim::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitUsage;
}
