// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "agedbf/error.hpp"
#include "agedbf/experiments.hpp"
#include "agedbf/rng.hpp"

#ifndef AGEDBF_GIT_HASH
#define AGEDBF_GIT_HASH "unknown"
#endif

namespace agedbf::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  int workers = 1;
  std::string out_dir;
};

bool trial_based(Operation op) { return op == Operation::kOutage || op == Operation::kRecycling; }

// The raw config document, echoed verbatim into the manifest.
ordered_json read_config_echo(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream text;
  text << in.rdbuf();
  return ordered_json::parse(text.str(), nullptr, false);
}

fs::path resolve_output(const std::string& output_path, const std::string& out_dir) {
  fs::path p(output_path);
  if (!out_dir.empty() && p.is_relative()) {
    p = fs::path(out_dir) / p;
  }
  return p;
}

// "dir/name.csv" + "_summary" -> "dir/name_summary.csv".
fs::path with_suffix(const fs::path& base, const std::string& suffix, const std::string& ext) {
  fs::path p = base;
  p.replace_filename(base.stem().string() + suffix + ext);
  return p;
}

int run(Operation op, const Flags& flags, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  ExperimentConfig cfg = load_experiment_config(flags.config, op);
  if (flags.seed) {
    cfg.seed = *flags.seed;
  }
  if (flags.trials) {
    // --trials scales whichever sample count drives the operation.
    if (trial_based(op)) {
      cfg.trials = *flags.trials;
    } else {
      cfg.channel_draws = *flags.trials;
    }
  }
  validate_config(cfg, op);

  RunOptions options;
  options.workers = flags.workers;
  const ExperimentOutput result = run_experiment(op, cfg, options);

  const fs::path base = resolve_output(cfg.output_path, flags.out_dir);
  if (base.has_parent_path()) {
    fs::create_directories(base.parent_path());
  }
  ordered_json outputs = ordered_json::array();
  for (const auto& [suffix, table] : result.tables) {
    const fs::path path = with_suffix(base, suffix, ".csv");
    table.write_file(path.string());
    outputs.push_back({{"path", path.filename().string()}, {"rows", table.rows().size()}});
    out << path.string() << '\n';
  }
  for (const auto& w : result.warnings) {
    err << "warning: " << w << '\n';
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  ordered_json manifest;
  manifest["command"] = std::string(to_string(op));
  manifest["config_path"] = fs::absolute(flags.config).lexically_normal().string();
  manifest["config"] = read_config_echo(flags.config);
  manifest["overrides"] = {
      {"seed", flags.seed ? ordered_json(*flags.seed) : ordered_json(nullptr)},
      {"trials", flags.trials ? ordered_json(*flags.trials) : ordered_json(nullptr)},
      {"out_dir", flags.out_dir.empty() ? ordered_json(nullptr) : ordered_json(flags.out_dir)}};
  manifest["seed"] = cfg.seed;
  manifest["trials"] = cfg.trials;
  manifest["channel_draws"] = cfg.channel_draws;
  manifest["workers"] = flags.workers;
  manifest["rng_algorithm"] = std::string(SeededRng::kAlgorithm);
  manifest["git_hash"] = AGEDBF_GIT_HASH;
  manifest["wall_time_s"] = wall;
  manifest["outputs"] = outputs;
  manifest["warnings"] = result.warnings;
  manifest["infeasible_points"] = result.infeasible_points;

  const fs::path manifest_path = with_suffix(base, "", ".json");
  std::ofstream mf(manifest_path);
  mf << manifest.dump(2) << '\n';
  if (!mf) {
    throw std::runtime_error("cannot write manifest '" + manifest_path.string() + "'");
  }
  out << manifest_path.string() << '\n';

  if (result.infeasible_points > 0) {
    err << "error: " << result.infeasible_points << " grid point(s) have no feasible transmit power\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Beamforming under aged CSIT: bounds, power adaptation and Monte Carlo experiments"};
  app.require_subcommand(1);

  Flags flags;
  const std::vector<Operation> ops = {Operation::kOutage,    Operation::kPdf,       Operation::kHardening,
                                      Operation::kPowerPdec, Operation::kPowerM,    Operation::kRecycling,
                                      Operation::kBoundsCompare};
  std::vector<std::pair<Operation, CLI::App*>> subs;
  for (Operation op : ops) {
    auto* sub = app.add_subcommand(std::string(to_string(op)));
    sub->add_option("--config", flags.config, "JSON experiment config")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "Master seed, overrides the config");
    sub->add_option("--trials", flags.trials,
                    "Sample count override (trials for outage/recycling, channel_draws otherwise)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--workers", flags.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out-dir", flags.out_dir, "Directory for relative output paths");
    subs.emplace_back(op, sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    for (const auto& [op, sub] : subs) {
      if (sub->parsed()) {
        return run(op, flags, out, err);
      }
    }
    return kExitFailure;
  } catch (const ConfigError& e) {
    err << "config error: " << e.field() << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace agedbf::cli
