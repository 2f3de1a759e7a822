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

// Acceptance runner. Prints one PASS/FAIL line per criterion with the
// measured values and the pinned tolerance; `--only N` runs criterion N.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "agedbf/beamforming.hpp"
#include "agedbf/bounds.hpp"
#include "agedbf/experiment_config.hpp"
#include "agedbf/experiments.hpp"
#include "agedbf/fading_channel.hpp"
#include "agedbf/gain_stats.hpp"
#include "agedbf/parallel.hpp"
#include "agedbf/rng.hpp"
#include "cli.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace agedbf;

namespace {

// ---- pinned tolerances --------------------------------------------------------

constexpr double kCarrier = 3.5e9;
constexpr double kLag = 5e-4;

constexpr std::int64_t kC1Samples = 100000;
constexpr double kC1RelTol = 0.02;
constexpr double kC1MaxSeconds = 60.0;

constexpr int kC2Configs = 100;
constexpr double kC2RelTol = 1e-6;
constexpr double kC2SlopeTol = 1e-8;

constexpr std::int64_t kC3Draws = 1000000;
constexpr double kC3RelTol = 0.01;
constexpr double kC3MaxSeconds = 600.0;

constexpr double kC4PolyMinOutage = 0.999;

constexpr int kC5Draws = 100;

constexpr double kC6RelTol = 0.05;

constexpr double kC7Target = 8e-6;
constexpr double kC7GridStep = 1e-6;
constexpr double kC7MaxSeconds = 300.0;

constexpr double kC8Gap = 6.020599913279624;  // 10 log10(4)
constexpr double kC8GapTol = 0.3;
constexpr double kC8FastDrop = 2.0;
constexpr double kC8SlowDrop = 0.3;
constexpr double kC8SlowDropTol = 0.2;

constexpr double kC9RelTol = 0.01;

constexpr double kC10SlowGain = 2.5;
constexpr double kC10FastGain = 3.3;
constexpr double kC10Tol = 0.5;

// Determinism reruns use reduced sample counts; the shipped configs are
// otherwise unchanged.
constexpr const char* kC11Trials = "20000";
constexpr const char* kC11Draws = "200";

// ---- plumbing -----------------------------------------------------------------

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
    }
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [x]");
  }
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

fs::path config_dir() { return fs::path(AGEDBF_CONFIG_DIR); }

ExperimentConfig shipped(const std::string& name, Operation op) {
  return load_experiment_config((config_dir() / name).string(), op);
}

RunOptions run_options() {
  RunOptions o;
  o.workers = workers();
  return o;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- C1: MGF identity ------------------------------------------------------------

void c1(Outcome& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto params = aging_params(15.0, kCarrier, kLag);
  SeededRng rng(101);
  const auto h0 = sample_initial_channel(10, 4, rng);
  const auto w = superimposed_mf(h0);
  const double nc = params.j0 * params.j0 * realized_gain(h0, w).value;
  const double s2 = params.sigma_omega_sq;
  const std::vector<double> ts = {0.1, 1.0, 10.0};

  struct Acc {
    std::vector<double> sums;
  };
  const auto parts = run_chunks<Acc>(kC1Samples, kTrialChunk, workers(), [&](std::int64_t c, std::int64_t b,
                                                                              std::int64_t e) {
    auto r = chunk_rng(101, 0, 1, static_cast<std::uint64_t>(c));
    Acc a;
    a.sums.assign(ts.size(), 0.0);
    for (std::int64_t i = b; i < e; ++i) {
      const double g = realized_gain(evolve(h0, params, r), w).value;
      for (std::size_t k = 0; k < ts.size(); ++k) {
        a.sums[k] += std::exp(-ts[k] * g);
      }
    }
    return a;
  });
  for (std::size_t k = 0; k < ts.size(); ++k) {
    double sum = 0.0;
    for (const auto& p : parts) {
      sum += p.sums[k];
    }
    const double empirical = sum / static_cast<double>(kC1Samples);
    const double t = ts[k];
    const double closed = std::exp(-nc * t / (1.0 + s2 * t) - 4.0 * std::log1p(s2 * t));
    const double rel = std::fabs(empirical / closed - 1.0);
    out.require(rel <= kC1RelTol, "t=" + fmt(t) + " emp=" + fmt(empirical, 6) + " closed=" + fmt(closed, 6) +
                                      " rel=" + fmt(rel, 3) + " (tol " + fmt(kC1RelTol) + ")");
  }
  const double secs = seconds_since(t0);
  out.require(secs < kC1MaxSeconds, "runtime " + fmt(secs, 3) + " s (< " + fmt(kC1MaxSeconds) + ")");
}

// ---- C2: analytic minimizer -------------------------------------------------------

void c2(Outcome& out) {
  SeededRng rng(202);
  double worst_rel = 0.0;
  double worst_slope = 0.0;
  for (int i = 0; i < kC2Configs; ++i) {
    const double nc = 200.0 * rng.uniform();
    const int d = 1 + static_cast<int>(rng.uniform_index(64));
    const double s2 = 0.01 + 0.99 * rng.uniform();
    const auto dist = make_gain_distribution(nc, d, s2);
    const double beta = dist.mean * (0.05 + 0.9 * rng.uniform());

    const double t_star = optimal_t(beta, dist);
    const auto g = [&](double t) { return oracle::log_mgf_objective(t, beta, nc, d, s2); };
    const double t_num = oracle::golden_section_min(g, 0.0, 1e4 / s2);
    worst_rel = std::max(worst_rel, std::fabs(t_num / t_star - 1.0));

    const double h = 1e-5 * t_star;
    const double slope =
        (chernoff_objective(t_star + h, beta, dist) - chernoff_objective(t_star - h, beta, dist)) / (2.0 * h);
    worst_slope = std::max(worst_slope, std::fabs(slope));
  }
  out.require(worst_rel <= kC2RelTol,
              "max |t*/t_golden - 1| = " + fmt(worst_rel, 3) + " over " + std::to_string(kC2Configs) + " (tol " +
                  fmt(kC2RelTol) + ")");
  out.require(worst_slope <= kC2SlopeTol,
              "max |df/dt(t*)| = " + fmt(worst_slope, 3) + " (tol " + fmt(kC2SlopeTol) + ")");
}

// ---- C3: conditional means ------------------------------------------------------------

struct MomentCase {
  std::string label;
  TxWeights weights;
  int degrees = 0;
};

void c3(Outcome& out) {
  const auto t0 = std::chrono::steady_clock::now();
  for (const double v : {5.0, 15.0}) {
    const auto params = aging_params(v, kCarrier, kLag);
    const double j0sq = params.j0 * params.j0;
    const int n = 4;

    struct Group {
      int m = 0;
      std::vector<MomentCase> cases;
      ChannelSnapshot h0;
    };
    std::vector<Group> groups;
    std::uint64_t point = 0;
    const auto make_h0 = [&](int m) {
      SeededRng r(derive_seed(303, point++));
      return sample_initial_channel(m, n, r);
    };
    {
      auto h0 = make_h0(100);
      groups.push_back({100, {{"superimposed M=100", superimposed_mf(h0), n}}, h0});
    }
    {
      auto h0 = make_h0(40);
      groups.push_back({40,
                        {{"time_orthogonal M=40", time_orthogonal_mf(h0), n},
                         {"time_orthogonal_recycling M=40", time_orthogonal_mf(h0, true), n * n}},
                        h0});
    }
    {
      auto h0 = make_h0(30);
      SeededRng gr(304);
      const auto plan = adjacent_grouping(30, 8, gr);
      groups.push_back({30,
                        {{"gstbc_superimposed M=30 K=8",
                          gstbc_weights(h0, plan, BeamformerKind::kGStbcSuperimposed), n * 8},
                         {"gstbc_time_orthogonal M=30 K=8",
                          gstbc_weights(h0, plan, BeamformerKind::kGStbcTimeOrthogonal), n * 8}},
                        h0});
    }

    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const auto& grp = groups[gi];
      const auto parts = run_chunks<std::vector<double>>(
          kC3Draws, kTrialChunk, workers(), [&](std::int64_t c, std::int64_t b, std::int64_t e) {
            auto r = chunk_rng(303, static_cast<std::uint64_t>(gi), static_cast<std::uint64_t>(v),
                               static_cast<std::uint64_t>(c));
            std::vector<double> s(grp.cases.size(), 0.0);
            for (std::int64_t i = b; i < e; ++i) {
              const auto h = evolve(grp.h0, params, r);
              for (std::size_t k = 0; k < grp.cases.size(); ++k) {
                s[k] += realized_gain(h, grp.cases[k].weights).value;
              }
            }
            return s;
          });
      for (std::size_t k = 0; k < grp.cases.size(); ++k) {
        double sum = 0.0;
        for (const auto& p : parts) {
          sum += p[k];
        }
        const auto& mc = grp.cases[k];
        const double empirical = sum / static_cast<double>(kC3Draws);
        const double expected = j0sq * realized_gain(grp.h0, mc.weights).value + mc.degrees * params.sigma_omega_sq;
        const double library = gain_moments(grp.h0, mc.weights, params).mean;
        const double rel = std::fabs(empirical / expected - 1.0);
        out.require(rel <= kC3RelTol && std::fabs(library / expected - 1.0) < 1e-12,
                    mc.label + " v=" + fmt(v) + " rel=" + fmt(rel, 3));
      }
    }
  }
  const double secs = seconds_since(t0);
  out.require(secs < kC3MaxSeconds, "runtime " + fmt(secs, 3) + " s (< " + fmt(kC3MaxSeconds) + ")");
  out.detail << " (tol " << kC3RelTol << ")";
}

// ---- C4: outage at desk scale ---------------------------------------------------------

void c4(Outcome& out) {
  const auto cfg = shipped("outage.json", Operation::kOutage);
  const auto res = estimate_outage(cfg, run_options());
  for (const auto& row : res.rows) {
    const auto& e = row.estimate;
    const std::string tag = std::string(to_string(row.bound)) + " p_out=" + fmt(e.target) + " p_hat=" +
                            fmt(e.p_hat, 4);
    if (row.bound == BoundKind::kChernoff) {
      const double limit = e.target + 3.0 * std::sqrt(e.target / static_cast<double>(e.trials));
      out.require(e.p_hat <= limit, tag + " (<= " + fmt(limit, 4) + ")");
    } else if (row.bound == BoundKind::kPolynomial) {
      out.require(e.p_hat >= kC4PolyMinOutage, tag + " (>= " + fmt(kC4PolyMinOutage) + ")");
    }
  }
  out.detail << "; trials=" << cfg.trials;
}

// ---- C5: bound orderings ---------------------------------------------------------------

void c5(Outcome& out) {
  const auto params = aging_params(15.0, kCarrier, kLag);
  const double p_out = 2e-6;
  const int m = 32;
  const int n = 4;
  int to_wins = 0;
  int k_monotone = 0;
  SeededRng gr(505);
  std::map<int, GroupingPlan> plans;
  for (const int k : {1, 2, 4, 8}) {
    plans[k] = adjacent_grouping(m, k, gr);
  }
  for (int i = 0; i < kC5Draws; ++i) {
    SeededRng r(derive_seed(505, static_cast<std::uint64_t>(i)));
    const auto h0 = sample_initial_channel(m, n, r);
    const auto sup = chernoff_lower_bound(gain_moments(h0, superimposed_mf(h0), params), p_out);
    const auto to = chernoff_lower_bound(gain_moments(h0, time_orthogonal_mf(h0), params), p_out);
    to_wins += (to.valid && sup.valid && to.value >= sup.value) ? 1 : 0;

    double prev = 0.0;
    bool mono = true;
    for (const auto& [k, plan] : plans) {
      const auto w = gstbc_weights(h0, plan, BeamformerKind::kGStbcTimeOrthogonal);
      const auto b = chernoff_lower_bound(gain_moments(h0, w, params), p_out);
      mono = mono && b.valid && b.value > prev;
      prev = b.value;
    }
    k_monotone += mono ? 1 : 0;
  }
  out.require(to_wins == kC5Draws, "time_orthogonal >= superimposed on " + std::to_string(to_wins) + "/" +
                                       std::to_string(kC5Draws));
  out.require(k_monotone == kC5Draws, "G-STBC bound increasing over K=1,2,4,8 on " + std::to_string(k_monotone) +
                                          "/" + std::to_string(kC5Draws));
}

// ---- C6: hardening ----------------------------------------------------------------------

void c6(Outcome& out) {
  const auto cfg = shipped("hardening.json", Operation::kHardening);
  const auto rows = hardening_sweep(cfg, run_options());
  for (const auto kind : {BeamformerKind::kSuperimposedMf, BeamformerKind::kTimeOrthogonalMf}) {
    std::vector<const HardeningRow*> mine;
    for (const auto& r : rows) {
      if (r.scheme.kind == kind) {
        mine.push_back(&r);
      }
    }
    std::sort(mine.begin(), mine.end(), [](auto* a, auto* b) { return a->m_tx < b->m_tx; });
    bool decreasing = true;
    std::string gaps;
    for (std::size_t i = 0; i < mine.size(); ++i) {
      gaps += (i ? "," : "") + fmt(mine[i]->rel_gap, 3);
      if (i > 0 && !(mine[i]->rel_gap < mine[i - 1]->rel_gap)) {
        decreasing = false;
      }
    }
    const auto* last = mine.back();
    const std::string name(to_string(kind));
    out.require(std::fabs(last->rel_gap) <= kC6RelTol, name + " M=" + std::to_string(last->m_tx) + " mean/(MN)=" +
                                                           fmt(last->mean_norm_mn, 5) + " limit=" +
                                                           fmt(last->hardened_limit, 5) + " gap=" +
                                                           fmt(last->rel_gap, 3) + " (tol " + fmt(kC6RelTol) + ")");
    out.require(decreasing, name + " gaps over M [" + gaps + "] decreasing");
  }
}

// ---- power helpers ------------------------------------------------------------------------

double power_at(const std::vector<PowerRow>& rows, BeamformerKind kind, int k, double v, int m, double p_dec) {
  for (const auto& r : rows) {
    if (r.scheme.kind == kind && r.scheme.k_groups == k && r.velocity_mps == v && r.m_tx == m &&
        std::fabs(r.p_dec - p_dec) <= 1e-12) {
      return r.avg_gamma_db;
    }
  }
  throw std::runtime_error("acceptance: missing power row");
}

// ---- C7: power vs p_dec ---------------------------------------------------------------------

void c7(Outcome& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = shipped("power_pdec.json", Operation::kPowerPdec);
  const auto rows = power_vs_pdec(cfg, run_options());
  for (const auto kind : cfg.schemes) {
    double best = 0.0;
    double best_db = HUGE_VAL;
    for (const double p : cfg.p_dec) {
      const double db = power_at(rows, kind, 1, cfg.velocity_mps.front(), cfg.m_tx.front(), p);
      if (db < best_db) {
        best_db = db;
        best = p;
      }
    }
    const bool interior = best != cfg.p_dec.front() && best != cfg.p_dec.back();
    const bool near = std::fabs(best - kC7Target) <= kC7GridStep * (1.0 + 1e-9);
    out.require(interior && near, std::string(to_string(kind)) + " argmin p_dec=" + fmt(best) + " (" +
                                      fmt(best_db, 5) + " dB; target " + fmt(kC7Target) + " +- " +
                                      fmt(kC7GridStep) + ")");
  }
  const double secs = seconds_since(t0);
  out.require(secs < kC7MaxSeconds, "runtime " + fmt(secs, 3) + " s (< " + fmt(kC7MaxSeconds) + ")");
}

// ---- C8: scheme separation --------------------------------------------------------------------

void c8(Outcome& out) {
  const auto cfg = shipped("power_m.json", Operation::kPowerM);
  const auto rows = power_vs_m(cfg, run_options());
  const double p = cfg.p_dec.front();
  const int m_lo = *std::min_element(cfg.m_tx.begin(), cfg.m_tx.end());
  const int m_hi = *std::max_element(cfg.m_tx.begin(), cfg.m_tx.end());
  const auto sup = BeamformerKind::kSuperimposedMf;
  const auto to = BeamformerKind::kTimeOrthogonalMf;
  for (const double v : cfg.velocity_mps) {
    const double gap = power_at(rows, sup, 1, v, m_hi, p) - power_at(rows, to, 1, v, m_hi, p);
    out.require(std::fabs(gap - kC8Gap) <= kC8GapTol, "v=" + fmt(v) + " gap at M=" + std::to_string(m_hi) + " " +
                                                          fmt(gap, 4) + " dB (" + fmt(kC8Gap, 4) + " +- " +
                                                          fmt(kC8GapTol) + ")");
  }
  for (const auto kind : {sup, to}) {
    for (const double v : cfg.velocity_mps) {
      const double drop = power_at(rows, kind, 1, v, m_lo, p) - power_at(rows, kind, 1, v, m_hi, p);
      const bool fast = v > 10.0;
      const bool ok = fast ? drop >= kC8FastDrop : std::fabs(drop - kC8SlowDrop) <= kC8SlowDropTol;
      out.require(ok, std::string(to_string(kind)) + " v=" + fmt(v) + " drop M=" + std::to_string(m_lo) + "->" +
                          std::to_string(m_hi) + " " + fmt(drop, 4) + " dB (" +
                          (fast ? ">= " + fmt(kC8FastDrop) : fmt(kC8SlowDrop) + " +- " + fmt(kC8SlowDropTol)) +
                          ")");
    }
  }
}

// ---- C9: recycling --------------------------------------------------------------------------------

void c9(Outcome& out) {
  const auto cfg = shipped("recycling.json", Operation::kRecycling);
  const auto rows = recycling_ratio(cfg, run_options());
  double worst = 0.0;
  bool above = true;
  std::map<double, double> excess_at_40;
  for (const auto& r : rows) {
    worst = std::max(worst, std::fabs(r.asnr_ratio_mc / r.rho_closed_form - 1.0));
    above = above && r.bound_mean_ratio >= r.rho_closed_form;
    if (r.m_tx == 40) {
      excess_at_40[r.velocity_mps] = r.excess;
    }
  }
  out.require(worst <= kC9RelTol, "max |mc/rho - 1| = " + fmt(worst, 3) + " (tol " + fmt(kC9RelTol) + ")");
  out.require(above, "bound-mean ratio >= rho on all points");
  const double e5 = excess_at_40.at(5.0);
  const double e15 = excess_at_40.at(15.0);
  out.require(e15 > e5, "excess at M=40: v=15 " + fmt(e15, 4) + " > v=5 " + fmt(e5, 4));
}

// ---- C10: G-STBC improvement ------------------------------------------------------------------------

void c10(Outcome& out) {
  const auto cfg = shipped("gstbc.json", Operation::kPowerM);
  const auto rows = power_vs_m(cfg, run_options());
  const double p = cfg.p_dec.front();
  const int k = cfg.k_groups.front();
  auto ms = cfg.m_tx;
  std::sort(ms.begin(), ms.end());
  for (const double v : cfg.velocity_mps) {
    std::vector<double> gains;
    for (const int m : ms) {
      gains.push_back(power_at(rows, BeamformerKind::kSuperimposedMf, 1, v, m, p) -
                      power_at(rows, BeamformerKind::kGStbcSuperimposed, k, v, m, p));
    }
    const double want = v > 10.0 ? kC10FastGain : kC10SlowGain;
    out.require(std::fabs(gains.front() - want) <= kC10Tol, "v=" + fmt(v) + " gain at M=" +
                                                                std::to_string(ms.front()) + " " +
                                                                fmt(gains.front(), 4) + " dB (" + fmt(want) +
                                                                " +- " + fmt(kC10Tol) + ")");
    bool shrinking = true;
    for (std::size_t i = 1; i < gains.size(); ++i) {
      shrinking = shrinking && gains[i] <= gains[i - 1];
    }
    out.require(shrinking, "v=" + fmt(v) + " gain non-increasing to M=" + std::to_string(ms.back()) + " (last " +
                               fmt(gains.back(), 4) + " dB)");
  }
}

// ---- C11: determinism ----------------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::map<std::string, std::string> csv_files(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".csv") {
      files[e.path().filename().string()] = slurp(e.path());
    }
  }
  return files;
}

int quiet_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"agedbf"};
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream sink;
  return cli::cli_main(static_cast<int>(argv.size()), argv.data(), sink, sink);
}

void c11(Outcome& out) {
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"outage", "outage.json"},         {"pdf", "pdf.json"},
      {"hardening", "hardening.json"},   {"power-pdec", "power_pdec.json"},
      {"power-m", "power_m.json"},       {"power-m", "gstbc.json"},
      {"recycling", "recycling.json"},   {"bounds-compare", "bounds_compare.json"},
  };
  const fs::path root = fs::temp_directory_path() / "agedbf_acceptance_c11";
  fs::remove_all(root);
  for (const auto& [cmd, file] : runs) {
    std::vector<std::map<std::string, std::string>> outputs;
    const auto cfg = (config_dir() / file).string();
    const bool trial_based = cmd == "outage" || cmd == "recycling";
    const std::string count = trial_based ? kC11Trials : kC11Draws;
    int idx = 0;
    bool ran = true;
    for (const char* w : {"1", "1", "3"}) {
      const fs::path dir = root / (fs::path(file).stem().string() + "_" + std::to_string(idx++));
      ran = ran && quiet_cli({cmd, "--config", cfg, "--trials", count, "--workers", w, "--out-dir", dir.string()}) ==
                       cli::kExitOk;
      outputs.push_back(csv_files(dir));
    }
    const bool same = ran && !outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2];
    out.require(same, cmd + " " + file + " (" + std::to_string(outputs[0].size()) + " csv)");
  }
  fs::remove_all(root);
  out.detail << "; same seed twice with 1 worker, then 3 workers";
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "MGF identity", c1},
      {2, "analytic Chernoff minimizer", c2},
      {3, "gain means under aging", c3},
      {4, "outage guarantee at desk scale", c4},
      {5, "bound orderings", c5},
      {6, "channel hardening", c6},
      {7, "power vs decoding share", c7},
      {8, "scheme separation over M", c8},
      {9, "energy recycling ratio", c9},
      {10, "G-STBC improvement", c10},
      {11, "determinism", c11},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::stoi(argv[++i]);
    } else {
      std::cerr << "usage: agedbf_acceptance [--only N]\n";
      return 2;
    }
  }
  int failed = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) {
      continue;
    }
    ++ran;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(t0);
    char id[8];
    std::snprintf(id, sizeof id, "C%02d", c.id);
    std::cout << id << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << c.name << " | " << o.detail.str() << " | "
              << fmt(secs, 3) << " s" << std::endl;
    failed += o.pass ? 0 : 1;
  }
  if (ran == 0) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
