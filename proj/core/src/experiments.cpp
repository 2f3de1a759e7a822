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

#include "agedbf/experiments.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "agedbf/bounds.hpp"
#include "agedbf/error.hpp"
#include "agedbf/gain_stats.hpp"
#include "agedbf/parallel.hpp"
#include "agedbf/power_adapt.hpp"

namespace agedbf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stream lanes: channel draws (H0 then Omega) and antenna grouping.
constexpr std::uint64_t kChannelLane = 0;
constexpr std::uint64_t kGroupingLane = 1;
constexpr std::uint64_t kAsnrLane = 2;

struct Prepared {
  TxWeights weights;
  GainDistribution dist;
};

Prepared prepare(const SchemeSpec& spec, const ChannelSnapshot& h0, const AgingParams& params,
                 SeededRng& grouping_rng, int mrc_antenna) {
  Prepared p;
  if (is_gstbc(spec.kind)) {
    const auto plan = adjacent_grouping(h0.m_tx(), spec.k_groups, grouping_rng);
    p.weights = gstbc_weights(h0, plan, spec.kind);
  } else {
    p.weights = build_weights(spec.kind, h0, nullptr, mrc_antenna);
  }
  p.dist = gain_moments(h0, p.weights, params);
  return p;
}

AgingParams params_for(const ExperimentConfig& c, double velocity) {
  return aging_params(velocity, c.carrier_hz, c.lag_s);
}

bool has_hardened_limit(BeamformerKind k) {
  return k == BeamformerKind::kSuperimposedMf || k == BeamformerKind::kTimeOrthogonalMf;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) {
    return kNaN;
  }
  double s = 0.0;
  for (double x : v) {
    s += x;
  }
  return s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) {
    return 0.0;
  }
  double s = 0.0;
  for (double x : v) {
    s += (x - mean) * (x - mean);
  }
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// Linear interpolation between order statistics.
double quantile(std::vector<double> v, double q) {
  if (v.empty()) {
    return kNaN;
  }
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const std::size_t j = std::min(i + 1, v.size() - 1);
  return v[i] + (pos - static_cast<double>(i)) * (v[j] - v[i]);
}

template <class T>
std::vector<T> concat(std::vector<std::vector<T>>&& parts) {
  std::vector<T> out;
  for (auto& p : parts) {
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

std::vector<std::string> scheme_cells(const SchemeSpec& s) {
  return {std::string(to_string(s.kind)), cell(s.k_groups)};
}

template <class... Rest>
std::vector<std::string> row_of(std::vector<std::string> head, Rest&&... rest) {
  (head.push_back(cell(std::forward<Rest>(rest))), ...);
  return head;
}

// ---- power sweep shared by power-pdec and power-m ----

struct PowerAcc {
  double gamma_sum = 0.0;
  double gamma_db_sum = 0.0;
  double beta_sum = 0.0;
  std::int64_t finite = 0;
  std::int64_t feasible = 0;
};

std::vector<PowerRow> power_sweep(const ExperimentConfig& c, const RunOptions& o) {
  const auto specs = c.scheme_specs();
  const int n = c.n_rx;
  std::vector<ReliabilityBudget> budgets;
  std::vector<double> isnr0;
  for (double p_dec : c.p_dec) {
    budgets.push_back(split_budget(c.p_per, p_dec, c.budget_mode));
    isnr0.push_back(isnr_threshold(c.threshold, budgets.back().p_dec));
  }
  PowerAdaptOptions pa;
  pa.tol = c.tol;
  pa.hardened_shortcut_min_m = c.hardened_shortcut_min_m;
  pa.normalization = c.normalization;

  std::vector<PowerRow> rows;
  for (double v : c.velocity_mps) {
    const auto params = params_for(c, v);
    for (int m : c.m_tx) {
      const std::size_t cells = specs.size() * budgets.size();
      auto parts = run_chunks<std::vector<PowerAcc>>(
          c.channel_draws, kDrawChunk, o.workers, [&](std::int64_t chunk, std::int64_t b, std::int64_t e) {
            std::vector<PowerAcc> acc(cells);
            auto rng = chunk_rng(c.seed, kChannelLane, static_cast<std::uint64_t>(m), chunk);
            auto grng = chunk_rng(c.seed, kGroupingLane, static_cast<std::uint64_t>(m), chunk);
            for (std::int64_t d = b; d < e; ++d) {
              const auto h0 = sample_initial_channel(m, n, rng);
              for (std::size_t s = 0; s < specs.size(); ++s) {
                const auto prep = prepare(specs[s], h0, params, grng, c.mrc_antenna);
                for (std::size_t k = 0; k < budgets.size(); ++k) {
                  const auto dec = power_from_distribution(prep.dist, specs[s].kind, m, n, params, budgets[k].p_out,
                                                           isnr0[k], c.power_cap, pa);
                  auto& a = acc[s * budgets.size() + k];
                  if (std::isfinite(dec.gamma)) {
                    a.gamma_sum += dec.gamma;
                    a.gamma_db_sum += dec.gamma_db;
                    a.beta_sum += dec.beta_lb;
                    ++a.finite;
                    a.feasible += dec.feasible ? 1 : 0;
                  }
                }
              }
            }
            return acc;
          });
      for (std::size_t s = 0; s < specs.size(); ++s) {
        for (std::size_t k = 0; k < budgets.size(); ++k) {
          PowerAcc total;
          for (const auto& part : parts) {
            const auto& a = part[s * budgets.size() + k];
            total.gamma_sum += a.gamma_sum;
            total.gamma_db_sum += a.gamma_db_sum;
            total.beta_sum += a.beta_sum;
            total.finite += a.finite;
            total.feasible += a.feasible;
          }
          PowerRow r;
          r.scheme = specs[s];
          r.velocity_mps = v;
          r.m_tx = m;
          r.n_rx = n;
          r.p_per = c.p_per;
          r.p_dec = budgets[k].p_dec;
          r.p_out = budgets[k].p_out;
          r.isnr0_db = 10.0 * std::log10(isnr0[k]);
          r.draws = c.channel_draws;
          r.finite_draws = total.finite;
          r.feasible_draws = total.feasible;
          const double fin = static_cast<double>(total.finite);
          const double inf = std::numeric_limits<double>::infinity();
          r.avg_gamma_db = total.finite > 0 ? 10.0 * std::log10(total.gamma_sum / fin) : inf;
          r.mean_gamma_db = total.finite > 0 ? total.gamma_db_sum / fin : inf;
          r.mean_beta_lb = total.finite > 0 ? total.beta_sum / fin : kNaN;
          r.lag_cap_s = kNaN;
          if (has_hardened_limit(specs[s].kind)) {
            if (params.doppler_hz <= 0.0) {
              r.lag_cap_s = inf;
            } else {
              try {
                r.lag_cap_s = max_lag(specs[s].kind, isnr0[k], c.power_cap, n) / params.doppler_hz;
              } catch (const InfeasibleError&) {
                r.lag_cap_s = 0.0;
              }
            }
          }
          rows.push_back(r);
        }
      }
    }
  }
  return rows;
}

}  // namespace

// ---- outage -------------------------------------------------------------------

double clopper_pearson_upper(std::int64_t failures, std::int64_t trials, double confidence) {
  if (trials < 1 || failures < 0 || failures > trials) {
    throw std::invalid_argument("clopper_pearson_upper: need 0 <= failures <= trials, trials >= 1");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("clopper_pearson_upper: confidence must lie in (0, 1)");
  }
  if (failures == trials) {
    return 1.0;
  }
  return boost::math::ibeta_inv(static_cast<double>(failures + 1), static_cast<double>(trials - failures),
                                confidence);
}

OutageEstimate make_outage_estimate(std::int64_t failures, std::int64_t trials, double target) {
  OutageEstimate e;
  e.trials = trials;
  e.failures = failures;
  e.p_hat = static_cast<double>(failures) / static_cast<double>(trials);
  e.ci99_upper = clopper_pearson_upper(failures, trials);
  e.target = target;
  return e;
}

OutageResult estimate_outage(const ExperimentConfig& c, const RunOptions& o) {
  validate_config(c, Operation::kOutage);
  const auto specs = c.scheme_specs();
  const int n = c.n_rx;

  // Combinations evaluated per trial; hardened limits exist for two schemes only.
  struct Combo {
    std::size_t spec;
    BoundKind bound;
    double p_out;
  };
  std::vector<Combo> combos;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    for (auto b : c.bounds) {
      if (b == BoundKind::kHardenedLimit && !has_hardened_limit(specs[s].kind)) {
        continue;
      }
      for (double p : c.p_out) {
        combos.push_back({s, b, p});
      }
    }
  }

  struct Acc {
    std::int64_t failures = 0;
    std::int64_t valid = 0;
    double bound_sum = 0.0;
  };

  OutageResult result;
  for (double p : c.p_out) {
    if (p * static_cast<double>(c.trials) < 10.0) {
      std::ostringstream w;
      w << "p_out " << format_double(p) << " with " << c.trials
        << " trials expects fewer than 10 outages; the estimate is unreliable";
      result.warnings.push_back(w.str());
    }
  }

  for (double v : c.velocity_mps) {
    const auto params = params_for(c, v);
    for (int m : c.m_tx) {
      auto parts = run_chunks<std::vector<Acc>>(
          c.trials, kTrialChunk, o.workers, [&](std::int64_t chunk, std::int64_t b, std::int64_t e) {
            std::vector<Acc> acc(combos.size());
            auto rng = chunk_rng(c.seed, kChannelLane, static_cast<std::uint64_t>(m), chunk);
            auto grng = chunk_rng(c.seed, kGroupingLane, static_cast<std::uint64_t>(m), chunk);
            std::vector<Prepared> prep(specs.size(), Prepared{});
            std::vector<double> gains(specs.size());
            for (std::int64_t t = b; t < e; ++t) {
              const auto h0 = sample_initial_channel(m, n, rng);
              for (std::size_t s = 0; s < specs.size(); ++s) {
                prep[s] = prepare(specs[s], h0, params, grng, c.mrc_antenna);
              }
              const auto h_tau = evolve(h0, params, rng);
              for (std::size_t s = 0; s < specs.size(); ++s) {
                gains[s] = realized_gain(h_tau, prep[s].weights).value;
              }
              for (std::size_t i = 0; i < combos.size(); ++i) {
                const auto& cb = combos[i];
                const auto& dist = prep[cb.spec].dist;
                BoundResult r;
                switch (cb.bound) {
                  case BoundKind::kChernoff: r = chernoff_lower_bound(dist, cb.p_out, c.tol); break;
                  case BoundKind::kChebyshev: r = chebyshev_lower_bound(dist, cb.p_out); break;
                  case BoundKind::kPolynomial: r = polynomial_lower_bound(dist, cb.p_out); break;
                  case BoundKind::kHardenedLimit:
                    r.value = hardened_limit(specs[cb.spec].kind, n, params) * m * n;
                    r.valid = r.value > 0.0;
                    break;
                }
                auto& a = acc[i];
                a.failures += gains[cb.spec] < r.value ? 1 : 0;
                a.valid += r.valid ? 1 : 0;
                a.bound_sum += r.value;
              }
            }
            return acc;
          });
      for (std::size_t i = 0; i < combos.size(); ++i) {
        Acc total;
        for (const auto& part : parts) {
          total.failures += part[i].failures;
          total.valid += part[i].valid;
          total.bound_sum += part[i].bound_sum;
        }
        OutageRow r;
        r.scheme = specs[combos[i].spec];
        r.bound = combos[i].bound;
        r.velocity_mps = v;
        r.m_tx = m;
        r.n_rx = n;
        r.estimate = make_outage_estimate(total.failures, c.trials, combos[i].p_out);
        r.valid_fraction = static_cast<double>(total.valid) / static_cast<double>(c.trials);
        r.bound_mean = total.bound_sum / static_cast<double>(c.trials);
        result.rows.push_back(r);
      }
    }
  }
  return result;
}

CsvTable outage_table(const std::vector<OutageRow>& rows) {
  CsvTable t({"scheme", "k_groups", "bound", "velocity_mps", "m_tx", "n_rx", "p_out", "trials", "failures", "p_hat",
              "ci99_upper", "target_plus_slack", "valid_fraction", "bound_mean"});
  for (const auto& r : rows) {
    const auto& e = r.estimate;
    const double slack = e.target + 3.0 * std::sqrt(e.target / static_cast<double>(e.trials));
    t.add_row(row_of(scheme_cells(r.scheme), to_string(r.bound), r.velocity_mps, r.m_tx, r.n_rx, e.target,
                     e.trials, e.failures, e.p_hat, e.ci99_upper, slack, r.valid_fraction, r.bound_mean));
  }
  return t;
}

// ---- pdf ------------------------------------------------------------------------

PdfResult gain_pdf(const ExperimentConfig& c, const RunOptions& o) {
  validate_config(c, Operation::kPdf);
  static const std::vector<std::string> kSeries = {"chernoff", "chebyshev", "chebyshev_simplified", "polynomial"};
  const auto specs = c.scheme_specs();
  const int n = c.n_rx;
  const std::size_t per_spec = kSeries.size() * c.p_out.size();

  PdfResult result;
  for (double v : c.velocity_mps) {
    const auto params = params_for(c, v);
    for (int m : c.m_tx) {
      // values[spec][p][series] flattened
      auto parts = run_chunks<std::vector<std::vector<double>>>(
          c.channel_draws, kDrawChunk, o.workers, [&](std::int64_t chunk, std::int64_t b, std::int64_t e) {
            std::vector<std::vector<double>> vals(specs.size() * per_spec);
            auto rng = chunk_rng(c.seed, kChannelLane, static_cast<std::uint64_t>(m), chunk);
            auto grng = chunk_rng(c.seed, kGroupingLane, static_cast<std::uint64_t>(m), chunk);
            for (std::int64_t d = b; d < e; ++d) {
              const auto h0 = sample_initial_channel(m, n, rng);
              for (std::size_t s = 0; s < specs.size(); ++s) {
                const auto prep = prepare(specs[s], h0, params, grng, c.mrc_antenna);
                for (std::size_t p = 0; p < c.p_out.size(); ++p) {
                  const double po = c.p_out[p];
                  const std::size_t base = s * per_spec + p * kSeries.size();
                  vals[base + 0].push_back(chernoff_lower_bound(prep.dist, po, c.tol).value);
                  vals[base + 1].push_back(chebyshev_lower_bound(prep.dist, po, VarianceForm::kExact).value);
                  vals[base + 2].push_back(chebyshev_lower_bound(prep.dist, po, VarianceForm::kSimplified).value);
                  vals[base + 3].push_back(polynomial_lower_bound(prep.dist, po).value);
                }
              }
            }
            return vals;
          });

      for (std::size_t s = 0; s < specs.size(); ++s) {
        const double norm = normalization_factor(specs[s].kind, m, n, c.normalization);
        for (std::size_t p = 0; p < c.p_out.size(); ++p) {
          for (std::size_t q = 0; q < kSeries.size(); ++q) {
            const std::size_t idx = s * per_spec + p * kSeries.size() + q;
            std::vector<double> x;
            for (const auto& part : parts) {
              x.insert(x.end(), part[idx].begin(), part[idx].end());
            }
            SeriesSummary sum;
            sum.scheme = specs[s];
            sum.series = kSeries[q];
            sum.velocity_mps = v;
            sum.m_tx = m;
            sum.n_rx = n;
            sum.p_out = c.p_out[p];
            sum.draws = static_cast<std::int64_t>(x.size());
            sum.mean = mean_of(x);
            sum.std = std_of(x, sum.mean);
            sum.min = *std::min_element(x.begin(), x.end());
            sum.max = *std::max_element(x.begin(), x.end());
            sum.valid_fraction =
                static_cast<double>(std::count_if(x.begin(), x.end(), [](double y) { return std::isfinite(y) && y > 0.0; })) /
                static_cast<double>(x.size());
            sum.normalized_mean = sum.mean / norm;
            result.summary.push_back(sum);

            // Equal-width bins over the observed range.
            double lo = sum.min;
            double hi = sum.max;
            if (!(std::isfinite(lo) && std::isfinite(hi))) {
              continue;
            }
            if (!(hi > lo)) {
              hi = lo + std::max(std::abs(lo) * 1e-9, 1e-300);
            }
            const double width = (hi - lo) / c.bins;
            std::vector<std::int64_t> counts(static_cast<std::size_t>(c.bins), 0);
            for (double y : x) {
              auto bin = static_cast<int>((y - lo) / width);
              bin = std::clamp(bin, 0, c.bins - 1);
              ++counts[static_cast<std::size_t>(bin)];
            }
            for (int bi = 0; bi < c.bins; ++bi) {
              HistogramRow h;
              h.scheme = specs[s];
              h.series = kSeries[q];
              h.velocity_mps = v;
              h.m_tx = m;
              h.n_rx = n;
              h.p_out = c.p_out[p];
              h.bin = bi;
              h.bin_lo = lo + bi * width;
              h.bin_hi = bi + 1 == c.bins ? hi : lo + (bi + 1) * width;
              h.count = counts[static_cast<std::size_t>(bi)];
              h.density = static_cast<double>(h.count) / (static_cast<double>(x.size()) * width);
              result.histogram.push_back(h);
            }
          }
        }
      }
    }
  }
  return result;
}

CsvTable pdf_histogram_table(const std::vector<HistogramRow>& rows) {
  CsvTable t({"scheme", "k_groups", "series", "velocity_mps", "m_tx", "n_rx", "p_out", "bin", "bin_lo", "bin_hi",
              "count", "density"});
  for (const auto& r : rows) {
    t.add_row(row_of(scheme_cells(r.scheme), r.series, r.velocity_mps, r.m_tx, r.n_rx, r.p_out, r.bin, r.bin_lo,
                     r.bin_hi, r.count, r.density));
  }
  return t;
}

CsvTable pdf_summary_table(const std::vector<SeriesSummary>& rows) {
  CsvTable t({"scheme", "k_groups", "series", "velocity_mps", "m_tx", "n_rx", "p_out", "draws", "mean", "std", "min",
              "max", "valid_fraction", "normalized_mean"});
  for (const auto& r : rows) {
    t.add_row(row_of(scheme_cells(r.scheme), r.series, r.velocity_mps, r.m_tx, r.n_rx, r.p_out, r.draws, r.mean,
                     r.std, r.min, r.max, r.valid_fraction, r.normalized_mean));
  }
  return t;
}

// ---- hardening --------------------------------------------------------------------

std::vector<HardeningRow> hardening_sweep(const ExperimentConfig& c, const RunOptions& o) {
  validate_config(c, Operation::kHardening);
  const auto specs = c.scheme_specs();
  const int n = c.n_rx;
  const std::size_t cells = specs.size() * c.p_out.size();

  std::vector<HardeningRow> rows;
  for (double v : c.velocity_mps) {
    const auto params = params_for(c, v);
    for (int m : c.m_tx) {
      auto parts = run_chunks<std::vector<std::vector<double>>>(
          c.channel_draws, kDrawChunk, o.workers, [&](std::int64_t chunk, std::int64_t b, std::int64_t e) {
            std::vector<std::vector<double>> vals(cells);
            auto rng = chunk_rng(c.seed, kChannelLane, static_cast<std::uint64_t>(m), chunk);
            auto grng = chunk_rng(c.seed, kGroupingLane, static_cast<std::uint64_t>(m), chunk);
            for (std::int64_t d = b; d < e; ++d) {
              const auto h0 = sample_initial_channel(m, n, rng);
              for (std::size_t s = 0; s < specs.size(); ++s) {
                const auto prep = prepare(specs[s], h0, params, grng, c.mrc_antenna);
                for (std::size_t p = 0; p < c.p_out.size(); ++p) {
                  vals[s * c.p_out.size() + p].push_back(chernoff_lower_bound(prep.dist, c.p_out[p], c.tol).value);
                }
              }
            }
            return vals;
          });
      for (std::size_t s = 0; s < specs.size(); ++s) {
        for (std::size_t p = 0; p < c.p_out.size(); ++p) {
          std::vector<double> x;
          for (const auto& part : parts) {
            const auto& src = part[s * c.p_out.size() + p];
            x.insert(x.end(), src.begin(), src.end());
          }
          const double mn = static_cast<double>(m) * n;
          std::vector<double> norm(x.size());
          std::transform(x.begin(), x.end(), norm.begin(), [mn](double y) { return y / mn; });
          HardeningRow r;
          r.scheme = specs[s];
          r.velocity_mps = v;
          r.m_tx = m;
          r.n_rx = n;
          r.p_out = c.p_out[p];
          r.draws = static_cast<std::int64_t>(x.size());
          r.mean_norm_mn = mean_of(norm);
          r.std_norm_mn = std_of(norm, r.mean_norm_mn);
          r.p05_norm_mn = quantile(norm, 0.05);
          r.p50_norm_mn = quantile(norm, 0.50);
          r.p95_norm_mn = quantile(norm, 0.95);
          r.mean_norm_m = r.mean_norm_mn * n;
          r.hardened_limit = has_hardened_limit(specs[s].kind) ? hardened_limit(specs[s].kind, n, params) : kNaN;
          r.rel_gap = (r.hardened_limit - r.mean_norm_mn) / r.hardened_limit;
          r.cv = r.std_norm_mn / r.mean_norm_mn;
          rows.push_back(r);
        }
      }
    }
  }
  return rows;
}

CsvTable hardening_table(const std::vector<HardeningRow>& rows) {
  CsvTable t({"scheme", "k_groups", "velocity_mps", "m_tx", "n_rx", "p_out", "draws", "mean_norm_mn", "std_norm_mn",
              "p05_norm_mn", "p50_norm_mn", "p95_norm_mn", "mean_norm_m", "hardened_limit", "rel_gap", "cv"});
  for (const auto& r : rows) {
    t.add_row(row_of(scheme_cells(r.scheme), r.velocity_mps, r.m_tx, r.n_rx, r.p_out, r.draws, r.mean_norm_mn,
                     r.std_norm_mn, r.p05_norm_mn, r.p50_norm_mn, r.p95_norm_mn, r.mean_norm_m, r.hardened_limit,
                     r.rel_gap, r.cv));
  }
  return t;
}

// ---- power ------------------------------------------------------------------------

std::vector<PowerRow> power_vs_pdec(const ExperimentConfig& c, const RunOptions& o) {
  validate_config(c, Operation::kPowerPdec);
  return power_sweep(c, o);
}

std::vector<PowerRow> power_vs_m(const ExperimentConfig& c, const RunOptions& o) {
  validate_config(c, Operation::kPowerM);
  return power_sweep(c, o);
}

CsvTable power_table(const std::vector<PowerRow>& rows) {
  CsvTable t({"scheme", "k_groups", "velocity_mps", "m_tx", "n_rx", "p_per", "p_dec", "p_out", "isnr0_db", "draws",
              "finite_draws", "feasible_draws", "avg_gamma_db", "mean_gamma_db", "mean_beta_lb", "lag_cap_s"});
  for (const auto& r : rows) {
    t.add_row(row_of(scheme_cells(r.scheme), r.velocity_mps, r.m_tx, r.n_rx, r.p_per, r.p_dec, r.p_out, r.isnr0_db,
                     r.draws, r.finite_draws, r.feasible_draws, r.avg_gamma_db, r.mean_gamma_db, r.mean_beta_lb,
                     r.lag_cap_s));
  }
  return t;
}

// ---- recycling ------------------------------------------------------------------------

double recycling_rho(int m_tx, int n_rx, const AgingParams& params) {
  if (m_tx < 1 || n_rx < 1) {
    throw std::invalid_argument("recycling_rho: dimensions must be positive");
  }
  return 1.0 + (n_rx - 1.0) / (m_tx * params.j0 * params.j0 + params.sigma_omega_sq);
}

std::vector<RecyclingRow> recycling_ratio(const ExperimentConfig& c, const RunOptions& o) {
  validate_config(c, Operation::kRecycling);
  const int n = c.n_rx;
  std::vector<RecyclingRow> rows;
  for (double v : c.velocity_mps) {
    const auto params = params_for(c, v);
    for (int m : c.m_tx) {
      // Average SNR with and without recycling over fresh (H0, Omega) pairs.
      struct Sums {
        double recycled = 0.0;
        double plain = 0.0;
      };
      auto asnr = run_chunks<Sums>(c.trials, kTrialChunk, o.workers,
                                   [&](std::int64_t chunk, std::int64_t b, std::int64_t e) {
                                     Sums s;
                                     auto rng = chunk_rng(c.seed, kAsnrLane, static_cast<std::uint64_t>(m), chunk);
                                     for (std::int64_t t = b; t < e; ++t) {
                                       const auto h0 = sample_initial_channel(m, n, rng);
                                       auto w = time_orthogonal_mf(h0, true);
                                       const auto h_tau = evolve(h0, params, rng);
                                       s.recycled += realized_gain(h_tau, w).value;
                                       w.kind = BeamformerKind::kTimeOrthogonalMf;
                                       s.plain += realized_gain(h_tau, w).value;
                                     }
                                     return s;
                                   });
      Sums total;
      for (const auto& s : asnr) {
        total.recycled += s.recycled;
        total.plain += s.plain;
      }

      // Mean Chernoff bounds with and without recycling over H0 draws.
      auto bounds = run_chunks<std::vector<Sums>>(
          c.channel_draws, kDrawChunk, o.workers, [&](std::int64_t chunk, std::int64_t b, std::int64_t e) {
            std::vector<Sums> acc(c.p_out.size());
            auto rng = chunk_rng(c.seed, kChannelLane, static_cast<std::uint64_t>(m), chunk);
            for (std::int64_t d = b; d < e; ++d) {
              const auto h0 = sample_initial_channel(m, n, rng);
              auto w = time_orthogonal_mf(h0, true);
              const auto rec = gain_moments(h0, w, params);
              w.kind = BeamformerKind::kTimeOrthogonalMf;
              const auto plain = gain_moments(h0, w, params);
              for (std::size_t p = 0; p < c.p_out.size(); ++p) {
                acc[p].recycled += chernoff_lower_bound(rec, c.p_out[p], c.tol).value;
                acc[p].plain += chernoff_lower_bound(plain, c.p_out[p], c.tol).value;
              }
            }
            return acc;
          });
      for (std::size_t p = 0; p < c.p_out.size(); ++p) {
        Sums bt;
        for (const auto& part : bounds) {
          bt.recycled += part[p].recycled;
          bt.plain += part[p].plain;
        }
        RecyclingRow r;
        r.velocity_mps = v;
        r.m_tx = m;
        r.n_rx = n;
        r.p_out = c.p_out[p];
        r.trials = c.trials;
        r.draws = c.channel_draws;
        r.rho_closed_form = recycling_rho(m, n, params);
        r.asnr_ratio_mc = total.recycled / total.plain;
        r.bound_mean_ratio = bt.recycled / bt.plain;
        r.excess = r.bound_mean_ratio - r.rho_closed_form;
        rows.push_back(r);
      }
    }
  }
  return rows;
}

CsvTable recycling_table(const std::vector<RecyclingRow>& rows) {
  CsvTable t({"velocity_mps", "m_tx", "n_rx", "p_out", "trials", "draws", "rho_closed_form", "asnr_ratio_mc",
              "bound_mean_ratio", "excess"});
  for (const auto& r : rows) {
    t.add_row(row_of(std::vector<std::string>{}, r.velocity_mps, r.m_tx, r.n_rx, r.p_out, r.trials, r.draws,
                     r.rho_closed_form, r.asnr_ratio_mc, r.bound_mean_ratio, r.excess));
  }
  return t;
}

// ---- bounds-compare ------------------------------------------------------------------------

std::vector<BoundsCompareRow> bounds_compare(const ExperimentConfig& c, const RunOptions& o) {
  (void)o;
  validate_config(c, Operation::kBoundsCompare);
  const auto specs = c.scheme_specs();
  const int n = c.n_rx;
  std::vector<BoundsCompareRow> rows;
  for (double v : c.velocity_mps) {
    const auto params = params_for(c, v);
    for (int m : c.m_tx) {
      auto rng = chunk_rng(c.seed, kChannelLane, static_cast<std::uint64_t>(m), 0);
      auto grng = chunk_rng(c.seed, kGroupingLane, static_cast<std::uint64_t>(m), 0);
      const auto h0 = sample_initial_channel(m, n, rng);
      for (const auto& spec : specs) {
        const auto prep = prepare(spec, h0, params, grng, c.mrc_antenna);
        const double norm = normalization_factor(spec.kind, m, n, c.normalization);
        for (double p : c.p_out) {
          const auto emit = [&](const std::string& name, const BoundResult& b) {
            BoundsCompareRow r;
            r.scheme = spec;
            r.bound = name;
            r.velocity_mps = v;
            r.m_tx = m;
            r.n_rx = n;
            r.p_out = p;
            r.value = b.value;
            r.normalized_value = b.value / norm;
            r.valid = b.valid;
            r.iterations = b.iterations;
            r.mean = prep.dist.mean;
            r.variance = prep.dist.variance;
            r.simplified_variance = prep.dist.simplified_variance;
            rows.push_back(r);
          };
          emit("chernoff", chernoff_lower_bound(prep.dist, p, c.tol));
          emit("chebyshev", chebyshev_lower_bound(prep.dist, p, VarianceForm::kExact));
          emit("chebyshev_simplified", chebyshev_lower_bound(prep.dist, p, VarianceForm::kSimplified));
          emit("polynomial", polynomial_lower_bound(prep.dist, p));
          if (has_hardened_limit(spec.kind)) {
            BoundResult h;
            h.kind = BoundKind::kHardenedLimit;
            h.value = hardened_limit(spec.kind, n, params) * m * n;
            h.p_out = p;
            h.valid = h.value > 0.0;
            emit("hardened_limit", h);
          }
        }
      }
    }
  }
  return rows;
}

CsvTable bounds_compare_table(const std::vector<BoundsCompareRow>& rows) {
  CsvTable t({"scheme", "k_groups", "bound", "velocity_mps", "m_tx", "n_rx", "p_out", "value", "normalized_value",
              "valid", "iterations", "mean", "variance", "simplified_variance"});
  for (const auto& r : rows) {
    t.add_row(row_of(scheme_cells(r.scheme), r.bound, r.velocity_mps, r.m_tx, r.n_rx, r.p_out, r.value,
                     r.normalized_value, r.valid, r.iterations, r.mean, r.variance, r.simplified_variance));
  }
  return t;
}

// ---- dispatcher ----------------------------------------------------------------------------

ExperimentOutput run_experiment(Operation op, const ExperimentConfig& c, const RunOptions& o) {
  ExperimentOutput out;
  switch (op) {
    case Operation::kOutage: {
      auto r = estimate_outage(c, o);
      out.tables.emplace_back("", outage_table(r.rows));
      out.warnings = std::move(r.warnings);
      break;
    }
    case Operation::kPdf: {
      auto r = gain_pdf(c, o);
      out.tables.emplace_back("", pdf_histogram_table(r.histogram));
      out.tables.emplace_back("_summary", pdf_summary_table(r.summary));
      break;
    }
    case Operation::kHardening:
      out.tables.emplace_back("", hardening_table(hardening_sweep(c, o)));
      break;
    case Operation::kPowerPdec:
    case Operation::kPowerM: {
      const auto rows = op == Operation::kPowerPdec ? power_vs_pdec(c, o) : power_vs_m(c, o);
      for (const auto& r : rows) {
        if (r.feasible_draws == 0) {
          ++out.infeasible_points;
        }
      }
      out.tables.emplace_back("", power_table(rows));
      break;
    }
    case Operation::kRecycling:
      out.tables.emplace_back("", recycling_table(recycling_ratio(c, o)));
      break;
    case Operation::kBoundsCompare:
      out.tables.emplace_back("", bounds_compare_table(bounds_compare(c, o)));
      break;
  }
  return out;
}

}  // namespace agedbf
