// Copyright 2026 The ldpjoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpjoint/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <numeric>
#include <set>

#include "ldpjoint/ingest.hpp"
#include "ldpjoint/metrics.hpp"
#include "ldpjoint/rng.hpp"

namespace ldpjoint {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kMinTimingWindowSec = 2e-4;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string variable_name(ExperimentSpec::Variable v) {
  switch (v) {
    case ExperimentSpec::Variable::kW:
      return "w";
    case ExperimentSpec::Variable::kN:
      return "n";
    case ExperimentSpec::Variable::kEps:
      return "eps";
    case ExperimentSpec::Variable::kOmega:
      return "omega";
  }
  return "unknown";
}

CategoricalDataset resolve_dataset(const ExperimentSpec& spec) {
  if (spec.dataset.kind == SweepDatasetSpec::Kind::kFile) {
    IngestConfig config;
    if (!spec.dataset.profile.empty()) {
      config = load_profile(spec.dataset.profile);
    }
    return load_csv_file(spec.dataset.path, config).data;
  }
  SynthSpec synth = spec.dataset.synth;
  if (spec.variable == ExperimentSpec::Variable::kW ||
      spec.variable == ExperimentSpec::Variable::kOmega) {
    for (double value : spec.grid) {
      synth.attribute_count = std::max(
          synth.attribute_count, static_cast<std::size_t>(std::llround(value)));
    }
  } else {
    synth.attribute_count = std::max(synth.attribute_count, spec.fixed_w);
  }
  return sample_dataset(synth).data;
}

CategoricalDataset subsample(const CategoricalDataset& data, std::size_t n,
                             std::uint64_t seed) {
  if (n == 0 || n >= data.record_count()) return data;
  std::vector<std::size_t> order(data.record_count());
  std::iota(order.begin(), order.end(), 0);
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + rng.uniform_int(order.size() - i);
    std::swap(order[i], order[j]);
  }
  CategoricalDataset out(data.schema(), data.role());
  out.reserve(n);
  std::vector<std::uint32_t> record(data.attribute_count());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < record.size(); ++c) {
      record[c] = data.cell(order[i], c);
    }
    out.append(record);
  }
  return out;
}

double mean_of(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

double stddev_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

nlohmann::ordered_json environment_json() {
  nlohmann::ordered_json env;
  env["program"] = "ldpjoint";
  env["version"] = "0.1.0";
  env["compiler"] = __VERSION__;
  return env;
}

}  // namespace

std::vector<AttributeSubset> sample_subsets(const DatasetSchema& schema,
                                            std::size_t w,
                                            std::size_t max_count,
                                            std::uint64_t seed) {
  const std::size_t m = schema.attribute_count();
  if (w == 0 || w > m) {
    throw Error(ErrorCode::kSubsetMismatch,
                "cannot draw " + std::to_string(w) + "-way subsets from " +
                    std::to_string(m) + " attributes");
  }
  if (max_count == 0) {
    throw Error(ErrorCode::kEmptyCollection, "subset budget is zero");
  }
  double total = 1.0;
  for (std::size_t i = 1; i <= w; ++i) {
    total *= static_cast<double>(m - w + i) / static_cast<double>(i);
  }
  std::vector<AttributeSubset> out;
  if (total <= static_cast<double>(max_count)) {
    std::vector<std::size_t> combo(w);
    std::iota(combo.begin(), combo.end(), 0);
    for (;;) {
      out.emplace_back(schema, combo);
      // Next combination in lexicographic order: bump the rightmost index
      // that still has room, then resequence everything after it.
      std::size_t axis = w;
      while (axis > 0) {
        --axis;
        if (combo[axis] < m - w + axis) {
          ++combo[axis];
          for (std::size_t j = axis + 1; j < w; ++j) {
            combo[j] = combo[j - 1] + 1;
          }
          break;
        }
        if (axis == 0) return out;
      }
    }
  }
  SplitMix64 rng(seed);
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::size_t> pool(m);
  while (seen.size() < max_count) {
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < w; ++i) {
      const std::size_t j = i + rng.uniform_int(m - i);
      std::swap(pool[i], pool[j]);
    }
    std::vector<std::size_t> combo(pool.begin(), pool.begin() + w);
    std::sort(combo.begin(), combo.end());
    seen.insert(std::move(combo));
  }
  for (const auto& combo : seen) out.emplace_back(schema, combo);
  return out;
}

ExperimentSpec experiment_from_json(const nlohmann::json& j) {
  ExperimentSpec spec;
  if (!j.contains("dataset")) {
    throw Error(ErrorCode::kParseError, "experiment needs a dataset");
  }
  const auto& ds = j["dataset"];
  const std::string kind = ds.value("kind", std::string("synth"));
  if (kind == "synth") {
    spec.dataset.kind = SweepDatasetSpec::Kind::kSynth;
    spec.dataset.synth.n = ds.value("n", std::size_t{1000});
    spec.dataset.synth.d = ds.value("d", std::size_t{4});
    spec.dataset.synth.target_v = ds.value("v", 0.0);
    spec.dataset.synth.seed = ds.value("seed", std::uint64_t{1});
    spec.dataset.synth.attribute_count = ds.value("attributes", std::size_t{2});
    const std::string marginal =
        ds.value("marginal", std::string("harmonic"));
    if (marginal == "harmonic") {
      spec.dataset.synth.marginal = MarginalKind::kHarmonic;
    } else if (marginal == "uniform") {
      spec.dataset.synth.marginal = MarginalKind::kUniform;
    } else {
      throw Error(ErrorCode::kParseError,
                  "marginal must be harmonic or uniform");
    }
    spec.dataset.synth.include_unit_category =
        ds.value("include_unit", false);
  } else if (kind == "file") {
    spec.dataset.kind = SweepDatasetSpec::Kind::kFile;
    spec.dataset.path = ds.at("path").get<std::string>();
    spec.dataset.profile = ds.value("profile", std::string());
  } else {
    throw Error(ErrorCode::kParseError, "dataset kind must be synth or file");
  }

  if (!j.contains("schemes") || !j["schemes"].is_array() ||
      j["schemes"].empty()) {
    throw Error(ErrorCode::kParseError, "experiment needs a scheme list");
  }
  for (const auto& s : j["schemes"]) {
    spec.schemes.push_back(parse_method(s.get<std::string>()));
  }

  const std::string variable = j.value("variable", std::string("eps"));
  if (variable == "w") {
    spec.variable = ExperimentSpec::Variable::kW;
  } else if (variable == "n") {
    spec.variable = ExperimentSpec::Variable::kN;
  } else if (variable == "eps") {
    spec.variable = ExperimentSpec::Variable::kEps;
  } else if (variable == "omega") {
    spec.variable = ExperimentSpec::Variable::kOmega;
  } else {
    throw Error(ErrorCode::kParseError,
                "variable must be one of w, n, eps, omega");
  }

  if (!j.contains("grid") || !j["grid"].is_array() || j["grid"].empty()) {
    throw Error(ErrorCode::kParseError, "experiment needs a value grid");
  }
  for (const auto& v : j["grid"]) spec.grid.push_back(v.get<double>());

  if (j.contains("fixed")) {
    spec.fixed_w = j["fixed"].value("w", spec.fixed_w);
    spec.fixed_eps = j["fixed"].value("eps", spec.fixed_eps);
    spec.fixed_n = j["fixed"].value("n", spec.fixed_n);
  }
  spec.trials = j.value("trials", spec.trials);
  spec.subset_count = j.value("subsets", spec.subset_count);
  if (spec.trials == 0 || spec.subset_count == 0) {
    throw Error(ErrorCode::kOutOfRange,
                "trials and subsets must be positive");
  }
  spec.seed = j.value("seed", spec.seed);
  spec.omega_cap = j.value("omega_cap", spec.omega_cap);
  spec.recursive_truncation =
      j.value("recursive_truncation", spec.recursive_truncation);
  spec.fit_target = j.value("fit_target", spec.fit_target);
  return spec;
}

SweepOutput run_sweep(const ExperimentSpec& spec) {
  const CategoricalDataset base = resolve_dataset(spec);
  validate_dataset(base);
  const DatasetSchema& schema = base.schema();
  const std::string var_name = variable_name(spec.variable);
  const bool sweeping_order =
      spec.variable == ExperimentSpec::Variable::kW ||
      spec.variable == ExperimentSpec::Variable::kOmega;

  SweepOutput output;
  // point -> scheme -> per-trial aggregates
  std::vector<std::vector<std::vector<double>>> avd_cells(spec.grid.size());
  std::vector<std::vector<std::vector<double>>> mae_cells(spec.grid.size());
  std::vector<std::vector<std::vector<double>>> mse_cells(spec.grid.size());
  std::vector<std::vector<std::vector<double>>> time_cells(spec.grid.size());
  // scheme -> pooled (omega, sup) points for the scaling fit
  std::vector<std::vector<std::pair<double, double>>> fit_points(
      spec.schemes.size());

  for (std::size_t point = 0; point < spec.grid.size(); ++point) {
    const double value = spec.grid[point];
    std::size_t w = spec.fixed_w;
    std::size_t n = spec.fixed_n;
    double eps = spec.fixed_eps;
    switch (spec.variable) {
      case ExperimentSpec::Variable::kW:
      case ExperimentSpec::Variable::kOmega:
        w = static_cast<std::size_t>(std::llround(value));
        break;
      case ExperimentSpec::Variable::kN:
        n = static_cast<std::size_t>(std::llround(value));
        break;
      case ExperimentSpec::Variable::kEps:
        eps = value;
        break;
    }
    if (w == 0 || w > schema.attribute_count()) {
      throw Error(ErrorCode::kSubsetMismatch,
                  "grid point needs order " + std::to_string(w) +
                      " but the dataset has " +
                      std::to_string(schema.attribute_count()) +
                      " attributes");
    }
    if (!(eps > 0.0)) {
      throw Error(ErrorCode::kOutOfRange, "budget grid must stay positive");
    }

    // Same subsets across points unless the order itself changes.
    const std::uint64_t subset_seed =
        keyed_value(spec.seed, 0x5b5e75, sweeping_order ? point : 0);
    const std::vector<AttributeSubset> subsets =
        sample_subsets(schema, w, spec.subset_count, subset_seed);

    avd_cells[point].assign(spec.schemes.size(), {});
    mae_cells[point].assign(spec.schemes.size(), {});
    mse_cells[point].assign(spec.schemes.size(), {});
    time_cells[point].assign(spec.schemes.size(), {});

    const std::vector<double> budgets(schema.attribute_count(),
                                      eps / static_cast<double>(w));
    const RandomizationPlan plan = make_plan(schema, budgets);

    for (std::size_t trial = 0; trial < spec.trials; ++trial) {
      const std::uint64_t trial_seed =
          keyed_value(spec.seed, point + 1, trial);
      const CategoricalDataset sample =
          subsample(base, n, keyed_value(trial_seed, 1, 0));
      const CategoricalDataset randomized =
          randomize_dataset(sample, plan, keyed_value(trial_seed, 2, 0));

      std::vector<ProbTensor> truths;
      std::vector<ProbTensor> observed;
      truths.reserve(subsets.size());
      observed.reserve(subsets.size());
      for (const auto& subset : subsets) {
        truths.push_back(empirical_distribution(sample, subset));
        observed.push_back(empirical_distribution(randomized, subset));
      }

      for (std::size_t s = 0; s < spec.schemes.size(); ++s) {
        EstimationOptions options;
        options.method = spec.schemes[s];
        options.omega_cap = spec.omega_cap;
        options.recursive_truncation = spec.recursive_truncation;

        std::vector<double> sups;
        std::vector<double> maes;
        std::vector<double> mses;
        double elapsed = 0.0;
        std::size_t skipped = 0;
        nlohmann::ordered_json omega_points = nlohmann::ordered_json::array();
        for (std::size_t q = 0; q < subsets.size(); ++q) {
          EstimationResult result;
          try {
            result = estimate(observed[q], plan_for_subset(plan, subsets[q]),
                              randomized.record_count(), options);
          } catch (const Error& e) {
            if (e.code() == ErrorCode::kDomainTooLarge) {
              ++skipped;
              continue;
            }
            throw;
          }
          const MetricReport report = compare(truths[q], result.estimate);
          sups.push_back(report.sup);
          maes.push_back(report.mae);
          mses.push_back(report.mse);
          elapsed += result.elapsed_sec;
          if (spec.variable == ExperimentSpec::Variable::kOmega) {
            const double omega =
                subsets[q].domain_size().convert_to<double>();
            omega_points.push_back({omega, report.sup});
            fit_points[s].emplace_back(omega, report.sup);
          }
        }

        nlohmann::ordered_json record;
        record["variable"] = var_name;
        record["value"] = value;
        record["w"] = w;
        record["n"] = randomized.record_count();
        record["eps"] = eps;
        record["scheme"] = method_name(spec.schemes[s]);
        record["trial"] = trial;
        record["subsets"] = subsets.size() - skipped;
        record["subsets_skipped"] = skipped;
        if (sups.empty()) {
          record["avd"] = nullptr;
          record["mae"] = nullptr;
          record["mse"] = nullptr;
        } else {
          record["avd"] = mean_of(sups);
          record["mae"] = mean_of(maes);
          record["mse"] = mean_of(mses);
          avd_cells[point][s].push_back(mean_of(sups));
          mae_cells[point][s].push_back(mean_of(maes));
          mse_cells[point][s].push_back(mean_of(mses));
          time_cells[point][s].push_back(elapsed);
        }
        record["elapsed_sec"] = elapsed;
        if (spec.variable == ExperimentSpec::Variable::kOmega) {
          record["points"] = std::move(omega_points);
        }
        output.records.push_back(std::move(record));
      }
    }
  }

  nlohmann::ordered_json summary;
  summary["variable"] = var_name;
  summary["grid"] = spec.grid;
  nlohmann::ordered_json scheme_names = nlohmann::ordered_json::array();
  for (EstimationMethod scheme : spec.schemes) {
    scheme_names.push_back(method_name(scheme));
  }
  summary["schemes"] = std::move(scheme_names);
  summary["trials"] = spec.trials;
  summary["subset_count"] = spec.subset_count;
  summary["seed"] = spec.seed;
  if (spec.dataset.kind == SweepDatasetSpec::Kind::kSynth) {
    summary["dataset"] = {{"kind", "synth"},
                          {"n", spec.dataset.synth.n},
                          {"d", spec.dataset.synth.d},
                          {"v", spec.dataset.synth.target_v},
                          {"seed", spec.dataset.synth.seed}};
  } else {
    summary["dataset"] = {{"kind", "file"}, {"path", spec.dataset.path}};
  }

  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (std::size_t point = 0; point < spec.grid.size(); ++point) {
    for (std::size_t s = 0; s < spec.schemes.size(); ++s) {
      nlohmann::ordered_json cell;
      cell["value"] = spec.grid[point];
      cell["scheme"] = method_name(spec.schemes[s]);
      const auto& avds = avd_cells[point][s];
      if (avds.empty()) {
        cell["avd_mean"] = nullptr;
        cell["avd_std"] = nullptr;
        cell["mae_mean"] = nullptr;
        cell["mse_mean"] = nullptr;
        cell["elapsed_sec_mean"] = nullptr;
      } else {
        cell["avd_mean"] = mean_of(avds);
        cell["avd_std"] = stddev_of(avds);
        cell["mae_mean"] = mean_of(mae_cells[point][s]);
        cell["mse_mean"] = mean_of(mse_cells[point][s]);
        cell["elapsed_sec_mean"] = mean_of(time_cells[point][s]);
      }
      cell["trials_used"] = avds.size();
      cells.push_back(std::move(cell));
    }
  }
  summary["cells"] = std::move(cells);

  if (spec.variable == ExperimentSpec::Variable::kOmega) {
    nlohmann::ordered_json fits;
    for (std::size_t s = 0; s < spec.schemes.size(); ++s) {
      if (fit_points[s].size() < 2) continue;
      const LinearFit fit = fit_avd_vs_omega(fit_points[s], spec.fit_target);
      nlohmann::ordered_json f;
      f["intercept"] = fit.intercept;
      f["slope"] = fit.slope;
      f["r2"] = fit.r2;
      f["points"] = fit.points;
      f["target"] = spec.fit_target;
      if (fit.omega_star_defined) {
        f["omega_star"] = fit.omega_star;
      } else {
        f["omega_star"] = nullptr;
      }
      fits[method_name(spec.schemes[s])] = std::move(f);
    }
    summary["fit"] = std::move(fits);
  }

  summary["environment"] = environment_json();
  summary["timestamp"] = utc_timestamp();
  output.summary = std::move(summary);
  return output;
}

std::vector<TimingRow> run_timing(std::size_t d,
                                  const std::vector<std::size_t>& w_grid,
                                  double retain_prob, std::size_t samples,
                                  std::size_t naive_dim_cap) {
  if (d < 2) {
    throw Error(ErrorCode::kOutOfRange, "domain size must be at least 2");
  }
  if (!(retain_prob > 1.0 / static_cast<double>(d)) || !(retain_prob < 1.0)) {
    throw Error(ErrorCode::kOutOfRange,
                "retention probability must lie in (1/d, 1)");
  }
  if (samples == 0 || w_grid.empty()) {
    throw Error(ErrorCode::kOutOfRange, "need samples and a grid");
  }
  const double eps = std::log(retain_prob * (static_cast<double>(d) - 1.0) /
                              (1.0 - retain_prob));

  volatile double sink = 0.0;
  auto measure = [&](auto&& op) -> double {
    op();
    std::size_t batch = 1;
    for (;;) {
      const auto start = Clock::now();
      for (std::size_t i = 0; i < batch; ++i) op();
      const double window = seconds_since(start);
      if (window >= kMinTimingWindowSec || batch >= (std::size_t{1} << 16)) {
        break;
      }
      batch *= 2;
    }
    std::vector<double> times(samples);
    for (std::size_t s = 0; s < samples; ++s) {
      const auto start = Clock::now();
      for (std::size_t i = 0; i < batch; ++i) op();
      times[s] = seconds_since(start) / static_cast<double>(batch);
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
  };

  std::vector<TimingRow> rows;
  for (std::size_t w : w_grid) {
    if (w == 0) {
      throw Error(ErrorCode::kOutOfRange, "order grid must stay positive");
    }
    std::vector<RandomizationMatrix> mats(w, make_uniform_matrix(d, eps));
    ProbTensor observed =
        make_tensor(std::vector<std::size_t>(w, d), TensorRole::kEmpirical);
    SplitMix64 rng(0x7171e5ULL ^ w);
    double total = 0.0;
    for (double& v : observed.values) {
      v = rng.uniform();
      total += v;
    }
    for (double& v : observed.values) v /= total;

    TimingRow row;
    row.w = w;
    row.cells = observed.values.size();
    row.castell_sec = measure([&] {
      sink = sink + estimate_castell(observed, mats).values[0];
    });
    row.reduced_sec = measure([&] {
      sink = sink + estimate_reduced(observed, mats, row.cells).values[0];
    });
    if (row.cells <= naive_dim_cap) {
      row.naive_sec = measure([&] {
        sink = sink + estimate_naive(observed, mats, row.cells).values[0];
      });
      row.naive_measured = true;
    }
    rows.push_back(row);
  }
  return rows;
}

LinearFit fit_avd_vs_omega(const std::vector<std::pair<double, double>>& pts,
                           double target) {
  if (pts.size() < 2) {
    throw Error(ErrorCode::kDegenerateFit, "need at least two points");
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& [x, y] : pts) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<double>(pts.size());
  mean_y /= static_cast<double>(pts.size());
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
    syy += (y - mean_y) * (y - mean_y);
  }
  if (sxx <= 0.0) {
    throw Error(ErrorCode::kDegenerateFit,
                "all points share one domain size");
  }
  LinearFit fit;
  fit.points = pts.size();
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  if (syy > 0.0) {
    const double ss_res = syy - fit.slope * sxy;
    fit.r2 = 1.0 - ss_res / syy;
  } else {
    fit.r2 = 1.0;
  }
  if (fit.slope > 0.0) {
    fit.omega_star = (target - fit.intercept) / fit.slope;
    fit.omega_star_defined = true;
  }
  return fit;
}

}  // namespace ldpjoint
