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

#include "ldpjoint/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ldpjoint/bench.hpp"
#include "ldpjoint/bounds.hpp"
#include "ldpjoint/estimator.hpp"
#include "ldpjoint/ingest.hpp"
#include "ldpjoint/metrics.hpp"
#include "ldpjoint/randomizer.hpp"
#include "ldpjoint/synth.hpp"

namespace ldpjoint {
namespace {

using nlohmann::ordered_json;

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  }
  out << text;
}

IngestReport load_dataset(const std::string& path,
                          const std::string& profile) {
  IngestConfig config;
  if (!profile.empty()) config = load_profile(profile);
  return load_csv_file(path, config);
}

ordered_json plan_to_json(const RandomizationPlan& plan,
                          const DatasetSchema& schema) {
  ordered_json doc;
  doc["total_epsilon"] = plan.total_epsilon();
  ordered_json attrs = ordered_json::array();
  for (std::size_t i = 0; i < plan.attribute_count(); ++i) {
    const RandomizationMatrix& m = plan.matrices[i];
    ordered_json a;
    a["name"] = schema.attributes[i].name;
    a["epsilon"] = m.epsilon;
    a["retain_prob"] = m.retain_prob;
    a["flip_prob"] = m.flip_prob;
    a["categories"] = schema.attributes[i].categories;
    attrs.push_back(std::move(a));
  }
  doc["attributes"] = std::move(attrs);
  return doc;
}

std::pair<DatasetSchema, RandomizationPlan> plan_from_json(
    const nlohmann::json& doc) {
  if (!doc.contains("attributes") || !doc["attributes"].is_array()) {
    throw Error(ErrorCode::kParseError, "plan document lacks attributes");
  }
  DatasetSchema schema;
  std::vector<double> epsilons;
  for (const auto& a : doc["attributes"]) {
    AttributeSchema attr;
    attr.name = a.at("name").get<std::string>();
    for (const auto& c : a.at("categories")) {
      attr.categories.push_back(c.get<std::string>());
    }
    schema.attributes.push_back(std::move(attr));
    epsilons.push_back(a.at("epsilon").get<double>());
  }
  RandomizationPlan plan = make_plan(schema, epsilons);
  return {std::move(schema), std::move(plan)};
}

ordered_json tensor_to_json(const std::vector<std::string>& subset_names,
                            const ProbTensor& tensor) {
  ordered_json doc;
  doc["subset"] = subset_names;
  doc["shape"] = tensor.shape;
  switch (tensor.role) {
    case TensorRole::kEmpirical:
      doc["role"] = "empirical";
      break;
    case TensorRole::kEstimated:
      doc["role"] = "estimated";
      break;
    case TensorRole::kTruncated:
      doc["role"] = "truncated";
      break;
  }
  doc["values"] = tensor.values;
  return doc;
}

ProbTensor tensor_from_json(const nlohmann::json& doc) {
  ProbTensor tensor;
  for (const auto& d : doc.at("shape")) {
    tensor.shape.push_back(d.get<std::size_t>());
  }
  for (const auto& v : doc.at("values")) {
    tensor.values.push_back(v.get<double>());
  }
  const std::string role = doc.value("role", std::string("estimated"));
  tensor.role = role == "empirical"    ? TensorRole::kEmpirical
                : role == "truncated"  ? TensorRole::kTruncated
                                       : TensorRole::kEstimated;
  std::size_t cells = 1;
  for (std::size_t d : tensor.shape) cells *= d;
  if (tensor.shape.empty() || cells != tensor.values.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "tensor document shape does not match its values");
  }
  return tensor;
}

ordered_json thresholds_to_json(const Thresholds& t) {
  ordered_json doc;
  doc["n_star"] = t.n_star;
  if (t.eps_star_defined) {
    doc["eps_star"] = t.eps_star;
  } else {
    doc["eps_star"] = nullptr;
  }
  doc["w_star"] = t.w_star;
  return doc;
}

ordered_json estimation_to_json(const EstimationResult& result,
                                const std::vector<std::string>& subset_names,
                                EstimationMethod requested) {
  ordered_json doc;
  doc["method"] = method_name(requested);
  doc["method_used"] = method_name(result.method_used);
  doc["subset"] = subset_names;
  doc["shape"] = result.estimate.shape;
  doc["values"] = result.estimate.values;
  doc["sum"] = result.estimate.sum();
  doc["mass_deficit"] = result.mass_deficit;
  doc["elapsed_sec"] = result.elapsed_sec;
  if (result.bounds_valid) {
    doc["bounds"] = {{"avd_rr_independent", result.bound_rr_independent},
                     {"avd_ind_joint", result.bound_ind_joint}};
    doc["thresholds"] = thresholds_to_json(result.thresholds);
  }
  return doc;
}

void emit(std::ostream& out, const ordered_json& doc) {
  out << doc.dump(2) << "\n";
}

struct CliContext {
  std::ostream& out;
  std::ostream& err;
};

void add_randomize(CLI::App& app, CliContext& ctx) {
  auto* cmd = app.add_subcommand(
      "randomize", "Perturb every column of a dataset under a split budget");
  auto in = std::make_shared<std::string>();
  auto profile = std::make_shared<std::string>();
  auto out_path = std::make_shared<std::string>();
  auto plan_out = std::make_shared<std::string>();
  auto eps = std::make_shared<double>(1.0);
  auto eps_each = std::make_shared<std::vector<double>>();
  auto seed = std::make_shared<std::uint64_t>(1);
  cmd->add_option("--in", *in, "Input CSV")->required();
  cmd->add_option("--profile", *profile, "Ingest profile JSON");
  auto* eps_opt = cmd->add_option(
      "--eps", *eps, "Total budget, split evenly across attributes");
  auto* each_opt = cmd->add_option("--eps-each", *eps_each,
                                   "Per-attribute budgets, comma separated")
                       ->delimiter(',');
  eps_opt->excludes(each_opt);
  cmd->add_option("--seed", *seed, "Randomization seed");
  cmd->add_option("--out", *out_path, "Output CSV")->required();
  cmd->add_option("--plan-out", *plan_out,
                  "Write the plan (schema + budgets) as JSON");
  cmd->callback([&ctx, in, profile, out_path, plan_out, eps, eps_each, seed] {
    const IngestReport report = load_dataset(*in, *profile);
    const DatasetSchema& schema = report.data.schema();
    const RandomizationPlan plan =
        eps_each->empty() ? make_uniform_plan(schema, *eps)
                          : make_plan(schema, *eps_each);
    const CategoricalDataset randomized =
        randomize_dataset(report.data, plan, *seed);
    write_csv_file(randomized, *out_path);
    const ordered_json plan_doc = plan_to_json(plan, schema);
    if (!plan_out->empty()) {
      write_text_file(*plan_out, plan_doc.dump(2) + "\n");
    }
    ordered_json doc;
    doc["records"] = randomized.record_count();
    doc["attributes"] = randomized.attribute_count();
    doc["epsilon_total"] = plan.total_epsilon();
    doc["seed"] = *seed;
    doc["out"] = *out_path;
    if (!plan_out->empty()) doc["plan_out"] = *plan_out;
    emit(ctx.out, doc);
  });
}

void add_estimate(CLI::App& app, CliContext& ctx) {
  auto* cmd = app.add_subcommand(
      "estimate",
      "Estimate a joint distribution over a subset of attributes");
  auto in = std::make_shared<std::string>();
  auto in_randomized = std::make_shared<std::string>();
  auto plan_path = std::make_shared<std::string>();
  auto profile = std::make_shared<std::string>();
  auto subset_names = std::make_shared<std::vector<std::string>>();
  auto method = std::make_shared<std::string>("castell");
  auto eps = std::make_shared<double>(1.0);
  auto seed = std::make_shared<std::uint64_t>(1);
  auto omega_cap = std::make_shared<std::size_t>(kDefaultOmegaCap);
  auto recursive = std::make_shared<bool>(false);
  auto out_path = std::make_shared<std::string>();
  auto* in_opt = cmd->add_option(
      "--in", *in, "True-data CSV; it is perturbed before estimation");
  auto* rand_opt = cmd->add_option("--in-randomized", *in_randomized,
                                   "Already-perturbed CSV");
  auto* plan_opt =
      cmd->add_option("--plan", *plan_path, "Plan JSON for --in-randomized");
  in_opt->excludes(rand_opt);
  rand_opt->needs(plan_opt);
  cmd->add_option("--profile", *profile, "Ingest profile JSON for --in");
  cmd->add_option("--subset", *subset_names,
                  "Attribute names, comma separated")
      ->required()
      ->delimiter(',');
  cmd->add_option("--method", *method, "Estimation method")
      ->check(CLI::IsMember({"rr_joint", "rr_independent", "naive", "reduced",
                             "castell", "truncated", "hybrid"}));
  cmd->add_option("--eps", *eps, "Total budget over the subset, for --in");
  cmd->add_option("--seed", *seed, "Randomization seed, for --in");
  cmd->add_option("--omega-cap", *omega_cap,
                  "Flattened-domain cap for dense methods");
  cmd->add_flag("--recursive-truncation", *recursive,
                "Truncate the truncation caps recursively");
  cmd->add_option("--out", *out_path, "Write the estimated tensor as JSON");
  cmd->callback([&ctx, in, in_randomized, plan_path, profile, subset_names,
                 method, eps, seed, omega_cap, recursive, out_path] {
    if (in->empty() && in_randomized->empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "estimate needs --in or --in-randomized");
    }
    EstimationOptions options;
    options.method = parse_method(*method);
    options.omega_cap = *omega_cap;
    options.recursive_truncation = *recursive;

    EstimationResult result;
    if (!in->empty()) {
      const IngestReport report = load_dataset(*in, *profile);
      const AttributeSubset subset(report.data.schema(), *subset_names);
      const CategoricalDataset projected =
          select_columns(report.data, subset);
      const RandomizationPlan plan =
          make_uniform_plan(projected.schema(), *eps);
      const CategoricalDataset randomized =
          randomize_dataset(projected, plan, *seed);
      std::vector<std::size_t> all(subset.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      result = estimate(randomized,
                        AttributeSubset(projected.schema(), all), plan,
                        options);
    } else {
      auto [schema, plan] = plan_from_json(parse_json_file(*plan_path));
      IngestConfig config;
      config.fixed_schema = schema;
      std::vector<ColumnSpec> columns;
      for (const auto& attr : schema.attributes) {
        ColumnSpec spec;
        spec.name = attr.name;
        spec.source_name = attr.name;
        columns.push_back(std::move(spec));
      }
      config.columns = std::move(columns);
      const IngestReport report = load_csv_file(*in_randomized, config);
      CategoricalDataset randomized = report.data;
      randomized.set_role(DataRole::kRandomized);
      const AttributeSubset subset(randomized.schema(), *subset_names);
      result = estimate(randomized, subset, plan, options);
    }

    if (!out_path->empty()) {
      ordered_json tensor_doc =
          tensor_to_json(*subset_names, result.estimate);
      write_text_file(*out_path, tensor_doc.dump(2) + "\n");
    }
    emit(ctx.out, estimation_to_json(result, *subset_names, options.method));
  });
}

void add_metrics(CLI::App& app, CliContext& ctx) {
  auto* cmd = app.add_subcommand(
      "metrics", "Compare an estimated tensor against the true data");
  auto truth_path = std::make_shared<std::string>();
  auto profile = std::make_shared<std::string>();
  auto subset_names = std::make_shared<std::vector<std::string>>();
  auto estimate_path = std::make_shared<std::string>();
  cmd->add_option("--truth", *truth_path, "True-data CSV")->required();
  cmd->add_option("--profile", *profile, "Ingest profile JSON");
  cmd->add_option("--subset", *subset_names,
                  "Attribute names, comma separated")
      ->required()
      ->delimiter(',');
  cmd->add_option("--estimate", *estimate_path,
                  "Tensor JSON produced by estimate --out")
      ->required();
  cmd->callback([&ctx, truth_path, profile, subset_names, estimate_path] {
    const IngestReport report = load_dataset(*truth_path, *profile);
    const AttributeSubset subset(report.data.schema(), *subset_names);
    const ProbTensor truth = empirical_distribution(report.data, subset);
    const ProbTensor estimated =
        tensor_from_json(parse_json_file(*estimate_path));
    const MetricReport metrics = compare(truth, estimated);
    ordered_json doc;
    doc["subset"] = *subset_names;
    doc["mae"] = metrics.mae;
    doc["mse"] = metrics.mse;
    doc["sup_distance"] = metrics.sup;
    doc["avd"] = metrics.sup;
    if (subset.size() == 2) {
      doc["cramers_v_truth"] = cramers_v(
          report.data, subset.indices()[0], subset.indices()[1]);
    }
    emit(ctx.out, doc);
  });
}

void add_bounds(CLI::App& app, CliContext& ctx) {
  auto* cmd = app.add_subcommand(
      "bounds", "Error envelopes and crossover thresholds");
  auto n = std::make_shared<std::size_t>(0);
  auto d = std::make_shared<std::size_t>(2);
  auto w = std::make_shared<std::size_t>(2);
  auto eps = std::make_shared<double>(1.0);
  auto v = std::make_shared<double>(-1.0);
  cmd->add_option("--n", *n, "Record count")->required();
  cmd->add_option("--d", *d, "Domain size per attribute")->required();
  cmd->add_option("--w", *w, "Subset order")->required();
  cmd->add_option("--eps", *eps, "Total budget over the subset")->required();
  cmd->add_option("--v", *v, "Association, adds the pairwise MSE envelope");
  cmd->callback([&ctx, n, d, w, eps, v] {
    const HybridChoice choice =
        select_hybrid(*n, *w, *d, *eps / static_cast<double>(*w));
    ordered_json doc;
    doc["n"] = *n;
    doc["d"] = *d;
    doc["w"] = *w;
    doc["eps"] = *eps;
    doc["avd_rr_independent"] = choice.bound_rr_independent;
    doc["avd_ind_joint"] = choice.bound_ind_joint;
    if (*v >= 0.0) {
      doc["mse_rr_independent"] = bound_mse_rr_ind(*v, *d);
    }
    doc["selected_method"] = method_name(choice.method);
    doc["thresholds"] = thresholds_to_json(choice.thresholds);
    emit(ctx.out, doc);
  });
}

void add_synth(CLI::App& app, CliContext& ctx) {
  auto* cmd = app.add_subcommand(
      "synth", "Sample a coupled categorical dataset");
  auto n = std::make_shared<std::size_t>(1000);
  auto d = std::make_shared<std::size_t>(4);
  auto v = std::make_shared<double>(0.0);
  auto seed = std::make_shared<std::uint64_t>(1);
  auto attrs = std::make_shared<std::size_t>(2);
  auto marginal = std::make_shared<std::string>("harmonic");
  auto include_unit = std::make_shared<bool>(false);
  auto out_path = std::make_shared<std::string>();
  auto schema_out = std::make_shared<std::string>();
  cmd->add_option("--n", *n, "Records")->required();
  cmd->add_option("--d", *d, "Marginal parameter")->required();
  cmd->add_option("--v", *v, "Target association");
  cmd->add_option("--seed", *seed, "Sampling seed");
  cmd->add_option("--attrs", *attrs, "Attribute count");
  cmd->add_option("--marginal", *marginal, "Marginal family")
      ->check(CLI::IsMember({"harmonic", "uniform"}));
  cmd->add_flag("--include-unit", *include_unit,
                "Extend the skewed marginal with the unit weight");
  cmd->add_option("--out", *out_path, "Output CSV")->required();
  cmd->add_option("--schema-out", *schema_out, "Write the schema as JSON");
  cmd->callback([&ctx, n, d, v, seed, attrs, marginal, include_unit, out_path,
                 schema_out] {
    SynthSpec spec;
    spec.n = *n;
    spec.d = *d;
    spec.target_v = *v;
    spec.seed = *seed;
    spec.attribute_count = *attrs;
    spec.marginal = *marginal == "uniform" ? MarginalKind::kUniform
                                           : MarginalKind::kHarmonic;
    spec.include_unit_category = *include_unit;
    const SynthResult result = sample_dataset(spec);
    write_csv_file(result.data, *out_path);
    if (!schema_out->empty()) {
      write_text_file(*schema_out,
                      schema_to_json(result.data.schema()).dump(2) + "\n");
    }
    ordered_json doc;
    doc["records"] = result.data.record_count();
    doc["attributes"] = result.data.attribute_count();
    doc["categories"] = result.marginal.size();
    doc["theta"] = result.theta;
    doc["population_v"] = result.population_v;
    doc["seed"] = *seed;
    doc["out"] = *out_path;
    emit(ctx.out, doc);
  });
}

void add_ingest(CLI::App& app, CliContext& ctx) {
  auto* cmd = app.add_subcommand(
      "ingest", "Load a CSV through a profile and report its schema");
  auto in = std::make_shared<std::string>();
  auto profile = std::make_shared<std::string>();
  auto out_path = std::make_shared<std::string>();
  auto schema_out = std::make_shared<std::string>();
  cmd->add_option("--in", *in, "Input CSV")->required();
  cmd->add_option("--profile", *profile, "Ingest profile JSON");
  cmd->add_option("--out", *out_path, "Write the cleaned dataset as CSV");
  cmd->add_option("--schema-out", *schema_out, "Write the schema as JSON");
  cmd->callback([&ctx, in, profile, out_path, schema_out] {
    const IngestReport report = load_dataset(*in, *profile);
    if (!out_path->empty()) write_csv_file(report.data, *out_path);
    if (!schema_out->empty()) {
      write_text_file(*schema_out,
                      schema_to_json(report.data.schema()).dump(2) + "\n");
    }
    ordered_json doc;
    doc["rows_read"] = report.rows_read;
    doc["rows_kept"] = report.data.record_count();
    doc["rows_dropped"] = report.rows_dropped;
    doc["schema"] = schema_report(report.data);
    emit(ctx.out, doc);
  });
}

void add_sweep(CLI::App& app, CliContext& ctx) {
  auto* cmd = app.add_subcommand(
      "sweep", "Run an experiment grid from a spec file");
  auto spec_path = std::make_shared<std::string>();
  auto out_path = std::make_shared<std::string>();
  cmd->add_option("--spec", *spec_path, "Experiment spec JSON")->required();
  cmd->add_option("--out", *out_path,
                  "Write line-delimited trial records plus a summary line");
  cmd->callback([&ctx, spec_path, out_path] {
    const ExperimentSpec spec =
        experiment_from_json(parse_json_file(*spec_path));
    const SweepOutput output = run_sweep(spec);
    if (!out_path->empty()) {
      std::ostringstream lines;
      for (const auto& record : output.records) {
        lines << record.dump() << "\n";
      }
      lines << output.summary.dump() << "\n";
      write_text_file(*out_path, lines.str());
    }
    emit(ctx.out, output.summary);
  });
}

void add_timing(CLI::App& app, CliContext& ctx) {
  auto* cmd = app.add_subcommand(
      "timing", "Median wall time of the estimation paths per order");
  auto d = std::make_shared<std::size_t>(3);
  auto w_grid = std::make_shared<std::vector<std::size_t>>(
      std::vector<std::size_t>{2, 3, 4, 5, 6});
  auto p = std::make_shared<double>(0.5);
  auto samples = std::make_shared<std::size_t>(100);
  auto naive_cap = std::make_shared<std::size_t>(300);
  cmd->add_option("--d", *d, "Domain size per attribute");
  cmd->add_option("--w", *w_grid, "Orders, comma separated")->delimiter(',');
  cmd->add_option("--p", *p, "Retention probability");
  cmd->add_option("--samples", *samples, "Timing samples per cell");
  cmd->add_option("--naive-cap", *naive_cap,
                  "Skip the dense path beyond this flattened domain");
  cmd->callback([&ctx, d, w_grid, p, samples, naive_cap] {
    const std::vector<TimingRow> rows =
        run_timing(*d, *w_grid, *p, *samples, *naive_cap);
    ordered_json doc;
    doc["d"] = *d;
    doc["retain_prob"] = *p;
    doc["samples"] = *samples;
    ordered_json out_rows = ordered_json::array();
    for (const TimingRow& row : rows) {
      ordered_json r;
      r["w"] = row.w;
      r["cells"] = row.cells;
      r["castell_sec"] = row.castell_sec;
      r["reduced_sec"] = row.reduced_sec;
      if (row.naive_measured) {
        r["naive_sec"] = row.naive_sec;
        r["naive_vs_castell"] = row.naive_sec / row.castell_sec;
      } else {
        r["naive_sec"] = nullptr;
        r["naive_vs_castell"] = nullptr;
      }
      out_rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(out_rows);
    emit(ctx.out, doc);
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "Locally private randomized response and joint distribution "
      "estimation over categorical datasets",
      "ldpjoint"};
  app.require_subcommand(1);
  CliContext ctx{out, err};
  add_randomize(app, ctx);
  add_estimate(app, ctx);
  add_metrics(app, ctx);
  add_bounds(app, ctx);
  add_synth(app, ctx);
  add_ingest(app, ctx);
  add_sweep(app, ctx);
  add_timing(app, ctx);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    ordered_json doc;
    doc["error"] = {{"code", e.code_name()}, {"message", e.what()}};
    err << doc.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    ordered_json doc;
    doc["error"] = {{"code", "Internal"}, {"message", e.what()}};
    err << doc.dump(2) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ldpjoint
