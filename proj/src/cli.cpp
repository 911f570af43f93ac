// SPDX-License-Identifier: Apache-2.0
#include "swpm/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "swpm/distributions.hpp"
#include "swpm/grouping.hpp"
#include "swpm/harness.hpp"
#include "swpm/moments.hpp"
#include "swpm/particle.hpp"
#include "swpm/schemes.hpp"

namespace swpm {

namespace {

using ordered_json = nlohmann::ordered_json;

Vec3 parse_triple_flag(const std::string& s, const std::string& what) {
  Vec3 v;
  int n = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      if (n >= 3) throw CLI::ValidationError(what, "expected three comma-separated values");
      try {
        v[n++] = std::stod(s.substr(start, i - start));
      } catch (const std::exception&) {
        throw CLI::ValidationError(what, "bad number in '" + s + "'");
      }
      start = i + 1;
    }
  }
  if (n != 3) throw CLI::ValidationError(what, "expected three comma-separated values");
  return v;
}

SpeedPolicy parse_speed_flag(const std::string& s) {
  if (s == "min") return SpeedPolicy::minimal();
  try {
    return SpeedPolicy::fixed(std::stod(s));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--speed", "expected 'min' or a number");
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

ordered_json report_json(const ReduceReport& r) {
  return ordered_json{{"input_count", r.input_count}, {"output_count", r.output_count},
                      {"s", r.s},                     {"pass_through", r.pass_through},
                      {"max_discrepancy", r.max_discrepancy}, {"note", r.note}};
}

int cmd_sample(const std::string& alpha, const std::string& beta, double vr, std::size_t n,
               const std::string& mode, std::uint64_t seed, const std::string& out_path) {
  DistParams params;
  params.alpha = parse_triple_flag(alpha, "--alpha");
  params.beta = parse_triple_flag(beta, "--beta");
  params.v_r = vr;

  Ensemble ensemble;
  if (mode == "dsmc") {
    ensemble = sample_dsmc_like(params, n, seed);
  } else if (mode == "swpm") {
    ensemble = sample_swpm_like(params, n, seed);
  } else {
    std::cerr << "mode must be dsmc or swpm\n";
    return 1;
  }
  write_particle_csv(ensemble, out_path);
  return 0;
}

int cmd_moments(const std::string& in_path, int max_order, const std::string& tails,
                const std::string& out_path) {
  const Ensemble ensemble = read_particle_csv(in_path);

  std::string csv = "quantity,value\n";
  for (const auto& key : canonical_keys(max_order)) {
    csv += to_string(key) + ',' + format_double(moment(ensemble, key)) + '\n';
  }
  if (!tails.empty()) {
    std::size_t start = 0;
    for (std::size_t i = 0; i <= tails.size(); ++i) {
      if (i == tails.size() || tails[i] == ',') {
        const std::string tok = tails.substr(start, i - start);
        start = i + 1;
        if (tok.empty()) continue;
        const double radius = std::stod(tok);
        csv += TrackedQuantity::for_tail(radius).label() + ',' +
               format_double(tail_functional(ensemble, radius)) + '\n';
      }
    }
  }
  write_text(out_path, csv);
  return 0;
}

int cmd_reduce(const std::string& in_path, const std::string& scheme_name,
               const std::string& grouping, std::size_t ngroup, double vr, double delta,
               double gamma, const std::string& l, const std::string& speed, std::uint64_t seed,
               const std::string& out_path, const std::string& report_path) {
  const Ensemble ensemble = read_particle_csv(in_path);

  SchemeConfig scheme;
  scheme.variant = parse_scheme_variant(scheme_name);
  scheme.delta = delta;
  scheme.gamma = gamma;
  scheme.l = parse_triple_flag(l, "--l");
  scheme.speed = parse_speed_flag(speed);

  ordered_json report;
  Ensemble reduced;
  if (grouping == "none") {
    ReduceResult res = reduce(ensemble, scheme);
    reduced = std::move(res.ensemble);
    report["reduction"] = report_json(res.report);
  } else if (grouping == "rectbox") {
    GroupingConfig gc;
    gc.v_r = vr;
    gc.n_group = ngroup;
    gc.scheme = scheme;
    gc.seed = seed;
    GroupedReduceResult res = reduce_grouped(ensemble, gc);
    reduced = std::move(res.ensemble);
    report["grouping"] = ordered_json{{"boxes_total", res.grouping.boxes_total},
                                      {"boxes_occupied", res.grouping.boxes_occupied},
                                      {"groups_reduced", res.grouping.groups_reduced},
                                      {"groups_passed", res.grouping.groups_passed},
                                      {"min_group_size", res.grouping.min_group_size},
                                      {"max_group_size", res.grouping.max_group_size},
                                      {"out_of_ball", res.grouping.out_of_ball}};
    ordered_json groups = ordered_json::array();
    for (const auto& g : res.groups) groups.push_back(report_json(g));
    report["groups"] = std::move(groups);
  } else {
    std::cerr << "grouping must be none or rectbox\n";
    return 1;
  }

  report["input_count"] = ensemble.size();
  report["output_count"] = reduced.size();

  write_particle_csv(reduced, out_path);
  if (!report_path.empty()) write_text(report_path, report.dump(2) + "\n");
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir, int threads) {
  const ExperimentConfig config = load_experiment_config(config_path);
  const auto records = run_experiment(config, threads);

  std::filesystem::create_directories(out_dir);
  const auto out = [&](const std::string& name) {
    return (std::filesystem::path(out_dir) / name).string();
  };

  write_text(out("records.csv"), records_to_csv(records));
  if (config.scheme) write_text(out("errors.csv"), summary_to_csv(summarize_errors(records)));

  ordered_json report;
  report["config"] = ordered_json{
      {"alpha", {config.dist.alpha.x, config.dist.alpha.y, config.dist.alpha.z}},
      {"beta", {config.dist.beta.x, config.dist.beta.y, config.dist.beta.z}},
      {"vr", config.dist.v_r},
      {"sampler", to_string(config.sampler)},
      {"n_orig", config.n_orig},
      {"n_ensembles", config.n_ensembles},
      {"scheme", config.scheme ? to_string(config.scheme->variant) : "none"},
      {"grouping", config.group_target ? "rectbox" : "none"},
      {"seed", config.master_seed},
      {"quad_points", config.quad_points}};
  ordered_json recs = ordered_json::array();
  for (const auto& r : records) {
    ordered_json jr{{"stage", r.stage == Stage::Pre ? "pre" : "post"},
                    {"scheme", r.scheme},
                    {"sampler", r.sampler},
                    {"grouping", r.grouping},
                    {"n_orig", r.n_orig},
                    {"quantity", r.quantity},
                    {"mean", r.mean},
                    {"stddev", r.stddev},
                    {"reference", r.reference}};
    if (r.stage == Stage::Post) {
      jr["e_abs_mean"] = r.e_abs_mean;
      jr["e_rel_mean"] = r.e_rel_mean;
      jr["e_rel_abs_mean"] = r.e_rel_abs_mean;
      jr["rel_is_abs"] = r.rel_is_abs;
    }
    recs.push_back(std::move(jr));
  }
  report["records"] = std::move(recs);
  write_text(out("report.json"), report.dump(2) + "\n");
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Moment-preserving particle reduction for weighted particle ensembles"};
  app.require_subcommand(1);

  // sample
  std::string s_alpha = "0,0,0", s_beta = "0,0,0", s_mode = "swpm", s_out;
  double s_vr = 7.0;
  std::size_t s_n = 1000;
  std::uint64_t s_seed = 0;
  auto* sample = app.add_subcommand("sample", "Draw a weighted-particle ensemble");
  sample->add_option("--alpha", s_alpha, "Skewness per axis, ax,ay,az");
  sample->add_option("--beta", s_beta, "Kurtosis damping per axis, bx,by,bz");
  sample->add_option("--vr", s_vr, "Support ball radius");
  sample->add_option("--n", s_n, "Particle count")->required();
  sample->add_option("--mode", s_mode, "dsmc|swpm");
  sample->add_option("--seed", s_seed, "RNG seed");
  sample->add_option("--out", s_out, "Output particle CSV")->required();

  // moments
  std::string m_in, m_tails, m_out;
  int m_max_order = 3;
  auto* moments_cmd = app.add_subcommand("moments", "Moments and tail masses of an ensemble");
  moments_cmd->add_option("--in", m_in, "Input particle CSV")->required();
  moments_cmd->add_option("--max-order", m_max_order, "Highest moment order (<= 5)")
      ->check(CLI::Range(0, 5));
  moments_cmd->add_option("--tails", m_tails, "Comma-separated tail radii");
  moments_cmd->add_option("--out", m_out, "Output CSV")->required();

  // reduce
  std::string r_in, r_scheme, r_grouping = "none", r_l = "0.5,0.5,0.5", r_speed = "min", r_out,
              r_report;
  std::size_t r_ngroup = 0;
  double r_vr = 7.0, r_delta = std::numbers::sqrt2, r_gamma = std::numbers::sqrt3;
  std::uint64_t r_seed = 0;
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce an ensemble, preserving moments");
  reduce_cmd->add_option("--in", r_in, "Input particle CSV")->required();
  reduce_cmd->add_option("--scheme", r_scheme, "k1|k2|k2.5|k3")->required();
  reduce_cmd->add_option("--grouping", r_grouping, "none|rectbox");
  reduce_cmd->add_option("--ngroup", r_ngroup, "Target particles per group (rectbox)");
  reduce_cmd->add_option("--vr", r_vr, "Simulation ball radius (rectbox)");
  reduce_cmd->add_option("--delta", r_delta, "Twin speed scaling");
  reduce_cmd->add_option("--gamma", r_gamma, "Quadruplet speed scaling");
  reduce_cmd->add_option("--l", r_l, "Axis third-speed ratios, lx,ly,lz");
  reduce_cmd->add_option("--speed", r_speed, "'min' or a fixed speed");
  reduce_cmd->add_option("--seed", r_seed, "Grouping seed");
  reduce_cmd->add_option("--out", r_out, "Output particle CSV")->required();
  reduce_cmd->add_option("--report", r_report, "Reduction report (JSON)");

  // experiment
  std::string e_config, e_out;
  int e_threads = 1;
  auto* experiment = app.add_subcommand("experiment", "Run a sampling/reduction study");
  experiment->add_option("--config", e_config, "Experiment config file")->required();
  experiment->add_option("--out", e_out, "Output directory")->required();
  experiment->add_option("--threads", e_threads, "Worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*sample) return cmd_sample(s_alpha, s_beta, s_vr, s_n, s_mode, s_seed, s_out);
    if (*moments_cmd) return cmd_moments(m_in, m_max_order, m_tails, m_out);
    if (*reduce_cmd) {
      if (r_grouping == "rectbox" && r_ngroup == 0) {
        r_ngroup = static_cast<std::size_t>(reduced_particle_budget(parse_scheme_variant(r_scheme))) + 1;
      }
      return cmd_reduce(r_in, r_scheme, r_grouping, r_ngroup, r_vr, r_delta, r_gamma, r_l, r_speed,
                        r_seed, r_out, r_report);
    }
    if (*experiment) return cmd_experiment(e_config, e_out, e_threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace swpm
