// SPDX-License-Identifier: Apache-2.0
#include "swpm/harness.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "swpm/rng.hpp"

namespace swpm {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      const std::string piece = trim(s.substr(start, i - start));
      if (!piece.empty()) out.push_back(piece);
      start = i + 1;
    }
  }
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad " + what + " value '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("bad " + what + " value '" + s + "'");
  return v;
}

std::size_t parse_size(const std::string& s, const std::string& what) {
  const double v = parse_double(s, what);
  if (v < 0.0 || v != std::floor(v)) throw std::invalid_argument(what + " must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

Vec3 parse_triple(const std::string& s, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw std::invalid_argument(what + " expects three comma-separated values");
  return {parse_double(parts[0], what), parse_double(parts[1], what), parse_double(parts[2], what)};
}

MomentKey parse_moment_token(const std::string& token) {
  if (token.size() != 3 || !std::isdigit(static_cast<unsigned char>(token[0])) ||
      !std::isdigit(static_cast<unsigned char>(token[1])) ||
      !std::isdigit(static_cast<unsigned char>(token[2]))) {
    throw std::invalid_argument("moment key '" + token + "' must be three digits (e.g. 400)");
  }
  MomentKey key{token[0] - '0', token[1] - '0', token[2] - '0'};
  if (key.order() > 5) throw std::invalid_argument("moment key '" + token + "' exceeds order 5");
  return key;
}

struct EnsembleValues {
  std::vector<double> pre;
  std::vector<double> post;
};

double sample_stddev(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  const double ss = pairwise_sum(xs.size(), [&](std::size_t i) {
    const double d = xs[i] - mean;
    return d * d;
  });
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::string TrackedQuantity::label() const {
  if (!is_tail) return to_string(key);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "Tail(%g)", radius);
  return buf;
}

std::string to_string(SamplerKind kind) { return kind == SamplerKind::Dsmc ? "dsmc" : "swpm"; }

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::uint64_t ensemble_seed(std::uint64_t master_seed, std::size_t index) {
  return splitmix64(master_seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1));
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  cfg.tracked.clear();

  SchemeConfig scheme;
  bool scheme_set = false;
  bool grouping_rectbox = false;
  std::optional<std::size_t> ngroup;
  std::vector<TrackedQuantity> moments;
  std::vector<TrackedQuantity> tails;
  bool moments_given = false;

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "alpha") {
      cfg.dist.alpha = parse_triple(value, "alpha");
    } else if (key == "beta") {
      cfg.dist.beta = parse_triple(value, "beta");
    } else if (key == "vr") {
      cfg.dist.v_r = parse_double(value, "vr");
    } else if (key == "sampler") {
      if (value == "dsmc") cfg.sampler = SamplerKind::Dsmc;
      else if (value == "swpm") cfg.sampler = SamplerKind::Swpm;
      else throw std::invalid_argument("sampler must be dsmc or swpm");
    } else if (key == "n_orig") {
      cfg.n_orig.clear();
      for (const auto& tok : split(value, ',')) cfg.n_orig.push_back(parse_size(tok, "n_orig"));
      if (cfg.n_orig.empty()) throw std::invalid_argument("n_orig list is empty");
    } else if (key == "n_ensembles") {
      cfg.n_ensembles = parse_size(value, "n_ensembles");
    } else if (key == "scheme") {
      if (value != "none") {
        scheme.variant = parse_scheme_variant(value);
        scheme_set = true;
      }
    } else if (key == "grouping") {
      if (value == "rectbox") grouping_rectbox = true;
      else if (value != "none") throw std::invalid_argument("grouping must be none or rectbox");
    } else if (key == "ngroup") {
      ngroup = parse_size(value, "ngroup");
    } else if (key == "delta") {
      scheme.delta = parse_double(value, "delta");
    } else if (key == "gamma") {
      scheme.gamma = parse_double(value, "gamma");
    } else if (key == "l") {
      scheme.l = parse_triple(value, "l");
    } else if (key == "speed") {
      scheme.speed = value == "min" ? SpeedPolicy::minimal()
                                    : SpeedPolicy::fixed(parse_double(value, "speed"));
    } else if (key == "moments") {
      moments_given = true;
      moments.clear();
      for (const auto& tok : split(value, ','))
        moments.push_back(TrackedQuantity::for_moment(parse_moment_token(tok)));
    } else if (key == "tails") {
      tails.clear();
      for (const auto& tok : split(value, ','))
        tails.push_back(TrackedQuantity::for_tail(parse_double(tok, "tail radius")));
    } else if (key == "seed") {
      cfg.master_seed = static_cast<std::uint64_t>(parse_size(value, "seed"));
    } else if (key == "quad_points") {
      cfg.quad_points = static_cast<int>(parse_size(value, "quad_points"));
    } else {
      throw std::invalid_argument("unknown configuration key '" + key + "'");
    }
  }

  if (!moments_given) {
    for (const char* tok : {"100", "200", "300", "400", "500"})
      moments.push_back(TrackedQuantity::for_moment(parse_moment_token(tok)));
  }
  cfg.tracked = moments;
  cfg.tracked.insert(cfg.tracked.end(), tails.begin(), tails.end());

  if (scheme_set) cfg.scheme = scheme;
  if (grouping_rectbox) {
    if (!scheme_set) throw std::invalid_argument("grouping requires a scheme");
    if (!ngroup) throw std::invalid_argument("grouping requires ngroup");
    cfg.group_target = ngroup;
  }

  if (cfg.n_ensembles < 2) throw std::invalid_argument("n_ensembles must be at least 2");
  if (cfg.tracked.empty()) throw std::invalid_argument("nothing to track");
  for (const auto& q : cfg.tracked) {
    if (q.is_tail && (q.radius < 0.0 || q.radius > cfg.dist.v_r)) {
      throw std::invalid_argument("tail radius outside [0, vr]");
    }
  }
  if (cfg.group_target &&
      *cfg.group_target <= static_cast<std::size_t>(reduced_particle_budget(cfg.scheme->variant))) {
    throw std::invalid_argument("ngroup must exceed the scheme's reduced size");
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

std::vector<StatRecord> run_experiment(const ExperimentConfig& config, int threads) {
  const std::size_t nq = config.tracked.size();

  std::vector<double> references(nq);
  {
    const QuadratureGrid grid{config.quad_points};
    const double C = normalization_constant(config.dist, grid);
    for (std::size_t q = 0; q < nq; ++q) {
      const auto& t = config.tracked[q];
      references[q] = t.is_tail ? reference_tail(config.dist, t.radius, grid, C)
                                : reference_moment(config.dist, t.key, grid, C);
    }
  }

  const std::string scheme_name = config.scheme ? to_string(config.scheme->variant) : "none";
  const std::string grouping_name = config.group_target ? "rectbox" : "none";
  const std::string sampler_name = to_string(config.sampler);

  const auto evaluate = [&](const Ensemble& e, std::vector<double>& out) {
    out.resize(nq);
    for (std::size_t q = 0; q < nq; ++q) {
      const auto& t = config.tracked[q];
      out[q] = t.is_tail ? tail_functional(e, t.radius) : moment(e, t.key);
    }
  };

  std::vector<StatRecord> pre_records, post_records;
  for (const std::size_t n : config.n_orig) {
    std::vector<EnsembleValues> values(config.n_ensembles);

    const auto compute_one = [&](std::size_t i) {
      const std::uint64_t seed = ensemble_seed(config.master_seed, i);
      const Ensemble sample = config.sampler == SamplerKind::Dsmc
                                  ? sample_dsmc_like(config.dist, n, seed)
                                  : sample_swpm_like(config.dist, n, seed);
      evaluate(sample, values[i].pre);
      if (config.scheme) {
        if (config.group_target) {
          GroupingConfig gc;
          gc.v_r = config.dist.v_r;
          gc.n_group = *config.group_target;
          gc.scheme = *config.scheme;
          gc.seed = splitmix64(seed ^ 0x517cc1b727220a95ull);
          evaluate(reduce_grouped(sample, gc).ensemble, values[i].post);
        } else {
          evaluate(reduce(sample, *config.scheme).ensemble, values[i].post);
        }
      }
    };

    const int nthreads = std::max(1, threads);
    if (nthreads == 1 || config.n_ensembles < 2) {
      for (std::size_t i = 0; i < config.n_ensembles; ++i) compute_one(i);
    } else {
      std::atomic<std::size_t> next{0};
      const auto worker = [&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= config.n_ensembles) break;
          compute_one(i);
        }
      };
      std::vector<std::thread> pool;
      for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();
    }

    for (std::size_t q = 0; q < nq; ++q) {
      std::vector<double> pre(config.n_ensembles);
      for (std::size_t i = 0; i < config.n_ensembles; ++i) pre[i] = values[i].pre[q];

      StatRecord rec;
      rec.stage = Stage::Pre;
      rec.scheme = scheme_name;
      rec.sampler = sampler_name;
      rec.grouping = grouping_name;
      rec.n_orig = n;
      rec.quantity = config.tracked[q].label();
      rec.reference = references[q];
      rec.mean = pairwise_sum(pre.data(), pre.size()) / static_cast<double>(pre.size());
      rec.stddev = sample_stddev(pre, rec.mean);
      pre_records.push_back(rec);

      if (!config.scheme) continue;

      std::vector<double> post(config.n_ensembles), e_abs(config.n_ensembles),
          e_rel(config.n_ensembles);
      bool rel_is_abs = false;
      for (std::size_t i = 0; i < config.n_ensembles; ++i) {
        post[i] = values[i].post[q];
        e_abs[i] = std::abs(post[i] - pre[i]);
        if (std::abs(pre[i]) < 1e-14) {
          e_rel[i] = e_abs[i];
          rel_is_abs = true;
        } else {
          e_rel[i] = (post[i] - pre[i]) / std::abs(pre[i]);
        }
      }

      StatRecord post_rec = rec;
      post_rec.stage = Stage::Post;
      post_rec.mean = pairwise_sum(post.data(), post.size()) / static_cast<double>(post.size());
      post_rec.stddev = sample_stddev(post, post_rec.mean);
      post_rec.e_abs_mean =
          pairwise_sum(e_abs.data(), e_abs.size()) / static_cast<double>(e_abs.size());
      post_rec.e_rel_mean =
          pairwise_sum(e_rel.data(), e_rel.size()) / static_cast<double>(e_rel.size());
      post_rec.e_rel_abs_mean = pairwise_sum(e_rel.size(), [&](std::size_t i) {
                                  return std::abs(e_rel[i]);
                                }) / static_cast<double>(e_rel.size());
      post_rec.rel_is_abs = rel_is_abs;
      post_records.push_back(post_rec);
    }
  }

  pre_records.insert(pre_records.end(), post_records.begin(), post_records.end());
  return pre_records;
}

std::vector<ErrorSummaryRow> summarize_errors(const std::vector<StatRecord>& records) {
  std::vector<ErrorSummaryRow> rows;
  for (const auto& r : records) {
    if (r.stage != Stage::Post) continue;
    rows.push_back({r.scheme, r.n_orig, r.quantity, r.e_abs_mean, r.e_rel_mean, r.e_rel_abs_mean,
                    r.rel_is_abs});
  }
  return rows;
}

std::string records_to_csv(const std::vector<StatRecord>& records) {
  std::string out =
      "stage,scheme,sampler,grouping,n_orig,quantity,mean,stddev,reference,"
      "e_abs_mean,e_rel_mean,e_rel_abs_mean,rel_is_abs\n";
  for (const auto& r : records) {
    out += r.stage == Stage::Pre ? "pre," : "post,";
    out += r.scheme + ',' + r.sampler + ',' + r.grouping + ',';
    out += std::to_string(r.n_orig) + ',' + r.quantity + ',';
    out += format_double(r.mean) + ',' + format_double(r.stddev) + ',' + format_double(r.reference);
    if (r.stage == Stage::Post) {
      out += ',' + format_double(r.e_abs_mean) + ',' + format_double(r.e_rel_mean) + ',' +
             format_double(r.e_rel_abs_mean) + ',' + (r.rel_is_abs ? "1" : "0");
    } else {
      out += ",,,,";
    }
    out += '\n';
  }
  return out;
}

std::string summary_to_csv(const std::vector<ErrorSummaryRow>& rows) {
  std::string out = "scheme,n_orig,quantity,e_abs_mean,e_rel_mean,e_rel_abs_mean,rel_is_abs\n";
  for (const auto& r : rows) {
    out += r.scheme + ',' + std::to_string(r.n_orig) + ',' + r.quantity + ',' +
           format_double(r.e_abs_mean) + ',' + format_double(r.e_rel_mean) + ',' +
           format_double(r.e_rel_abs_mean) + ',' + (r.rel_is_abs ? "1" : "0") + '\n';
  }
  return out;
}

}  // namespace swpm
