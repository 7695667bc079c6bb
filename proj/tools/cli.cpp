// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "choquet/csv.hpp"
#include "choquet/distortion.hpp"
#include "choquet/distribution.hpp"
#include "choquet/lq.hpp"
#include "choquet/regularizer.hpp"
#include "choquet/simulate.hpp"
#include "choquet/static_opt.hpp"

namespace choquet::cli {
namespace {

using nlohmann::json;

// Malformed invocation or config: exit code 1, help to stderr.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ===== config file =====

using Section = std::map<std::string, std::string>;
using Config = std::map<std::string, Section>;

const std::map<std::string, std::vector<std::string>> kKnownKeys = {
    {"model", {"A", "B", "C", "D", "M", "R", "N", "P", "L", "rho", "lambda"}},
    {"sim",
     {"dt", "horizon", "paths", "seed", "antithetic", "checkpoints", "mode",
      "x0"}},
    {"distortion",
     {"kind", "eps", "alpha", "n", "scale", "file", "source", "source-mean"}},
    {"distribution", {"spec", "file"}},
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("cannot parse number for " + what + ": '" + s + "'");
  }
}

long long parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("cannot parse integer for " + what + ": '" + s + "'");
  }
}

bool parse_bool(const std::string& s, const std::string& what) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw UsageError("cannot parse boolean for " + what + ": '" + s + "'");
}

Config load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open config file: " + path);
  Config cfg;
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw UsageError(path + ":" + std::to_string(lineno) +
                         ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (kKnownKeys.find(section) == kKnownKeys.end())
        throw UsageError(path + ":" + std::to_string(lineno) +
                         ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || section.empty())
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": expected key=value inside a section");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    const auto& known = kKnownKeys.at(section);
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" +
                       key + "' in section [" + section + "]");
    cfg[section][key] = val;
  }
  return cfg;
}

const std::string* find(const Config& cfg, const std::string& sec,
                        const std::string& key) {
  const auto s = cfg.find(sec);
  if (s == cfg.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

// ===== distribution specs =====

// Grammar: name(args).  uniform(a,b) | normal(mean,var) |
// shifted-exp(shift,rate) | discrete(x1:p1,x2:p2,...) | grid(table.csv)
Distribution parse_distribution(const std::string& spec) {
  const auto open = spec.find('(');
  if (open == std::string::npos || spec.back() != ')')
    throw UsageError("malformed distribution spec: '" + spec + "'");
  const std::string name = trim(spec.substr(0, open));
  const std::string body = spec.substr(open + 1, spec.size() - open - 2);
  const auto args = split(body, ',');
  auto want = [&](std::size_t k) {
    if (args.size() != k)
      throw UsageError("distribution '" + name + "' takes " +
                       std::to_string(k) + " arguments");
  };
  if (name == "uniform") {
    want(2);
    return Distribution::uniform(parse_double(args[0], name),
                                 parse_double(args[1], name));
  }
  if (name == "normal") {
    want(2);
    return Distribution::normal(parse_double(args[0], name),
                                parse_double(args[1], name));
  }
  if (name == "shifted-exp" || name == "shifted-exponential") {
    want(2);
    return Distribution::shifted_exponential(parse_double(args[0], name),
                                             parse_double(args[1], name));
  }
  if (name == "discrete") {
    std::vector<double> xs, ps;
    for (const auto& a : args) {
      const auto parts = split(a, ':');
      if (parts.size() != 2)
        throw UsageError("discrete atoms must be x:p pairs, got '" + a + "'");
      xs.push_back(parse_double(parts[0], "atom"));
      ps.push_back(parse_double(parts[1], "probability"));
    }
    return Distribution::discrete(xs, ps);
  }
  if (name == "grid") {
    want(1);
    std::ifstream is(args[0]);
    if (!is) throw UsageError("cannot open quantile table: " + args[0]);
    return csv::read_quantile_table(is);
  }
  throw UsageError("unknown distribution '" + name + "'");
}

// ===== distortion specs =====

struct DistortionOpts {
  std::string kind;
  double eps = std::nan("");
  double alpha = std::nan("");
  double scale = std::nan("");
  double source_mean = std::nan("");
  int n = -1;
  std::string file;
  std::string source;
};

void merge_config_distortion(const Config& cfg, DistortionOpts& o) {
  if (const auto* v = find(cfg, "distortion", "kind"); v && o.kind.empty())
    o.kind = *v;
  if (const auto* v = find(cfg, "distortion", "eps"); v && std::isnan(o.eps))
    o.eps = parse_double(*v, "eps");
  if (const auto* v = find(cfg, "distortion", "alpha");
      v && std::isnan(o.alpha))
    o.alpha = parse_double(*v, "alpha");
  if (const auto* v = find(cfg, "distortion", "scale");
      v && std::isnan(o.scale))
    o.scale = parse_double(*v, "scale");
  if (const auto* v = find(cfg, "distortion", "source-mean");
      v && std::isnan(o.source_mean))
    o.source_mean = parse_double(*v, "source-mean");
  if (const auto* v = find(cfg, "distortion", "n"); v && o.n < 0)
    o.n = static_cast<int>(parse_int(*v, "n"));
  if (const auto* v = find(cfg, "distortion", "file"); v && o.file.empty())
    o.file = *v;
  if (const auto* v = find(cfg, "distortion", "source"); v && o.source.empty())
    o.source = *v;
}

std::vector<std::pair<double, double>> read_vertex_csv(
    const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open vertex file: " + path);
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 2)
      throw UsageError(path + ": expected two columns per row");
    if (rows.empty() && !cols[0].empty() &&
        !(std::isdigit(cols[0][0]) || cols[0][0] == '-' || cols[0][0] == '+' ||
          cols[0][0] == '.'))
      continue;  // header row
    rows.emplace_back(parse_double(cols[0], "p"), parse_double(cols[1], "h"));
  }
  if (rows.empty()) throw UsageError(path + ": no data rows");
  return rows;
}

// Tags accept inline parameters, e.g. "eps-greedy(0.1)" or
// "discrete-uniform(0.1,2)"; explicit flags take precedence.
Distortion build_distortion(DistortionOpts o) {
  if (o.kind.empty()) throw UsageError("missing --distortion");
  std::string tag = o.kind;
  const auto open = tag.find('(');
  std::vector<std::string> inline_args;
  if (open != std::string::npos) {
    if (tag.back() != ')')
      throw UsageError("malformed distortion tag: '" + o.kind + "'");
    inline_args = split(tag.substr(open + 1, tag.size() - open - 2), ',');
    tag = trim(tag.substr(0, open));
  }
  auto inline_at = [&](std::size_t i, double& slot) {
    if (std::isnan(slot) && i < inline_args.size())
      slot = parse_double(inline_args[i], tag);
  };
  auto need = [&](double v, const char* name) {
    if (std::isnan(v))
      throw UsageError(std::string("distortion '") + tag + "' needs --" + name);
    return v;
  };
  Distortion d = [&]() -> Distortion {
    if (tag == "gini") return Distortion::gini();
    if (tag == "cre") return Distortion::cre();
    if (tag == "gaussian-score") return Distortion::gaussian_score();
    if (tag == "wasserstein-sym") return Distortion::wasserstein_sym();
    if (tag == "eps-greedy") {
      inline_at(0, o.eps);
      return Distortion::eps_greedy(need(o.eps, "eps"));
    }
    if (tag == "discrete-uniform") {
      inline_at(0, o.eps);
      if (o.n < 0 && inline_args.size() > 1)
        o.n = static_cast<int>(parse_int(inline_args[1], tag));
      if (o.n < 0) throw UsageError("distortion 'discrete-uniform' needs --n");
      return Distortion::discrete_uniform(need(o.eps, "eps"), o.n);
    }
    if (tag == "inter-es") {
      inline_at(0, o.alpha);
      return Distortion::inter_es(need(o.alpha, "alpha"));
    }
    if (tag == "wasserstein-asym") {
      inline_at(0, o.alpha);
      return Distortion::wasserstein_asym(need(o.alpha, "alpha"));
    }
    if (tag == "piecewise") {
      if (o.file.empty()) throw UsageError("distortion 'piecewise' needs --file");
      std::vector<double> ps, hs;
      for (const auto& [p, h] : read_vertex_csv(o.file)) {
        ps.push_back(p);
        hs.push_back(h);
      }
      return Distortion::piecewise_linear(ps, hs);
    }
    if (tag == "from-quantile") {
      if (o.source.empty())
        throw UsageError("distortion 'from-quantile' needs --source");
      const Distribution src = parse_distribution(o.source);
      const double m = std::isnan(o.source_mean) ? src.mean() : o.source_mean;
      return Distortion::from_distribution(src, m);
    }
    throw UsageError("unknown distortion tag '" + tag + "'");
  }();
  if (!std::isnan(o.scale)) d = d.scaled(o.scale);
  return d;
}

// ===== model / sim assembly =====

struct ModelFlags {
  double A = std::nan(""), B = std::nan(""), C = std::nan(""),
         D = std::nan(""), M = std::nan(""), R = std::nan(""),
         N = std::nan(""), P = std::nan(""), L = std::nan(""),
         rho = std::nan(""), lambda = std::nan("");
};

LQModel build_model(const Config& cfg, const ModelFlags& f) {
  LQModel m;
  auto pick = [&](const char* key, double flag, double dflt) {
    if (!std::isnan(flag)) return flag;
    if (const auto* v = find(cfg, "model", key)) return parse_double(*v, key);
    return dflt;
  };
  const LQModel d;
  m.A = pick("A", f.A, d.A);
  m.B = pick("B", f.B, d.B);
  m.C = pick("C", f.C, d.C);
  m.D = pick("D", f.D, d.D);
  m.M = pick("M", f.M, d.M);
  m.R = pick("R", f.R, d.R);
  m.N = pick("N", f.N, d.N);
  m.P = pick("P", f.P, d.P);
  m.L = pick("L", f.L, d.L);
  m.rho = pick("rho", f.rho, d.rho);
  m.lambda = pick("lambda", f.lambda, d.lambda);
  return m;
}

struct SimFlags {
  double dt = std::nan(""), horizon = std::nan(""), x0 = std::nan("");
  long long paths = -1, seed = -1, checkpoints = -1;
  bool antithetic = false;  // flag presence tracked separately
  bool antithetic_set = false;
  std::string mode;
};

RegularizerMode parse_mode(const std::string& s) {
  if (s == "closed-form") return RegularizerMode::closed_form;
  if (s == "quadrature") return RegularizerMode::quadrature;
  throw UsageError("unknown regularizer mode '" + s +
                   "' (want closed-form or quadrature)");
}

// Seed precedence: --seed flag, then CHOQUET_SEED, then config, then default.
SimConfig build_sim(const Config& cfg, const SimFlags& f) {
  SimConfig sc;
  if (const auto* v = find(cfg, "sim", "dt")) sc.dt = parse_double(*v, "dt");
  if (const auto* v = find(cfg, "sim", "horizon"))
    sc.horizon = parse_double(*v, "horizon");
  if (const auto* v = find(cfg, "sim", "paths"))
    sc.n_paths = static_cast<std::size_t>(parse_int(*v, "paths"));
  if (const auto* v = find(cfg, "sim", "seed"))
    sc.seed = static_cast<std::uint64_t>(parse_int(*v, "seed"));
  if (const auto* v = find(cfg, "sim", "antithetic"))
    sc.antithetic = parse_bool(*v, "antithetic");
  if (const auto* v = find(cfg, "sim", "checkpoints"))
    sc.n_checkpoints = static_cast<int>(parse_int(*v, "checkpoints"));
  if (const auto* v = find(cfg, "sim", "mode")) sc.mode = parse_mode(*v);
  if (const char* env = std::getenv("CHOQUET_SEED"))
    sc.seed = static_cast<std::uint64_t>(parse_int(env, "CHOQUET_SEED"));
  if (!std::isnan(f.dt)) sc.dt = f.dt;
  if (!std::isnan(f.horizon)) sc.horizon = f.horizon;
  if (f.paths >= 0) sc.n_paths = static_cast<std::size_t>(f.paths);
  if (f.seed >= 0) sc.seed = static_cast<std::uint64_t>(f.seed);
  if (f.checkpoints >= 0) sc.n_checkpoints = static_cast<int>(f.checkpoints);
  if (f.antithetic_set) sc.antithetic = true;
  if (!f.mode.empty()) sc.mode = parse_mode(f.mode);
  return sc;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open output path: " + path);
  return os;
}

// ===== subcommands =====

int do_validate(const DistortionOpts& o, int grid) {
  const Distortion d = build_distortion(o);
  const auto rep = d.validate(grid);
  json j;
  j["kind"] = d.kind_name();
  j["boundary_ok"] = rep.boundary_ok;
  j["concave_ok"] = rep.concave_ok;
  j["nonneg_ok"] = rep.nonneg_ok;
  j["ok"] = rep.ok();
  std::cout << j.dump(2) << "\n";
  return rep.ok() ? 0 : 2;
}

int do_eval(const DistortionOpts& o, const Distribution& pi,
            const std::string& route) {
  const Distortion d = build_distortion(o);
  RegularizerValue r;
  if (route == "quantile")
    r = phi_quantile(d, pi);
  else if (route == "survival")
    r = phi_survival(d, pi);
  else
    throw UsageError("unknown route '" + route +
                     "' (want quantile or survival)");
  json j;
  j["phi"] = r.value;
  j["route"] = r.route_name();
  j["abs_err"] = r.est_abs_error;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int do_maximize(const DistortionOpts& o, double mean, double sd,
                const std::string& output_path) {
  const Distortion d = build_distortion(o);
  const auto r = maximize(d, {mean, sd});
  if (!output_path.empty()) {
    auto os = open_output(output_path);
    csv::write_quantile_table(os, r.distribution);
  }
  json j;
  j["max_value"] = r.max_value;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int do_solve_lq(const Config& cfg, const ModelFlags& mf,
                const DistortionOpts& o, double x,
                const std::string& output_path) {
  const LQModel m = build_model(cfg, mf);
  const Distortion d = build_distortion(o);
  const auto sol = solve(m, d);
  const auto res = riccati_residuals(m, sol);
  if (!output_path.empty()) {
    if (std::isnan(x))
      throw UsageError("--output-path for solve-lq needs --x");
    auto os = open_output(output_path);
    csv::write_quantile_table(os, policy(m, sol, d, x));
  }
  json j;
  j["delta"] = sol.delta;
  j["k2"] = sol.k2;
  j["k1"] = sol.k1;
  j["k0"] = sol.k0;
  j["norm_hprime"] = sol.norm_hprime;
  j["residuals"] = {{"r2", res.r2}, {"r1", res.r1}, {"r0", res.r0}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int do_simulate(const Config& cfg, const ModelFlags& mf, const SimFlags& sf,
                const DistortionOpts& o, const std::string& output_path) {
  const LQModel m = build_model(cfg, mf);
  const Distortion d = build_distortion(o);
  const SimConfig sc = build_sim(cfg, sf);
  double x0 = sf.x0;
  if (std::isnan(x0)) {
    if (const auto* v = find(cfg, "sim", "x0"))
      x0 = parse_double(*v, "x0");
    else
      throw UsageError("simulate needs --x0");
  }
  const auto sol = solve(m, d);
  const auto r = estimate_value(m, sol, d, x0, sc);
  if (!output_path.empty()) {
    auto os = open_output(output_path);
    csv::write_pairs(os, "T,discounted_second_moment",
                     r.transversality.entries);
  }
  json j;
  j["value_estimate"] = r.value_estimate;
  j["std_error"] = r.std_error;
  j["closed_form"] = value(sol, x0);
  j["transversality_pass"] = r.transversality.pass;
  j["tail_warning"] = r.tail_warning;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int do_compare(const Config& cfg, const ModelFlags& mf,
               const std::string& distortions, const std::string& xs,
               const std::string& output_path) {
  const LQModel m = build_model(cfg, mf);
  if (distortions.empty()) throw UsageError("compare needs --distortions");
  if (xs.empty()) throw UsageError("compare needs --x");
  std::vector<double> grid;
  for (const auto& tok : split(xs, ','))
    grid.push_back(parse_double(tok, "x"));
  std::ostringstream body;
  body.precision(17);
  body << "distortion,x,mu_star,var_star,V\n";
  for (const auto& tag : split(distortions, ',')) {
    DistortionOpts o;
    o.kind = tag;
    const Distortion d = build_distortion(o);
    const auto sol = solve(m, d);
    for (double x : grid) {
      const auto pm = policy_moments(m, sol, x);
      body << tag << ',' << x << ',' << pm.mu_star << ',' << pm.var_star << ','
           << value(sol, x) << "\n";
    }
  }
  if (output_path.empty()) {
    std::cout << body.str();
  } else {
    auto os = open_output(output_path);
    os << body.str();
  }
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{
      "Choquet-regularized exploratory control toolkit: distortion "
      "validation, regularizer evaluation, static maximization, LQ "
      "solving, Monte Carlo verification, and policy comparison."};
  app.require_subcommand(1);

  DistortionOpts dopt;
  ModelFlags mf;
  SimFlags sf;
  std::string config_path, output_path, dist_spec, dist_file;
  std::string route = "quantile", distortions, xs;
  int grid = 2001;
  double mean = std::nan(""), sd = std::nan(""), x = std::nan("");

  auto add_distortion_flags = [&](CLI::App* sub) {
    sub->add_option("--distortion", dopt.kind, "distortion tag");
    sub->add_option("--eps", dopt.eps, "exploration fraction");
    sub->add_option("--alpha", dopt.alpha, "tail level");
    sub->add_option("--n", dopt.n, "discrete-uniform half-width");
    sub->add_option("--scale", dopt.scale, "multiplicative distortion scale");
    sub->add_option("--file", dopt.file, "piecewise vertex CSV (p,h)");
    sub->add_option("--source", dopt.source,
                    "from-quantile source distribution spec");
    sub->add_option("--source-mean", dopt.source_mean,
                    "centering mean for from-quantile");
  };
  auto add_model_flags = [&](CLI::App* sub) {
    sub->add_option("--config,--model", config_path,
                    "config file ([model]/[sim]/[distortion]/[distribution])");
    sub->add_option("--A", mf.A, "state drift");
    sub->add_option("--B", mf.B, "control drift");
    sub->add_option("--C", mf.C, "state diffusion");
    sub->add_option("--D", mf.D, "control diffusion");
    sub->add_option("--M", mf.M, "state cost");
    sub->add_option("--R", mf.R, "cross cost");
    sub->add_option("--N", mf.N, "control cost");
    sub->add_option("--P", mf.P, "state reward slope");
    sub->add_option("--L", mf.L, "control reward slope");
    sub->add_option("--rho", mf.rho, "discount rate");
    sub->add_option("--lambda", mf.lambda, "exploration temperature");
  };

  auto* v = app.add_subcommand("validate", "check distortion axioms");
  add_distortion_flags(v);
  v->add_option("--config", config_path, "config file");
  v->add_option("--grid", grid, "validation grid size");

  auto* e = app.add_subcommand("eval", "evaluate the regularizer");
  add_distortion_flags(e);
  e->add_option("--config", config_path, "config file");
  e->add_option("--dist,--distribution", dist_spec, "distribution spec");
  e->add_option("--dist-file,--distribution-file", dist_file, "quantile table CSV");
  e->add_option("--route", route, "quantile or survival");

  auto* mx = app.add_subcommand("maximize", "mean-variance static optimum");
  add_distortion_flags(mx);
  mx->add_option("--config", config_path, "config file");
  mx->add_option("--mean", mean, "target mean")->required();
  mx->add_option("--std", sd, "target standard deviation")->required();
  mx->add_option("--output-path", output_path, "quantile table CSV out");

  auto* sl = app.add_subcommand("solve-lq", "closed-form LQ solution");
  add_distortion_flags(sl);
  add_model_flags(sl);
  sl->add_option("--x", x, "state for the emitted policy table");
  sl->add_option("--output-path", output_path, "policy quantile CSV out");

  auto* si = app.add_subcommand("simulate", "Monte Carlo value check");
  add_distortion_flags(si);
  add_model_flags(si);
  si->add_option("--x0", sf.x0, "initial state");
  si->add_option("--dt", sf.dt, "Euler step");
  si->add_option("--horizon", sf.horizon, "truncation floor");
  si->add_option("--paths", sf.paths, "number of paths");
  si->add_option("--seed", sf.seed, "RNG seed");
  si->add_option("--checkpoints", sf.checkpoints, "transversality checkpoints");
  si->add_flag("--antithetic", sf.antithetic_set, "antithetic pairing");
  si->add_option("--mode", sf.mode, "closed-form or quadrature");
  si->add_option("--output-path", output_path, "transversality CSV out");

  auto* cp = app.add_subcommand("compare", "per-distortion policy table");
  add_model_flags(cp);
  cp->add_option("--distortions", distortions, "comma-separated tags");
  cp->add_option("--x", xs, "comma-separated states");
  cp->add_option("--output-path", output_path, "comparison CSV out");

  try {
    try {
      app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp&) {
      std::cout << app.help();
      return 0;
    } catch (const CLI::ParseError& err) {
      std::cerr << err.what() << "\n\n" << app.help();
      return 1;
    }
    Config cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    merge_config_distortion(cfg, dopt);
    if (*v) return do_validate(dopt, grid);
    if (*e) {
      std::optional<Distribution> pi;
      if (!dist_spec.empty()) {
        pi = parse_distribution(dist_spec);
      } else if (!dist_file.empty()) {
        std::ifstream is(dist_file);
        if (!is) throw UsageError("cannot open quantile table: " + dist_file);
        pi = csv::read_quantile_table(is);
      } else if (const auto* spec = find(cfg, "distribution", "spec")) {
        pi = parse_distribution(*spec);
      } else if (const auto* file = find(cfg, "distribution", "file")) {
        std::ifstream is(*file);
        if (!is) throw UsageError("cannot open quantile table: " + *file);
        pi = csv::read_quantile_table(is);
      } else {
        throw UsageError("eval needs --dist, --dist-file, or a config "
                         "[distribution] section");
      }
      return do_eval(dopt, *pi, route);
    }
    if (*mx) return do_maximize(dopt, mean, sd, output_path);
    if (*sl) return do_solve_lq(cfg, mf, dopt, x, output_path);
    if (*si) return do_simulate(cfg, mf, sf, dopt, output_path);
    if (*cp) return do_compare(cfg, mf, distortions, xs, output_path);
    throw UsageError("no subcommand");
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << "\n\n" << app.help();
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "validation failure: " << err.what() << "\n";
    return 2;
  }
}

}  // namespace choquet::cli
