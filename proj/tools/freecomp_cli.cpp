// Command-line front end: every computation in the library, with
// deterministic CSV or JSON output suitable for tables and figure data.

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "freecomp/channel_mc.hpp"
#include "freecomp/entropy.hpp"
#include "freecomp/kkt_geometry.hpp"
#include "freecomp/tnorm.hpp"
#include "freecomp/violation.hpp"

namespace {

using nlohmann::json;

constexpr double kLog2 = 0.69314718055994530941723212145818;

struct RunConfig {
  std::string out_path;
  std::string format = "csv";  // csv | json
  bool bits = false;           // entropies and D in bits instead of nats
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) throw CLI::ValidationError("empty list: " + s);
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_double_list(s)) out.push_back(static_cast<int>(v));
  return out;
}

double parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity")
    return std::numeric_limits<double>::infinity();
  return std::stod(s);
}

std::pair<int, int> parse_k_range(const std::string& s) {
  const auto pos = s.find("..");
  if (pos == std::string::npos) {
    const int k = std::stoi(s);
    return {k, k};
  }
  return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
}

// Output sink: stdout by default, --out FILE otherwise.
class Sink {
 public:
  explicit Sink(const RunConfig& cfg) {
    if (!cfg.out_path.empty()) {
      file_.open(cfg.out_path);
      if (!file_) throw std::runtime_error("cannot open " + cfg.out_path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit(const RunConfig& cfg, const json& obj,
          const std::vector<std::string>& csv_lines) {
  Sink sink(cfg);
  if (cfg.format == "json") {
    sink.stream() << obj.dump(2) << "\n";
  } else {
    for (const auto& line : csv_lines) sink.stream() << line << "\n";
  }
}

double in_units(const RunConfig& cfg, double nats) {
  return cfg.bits ? nats / kLog2 : nats;
}

int cmd_tnorm(const RunConfig& cfg, const std::string& x_str, double t,
              bool want_gradient, bool want_hessian) {
  const auto x = parse_double_list(x_str);
  const fc::TNormContext ctx(static_cast<int>(x.size()), t);
  const auto res = fc::tnorm(x, ctx);

  json obj;
  std::vector<std::string> csv;
  obj["value"] = res.value;
  csv.push_back("value," + fmt17(res.value));
  obj["branch"] = res.branch == fc::Branch::root_branch ? "root" : "sup";
  csv.push_back(std::string("branch,") +
                (res.branch == fc::Branch::root_branch ? "root" : "sup"));
  if (res.w) {
    obj["w"] = *res.w;
    csv.push_back("w," + fmt17(*res.w));
  }
  if (want_gradient) {
    const auto g = fc::tnorm_gradient(x, ctx);
    obj["gradient"] = g;
    std::string line = "gradient";
    for (double v : g) line += "," + fmt17(v);
    csv.push_back(line);
  }
  if (want_hessian) {
    const auto h = fc::tnorm_hessian(x, ctx);
    json rows = json::array();
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      std::string line = "hessian";
      json row = json::array();
      for (Eigen::Index j = 0; j < h.cols(); ++j) {
        line += "," + fmt17(h(i, j));
        row.push_back(h(i, j));
      }
      rows.push_back(row);
      csv.push_back(line);
    }
    obj["hessian"] = rows;
  }
  emit(cfg, obj, csv);
  return 0;
}

int cmd_phi(const RunConfig& cfg, double u, double t) {
  const double v = fc::indicator_norm(u, t);
  emit(cfg, json{{"value", v}}, {"value," + fmt17(v)});
  return 0;
}

int cmd_xopt(const RunConfig& cfg, int k, double t, const std::string& p_str) {
  const double p = parse_p(p_str);
  const fc::TwoLevel x = fc::x_opt(k, t);
  const double h = in_units(cfg, x.renyi(p));
  json obj{{"k", k},          {"t", t},       {"p", p_str},
           {"a_star", x.top}, {"rest", x.rest}, {"entropy", h}};
  std::vector<std::string> csv;
  std::string line = "xopt";
  for (double v : x.expand()) line += "," + fmt17(v);
  csv.push_back(line);
  csv.push_back("a_star," + fmt17(x.top));
  csv.push_back("entropy," + fmt17(h));
  obj["vector"] = x.expand();
  emit(cfg, obj, csv);
  return 0;
}

int cmd_membership(const RunConfig& cfg, const std::string& lambda_str,
                   double t, int restarts) {
  const auto raw = parse_double_list(lambda_str);
  const fc::ProbVector lambda(raw, /*renormalize=*/false);
  const fc::TNormContext ctx(static_cast<int>(raw.size()), t);

  fc::AscentConfig acfg;
  acfg.restarts = restarts;
  const auto verdict = fc::membership(lambda.entries(), ctx, acfg);
  const auto sorted = lambda.sorted_desc();
  const auto support = fc::support_necessary_test(sorted.entries(), ctx);

  const char* status = verdict.status == fc::Membership::inside ? "inside"
                       : verdict.status == fc::Membership::outside
                           ? "outside"
                           : "boundary";
  json obj{{"status", status},
           {"slack", verdict.slack},
           {"certificate", verdict.certificate},
           {"support_pass", support.pass},
           {"support_margin", support.margin},
           {"support_worst_m", support.worst_m}};
  std::vector<std::string> csv;
  csv.push_back(std::string("status,") + status);
  csv.push_back("slack," + fmt17(verdict.slack));
  csv.push_back(std::string("support_pass,") + (support.pass ? "1" : "0"));
  csv.push_back("support_margin," + fmt17(support.margin));
  csv.push_back("support_worst_m," + std::to_string(support.worst_m));
  std::string line = "certificate";
  for (double v : verdict.certificate) line += "," + fmt17(v);
  csv.push_back(line);
  emit(cfg, obj, csv);
  return 0;
}

std::string bound_name(fc::Bound b) {
  return b == fc::Bound::exact ? "exact" : "hw";
}

int cmd_sweep(const RunConfig& cfg, const std::string& k_range, int grid_n,
              const std::string& p_str, const std::string& bound_str) {
  const auto [k_lo, k_hi] = parse_k_range(k_range);
  const double p = parse_p(p_str);
  const fc::Bound bound =
      bound_str == "hw" ? fc::Bound::hayden_winter : fc::Bound::exact;
  const auto rows = fc::sweep(k_lo, k_hi, grid_n, p, bound);

  std::vector<std::string> csv;
  csv.push_back("k,t,p,bound,D_nats,a_star,gamma_top");
  json arr = json::array();
  for (const auto& r : rows) {
    const double d = in_units(cfg, r.d_nats);
    csv.push_back(std::to_string(r.k) + "," + fmt17(r.t) + "," + fmt17(r.p) +
                  "," + bound_name(r.bound) + "," + fmt17(d) + "," +
                  fmt17(r.a_star) + "," + fmt17(r.gamma_top));
    arr.push_back(json{{"k", r.k},
                       {"t", r.t},
                       {"p", r.p},
                       {"bound", bound_name(r.bound)},
                       {"D_nats", d},
                       {"a_star", r.a_star},
                       {"gamma_top", r.gamma_top}});
  }
  emit(cfg, arr, csv);
  return 0;
}

int cmd_threshold(const RunConfig& cfg, const std::string& p_str,
                  const std::string& bound_str, const std::string& t_mode_str,
                  int k_max) {
  const double p = parse_p(p_str);
  const fc::Bound bound =
      bound_str == "hw" ? fc::Bound::hayden_winter : fc::Bound::exact;

  fc::TMode mode = fc::TMode::free;
  double fixed_t = 0.5;
  if (t_mode_str.rfind("fixed=", 0) == 0) {
    mode = fc::TMode::fixed;
    fixed_t = std::stod(t_mode_str.substr(6));
  } else if (t_mode_str == "inverse-k") {
    mode = fc::TMode::inverse_k;
  } else if (t_mode_str != "free") {
    throw CLI::ValidationError("bad --t-mode: " + t_mode_str);
  }

  const auto k = fc::threshold_k(p, bound, mode, fixed_t, k_max);
  if (!k) {
    std::cerr << "no violation found for k <= " << k_max << "\n";
    return 2;
  }
  json obj{{"threshold_k", *k}};
  std::vector<std::string> csv{"threshold_k," + std::to_string(*k)};
  if (mode == fc::TMode::free) {
    const auto m = fc::min_over_t(*k, p, bound);
    obj["t_star"] = m.t_star;
    obj["D_star"] = in_units(cfg, m.d_star);
    csv.push_back("t_star," + fmt17(m.t_star));
    csv.push_back("D_star," + fmt17(in_units(cfg, m.d_star)));
  }
  emit(cfg, obj, csv);
  return 0;
}

int cmd_asymptote(const RunConfig& cfg, const std::string& t_str,
                  const std::string& k_list_str) {
  const auto ks = parse_int_list(k_list_str);
  std::vector<std::string> csv;
  json arr = json::array();
  if (t_str == "inverse-k") {
    const auto rows = fc::asymptotic_check_inverse_k(ks);
    csv.push_back("k,t,D_nats,neg_logk_over_k,ratio");
    for (const auto& r : rows) {
      csv.push_back(std::to_string(r.k) + "," + fmt17(r.t) + "," +
                    fmt17(in_units(cfg, r.d)) + "," +
                    fmt17(in_units(cfg, r.limit)) + "," + fmt17(r.gap));
      arr.push_back(json{{"k", r.k},
                         {"t", r.t},
                         {"D_nats", in_units(cfg, r.d)},
                         {"neg_logk_over_k", in_units(cfg, r.limit)},
                         {"ratio", r.gap}});
    }
  } else {
    const auto rows = fc::asymptotic_check(std::stod(t_str), ks);
    csv.push_back("k,t,D_nats,limit,gap");
    for (const auto& r : rows) {
      csv.push_back(std::to_string(r.k) + "," + fmt17(r.t) + "," +
                    fmt17(in_units(cfg, r.d)) + "," +
                    fmt17(in_units(cfg, r.limit)) + "," +
                    fmt17(in_units(cfg, r.gap)));
      arr.push_back(json{{"k", r.k},
                         {"t", r.t},
                         {"D_nats", in_units(cfg, r.d)},
                         {"limit", in_units(cfg, r.limit)},
                         {"gap", in_units(cfg, r.gap)}});
    }
  }
  emit(cfg, arr, csv);
  return 0;
}

int cmd_simulate(const RunConfig& cfg, const std::string& what, int k,
                 double t, int n, int trials, int samples, double slack,
                 const std::string& p_str, std::uint64_t seed) {
  const int d = static_cast<int>(std::lround(t * k * n));
  if (d < 1 || d > k * n)
    throw std::domain_error("simulate: t*k*n rounds outside [1, k*n]");
  const double p = parse_p(p_str);

  std::vector<std::string> csv;
  json arr = json::array();
  if (what == "bell") {
    csv.push_back("kind,k,t,n,d,seed,trial,i,eigenvalue");
    for (int trial = 0; trial < trials; ++trial) {
      const auto sample = fc::sample_isometry(k, n, d, seed, trial);
      const auto spec = fc::bell_output_spectrum(sample);
      for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        csv.push_back("bell," + std::to_string(k) + "," + fmt17(t) + "," +
                      std::to_string(n) + "," + std::to_string(d) + "," +
                      std::to_string(seed) + "," + std::to_string(trial) +
                      "," + std::to_string(i + 1) + "," +
                      fmt17(spec.eigenvalues[i]));
        arr.push_back(json{{"kind", "bell"},
                           {"k", k},
                           {"t", t},
                           {"n", n},
                           {"d", d},
                           {"seed", seed},
                           {"trial", trial},
                           {"i", i + 1},
                           {"eigenvalue", spec.eigenvalues[i]}});
      }
    }
  } else if (what == "moe") {
    csv.push_back("kind,k,t,n,d,seed,trial,p,samples,min_entropy");
    for (int trial = 0; trial < trials; ++trial) {
      const auto sample = fc::sample_isometry(k, n, d, seed, trial);
      const double h = in_units(cfg, fc::empirical_moe(sample, p, samples));
      csv.push_back("moe," + std::to_string(k) + "," + fmt17(t) + "," +
                    std::to_string(n) + "," + std::to_string(d) + "," +
                    std::to_string(seed) + "," + std::to_string(trial) + "," +
                    fmt17(p) + "," + std::to_string(samples) + "," + fmt17(h));
      arr.push_back(json{{"kind", "moe"},
                         {"k", k},
                         {"t", t},
                         {"n", n},
                         {"d", d},
                         {"seed", seed},
                         {"trial", trial},
                         {"p", p},
                         {"samples", samples},
                         {"min_entropy", h}});
    }
  } else if (what == "outputset") {
    csv.push_back("kind,k,t,n,d,seed,trial,samples,slack,fraction");
    for (int trial = 0; trial < trials; ++trial) {
      const auto sample = fc::sample_isometry(k, n, d, seed, trial);
      const double frac = fc::empirical_output_set_check(sample, samples, slack);
      csv.push_back("outputset," + std::to_string(k) + "," + fmt17(t) + "," +
                    std::to_string(n) + "," + std::to_string(d) + "," +
                    std::to_string(seed) + "," + std::to_string(trial) + "," +
                    std::to_string(samples) + "," + fmt17(slack) + "," +
                    fmt17(frac));
      arr.push_back(json{{"kind", "outputset"},
                         {"k", k},
                         {"t", t},
                         {"n", n},
                         {"d", d},
                         {"seed", seed},
                         {"trial", trial},
                         {"samples", samples},
                         {"slack", slack},
                         {"fraction", frac}});
    }
  } else {
    throw CLI::ValidationError("simulate: unknown target " + what);
  }
  emit(cfg, arr, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("THREADS")) {
    const int v = std::atoi(threads);
    if (v > 0) Eigen::setNbThreads(v);
  }

  CLI::App app{"free-compression norm, dual-body geometry and random "
               "channel entropy toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--out", cfg.out_path, "write output to a file")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--bits", cfg.bits, "report entropies in bits instead of nats");

  // tnorm
  auto* sub_tnorm = app.add_subcommand("tnorm", "norm of a vector");
  std::string x_str;
  double t = 0.5, u = 0.5;
  bool want_gradient = false, want_hessian = false;
  sub_tnorm->add_option("--x", x_str, "comma-separated entries")->required();
  sub_tnorm->add_option("--t", t, "compression ratio in (0,1)")->required();
  sub_tnorm->add_flag("--gradient", want_gradient, "also print the gradient");
  sub_tnorm->add_flag("--hessian", want_hessian, "also print the Hessian");

  // phi
  auto* sub_phi = app.add_subcommand("phi", "closed-form indicator norm");
  sub_phi->add_option("--u", u, "fraction of ones, in (0,1)")->required();
  sub_phi->add_option("--t", t, "compression ratio in (0,1)")->required();

  // xopt
  auto* sub_xopt = app.add_subcommand("xopt", "entropy-optimal spectrum");
  int k = 2;
  std::string p_str = "1";
  sub_xopt->add_option("--k", k, "output dimension")->required();
  sub_xopt->add_option("--t", t, "compression ratio")->required();
  sub_xopt->add_option("--p", p_str, "Renyi order in [1, inf]");

  // membership
  auto* sub_member =
      app.add_subcommand("membership", "dual-body membership verdict");
  std::string lambda_str;
  int restarts = 32;
  sub_member->add_option("--lambda", lambda_str, "candidate probability vector")
      ->required();
  sub_member->add_option("--t", t, "compression ratio")->required();
  sub_member->add_option("--restarts", restarts, "ascent restarts");

  // violation sweep|threshold|asymptote
  auto* sub_violation =
      app.add_subcommand("violation", "entropy-difference studies");
  sub_violation->require_subcommand(1);
  auto* sub_sweep = sub_violation->add_subcommand("sweep", "grid sweep");
  std::string k_range = "2..10", bound_str = "exact";
  int grid_n = 2000, k_max = 500;
  sub_sweep->add_option("--k", k_range, "k or k1..k2")->required();
  sub_sweep->add_option("--t-grid", grid_n, "number of t grid points");
  sub_sweep->add_option("--p", p_str, "Renyi order");
  sub_sweep->add_option("--bound", bound_str, "exact or hw")
      ->check(CLI::IsMember({"exact", "hw"}));

  auto* sub_thresh =
      sub_violation->add_subcommand("threshold", "first violating k");
  std::string t_mode_str = "free";
  sub_thresh->add_option("--p", p_str, "Renyi order")->required();
  sub_thresh->add_option("--bound", bound_str, "exact or hw")
      ->check(CLI::IsMember({"exact", "hw"}));
  sub_thresh->add_option("--t-mode", t_mode_str, "free, fixed=T or inverse-k");
  sub_thresh->add_option("--k-max", k_max, "scan bound");

  auto* sub_asym =
      sub_violation->add_subcommand("asymptote", "large-k behaviour");
  std::string t_str = "0.5", k_list_str;
  sub_asym->add_option("--t", t_str, "fixed t in (0,1), or inverse-k")
      ->required();
  sub_asym->add_option("--k-list", k_list_str, "comma-separated k values")
      ->required();

  // simulate bell|moe|outputset
  auto* sub_sim = app.add_subcommand("simulate", "finite-size Monte Carlo");
  sub_sim->require_subcommand(1);
  int n = 100, trials = 1, samples = 1000;
  double slack = 0.05;
  std::uint64_t seed = 0;
  std::string sim_what;
  for (const char* name : {"bell", "moe", "outputset"}) {
    auto* s = sub_sim->add_subcommand(name);
    s->add_option("--k", k, "output dimension")->required();
    s->add_option("--t", t, "compression ratio")->required();
    s->add_option("--n", n, "environment dimension")->required();
    s->add_option("--trials", trials, "number of channel samples");
    s->add_option("--samples", samples, "random inputs per channel");
    s->add_option("--slack", slack, "margin for the output-set check");
    s->add_option("--p", p_str, "Renyi order");
    s->add_option("--seed", seed, "stream seed")->required();
    s->callback([&sim_what, name]() { sim_what = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(sub_tnorm))
      return cmd_tnorm(cfg, x_str, t, want_gradient, want_hessian);
    if (app.got_subcommand(sub_phi)) return cmd_phi(cfg, u, t);
    if (app.got_subcommand(sub_xopt)) return cmd_xopt(cfg, k, t, p_str);
    if (app.got_subcommand(sub_member))
      return cmd_membership(cfg, lambda_str, t, restarts);
    if (app.got_subcommand(sub_violation)) {
      if (sub_violation->got_subcommand(sub_sweep))
        return cmd_sweep(cfg, k_range, grid_n, p_str, bound_str);
      if (sub_violation->got_subcommand(sub_thresh))
        return cmd_threshold(cfg, p_str, bound_str, t_mode_str, k_max);
      if (sub_violation->got_subcommand(sub_asym))
        return cmd_asymptote(cfg, t_str, k_list_str);
    }
    if (app.got_subcommand(sub_sim))
      return cmd_simulate(cfg, sim_what, k, t, n, trials, samples, slack,
                          p_str, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no command\n";
  return 1;
}
