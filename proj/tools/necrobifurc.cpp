// Command-line front end. Every result is computed in memory first and only
// written once the whole run has succeeded, so a config error leaves no
// partial output behind.

#include <CLI11.hpp>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "csv.hpp"
#include "necrobifurc/necrobifurc.h"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kConfigError = 2, kIoError = 3 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(nbf_status s, const std::string& context) {
  if (s == NBF_OK) return;
  throw ConfigError(context + ": " + nbf_status_name(s) + ": " + nbf_last_error_message());
}

struct SteadyHandle {
  explicit SteadyHandle(const nbf_params& p) { check(nbf_steady_create(&p, &ptr), "steady state"); }
  ~SteadyHandle() { nbf_steady_destroy(ptr); }
  SteadyHandle(const SteadyHandle&) = delete;
  SteadyHandle& operator=(const SteadyHandle&) = delete;
  nbf_steady* ptr = nullptr;
};

struct ModeHandle {
  ModeHandle(const SteadyHandle& s, int l) { check(nbf_mode_create(s.ptr, l, &ptr), "mode l=" + std::to_string(l)); }
  ~ModeHandle() { nbf_mode_destroy(ptr); }
  ModeHandle(const ModeHandle&) = delete;
  ModeHandle& operator=(const ModeHandle&) = delete;
  nbf_mode* ptr = nullptr;
};

struct RunConfig {
  nbf_params params{};
  std::uint64_t seed = 20240917;
  int jobs = 0;
  std::string out_dir = ".";
  bool plot = false;

  int points = 201;
  bool limit = false;

  int modes_l_min = 0;
  int modes_l_max = 8;

  std::vector<double> chis{1.0};
  int bif_l_min = 0;
  int bif_l_max = 16;
  std::string preset;

  int limits_l_max = 16;

  std::vector<std::string> suites;
  std::vector<double> betas{0.1, 1.0, 10.0};
  int verify_l = 2;
  bool self_test_negative = false;
  std::string report_path;
  std::map<std::string, long long> verify_sizes;
};

// Command-line values; unset optionals leave the config file value in place.
struct Flags {
  std::string config_path;
  std::optional<int> jobs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  bool plot = false;
  std::optional<double> beta, sigma_ul, R0, R, chi, g_inv, prolif;
  std::optional<int> points;
  bool limit = false;
  std::optional<int> l_min, l_max;
  std::optional<std::string> chi_list;
  std::optional<std::string> preset;
  std::vector<std::string> suites;
  std::optional<std::string> beta_list;
  std::optional<int> verify_l;
  bool self_test_negative = false;
  std::optional<std::string> report_path;
};

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad number '" + item + "' in " + what);
    }
  }
  return out;
}

void reject_unknown(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
  if (!node.IsMap()) throw ConfigError(where + " must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read_if(const YAML::Node& node, const char* key, T& into) {
  if (node[key]) into = node[key].as<T>();
}

void apply_params(const YAML::Node& n, nbf_params& p) {
  reject_unknown(n, "params", {"beta", "sigma_ul", "R0", "R", "chi", "g_inv", "prolif"});
  read_if(n, "beta", p.beta);
  read_if(n, "sigma_ul", p.sigma_ul);
  read_if(n, "R0", p.R0);
  read_if(n, "R", p.R);
  read_if(n, "chi", p.chi);
  read_if(n, "g_inv", p.g_inv);
  read_if(n, "prolif", p.prolif);
}

// Dimensional input replaces the bundle; optionally R is solved so that the
// geometric apoptosis rate matches lambda_A / lambda_M.
void apply_dimensional(const YAML::Node& n, nbf_params& p) {
  reject_unknown(n, "dimensional",
                 {"D", "lambda", "lambda_M", "lambda_A", "mu", "gamma", "chi_sigma_dim", "chi_bar", "sigma_inf",
                  "sigma_N", "beta_dim", "R0_dim", "R_dim", "solve_radius"});
  nbf_dimensional d;
  nbf_dimensional_default(&d);
  read_if(n, "D", d.D);
  read_if(n, "lambda", d.lambda);
  read_if(n, "lambda_M", d.lambda_M);
  read_if(n, "lambda_A", d.lambda_A);
  read_if(n, "mu", d.mu);
  read_if(n, "gamma", d.gamma);
  read_if(n, "chi_sigma_dim", d.chi_sigma_dim);
  read_if(n, "chi_bar", d.chi_bar);
  read_if(n, "sigma_inf", d.sigma_inf);
  read_if(n, "sigma_N", d.sigma_N);
  read_if(n, "beta_dim", d.beta_dim);
  read_if(n, "R0_dim", d.R0_dim);
  read_if(n, "R_dim", d.R_dim);
  nbf_nondim_diagnostics diag;
  check(nbf_nondimensionalize(&d, &p, &diag), "dimensional parameters");
  if (diag.quasi_steady_warning) {
    std::cerr << "warning: eps = lambda_chi / lambda = " << diag.eps
              << " >= 0.1; the quasi-steady nutrient assumption is doubtful\n";
  }
  if (n["solve_radius"]) {
    const auto bracket = n["solve_radius"].as<std::vector<double>>();
    if (bracket.size() != 2) throw ConfigError("dimensional.solve_radius must be [lo, hi]");
    double R = 0.0;
    check(nbf_solve_radius(&p, p.apopt, bracket[0], bracket[1], &R), "solve_radius");
    p.R = R;
  }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
  YAML::Node root;
  {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    try {
      root = YAML::Load(in);
    } catch (const YAML::Exception& e) {
      throw ConfigError("malformed config file '" + path + "': " + e.what());
    }
  }
  if (root.IsNull()) return;
  try {
    reject_unknown(root, "config",
                   {"params", "dimensional", "seed", "jobs", "out", "plot", "steady", "modes", "bifurcate", "limits",
                    "verify"});
    if (root["dimensional"]) {
      if (root["params"]) throw ConfigError("config may hold params or dimensional, not both");
      apply_dimensional(root["dimensional"], cfg.params);
    }
    if (root["params"]) apply_params(root["params"], cfg.params);
    read_if(root, "seed", cfg.seed);
    read_if(root, "jobs", cfg.jobs);
    read_if(root, "out", cfg.out_dir);
    read_if(root, "plot", cfg.plot);
    if (const auto n = root["steady"]) {
      reject_unknown(n, "steady", {"points", "limit"});
      read_if(n, "points", cfg.points);
      read_if(n, "limit", cfg.limit);
    }
    if (const auto n = root["modes"]) {
      reject_unknown(n, "modes", {"l_min", "l_max", "points"});
      read_if(n, "l_min", cfg.modes_l_min);
      read_if(n, "l_max", cfg.modes_l_max);
      read_if(n, "points", cfg.points);
    }
    if (const auto n = root["bifurcate"]) {
      reject_unknown(n, "bifurcate", {"chi", "l_min", "l_max", "preset"});
      read_if(n, "chi", cfg.chis);
      read_if(n, "l_min", cfg.bif_l_min);
      read_if(n, "l_max", cfg.bif_l_max);
      read_if(n, "preset", cfg.preset);
    }
    if (const auto n = root["limits"]) {
      reject_unknown(n, "limits", {"l_max", "points"});
      read_if(n, "l_max", cfg.limits_l_max);
      read_if(n, "points", cfg.points);
    }
    if (const auto n = root["verify"]) {
      reject_unknown(n, "verify",
                     {"suites", "betas", "l", "self_test_negative", "report", "oracle_n", "oracle_sets",
                      "random_draws", "dual_path_draws", "sequence_sets", "n_r", "n_theta"});
      read_if(n, "suites", cfg.suites);
      read_if(n, "betas", cfg.betas);
      read_if(n, "l", cfg.verify_l);
      read_if(n, "self_test_negative", cfg.self_test_negative);
      read_if(n, "report", cfg.report_path);
      for (const char* k : {"oracle_n", "oracle_sets", "random_draws", "dual_path_draws", "sequence_sets", "n_r",
                            "n_theta"}) {
        if (n[k]) cfg.verify_sizes[k] = n[k].as<long long>();
      }
    }
  } catch (const YAML::Exception& e) {
    throw ConfigError("bad value in config file '" + path + "': " + e.what());
  }
}

void apply_flags(const Flags& f, RunConfig& cfg) {
  if (f.jobs) cfg.jobs = *f.jobs;
  if (f.seed) cfg.seed = *f.seed;
  if (f.out_dir) cfg.out_dir = *f.out_dir;
  if (f.plot) cfg.plot = true;
  if (f.beta) cfg.params.beta = *f.beta;
  if (f.sigma_ul) cfg.params.sigma_ul = *f.sigma_ul;
  if (f.R0) cfg.params.R0 = *f.R0;
  if (f.R) cfg.params.R = *f.R;
  if (f.chi) cfg.params.chi = *f.chi;
  if (f.g_inv) cfg.params.g_inv = *f.g_inv;
  if (f.prolif) cfg.params.prolif = *f.prolif;
  if (f.points) cfg.points = *f.points;
  if (f.limit) cfg.limit = true;
  if (f.l_min) cfg.modes_l_min = cfg.bif_l_min = *f.l_min;
  if (f.l_max) cfg.modes_l_max = cfg.bif_l_max = cfg.limits_l_max = *f.l_max;
  if (f.chi_list) cfg.chis = parse_list(*f.chi_list, "--chi-list");
  if (f.preset) cfg.preset = *f.preset;
  if (!f.suites.empty()) cfg.suites = f.suites;
  if (f.beta_list) cfg.betas = parse_list(*f.beta_list, "--beta");
  if (f.verify_l) cfg.verify_l = *f.verify_l;
  if (f.self_test_negative) cfg.self_test_negative = true;
  if (f.report_path) cfg.report_path = *f.report_path;
}

void check_l_range(int lo, int hi, const std::string& what) {
  if (lo < 0 || hi > 64 || lo > hi) {
    throw ConfigError(what + " l range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "] must satisfy 0 <= l_min <= l_max <= 64");
  }
}

void check_points(int points) {
  if (points < 2 || points > 1000000) throw ConfigError("points must lie in [2, 1000000]");
}

// Pending output files, written together at the end.
class Output {
 public:
  explicit Output(std::string dir) : dir_(std::move(dir)) {}

  std::ostringstream& file(const std::string& name) {
    files_.emplace_back(name, std::make_unique<std::ostringstream>());
    return *files_.back().second;
  }

  void commit() const {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory '" + dir_ + "': " + ec.message());
    for (const auto& [name, text] : files_) {
      const fs::path path = fs::path(dir_) / name;
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      out << text->str();
      out.close();
      if (!out) throw IoError("cannot write '" + path.string() + "'");
      std::cout << path.string() << "\n";
    }
  }

 private:
  std::string dir_;
  std::vector<std::pair<std::string, std::unique_ptr<std::ostringstream>>> files_;
};

double grid_point(double a, double b, int i, int points) {
  if (i == points - 1) return b;
  return a + (b - a) * i / (points - 1);
}

int cmd_steady(const RunConfig& cfg, Output& out) {
  check_points(cfg.points);
  const nbf_params& p = cfg.params;
  const SteadyHandle s(p);
  nbf_steady_summary sum;
  check(nbf_steady_summary_get(s.ptr, &sum), "steady summary");

  std::vector<std::string> header{"r", "sigma", "dsigma", "d2sigma", "p", "dp", "E", "F", "dE", "dF"};
  if (cfg.limit) {
    for (const char* c : {"E0_limit", "E_inf_limit", "F_inf_limit", "sigma_limit", "dsigma_limit", "p_limit",
                          "dp_limit"}) {
      header.emplace_back(c);
    }
  }
  auto& prof = out.file("steady_profile.csv");
  csv::Writer w(prof, header);
  for (int i = 0; i < cfg.points; ++i) {
    const double r = grid_point(p.R0, p.R, i, cfg.points);
    nbf_steady_point v;
    check(nbf_steady_eval(s.ptr, r, &v), "steady profile");
    w.field(r).field(v.sigma).field(v.dsigma).field(v.d2sigma).field(v.p).field(v.dp);
    w.field(v.E).field(v.F).field(v.dE).field(v.dF);
    if (cfg.limit) {
      nbf_steady_limit_point l;
      check(nbf_steady_limits(&p, r, &l), "steady limits");
      w.field(l.E0).field(l.E_inf).field(l.F_inf).field(l.sigma).field(l.dsigma).field(l.p).field(l.dp);
    }
    w.end_row();
  }

  auto& summary = out.file("steady_summary.csv");
  csv::Writer ws(summary, {"beta", "sigma_ul", "R0", "R", "chi", "g_inv", "prolif", "A1", "A2", "C1", "C2", "apopt"});
  ws.field(p.beta).field(p.sigma_ul).field(p.R0).field(p.R).field(p.chi).field(p.g_inv).field(p.prolif);
  ws.field(sum.A1).field(sum.A2).field(sum.C1).field(sum.C2).field(sum.apopt);
  ws.end_row();

  if (cfg.plot) {
    auto& gp = out.file("steady.gp");
    gp << "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'r'\n"
       << "set terminal pngcairo size 900,600\nset output 'steady.png'\nset multiplot layout 1,2\n"
       << "plot 'steady_profile.csv' using 1:2 with lines, '' using 1:7 with lines, '' using 1:8 with lines\n"
       << "plot 'steady_profile.csv' using 1:5 with lines\n";
    if (cfg.limit) gp << "replot 'steady_profile.csv' using 1:17 with lines\n";
    gp << "unset multiplot\n";
  }
  return kOk;
}

int cmd_modes(const RunConfig& cfg, Output& out) {
  check_points(cfg.points);
  check_l_range(cfg.modes_l_min, cfg.modes_l_max, "modes");
  const nbf_params& p = cfg.params;
  const SteadyHandle s(p);
  auto& prof = out.file("modes_profile.csv");
  auto& coef = out.file("modes_coefficients.csv");
  csv::Writer w(prof, {"l", "r", "Q", "dQ", "Q_coeff", "dQ_coeff", "G_beta", "dG_beta", "G_0", "G_inf"});
  csv::Writer wc(coef, {"l", "B1", "B2", "forcing", "Q_at_R", "dQ_at_R", "Q_plus_dsigma_at_R"});
  nbf_steady_point at_R;
  check(nbf_steady_eval(s.ptr, p.R, &at_R), "steady at R");
  for (int l = cfg.modes_l_min; l <= cfg.modes_l_max; ++l) {
    const ModeHandle m(s, l);
    for (int i = 0; i < cfg.points; ++i) {
      const double r = grid_point(p.R0, p.R, i, cfg.points);
      nbf_mode_point v;
      check(nbf_mode_eval(m.ptr, r, &v), "mode profile");
      w.field(l).field(r).field(v.Q).field(v.dQ).field(v.Q_coeff).field(v.dQ_coeff);
      w.field(v.G).field(v.dG).field(v.G0).field(v.Ginf);
      w.end_row();
    }
    nbf_mode_coefficients c;
    nbf_mode_point vR;
    check(nbf_mode_coefficients_get(m.ptr, &c), "mode coefficients");
    check(nbf_mode_eval(m.ptr, p.R, &vR), "mode at R");
    wc.field(l).field(c.B1).field(c.B2).field(c.forcing).field(vR.Q).field(vR.dQ).field(vR.Q + at_R.dsigma);
    wc.end_row();
  }
  if (cfg.plot) {
    auto& gp = out.file("modes.gp");
    gp << "set datafile separator ','\nset xlabel 'r'\nset ylabel 'Q_l'\n"
       << "set terminal pngcairo size 900,600\nset output 'modes.png'\n"
       << "plot for [l=" << cfg.modes_l_min << ":" << cfg.modes_l_max
       << "] 'modes_profile.csv' using 2:($1==l ? $3 : 1/0) with lines title sprintf('l=%d', l)\n";
  }
  return kOk;
}

int cmd_bifurcate(const RunConfig& in, Output& out) {
  RunConfig cfg = in;
  if (!cfg.preset.empty()) {
    if (cfg.preset != "fig4") throw ConfigError("unknown preset '" + cfg.preset + "' (known: fig4)");
    cfg.params.beta = NBF_REORDER_SCAN_BETA;
    cfg.params.R0 = NBF_REORDER_SCAN_R0;
    cfg.params.R = NBF_REORDER_SCAN_R;
    cfg.params.g_inv = NBF_REORDER_SCAN_G_INV;
    cfg.chis = {1.0, 10.0, 50.0, 100.0};
    cfg.bif_l_min = 2;
    cfg.bif_l_max = 16;
  }
  if (cfg.chis.empty()) throw ConfigError("chi list is empty");
  check_l_range(cfg.bif_l_min, cfg.bif_l_max, "bifurcate");
  check(nbf_params_validate(&cfg.params), "params");

  std::vector<double> chis = cfg.chis;
  std::sort(chis.begin(), chis.end());
  chis.erase(std::unique(chis.begin(), chis.end()), chis.end());
  const int nl = cfg.bif_l_max - cfg.bif_l_min + 1;
  std::vector<nbf_bifurcation> rows(chis.size() * nl);
  std::vector<int> monotone(chis.size()), first(chis.size());
  check(nbf_bifurcation_scan(&cfg.params, chis.data(), chis.size(), cfg.bif_l_min, cfg.bif_l_max, cfg.jobs,
                             rows.data(), monotone.data(), first.data()),
        "bifurcation scan");

  auto& table = out.file("bifurcation.csv");
  csv::Writer w(table, {"chi", "l", "P_l", "L1", "L2", "P_l_regrouped", "degenerate", "translation_mode",
                        "necrosis_I", "necrosis_II", "surface_tension", "chemotaxis", "nutrient_at_boundary",
                        "apoptosis_term", "lambda_term", "lambda_q_outer", "lambda_necrosis_I",
                        "lambda_necrosis_II"});
  for (const auto& r : rows) {
    w.field(r.chi).field(r.l).field(r.P_l).field(r.L1).field(r.L2).field(r.P_l_regrouped);
    w.field(r.degenerate != 0).field(r.translation_mode != 0);
    w.field(r.necrosis_I).field(r.necrosis_II).field(r.surface_tension).field(r.chemotaxis);
    w.field(r.nutrient_at_boundary).field(r.apoptosis_term).field(r.lambda_term).field(r.lambda_q_outer);
    w.field(r.lambda_necrosis_I).field(r.lambda_necrosis_II);
    w.end_row();
    if (r.degenerate) std::cerr << "warning: degenerate denominator at chi=" << r.chi << " l=" << r.l << "\n";
  }

  auto& summary = out.file("bifurcation_summary.csv");
  csv::Writer ws(summary, {"chi", "l_min", "l_max", "monotone", "first_descent", "beta", "sigma_ul", "R0", "R",
                           "g_inv", "preset"});
  for (std::size_t i = 0; i < chis.size(); ++i) {
    ws.field(chis[i]).field(cfg.bif_l_min).field(cfg.bif_l_max).field(monotone[i] != 0).field(first[i]);
    ws.field(cfg.params.beta).field(cfg.params.sigma_ul).field(cfg.params.R0).field(cfg.params.R);
    ws.field(cfg.params.g_inv).field(cfg.preset.empty() ? std::string("none") : cfg.preset);
    ws.end_row();
  }

  auto& lim = out.file("bifurcation_limit.csv");
  csv::Writer wl(lim, {"l", "P_l_limit"});
  for (int l = std::max(cfg.bif_l_min, 2); l <= cfg.bif_l_max; ++l) {
    double v = 0.0;
    check(nbf_limit_bifurcation_point(l, cfg.params.R, cfg.params.g_inv, &v), "limit bifurcation point");
    wl.field(l).field(v);
    wl.end_row();
  }

  if (cfg.plot) {
    auto& gp = out.file("bifurcate.gp");
    gp << "set datafile separator ','\nset xlabel 'l'\nset ylabel 'P_l'\nset logscale y\n"
       << "set terminal pngcairo size 900,600\nset output 'bifurcate.png'\nchis = '";
    for (std::size_t i = 0; i < chis.size(); ++i) gp << (i ? " " : "") << csv::format(chis[i]);
    gp << "'\nplot for [c in chis] 'bifurcation.csv' using 2:($1==c+0 ? $3 : 1/0) with linespoints title "
          "'chi='.c, 'bifurcation_limit.csv' using 1:2 with lines dashtype 2 title 'limit'\n";
  }
  return kOk;
}

int cmd_limits(const RunConfig& cfg, Output& out) {
  check_points(cfg.points);
  check_l_range(2, std::max(cfg.limits_l_max, 2), "limits");
  const nbf_params& p = cfg.params;
  check(nbf_params_validate(&p), "params");
  auto& bif = out.file("limits_bifurcation.csv");
  csv::Writer wb(bif, {"l", "R", "g_inv", "P_l_limit"});
  for (int l = 2; l <= cfg.limits_l_max; ++l) {
    double v = 0.0;
    check(nbf_limit_bifurcation_point(l, p.R, p.g_inv, &v), "limit bifurcation point");
    wb.field(l).field(p.R).field(p.g_inv).field(v);
    wb.end_row();
  }
  // The R0 -> 0 profiles live on the whole ball; the grid stops short of r = 0.
  auto& prof = out.file("limits_profile.csv");
  csv::Writer wp(prof, {"r", "E_inf", "sigma", "dsigma", "p", "dp"});
  for (int i = 0; i < cfg.points; ++i) {
    const double r = p.R * (i + 1) / cfg.points;
    nbf_steady_limit_point v;
    check(nbf_steady_limits(&p, r, &v), "steady limits");
    wp.field(r).field(v.E_inf).field(v.sigma).field(v.dsigma).field(v.p).field(v.dp);
    wp.end_row();
  }
  auto& modes = out.file("limits_modes.csv");
  csv::Writer wm(modes, {"l", "r", "Q", "dQ"});
  for (int l = 2; l <= cfg.limits_l_max; ++l) {
    for (int i = 0; i < cfg.points; ++i) {
      const double r = p.R * (i + 1) / cfg.points;
      double q = 0.0, dq = 0.0;
      check(nbf_mode_limits(l, p.R, r, &q, &dq), "mode limits");
      wm.field(l).field(r).field(q).field(dq);
      wm.end_row();
    }
  }
  if (cfg.plot) {
    auto& gp = out.file("limits.gp");
    gp << "set datafile separator ','\nset key autotitle columnhead\n"
       << "set terminal pngcairo size 900,600\nset output 'limits.png'\n"
       << "plot 'limits_bifurcation.csv' using 1:4 with linespoints\n";
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  std::ostringstream opts;
  opts.precision(17);
  opts << "{\"seed\": " << cfg.seed << ", \"jobs\": " << cfg.jobs << ", \"l\": " << cfg.verify_l
       << ", \"self_test_negative\": " << (cfg.self_test_negative ? "true" : "false") << ", \"betas\": [";
  for (std::size_t i = 0; i < cfg.betas.size(); ++i) opts << (i ? ", " : "") << cfg.betas[i];
  opts << "], \"suites\": [";
  for (std::size_t i = 0; i < cfg.suites.size(); ++i) {
    if (cfg.suites[i].find_first_of("\"\\") != std::string::npos) throw ConfigError("bad suite name");
    opts << (i ? ", " : "") << '"' << cfg.suites[i] << '"';
  }
  opts << "]";
  for (const auto& [k, v] : cfg.verify_sizes) opts << ", \"" << k << "\": " << v;
  const nbf_params& p = cfg.params;
  opts << ", \"params\": {\"beta\": " << p.beta << ", \"sigma_ul\": " << p.sigma_ul << ", \"R0\": " << p.R0
       << ", \"R\": " << p.R << ", \"chi\": " << p.chi << ", \"g_inv\": " << p.g_inv << ", \"prolif\": " << p.prolif
       << "}}";

  char* report = nullptr;
  int passed = 0;
  check(nbf_verify(opts.str().c_str(), &report, &passed), "verify");
  const std::string text(report);
  nbf_free_string(report);
  if (cfg.report_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(cfg.report_path, std::ios::binary | std::ios::trunc);
    out << text << "\n";
    out.close();
    if (!out) throw IoError("cannot write report '" + cfg.report_path + "'");
  }
  std::cerr << (passed ? "all suites passed" : "verification FAILED") << "\n";
  return passed ? kOk : kVerificationFailed;
}

int default_jobs() {
  const char* env = std::getenv("NECROBIFURC_JOBS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0 || v > 4096) throw ConfigError(std::string("bad NECROBIFURC_JOBS '") + env + "'");
  return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady states, perturbation modes and bifurcation points of a necrotic tumour model"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(nbf_version()));
  Flags f;
  app.add_option("-c,--config", f.config_path, "YAML config file; flags override its values");
  app.add_option("-j,--jobs", f.jobs, "worker threads (default $NECROBIFURC_JOBS, else all cores)")
      ->check(CLI::Range(0, 4096));
  app.add_option("--seed", f.seed, "seed for randomised verification draws");
  app.add_option("-o,--out", f.out_dir, "output directory");
  app.add_flag("--plot", f.plot, "also write a gnuplot script");
  app.add_option("--beta", f.beta, "nutrient supply rate");
  app.add_option("--sigma-ul", f.sigma_ul, "necrotic-boundary nutrient level");
  app.add_option("--R0", f.R0, "necrotic core radius");
  app.add_option("--R", f.R, "tumour radius");
  app.add_option("--chi", f.chi, "chemotaxis coefficient");
  app.add_option("--g-inv", f.g_inv, "surface tension strength");
  app.add_option("--prolif", f.prolif, "proliferation rate");

  auto* steady = app.add_subcommand("steady", "steady-state profile and coefficients");
  steady->add_option("--points", f.points, "radial grid points");
  steady->add_flag("--limit", f.limit, "add beta -> inf, R0 -> 0 limit columns");

  auto* modes = app.add_subcommand("modes", "perturbation modes Q_l and G_beta");
  modes->add_option("--points", f.points, "radial grid points");
  modes->add_option("--l-min", f.l_min, "smallest mode");
  modes->add_option("--l-max", f.l_max, "largest mode");

  auto* bif = app.add_subcommand("bifurcate", "bifurcation points over l and chi grids");
  bif->add_option("--chi-list", f.chi_list, "comma separated chemotaxis values");
  bif->add_option("--l-min", f.l_min, "smallest mode");
  bif->add_option("--l-max", f.l_max, "largest mode");
  bif->add_option("--preset", f.preset, "named scan (fig4)");

  auto* limits = app.add_subcommand("limits", "beta -> inf, R0 -> 0 closed forms");
  limits->add_option("--points", f.points, "radial grid points");
  limits->add_option("--l-max", f.l_max, "largest mode");

  auto* ver = app.add_subcommand("verify", "run the verification suites");
  ver->add_option("--suite", f.suites, "suite names (repeatable); default all");
  // Unlike the global scalar --beta, this one takes a list.
  ver->add_option("--beta", f.beta_list, "comma separated beta values for the profile suites");
  ver->add_option("--l", f.verify_l, "mode for the G_beta suite");
  ver->add_flag("--self-test-negative", f.self_test_negative, "force one tolerance to zero");
  ver->add_option("--report", f.report_path, "write the JSON report here instead of stdout");
  ver->add_flag_callback("--list", [] {
    char* names = nullptr;
    if (nbf_verify_suite_names(&names) == NBF_OK) {
      std::cout << names;
      nbf_free_string(names);
    }
    std::exit(kOk);
  }, "list suite names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    RunConfig cfg;
    check(nbf_params_default(&cfg.params), "defaults");
    cfg.jobs = default_jobs();
    if (!f.config_path.empty()) load_config_file(f.config_path, cfg);
    apply_flags(f, cfg);
    if (cfg.jobs < 0) throw ConfigError("jobs must be non-negative");
    if (!ver->parsed()) check(nbf_params_validate(&cfg.params), "params");

    if (ver->parsed()) return cmd_verify(cfg);
    Output out(cfg.out_dir);
    int code = kOk;
    if (steady->parsed()) code = cmd_steady(cfg, out);
    else if (modes->parsed()) code = cmd_modes(cfg, out);
    else if (bif->parsed()) code = cmd_bifurcate(cfg, out);
    else if (limits->parsed()) code = cmd_limits(cfg, out);
    out.commit();
    return code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}
