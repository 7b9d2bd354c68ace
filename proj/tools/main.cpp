// Copyright 2026 The hybrid-magic Authors
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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hybrid_magic/fock.hpp"
#include "hybrid_magic/gates.hpp"
#include "hybrid_magic/hybrid.hpp"
#include "hybrid_magic/jcsim.hpp"
#include "hybrid_magic/majorana.hpp"
#include "hybrid_magic/models.hpp"
#include "report.hpp"

#ifndef HYBRID_MAGIC_VERSION
#define HYBRID_MAGIC_VERSION "unknown"
#endif

namespace hm = hybrid_magic;
using hybrid_magic::Complex;
using hybrid_magic::report::Marker;
using hybrid_magic::report::Table;
using json = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

struct Common {
  double p = 1.0;
  double r = 0.0;
  double s = 0.0;
  double tol = -1.0;  // < 0: subcommand default
  int points_per_axis = 64;
  double half_width = 0.0;
  int max_refinements = -1;  // < 0: subcommand default
  std::string out = ".";
  std::vector<std::string> formats{"csv", "json", "svg"};
  std::uint64_t seed = 1;

  hm::OrderingParams orderings() const { return {r, s}; }
  hm::QuadratureSpec quadrature(double default_tol = 1e-4, int default_refinements = 5) const {
    hm::QuadratureSpec q;
    q.half_width = half_width;
    q.points_per_axis = points_per_axis;
    q.refine_tolerance = tol > 0.0 ? tol : default_tol;
    q.max_refinements = max_refinements >= 0 ? max_refinements : default_refinements;
    hm::QuadratureSpec probe = q;
    if (probe.half_width == 0.0) probe.half_width = 1.0;  // 0 means automatic
    probe.validate();
    return q;
  }
  bool wants(const std::string& f) const { return std::find(formats.begin(), formats.end(), f) != formats.end(); }
  bool weyl() const { return r == 0.0 && s == 0.0; }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--p", c.p, "L_p exponent (p > 0, p != 2)")->capture_default_str();
  sub->add_option("--r", c.r, "bosonic ordering, |r| < 1")->capture_default_str();
  sub->add_option("--s", c.s, "fermionic ordering")->capture_default_str();
  sub->add_option("--tol", c.tol, "quadrature refine tolerance (default depends on the command)");
  sub->add_option("--points-per-axis", c.points_per_axis, "initial grid nodes per axis")
      ->capture_default_str()
      ->check(CLI::Range(16, 1 << 16));
  sub->add_option("--half-width", c.half_width, "integration half-width, 0 = automatic")->capture_default_str();
  sub->add_option("--max-refinements", c.max_refinements,
                  "grid doublings allowed (default 7 for closed-form models, else 5)")
      ->check(CLI::Range(1, 12));
  sub->add_option("--out", c.out, "output directory")->capture_default_str();
  sub->add_option("--formats", c.formats, "subset of csv,json,svg")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "json", "svg"}))
      ->capture_default_str();
  sub->add_option("--seed", c.seed, "Monte Carlo seed")->capture_default_str();
}

void validate_common(const Common& c) {
  hm::lp_prefactor(c.p);
  c.orderings().validate();
  if (!std::isfinite(c.s)) throw hm::DomainError("s must be finite");
  if (c.tol == 0.0 || !std::isfinite(c.tol)) throw hm::DomainError("tol must be positive");
  c.quadrature();
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw hm::DomainError("need at least one grid point");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return out;
}

json quadrature_json(const hm::QuadratureResult& q) {
  return {{"value", q.value},
          {"converged", q.converged},
          {"refinements", q.refinements},
          {"points_per_axis", q.points_per_axis},
          {"relative_change", q.relative_change}};
}

// Collects results, checks and files of one subcommand run.
class Run {
 public:
  Run(std::string name, const CLI::App* sub, const Common& c) : name_(std::move(name)), common_(c) {
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->get_lnames().empty() || opt->get_lnames().front() == "help") continue;
      const std::string key = opt->get_lnames().front();
      std::vector<std::string> vals = opt->results();
      std::string joined;
      if (vals.empty()) {
        joined = opt->get_default_str();
      } else {
        for (std::size_t i = 0; i < vals.size(); ++i) joined += (i ? "," : "") + vals[i];
      }
      config_[key] = joined;
    }
    std::filesystem::create_directories(common_.out);
  }

  json& results() { return results_; }
  int failures() const { return failures_; }

  void check(const std::string& name, double value, double target, double tolerance, bool pass,
             const std::string& provenance) {
    checks_.push_back({{"name", name},
                       {"value", value},
                       {"target", target},
                       {"tolerance", tolerance},
                       {"provenance", provenance},
                       {"status", pass ? "pass" : "fail"}});
    if (!pass) ++failures_;
    std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << hm::report::format_number(value) << "\n";
  }

  void flag_convergence(bool converged, const std::string& what) {
    if (!converged) unconverged_.push_back(what);
  }

  void csv(const std::string& suffix, const Table& table) {
    if (!common_.wants("csv")) return;
    write(name_ + suffix + ".csv", hm::report::to_csv(table));
  }
  void svg(const std::string& suffix, const std::string& content) {
    if (!common_.wants("svg")) return;
    write(name_ + suffix + ".svg", content);
  }

  int finish(const std::string& provenance) {
    json doc;
    doc["schema"] = 1;
    doc["command"] = name_;
    doc["version"] = HYBRID_MAGIC_VERSION;
    doc["provenance"] = provenance;
    doc["config"] = config_;
    doc["results"] = results_;
    doc["checks"] = checks_;
    doc["converged"] = unconverged_.empty();
    doc["unconverged"] = unconverged_;
    if (common_.wants("json")) write(name_ + ".json", doc.dump(2) + "\n");
    if (!unconverged_.empty()) {
      json err = {{"error", {{"kind", "convergence"}, {"message", "quadrature did not converge"}, {"where", unconverged_}}}};
      std::cerr << err.dump() << "\n";
      return 3;
    }
    return 0;
  }

 private:
  void write(const std::string& file, const std::string& content) {
    const std::string path = (std::filesystem::path(common_.out) / file).string();
    hm::report::write_atomic(path, content);
    std::cout << "wrote " << path << "\n";
  }

  std::string name_;
  const Common& common_;
  json config_ = json::object();
  json results_ = json::object();
  json checks_ = json::array();
  json unconverged_ = json::array();
  int failures_ = 0;
};

hm::JCInitial parse_atom(const hm::FockVector& cavity, const std::string& atom) {
  if (atom == "g") return {cavity, 1.0, 0.0};
  if (atom == "e") return {cavity, 0.0, 1.0};
  if (atom == "T") return hm::JCInitial::bloch(cavity, hm::BlochScan::kThetaT, hm::BlochScan::kPhiT);
  if (atom == "H") return hm::JCInitial::bloch(cavity, hm::BlochScan::kThetaH, hm::BlochScan::kPhiH);
  if (atom.rfind("bloch:", 0) == 0) {
    const std::string rest = atom.substr(6);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw hm::DomainError("atom state 'bloch:theta,phi' needs two angles");
    return hm::JCInitial::bloch(cavity, std::stod(rest.substr(0, comma)), std::stod(rest.substr(comma + 1)));
  }
  throw hm::DomainError("unknown atom state '" + atom + "' (g, e, T, H or bloch:theta,phi)");
}

struct JCOptions {
  double omega_c = 1.0;
  double omega_a = 1.0;
  double g = 1.0;

  void add(CLI::App* sub) {
    sub->add_option("--omega-c", omega_c, "cavity frequency")->capture_default_str();
    sub->add_option("--omega-a", omega_a, "atom frequency")->capture_default_str();
    sub->add_option("--coupling", g, "atom-cavity coupling g")->capture_default_str();
  }
  hm::JCParams params() const {
    hm::JCParams p{omega_c, omega_a, g};
    p.validate();
    return p;
  }
};

double excitation_scale(const hm::JCInitial& in) {
  return std::sqrt(std::max(1.0, std::round(in.mean_excitations())));
}

// ---------------------------------------------------------------- commands

int run_susy(const CLI::App* sub, const Common& c) {
  Run run("susy", sub, c);
  const hm::MagicResult m = hm::susy_magic(c.p, c.orderings(), c.quadrature(1e-4, 7));
  Table t{{"r", "s", "p", "magic"}, {}};
  t.add({c.r, c.s, c.p, m.value});
  run.csv("", t);
  run.results()["magic"] = m.value;
  run.results()["quadrature"] = quadrature_json(m.quadrature);
  if (c.s == 0.0) run.check("ground-state magic vanishes", m.value, 0.0, 1e-6, std::abs(m.value) < 1e-6, "numeric");
  run.flag_convergence(m.converged(), "susy");
  return run.finish("numeric quadrature of the closed-form vacuum component");
}

struct SweepOptions {
  double lo = 0.0;
  double hi = 4.0;
  int points = 41;
};

int run_cat_compare(const CLI::App* sub, const Common& c, const SweepOptions& o) {
  Run run("cat-compare", sub, c);
  const auto spec = c.quadrature(1e-4, 7);
  const auto grid = linspace(o.lo, o.hi, o.points);
  const auto dressed = hm::magic_vs_beta_curves(hm::CatModel::dressed_cat, grid, c.p, c.orderings(), spec);
  const auto bosonic = hm::magic_vs_beta_curves(hm::CatModel::bosonic_cat, grid, c.p, c.orderings(), spec);
  Table t{{"beta", "dressed_cat", "bosonic_cat", "difference"}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    t.add({grid[i], dressed[i].magic, bosonic[i].magic, dressed[i].magic - bosonic[i].magic});
    run.flag_convergence(dressed[i].converged && bosonic[i].converged, "beta=" + hm::report::format_number(grid[i]));
  }
  run.csv("", t);
  run.svg("", hm::report::line_svg(t, 0, {1, 2}, "Hybrid vs bosonic cat magic"));
  if (c.p == 1.0 && c.weyl()) {
    const double d1 = hm::model_magic(hm::CatModel::dressed_cat, 1.0, 1.0, {}, spec).value -
                      hm::model_magic(hm::CatModel::bosonic_cat, 1.0, 1.0, {}, spec).value;
    const double d4 = hm::model_magic(hm::CatModel::dressed_cat, 4.0, 1.0, {}, spec).value -
                      hm::model_magic(hm::CatModel::bosonic_cat, 4.0, 1.0, {}, spec).value;
    run.results()["difference_beta_1"] = d1;
    run.results()["difference_beta_4"] = d4;
    run.check("dressed cat above bosonic cat at beta=1", d1, 0.0, 0.0, d1 > 0.0, "numeric");
    run.check("dressed and bosonic cats agree at beta=4", d4, 0.0, 0.02, std::abs(d4) < 0.02, "numeric");
  }
  return run.finish("closed-form components, numeric quadrature");
}

struct HolsteinOptions {
  double g_lo = 0.0;
  double g_hi = 2.0;
  int points = 41;
  double omega0 = 1.0;
  double tau = 1.0;
};

int run_holstein(const CLI::App* sub, const Common& c, const HolsteinOptions& o) {
  Run run("holstein", sub, c);
  const auto spec = c.quadrature(1e-4, 7);
  hm::HolsteinParams base;
  base.omega0 = o.omega0;
  base.tau = o.tau;
  base.validate();
  const auto grid = linspace(o.g_lo, o.g_hi, o.points);
  Table t{{"g", "beta", "holstein", "bosonic_cat", "tau_eff", "energy"}, {}};
  for (double g : grid) {
    hm::HolsteinParams hp = base;
    hp.g = g;
    const auto m = hm::holstein_magic(hp, c.p, c.orderings(), spec);
    const auto b = hm::model_magic(hm::CatModel::bosonic_cat, std::abs(hp.beta()), c.p, c.orderings(), spec);
    const auto eff = hm::holstein_effective(hp);
    t.add({g, hp.beta(), m.value, b.value, eff.tau_eff, eff.energy});
    run.flag_convergence(m.converged() && b.converged(), "g=" + hm::report::format_number(g));
  }
  run.csv("", t);
  run.svg("", hm::report::line_svg(t, 0, {2, 3}, "Holstein ground-state magic"));
  // Intermediate coupling |beta| = 1, and the collapse under (g, omega0) -> (2g, 2 omega0).
  hm::HolsteinParams mid = base;
  mid.g = 0.5 * base.omega0;
  const double h = hm::holstein_magic(mid, c.p, c.orderings(), spec).value;
  const double b = hm::model_magic(hm::CatModel::bosonic_cat, 1.0, c.p, c.orderings(), spec).value;
  hm::HolsteinParams scaled = mid;
  scaled.g *= 2.0;
  scaled.omega0 *= 2.0;
  const double collapse = std::abs(hm::holstein_magic(scaled, c.p, c.orderings(), spec).value - h);
  run.results()["holstein_beta_1"] = h;
  run.results()["bosonic_cat_beta_1"] = b;
  run.check("Holstein above bosonic cat at |beta|=1", h - b, 0.0, 0.0, h > b, "numeric");
  run.check("scaling collapse in beta", collapse, 0.0, 1e-6, collapse < 1e-6, "numeric");
  return run.finish("closed-form Lang-Firsov components, numeric quadrature");
}

struct EvolveOptions {
  std::string cavity = "fock:1";
  std::string atom = "g";
  double periods = 2.0;
  int samples = 201;
  int d_max = 0;
  double tail_tol = 1e-10;
  bool mutual = false;
  JCOptions jc;
};

int run_jc_evolve(const CLI::App* sub, const Common& c, const EvolveOptions& o) {
  Run run("jc-evolve", sub, c);
  const auto params = o.jc.params();
  const auto spec = c.quadrature();
  const hm::StateSpec cs = hm::StateSpec::parse(o.cavity);
  const hm::FockVector cavity = hm::make_state(cs, o.d_max, o.tail_tol);
  const hm::JCInitial initial = parse_atom(cavity, o.atom);
  if (!(o.periods > 0.0)) throw hm::DomainError("periods must be positive");
  const double period = hm::rabi_period(initial, params);
  if (!std::isfinite(period)) throw hm::DomainError("no Rabi oscillation for this state");
  const auto times = linspace(0.0, o.periods * period, o.samples);
  const auto ts = hm::magic_timeseries(initial, times, params, c.p, c.orderings(), spec);
  const double scale = o.jc.g * excitation_scale(initial);
  std::vector<std::string> cols{"t", "x", "magic"};
  std::optional<hm::MutualTimeseries> mt;
  if (o.mutual) {
    if (c.p != 1.0 || !c.weyl()) throw hm::DomainError("mutual magic needs p = 1 and Weyl ordering");
    mt = hm::mutual_magic_timeseries(initial, times, params, spec);
    cols.insert(cols.end(), {"mutual", "hybrid", "mana", "fermion"});
  }
  Table t{cols, {}};
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<double> row{times[i], scale * times[i], ts.points[i].magic};
    if (mt) {
      const auto& v = mt->points[i].value;
      row.insert(row.end(), {v.value, v.hybrid, v.mana, v.fermion});
    }
    t.add(row);
  }
  run.csv("", t);
  std::vector<std::size_t> ys{2};
  if (mt) ys.push_back(3);
  run.svg("", hm::report::line_svg(t, 1, ys, "Jaynes-Cummings magic, " + o.cavity + ", atom " + o.atom));
  run.results()["rabi_period"] = period;
  run.results()["calibration"] = quadrature_json(ts.calibration);
  run.flag_convergence(ts.calibration.converged, "calibration");
  if ((o.atom == "g" || o.atom == "e") && c.s == 0.0) {
    const double mana = hm::mana_p(cavity, c.p, c.r, spec).value;
    const double diff = ts.points.front().magic - mana;
    run.results()["cavity_mana"] = mana;
    run.check("t=0 magic equals cavity mana", diff, 0.0, 1e-3, std::abs(diff) < 1e-3, "numeric");
  }
  return run.finish("exact block evolution, numeric quadrature on a calibrated grid");
}

struct ScalingOptions {
  int n_min = 1;
  int n_max = 30;
  int scan = 512;
  std::vector<double> coherent_betas;
  int coherent_d_max = 15;
  double coherent_tail_tol = 1e-4;
  double coherent_tol = 1e-3;
  JCOptions jc;
};

std::vector<double> probe_times(double t0, double t1) {
  std::vector<double> out;
  for (int k = 0; k < 5; ++k) out.push_back(t0 + (t1 - t0) * k / 4.0);
  return out;
}

int run_jc_scaling(const CLI::App* sub, const Common& c, const ScalingOptions& o) {
  Run run("jc-scaling", sub, c);
  const auto params = o.jc.params();
  const auto spec = c.quadrature();
  if (o.n_min < 1 || o.n_max < o.n_min) throw hm::DomainError("need 1 <= n-min <= n-max");
  Table t{{"n0", "max_magic", "t_star", "x_star", "x_first", "peaks"}, {}};
  std::vector<int> ns;
  std::vector<double> maxima;
  std::optional<int> second_peak;
  bool window_ok = true;
  for (int n0 = o.n_min; n0 <= o.n_max; ++n0) {
    const hm::JCInitial in = hm::JCInitial::bloch(hm::make_state(hm::StateSpec::fock(n0)), 0.0, 0.0);
    const double period = hm::rabi_period(in, params);
    const hm::JCMagicEvaluator ev(in, params, c.p, c.orderings(), spec, probe_times(0.0, period));
    const hm::MaxMagic m = hm::max_magic(ev, period, 0.0, period);
    std::vector<double> half;
    for (int k = 1; k < o.scan; ++k) half.push_back(ev.magic(0.5 * period * k / o.scan, true));
    const auto peak_index = hm::local_maxima(half);
    const int peaks = static_cast<int>(peak_index.size());
    if (peaks >= 2 && !second_peak) second_peak = n0;
    const double scale = o.jc.g * std::sqrt(double(n0));
    double x_first = std::nan("");
    if (peaks > 0) {
      // half[k] sits at (k + 1) / scan of the half period
      const double step = 0.5 * period / o.scan;
      x_first = scale * hm::max_magic(ev, period, step * peak_index.front(), step * (peak_index.front() + 2)).t;
    }
    window_ok = window_ok && x_first >= kPi / 7.0 - 1e-9 && x_first <= kPi / 6.0 + 1e-9;
    t.add({double(n0), m.value, m.t, scale * m.t, x_first, double(peaks)});
    ns.push_back(n0);
    maxima.push_back(m.value);
    run.flag_convergence(ev.calibration().converged, "n0=" + std::to_string(n0));
    std::cerr << "n0=" << n0 << " max=" << m.value << "\n";
  }
  run.csv("", t);
  run.svg("", hm::report::line_svg(t, 0, {1}, "Max hybrid magic, Fock cavity"));
  json& r = run.results();
  r["second_peak_n0"] = second_peak ? json(*second_peak) : json(nullptr);
  if (ns.size() >= 3) {
    const hm::LogFit fit = hm::log_fit(ns, maxima);
    r["fit"] = {{"a", fit.a}, {"b", fit.b}, {"residual", fit.residual}};
    if (o.n_min == 1 && o.n_max == 30 && c.p == 1.0 && c.weyl() && params.detuning() == 0.0) {
      run.check("Fock fit slope a", fit.a, 0.81, 0.08, std::abs(fit.a - 0.81) <= 0.08, "numeric fit");
      run.check("Fock fit intercept b", fit.b, 1.00, 0.10, std::abs(fit.b - 1.00) <= 0.10, "numeric fit");
    }
  }
  if (params.detuning() == 0.0) {
    run.check("first maximum inside [pi/7, pi/6]", window_ok ? 1.0 : 0.0, 1.0, 0.0, window_ok, "numeric");
  }
  if (!o.coherent_betas.empty()) {
    hm::QuadratureSpec cspec = spec;
    if (c.tol <= 0.0) cspec.refine_tolerance = o.coherent_tol;
    Table ct{{"beta", "mean_photons", "max_magic", "t_star"}, {}};
    std::vector<int> cn;
    std::vector<double> cv;
    for (double beta : o.coherent_betas) {
      const hm::FockVector cav =
          hm::make_state(hm::StateSpec::coherent(beta), o.coherent_d_max, o.coherent_tail_tol);
      const hm::JCInitial in = hm::JCInitial::bloch(cav, 0.0, 0.0);
      const double period = hm::rabi_period(in, params);
      const hm::MaxMagic m = hm::max_magic(in, params, 0.0, period, c.p, c.orderings(), cspec);
      ct.add({beta, beta * beta, m.value, m.t});
      run.flag_convergence(m.calibration.converged, "beta=" + hm::report::format_number(beta));
      std::cerr << "beta=" << beta << " max=" << m.value << "\n";
    }
    run.csv("-coherent", ct);
    r["coherent_betas"] = o.coherent_betas;
  }
  return run.finish("exact block evolution, calibrated-grid quadrature, golden-section maxima");
}

struct BlochOptions {
  int theta_points = 61;
  int phi_points = 121;
  double periods = 1.0;
  JCOptions jc;
};

int run_jc_bloch(const CLI::App* sub, const Common& c, const BlochOptions& o) {
  Run run("jc-bloch", sub, c);
  const auto params = o.jc.params();
  const auto spec = c.quadrature(1e-3);
  if (o.theta_points < 3 || o.phi_points < 5) throw hm::DomainError("Bloch grid too small");
  const auto thetas = linspace(0.0, kPi, o.theta_points);
  const auto phis = linspace(0.0, 2.0 * kPi, o.phi_points);
  const double period = 2.0 * kPi / params.rabi(1);
  const hm::BlochScan scan = hm::bloch_scan(thetas, phis, params, 0.0, o.periods * period, c.p, c.orderings(), spec);
  Table t{{"theta", "phi", "max_magic", "t_star"}, {}};
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (std::size_t j = 0; j < phis.size(); ++j) t.add({thetas[i], phis[j], scan.max_magic(i, j), scan.t_star(i, j)});
  }
  run.csv("", t);
  std::vector<Marker> flat_marks;
  std::vector<Marker> sphere_marks;
  for (int k = 0; k < 4; ++k) {
    const double phi = hm::BlochScan::kPhiT + k * kPi / 2.0;
    flat_marks.push_back({phi, hm::BlochScan::kThetaT, "T"});
    sphere_marks.push_back({hm::BlochScan::kThetaT, phi, "T"});
  }
  run.svg("", hm::report::heatmap_svg(phis, thetas, scan.max_magic, "Max magic over the Bloch sphere (phi, theta)",
                                      flat_marks));
  run.svg("-sphere", hm::report::bloch_svg(thetas, phis, scan.max_magic, "Max magic on the Bloch sphere",
                                          sphere_marks));
  json& r = run.results();
  r["grid_points_per_axis"] = scan.grid.n;
  r["grid_half_width"] = scan.grid.half_width;
  // phi-periodicity pi/2
  const int n_phi = o.phi_points;
  if ((n_phi - 1) % 4 == 0) {
    const int q = (n_phi - 1) / 4;
    double worst = 0.0;
    for (int i = 0; i < o.theta_points; ++i) {
      for (int j = 0; j + q < n_phi; ++j) worst = std::max(worst, std::abs(scan.max_magic(i, j) - scan.max_magic(i, j + q)));
    }
    run.check("phi periodicity pi/2", worst, 0.0, 1e-4, worst < 1e-4, "numeric");
  }
  const double mg = scan.max_magic(0, 0);
  run.check("max magic of |g> vanishes", mg, 0.0, 1e-6, std::abs(mg) < 1e-6, "numeric");
  const double me = scan.max_magic(o.theta_points - 1, 0);
  const hm::JCInitial g1 = hm::JCInitial::bloch(hm::make_state(hm::StateSpec::fock(1)), 0.0, 0.0);
  const hm::JCMagicEvaluator ev(g1, params, c.p, c.orderings(), scan.grid);
  const double mg1 = hm::max_magic(ev, period, 0.0, o.periods * period).value;
  r["max_magic_e"] = me;
  r["max_magic_g_fock1"] = mg1;
  run.check("max magic |e>|0> equals |g>|1>", me - mg1, 0.0, 1e-4, std::abs(me - mg1) < 1e-4, "numeric");
  // Northern-hemisphere local maxima near the T-state directions.
  std::vector<std::pair<double, double>> peaks;
  for (int i = 1; i < o.theta_points - 1; ++i) {
    if (thetas[i] >= kPi / 2.0) break;
    for (int j = 0; j < n_phi - 1; ++j) {
      const double v = scan.max_magic(i, j);
      bool top = true;
      for (int di = -1; di <= 1 && top; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (!di && !dj) continue;
          const int jj = ((j + dj) % (n_phi - 1) + (n_phi - 1)) % (n_phi - 1);
          if (scan.max_magic(i + di, jj) > v) {
            top = false;
            break;
          }
        }
      }
      if (top) peaks.emplace_back(thetas[i], phis[j]);
    }
  }
  json pk = json::array();
  for (const auto& [th, ph] : peaks) pk.push_back({th, ph});
  r["northern_local_maxima"] = pk;
  int hits = 0;
  for (int k = 0; k < 4; ++k) {
    const double phi_t = hm::BlochScan::kPhiT + k * kPi / 2.0;
    for (const auto& [th, ph] : peaks) {
      if (std::abs(th - hm::BlochScan::kThetaT) <= 0.1 && std::abs(ph - phi_t) <= 0.1) {
        ++hits;
        break;
      }
    }
  }
  run.check("local maxima at the T-state directions", hits, 4, 0, hits == 4, "numeric");
  run.flag_convergence(true, "bloch");
  return run.finish("exact block evolution, one calibrated grid for all cells");
}

struct MutualOptions {
  std::vector<int> n_list{1, 2, 3, 5};
  int samples = 101;
  int fit_n_max = 30;
  JCOptions jc;
};

int run_jc_mutual(const CLI::App* sub, const Common& c, const MutualOptions& o) {
  Run run("jc-mutual", sub, c);
  if (c.p != 1.0 || !c.weyl()) throw hm::DomainError("mutual magic needs p = 1 and Weyl ordering");
  const auto params = o.jc.params();
  const auto spec = c.quadrature();
  const auto xs = linspace(0.0, kPi / 2.0, o.samples);
  const double step = xs.size() > 1 ? xs[1] - xs[0] : kPi / 2.0;
  std::vector<std::string> cols{"x"};
  for (int n : o.n_list) cols.push_back("mutual_n" + std::to_string(n));
  Table t{cols, {}};
  std::vector<std::vector<double>> series;
  json& r = run.results();
  double worst_zero = 0.0;
  bool at_quarter = true;
  for (int n0 : o.n_list) {
    if (n0 < 1) throw hm::DomainError("Fock numbers must be positive");
    const hm::JCInitial in = hm::JCInitial::bloch(hm::make_state(hm::StateSpec::fock(n0)), 0.0, 0.0);
    const double scale = o.jc.g * std::sqrt(double(n0));
    std::vector<double> times;
    for (double x : xs) times.push_back(x / scale);
    const auto ts = hm::mutual_magic_timeseries(in, times, params, spec);
    std::vector<double> v;
    for (const auto& pt : ts.points) v.push_back(pt.value.value);
    series.push_back(v);
    worst_zero = std::max(worst_zero, std::abs(v.front()));
    const auto m = hm::max_mutual_magic(in, params, 0.0, times.back(), spec);
    const double x_star = scale * m.t;
    at_quarter = at_quarter && std::abs(x_star - kPi / 4.0) <= step;
    r["n" + std::to_string(n0)] = {{"max", m.value}, {"x_star", x_star}};
    run.flag_convergence(ts.calibration.converged, "n0=" + std::to_string(n0));
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<double> row{xs[i]};
    for (const auto& s : series) row.push_back(s[i]);
    t.add(row);
  }
  run.csv("", t);
  std::vector<std::size_t> ys;
  for (std::size_t k = 1; k < cols.size(); ++k) ys.push_back(k);
  run.svg("", hm::report::line_svg(t, 0, ys, "Mutual magic, Fock cavity"));
  run.check("mutual magic of the product state vanishes", worst_zero, 0.0, 1e-5, worst_zero < 1e-5, "numeric");
  if (params.detuning() == 0.0) {
    run.check("mutual maxima at x = pi/4", at_quarter ? 1.0 : 0.0, 1.0, step, at_quarter, "numeric");
  }
  if (o.fit_n_max >= 3) {
    Table ft{{"n0", "max_mutual", "x_star"}, {}};
    std::vector<int> ns;
    std::vector<double> vals;
    for (int n0 = 1; n0 <= o.fit_n_max; ++n0) {
      const hm::JCInitial in = hm::JCInitial::bloch(hm::make_state(hm::StateSpec::fock(n0)), 0.0, 0.0);
      const double scale = o.jc.g * std::sqrt(double(n0));
      const auto m = hm::max_mutual_magic(in, params, 0.0, kPi / 2.0 / scale, spec);
      ft.add({double(n0), m.value, scale * m.t});
      ns.push_back(n0);
      vals.push_back(m.value);
      run.flag_convergence(m.calibration.converged, "fit n0=" + std::to_string(n0));
      std::cerr << "n0=" << n0 << " max mutual=" << m.value << "\n";
    }
    run.csv("-fit", ft);
    const hm::LogFit fit = hm::log_fit(ns, vals);
    r["fit"] = {{"a", fit.a}, {"b", fit.b}, {"residual", fit.residual}};
    if (o.fit_n_max == 30 && params.detuning() == 0.0) {
      run.check("mutual fit slope a", fit.a, 0.049, 0.02, std::abs(fit.a - 0.049) <= 0.02, "numeric fit");
      run.check("mutual fit intercept b", fit.b, 1.109, 0.08, std::abs(fit.b - 1.109) <= 0.08, "numeric fit");
    }
  }
  return run.finish("exact block evolution, calibrated-grid quadrature, golden-section maxima");
}

struct PowerOptions {
  double alpha_max = 2.0;
  int points = 100;
  double phase = 0.0;
  std::vector<double> numeric{0.3, 1.0};
  std::string measure = "vacuum";
  int samples = 1;
  double max_displacement = 2.0;
  double max_squeezing = 1.0;
};

int run_cd_power(const CLI::App* sub, const Common& c, const PowerOptions& o) {
  Run run("cd-power", sub, c);
  if (!(o.alpha_max >= 0.0)) throw hm::DomainError("alpha-max must be nonnegative");
  const auto spec = c.quadrature();
  hm::GaussianMeasure measure = hm::GaussianMeasure::parse(o.measure);
  measure.max_displacement = o.max_displacement;
  measure.max_squeezing = o.max_squeezing;
  Table t{{"abs_alpha", "power"}, {}};
  for (double a : linspace(0.0, o.alpha_max, o.points)) t.add({a, hm::cd_power_closed(std::polar(a, o.phase))});
  run.csv("", t);
  run.svg("", hm::report::line_svg(t, 0, {1}, "Non-stabilizer power of CD(alpha)"));
  const double limit = 2.0 / 3.0 * std::log(1.0 + 2.0 / kPi);
  const double slope_target = 2.0 / 3.0 * std::sqrt(2.0 / kPi);
  const double p0 = hm::cd_power_closed(0.0);
  const double p3 = hm::cd_power_closed(3.0);
  const double slope = hm::cd_power_closed(1e-3) / 1e-3;
  json& r = run.results();
  r["asymptote"] = limit;
  r["power_at_3"] = p3;
  r["slope_at_1e-3"] = slope;
  run.check("power of CD(0)", p0, 0.0, 0.0, p0 == 0.0, "closed form");
  run.check("asymptote at |alpha|=3", p3, limit, 1e-4, std::abs(p3 - limit) < 1e-4, "closed form");
  run.check("small-alpha slope", slope, slope_target, 0.01 * slope_target,
            std::abs(slope - slope_target) < 0.01 * slope_target, "closed form");
  if (!o.numeric.empty()) {
    Table nt{{"abs_alpha", "power_numeric", "std_error", "power_closed", "difference"}, {}};
    for (double a : o.numeric) {
      const Complex alpha = std::polar(a, o.phase);
      hm::GateSpec gs;
      gs.kind = hm::GateKind::conditional_displacement;
      gs.alpha = alpha;
      const hm::PowerEstimate est = hm::power_numeric(hm::make_gate(gs), measure, o.samples, spec, c.seed);
      const hm::MonteCarloEstimate closed = hm::monte_carlo_mean(
          measure, [&](const hm::GaussianStateParams& g) { return hm::cd_power_general(alpha, g); }, o.samples,
          c.seed);
      const double diff = est.mean - closed.mean;
      nt.add({a, est.mean, est.std_error, closed.mean, diff});
      run.flag_convergence(est.converged, "numeric alpha=" + hm::report::format_number(a));
      const double tol = 1e-3 + 3.0 * est.std_error;
      run.check("numeric power at |alpha|=" + hm::report::format_number(a), diff, 0.0, tol, std::abs(diff) < tol,
                "full pipeline vs closed form");
    }
    run.csv("-numeric", nt);
  }
  return run.finish("closed form; numeric average over the 12 stabilizer inputs");
}

// Fast subset of the invariant suite.
int run_selftest(const CLI::App* sub, const Common& c) {
  Run run("selftest", sub, c);
  const hm::QuadratureSpec spec = c.quadrature();
  {
    const double m = hm::susy_magic(1.0, {}, spec).value;
    run.check("vacuum magic vanishes", m, 0.0, 1e-6, std::abs(m) < 1e-6, "numeric");
  }
  {
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> n01;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      hm::VectorXc v(2);
      v << Complex(n01(rng), n01(rng)), Complex(n01(rng), n01(rng));
      const auto st = hm::FermionState::pure(v.normalized());
      worst = std::max(worst, std::abs(hm::fermionic_magic_p(st, 4.0, 0.0) - hm::sre_alpha(st, 2.0)));
      worst = std::max(worst, std::abs(hm::fermionic_magic_p(st, 1.0, 0.0) - hm::sre_alpha(st, 0.5)));
    }
    run.check("L_2k magic equals SRE_k", worst, 0.0, 1e-10, worst < 1e-10, "identity");
  }
  {
    const double m = hm::mana_p(hm::make_state(hm::StateSpec::fock(1)), 1.0, 0.0, spec).value;
    const double exact = 2.0 * std::log(4.0 * std::exp(-0.5) - 1.0);
    run.check("mana of |1>", m - exact, 0.0, 1e-4, std::abs(m - exact) < 1e-4, "exact value");
  }
  {
    double worst = 0.0;
    for (Complex a : {Complex(0.3, -0.4), Complex(1.2, 0.5)}) {
      worst = std::max(worst, (hm::phase_point_matrix(a, 0.0, 12) - hm::phase_point_matrix_oracle(a, 12)).cwiseAbs().maxCoeff());
    }
    run.check("phase-point elements vs matrix exponentials", worst, 0.0, 1e-8, worst < 1e-8, "oracle");
  }
  {
    hm::JCInitial in = hm::JCInitial::bloch(hm::make_state(hm::StateSpec::coherent({0.8, 0.3}), 12, 1e-4), 1.1, 0.4);
    const hm::JCParams jp;
    const auto a = hm::evolve_resonant(in, 0.77, jp);
    const auto b = hm::evolve_blocks(in, 0.77, jp);
    const double d = (a.alpha - b.alpha).norm() + (a.beta - b.beta).norm();
    run.check("resonant closed form vs block evolution", d, 0.0, 1e-12, d < 1e-12, "oracle");
    const auto field = hm::components_from_state(a.state(), {0.2, 0.3});
    double worst = 0.0;
    for (Complex x : {Complex(0.3, -0.2), Complex(1.1, 0.7)}) {
      const auto w = hm::jc_components(hm::st_series(a, x, 0.2), 0.3);
      const auto v = field.values(x);
      for (int k = 0; k < 16; ++k) worst = std::max(worst, std::abs(w[k] - v(k)));
    }
    run.check("JC series vs generic components", worst, 0.0, 1e-8, worst < 1e-8, "oracle");
  }
  {
    hm::HolsteinParams hp;
    hp.g = -0.6;
    const auto field = hm::components_from_state(hm::holstein_state(hp, 30), {0.1, 0.2});
    double worst = 0.0;
    for (Complex x : {Complex(0.3, -0.2), Complex(-1.1, 0.7)}) {
      const auto w = hm::holstein_components(hp, x, {0.1, 0.2});
      const auto v = field.values(x);
      for (int k = 0; k < 16; ++k) worst = std::max(worst, std::abs(w[k] - v(k)));
    }
    run.check("Holstein closed form vs generic components", worst, 0.0, 1e-8, worst < 1e-8, "oracle");
  }
  {
    hm::GateSpec gs;
    gs.kind = hm::GateKind::conditional_displacement;
    gs.alpha = Complex(0.6, 0.3);
    gs.d_max = 30;
    const hm::HybridGate gate = hm::make_gate(gs);
    double worst = 0.0;
    for (int k : {0, 4, 9}) {
      const hm::StabilizerInput in{{Complex(0.2, -0.1), 0.3, 0.5}, k};
      const auto field = hm::components_from_state(gate.apply(in.state(30)));
      for (Complex b : {Complex(0.1, 0.2), Complex(-0.5, 0.3)}) {
        for (unsigned m = 0; m < 16; ++m) {
          worst = std::max(worst, std::abs(hm::cd_expectation(b, {2, m}, gs.alpha, in) - field.raw_component(m, b)));
        }
      }
    }
    run.check("CD kernels vs generic components", worst, 0.0, 1e-8, worst < 1e-8, "oracle");
  }
  {
    const auto& st = hm::majorana_stabilizer_states();
    double worst = 0.0;
    for (const auto& s : st) worst = std::max(worst, std::abs(hm::sre_alpha(hm::FermionState::pure(s.state), 2.0)));
    run.check("12 Majorana stabilizer states are magic-free", worst, 0.0, 1e-12,
              st.size() == 12 && worst < 1e-12, "identity");
  }
  {
    const double d = std::abs(hm::cd_power_closed(0.7) - hm::cd_power_general(0.7, {}));
    run.check("CD power closed form vs general form on vacuum", d, 0.0, 1e-10, d < 1e-10, "identity");
  }
  run.results()["note"] = "fast subset; the complete suite runs under ctest";
  const int rc = run.finish("self-test");
  return rc ? rc : (run.failures() ? 1 : 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid boson-fermion magic calculator"};
  app.set_config("--config", "", "key=value configuration file merged under the flags");
  app.require_subcommand(1);
  app.set_version_flag("--version", HYBRID_MAGIC_VERSION);

  Common common;
  SweepOptions sweep;
  HolsteinOptions hol;
  EvolveOptions evo;
  ScalingOptions sc;
  BlochOptions bl;
  MutualOptions mu;
  PowerOptions pw;

  auto* susy = app.add_subcommand("susy", "magic of the free boson-fermion oscillator ground state");
  add_common(susy, common);

  auto* cat = app.add_subcommand("cat-compare", "dressed cat vs bosonic cat magic over beta");
  add_common(cat, common);
  cat->add_option("--beta-min", sweep.lo)->capture_default_str();
  cat->add_option("--beta-max", sweep.hi)->capture_default_str();
  cat->add_option("--points", sweep.points)->capture_default_str()->check(CLI::PositiveNumber);

  auto* hol_cmd = app.add_subcommand("holstein", "Lang-Firsov ground-state magic over g");
  add_common(hol_cmd, common);
  hol_cmd->add_option("--g-min", hol.g_lo)->capture_default_str();
  hol_cmd->add_option("--g-max", hol.g_hi)->capture_default_str();
  hol_cmd->add_option("--points", hol.points)->capture_default_str()->check(CLI::PositiveNumber);
  hol_cmd->add_option("--omega0", hol.omega0)->capture_default_str();
  hol_cmd->add_option("--tau", hol.tau)->capture_default_str();

  auto* evolve = app.add_subcommand("jc-evolve", "magic along a Jaynes-Cummings trajectory");
  add_common(evolve, common);
  evo.jc.add(evolve);
  evolve->add_option("--cavity", evo.cavity, "fock:n, coherent:b or cat:b")->capture_default_str();
  evolve->add_option("--atom", evo.atom, "g, e, T, H or bloch:theta,phi")->capture_default_str();
  evolve->add_option("--periods", evo.periods, "Rabi periods to cover")->capture_default_str();
  evolve->add_option("--samples", evo.samples)->capture_default_str()->check(CLI::Range(2, 100000));
  evolve->add_option("--d-max", evo.d_max, "cavity cutoff, 0 = automatic")->capture_default_str();
  evolve->add_option("--tail-tol", evo.tail_tol, "allowed weight beyond the cutoff")->capture_default_str();
  evolve->add_flag("--mutual", evo.mutual, "also report mutual magic (p = 1, Weyl)");

  auto* scaling = app.add_subcommand("jc-scaling", "max magic against the cavity excitation");
  add_common(scaling, common);
  sc.jc.add(scaling);
  scaling->add_option("--n-min", sc.n_min)->capture_default_str();
  scaling->add_option("--n-max", sc.n_max)->capture_default_str();
  scaling->add_option("--scan", sc.scan, "samples per half period for peak counting")
      ->capture_default_str()
      ->check(CLI::Range(8, 100000));
  scaling->add_option("--coherent-betas", sc.coherent_betas, "coherent amplitudes to scan")->delimiter(',');
  scaling->add_option("--coherent-d-max", sc.coherent_d_max)->capture_default_str();
  scaling->add_option("--coherent-tail-tol", sc.coherent_tail_tol)->capture_default_str();
  scaling->add_option("--coherent-tol", sc.coherent_tol, "quadrature tolerance for coherent runs")
      ->capture_default_str();

  auto* bloch = app.add_subcommand("jc-bloch", "max magic over the atomic Bloch sphere, cavity in vacuum");
  add_common(bloch, common);
  bl.jc.add(bloch);
  bloch->add_option("--theta-points", bl.theta_points)->capture_default_str();
  bloch->add_option("--phi-points", bl.phi_points)->capture_default_str();
  bloch->add_option("--periods", bl.periods)->capture_default_str()->check(CLI::PositiveNumber);

  auto* mutual = app.add_subcommand("jc-mutual", "mutual magic for Fock cavities");
  add_common(mutual, common);
  mu.jc.add(mutual);
  mutual->add_option("--n-list", mu.n_list)->delimiter(',')->capture_default_str();
  mutual->add_option("--samples", mu.samples)->capture_default_str()->check(CLI::Range(2, 100000));
  mutual->add_option("--fit-n-max", mu.fit_n_max, "largest n0 in the fit, < 3 disables it")->capture_default_str();

  auto* power = app.add_subcommand("cd-power", "non-stabilizer power of the conditional displacement");
  add_common(power, common);
  power->add_option("--alpha-max", pw.alpha_max)->capture_default_str();
  power->add_option("--points", pw.points)->capture_default_str()->check(CLI::PositiveNumber);
  power->add_option("--phase", pw.phase, "arg(alpha)")->capture_default_str();
  power->add_option("--numeric", pw.numeric, "|alpha| values for the full-pipeline estimate")
      ->delimiter(',')
      ->capture_default_str();
  power->add_option("--measure", pw.measure, "vacuum, disk, squeezing or disk-squeezing")
      ->check(CLI::IsMember({"vacuum", "disk", "squeezing", "disk-squeezing"}))
      ->capture_default_str();
  power->add_option("--samples", pw.samples)->capture_default_str()->check(CLI::PositiveNumber);
  power->add_option("--max-displacement", pw.max_displacement)->capture_default_str();
  power->add_option("--max-squeezing", pw.max_squeezing)->capture_default_str();

  auto* self = app.add_subcommand("selftest", "fast invariant checks");
  add_common(self, common);

  CLI11_PARSE(app, argc, argv);

  try {
    validate_common(common);
    int rc = 0;
    if (*susy) rc = run_susy(susy, common);
    else if (*cat) rc = run_cat_compare(cat, common, sweep);
    else if (*hol_cmd) rc = run_holstein(hol_cmd, common, hol);
    else if (*evolve) rc = run_jc_evolve(evolve, common, evo);
    else if (*scaling) rc = run_jc_scaling(scaling, common, sc);
    else if (*bloch) rc = run_jc_bloch(bloch, common, bl);
    else if (*mutual) rc = run_jc_mutual(mutual, common, mu);
    else if (*power) rc = run_cd_power(power, common, pw);
    else if (*self) rc = run_selftest(self, common);
    return rc;
  } catch (const hm::Error& e) {
    std::cerr << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }
}
