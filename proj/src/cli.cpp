#include "dirloc/cli.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "dirloc/errors.hpp"
#include "dirloc/symmetry.hpp"

namespace dirloc {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

Vec3 vec_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(std::string(what) + ": expected an array of 3 numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw ConfigError(std::string(what) + ": expected numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

json vec_to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

Observable observable_from_name(const std::string& s) {
  if (s == "identity") return Observable::Identity;
  if (s == "alpha1") return Observable::Alpha1;
  if (s == "alpha2") return Observable::Alpha2;
  if (s == "alpha3") return Observable::Alpha3;
  throw ConfigError("unknown observable '" + s + "' (identity, alpha1, alpha2, alpha3)");
}

std::string observable_name(Observable q) {
  switch (q) {
    case Observable::Alpha1: return "alpha1";
    case Observable::Alpha2: return "alpha2";
    case Observable::Alpha3: return "alpha3";
    case Observable::Identity: break;
  }
  return "identity";
}

SpinLabel spin_from_json(const json& j) {
  if (!j.is_number()) throw ConfigError("spin must be 0.5 or -0.5");
  try {
    return spin_from_value(j.get<double>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path figure1_csv(const RunConfig& cfg, int n) { return cfg.out_dir / ("rho_n" + std::to_string(n) + ".csv"); }

json summary_json(int n, const RadialSummary& s) {
  return {{"n", n},
          {"norm", s.norm},
          {"norm_table", s.norm_table},
          {"tail_estimate", s.tail_estimate},
          {"rho0", s.rho0},
          {"delta_x", s.delta_x},
          {"inside_unit_radius", s.inside_unit_radius},
          {"tail_slope", s.tail_slope}};
}

}  // namespace

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tol{
      {"projector_idempotence", 1e-12}, {"eigenspinor_residual", 1e-10}, {"pryce_spin", 1e-10},
      {"derivative_slack", 1e-3},       {"profile_norm", 1e-10},         {"profile_mean_direction", 1e-8},
      {"rn_origin", 1e-8},              {"rn_doubling", 1e-6},           {"velocity_identity", 1e-8},
      {"causality", 1e-10},             {"lightcone_leakage", 1e-3},     {"overlap_spin", 1e-10},
      {"nr_spectral", 1e-6},            {"nr_current_order", 1.8},       {"boost_addition", 1e-12},
      {"boost_composition", 1e-12},     {"norm", 1e-4},
  };
  return tol;
}

void RunConfig::validate() const {
  if (n_list.empty()) throw ConfigError("n list is empty");
  for (int n : n_list)
    if (n < 1) throw ConfigError("n values must be >= 1");
  if (!(profile.sigma > 0.0) || !std::isfinite(profile.sigma)) throw ConfigError("profile sigma must be > 0");
  if (!(label.v.norm() < 1.0)) throw ConfigError("label velocity must satisfy |v| < 1");
  if (profile.kind == ProfileKind::Gaussian && label.v.norm() != 0.0)
    throw ConfigError("a plain Gaussian profile has zero mean velocity; use kind \"boosted\"");
  if (profile.kind == ProfileKind::BoostedGaussian && (profile.v_target - label.v).norm() > 1e-15)
    throw ConfigError("profile v_target differs from label v");
  if (label.v.norm() > 0.99) throw ConfigError("label velocity above 0.99 is not supported");
  if (grid.points < 8 || (grid.points & (grid.points - 1)) != 0)
    throw ConfigError("grid N must be a power of two >= 8");
  if (grid.extent < 0.0 || !std::isfinite(grid.extent)) throw ConfigError("grid L must be >= 0 (0 = fitted)");
  if (!(grid.r_max > 0.0) || grid.r_count < 3 || grid.r_count % 2 == 0)
    throw ConfigError("radial grid needs r_max > 0 and an odd r_count >= 3");
  for (double t : times)
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("times must be finite and >= 0");
  if (!(lightcone_r0 > 0.0)) throw ConfigError("lightcone r0 must be > 0");
  for (const auto& [name, value] : tolerances) {
    if (!default_tolerances().contains(name)) throw ConfigError("unknown tolerance '" + name + "'");
    if (!(value >= 0.0) || !std::isfinite(value))
      throw ConfigError("tolerance '" + name + "' must be finite and >= 0");
  }
}

MomentumProfile RunConfig::make_profile() const {
  return label.v.norm() == 0.0 ? gaussian_profile(profile.sigma) : boosted_gaussian_profile(label.v, profile.sigma);
}

MomentumState RunConfig::make_state(int n) const {
  LocalizationLabel l = label;
  l.n = n;
  l.validate();
  return MomentumState(l, make_profile());
}

CartesianGrid RunConfig::make_grid(const MomentumState& state) const {
  if (grid.extent == 0.0) return CartesianGrid::fitted(state, grid.points);
  CartesianGrid g{grid.extent, grid.points};
  g.validate();
  return g;
}

double RunConfig::tolerance(const std::string& name) const {
  if (auto it = tolerances.find(name); it != tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  if (j.contains("profile")) {
    const json& p = j["profile"];
    const auto kind = get_or<std::string>(p, "kind", "gaussian");
    if (kind == "gaussian") cfg.profile.kind = ProfileKind::Gaussian;
    else if (kind == "boosted") cfg.profile.kind = ProfileKind::BoostedGaussian;
    else throw ConfigError("profile kind must be \"gaussian\" or \"boosted\"");
    cfg.profile.sigma = get_or(p, "sigma", cfg.profile.sigma);
    if (p.contains("v_target")) cfg.profile.v_target = vec_from_json(p["v_target"], "profile.v_target");
  }
  if (j.contains("label")) {
    const json& l = j["label"];
    if (l.contains("a")) cfg.label.a = vec_from_json(l["a"], "label.a");
    if (l.contains("v")) cfg.label.v = vec_from_json(l["v"], "label.v");
    if (l.contains("spin")) cfg.label.spin = spin_from_json(l["spin"]);
    if (l.contains("n")) cfg.n_list = get_or<std::vector<int>>(l, "n", {});
  }
  // a boosted profile without an explicit target follows the label
  if (cfg.profile.kind == ProfileKind::BoostedGaussian &&
      !(j.contains("profile") && j["profile"].contains("v_target")))
    cfg.profile.v_target = cfg.label.v;
  if (j.contains("grid")) {
    const json& g = j["grid"];
    cfg.grid.points = get_or(g, "N", cfg.grid.points);
    cfg.grid.extent = get_or(g, "L", cfg.grid.extent);
    cfg.grid.r_max = get_or(g, "r_max", cfg.grid.r_max);
    cfg.grid.r_count = get_or(g, "r_count", cfg.grid.r_count);
  }
  if (j.contains("evolve")) {
    const json& e = j["evolve"];
    cfg.times = get_or(e, "times", cfg.times);
    cfg.lightcone_r0 = get_or(e, "r0", cfg.lightcone_r0);
  }
  if (j.contains("rn")) {
    const json& r = j["rn"];
    if (r.contains("p")) cfg.rn_momentum = vec_from_json(r["p"], "rn.p");
    cfg.rn_observable = observable_from_name(get_or<std::string>(r, "Q", "identity"));
  }
  if (j.contains("overlap")) {
    const json& o = j["overlap"];
    if (o.contains("a_prime")) cfg.overlap_a = vec_from_json(o["a_prime"], "overlap.a_prime");
    if (o.contains("spin_prime")) cfg.overlap_spin = spin_from_json(o["spin_prime"]);
  }
  if (j.contains("figure1")) cfg.figure1_oracle = get_or(j["figure1"], "oracle_3d", false);
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) throw ConfigError("tolerances must be an object");
    for (const auto& [name, value] : j["tolerances"].items()) {
      if (!value.is_number()) throw ConfigError("tolerance '" + name + "' must be a number");
      cfg.tolerances[name] = value.get<double>();
    }
  }
  if (j.contains("out")) cfg.out_dir = get_or<std::string>(j, "out", "out");
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  const std::string text = read_text(path);
  try {
    return config_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

json config_to_json(const RunConfig& cfg) {
  json tol = json::object();
  for (const auto& [k, v] : cfg.tolerances) tol[k] = v;
  return {{"profile",
           {{"kind", cfg.profile.kind == ProfileKind::Gaussian ? "gaussian" : "boosted"},
            {"sigma", cfg.profile.sigma},
            {"v_target", vec_to_json(cfg.profile.v_target)}}},
          {"label",
           {{"a", vec_to_json(cfg.label.a)},
            {"v", vec_to_json(cfg.label.v)},
            {"spin", spin_value(cfg.label.spin)},
            {"n", cfg.n_list}}},
          {"grid",
           {{"N", cfg.grid.points}, {"L", cfg.grid.extent}, {"r_max", cfg.grid.r_max}, {"r_count", cfg.grid.r_count}}},
          {"evolve", {{"times", cfg.times}, {"r0", cfg.lightcone_r0}}},
          {"rn", {{"p", vec_to_json(cfg.rn_momentum)}, {"Q", observable_name(cfg.rn_observable)}}},
          {"overlap", {{"a_prime", vec_to_json(cfg.overlap_a)}, {"spin_prime", spin_value(cfg.overlap_spin)}}},
          {"figure1", {{"oracle_3d", cfg.figure1_oracle}}},
          {"tolerances", tol},
          {"out", cfg.out_dir.string()}};
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("--n: '" + item + "' is not an integer");
    }
    if (used != item.size() || n < 1) throw ConfigError("--n: '" + item + "' is not a positive integer");
    out.push_back(n);
  }
  if (out.empty()) throw ConfigError("--n: empty list");
  return out;
}

GridSpec parse_grid(const std::string& text, GridSpec base) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError("--grid expects N,L");
  try {
    std::size_t used = 0;
    const std::string ns = text.substr(0, comma), ls = text.substr(comma + 1);
    base.points = std::stoi(ns, &used);
    if (used != ns.size()) throw ConfigError("--grid: bad N");
    base.extent = std::stod(ls, &used);
    if (used != ls.size()) throw ConfigError("--grid: bad L");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("--grid expects N,L");
  }
  return base;
}

std::pair<std::string, double> parse_tolerance(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--tol expects NAME=VALUE");
  const std::string name = text.substr(0, eq), value = text.substr(eq + 1);
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(value, &used);
    if (used != value.size()) throw ConfigError("--tol: bad value '" + value + "'");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("--tol: bad value '" + value + "'");
  }
  return {name, v};
}

// ---------------------------------------------------------------------------
// verify

bool VerifyReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

json VerifyReport::to_json() const {
  json list = json::array();
  std::size_t failures = 0;
  for (const auto& c : checks) {
    list.push_back({{"name", c.name},
                    {"value", c.value},
                    {"bound", c.bound},
                    {"relation", c.at_least ? ">=" : "<="},
                    {"passed", c.passed}});
    if (!c.passed) ++failures;
  }
  return {{"passed", passed()}, {"failures", failures}, {"checks", list}};
}

namespace {

class Checker {
 public:
  explicit Checker(const RunConfig& cfg) : cfg_(cfg) {}

  void at_most(const std::string& name, double value, const std::string& tol_name) {
    add(name, value, cfg_.tolerance(tol_name), false);
  }
  void at_least(const std::string& name, double value, const std::string& tol_name) {
    add(name, value, cfg_.tolerance(tol_name), true);
  }
  void fixed(const std::string& name, double value, double bound) { add(name, value, bound, false); }

  VerifyReport report;

 private:
  void add(const std::string& name, double value, double bound, bool at_least) {
    // NaN fails either way
    const bool ok = at_least ? value >= bound : value <= bound;
    report.checks.push_back({name, value, bound, at_least, ok});
  }
  const RunConfig& cfg_;
};

std::vector<Vec3> random_momenta(std::size_t count) {
  std::mt19937_64 rng(20261018);
  std::normal_distribution<double> dir(0.0, 1.0);
  std::uniform_real_distribution<double> logp(-3.0, 2.0);
  std::vector<Vec3> out;
  out.reserve(count);
  while (out.size() < count) {
    Vec3 d(dir(rng), dir(rng), dir(rng));
    if (d.norm() < 1e-8) continue;
    out.push_back(std::pow(10.0, logp(rng)) * d.normalized());
  }
  return out;
}

void spinor_checks(Checker& c) {
  const auto ps = random_momenta(1000);
  double idem = 0.0, resid = 0.0, spin = 0.0;
  for (const Vec3& p : ps) {
    const Matrix4 P = positive_projector(p);
    idem = std::max(idem, (P * P - P).cwiseAbs().maxCoeff());
    const Matrix4 H = hamiltonian_matrix(p);
    const Matrix4 S = pryce_spin3(p);
    const double e = energy(p);
    for (SpinLabel s : {SpinLabel::Up, SpinLabel::Down}) {
      const Spinor4 u = spin_eigenspinor(p, s);
      resid = std::max({resid, (H * u - e * u).cwiseAbs().maxCoeff(), (S * u - spin_value(s) * u).cwiseAbs().maxCoeff(),
                        std::abs(u.norm() - 1.0)});
    }
    Eigen::SelfAdjointEigenSolver<Matrix4> eig(S, Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    spin = std::max({spin, std::abs(ev[0] + 0.5), std::abs(ev[1] + 0.5), std::abs(ev[2] - 0.5), std::abs(ev[3] - 0.5)});
  }
  c.at_most("projector_idempotence", idem, "projector_idempotence");
  c.at_most("eigenspinor_residual", resid, "eigenspinor_residual");
  c.at_most("pryce_spin", spin, "pryce_spin");
}

void derivative_check(Checker& c, const RunConfig& cfg) {
  const auto ps = random_momenta(1000);
  std::size_t violations = 0;
  for (SpinLabel s : {SpinLabel::Up, SpinLabel::Down})
    violations += spinor_derivative_bounds(ps, s, cfg.tolerance("derivative_slack")).violations.size();
  c.fixed("derivative_bound_violations", static_cast<double>(violations), 0.0);
}

void profile_checks(Checker& c) {
  double norm = 0.0, dir = 0.0;
  for (const Vec3& v : {Vec3(0, 0, 0), Vec3(0, 0, 0.3), Vec3(0.2, -0.4, 0.1)}) {
    const MomentumProfile f = v.norm() == 0.0 ? gaussian_profile(1.0) : boosted_gaussian_profile(v, 1.0);
    const auto pc = check_profile_conditions(f);
    norm = std::max(norm, std::abs(pc.norm - 1.0));
    dir = std::max(dir, (pc.mean_direction - v).norm());
  }
  c.at_most("profile_norm", norm, "profile_norm");
  c.at_most("profile_mean_direction", dir, "profile_mean_direction");
}

void rn_checks(Checker& c, const RunConfig& cfg) {
  const MomentumProfile f = gaussian_profile(1.0);
  const double tol = cfg.tolerance("rn_doubling");
  double origin = 0.0, step = -std::numeric_limits<double>::infinity();
  double prev = std::numeric_limits<double>::infinity();
  for (int n : cfg.n_list) {
    origin = std::max(origin, std::abs(convolution_rn(f, n, Vec3::Zero(), Observable::Identity, SpinLabel::Up, {}, tol) - 1.0));
    const double dev = std::abs(convolution_rn(f, n, Vec3(1, 0, 0), Observable::Identity, SpinLabel::Up, {}, tol) - 1.0);
    if (std::isfinite(prev)) step = std::max(step, dev - prev);
    prev = dev;
  }
  c.at_most("rn_origin", origin, "rn_origin");
  if (cfg.n_list.size() > 1) c.fixed("rn_deviation_increase", step, 0.0);
}

void velocity_check(Checker& c, const RunConfig& cfg) {
  double err = 0.0;
  for (const Vec3& v : {Vec3(0, 0, 0), Vec3(0, 0, 0.3)}) {
    LocalizationLabel l;
    l.v = v;
    l.n = cfg.n_list.front();
    const auto forms = mean_velocity_two_ways(make_localizing_state(l));
    err = std::max(err, (forms.spinor_form - forms.scalar_form).norm());
  }
  c.at_most("velocity_identity", err, "velocity_identity");
}

void causality_checks(Checker& c, const RunConfig& cfg) {
  LocalizationLabel l;
  l.v = Vec3(0, 0, 0.3);
  l.n = 2;
  const auto phi = make_localizing_state(l);
  const CartesianGrid grid = CartesianGrid::fitted(phi, 64);
  const std::vector<double> times{0.0, 0.5, 1.0};
  const auto report = evolve_report(phi, grid, times, cfg.lightcone_r0);
  double margin = -std::numeric_limits<double>::infinity(), leak = -std::numeric_limits<double>::infinity();
  for (const auto& s : report.samples) {
    margin = std::max(margin, s.causality_margin);
    leak = std::max(leak, s.leakage);
  }
  c.at_most("causality_margin", margin, "causality");
  c.at_most("lightcone_leakage", leak, "lightcone_leakage");
}

void overlap_checks(Checker& c, const RunConfig& cfg) {
  double spin = 0.0, step = -std::numeric_limits<double>::infinity();
  double prev = std::numeric_limits<double>::infinity();
  for (int n : cfg.n_list) {
    LocalizationLabel l;
    l.n = n;
    LocalizationLabel flipped = l;
    flipped.spin = flip(l.spin);
    spin = std::max(spin, std::abs(overlap(make_localizing_state(l), make_localizing_state(flipped))));
    // sigma_p = 1/4 keeps exp(-n^2 sigma_p^2 |a' - a|^2 / 4) above the rounding floor
    LocalizationLabel shifted = l;
    shifted.a = Vec3(2, 0, 0);
    const double ov = std::abs(overlap(make_localizing_state(l, 0.25), make_localizing_state(shifted, 0.25)));
    if (std::isfinite(prev)) step = std::max(step, ov - prev);
    prev = ov;
  }
  c.at_most("overlap_opposite_spin", spin, "overlap_spin");
  if (cfg.n_list.size() > 1) c.fixed("overlap_increase", step, 0.0);
}

void nr_checks(Checker& c) {
  double err = 0.0;
  for (int n : {1, 4})
    for (double t : {0.1, 1.0}) {
      NRPacketParams p{n, 1.0, Vec3(0.5, 0, 0), Vec3(0, 0, 0.5)};
      err = std::max(err, nr_spectral_max_error(p, t));
    }
  c.at_most("nr_spectral", err, "nr_spectral");
  const NRPacketParams p{1, 1.0, Vec3::Zero(), Vec3(0.3, 0, 0.5)};
  const double coarse = nr_current_max_error(p, 4.0, 41);
  const double fine = nr_current_max_error(p, 4.0, 81);
  c.at_least("nr_current_order", std::log2(coarse / fine), "nr_current_order");
}

void boost_checks(Checker& c) {
  const double half = std::atanh(0.5);
  const Vec3 v = boost_velocity(Vec3(0, 0, 0.5), half);
  c.at_most("boost_velocity_addition", std::abs(v[2] - 0.8), "boost_addition");
  PointDensityLimit limit;
  limit.point = Vec3(0.3, -0.2, 1.1);
  limit.velocity = Vec3(0.1, 0.2, -0.4);
  const auto twice = boost_label(boost_label(limit, {0.4}), {0.7});
  const auto once = boost_label(limit, {1.1});
  const double err = std::max({(twice.point - once.point).norm(), (twice.velocity - once.velocity).norm(),
                               std::abs(twice.time - once.time),
                               std::abs(twice.hyperplane_rapidity - once.hyperplane_rapidity)});
  c.at_most("boost_composition", err, "boost_composition");
}

}  // namespace

VerifyReport run_verification(const RunConfig& cfg) {
  cfg.validate();
  Checker c(cfg);
  spinor_checks(c);
  derivative_check(c, cfg);
  profile_checks(c);
  rn_checks(c, cfg);
  velocity_check(c, cfg);
  causality_checks(c, cfg);
  overlap_checks(c, cfg);
  nr_checks(c);
  boost_checks(c);
  return c.report;
}

json cmd_verify(const RunConfig& cfg) {
  const json report = run_verification(cfg).to_json();
  write_json(cfg.out_dir / "verify.json", report);
  return report;
}

// ---------------------------------------------------------------------------
// figure1

json cmd_figure1(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.label.a.norm() != 0.0 || cfg.label.v.norm() != 0.0)
    throw ConfigError("figure1 needs a spherically symmetric state (a = 0, v = 0)");
  const MomentumProfile f = gaussian_profile(cfg.profile.sigma);
  const RadialGrid grid = RadialGrid::uniform(cfg.grid.r_max, cfg.grid.r_count);
  json rows = json::array();
  for (int n : cfg.n_list) {
    const RadialDensityTable table = radial_density(f, n, grid);
    write_text(figure1_csv(cfg, n), to_csv(table));
    json row = summary_json(n, summarize(table));
    if (cfg.figure1_oracle) {
      LocalizationLabel l = cfg.label;
      l.n = n;
      const MomentumState phi(l, f);
      CartesianGrid g = cfg.make_grid(phi);
      const auto rho = density(position_state_cartesian(phi, g));
      row["inside_unit_radius_3d"] = probability_within(g, rho, Vec3::Zero(), 1.0);
      row["norm_3d"] = grid_integral(g, rho);
    }
    rows.push_back(row);
  }
  const json summary = {{"sigma", cfg.profile.sigma}, {"r_max", cfg.grid.r_max}, {"r_count", cfg.grid.r_count},
                        {"densities", rows}};
  write_json(cfg.out_dir / "figure1_summary.json", summary);
  return summary;
}

json figure1_summary_from_files(const RunConfig& cfg) {
  json rows = json::array();
  for (int n : cfg.n_list) {
    const RadialDensityTable table = radial_table_from_csv(read_text(figure1_csv(cfg, n)), n);
    rows.push_back(summary_json(n, summarize(table)));
  }
  return {{"sigma", cfg.profile.sigma}, {"r_max", cfg.grid.r_max}, {"r_count", cfg.grid.r_count},
          {"densities", rows}};
}

// ---------------------------------------------------------------------------
// evolve, rn, moments, overlap

json cmd_evolve(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.times.empty()) throw ConfigError("evolve needs at least one time");
  const int n = cfg.n_list.front();
  const MomentumState phi = cfg.make_state(n);
  const CartesianGrid grid = cfg.make_grid(phi);
  if (grid.nyquist() < phi.p_nyquist())
    throw NyquistError("grid N=" + std::to_string(grid.points) + " cannot resolve the n=" + std::to_string(n) +
                       " state at L=" + std::to_string(grid.extent));
  std::size_t slice = 0;
  const auto report = evolve_report(phi, grid, cfg.times, cfg.lightcone_r0, [&](const FourVectorDensity& d) {
    write_text(cfg.out_dir / ("slice_t" + std::to_string(slice++) + ".csv"), density_slice_csv(d, phi.label().a[2]));
  });
  json samples = json::array();
  for (const auto& s : report.samples)
    samples.push_back({{"t", s.time},
                       {"norm", s.norm},
                       {"mean_x", vec_to_json(s.mean_x)},
                       {"delta_x", s.delta_x},
                       {"mean_velocity", vec_to_json(s.mean_velocity)},
                       {"causality_margin", s.causality_margin},
                       {"leakage", s.leakage}});
  const json out = {{"n", n},
                    {"grid", {{"N", grid.points}, {"L", grid.extent}}},
                    {"r0", report.r0},
                    {"norm_drift", report.norm_drift()},
                    {"samples", samples}};
  write_json(cfg.out_dir / "evolve_report.json", out);
  return out;
}

json cmd_rn(const RunConfig& cfg) {
  cfg.validate();
  const MomentumProfile f = cfg.make_profile();
  double target = 1.0;
  if (cfg.rn_observable != Observable::Identity)
    target = cfg.label.v[static_cast<int>(cfg.rn_observable) - static_cast<int>(Observable::Alpha1)];
  std::ostringstream csv;
  csv.precision(17);
  csv << "n,re,im,deviation\n";
  json rows = json::array();
  for (int n : cfg.n_list) {
    const Complex r = convolution_rn(f, n, cfg.rn_momentum, cfg.rn_observable, cfg.label.spin, {},
                                     cfg.tolerance("rn_doubling"));
    const double dev = std::abs(r - target);
    csv << n << ',' << r.real() << ',' << r.imag() << ',' << dev << '\n';
    rows.push_back({{"n", n}, {"re", r.real()}, {"im", r.imag()}, {"deviation", dev}});
  }
  write_text(cfg.out_dir / "rn.csv", csv.str());
  return {{"p", vec_to_json(cfg.rn_momentum)}, {"Q", observable_name(cfg.rn_observable)}, {"target", target},
          {"rows", rows}};
}

json cmd_moments(const RunConfig& cfg) {
  cfg.validate();
  json rows = json::array();
  for (int n : cfg.n_list) {
    const MomentSet m = momentum_moments(cfg.make_state(n));
    rows.push_back({{"n", n},
                    {"norm", m.norm},
                    {"mean_x", vec_to_json(m.mean_x)},
                    {"delta_x", m.delta_x},
                    {"mean_velocity", vec_to_json(m.mean_velocity)}});
  }
  const json out = {{"a", vec_to_json(cfg.label.a)}, {"v", vec_to_json(cfg.label.v)}, {"moments", rows}};
  write_json(cfg.out_dir / "moments.json", out);
  return out;
}

json cmd_overlap(const RunConfig& cfg) {
  cfg.validate();
  json rows = json::array();
  for (int n : cfg.n_list) {
    const MomentumState phi = cfg.make_state(n);
    LocalizationLabel other = phi.label();
    other.a = cfg.overlap_a;
    other.spin = cfg.overlap_spin;
    const Complex ov = overlap(phi, MomentumState(other, phi.profile()));
    rows.push_back({{"n", n}, {"re", ov.real()}, {"im", ov.imag()}, {"abs", std::abs(ov)}});
  }
  const json out = {{"a", vec_to_json(cfg.label.a)},
                    {"a_prime", vec_to_json(cfg.overlap_a)},
                    {"spin", spin_value(cfg.label.spin)},
                    {"spin_prime", spin_value(cfg.overlap_spin)},
                    {"overlaps", rows}};
  write_json(cfg.out_dir / "overlap.json", out);
  return out;
}

}  // namespace dirloc
