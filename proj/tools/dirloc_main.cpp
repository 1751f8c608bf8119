// dirloc: build localizing Dirac states, emit plot data, run the check suite.
//
// Exit codes: 0 success, 1 verification or numerical failure, 2 config error.

#include <iostream>

#include <CLI11.hpp>

#include "dirloc/cli.hpp"
#include "dirloc/errors.hpp"

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::string n_list;
  std::string grid;
  std::vector<std::string> tol;
};

dirloc::RunConfig resolve(const Flags& f) {
  dirloc::RunConfig cfg = f.config.empty() ? dirloc::RunConfig{} : dirloc::load_config(f.config);
  if (!f.out.empty()) cfg.out_dir = f.out;
  if (!f.n_list.empty()) cfg.n_list = dirloc::parse_n_list(f.n_list);
  if (!f.grid.empty()) cfg.grid = dirloc::parse_grid(f.grid, cfg.grid);
  for (const auto& t : f.tol) {
    const auto [name, value] = dirloc::parse_tolerance(t);
    cfg.tolerances[name] = value;
  }
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localizing sequences of positive-energy Dirac states"};
  app.require_subcommand(1);
  Flags flags;

  using Command = nlohmann::json (*)(const dirloc::RunConfig&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands{
      {"figure1", "radial densities for the n list (CSV per n + summary JSON)", dirloc::cmd_figure1},
      {"verify", "run the invariant suite; exit 1 on any failed check", dirloc::cmd_verify},
      {"evolve", "free evolution on a Cartesian grid (report JSON + slice CSVs)", dirloc::cmd_evolve},
      {"rn", "R_n(p) table over the n list", dirloc::cmd_rn},
      {"moments", "<x>, Delta_x and <xdot> over the n list", dirloc::cmd_moments},
      {"overlap", "(psi_n, psi'_n) over the n list", dirloc::cmd_overlap},
  };
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "JSON config file");
    sub->add_option("--out", flags.out, "output directory");
    sub->add_option("--n", flags.n_list, "comma-separated n list, e.g. 5,7,10");
    sub->add_option("--grid", flags.grid, "Cartesian grid as N,L (L = 0 fits L to the state)");
    sub->add_option("--tol", flags.tol, "tolerance override NAME=VALUE (repeatable)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const dirloc::RunConfig cfg = resolve(flags);
    for (const auto& [name, help, fn] : commands) {
      if (!app.got_subcommand(name)) continue;
      const nlohmann::json result = fn(cfg);
      std::cout << result.dump(2) << '\n';
      if (name == "verify" && !result.at("passed").get<bool>()) return 1;
    }
    return 0;
  } catch (const dirloc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const dirloc::NyquistError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
