#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slemst/harness.hpp"
#include "slemst/observables.hpp"
#include "slemst/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

int run_command(const std::string& path, std::optional<std::uint64_t> seed, std::optional<unsigned> workers,
                std::optional<std::string> out) {
  std::ifstream in(path);
  if (!in) throw slemst::ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  slemst::ExperimentConfig cfg = slemst::parse_config(buf.str());
  if (seed) cfg.seed = *seed;
  if (workers) cfg.workers = *workers;
  if (out) cfg.out = *out;
  const auto result = slemst::run_experiment(cfg);
  for (const auto& f : result.files) std::cout << f.string() << '\n';
  return kExitOk;
}

int verify_command(std::uint64_t seed) {
  bool ok = true;
  for (const auto& r : slemst::verify::run_all(seed)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)";
    if (!r.detail.empty()) std::cout << ": " << r.detail;
    std::cout << '\n';
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitRuntime;
}

int schramm_command(const std::vector<double>& kappas, int points, std::optional<std::string> out) {
  if (points < 2) throw slemst::ConfigError("--points must be >= 2");
  for (double k : kappas)
    if (!(k > 0.0 && k < 8.0)) throw slemst::ConfigError("--kappa values must lie in (0,8)");
  std::ofstream file;
  if (out) {
    file.open(*out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + *out);
  }
  std::ostream& os = out ? file : std::cout;
  os << "kappa,t,p_left\r\n";
  for (double k : kappas) {
    for (int i = 0; i < points; ++i) {
      const double t = -std::numbers::pi / 2 + std::numbers::pi * i / (points - 1);
      os << slemst::detail::fmt(k) << ',' << slemst::detail::fmt(t) << ','
         << slemst::detail::fmt(slemst::schramm_lpp(t, k)) << "\r\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum spanning tree paths in disordered planar lattices"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::string> out;
  app.add_option("--seed", seed, "Master seed (overrides the config)");
  app.add_option("--workers", workers, "Worker threads (overrides the config)")->check(CLI::Range(1u, 1024u));
  app.add_option("--out", out, "Output directory for run, output file for schramm");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Config file")->required();

  app.add_subcommand("verify", "Run the oracle and property suites");

  std::vector<double> kappas{8.0 / 3.0, 4.0, 6.0};
  int points = 101;
  auto* schramm = app.add_subcommand("schramm", "Tabulate the left-passage probability as CSV");
  schramm->add_option("--kappa", kappas, "kappa values")->delimiter(',');
  schramm->add_option("--points", points, "Grid points over [-pi/2, pi/2]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return run_command(config_path, seed, workers, out);
    if (app.got_subcommand("verify")) return verify_command(seed.value_or(1));
    if (*schramm) return schramm_command(kappas, points, out);
  } catch (const slemst::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
