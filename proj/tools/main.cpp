#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "logeuler/checks.hpp"
#include "logeuler/serialization.hpp"

namespace fs = std::filesystem;

namespace {

// exit codes: 0 pass, 2 failed checks or inadmissible data,
// 3 conservative-variable recovery failure, 64 configuration/usage errors
constexpr int kExitCheckFailed = 2;
constexpr int kExitRecovery = 3;
constexpr int kExitConfig = 64;

struct CommonArgs {
  std::string eos_file;
  std::string scenario_file;
  int samples = 1000;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  double tol_scale = 1.0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_eos, bool with_scenario) {
  if (with_eos)
    cmd->add_option("--eos", args.eos_file, "EOS file (JSON); default logarithmic K1=1, c=1");
  if (with_scenario)
    cmd->add_option("--scenario", args.scenario_file, "scenario file (JSON)");
  cmd->add_option("--samples", args.samples, "number of sampled states")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", args.seed, "PRNG seed (splitmix64)");
  cmd->add_option("--out", args.out_dir, "output directory for reports and CSVs");
  cmd->add_option("--tol-scale", args.tol_scale, "multiplier on all upper-bound tolerances")
      ->check(CLI::PositiveNumber);
}

logeuler::SuiteOptions make_options(const CommonArgs& args) {
  logeuler::SuiteOptions opts;
  opts.samples = args.samples;
  opts.seed = args.seed;
  opts.tol = logeuler::Tolerances{}.scaled(args.tol_scale);
  opts.out_dir = fs::path(args.out_dir);
  return opts;
}

logeuler::EosSpec resolve_eos(const CommonArgs& args) {
  if (args.eos_file.empty()) return logeuler::EosSpec::logarithmic();
  return logeuler::load_eos_file(args.eos_file);
}

int finish(const logeuler::Report& report, const CommonArgs& args) {
  fs::create_directories(args.out_dir);
  logeuler::write_report_json(report, fs::path(args.out_dir) / "report.json");
  logeuler::print_summary(report, std::cout);
  return report.pass() ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"logeuler: barotropic EOS family, symmetric-hyperbolic "
               "reformulation of the relativistic Euler system, and a 1D "
               "verification solver"};
  app.require_subcommand(1);

  CommonArgs check_args, verify_args, equiv_args, run_args;

  CLI::App* check = app.add_subcommand(
      "check-eos", "derivative, family-membership and lower-bound suites");
  add_common(check, check_args, true, false);

  CLI::App* verify = app.add_subcommand(
      "verify-symmetrizer", "SPD, Jacobian, bijection and flux-matrix suites");
  add_common(verify, verify_args, true, false);

  CLI::App* equiv = app.add_subcommand(
      "equivalence", "independent Euler/symmetric integrations compared through the map");
  add_common(equiv, equiv_args, false, true);

  CLI::App* run = app.add_subcommand("run", "1D relativistic finite-volume run");
  add_common(run, run_args, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (check->parsed()) {
      const logeuler::EosSpec eos = resolve_eos(check_args);
      return finish(logeuler::run_eos_checks(eos, make_options(check_args)), check_args);
    }
    if (verify->parsed()) {
      const logeuler::EosSpec eos = resolve_eos(verify_args);
      return finish(logeuler::run_symmetrizer_checks(eos, make_options(verify_args)),
                    verify_args);
    }
    if (equiv->parsed()) {
      logeuler::EquivalenceScenario scenario;  // stock: logarithmic, 64 cells
      if (!equiv_args.scenario_file.empty())
        scenario = logeuler::load_equivalence_scenario(equiv_args.scenario_file);
      return finish(logeuler::run_equivalence_checks(scenario, make_options(equiv_args)),
                    equiv_args);
    }
    if (run->parsed()) {
      logeuler::HydroScenario scenario;  // stock: smooth wave, 256 cells
      if (!run_args.scenario_file.empty())
        scenario = logeuler::load_hydro_scenario(run_args.scenario_file);
      return finish(logeuler::run_hydro_checks(scenario, make_options(run_args)),
                    run_args);
    }
  } catch (const logeuler::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const logeuler::RecoveryFailure& e) {
    std::cerr << "recovery failure: " << e.what() << "\n";
    return kExitRecovery;
  } catch (const logeuler::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitConfig;
}
