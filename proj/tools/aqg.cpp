#include <iostream>

#include <CLI11.hpp>

#include "aqg/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Finite quantum groups and the block model of dual SU_q(2): verification and duality"};
  app.require_subcommand(1);

  aqg::VerifyArgs verify;
  double tolerance = aqg::kDefaultTol;
  std::uint64_t seed = 42;
  int dense_threshold = 128, spin_cap2 = 3;
  auto* v = app.add_subcommand("verify", "Run the axiom report and the verification suites");
  v->add_option("input", verify.input, "Input JSON file")->required()->check(CLI::ExistingFile);
  auto* tol_opt = v->add_option("--tolerance", tolerance, "Residual tolerance (default 1e-9)");
  auto* seed_opt = v->add_option("--seed", seed, "Seed for sampled checks (default 42)");
  auto* dense_opt = v->add_option("--dense-threshold", dense_threshold,
                                  "Largest Hilbert space dimension handled densely (default 128)");
  auto* cap_opt = v->add_option("--spin-cap2", spin_cap2, "Twice the largest spin for the block engine");
  v->add_option("--report", verify.report, "Report path (default <input stem>-report.json)");
  v->add_flag("--quiet", verify.quiet, "Only write the report");

  aqg::DualArgs dual;
  auto* d = app.add_subcommand("dual", "Write the dual presentation as structure constants");
  d->add_option("input", dual.input, "Input JSON file")->required()->check(CLI::ExistingFile);
  d->add_option("--output", dual.output, "Output path (default <input stem>-dual.json)");
  d->add_flag("--check", dual.check, "Also check biduality");

  aqg::InfoArgs info;
  auto* i = app.add_subcommand("info", "Print basic structure and the scaling constants");
  i->add_option("input", info.input, "Input JSON file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*v) {
    if (*tol_opt) verify.tolerance = tolerance;
    if (*seed_opt) verify.seed = seed;
    if (*dense_opt) verify.dense_threshold = dense_threshold;
    if (*cap_opt) verify.spin_cap2 = spin_cap2;
    return aqg::cmd_verify(verify, std::cout, std::cerr);
  }
  if (*d) return aqg::cmd_dual(dual, std::cout, std::cerr);
  return aqg::cmd_info(info, std::cout, std::cerr);
}
