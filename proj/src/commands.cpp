#include "aqg/commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "aqg/solvers.hpp"

namespace aqg {

namespace {

bool write_json(const std::string& path, const json& j, std::ostream& err) {
  std::ofstream f(path);
  if (!f) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  f << j.dump(2) << "\n";
  return bool(f);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string default_report_path(const std::string& input, const std::string& suffix) {
  return std::filesystem::path(input).stem().string() + suffix;
}

RunParameters resolve_parameters(const InputSpec& in, const VerifyArgs& args) {
  RunParameters run;
  run.spin_cap2 = in.spin_cap2;
  if (in.tolerance) run.tolerance = *in.tolerance;
  if (in.seed) run.seed = *in.seed;
  if (in.dense_threshold) run.dense_threshold = *in.dense_threshold;
  if (args.tolerance) run.tolerance = *args.tolerance;
  if (args.seed) run.seed = *args.seed;
  if (args.dense_threshold) run.dense_threshold = *args.dense_threshold;
  if (args.spin_cap2) run.spin_cap2 = *args.spin_cap2;
  return run;
}

MnwReport verify_spec(const InputSpec& in, const RunParameters& run) {
  if (in.is_block()) {
    BlockQuantumGroup g(in.q);
    BlockOptions opt;
    // The block engine works at its own floor: the per-block solves lose a few digits.
    opt.tol = std::max(run.tolerance, 1e-8);
    opt.seed = run.seed;
    return run_mnw_blocks(g, run.spin_cap2, opt);
  }
  MnwOptions opt;
  opt.gns.tol = run.tolerance;
  opt.gns.seed = run.seed;
  opt.gns.dense_threshold = run.dense_threshold;
  opt.automorphisms = in.automorphisms;
  opt.grouplikes = in.grouplikes;
  return run_mnw(*in.pres, opt);
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  InputSpec in;
  RunParameters run;
  try {
    in = load_input(args.input);
    run = resolve_parameters(in, args);
    if (!(run.tolerance > 0.0)) throw Error(ErrorCode::Schema, "tolerance must be positive");
    if (run.spin_cap2 < 0) throw Error(ErrorCode::Schema, "spin_cap2 must be non-negative");
    if (in.is_block() && 2 * run.spin_cap2 > 40)
      throw Error(ErrorCode::Schema, "spin_cap2 above 20 exceeds the block budget");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  auto t0 = std::chrono::steady_clock::now();
  MnwReport r;
  try {
    r = verify_spec(in, run);
  } catch (const Error& e) {
    // Automorphism and grouplike inputs are validated during the run.
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "verify: " << seconds_since(t0) << " s\n";
  const std::string path = args.report.empty() ? default_report_path(args.input, "-report.json") : args.report;
  if (!write_json(path, report_to_json(in, run, r), err)) return 2;
  if (!args.quiet) out << text_summary(in, r) << "report: " << path << "\n";
  return r.pass() ? 0 : 1;
}

int cmd_dual(const DualArgs& args, std::ostream& out, std::ostream& err) {
  try {
    InputSpec in = load_input(args.input);
    if (in.is_block())
      throw Error(ErrorCode::Unsupported, "the dual of the block engine is not a finite presentation");
    QuantumGroupPresentation p = with_antipode(*in.pres);
    HaarData haar = solve_haar(p);
    DualQuantumGroup dual = build_dual(p, haar);
    const std::string path = args.output.empty() ? default_report_path(args.input, "-dual.json") : args.output;
    if (!write_json(path, presentation_to_json(dual.pres), err)) return 2;
    out << "dual: dim " << dual.pres.dim() << " written to " << path << "\n";
    if (args.check) {
      Biduality b = check_biduality(p, haar, kDefaultTol);
      const bool ok = b.residual <= kDefaultTol;
      out << "biduality residual " << b.residual << (ok ? " PASS" : " FAIL") << "\n";
      return ok ? 0 : 1;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Schema || e.code() == ErrorCode::Unsupported ? 2 : 1;
  }
}

int cmd_info(const InfoArgs& args, std::ostream& out, std::ostream& err) {
  try {
    InputSpec in = load_input(args.input);
    if (in.is_block()) {
      BlockQuantumGroup g(in.q);
      BlockScalars sc = block_scalars(g, in.spin_cap2);
      out << "block engine, q " << in.q << ", spin_cap2 " << in.spin_cap2 << ", delta nontrivial\n";
      out << "mu " << sc.mu.real() << ", nu " << sc.nu << "\n";
      return 0;
    }
    QuantumGroupModel m = build_model(*in.pres);
    ModularSuite s = build_modular_suite(m);
    const auto& p = m.pres;
    const double tol = kDefaultTol;
    const bool delta_trivial = (m.modular.delta - p.algebra.unit).norm() <= 1e-8;
    out << "dim " << p.dim() << ", " << (is_commutative(p.algebra, tol) ? "commutative" : "noncommutative") << ", "
        << (is_cocommutative(p, tol) ? "cocommutative" : "noncocommutative") << ", "
        << (delta_trivial ? "delta = 1" : "delta nontrivial") << "\n";
    out << "mu " << s.mu.real() << ", nu " << s.nu << "\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Schema ? 2 : 1;
  }
}

}  // namespace aqg
