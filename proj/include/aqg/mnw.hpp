#pragma once

// Axiom report for the C*-algebraic quantum group built from a presentation:
// (B, Delta, phi, tau, R) with density, KMS, invariance and covariance entries.

#include <cstdint>
#include <string>
#include <vector>

#include "aqg/duality.hpp"
#include "aqg/suq2.hpp"

namespace aqg {

// Entry names of the axiom catalogue, in report order.
const std::vector<std::string>& mnw_catalogue();

struct AutomorphismInput {
  std::string label;
  Mat alpha;  // coordinates, column i holds alpha(e_i)
  Mat beta;
};

struct AutomorphismResult {
  std::string label;
  double r = 1.0;  // phi alpha = r phi
  CheckList checks;
};

struct GrouplikeResult {
  std::string label;
  double lambda = 1.0;  // sigma_t(u) = lambda^{it} u
  bool exact = false;   // Delta(u) = u (x) u
  CheckList checks;
};

struct MnwOptions {
  GnsOptions gns;
  std::vector<AutomorphismInput> automorphisms;
  std::vector<std::pair<std::string, Vec>> grouplikes;
  bool engine_suites = true;  // also run the gns, modular and duality suites
};

struct MnwReport {
  std::string engine;  // "finite" or "block"
  CheckList axioms;    // one entry per catalogue name
  CheckList suites;
  cplx mu{1.0, 0.0};
  double nu = 1.0;
  double gamma = 1.0;
  std::vector<AutomorphismResult> automorphisms;
  std::vector<GrouplikeResult> grouplikes;
  std::uint64_t seed = 42;
  double tol = kDefaultTol;

  bool pass() const;
};

// Never throws for well-formed arrays: build failures become failed entries.
MnwReport run_mnw(const QuantumGroupPresentation& pres, const MnwOptions& opt = {});
MnwReport run_mnw_blocks(const BlockQuantumGroup& g, int cap_two_l, const BlockOptions& opt);

// r with phi alpha = r phi, and the commutations with sigma, tau and R.
// Throws PreconditionFailed unless alpha, beta are *-automorphisms with Delta alpha = (beta (x) alpha) Delta.
AutomorphismResult automorphism_analysis(const QuantumGroupModel& m, const ModularSuite& s,
                                         const Mat& alpha, const Mat& beta);

// lambda from phi(u x) = lambda phi(x u) for a unitary u with Delta(u) = v (x) u.
// Throws NotGrouplike if no such v exists.
GrouplikeResult grouplike_analysis(const QuantumGroupModel& m, const ModularSuite& s, const Vec& u);
// Same on the block engine; u must be given on every block of spin <= 2 cap.
GrouplikeResult block_grouplike_analysis(const BlockQuantumGroup& g, int cap_two_l, const BlockElement& u,
                                         const BlockOptions& opt);

// mu from phi S^2 = mu phi and nu from phi tau_1 = nu phi on blocks of spin <= cap, without the
// sampled suite. gamma is left at 1.
BlockScalars block_scalars(const BlockQuantumGroup& g, int cap_two_l);

}  // namespace aqg
