#pragma once

// Verification suites run over a grid: irrotationality, Cauchy-Riemann,
// continuity, circulation quantisation, and state/potential consistency.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qflow/circulation.hpp"
#include "qflow/kinematics.hpp"
#include "qflow/numerics.hpp"
#include "qflow/potentials.hpp"
#include "qflow/states.hpp"

namespace qflow {

enum class Suite { irrotational, cauchy_riemann, continuity, quantization, consistency, all };

// Throws Error(invalid_argument) on an unknown name.
Suite parse_suite(std::string_view name);
std::string_view to_string(Suite s) noexcept;

enum class CheckStatus { pass, fail, skipped };

struct VerificationCheck {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::pass;
  std::size_t points = 0;   // points that contributed
  std::size_t skipped = 0;  // singular points left out
  std::optional<double> fitted_order;
  bool floor_flagged = false;
  std::string note;

  bool passed() const noexcept { return status != CheckStatus::fail; }
};

struct VerificationReport {
  std::vector<VerificationCheck> checks;

  bool all_passed() const noexcept;
};

/// Runs one suite (or all) for the state over the grid's non-excluded nodes.
/// Singular points are skipped and counted; any other evaluation error
/// propagates.
VerificationReport verify(const StateSpec& state, const Grid2D& grid, Suite suite,
                          const Tolerances& tol = {}, const BranchCut& cut = {});

}  // namespace qflow
