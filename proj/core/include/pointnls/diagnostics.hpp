#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>

#include "pointnls/params.hpp"
#include "pointnls/virial_weight.hpp"
#include "pointnls/wave_state.hpp"

namespace pointnls {

/// Per-time snapshot written by the solvers. energy = kinetic/2 - |boundary|^{p+1}/(p+1).
struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double kinetic = 0.0;
  Complex boundary{};
  double eta = 0.0;  // eta for p > 3, kinetic / ||phi0'||^2 otherwise
  double virial_moment = 0.0;
  double virial_first = 0.0;
  double virial_rhs = 0.0;
  double virial_rhs_scale = 0.0;    // sum of the magnitudes of the rhs terms
  double virial_first_scale = 0.0;  // sum of the magnitudes of the first-derivative terms
  double dt_used = 0.0;
  bool scheduled = true;  // false for growth-triggered records between diagnostic times

  double boundary_amp() const { return std::abs(boundary); }
};

/// E_h = h1_seminorm_sq / 2 - |psi_center|^{p+1} / (p+1).
double energy(const WaveState& state, const PhysicsParams& params);

/// I(u) = ||u||^2 ||u'||^2 / |u(0)|^4 with the discrete norms. Throws ZeroCenterValue.
double gn_functional(const WaveState& state);

/// Scale-invariant eta; defined for p > 3 only.
double eta(const WaveState& state, const PhysicsParams& params);

/// eta for p > 3, kinetic / ||phi0'||^2 otherwise.
double eta_or_surrogate(const WaveState& state, const PhysicsParams& params);

/// M(psi)^q E(psi) / (M(phi0)^q E(phi0)) with q = (1 - sigma_c)/sigma_c; p > 3 only.
double threshold_ratio(const WaveState& state, const PhysicsParams& params);

/// f(eta) = (2(p+1)/(p-3)) (eta^2/2 - (2/(p+1)) eta^{(p+1)/2}); p > 3 only.
double dichotomy_f(double eta_value, const PhysicsParams& params);
double dichotomy_f_derivative(double eta_value, const PhysicsParams& params);

struct DichotomyRoots {
  std::optional<double> eta_minus;  // absent for y < 0
  double eta_plus;
};

/// Solutions of f(eta) = y for y < 1, by bisection.
DichotomyRoots dichotomy_roots(double y, const PhysicsParams& params);

enum class Prediction { GlobalPredicted, BlowupPredicted, Indeterminate };
std::string to_string(Prediction prediction);

Prediction classify_initial_data(const WaveState& state, const PhysicsParams& params);

struct VirialTerms {
  double moment = 0.0;
  double first = 0.0;
  double rhs = 0.0;
  double rhs_scale = 0.0;
  double first_scale = 0.0;
};

/// Weighted moment sum a|psi|^2 h, its time derivative 2 Im sum a' conj(psi) psi_x h and the
/// local virial right-hand side 4 sum a''|psi_x|^2 h - 2 a''(0)|psi(0)|^{p+1} - sum a''''|psi|^2 h.
/// Differences live on cell midpoints.
VirialTerms virial_terms(const WaveState& state, const PhysicsParams& params, const VirialWeight& weight);

double local_virial_rhs(const WaveState& state, const PhysicsParams& params, const VirialWeight& weight);
double virial_moment(const WaveState& state, const VirialWeight& weight);
double virial_first(const WaveState& state, const VirialWeight& weight);

struct VirialCheck {
  double second_rel_error = 0.0;  // max |D^2 V - rhs| / max rhs_scale over the window
  double first_rel_error = 0.0;   // max |D V - first| / max first_scale over the window
  std::size_t points = 0;         // interior records compared
};

/// Centered differences of virial_moment against the recorded rhs and first-derivative terms.
/// Uses scheduled records only, which must be uniformly spaced. Throws DomainError with fewer
/// than 5 of them.
VirialCheck verify_local_virial(std::span<const DiagnosticsRecord> trace);

DiagnosticsRecord make_record(const WaveState& state, const PhysicsParams& params,
                              const VirialWeight* weight, double dt_used);

}  // namespace pointnls
