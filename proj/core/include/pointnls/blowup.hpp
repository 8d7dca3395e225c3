#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pointnls/cn_solver.hpp"
#include "pointnls/diagnostics.hpp"
#include "pointnls/params.hpp"
#include "pointnls/wave_state.hpp"

namespace pointnls {

/// Thrown when a series does not grow by a decade in ||psi_x||.
class InsufficientGrowth : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Records from the last one at or below peak/10 (in sqrt(kinetic)) up to the peak record.
/// Throws InsufficientGrowth when the trace never sits a decade below its peak.
std::vector<DiagnosticsRecord> growth_window(std::span<const DiagnosticsRecord> trace);

struct RateFit {
  double t_star = 0.0;
  double alpha = 0.0;
  double log_constant = 0.0;
  double residual = 0.0;  // RMS of the log-space residuals
  std::size_t points = 0;
};

/// Least-squares fit of log sqrt(kinetic) = -alpha log(t* - t) + const over the growth window,
/// t* by golden-section search on log(t* - t_last) within (t_last, t_last + 10 (t_last - t_first)].
RateFit fit_blowup_rate(std::span<const DiagnosticsRecord> trace);

/// sqrt(kinetic) (t* - t)^{(1 - sigma_c)/2} over records with t < t* and
/// sqrt(kinetic) >= |energy|^{1/2}.
std::vector<std::pair<double, double>> lower_bound_margins(std::span<const DiagnosticsRecord> records,
                                                           const PhysicsParams& params, double t_star);

/// Minimum of lower_bound_margins; throws DomainError if no record survives the filter.
double check_rate_lower_bound(std::span<const DiagnosticsRecord> records, const PhysicsParams& params,
                              double t_star);

/// log(e + ||psi_x||).
double default_concentration_mu(double kinetic);

/// Trapezoid integral of |psi|^2 over |x| <= mu / ||psi_x||, the window snapped outward to
/// grid nodes. Throws ResolutionError when the window is narrower than one cell.
double mass_concentration(const WaveState& state, double mu);

enum class Verdict { Blowup, Global, ResolutionLimited };
std::string to_string(Verdict verdict);

struct BlowupReport {
  Verdict verdict = Verdict::Global;
  StopReason stop_reason = StopReason::ReachedEnd;
  double peak_time = 0.0;
  double peak_growth = 1.0;  // sqrt(kinetic_peak / kinetic_0)
  std::optional<double> t_star_estimate;
  std::optional<double> rate_exponent;
  std::optional<double> rate_fit_residual;
  std::optional<double> lower_bound_margin;
  std::optional<double> concentration_value;
  std::optional<double> proximity_epsilon;
};

/// Aggregates the blow-up diagnostics. `peak_state` is the state at the largest-kinetic
/// record (the last resolved state of a blow-up run). Blowup on blowup_stop, ResolutionLimited
/// on resolution_stop or whenever the trace grew by a decade without a blowup stop,
/// Global otherwise. Concentration and proximity are filled for p = 3 non-global runs.
BlowupReport analyze(std::span<const DiagnosticsRecord> trace, const WaveState& peak_state,
                     const PhysicsParams& params, StopReason stop_reason);

}  // namespace pointnls
