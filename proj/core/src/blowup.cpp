#include "pointnls/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pointnls/errors.hpp"
#include "pointnls/proximity.hpp"

namespace pointnls {
namespace {

struct LineFit {
  double slope;
  double intercept;
  double ssr;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  const double intercept = my - slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (slope * x[i] + intercept);
    ssr += r * r;
  }
  return {slope, intercept, ssr};
}

std::size_t peak_index(std::span<const DiagnosticsRecord> trace) {
  std::size_t peak = 0;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].kinetic > trace[peak].kinetic) peak = i;
  }
  return peak;
}

}  // namespace

std::vector<DiagnosticsRecord> growth_window(std::span<const DiagnosticsRecord> trace) {
  if (trace.empty()) throw InsufficientGrowth("empty trace");
  const std::size_t peak = peak_index(trace);
  // sqrt(k) <= sqrt(k_peak)/10 is k <= k_peak/100.
  const double floor = trace[peak].kinetic / 100.0;
  for (std::size_t i = peak + 1; i-- > 0;) {
    if (trace[i].kinetic <= floor) {
      return {trace.begin() + static_cast<std::ptrdiff_t>(i), trace.begin() + static_cast<std::ptrdiff_t>(peak) + 1};
    }
  }
  throw InsufficientGrowth("||psi_x|| grows by less than a decade");
}

RateFit fit_blowup_rate(std::span<const DiagnosticsRecord> trace) {
  const std::vector<DiagnosticsRecord> window = growth_window(trace);
  const double t_first = window.front().t;
  const double t_last = window.back().t;
  const double span = t_last - t_first;
  if (!(span > 0.0) || window.size() < 3) throw InsufficientGrowth("fit window has too few records");

  std::vector<double> y(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) y[i] = 0.5 * std::log(window[i].kinetic);
  std::vector<double> x(window.size());

  auto fit_at = [&](double log_gap) {
    const double t_star = t_last + std::exp(log_gap);
    for (std::size_t i = 0; i < window.size(); ++i) x[i] = std::log(t_star - window[i].t);
    return least_squares(x, y);
  };

  // Coarse scan in log(t* - t_last), then golden-section refinement around the best cell.
  const double lo = std::log(span * 1e-9);
  const double hi = std::log(span * 10.0);
  constexpr int kScan = 400;
  int best = 0;
  double best_ssr = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kScan; ++k) {
    const double ssr = fit_at(lo + (hi - lo) * k / kScan).ssr;
    if (ssr < best_ssr) {
      best_ssr = ssr;
      best = k;
    }
  }
  const double step = (hi - lo) / kScan;
  double a = lo + step * std::max(best - 1, 0);
  double b = lo + step * std::min(best + 1, kScan);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fit_at(c).ssr;
  double fd = fit_at(d).ssr;
  for (int it = 0; it < 300 && b - a > 1e-15; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fit_at(c).ssr;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fit_at(d).ssr;
    }
  }
  const double log_gap = 0.5 * (a + b);
  const LineFit line = fit_at(log_gap);
  RateFit out;
  out.t_star = t_last + std::exp(log_gap);
  out.alpha = -line.slope;
  out.log_constant = line.intercept;
  out.residual = std::sqrt(line.ssr / static_cast<double>(window.size()));
  out.points = window.size();
  return out;
}

std::vector<std::pair<double, double>> lower_bound_margins(std::span<const DiagnosticsRecord> records,
                                                           const PhysicsParams& params, double t_star) {
  const double exponent = 0.5 * (1.0 - params.sigma_c());
  std::vector<std::pair<double, double>> out;
  for (const auto& r : records) {
    const double grad = std::sqrt(r.kinetic);
    if (r.t >= t_star || grad < std::sqrt(std::abs(r.energy))) continue;
    out.emplace_back(r.t, grad * std::pow(t_star - r.t, exponent));
  }
  return out;
}

double check_rate_lower_bound(std::span<const DiagnosticsRecord> records, const PhysicsParams& params,
                              double t_star) {
  const auto margins = lower_bound_margins(records, params, t_star);
  if (margins.empty()) throw DomainError("no record satisfies ||psi_x|| >= |E|^{1/2} before t*");
  double m = margins.front().second;
  for (const auto& [t, v] : margins) m = std::min(m, v);
  return m;
}

double default_concentration_mu(double kinetic) { return std::log(std::numbers::e + std::sqrt(kinetic)); }

double mass_concentration(const WaveState& state, double mu) {
  if (!(mu > 0.0)) throw DomainError("mass_concentration: mu must be positive");
  const GridSpec& g = state.grid();
  const double h = g.spacing();
  const double kinetic = h1_seminorm_sq(state);
  const double width = kinetic > 0.0 ? mu / std::sqrt(kinetic) : std::numeric_limits<double>::infinity();
  if (width < h) throw ResolutionError("concentration window is narrower than one grid cell");
  const std::size_t c = g.center();
  const double cells = std::ceil(width / h - 1e-12);
  const std::size_t k = cells >= static_cast<double>(c) ? c : static_cast<std::size_t>(cells);
  double sum = 0.0;
  for (std::size_t j = c - k; j <= c + k; ++j) {
    const double w = (j == c - k || j == c + k) ? 0.5 : 1.0;
    sum += w * std::norm(state[j]);
  }
  return sum * h;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Blowup: return "Blowup";
    case Verdict::Global: return "Global";
    case Verdict::ResolutionLimited: return "ResolutionLimited";
  }
  return "Global";
}

BlowupReport analyze(std::span<const DiagnosticsRecord> trace, const WaveState& peak_state,
                     const PhysicsParams& params, StopReason stop_reason) {
  BlowupReport report;
  report.stop_reason = stop_reason;
  if (trace.empty()) return report;
  const std::size_t peak = peak_index(trace);
  report.peak_time = trace[peak].t;
  if (trace.front().kinetic > 0.0) report.peak_growth = std::sqrt(trace[peak].kinetic / trace.front().kinetic);

  std::optional<RateFit> fit;
  std::vector<DiagnosticsRecord> window;
  try {
    window = growth_window(trace);
    fit = fit_blowup_rate(trace);
  } catch (const InsufficientGrowth&) {
    fit.reset();
  }

  if (stop_reason == StopReason::BlowupStop) {
    report.verdict = Verdict::Blowup;
  } else if (stop_reason == StopReason::ResolutionStop || fit) {
    report.verdict = Verdict::ResolutionLimited;
  } else {
    report.verdict = Verdict::Global;
  }
  if (report.verdict == Verdict::Global) return report;

  if (fit) {
    report.t_star_estimate = fit->t_star;
    report.rate_exponent = fit->alpha;
    report.rate_fit_residual = fit->residual;
    try {
      report.lower_bound_margin = check_rate_lower_bound(window, params, fit->t_star);
    } catch (const DomainError&) {
    }
  }
  if (params.mass_critical() && h1_seminorm_sq(peak_state) > 0.0) {
    try {
      report.concentration_value = mass_concentration(peak_state, default_concentration_mu(h1_seminorm_sq(peak_state)));
    } catch (const ResolutionError&) {
    }
    report.proximity_epsilon = ground_state_proximity(peak_state).distance;
  }
  return report;
}

}  // namespace pointnls
