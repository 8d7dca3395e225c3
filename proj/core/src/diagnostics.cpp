#include "pointnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pointnls/errors.hpp"
#include "pointnls/exact.hpp"

namespace pointnls {
namespace {

void require_supercritical(const PhysicsParams& params, const char* what) {
  if (!(params.p() > 3.0)) {
    throw UnsupportedError(std::string(what) + " is defined only for p > 3");
  }
}

// ||phi0||^q ||phi0'|| with both norms equal to 2^{1/(p-1)}.
double eta_normalization(const PhysicsParams& params) {
  const double q = params.mass_weight_exponent();
  return std::pow(2.0, (q + 1.0) / (params.p() - 1.0));
}

}  // namespace

double energy(const WaveState& state, const PhysicsParams& params) {
  const double p = params.p();
  return 0.5 * h1_seminorm_sq(state) - std::pow(boundary_amplitude(state), p + 1.0) / (p + 1.0);
}

double gn_functional(const WaveState& state) {
  const double c = boundary_amplitude(state);
  if (c == 0.0) throw ZeroCenterValue();
  const double c2 = c * c;
  return l2_norm_sq(state) * h1_seminorm_sq(state) / (c2 * c2);
}

double eta(const WaveState& state, const PhysicsParams& params) {
  require_supercritical(params, "eta");
  const double q = params.mass_weight_exponent();
  const double num = std::pow(std::sqrt(l2_norm_sq(state)), q) * std::sqrt(h1_seminorm_sq(state));
  return num / eta_normalization(params);
}

double eta_or_surrogate(const WaveState& state, const PhysicsParams& params) {
  if (params.p() > 3.0) return eta(state, params);
  return h1_seminorm_sq(state) / ground_state_mass(params);
}

double threshold_ratio(const WaveState& state, const PhysicsParams& params) {
  require_supercritical(params, "threshold ratio");
  const double p = params.p();
  const double q = params.mass_weight_exponent();
  const double m0 = ground_state_mass(params);
  const double e0 = m0 * (p - 3.0) / (2.0 * (p + 1.0));
  return std::pow(l2_norm_sq(state), q) * energy(state, params) / (std::pow(m0, q) * e0);
}

double dichotomy_f(double eta_value, const PhysicsParams& params) {
  require_supercritical(params, "dichotomy function");
  const double p = params.p();
  return 2.0 * (p + 1.0) / (p - 3.0) *
         (0.5 * eta_value * eta_value - 2.0 / (p + 1.0) * std::pow(eta_value, 0.5 * (p + 1.0)));
}

double dichotomy_f_derivative(double eta_value, const PhysicsParams& params) {
  require_supercritical(params, "dichotomy function");
  const double p = params.p();
  return 2.0 * (p + 1.0) / (p - 3.0) * (eta_value - std::pow(eta_value, 0.5 * (p - 1.0)));
}

DichotomyRoots dichotomy_roots(double y, const PhysicsParams& params) {
  require_supercritical(params, "dichotomy roots");
  if (!(y < 1.0)) throw DomainError("f(eta) = y has no separated roots for y >= 1");

  auto bisect = [&](double lo, double hi, bool increasing) {
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      const bool below = dichotomy_f(mid, params) < y;
      if (below == increasing) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  DichotomyRoots roots{};
  if (y == 0.0) {
    roots.eta_minus = 0.0;
  } else if (y > 0.0) {
    roots.eta_minus = bisect(0.0, 1.0, true);
  }
  double hi = 2.0;
  while (dichotomy_f(hi, params) >= y) hi *= 2.0;
  roots.eta_plus = bisect(1.0, hi, false);
  return roots;
}

std::string to_string(Prediction prediction) {
  switch (prediction) {
    case Prediction::GlobalPredicted: return "GlobalPredicted";
    case Prediction::BlowupPredicted: return "BlowupPredicted";
    case Prediction::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

Prediction classify_initial_data(const WaveState& state, const PhysicsParams& params) {
  if (params.p() > 3.0) {
    const double y = threshold_ratio(state, params);
    if (!(y < 1.0)) return Prediction::Indeterminate;
    const double eta0 = eta(state, params);
    if (eta0 < 1.0) return Prediction::GlobalPredicted;
    if (eta0 > 1.0) return Prediction::BlowupPredicted;
    return Prediction::Indeterminate;
  }
  if (params.mass_critical()) {
    if (l2_norm_sq(state) < ground_state_mass(params)) return Prediction::GlobalPredicted;
    if (energy(state, params) < 0.0) return Prediction::BlowupPredicted;
  }
  return Prediction::Indeterminate;
}

VirialTerms virial_terms(const WaveState& state, const PhysicsParams& params, const VirialWeight& weight) {
  const GridSpec& g = state.grid();
  const double h = g.spacing();
  const auto v = state.values();
  VirialTerms out;
  double kin_weighted = 0.0;
  double kin_abs = 0.0;
  double quartic = 0.0;
  double quartic_abs = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double x = g.x(j);
    const double m = std::norm(v[j]);
    out.moment += weight.value(x) * m;
    const double a4 = weight.fourth(x);
    quartic += a4 * m;
    quartic_abs += std::abs(a4) * m;
    if (j + 1 < v.size()) {
      const double xm = 0.5 * (x + g.x(j + 1));
      const Complex dpsi = (v[j + 1] - v[j]) / h;
      const Complex mid = 0.5 * (v[j] + v[j + 1]);
      // Difference quotient of a at the midpoint; exact companion of the discrete Laplacian.
      const double da = (weight.value(g.x(j + 1)) - weight.value(x)) / h;
      out.first += da * std::imag(std::conj(mid) * dpsi);
      out.first_scale += std::abs(da) * std::abs(mid) * std::abs(dpsi);
      const double a2 = weight.second(xm);
      kin_weighted += a2 * std::norm(dpsi);
      kin_abs += std::abs(a2) * std::norm(dpsi);
    }
  }
  const double a2c = weight.second(0.0);
  const double boundary = std::pow(boundary_amplitude(state), params.p() + 1.0);
  out.moment *= h;
  out.first *= 2.0 * h;
  out.first_scale *= 2.0 * h;
  out.rhs = 4.0 * kin_weighted * h - 2.0 * a2c * boundary - quartic * h;
  out.rhs_scale = 4.0 * kin_abs * h + 2.0 * std::abs(a2c) * boundary + quartic_abs * h;
  return out;
}

double local_virial_rhs(const WaveState& state, const PhysicsParams& params, const VirialWeight& weight) {
  return virial_terms(state, params, weight).rhs;
}

double virial_moment(const WaveState& state, const VirialWeight& weight) {
  const GridSpec& g = state.grid();
  double sum = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) sum += weight.value(g.x(j)) * std::norm(state[j]);
  return sum * g.spacing();
}

double virial_first(const WaveState& state, const VirialWeight& weight) {
  // The first-derivative term does not depend on p.
  return virial_terms(state, PhysicsParams(3.0), weight).first;
}

DiagnosticsRecord make_record(const WaveState& state, const PhysicsParams& params,
                              const VirialWeight* weight, double dt_used) {
  DiagnosticsRecord r;
  r.t = state.time();
  r.mass = l2_norm_sq(state);
  r.kinetic = h1_seminorm_sq(state);
  r.boundary = state.center_value();
  const double p = params.p();
  r.energy = 0.5 * r.kinetic - std::pow(std::abs(r.boundary), p + 1.0) / (p + 1.0);
  r.eta = eta_or_surrogate(state, params);
  if (weight != nullptr) {
    const VirialTerms vt = virial_terms(state, params, *weight);
    r.virial_moment = vt.moment;
    r.virial_first = vt.first;
    r.virial_rhs = vt.rhs;
    r.virial_rhs_scale = vt.rhs_scale;
    r.virial_first_scale = vt.first_scale;
  }
  r.dt_used = dt_used;
  return r;
}

VirialCheck verify_local_virial(std::span<const DiagnosticsRecord> trace) {
  std::vector<const DiagnosticsRecord*> rec;
  for (const auto& r : trace) {
    if (r.scheduled) rec.push_back(&r);
  }
  if (rec.size() < 5) throw DomainError("virial check needs at least 5 scheduled records");
  const double delta = rec[1]->t - rec[0]->t;
  if (!(delta > 0.0)) throw DomainError("virial check: records not increasing in time");
  for (std::size_t k = 1; k < rec.size(); ++k) {
    if (std::abs(rec[k]->t - rec[k - 1]->t - delta) > 1e-9 * delta) {
      throw DomainError("virial check: records are not uniformly spaced");
    }
  }

  double rhs_scale = 0.0;
  double first_scale = 0.0;
  for (const auto* r : rec) {
    rhs_scale = std::max(rhs_scale, r->virial_rhs_scale);
    first_scale = std::max(first_scale, r->virial_first_scale);
  }
  double second_err = 0.0;
  double first_err = 0.0;
  for (std::size_t k = 1; k + 1 < rec.size(); ++k) {
    const double v0 = rec[k - 1]->virial_moment;
    const double v1 = rec[k]->virial_moment;
    const double v2 = rec[k + 1]->virial_moment;
    second_err = std::max(second_err, std::abs((v2 - 2.0 * v1 + v0) / (delta * delta) - rec[k]->virial_rhs));
    first_err = std::max(first_err, std::abs((v2 - v0) / (2.0 * delta) - rec[k]->virial_first));
  }
  VirialCheck out;
  out.second_rel_error = rhs_scale > 0.0 ? second_err / rhs_scale : second_err;
  out.first_rel_error = first_scale > 0.0 ? first_err / first_scale : first_err;
  out.points = rec.size() - 2;
  return out;
}

}  // namespace pointnls
