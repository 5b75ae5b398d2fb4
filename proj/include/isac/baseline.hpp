#pragma once

#include <cstddef>

#include "isac/channel.hpp"
#include "isac/types.hpp"

namespace isac {

/// Unit-modulus linear-frequency chirp x_l = exp(j pi (B/T_p) (l t_s)^2),
/// energy L. Throws std::invalid_argument when L != floor(T_p / t_s) or any
/// timing value is nonpositive.
cvec lfm_waveform(std::size_t length, double bandwidth, double pulse_width,
                  double sample_interval);

struct TradeoffConfig {
    double rho = 0.1;    ///< communication-fit vs radar-anchor weight, in [0, 1]
    double gamma = 1.5;  ///< per-sample amplitude bound, >= 1
    std::size_t max_iter = 50;
    double tolerance = 1e-10;
};

/// Weighted least-squares compromise between reproducing s through the
/// channel and staying close to the radar anchor:
/// minimize rho ||Hx - s||^2 + (1 - rho) ||x - x_rad||^2 over the energy-L,
/// amplitude-bounded set. Alternates the per-bin closed-form unconstrained
/// minimizer (regularized where the normal equations degenerate) with the
/// amplitude projection until the iterate change falls to tolerance.
cvec tradeoff_waveform(const MultipathChannel& channel, const cvec& s,
                       const cvec& x_rad, const TradeoffConfig& config);

/// rho ||Hx - s||^2 + (1 - rho) ||x - x_rad||^2.
double tradeoff_objective(const cvec& x, const MultipathChannel& channel,
                          const cvec& s, const cvec& x_rad, double rho);

}  // namespace isac
