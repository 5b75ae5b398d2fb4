#include "isac/baseline.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "isac/fft.hpp"
#include "isac/signal.hpp"
#include "isac/solver.hpp"

namespace isac {

cvec lfm_waveform(std::size_t length, double bandwidth, double pulse_width,
                  double sample_interval) {
    if (length < 2) throw std::invalid_argument("lfm_waveform: length < 2");
    if (!(bandwidth > 0.0) || !(pulse_width > 0.0) || !(sample_interval > 0.0))
        throw std::invalid_argument("lfm_waveform: nonpositive timing value");
    const auto derived =
        static_cast<std::size_t>(std::floor(pulse_width / sample_interval + 1e-9));
    if (derived != length)
        throw std::invalid_argument(
            "lfm_waveform: length inconsistent with pulse_width / sample_interval");

    const double rate = bandwidth / pulse_width;
    cvec x(length);
    for (std::size_t l = 0; l < length; ++l) {
        const double t = static_cast<double>(l) * sample_interval;
        x[l] = std::polar(1.0, std::numbers::pi * rate * t * t);
    }
    return x;
}

cvec tradeoff_waveform(const MultipathChannel& channel, const cvec& s,
                       const cvec& x_rad, const TradeoffConfig& config) {
    const std::size_t L = s.size();
    if (x_rad.size() != L || channel.length() != L)
        throw std::invalid_argument("tradeoff_waveform: dimension mismatch");
    if (!(config.rho >= 0.0 && config.rho <= 1.0))
        throw std::invalid_argument("tradeoff_waveform: rho must be in [0, 1]");
    if (!(config.gamma >= 1.0))
        throw std::invalid_argument("tradeoff_waveform: gamma must be >= 1");
    if (config.max_iter == 0)
        throw std::invalid_argument("tradeoff_waveform: max_iter must be positive");

    const double rho = config.rho;
    const cvec h = channel.frequency_response();

    // Unconstrained minimizer, solved per transform bin through the
    // circulant structure: X_m = (rho conj(H_m) S_m + (1-rho) R_m) / d_m
    // with d_m = rho |H_m|^2 + (1-rho), floored against degeneracy.
    cvec s_spec = s;
    cvec rad_spec = x_rad;
    fft::forward_inplace(s_spec);
    fft::forward_inplace(rad_spec);
    cvec star(L);
    for (std::size_t m = 0; m < L; ++m) {
        const double denom =
            std::max(rho * std::norm(h[m]) + (1.0 - rho), 1e-12);
        star[m] = (rho * std::conj(h[m]) * s_spec[m] + (1.0 - rho) * rad_spec[m]) /
                  denom;
    }
    fft::inverse_inplace(star);

    cvec x = scale_to_energy(x_rad, static_cast<double>(L));
    for (std::size_t it = 0; it < config.max_iter; ++it) {
        const cvec next = update_x(star, x, config.gamma);
        double change = 0.0;
        for (std::size_t l = 0; l < L; ++l) change += std::norm(next[l] - x[l]);
        x = next;
        if (std::sqrt(change) <= config.tolerance) break;
    }
    return x;
}

double tradeoff_objective(const cvec& x, const MultipathChannel& channel,
                          const cvec& s, const cvec& x_rad, double rho) {
    const cvec hx = channel.apply(x);
    double fit = 0.0, anchor = 0.0;
    for (std::size_t l = 0; l < x.size(); ++l) {
        fit += std::norm(hx[l] - s[l]);
        anchor += std::norm(x[l] - x_rad[l]);
    }
    return rho * fit + (1.0 - rho) * anchor;
}

}  // namespace isac
