#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "isac/jamming.hpp"
#include "isac/rng.hpp"
#include "isac/types.hpp"

namespace isac {

/// One coherent processing interval's worth of scene truth.
struct EchoScene {
    std::size_t target_delay_bins = 0;
    std::size_t jammer_delay_bins = 0;  ///< relative to the target echo
    double normalized_doppler = 0.0;    ///< radians of phase per pulse
    cdouble target_amp = 1.0;
    double jsr_db = 15.0;  ///< jammer power over target power at the receiver
    double snr_db = 10.0;  ///< target-echo per-sample power over noise variance
    std::size_t pulses = 1;
    std::size_t receive_window = 0;  ///< samples per pulse; 0 derives L + delays + 1
};

/// Which additive pieces of the receive signal to synthesize.
struct EchoComponents {
    bool target = true;
    bool jamming = true;
    bool noise = true;
};

/// Receive vectors for each pulse of the CPI:
/// pulse n = a_T shift(x, d_T) e^{j n theta} + a_J shift(Jx, d_T + d_J) e^{j n theta} + noise,
/// with |a_J| = |a_T| 10^(jsr/20), noise variance |a_T|^2 (energy(x)/L) / 10^(snr/10),
/// and linear (non-wrapping) shifts into the receive window.
/// Throws std::invalid_argument when the window cannot hold the delayed copies.
std::vector<cvec> synthesize_echoes(const EchoScene& scene, const cvec& x,
                                    const TransferMatrix& J, Rng& rng,
                                    const EchoComponents& parts = {});

/// Raw sliding cross-correlation of a receive vector against the filter:
/// values[i] = sum_m conj(w[m]) y[m + lag], lag = first_lag + i, covering
/// every alignment with overlap. Complex values; convert with profile_db.
struct RangeProfile {
    std::ptrdiff_t first_lag = 0;  ///< always -(len(w) - 1)
    cvec values;
};

RangeProfile pulse_compress(const cvec& y, const cvec& w);

/// Magnitudes normalized to the profile peak, in dB.
std::vector<double> profile_db(const RangeProfile& profile);

/// Doppler filter bank output. magnitudes[i][k] is the coherent sum over
/// pulses at Doppler hypothesis doppler_grid[i] and lag first_lag + k.
struct DelayDopplerMap {
    std::vector<double> doppler_grid;  ///< M points spanning [-pi, pi] exactly
    std::ptrdiff_t first_lag = 0;
    std::vector<std::vector<double>> magnitudes;
};

/// Pulse-compress each echo once, then combine across pulses with the
/// per-hypothesis phase weights e^{-j n theta_i}. M >= 2 hypotheses.
DelayDopplerMap delay_doppler_map(const std::vector<cvec>& echoes, const cvec& w,
                                  std::size_t M);

/// (doppler index, lag index) of the largest map magnitude.
std::pair<std::size_t, std::size_t> map_argmax(const DelayDopplerMap& map);

}  // namespace isac
