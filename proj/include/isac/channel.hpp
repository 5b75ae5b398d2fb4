#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "isac/rng.hpp"
#include "isac/types.hpp"

namespace isac {

enum class ConstellationKind { QPSK, QAM16 };

/// Gray-mapped constellation with unit average energy. points[i] is the
/// symbol whose MSB-first bit pattern equals i.
struct Constellation {
    ConstellationKind kind = ConstellationKind::QPSK;
    std::vector<cdouble> points;

    std::size_t bits_per_symbol() const { return kind == ConstellationKind::QPSK ? 2 : 4; }
};

Constellation make_constellation(ConstellationKind kind);
ConstellationKind constellation_from_name(const std::string& name);

struct ChannelTap {
    cdouble gain;
    std::size_t delay_bins = 0;
};

/// Multipath channel acting as a sum of cyclic delay shifts; circulant, so
/// it diagonalizes in the DFT basis. Immutable after construction.
class MultipathChannel {
public:
    MultipathChannel(std::vector<ChannelTap> taps, std::size_t length);

    std::size_t length() const { return length_; }
    const std::vector<ChannelTap>& taps() const { return taps_; }

    /// y = Hx via cyclic shifts; O(taps * L).
    cvec apply(const cvec& x) const;

    /// Per-bin transfer values H_m = sum_i h_i e^{-j 2 pi m d_i / L}.
    cvec frequency_response() const;

private:
    std::vector<ChannelTap> taps_;
    std::size_t length_;
};

/// Channel with explicit tap gains. Throws std::invalid_argument on empty
/// taps, duplicate delays, or a delay >= L.
MultipathChannel build_channel(std::vector<ChannelTap> taps, std::size_t length);

/// Channel with unit-variance circularly-symmetric complex Gaussian gains
/// drawn from rng, one per delay bin.
MultipathChannel build_channel(const std::vector<std::size_t>& delay_bins,
                               std::size_t length, Rng& rng);

/// y = Hx + v with i.i.d. complex Gaussian noise of per-sample variance
/// noise_var drawn from rng.
cvec apply_channel(const MultipathChannel& ch, const cvec& x, double noise_var,
                   Rng& rng);

/// Zero-forcing equalization in the transform domain. Bins whose magnitude
/// falls below 1e-8 divide by a floored value that keeps the bin's phase.
cvec equalize(const cvec& y, const MultipathChannel& ch);

/// Gray-mapped symbols from a bit string; bit count must divide evenly.
cvec modulate(const std::vector<int>& bits, const Constellation& c);

/// Transmitted symbol indices for the same bit string (for error counting).
std::vector<std::size_t> symbol_indices(const std::vector<int>& bits,
                                        const Constellation& c);

/// Minimum-distance slicer; ties break toward the lowest index.
std::vector<std::size_t> demodulate(const cvec& received, const Constellation& c);

/// Closed-form QPSK symbol error rate over AWGN at the given linear
/// per-symbol SNR: 2p - p^2 with p = Q(sqrt(snr)).
double qpsk_ser_awgn(double snr_linear);

/// Delay profile for Monte-Carlo runs. Empty fixed_gains means fresh
/// unit-variance complex Gaussian gains every trial.
struct ChannelSpec {
    std::vector<std::size_t> delay_bins;
    std::vector<cdouble> fixed_gains;
};

/// Maps the modulated block s to the transmit waveform (identity for the
/// communication-only baseline, a solver run for designed waveforms).
using DesignFn = std::function<cvec(const cvec& s)>;

struct SerPoint {
    double snr_db = 0.0;
    double ser = 0.0;
    std::size_t trials = 0;
    std::size_t symbol_errors = 0;
    std::size_t symbols = 0;
};

/// Monte-Carlo symbol-error-rate sweep. Per (SNR index, trial) the bit,
/// channel, and noise streams are derived by name from rng_seed, so results
/// are independent of trial execution order and identical across runs that
/// share a seed (with the design function being the only difference).
/// block_length L sets the symbols per trial; noise variance is set per
/// trial from the received signal power ||Hx||^2 / L and the SNR point.
/// threads > 1 fans trials over a worker pool; error counts merge by sum.
std::vector<SerPoint> monte_carlo_ser(const DesignFn& design,
                                      const ChannelSpec& channel_spec,
                                      const Constellation& constellation,
                                      std::size_t block_length,
                                      const std::vector<double>& snr_grid_db,
                                      std::size_t trials, std::uint64_t rng_seed,
                                      unsigned threads = 1);

}  // namespace isac
