#include "isac/channel.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <set>
#include <stdexcept>
#include <thread>

#include "isac/fft.hpp"
#include "isac/signal.hpp"

namespace isac {

namespace {

constexpr double kZfFloor = 1e-8;

std::vector<cdouble> qpsk_points() {
    const double a = 1.0 / std::numbers::sqrt2;
    // Bit pattern b0 b1 -> ((1-2 b0) + j (1-2 b1)) / sqrt(2).
    return {{a, a}, {a, -a}, {-a, a}, {-a, -a}};
}

std::vector<cdouble> qam16_points() {
    // Per-dimension Gray code: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3.
    constexpr double level[4] = {-3.0, -1.0, +1.0, +3.0};
    constexpr int gray[4] = {0, 1, 3, 2};  // level index for bit pair 0..3
    const double scale = 1.0 / std::sqrt(10.0);
    std::vector<cdouble> pts(16);
    for (int i = 0; i < 4; ++i)
        for (int q = 0; q < 4; ++q)
            pts[static_cast<std::size_t>((i << 2) | q)] =
                scale * cdouble(level[gray[i]], level[gray[q]]);
    return pts;
}

}  // namespace

Constellation make_constellation(ConstellationKind kind) {
    Constellation c;
    c.kind = kind;
    c.points = kind == ConstellationKind::QPSK ? qpsk_points() : qam16_points();
    return c;
}

ConstellationKind constellation_from_name(const std::string& name) {
    if (name == "qpsk") return ConstellationKind::QPSK;
    if (name == "qam16") return ConstellationKind::QAM16;
    throw std::invalid_argument("unknown constellation: " + name);
}

MultipathChannel::MultipathChannel(std::vector<ChannelTap> taps, std::size_t length)
    : taps_(std::move(taps)), length_(length) {
    if (length_ < 2) throw std::invalid_argument("channel: length < 2");
    if (taps_.empty()) throw std::invalid_argument("channel: no taps");
    std::set<std::size_t> seen;
    for (const auto& tap : taps_) {
        if (tap.delay_bins >= length_)
            throw std::invalid_argument("channel: tap delay exceeds block length");
        if (!seen.insert(tap.delay_bins).second)
            throw std::invalid_argument("channel: duplicate tap delay");
    }
}

cvec MultipathChannel::apply(const cvec& x) const {
    if (x.size() != length_)
        throw std::invalid_argument("channel apply: dimension mismatch");
    cvec y(length_, cdouble(0.0));
    for (const auto& tap : taps_)
        for (std::size_t m = 0; m < length_; ++m)
            y[m] += tap.gain * x[(m + length_ - tap.delay_bins) % length_];
    return y;
}

cvec MultipathChannel::frequency_response() const {
    cvec h(length_, cdouble(0.0));
    const double step = -2.0 * std::numbers::pi / static_cast<double>(length_);
    for (const auto& tap : taps_)
        for (std::size_t m = 0; m < length_; ++m)
            h[m] += tap.gain *
                    std::polar(1.0, step * static_cast<double>(m * tap.delay_bins));
    return h;
}

MultipathChannel build_channel(std::vector<ChannelTap> taps, std::size_t length) {
    return MultipathChannel(std::move(taps), length);
}

MultipathChannel build_channel(const std::vector<std::size_t>& delay_bins,
                               std::size_t length, Rng& rng) {
    std::vector<ChannelTap> taps;
    taps.reserve(delay_bins.size());
    for (const std::size_t d : delay_bins) taps.push_back({rng.cnormal(), d});
    return MultipathChannel(std::move(taps), length);
}

cvec apply_channel(const MultipathChannel& ch, const cvec& x, double noise_var,
                   Rng& rng) {
    if (noise_var < 0.0)
        throw std::invalid_argument("apply_channel: negative noise variance");
    cvec y = ch.apply(x);
    if (noise_var > 0.0) {
        const double sigma = std::sqrt(noise_var);
        for (auto& v : y) v += sigma * rng.cnormal();
    }
    return y;
}

cvec equalize(const cvec& y, const MultipathChannel& ch) {
    if (y.size() != ch.length())
        throw std::invalid_argument("equalize: dimension mismatch");
    cvec spectrum = y;
    fft::forward_inplace(spectrum);
    const cvec h = ch.frequency_response();
    for (std::size_t m = 0; m < spectrum.size(); ++m) {
        const double mag = std::abs(h[m]);
        const cdouble divisor =
            mag >= kZfFloor ? h[m]
            : mag > 0.0     ? (h[m] / mag) * kZfFloor
                            : cdouble(kZfFloor);
        spectrum[m] /= divisor;
    }
    fft::inverse_inplace(spectrum);
    return spectrum;
}

cvec modulate(const std::vector<int>& bits, const Constellation& c) {
    const std::size_t bps = c.bits_per_symbol();
    if (bits.size() % bps != 0)
        throw std::invalid_argument("modulate: bit count not divisible by symbol size");
    cvec out(bits.size() / bps);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t idx = 0;
        for (std::size_t b = 0; b < bps; ++b)
            idx = (idx << 1) | static_cast<std::size_t>(bits[i * bps + b] & 1);
        out[i] = c.points[idx];
    }
    return out;
}

std::vector<std::size_t> symbol_indices(const std::vector<int>& bits,
                                        const Constellation& c) {
    const std::size_t bps = c.bits_per_symbol();
    if (bits.size() % bps != 0)
        throw std::invalid_argument("symbol_indices: bit count not divisible");
    std::vector<std::size_t> out(bits.size() / bps);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t idx = 0;
        for (std::size_t b = 0; b < bps; ++b)
            idx = (idx << 1) | static_cast<std::size_t>(bits[i * bps + b] & 1);
        out[i] = idx;
    }
    return out;
}

std::vector<std::size_t> demodulate(const cvec& received, const Constellation& c) {
    std::vector<std::size_t> out(received.size());
    for (std::size_t i = 0; i < received.size(); ++i) {
        std::size_t best = 0;
        double best_d = std::norm(received[i] - c.points[0]);
        for (std::size_t k = 1; k < c.points.size(); ++k) {
            const double d = std::norm(received[i] - c.points[k]);
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        out[i] = best;
    }
    return out;
}

double qpsk_ser_awgn(double snr_linear) {
    if (snr_linear < 0.0)
        throw std::invalid_argument("qpsk_ser_awgn: negative SNR");
    const double p = 0.5 * std::erfc(std::sqrt(snr_linear) / std::numbers::sqrt2);
    return 2.0 * p - p * p;
}

namespace {

struct TrialOutcome {
    std::size_t errors = 0;
    std::size_t symbols = 0;
};

TrialOutcome run_ser_trial(const DesignFn& design, const ChannelSpec& spec,
                           const Constellation& constellation, std::size_t L,
                           double snr_db, Rng trial_rng) {
    Rng bit_rng = trial_rng.substream("bits");
    Rng chan_rng = trial_rng.substream("channel");
    Rng noise_rng = trial_rng.substream("noise");

    const std::size_t bps = constellation.bits_per_symbol();
    std::vector<int> bits(L * bps);
    for (auto& b : bits) b = static_cast<int>(bit_rng.next_bit());

    const cvec s = modulate(bits, constellation);
    const cvec x = design(s);
    if (x.size() != L)
        throw std::invalid_argument("monte_carlo_ser: design changed block length");

    MultipathChannel ch = [&] {
        if (spec.fixed_gains.empty()) return build_channel(spec.delay_bins, L, chan_rng);
        if (spec.fixed_gains.size() != spec.delay_bins.size())
            throw std::invalid_argument("monte_carlo_ser: gain/delay count mismatch");
        std::vector<ChannelTap> taps;
        for (std::size_t i = 0; i < spec.delay_bins.size(); ++i)
            taps.push_back({spec.fixed_gains[i], spec.delay_bins[i]});
        return build_channel(std::move(taps), L);
    }();

    const double signal_power = energy(ch.apply(x)) / static_cast<double>(L);
    const double noise_var = signal_power / std::pow(10.0, snr_db / 10.0);

    const cvec y = apply_channel(ch, x, noise_var, noise_rng);
    const cvec x_hat = equalize(y, ch);
    const std::vector<std::size_t> sent = symbol_indices(bits, constellation);
    const std::vector<std::size_t> sliced = demodulate(x_hat, constellation);

    TrialOutcome outcome;
    outcome.symbols = L;
    for (std::size_t i = 0; i < L; ++i)
        if (sent[i] != sliced[i]) ++outcome.errors;
    return outcome;
}

}  // namespace

std::vector<SerPoint> monte_carlo_ser(const DesignFn& design,
                                      const ChannelSpec& channel_spec,
                                      const Constellation& constellation,
                                      std::size_t block_length,
                                      const std::vector<double>& snr_grid_db,
                                      std::size_t trials, std::uint64_t rng_seed,
                                      unsigned threads) {
    if (trials == 0) throw std::invalid_argument("monte_carlo_ser: zero trials");
    if (snr_grid_db.empty())
        throw std::invalid_argument("monte_carlo_ser: empty SNR grid");
    if (block_length < 2)
        throw std::invalid_argument("monte_carlo_ser: block length < 2");

    const Rng root(rng_seed, "ser");
    std::vector<SerPoint> curve;
    curve.reserve(snr_grid_db.size());

    for (std::size_t i = 0; i < snr_grid_db.size(); ++i) {
        const Rng point_rng = root.substream("snr " + std::to_string(i));
        std::size_t total_errors = 0;
        std::size_t total_symbols = 0;

        auto run_range = [&](std::size_t lo, std::size_t hi, std::size_t& errors,
                             std::size_t& symbols) {
            for (std::size_t t = lo; t < hi; ++t) {
                const TrialOutcome o = run_ser_trial(
                    design, channel_spec, constellation, block_length,
                    snr_grid_db[i], point_rng.substream("trial " + std::to_string(t)));
                errors += o.errors;
                symbols += o.symbols;
            }
        };

        const unsigned workers =
            std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
        if (workers == 1) {
            run_range(0, trials, total_errors, total_symbols);
        } else {
            std::vector<std::size_t> errs(workers, 0), syms(workers, 0);
            std::vector<std::exception_ptr> faults(workers);
            std::vector<std::thread> pool;
            const std::size_t chunk = (trials + workers - 1) / workers;
            for (unsigned wi = 0; wi < workers; ++wi) {
                const std::size_t lo = wi * chunk;
                const std::size_t hi = std::min(trials, lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back([&, wi, lo, hi] {
                    try {
                        run_range(lo, hi, errs[wi], syms[wi]);
                    } catch (...) {
                        faults[wi] = std::current_exception();
                    }
                });
            }
            for (auto& th : pool) th.join();
            for (const auto& fault : faults)
                if (fault) std::rethrow_exception(fault);
            for (unsigned wi = 0; wi < workers; ++wi) {
                total_errors += errs[wi];
                total_symbols += syms[wi];
            }
        }

        SerPoint pt;
        pt.snr_db = snr_grid_db[i];
        pt.trials = trials;
        pt.symbol_errors = total_errors;
        pt.symbols = total_symbols;
        pt.ser = static_cast<double>(total_errors) / static_cast<double>(total_symbols);
        curve.push_back(pt);
    }
    return curve;
}

}  // namespace isac
