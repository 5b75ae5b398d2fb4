#include "isac/radar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "isac/fft.hpp"
#include "isac/signal.hpp"

namespace isac {

std::vector<cvec> synthesize_echoes(const EchoScene& scene, const cvec& x,
                                    const TransferMatrix& J, Rng& rng,
                                    const EchoComponents& parts) {
    const std::size_t L = x.size();
    if (L < 2) throw std::invalid_argument("synthesize_echoes: waveform too short");
    if (J.size() != L)
        throw std::invalid_argument("synthesize_echoes: jammer size mismatch");
    if (scene.pulses == 0)
        throw std::invalid_argument("synthesize_echoes: zero pulses");

    const std::size_t jam_delay = scene.target_delay_bins + scene.jammer_delay_bins;
    const std::size_t window = scene.receive_window != 0
                                   ? scene.receive_window
                                   : L + jam_delay + 1;
    if (scene.target_delay_bins + L > window || jam_delay + L > window)
        throw std::invalid_argument(
            "synthesize_echoes: delayed echo overflows the receive window");

    const double at_mag = std::abs(scene.target_amp);
    const cdouble alpha_j =
        scene.target_amp * std::pow(10.0, scene.jsr_db / 20.0);
    const double noise_var = at_mag * at_mag * (energy(x) / static_cast<double>(L)) /
                             std::pow(10.0, scene.snr_db / 10.0);
    const cvec xj = J.apply(x);

    std::vector<cvec> pulses;
    pulses.reserve(scene.pulses);
    for (std::size_t n = 0; n < scene.pulses; ++n) {
        const cdouble doppler =
            std::polar(1.0, scene.normalized_doppler * static_cast<double>(n));
        cvec y(window, cdouble(0.0));
        if (parts.target) {
            const cdouble a = scene.target_amp * doppler;
            for (std::size_t l = 0; l < L; ++l)
                y[scene.target_delay_bins + l] += a * x[l];
        }
        if (parts.jamming) {
            const cdouble a = alpha_j * doppler;
            for (std::size_t l = 0; l < L; ++l) y[jam_delay + l] += a * xj[l];
        }
        if (parts.noise && noise_var > 0.0) {
            const double sigma = std::sqrt(noise_var);
            for (auto& v : y) v += sigma * rng.cnormal();
        }
        pulses.push_back(std::move(y));
    }
    return pulses;
}

RangeProfile pulse_compress(const cvec& y, const cvec& w) {
    const std::size_t L = w.size();
    const std::size_t ny = y.size();
    if (L < 2) throw std::invalid_argument("pulse_compress: filter too short");
    if (ny < L)
        throw std::invalid_argument("pulse_compress: receive vector shorter than filter");

    // Circular correlation at length ny + L leaves the padding regions of the
    // two supports disjoint, so every linear lag is exact.
    const std::size_t N = ny + L;
    cvec fy(N, cdouble(0.0)), fw(N, cdouble(0.0));
    std::copy(y.begin(), y.end(), fy.begin());
    std::copy(w.begin(), w.end(), fw.begin());
    fft::forward_inplace(fy);
    fft::forward_inplace(fw);
    for (std::size_t m = 0; m < N; ++m) fy[m] *= std::conj(fw[m]);
    fft::inverse_inplace(fy);

    RangeProfile profile;
    profile.first_lag = -(static_cast<std::ptrdiff_t>(L) - 1);
    profile.values.resize(ny + L - 1);
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
        const std::ptrdiff_t lag = profile.first_lag + static_cast<std::ptrdiff_t>(i);
        const std::size_t src =
            static_cast<std::size_t>(lag >= 0 ? lag : lag + static_cast<std::ptrdiff_t>(N));
        profile.values[i] = fy[src];
    }
    return profile;
}

std::vector<double> profile_db(const RangeProfile& profile) {
    double peak = 0.0;
    for (const auto& v : profile.values) peak = std::max(peak, std::abs(v));
    if (!(peak > 0.0))
        throw std::domain_error("profile_db: all-zero profile");
    std::vector<double> out(profile.values.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = amplitude_db(std::abs(profile.values[i]) / peak);
    return out;
}

DelayDopplerMap delay_doppler_map(const std::vector<cvec>& echoes, const cvec& w,
                                  std::size_t M) {
    if (M < 2) throw std::invalid_argument("delay_doppler_map: need M >= 2");
    if (echoes.empty())
        throw std::invalid_argument("delay_doppler_map: no echoes");

    std::vector<RangeProfile> compressed;
    compressed.reserve(echoes.size());
    for (const auto& y : echoes) compressed.push_back(pulse_compress(y, w));
    const std::size_t bins = compressed.front().values.size();
    for (const auto& p : compressed)
        if (p.values.size() != bins)
            throw std::invalid_argument("delay_doppler_map: mixed window sizes");

    DelayDopplerMap map;
    map.first_lag = compressed.front().first_lag;
    map.doppler_grid.resize(M);
    for (std::size_t i = 0; i < M; ++i)
        map.doppler_grid[i] = -std::numbers::pi +
                              2.0 * std::numbers::pi * static_cast<double>(i) /
                                  static_cast<double>(M - 1);
    map.doppler_grid.front() = -std::numbers::pi;
    map.doppler_grid.back() = std::numbers::pi;

    map.magnitudes.assign(M, std::vector<double>(bins, 0.0));
    cvec acc(bins);
    for (std::size_t i = 0; i < M; ++i) {
        std::fill(acc.begin(), acc.end(), cdouble(0.0));
        for (std::size_t n = 0; n < compressed.size(); ++n) {
            const cdouble weight =
                std::polar(1.0, -map.doppler_grid[i] * static_cast<double>(n));
            for (std::size_t k = 0; k < bins; ++k)
                acc[k] += weight * compressed[n].values[k];
        }
        for (std::size_t k = 0; k < bins; ++k)
            map.magnitudes[i][k] = std::abs(acc[k]);
    }
    return map;
}

std::pair<std::size_t, std::size_t> map_argmax(const DelayDopplerMap& map) {
    std::size_t bi = 0, bk = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < map.magnitudes.size(); ++i)
        for (std::size_t k = 0; k < map.magnitudes[i].size(); ++k)
            if (map.magnitudes[i][k] > best) {
                best = map.magnitudes[i][k];
                bi = i;
                bk = k;
            }
    return {bi, bk};
}

}  // namespace isac
