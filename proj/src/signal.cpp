#include "isac/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isac/fft.hpp"

namespace isac {

namespace {

void require_same_length(const cvec& x, const cvec& w) {
    if (x.size() != w.size())
        throw std::invalid_argument("correlation: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("correlation: length < 2");
}

}  // namespace

cvec xcorr_direct(const cvec& x, const cvec& w) {
    require_same_length(x, w);
    const std::ptrdiff_t L = static_cast<std::ptrdiff_t>(x.size());
    cvec out(2 * L - 1, cdouble(0.0));
    for (std::ptrdiff_t k = 1 - L; k < L; ++k) {
        cdouble acc(0.0);
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, -k);
        const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(L, L - k);
        for (std::ptrdiff_t l = lo; l < hi; ++l)
            acc += x[static_cast<std::size_t>(l)] *
                   std::conj(w[static_cast<std::size_t>(l + k)]);
        out[static_cast<std::size_t>(k + L - 1)] = acc;
    }
    return out;
}

cvec xcorr_fft(const cvec& x, const cvec& w) {
    require_same_length(x, w);
    const std::size_t L = x.size();
    const std::size_t N = 2 * L;

    cvec fx(N, cdouble(0.0)), fw(N, cdouble(0.0));
    std::copy(x.begin(), x.end(), fx.begin());
    std::copy(w.begin(), w.end(), fw.begin());
    fft::forward_inplace(fx);
    fft::forward_inplace(fw);

    // c[m] = sum_l conj(w_l) x_{l+m mod 2L} = C_{x,w}(-m), so lag k lives at
    // index (-k) mod 2L.
    cvec c(N);
    for (std::size_t m = 0; m < N; ++m) c[m] = std::conj(fw[m]) * fx[m];
    fft::inverse_inplace(c);

    cvec out(2 * L - 1);
    for (std::ptrdiff_t k = 1 - static_cast<std::ptrdiff_t>(L);
         k < static_cast<std::ptrdiff_t>(L); ++k) {
        const std::size_t src = static_cast<std::size_t>(
            k <= 0 ? -k : static_cast<std::ptrdiff_t>(N) - k);
        out[static_cast<std::size_t>(k + static_cast<std::ptrdiff_t>(L) - 1)] = c[src];
    }
    return out;
}

double isl(const cvec& x, const cvec& w) {
    const cvec c = xcorr_fft(x, w);
    const std::size_t zero_lag = x.size() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (i != zero_lag) acc += std::norm(c[i]);
    return acc;
}

double il(const cvec& xj, const cvec& w) {
    const cvec c = xcorr_fft(xj, w);
    double acc = 0.0;
    for (const auto& z : c) acc += std::norm(z);
    return acc;
}

double papr(const cvec& x) {
    const double e = energy(x);
    if (!(e > 0.0)) throw std::domain_error("papr: zero-energy input");
    double peak = 0.0;
    for (const auto& z : x) peak = std::max(peak, std::norm(z));
    return static_cast<double>(x.size()) * peak / e;
}

double pslr_db(const cvec& profile, std::size_t peak_index) {
    if (peak_index >= profile.size())
        throw std::invalid_argument("pslr: peak index out of range");
    const double peak = std::abs(profile[peak_index]);
    if (!(peak > 0.0)) throw std::domain_error("pslr: zero peak");
    double side = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i)
        if (i != peak_index) side = std::max(side, std::abs(profile[i]));
    return amplitude_db(side / peak);
}

double pslr_db(const cvec& profile) {
    if (profile.size() % 2 == 0)
        throw std::invalid_argument("pslr: even-length profile has no centre lag");
    return pslr_db(profile, profile.size() / 2);
}

double lpg_db(const cvec& x, const cvec& w) {
    if (x.size() != w.size()) throw std::invalid_argument("lpg: length mismatch");
    const double ex = energy(x), ew = energy(w);
    if (!(ex > 0.0) || !(ew > 0.0))
        throw std::domain_error("lpg: zero-energy input");
    cdouble ip(0.0);
    for (std::size_t i = 0; i < x.size(); ++i) ip += std::conj(w[i]) * x[i];
    return power_db(std::norm(ip) / (ex * ew));
}

cvec scale_to_energy(const cvec& x, double target_energy) {
    if (!(target_energy > 0.0))
        throw std::domain_error("scale_to_energy: target must be positive");
    const double e = energy(x);
    if (!(e > 0.0)) throw std::domain_error("scale_to_energy: zero-energy input");
    const double s = std::sqrt(target_energy / e);
    cvec out = x;
    for (auto& z : out) z *= s;
    return out;
}

}  // namespace isac
