#pragma once
#include <cmath>
#include <complex>
#include <vector>

namespace isac {

using cdouble = std::complex<double>;
using cvec = std::vector<cdouble>;

/// Sentinel for ratios that are exactly zero (-inf dB): keeps CSV output
/// finite and sortable.
inline constexpr double kDbFloor = -300.0;

inline double energy(const cvec& v) {
    double e = 0.0;
    for (const auto& z : v) e += std::norm(z);
    return e;
}

inline double norm_l2(const cvec& v) { return std::sqrt(energy(v)); }

/// 10*log10 of a power ratio, floored at kDbFloor.
inline double power_db(double ratio) {
    if (!(ratio > 0.0)) return kDbFloor;
    return std::max(kDbFloor, 10.0 * std::log10(ratio));
}

/// 20*log10 of an amplitude ratio, floored at kDbFloor.
inline double amplitude_db(double ratio) {
    if (!(ratio > 0.0)) return kDbFloor;
    return std::max(kDbFloor, 20.0 * std::log10(ratio));
}

}  // namespace isac
