#pragma once
#include <cstddef>

#include "isac/types.hpp"

namespace isac {

/// Aperiodic cross-correlation C_{x,w}(k) = sum_l x_l * conj(w_{l+k}).
///
/// The profile stores lags 1-L .. L-1 contiguously (length 2L-1); the zero
/// lag sits at index L-1. C_{x,w}(k) == conj(C_{w,x}(-k)).
cvec xcorr_direct(const cvec& x, const cvec& w);  // O(L^2) reference path

/// Same profile via length-2L zero-padded transforms; O(L log L).
/// The transform length is exactly 2L (no power-of-two padding) so spectra
/// line up index-for-index with the solver's operator layout.
cvec xcorr_fft(const cvec& x, const cvec& w);

/// Integrated sidelobe level: sum of |C_{x,w}(k)|^2 over all k != 0.
double isl(const cvec& x, const cvec& w);

/// Integrated level of a jammed pair: same sum including k = 0.
double il(const cvec& xj, const cvec& w);

/// Peak-to-average power ratio L*max|x_l|^2 / energy(x); >= 1.
double papr(const cvec& x);

/// Peak sidelobe level ratio in dB: largest magnitude off the peak index
/// over the peak magnitude. Zero sidelobes report the kDbFloor sentinel.
double pslr_db(const cvec& profile, std::size_t peak_index);

/// Convenience overload for odd-length correlation profiles: peak taken at
/// the zero-lag (centre) index.
double pslr_db(const cvec& profile);

/// Processing-gain loss of a mismatched filter, in dB:
/// 10*log10(|w^H x|^2 / (||w||^2 ||x||^2)); <= 0, 0 iff w is proportional
/// to x, kDbFloor sentinel when the inner product vanishes.
double lpg_db(const cvec& x, const cvec& w);

/// Rescale to the exact target energy, direction preserved.
cvec scale_to_energy(const cvec& x, double target_energy);

}  // namespace isac
