#pragma once
#include "isac/types.hpp"

namespace isac::fft {

/// Unnormalized forward DFT. Plans are cached per length behind a mutex;
/// execution is thread-safe.
cvec forward(const cvec& in);

/// Inverse DFT normalized by 1/N, so inverse(forward(v)) == v.
cvec inverse(const cvec& in);

void forward_inplace(cvec& v);
void inverse_inplace(cvec& v);

}  // namespace isac::fft
