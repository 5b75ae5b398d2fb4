#include "isac/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace isac::fft {

namespace {

// One cached in-place plan pair per transform length. The scratch buffer is
// only used at planning time; execution rebinds to caller memory through the
// new-array API (plans carry FFTW_UNALIGNED, so any allocation is valid).
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* scratch = nullptr;
};

std::mutex g_mutex;
std::map<std::size_t, PlanPair>& cache() {
    static std::map<std::size_t, PlanPair> c;
    return c;
}

const PlanPair& plans_for(std::size_t n) {
    std::lock_guard<std::mutex> lock(g_mutex);
    auto& c = cache();
    auto it = c.find(n);
    if (it != c.end()) return it->second;

    PlanPair p;
    p.scratch = fftw_alloc_complex(n);
    if (!p.scratch) throw std::bad_alloc();
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.fwd = fftw_plan_dft_1d(static_cast<int>(n), p.scratch, p.scratch,
                             FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft_1d(static_cast<int>(n), p.scratch, p.scratch,
                             FFTW_BACKWARD, flags);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    return c.emplace(n, p).first->second;
}

void execute(cvec& v, bool forward_dir) {
    if (v.empty()) throw std::invalid_argument("fft: empty input");
    const PlanPair& p = plans_for(v.size());
    auto* data = reinterpret_cast<fftw_complex*>(v.data());
    fftw_execute_dft(forward_dir ? p.fwd : p.bwd, data, data);
}

}  // namespace

void forward_inplace(cvec& v) { execute(v, true); }

void inverse_inplace(cvec& v) {
    execute(v, false);
    const double scale = 1.0 / static_cast<double>(v.size());
    for (auto& z : v) z *= scale;
}

cvec forward(const cvec& in) {
    cvec out = in;
    forward_inplace(out);
    return out;
}

cvec inverse(const cvec& in) {
    cvec out = in;
    inverse_inplace(out);
    return out;
}

}  // namespace isac::fft
