#include "isac/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "isac/fft.hpp"
#include "isac/signal.hpp"

namespace isac {

namespace {

cvec padded_fft(const cvec& v) {
    cvec out(2 * v.size(), cdouble(0.0));
    std::copy(v.begin(), v.end(), out.begin());
    fft::forward_inplace(out);
    return out;
}

// head_L(ifft(a .* b)) for length-2L spectra.
cvec head_inverse_product(const cvec& a, const cvec& b, std::size_t L) {
    cvec tmp(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) tmp[i] = a[i] * b[i];
    fft::inverse_inplace(tmp);
    tmp.resize(L);
    return tmp;
}

struct SpectraParts {
    cvec fx, fw, fxj;  // length-2L transforms of the zero-padded blocks
    cvec mu, mu_j;     // masked correlation spectra
};

SpectraParts make_spectra(const cvec& x, const cvec& w, const cvec& xj) {
    const std::size_t L = x.size();
    const std::size_t N = 2 * L;
    SpectraParts sp;
    sp.fx = padded_fft(x);
    sp.fw = padded_fft(w);
    sp.fxj = padded_fft(xj);

    // c[m] holds the cross-correlation at lag m (m < L) or m - 2L (m > L);
    // c[L] is a guard slot both masks zero out.
    cvec c(N), cj(N);
    for (std::size_t m = 0; m < N; ++m) {
        c[m] = std::conj(sp.fw[m]) * sp.fx[m];
        cj[m] = std::conj(sp.fw[m]) * sp.fxj[m];
    }
    fft::inverse_inplace(c);
    fft::inverse_inplace(cj);

    c[0] = 0.0;   // zero lag excluded from the sidelobe sum
    c[L] = 0.0;
    cj[L] = 0.0;  // zero lag kept for the jamming sum

    fft::forward_inplace(c);
    fft::forward_inplace(cj);
    sp.mu = std::move(c);
    sp.mu_j = std::move(cj);
    return sp;
}

cvec q_sym_from(const SpectraParts& sp, double rho, const TransferMatrix& J,
                std::size_t L) {
    const std::size_t N = 2 * L;
    cvec conj_mu(N), conj_mu_j(N);
    for (std::size_t i = 0; i < N; ++i) {
        conj_mu[i] = std::conj(sp.mu[i]);
        conj_mu_j[i] = std::conj(sp.mu_j[i]);
    }

    const cvec top_a = head_inverse_product(sp.mu, sp.fw, L);
    const cvec top_b = J.apply_adjoint(head_inverse_product(sp.mu_j, sp.fw, L));
    const cvec bot_a = head_inverse_product(conj_mu, sp.fx, L);
    const cvec bot_b = head_inverse_product(conj_mu_j, sp.fxj, L);

    cvec out(2 * L);
    for (std::size_t l = 0; l < L; ++l) {
        out[l] = rho * top_a[l] + (1.0 - rho) * top_b[l];
        out[L + l] = rho * bot_a[l] + (1.0 - rho) * bot_b[l];
    }
    return out;
}

double iterate_gap(const StackedState& next, const StackedState& prev) {
    double gx = 0.0, gw = 0.0;
    for (std::size_t i = 0; i < next.x.size(); ++i) gx += std::norm(next.x[i] - prev.x[i]);
    for (std::size_t i = 0; i < next.w.size(); ++i) gw += std::norm(next.w[i] - prev.w[i]);
    return std::sqrt(gx) + std::sqrt(gw);
}

}  // namespace

SolverConfig SolverConfig::resolved(std::size_t length) const {
    SolverConfig out = *this;
    if (out.a_max < 0.0) out.a_max = static_cast<double>(length);
    if (out.a_min < 0.0) out.a_min = 1e-4 * static_cast<double>(length);
    return out;
}

void SolverConfig::validate() const {
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("solver config: rho must be in [0, 1]");
    if (!(epsilon >= 0.0))
        throw std::invalid_argument("solver config: epsilon must be >= 0");
    if (!(beta1 >= 0.0) || !(beta2 >= 0.0))
        throw std::invalid_argument("solver config: beta weights must be >= 0");
    if (std::abs(beta1 + beta2 - 1.0) > 1e-12)
        throw std::invalid_argument("solver config: beta1 + beta2 must equal 1");
    if (!(gamma >= 1.0))
        throw std::invalid_argument("solver config: gamma must be >= 1");
    if (!(eta > 0.0)) throw std::invalid_argument("solver config: eta must be > 0");
    if (max_iter == 0)
        throw std::invalid_argument("solver config: max_iter must be positive");
    if (accel_max_backtracks < 0)
        throw std::invalid_argument("solver config: accel_max_backtracks must be >= 0");
}

numerical_error::numerical_error(const std::string& what, std::size_t iteration)
    : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
      iteration_(iteration) {}

double lambda_u(double rho, const TransferMatrix& J, std::size_t L) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(L);
    std::size_t best = 0;
    for (std::ptrdiff_t k = 1 - n; k < n; ++k) {
        std::size_t cnt = 0;
        for (const auto& [r, c] : J.coords()) {
            const std::ptrdiff_t shifted = static_cast<std::ptrdiff_t>(r) + k;
            if (shifted >= 0 && shifted < n) ++cnt;
        }
        best = std::max(best, cnt);
    }
    return rho * static_cast<double>(L - 1) +
           (1.0 - rho) * static_cast<double>(best);
}

CorrelationSpectra correlation_spectra(const cvec& x, const cvec& w, const cvec& xj) {
    SpectraParts sp = make_spectra(x, w, xj);
    return {std::move(sp.mu), std::move(sp.mu_j)};
}

cvec apply_q_sym(const cvec& x, const cvec& w, const cvec& xj, double rho,
                 const TransferMatrix& J) {
    const SpectraParts sp = make_spectra(x, w, xj);
    return q_sym_from(sp, rho, J, x.size());
}

cvec compute_p(const cvec& x, const cvec& w, const cvec& s,
               const TransferMatrix& J, const SolverConfig& config, double lam_u) {
    const std::size_t L = x.size();
    const cvec xj = J.apply(x);
    const SpectraParts sp = make_spectra(x, w, xj);
    const cvec qz = q_sym_from(sp, config.rho, J, L);

    const cvec jhw = J.apply_adjoint(w);
    cdouble s_dot_x(0.0);  // s^H x
    for (std::size_t l = 0; l < L; ++l) s_dot_x += std::conj(s[l]) * x[l];

    const double lead = 4.0 * lam_u * static_cast<double>(L);
    const double c1 = 2.0 * config.beta1 * config.a_max;
    const double c2 = 2.0 * config.beta2 * config.a_min;

    cvec p(2 * L);
    for (std::size_t l = 0; l < L; ++l) {
        const cdouble pen_top =
            c1 * w[l] + c2 * jhw[l] + config.epsilon * s[l] * s_dot_x;
        const cdouble pen_bot = c1 * x[l] + c2 * xj[l];
        p[l] = lead * x[l] + pen_top - qz[l];
        p[L + l] = lead * w[l] + pen_bot - qz[L + l];
    }
    return p;
}

cvec update_w(const cvec& p_w) {
    const double n2 = energy(p_w);
    if (!(n2 > 0.0)) throw std::domain_error("update_w: zero direction block");
    const double scale = std::sqrt(static_cast<double>(p_w.size()) / n2);
    cvec w(p_w.size());
    for (std::size_t i = 0; i < p_w.size(); ++i) w[i] = scale * p_w[i];
    return w;
}

BisectResult bisect_delta(const cvec& p_x, double gamma, double target_energy) {
    double min_nz = std::numeric_limits<double>::infinity();
    for (const auto& p : p_x) {
        const double a = std::abs(p);
        if (a > 0.0) min_nz = std::min(min_nz, a);
    }
    if (!std::isfinite(min_nz))
        throw std::domain_error("bisect_delta: all-zero direction block");

    const double g2 = gamma * gamma;
    auto f = [&](double d) {
        const double d2 = d * d;
        double acc = 0.0;
        for (const auto& p : p_x) acc += std::min(g2, d2 * std::norm(p));
        return acc - target_energy;
    };

    double lo = 0.0;
    double hi = gamma / min_nz;
    while (hi - lo >= 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval below representable width
        if (f(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    const double delta = 0.5 * (lo + hi);
    return {delta, std::abs(f(delta))};
}

cvec update_x(const cvec& p_x, const cvec& x_prev, double gamma) {
    const std::size_t L = p_x.size();
    cvec x(L);

    auto carried_phase = [&](std::size_t l) {
        const double a = std::abs(x_prev[l]);
        return a > 0.0 ? x_prev[l] / a : cdouble(1.0);
    };

    if (gamma <= 1.0) {  // constant-modulus fast path
        for (std::size_t l = 0; l < L; ++l) {
            const double a = std::abs(p_x[l]);
            x[l] = a > 0.0 ? p_x[l] / a : carried_phase(l);
        }
        return x;
    }

    // Condition the bisection on an O(1) scale: the clip rule is invariant
    // to rescaling p jointly with delta.
    const double sigma = std::sqrt(energy(p_x) / static_cast<double>(L));
    if (!(sigma > 0.0)) throw std::domain_error("update_x: zero direction block");
    cvec p_hat(L);
    for (std::size_t l = 0; l < L; ++l) p_hat[l] = p_x[l] / sigma;

    const BisectResult bs = bisect_delta(p_hat, gamma, static_cast<double>(L));
    for (std::size_t l = 0; l < L; ++l) {
        const double a = std::abs(p_hat[l]);
        const double mag = std::min(bs.delta * a, gamma);
        x[l] = a > 0.0 ? mag * (p_hat[l] / a) : mag * carried_phase(l);
    }
    return x;
}

ObjectiveRecord objective(const cvec& x, const cvec& w, const cvec& s,
                          const TransferMatrix& J, const SolverConfig& config) {
    ObjectiveRecord rec;
    const cvec xj = J.apply(x);
    rec.isl = isl(x, w);
    rec.il = il(xj, w);

    cdouble xw(0.0), jxw(0.0), sx(0.0);
    double sim = 0.0;
    for (std::size_t l = 0; l < x.size(); ++l) {
        xw += std::conj(x[l]) * w[l];
        jxw += std::conj(xj[l]) * w[l];
        sx += std::conj(s[l]) * x[l];
        sim += std::norm(x[l] - s[l]);
    }
    rec.similarity = sim;
    rec.lpg_penalty = -4.0 * config.beta1 * config.a_max * xw.real();
    rec.jam_penalty = -4.0 * config.beta2 * config.a_min * jxw.real();
    rec.corr_similarity = -config.epsilon * std::norm(sx);
    rec.composite = config.rho * rec.isl + (1.0 - config.rho) * rec.il +
                    rec.lpg_penalty + rec.jam_penalty + rec.corr_similarity;
    return rec;
}

StackedState squarem_candidate(const StackedState& z0, const StackedState& z1,
                               const StackedState& z2, double alpha, double gamma) {
    const std::size_t L = z0.x.size();
    cvec raw_x(L), raw_w(L);
    const double a2 = alpha * alpha;
    for (std::size_t l = 0; l < L; ++l) {
        const cdouble rx = z1.x[l] - z0.x[l];
        const cdouble vx = z2.x[l] - 2.0 * z1.x[l] + z0.x[l];
        raw_x[l] = z0.x[l] - 2.0 * alpha * rx + a2 * vx;
        const cdouble rw = z1.w[l] - z0.w[l];
        const cdouble vw = z2.w[l] - 2.0 * z1.w[l] + z0.w[l];
        raw_w[l] = z0.w[l] - 2.0 * alpha * rw + a2 * vw;
    }
    StackedState out;
    out.w = update_w(raw_w);
    out.x = update_x(raw_x, z1.x, gamma);
    return out;
}

namespace {

bool all_finite(const cvec& v) {
    for (const auto& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

}  // namespace

SolverResult solve(const cvec& s, const TransferMatrix& J, const SolverConfig& config,
                   std::optional<cvec> w_init, const SolveObserver& observer) {
    config.validate();
    const std::size_t L = s.size();
    if (L < 2) throw std::invalid_argument("solve: sequence length < 2");
    if (J.size() != L) throw std::invalid_argument("solve: jammer size mismatch");
    if (w_init && w_init->size() != L)
        throw std::invalid_argument("solve: w_init length mismatch");

    const SolverConfig cfg = config.resolved(L);
    const double lam = lambda_u(cfg.rho, J, L);
    const cvec s_scaled = scale_to_energy(s, static_cast<double>(L));

    StackedState z;
    z.x = s_scaled;
    z.w = w_init ? scale_to_energy(*w_init, static_cast<double>(L)) : z.x;

    // One plain surrogate-argmax step: both blocks update from the same P.
    auto gmap = [&](const StackedState& state) {
        const cvec p = compute_p(state.x, state.w, s_scaled, J, cfg, lam);
        const cvec p_x(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(L));
        const cvec p_w(p.begin() + static_cast<std::ptrdiff_t>(L), p.end());
        StackedState out;
        out.w = update_w(p_w);
        out.x = update_x(p_x, state.x, cfg.gamma);
        return out;
    };

    SolverResult result;
    result.trace.reserve(std::min<std::size_t>(cfg.max_iter, 4096));

    for (std::size_t t = 0; t < cfg.max_iter; ++t) {
        StackedState next;
        bool fallback = false;

        if (!cfg.accel) {
            next = gmap(z);
        } else {
            const StackedState z1 = gmap(z);
            const StackedState z2 = gmap(z1);

            double r2 = 0.0, v2 = 0.0;
            for (std::size_t l = 0; l < L; ++l) {
                r2 += std::norm(z1.x[l] - z.x[l]) + std::norm(z1.w[l] - z.w[l]);
                v2 += std::norm(z2.x[l] - 2.0 * z1.x[l] + z.x[l]) +
                      std::norm(z2.w[l] - 2.0 * z1.w[l] + z.w[l]);
            }

            if (v2 == 0.0) {
                next = z2;
            } else {
                const double obj2 =
                    objective(z2.x, z2.w, s_scaled, J, cfg).composite;
                double alpha = std::min(-1.0, -std::sqrt(r2 / v2));
                bool accepted = false;
                for (int bt = 0; bt < cfg.accel_max_backtracks; ++bt) {
                    try {
                        StackedState cand = squarem_candidate(z, z1, z2, alpha, cfg.gamma);
                        const double obj_c =
                            objective(cand.x, cand.w, s_scaled, J, cfg).composite;
                        if (std::isfinite(obj_c) && obj_c <= obj2) {
                            next = std::move(cand);
                            accepted = true;
                            break;
                        }
                    } catch (const std::domain_error&) {
                        // degenerate extrapolation; shorten the step
                    }
                    alpha = 0.5 * (alpha - 1.0);
                    if (alpha > -1.0001) break;  // candidate would just replay z2
                }
                if (!accepted) {
                    next = z2;
                    fallback = true;
                }
            }
        }

        const double gap = iterate_gap(next, z);
        z = std::move(next);

        if (!all_finite(z.x) || !all_finite(z.w) || !std::isfinite(gap))
            throw numerical_error("solve: non-finite iterate", t);

        const ObjectiveRecord obj = objective(z.x, z.w, s_scaled, J, cfg);
        if (!std::isfinite(obj.composite))
            throw numerical_error("solve: non-finite objective", t);

        IterationRecord rec;
        rec.iteration = t;
        rec.composite = obj.composite;
        rec.isl = obj.isl;
        rec.il = obj.il;
        rec.similarity = obj.similarity;
        rec.eps_gap = gap;
        rec.lpg_db = lpg_db(z.x, z.w);
        rec.fallback = fallback;
        result.trace.push_back(rec);
        if (observer) observer(z.x, z.w, rec);

        if (gap <= cfg.eta) {
            result.converged = true;
            break;
        }
    }

    result.x = std::move(z.x);
    result.w = std::move(z.w);
    return result;
}

}  // namespace isac
