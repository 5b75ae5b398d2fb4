#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "isac/jamming.hpp"
#include "isac/types.hpp"

namespace isac {

/// Weights and constraints of the joint waveform/filter design problem.
///
/// a_max and a_min default to negative sentinels meaning "derive from L":
/// resolved() maps them to L and 1e-4 * L respectively.
struct SolverConfig {
    double rho = 0.4;      ///< sidelobe vs jamming weight, in [0, 1]
    double epsilon = 2.0;  ///< communication-similarity penalty weight, >= 0
    double beta1 = 0.12;   ///< processing-gain penalty weight
    double beta2 = 0.88;   ///< jamming-peak penalty weight; beta1 + beta2 = 1
    double gamma = 1.5;    ///< per-sample amplitude bound, >= 1 (PAPR <= gamma^2)
    double a_max = -1.0;   ///< target correlation-peak level (< 0: use L)
    double a_min = -1.0;   ///< jamming correlation-peak level (< 0: use 1e-4 L)
    double eta = 1e-5;     ///< stopping threshold on the iterate gap
    std::size_t max_iter = 20000;
    bool accel = true;            ///< SQUAREM extrapolation on/off
    int accel_max_backtracks = 4; ///< step-length halvings before fallback

    /// Copy with a_max/a_min sentinels replaced by their L-derived defaults.
    SolverConfig resolved(std::size_t length) const;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Objective pieces at a given (x, w); composite is the quantity the descent
/// guarantee applies to.
struct ObjectiveRecord {
    double isl = 0.0;              ///< filter/waveform sidelobe energy, zero lag excluded
    double il = 0.0;               ///< filter/jamming energy, zero lag included
    double similarity = 0.0;       ///< ||x - s||^2 (logged, not part of composite)
    double lpg_penalty = 0.0;      ///< -4 beta1 a_max Re(x^H w)
    double jam_penalty = 0.0;      ///< -4 beta2 a_min Re((Jx)^H w)
    double corr_similarity = 0.0;  ///< -epsilon |s^H x|^2
    double composite = 0.0;        ///< rho*isl + (1-rho)*il + penalties
};

/// One solver trace row. With acceleration on, one row covers a full
/// extrapolation cycle (two inner map evaluations plus the accepted iterate).
struct IterationRecord {
    std::size_t iteration = 0;
    double composite = 0.0;
    double isl = 0.0;
    double il = 0.0;
    double similarity = 0.0;
    double eps_gap = 0.0;  ///< ||x_new - x_old|| + ||w_new - w_old||
    double lpg_db = 0.0;
    bool fallback = false;  ///< extrapolated candidate rejected, plain step kept
};

struct SolverResult {
    cvec x;
    cvec w;
    std::vector<IterationRecord> trace;
    bool converged = false;
};

/// Non-finite values detected while iterating; carries the iteration index.
class numerical_error : public std::runtime_error {
public:
    numerical_error(const std::string& what, std::size_t iteration);
    std::size_t iteration() const { return iteration_; }

private:
    std::size_t iteration_;
};

/// Curvature bound of the majorizer: rho*(L-1) plus (1-rho) times the largest
/// shift-overlap count of J's support, max over shifts k of
/// #{(r,c) in supp(J) : 0 <= r+k < L}. Computed from the sparse coordinates.
double lambda_u(double rho, const TransferMatrix& J, std::size_t L);

/// Masked correlation spectra feeding the quadratic-term products. Both are
/// length-2L: mu excludes the zero lag, mu_j keeps it (and uses xj).
struct CorrelationSpectra {
    cvec mu;
    cvec mu_j;
};
CorrelationSpectra correlation_spectra(const cvec& x, const cvec& w, const cvec& xj);

/// (Q + Q^H) z for the stacked iterate z = [x; w], returned stacked; the
/// quadratic-form directional term of the surrogate. O(L log L) + O(nnz(J)).
cvec apply_q_sym(const cvec& x, const cvec& w, const cvec& xj, double rho,
                 const TransferMatrix& J);

/// Surrogate gradient direction P(z), stacked [P_x; P_w]. lam_u must come
/// from lambda_u with the same rho/J/L. Config fields are used as given
/// (no validation), so term-isolation probes are possible.
cvec compute_p(const cvec& x, const cvec& w, const cvec& s,
               const TransferMatrix& J, const SolverConfig& config, double lam_u);

/// Filter update: w = sqrt(L) P_w / ||P_w||. Throws std::domain_error on a
/// zero block (pathological configuration, surfaced not patched).
cvec update_w(const cvec& p_w);

struct BisectResult {
    double delta = 0.0;     ///< clip scale
    double residual = 0.0;  ///< |sum_l min(gamma^2, delta^2 |p_l|^2) - target|
};

/// Bisection for the amplitude scale delta solving
/// sum_l min(gamma^2, delta^2 |p_l|^2) = target_energy on [0, gamma/min|p_l|],
/// terminating on interval width < 1e-12. Throws std::domain_error when p_x
/// is all zero.
BisectResult bisect_delta(const cvec& p_x, double gamma, double target_energy);

/// Waveform update: magnitudes min(delta |p_l|, gamma), phases arg(p_l); the
/// result has energy L and respects the amplitude bound. With gamma = 1 the
/// constant-modulus fast path is taken (no bisection). Elements where p_l is
/// exactly zero carry the phase of x_prev[l].
cvec update_x(const cvec& p_x, const cvec& x_prev, double gamma);

/// Objective components at (x, w). Config is used as given.
ObjectiveRecord objective(const cvec& x, const cvec& w, const cvec& s,
                          const TransferMatrix& J, const SolverConfig& config);

/// Extrapolated candidate z - 2*alpha*r + alpha^2*v from the cycle states
/// z0 -> z1 -> z2, re-projected onto the constraint sets (filter block
/// renormalized, waveform block amplitude-projected with phase carry from
/// x1). alpha = -1 reproduces z2. Exposed for validation.
struct StackedState {
    cvec x;
    cvec w;
};
StackedState squarem_candidate(const StackedState& z0, const StackedState& z1,
                               const StackedState& z2, double alpha, double gamma);

/// Called after every accepted iterate with the new state and its trace row.
using SolveObserver =
    std::function<void(const cvec& x, const cvec& w, const IterationRecord&)>;

/// Run the full design iteration from x0 = s (scaled to energy L) and
/// w0 = w_init (defaults to x0). Stops when the iterate gap falls to eta or
/// max_iter is reached. Throws numerical_error on non-finite iterates and
/// std::invalid_argument on config violations.
SolverResult solve(const cvec& s, const TransferMatrix& J, const SolverConfig& config,
                   std::optional<cvec> w_init = std::nullopt,
                   const SolveObserver& observer = nullptr);

}  // namespace isac
