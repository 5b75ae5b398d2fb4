#pragma once
// Dense reference implementation of the surrogate operators, built from
// explicit shift matrices and full outer-product sums. Exponential in memory
// (the quadratic kernel is 4L^2 x 4L^2), so only usable for L <= 16; the
// production FFT path is checked against this.
#include <Eigen/Dense>
#include <complex>

#include "isac/jamming.hpp"
#include "isac/solver.hpp"
#include "isac/types.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Vec to_eigen(const isac::cvec& v) {
    return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline isac::cvec from_eigen(const Vec& v) {
    return isac::cvec(v.data(), v.data() + v.size());
}

inline Mat dense_from(const isac::TransferMatrix& J) {
    Mat D = Mat::Zero(static_cast<Eigen::Index>(J.size()),
                      static_cast<Eigen::Index>(J.size()));
    for (const auto& [r, c] : J.coords()) D(r, c) = 1.0;
    return D;
}

// U_k: ones on the k-th superdiagonal, (U_k)_{i, i+k} = 1. The stacked forms
// below embed U_k (plain) or J^H U_k (jammed) in the top-right block; the
// quadratic kernel is the sum of their vectorized outer products.
inline Mat shift_matrix(long k, long L) {
    Mat M = Mat::Zero(L, L);
    for (long i = 0; i < L; ++i) {
        const long j = i + k;
        if (j >= 0 && j < L) M(i, j) = 1.0;
    }
    return M;
}

inline Mat stacked_shift(long k, long L) {
    Mat Z = Mat::Zero(2 * L, 2 * L);
    Z.block(0, L, L, L) = shift_matrix(k, L);
    return Z;
}

inline Mat stacked_shift_jammed(long k, long L, const Mat& Jd) {
    Mat Z = Mat::Zero(2 * L, 2 * L);
    Z.block(0, L, L, L) = Jd.adjoint() * shift_matrix(k, L);
    return Z;
}

// Column-major vectorization (Eigen's native layout).
inline Vec vectorize(const Mat& M) {
    return Eigen::Map<const Vec>(M.data(), M.size());
}

/// The two outer-product sums the composite quadratic term is built from:
/// A over nonzero lags of the plain stacked shifts, B over all lags of the
/// jammed ones.
class DenseOperator {
public:
    DenseOperator(long L, const Mat& Jd) : L_(L), Jd_(Jd) {
        const long n = 4 * L * L;
        A_ = Mat::Zero(n, n);
        B_ = Mat::Zero(n, n);
        for (long k = -(L - 1); k < L; ++k) {
            if (k != 0) {
                const Vec v = vectorize(stacked_shift(k, L));
                A_.noalias() += v * v.adjoint();
            }
            const Vec vj = vectorize(stacked_shift_jammed(k, L, Jd));
            B_.noalias() += vj * vj.adjoint();
        }
    }

    Mat kernel(double rho) const { return rho * A_ + (1.0 - rho) * B_; }

    double largest_eigenvalue(double rho) const {
        Eigen::SelfAdjointEigenSolver<Mat> es(kernel(rho),
                                              Eigen::EigenvaluesOnly);
        return es.eigenvalues().maxCoeff();
    }

    /// (Q + Q^H) z where Q = unvec(W vec(z z^H)).
    isac::cvec q_sym(const isac::cvec& x, const isac::cvec& w, double rho) const {
        Vec z(2 * L_);
        z << to_eigen(x), to_eigen(w);
        const Mat Z = z * z.adjoint();
        const Vec g = kernel(rho) * vectorize(Z);
        const Mat G = Eigen::Map<const Mat>(g.data(), 2 * L_, 2 * L_);
        return from_eigen((G + G.adjoint()) * z);
    }

    /// Full ascent direction 4*lam*L*z + eps*st*(st^H z) + pen - (Q+Q^H)z,
    /// with pen the block penalty matrix applied to z.
    isac::cvec direction(const isac::cvec& x, const isac::cvec& w,
                         const isac::cvec& s, const isac::SolverConfig& cfg,
                         double lam) const {
        Vec z(2 * L_);
        z << to_eigen(x), to_eigen(w);
        Vec st = Vec::Zero(2 * L_);
        st.head(L_) = to_eigen(s);

        Mat pen = Mat::Zero(2 * L_, 2 * L_);
        pen.block(0, L_, L_, L_) =
            2.0 * cfg.beta1 * cfg.a_max * Mat::Identity(L_, L_) +
            2.0 * cfg.beta2 * cfg.a_min * Jd_.adjoint();
        pen.block(L_, 0, L_, L_) =
            2.0 * cfg.beta1 * cfg.a_max * Mat::Identity(L_, L_) +
            2.0 * cfg.beta2 * cfg.a_min * Jd_;

        const Vec qs = to_eigen(q_sym(x, w, cfg.rho));
        const Vec p = 4.0 * lam * static_cast<double>(L_) * z +
                      cfg.epsilon * st * (st.adjoint() * z) + pen * z - qs;
        return from_eigen(p);
    }

private:
    long L_;
    Mat Jd_, A_, B_;
};

}  // namespace oracle
