#pragma once

#include <complex>

#include "ellkzb/curvefun.hpp"

namespace ellkzb::qoracle {

using C = std::complex<double>;

// Series budgets: q_terms lattice-sum terms, k_terms weight-expansion terms.
struct Params {
    int q_terms = 40;
    int k_terms = 320;
};

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline const C kTwoPiI = C(0.0, 2.0 * kPi);

// Eisenstein q-expansions and exact termwise tau-derivatives.
C eval_G(int k, C tau, const Params& p = {});
C eval_G_prime(int k, C tau, const Params& p = {});
// (2/k!) G_k(tau), stable for large k.
C eval_G_weighted(int k, C tau, const Params& p = {});

// Eisenstein-elliptic values; k = 1 uses the expansion of the odd
// quasi-periodic function recovered from the weight series.
C eval_P(int k, C xi, C tau, const Params& p = {});
C eval_P_dtau(int k, C xi, C tau, const Params& p = {});  // exact termwise, k <= 3
C eval_E(int k, C xi, C tau, const Params& p = {});       // E_k = (2 pi i)^k P_k + e_k

C eval_FZag(C u, C v, C tau, const Params& p = {});

// Numeric evaluation of an exact function at a complex point.
C eval_fun(const CurveFun& f, C x, C y, C u, C v);

// Identity checks; each returns the max absolute deviation.
double check_curve(C xi, C tau, const Params& p = {});
double check_f1(C xi, C tau, int M, const Params& p = {});
double check_cor_f1(C xi, C tau, int M, const Params& p = {});
double check_f2(C xi, C tau, const Params& p = {});
double check_algform(C tau, const Params& p = {});
double check_second_algform(C xi, C tau, const Params& p = {});
double check_fzag_sym(C u, C v, C tau, const Params& p = {});
double check_fzag_period(C u, C v, C tau, const Params& p = {});
double check_fzag_quasi(C u, C v, C tau, const Params& p = {});
double check_fzag_modular(C u, C v, C tau, const Params& p = {});
// | P_poly(k)(x,y,u,v) - P_k | at the image point of (xi, tau).
double check_P_poly_bridge(int k, C xi, C tau, const Params& p = {});

}  // namespace ellkzb::qoracle
