#include "ellkzb/qoracle.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include "ellkzb/special.hpp"

namespace ellkzb::qoracle {

namespace {

void require_finite(const C& z, const char* where) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::runtime_error(std::string("qoracle: non-finite value in ") + where);
}

C qval(C tau) {
    C q = std::exp(kTwoPiI * tau);
    if (std::abs(q) >= 0.995) throw std::runtime_error("qoracle: |q| too close to 1");
    return q;
}

// R_j(z) = sum_{d>=1} d^j z^d = A_j(z)/(1-z)^(j+1); A_j are the Eulerian
// numerator polynomials, A_{j+1} = z(1-z)A_j' + (j+1) z A_j.
constexpr int kMaxRj = 14;

const std::vector<std::vector<double>>& eulerian_polys() {
    static std::vector<std::vector<double>> table = [] {
        std::vector<std::vector<double>> t;
        t.push_back({0.0, 1.0});  // A_1 = z
        for (int j = 1; j < kMaxRj; ++j) {
            const auto& a = t.back();
            std::vector<double> next(a.size() + 1, 0.0);
            // z(1-z) a' + (j+1) z a
            for (size_t i = 0; i < a.size(); ++i) {
                if (i >= 1) {
                    next[i] += (double)i * a[i];        // z * a'
                    next[i + 1] -= (double)i * a[i];    // -z^2 * a'
                }
                next[i + 1] += (double)(j + 1) * a[i];  // (j+1) z a
            }
            t.push_back(std::move(next));
        }
        return t;
    }();
    return table;
}

C R_j(int j, C z) {
    if (j < 1 || j > kMaxRj) throw std::invalid_argument("qoracle: R_j index out of range");
    const auto& a = eulerian_polys()[j - 1];
    C num = 0.0;
    for (size_t i = a.size(); i-- > 0;) num = num * z + a[i];
    C d = 1.0 - z;
    return num / std::pow(d, j + 1);
}

double zeta_real(int k) {
    double s = 1.0;
    for (int j = 2; j <= 40; ++j) s += std::pow((double)j, -k);
    return s;
}

// U_j(w, q) = R_j(w) + sum_n [ R_j(q^n w) + (-1)^(j+1) R_j(q^n / w) ].
C U_j(int j, C w, C q, const Params& p) {
    C acc = R_j(j, w);
    double sgn = (j % 2 == 0) ? -1.0 : 1.0;
    C qn = 1.0;
    for (int n = 1; n <= p.q_terms; ++n) {
        qn *= q;
        acc += R_j(j, qn * w) + sgn * R_j(j, qn / w);
    }
    return acc;
}

// d/dtau U_j: termwise, q^n-terms pick up 2 pi i n and one more R-index.
C U_j_dtau(int j, C w, C q, const Params& p) {
    double sgn = (j % 2 == 0) ? -1.0 : 1.0;
    C acc = 0.0;
    C qn = 1.0;
    for (int n = 1; n <= p.q_terms; ++n) {
        qn *= q;
        acc += (double)n * (R_j(j + 1, qn * w) + sgn * R_j(j + 1, qn / w));
    }
    return kTwoPiI * acc;
}

double lfact(int k) { return std::lgamma((double)k + 1.0); }

}  // namespace

C eval_G(int k, C tau, const Params& p) {
    if (k < 1) throw std::invalid_argument("eval_G: k must be >= 1");
    if (k % 2 == 1) return 0.0;
    C q = qval(tau);
    Rat c0 = -bernoulli(k) / Rat(2 * k);
    C acc = c0.get_d();
    C qn = 1.0;
    for (int n = 1; n <= p.q_terms; ++n) {
        qn *= q;
        acc += sigma_power(n, k - 1).get_d() * qn;
    }
    require_finite(acc, "eval_G");
    return acc;
}

C eval_G_prime(int k, C tau, const Params& p) {
    if (k % 2 == 1) return 0.0;
    C q = qval(tau);
    C acc = 0.0;
    C qn = 1.0;
    for (int n = 1; n <= p.q_terms; ++n) {
        qn *= q;
        acc += (double)n * sigma_power(n, k - 1).get_d() * qn;
    }
    return kTwoPiI * acc;
}

C eval_G_weighted(int k, C tau, const Params& p) {
    if (k % 2 == 1) return 0.0;
    C q = qval(tau);
    C acc;
    if (k <= 60) {
        // exact constant -B_k / (k k!)
        Rat c = -bernoulli(k) / (Rat(k) * rat_factorial(k));
        acc = c.get_d();
    } else {
        // (-1)^(k/2) * 2 zeta(k) / (k (2 pi)^k); zeta tail is negligible here
        double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
        double logmag = std::log(2.0 * zeta_real(k)) - std::log((double)k) - k * std::log(2.0 * kPi);
        acc = sign * std::exp(logmag);
    }
    // q-part: sum_n q^n sum_{d|n} exp((k-1) ln d - ln k!)
    C qn = 1.0;
    for (int n = 1; n <= p.q_terms; ++n) {
        qn *= q;
        double s = 0.0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) s += std::exp((k - 1) * std::log((double)d) - lfact(k));
        acc += 2.0 * s * qn;
    }
    require_finite(acc, "eval_G_weighted");
    return acc;
}

C eval_P(int k, C xi, C tau, const Params& p) {
    if (k < 1) throw std::invalid_argument("eval_P: k must be >= 1");
    C q = qval(tau);
    C w = std::exp(kTwoPiI * xi);
    if (k == 1) {
        // odd expansion recovered from the weight series:
        // P_1 = 1/(2 pi i xi) - sum_{k even} k G~_k (2 pi i xi)^(k-1)
        C z = kTwoPiI * xi;
        C acc = 1.0 / z;
        // no adaptive exit: at special lattices entire arithmetic
        // progressions of weights vanish and would fool any small-term test
        C zpow = 1.0;  // z^(j-1) running
        for (int j = 2; j <= p.k_terms; ++j) {
            zpow *= z;
            if (j % 2 == 1) continue;
            if (std::abs(zpow) * std::exp(-j * std::log(2.0 * kPi)) < 1e-20 * (1.0 + std::abs(acc)) && j > 16)
                break;  // bound on all remaining terms, not on the last one
            acc -= (double)j * eval_G_weighted(j, tau, p) * zpow;
        }
        require_finite(acc, "eval_P(1)");
        return acc;
    }
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    C val = sign * std::exp(-lfact(k - 1)) * U_j(k - 1, w, q, p);
    if (k % 2 == 0) val -= (double)k * eval_G_weighted(k, tau, p);
    require_finite(val, "eval_P");
    return val;
}

C eval_P_dtau(int k, C xi, C tau, const Params& p) {
    if (k < 2 || k > 3) throw std::invalid_argument("eval_P_dtau: implemented for k = 2, 3");
    C q = qval(tau);
    C w = std::exp(kTwoPiI * xi);
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    C val = sign * std::exp(-lfact(k - 1)) * U_j_dtau(k - 1, w, q, p);
    if (k % 2 == 0) {
        // d/dtau of -k G~_k with G~ = (2/k!) G_k
        val -= (double)k * std::exp(std::log(2.0) - lfact(k)) * eval_G_prime(k, tau, p);
    }
    require_finite(val, "eval_P_dtau");
    return val;
}

C eval_E(int k, C xi, C tau, const Params& p) {
    // E_k = (2 pi i)^k P_k + e_k, with e_k = (2 pi i)^k * 2 G_k / (k-1)!.
    C pk = eval_P(k, xi, tau, p);
    C scale = std::pow(kTwoPiI, k);
    C ek = 0.0;
    if (k % 2 == 0) ek = scale * (double)k * eval_G_weighted(k, tau, p);
    return scale * pk + ek;
}

C eval_FZag(C u, C v, C tau, const Params& p) {
    if (std::abs(u) < 1e-12 || std::abs(v) < 1e-12) throw std::invalid_argument("eval_FZag: u, v must be nonzero");
    // pole proximity: u + v on the scaled lattice 2 pi i (Z + Z tau)
    {
        C z = (u + v) / kTwoPiI;
        double b = z.imag() / tau.imag();
        double a = z.real() - b * tau.real();
        double da = std::abs(a - std::round(a)), db = std::abs(b - std::round(b));
        if (da < 1e-6 && db < 1e-6) throw std::invalid_argument("eval_FZag: u + v too close to a pole");
    }
    // The weight series converges for arguments inside 2 pi times the
    // shortest lattice distance; track the tail bound honestly.
    C acc = 0.0;
    C uk = 1.0, vk = 1.0, sk = 1.0;
    C s = u + v;
    // |G~_k| decays like min(2 pi, ln(1/|q|))^-k up to polynomial factors.
    double lscale = std::max(1.05, std::log(1.0 / std::abs(qval(tau))));
    double lrate = std::log(std::min(2.0 * kPi, lscale));
    bool converged = false;
    for (int k = 1; k <= p.k_terms; ++k) {
        uk *= u;
        vk *= v;
        sk *= s;
        if (k % 2 == 1) continue;
        acc += eval_G_weighted(k, tau, p) * (uk + vk - sk);
        double amax = std::max({std::abs(uk), std::abs(vk), std::abs(sk)});
        double decay = k * lrate;
        if (amax * std::exp(-decay) < 1e-13 * (1.0 + std::abs(acc)) && k > 16) {
            converged = true;
            break;
        }
    }
    if (!converged) throw std::runtime_error("eval_FZag: series did not converge at these arguments");
    C val = (u + v) / (u * v) * std::exp(acc);
    require_finite(val, "eval_FZag");
    return val;
}

C eval_fun(const CurveFun& f, C x, C y, C u, C v) {
    C num = 0.0;
    for (const auto& [m, c] : f.num().terms()) {
        C t = c.get_d();
        for (int i = 0; i < m.ex; ++i) t *= x;
        for (int i = 0; i < m.ey; ++i) t *= y;
        for (int i = 0; i < m.eu; ++i) t *= u;
        for (int i = 0; i < m.ev; ++i) t *= v;
        num += t;
    }
    C den = 1.0;
    for (int i = 0; i < f.ypow(); ++i) den *= y;
    C delta = u * u * u - 27.0 * v * v;
    for (int i = 0; i < f.dpow(); ++i) den *= delta;
    return num / den;
}

double check_curve(C xi, C tau, const Params& p) {
    C x = eval_P(2, xi, tau, p);
    C y = -2.0 * eval_P(3, xi, tau, p);
    C u = 20.0 * eval_G(4, tau, p);
    C v = 7.0 / 3.0 * eval_G(6, tau, p);
    return std::abs(y * y - (4.0 * x * x * x - u * x - v));
}

namespace {

// Truncated Laurent polynomials in the formal variable of the weight
// expansion, lowest exponent `lo`.
struct TPoly {
    int lo = 0;
    std::vector<C> c;  // c[i] is the coefficient of T^(lo+i)

    C at(int e) const {
        int i = e - lo;
        return (i >= 0 && i < (int)c.size()) ? c[i] : C(0.0);
    }
};

TPoly tmul(const TPoly& a, const TPoly& b, int hi) {
    TPoly out;
    out.lo = a.lo + b.lo;
    out.c.assign(hi - out.lo + 1, 0.0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) {
            int e = a.lo + (int)i + b.lo + (int)j;
            if (e <= hi) out.c[e - out.lo] += a.c[i] * b.c[j];
        }
    return out;
}

TPoly texp(const TPoly& a, int hi) {
    if (a.lo < 1) throw std::invalid_argument("texp: positive valuation required");
    TPoly out{0, {1.0}};
    TPoly pw{0, {1.0}};
    double fact = 1.0;
    for (int k = 1; k <= hi; ++k) {
        pw = tmul(pw, a, hi);
        fact *= k;
        TPoly next = out;
        int new_hi = hi;
        (void)new_hi;
        // out += pw / fact
        int lo = std::min(out.lo, pw.lo);
        TPoly sum;
        sum.lo = lo;
        sum.c.assign(hi - lo + 1, 0.0);
        for (int e = lo; e <= hi; ++e) sum.c[e - lo] = out.at(e) + pw.at(e) / fact;
        out = sum;
        if (pw.lo > hi) break;
    }
    return out;
}

// T-expansion of T * FZag(2 pi i xi, T, tau) to degree M.
TPoly tfzag_series(C xi, C tau, int M, const Params& p) {
    C z = kTwoPiI * xi;
    // g(T) = sum_k G~_k [ z^k + T^k - (z+T)^k ], coefficients in T
    TPoly g;
    g.lo = 1;
    g.c.assign(M, 0.0);
    for (int k = 2; k <= p.k_terms; k += 2) {
        C gw = eval_G_weighted(k, tau, p);
        double binom = 1.0;  // C(k, j) running
        C zpow = std::pow(z, k);  // z^(k-j) running
        double max_term = 0.0;
        for (int j = 1; j <= std::min(M, k); ++j) {
            binom = binom * (double)(k - j + 1) / (double)j;
            zpow /= z;
            C term = -gw * binom * zpow;
            if (j == k) term += gw;
            g.c[j - 1] += term;
            max_term = std::max(max_term, std::abs(binom * zpow));
        }
        if (k > 24 && max_term * std::exp(-k * std::log(2.0 * kPi)) < 1e-22) break;
    }
    // T F = ((z + T)/z) exp(g)
    TPoly pre{0, {1.0, 1.0 / z}};
    return tmul(pre, texp(g, M), M);
}

// T-expansion of exp(-sum_k (-T)^k/k P_k) to degree M.
TPoly p_exponential_series(C xi, C tau, int M, const Params& p) {
    TPoly a;
    a.lo = 1;
    a.c.assign(M, 0.0);
    for (int k = 1; k <= M; ++k) {
        double sign = (k % 2 == 0) ? -1.0 : 1.0;  // -(-1)^k / k
        a.c[k - 1] = sign / (double)k * eval_P(k, xi, tau, p);
    }
    return texp(a, M);
}

}  // namespace

double check_f1(C xi, C tau, int M, const Params& p) {
    TPoly lhs = tfzag_series(xi, tau, M, p);
    TPoly rhs = p_exponential_series(xi, tau, M, p);
    double dev = 0.0;
    for (int e = 0; e <= M; ++e) dev = std::max(dev, std::abs(lhs.at(e) - rhs.at(e)));
    return dev;
}

double check_cor_f1(C xi, C tau, int M, const Params& p) {
    // T dF/dT from the series of T F: F_j = (TF)_{j+1}, then multiply by j.
    TPoly tf = tfzag_series(xi, tau, M + 1, p);
    TPoly lhs;
    lhs.lo = -1;
    lhs.c.assign(M + 1, 0.0);
    for (int j = -1; j <= M - 1; ++j) lhs.c[j + 1] = (double)j * tf.at(j + 1);
    // rhs: exp(...) * (sum_k (-T)^(k-1) P_k - 1/T)
    TPoly ex = p_exponential_series(xi, tau, M + 1, p);
    TPoly fac;
    fac.lo = -1;
    fac.c.assign(M + 2, 0.0);
    fac.c[0] = -1.0;
    for (int k = 1; k <= M; ++k) {
        double sign = (k % 2 == 1) ? 1.0 : -1.0;
        fac.c[k] = sign * eval_P(k, xi, tau, p);
    }
    TPoly rhs = tmul(ex, fac, M - 1);
    double dev = 0.0;
    for (int e = -1; e <= M - 1; ++e) dev = std::max(dev, std::abs(lhs.at(e) - rhs.at(e)));
    return dev;
}

double check_f2(C xi, C tau, const Params& p) {
    // 2 pi i dE_1/dtau = E_3 - E_1 E_2, tau-derivative by Richardson.
    auto e1 = [&](C t) { return eval_E(1, xi, t, p); };
    double h = 1e-3;
    auto diff = [&](double hh) { return (e1(tau + C(hh, 0.0)) - e1(tau - C(hh, 0.0))) / (2.0 * hh); };
    C d1 = diff(h), d2 = diff(h / 2.0);
    C de1 = (4.0 * d2 - d1) / 3.0;
    C lhs = kTwoPiI * de1;
    C rhs = eval_E(3, xi, tau, p) - eval_E(1, xi, tau, p) * eval_E(2, xi, tau, p);
    return std::abs(lhs - rhs);
}

double check_algform(C tau, const Params& p) {
    C u = 20.0 * eval_G(4, tau, p), v = 7.0 / 3.0 * eval_G(6, tau, p);
    C up = 20.0 * eval_G_prime(4, tau, p), vp = 7.0 / 3.0 * eval_G_prime(6, tau, p);
    C delta = u * u * u - 27.0 * v * v;
    C alpha_dtau = 2.0 * u * vp - 3.0 * v * up;  // alpha pulled back along tau
    return std::abs(3.0 * alpha_dtau / (2.0 * delta) - kTwoPiI);
}

double check_second_algform(C xi, C tau, const Params& p) {
    // compare both sides of
    // 2 pi i (dxi + E_1/(2 pi i) dtau) = dx/y - ((6x^2-u)/y) alpha/(2 Delta)
    //                                    - (1/6)(dDelta/Delta)(x/y)
    // in the (dxi, dtau) frame.
    C u = 20.0 * eval_G(4, tau, p), v = 7.0 / 3.0 * eval_G(6, tau, p);
    C up = 20.0 * eval_G_prime(4, tau, p), vp = 7.0 / 3.0 * eval_G_prime(6, tau, p);
    C x = eval_P(2, xi, tau, p);
    C y = -2.0 * eval_P(3, xi, tau, p);
    C x_xi = kTwoPiI * U_j(2, std::exp(kTwoPiI * xi), qval(tau), p);  // dP2/dxi = 2 pi i U_2
    C x_tau = eval_P_dtau(2, xi, tau, p);
    C delta = u * u * u - 27.0 * v * v;
    C delta_tau = 3.0 * u * u * up - 54.0 * v * vp;
    C alpha_tau = 2.0 * u * vp - 3.0 * v * up;
    // dxi components
    C lhs_xi = kTwoPiI;
    C rhs_xi = x_xi / y;
    // dtau components
    C lhs_tau = eval_E(1, xi, tau, p);
    C rhs_tau = x_tau / y - (6.0 * x * x - u) / y * alpha_tau / (2.0 * delta) -
                delta_tau / (6.0 * delta) * x / y;
    return std::max(std::abs(lhs_xi - rhs_xi), std::abs(lhs_tau - rhs_tau));
}

double check_fzag_sym(C u, C v, C tau, const Params& p) {
    return std::abs(eval_FZag(u, v, tau, p) - eval_FZag(v, u, tau, p));
}

double check_fzag_period(C u, C v, C tau, const Params& p) {
    return std::abs(eval_FZag(u + kTwoPiI, v, tau, p) - eval_FZag(u, v, tau, p));
}

double check_fzag_quasi(C u, C v, C tau, const Params& p) {
    C lhs = eval_FZag(u + kTwoPiI * tau, v, tau, p);
    C rhs = std::exp(-v) * eval_FZag(u, v, tau, p);
    return std::abs(lhs - rhs);
}

double check_fzag_modular(C u, C v, C tau, const Params& p) {
    // gamma = (0,-1;1,0): tau -> -1/tau, factor (c tau + d) = tau.
    C lhs = eval_FZag(u / tau, v / tau, -1.0 / tau, p);
    C rhs = tau * std::exp(u * v / (kTwoPiI * tau)) * eval_FZag(u, v, tau, p);
    return std::abs(lhs - rhs);
}

double check_P_poly_bridge(int k, C xi, C tau, const Params& p) {
    C x = eval_P(2, xi, tau, p);
    C y = -2.0 * eval_P(3, xi, tau, p);
    C u = 20.0 * eval_G(4, tau, p), v = 7.0 / 3.0 * eval_G(6, tau, p);
    C lhs = eval_fun(CurveFun(P_poly(k)), x, y, u, v);
    return std::abs(lhs - eval_P(k, xi, tau, p));
}

}  // namespace ellkzb::qoracle
