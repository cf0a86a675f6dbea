#include "ellkzb/special.hpp"

#include <mutex>

#include "ellkzb/linalg.hpp"

namespace ellkzb {

QSeries QSeries::operator+(const QSeries& o) const {
    QSeries out(std::min(trunc(), o.trunc()), weight);
    for (int i = 0; i <= out.trunc(); ++i) out.c[i] = c[i] + o.c[i];
    return out;
}

QSeries QSeries::operator-(const QSeries& o) const {
    QSeries out(std::min(trunc(), o.trunc()), weight);
    for (int i = 0; i <= out.trunc(); ++i) out.c[i] = c[i] - o.c[i];
    return out;
}

QSeries QSeries::operator*(const QSeries& o) const {
    QSeries out(std::min(trunc(), o.trunc()), weight + o.weight);
    for (int i = 0; i <= trunc(); ++i) {
        if (c[i] == 0) continue;
        for (int j = 0; i + j <= out.trunc() && j <= o.trunc(); ++j) out.c[i + j] += c[i] * o.c[j];
    }
    return out;
}

QSeries QSeries::operator*(const Rat& s) const {
    QSeries out = *this;
    for (auto& x : out.c) x *= s;
    return out;
}

bool QSeries::is_zero() const {
    for (const auto& x : c)
        if (x != 0) return false;
    return true;
}

Rat bernoulli(int n) {
    if (n < 0) throw std::invalid_argument("bernoulli: negative index");
    static std::mutex mu;
    static std::vector<Rat> cache{Rat(1)};
    std::lock_guard<std::mutex> lock(mu);
    while ((int)cache.size() <= n) {
        int m = (int)cache.size();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        Rat acc(0);
        for (int j = 0; j < m; ++j) acc += rat_binomial(m + 1, j) * cache[j];
        cache.push_back(-acc / rat_binomial(m + 1, m));
    }
    return cache[n];
}

Rat sigma_power(int n, int k) {
    Rat total(0);
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        Rat p(1);
        for (int i = 0; i < k; ++i) p *= Rat(d);
        total += p;
    }
    return total;
}

QSeries eisenstein_G(int k, int trunc) {
    if (k < 1) throw std::invalid_argument("eisenstein_G: k must be >= 1");
    QSeries out(trunc, k);
    if (k % 2 == 1) return out;
    out.c[0] = -bernoulli(k) / Rat(2 * k);
    for (int n = 1; n <= trunc; ++n) out.c[n] = sigma_power(n, k - 1);
    return out;
}

namespace {

constexpr int kPPolyMatchTerms = 12;

// q-expansion of a monomial u^a v^b under u -> 20*G4, v -> (7/3)*G6.
QSeries uv_monomial_series(int a, int b, int trunc) {
    QSeries u4 = eisenstein_G(4, trunc) * Rat(20);
    QSeries v6 = eisenstein_G(6, trunc) * rat(7, 3);
    QSeries out(trunc, 0);
    out.c[0] = Rat(1);
    for (int i = 0; i < a; ++i) out = out * u4;
    for (int i = 0; i < b; ++i) out = out * v6;
    return out;
}

}  // namespace

CurvePoly p_poly(int m) {
    if (m < 4 || m % 2 != 0) throw std::invalid_argument("p_poly: weight must be even and >= 4");
    static std::mutex mu;
    static std::map<int, CurvePoly> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    // Basis of weight-m monomials u^a v^b, 4a + 6b = m.
    std::vector<std::pair<int, int>> basis;
    for (int a = 0; 4 * a <= m; ++a) {
        int rem = m - 4 * a;
        if (rem % 6 == 0) basis.emplace_back(a, rem / 6);
    }
    int M = kPPolyMatchTerms;
    QSeries target = eisenstein_G(m, M);
    std::vector<std::vector<Rat>> A(M + 1, std::vector<Rat>(basis.size(), Rat(0)));
    std::vector<Rat> b(M + 1);
    for (size_t j = 0; j < basis.size(); ++j) {
        QSeries s = uv_monomial_series(basis[j].first, basis[j].second, M);
        for (int i = 0; i <= M; ++i) A[i][j] = s.c[i];
    }
    for (int i = 0; i <= M; ++i) b[i] = target.c[i];
    LinSolveResult sol = solve_linear_system(A, b);
    if (!sol.consistent) throw std::logic_error("p_poly: modular matching system is inconsistent");
    for (bool f : sol.is_free)
        if (f) throw std::logic_error("p_poly: modular matching system is underdetermined");
    CurvePoly out;
    for (size_t j = 0; j < basis.size(); ++j)
        out = out + CurvePoly::monomial({0, 0, basis[j].first, basis[j].second}, sol.x[j]);
    return cache.emplace(m, std::move(out)).first->second;
}

namespace {

// Eisenstein value with odd indices suppressed, as an exact u,v polynomial.
CurvePoly G_as_poly(int k) {
    if (k % 2 == 1) return CurvePoly();
    return p_poly(k);
}

CurvePoly P_poly_impl(int k, std::map<int, CurvePoly>& cache) {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    CurvePoly out;
    if (k == 2) {
        out = CurvePoly::X();
    } else if (k == 3) {
        out = CurvePoly::Y() * rat(-1, 2);
    } else {
        // Generate with the m = 2 instance:
        // P_{n+2} = P_2 P_n - sum_{j=1}^{n-2} (2/j!) G_{2+j} P_{n-j} - ((n+2)/n!) G_{n+2}
        int n = k - 2;
        out = P_poly_impl(2, cache) * P_poly_impl(n, cache);
        for (int j = 1; j <= n - 2; ++j) {
            CurvePoly g = G_as_poly(2 + j);
            if (g.is_zero()) continue;
            out = out - g * P_poly_impl(n - j, cache) * (Rat(2) / rat_factorial(j));
        }
        out = out - G_as_poly(n + 2) * (Rat(n + 2) / rat_factorial(n));
    }
    cache.emplace(k, out);
    return out;
}

}  // namespace

CurvePoly P_poly(int k) {
    if (k < 2) throw std::invalid_argument("P_poly: k must be >= 2");
    static std::mutex mu;
    static std::map<int, CurvePoly> cache;
    std::lock_guard<std::mutex> lock(mu);
    return P_poly_impl(k, cache);
}

CurvePoly P_recurrence_residual(int m, int n) {
    if (m < 2 || n < 2) throw std::invalid_argument("P_recurrence_residual: indices must be >= 2");
    CurvePoly lhs = P_poly(m) * P_poly(n) - P_poly(m + n);
    CurvePoly rhs;
    Rat sm = (m % 2 == 0) ? Rat(1) : Rat(-1);
    Rat sn = (n % 2 == 0) ? Rat(1) : Rat(-1);
    for (int h = 1; h <= m - 2; ++h) {
        CurvePoly g = G_as_poly(n + h);
        if (g.is_zero()) continue;
        rhs = rhs + g * P_poly(m - h) * (sn * Rat(2) / (rat_factorial(n - 1) * rat_factorial(h)));
    }
    for (int j = 1; j <= n - 2; ++j) {
        CurvePoly g = G_as_poly(m + j);
        if (g.is_zero()) continue;
        rhs = rhs + g * P_poly(n - j) * (sm * Rat(2) / (rat_factorial(m - 1) * rat_factorial(j)));
    }
    rhs = rhs + G_as_poly(m + n) * (sm * Rat(2) * Rat(m + n) / (rat_factorial(m) * rat_factorial(n)));
    return lhs - rhs;
}

std::vector<std::vector<int>> partitions(int n, int min_part) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    // descending parts, each >= min_part
    auto rec = [&](auto&& self, int rest, int max_part) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, max_part); p >= min_part; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

CurveFun P1_fun() {
    return CurveFun(CurvePoly::X() * CurvePoly::X() * Rat(-2), 1, 0);
}

namespace {

// Sum over partitions of n (parts >= min_part) of
// prod_k (1/mult_k!) ((-1)^(k+1) P_k / k)^(mult_k).
CurveFun partition_sum(int n, int min_part) {
    CurveFun total;
    for (const auto& parts : partitions(n, min_part)) {
        std::map<int, int> mult;
        for (int p : parts) mult[p]++;
        CurveFun term(Rat(1));
        for (const auto& [k, a] : mult) {
            CurveFun pk = (k == 1) ? P1_fun() : CurveFun(P_poly(k));
            Rat scale = Rat((k % 2 == 0) ? -1 : 1) / Rat(k);
            term = term * (pk * scale).pow(a) * (Rat(1) / rat_factorial(a));
        }
        total = total + term;
    }
    return total;
}

}  // namespace

CurvePoly q_poly(int n) {
    if (n < 2) throw std::invalid_argument("q_poly: n must be >= 2");
    CurveFun f = partition_sum(n, 2);
    if (f.ypow() != 0 || f.dpow() != 0) throw std::logic_error("q_poly: unexpected denominator");
    return f.num();
}

CurveFun r_fun(int n) {
    if (n < 1) throw std::invalid_argument("r_fun: n must be >= 1");
    return partition_sum(n, 1);
}

}  // namespace ellkzb
