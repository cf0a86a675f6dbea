#include "ellkzb/curvepoly.hpp"

#include <sstream>
#include <vector>

namespace ellkzb {

namespace {

// Powers of the curve right-hand side 4x^3 - ux - v, used when reducing
// y^(2k) factors.
const CurvePoly& rhs_power(int k) {
    static std::vector<CurvePoly> cache;
    if (cache.empty()) {
        cache.push_back(CurvePoly(Rat(1)));
        cache.push_back(CurvePoly::curve_rhs());
    }
    while ((int)cache.size() <= k) cache.push_back(cache.back() * CurvePoly::curve_rhs());
    return cache[k];
}

}  // namespace

CurvePoly CurvePoly::monomial(const Mono& m, const Rat& c) {
    CurvePoly p;
    if (c != 0 && m.ey <= 1) {
        p.t_[m] = c;
        return p;
    }
    RawPoly raw;
    raw[m] = c;
    return normalize(raw);
}

CurvePoly CurvePoly::X() { return monomial({1, 0, 0, 0}, Rat(1)); }
CurvePoly CurvePoly::Y() { return monomial({0, 1, 0, 0}, Rat(1)); }
CurvePoly CurvePoly::U() { return monomial({0, 0, 1, 0}, Rat(1)); }
CurvePoly CurvePoly::V() { return monomial({0, 0, 0, 1}, Rat(1)); }

const CurvePoly& CurvePoly::curve_rhs() {
    static const CurvePoly r = [] {
        CurvePoly p;
        p.t_[{3, 0, 0, 0}] = Rat(4);
        p.t_[{1, 0, 1, 0}] = Rat(-1);
        p.t_[{0, 0, 0, 1}] = Rat(-1);
        return p;
    }();
    return r;
}

const CurvePoly& CurvePoly::discriminant() {
    static const CurvePoly d = [] {
        CurvePoly p;
        p.t_[{0, 0, 3, 0}] = Rat(1);
        p.t_[{0, 0, 0, 2}] = Rat(-27);
        return p;
    }();
    return d;
}

void CurvePoly::add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = t_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

CurvePoly CurvePoly::normalize(const RawPoly& raw) {
    CurvePoly out;
    for (const auto& [m, c] : raw) {
        if (c == 0) continue;
        if (m.ey <= 1) {
            out.add_term(m, c);
            continue;
        }
        int k = m.ey / 2;
        Mono base{m.ex, m.ey % 2, m.eu, m.ev};
        for (const auto& [rm, rc] : rhs_power(k).t_) out.add_term(base * rm, c * rc);
    }
    return out;
}

bool CurvePoly::has_xy() const {
    for (const auto& [m, c] : t_)
        if (m.ex != 0 || m.ey != 0) return true;
    return false;
}

CurvePoly CurvePoly::operator-() const {
    CurvePoly out;
    for (const auto& [m, c] : t_) out.t_[m] = -c;
    return out;
}

CurvePoly CurvePoly::operator+(const CurvePoly& o) const {
    CurvePoly out = *this;
    for (const auto& [m, c] : o.t_) out.add_term(m, c);
    return out;
}

CurvePoly CurvePoly::operator-(const CurvePoly& o) const {
    CurvePoly out = *this;
    for (const auto& [m, c] : o.t_) out.add_term(m, -c);
    return out;
}

CurvePoly CurvePoly::operator*(const CurvePoly& o) const {
    RawPoly raw;
    for (const auto& [m1, c1] : t_)
        for (const auto& [m2, c2] : o.t_) {
            Rat& slot = raw[m1 * m2];
            slot += c1 * c2;
        }
    return normalize(raw);
}

CurvePoly CurvePoly::operator*(const Rat& c) const {
    CurvePoly out;
    if (c == 0) return out;
    for (const auto& [m, co] : t_) out.t_[m] = co * c;
    return out;
}

CurvePoly CurvePoly::pow(int n) const {
    CurvePoly out(Rat(1));
    CurvePoly base = *this;
    while (n > 0) {
        if (n & 1) out = out * base;
        base = (n > 1) ? base * base : base;
        n >>= 1;
    }
    return out;
}

CurvePoly CurvePoly::derivative(char var) const {
    CurvePoly out;
    for (const auto& [m, c] : t_) {
        Mono d = m;
        int e = 0;
        switch (var) {
            case 'x': e = m.ex; d.ex--; break;
            case 'y': e = m.ey; d.ey--; break;
            case 'u': e = m.eu; d.eu--; break;
            case 'v': e = m.ev; d.ev--; break;
            default: throw std::invalid_argument("derivative: bad variable");
        }
        if (e != 0) out.add_term(d, c * Rat(e));
    }
    return out;
}

std::optional<CurvePoly> CurvePoly::divide_exact(const CurvePoly& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("divide_exact: zero divisor");
    CurvePoly rem = *this;
    CurvePoly quot;
    const auto& dl = *divisor.t_.rbegin();
    while (!rem.is_zero()) {
        const auto& rl = *rem.t_.rbegin();
        if (!dl.first.divides(rl.first)) return std::nullopt;
        Mono qm = rl.first / dl.first;
        Rat qc = rl.second / dl.second;
        quot.add_term(qm, qc);
        for (const auto& [m, c] : divisor.t_) rem.add_term(qm * m, -qc * c);
    }
    return quot;
}

void CurvePoly::split_y(CurvePoly& p0, CurvePoly& p1) const {
    p0 = CurvePoly();
    p1 = CurvePoly();
    for (const auto& [m, c] : t_) {
        if (m.ey == 0)
            p0.t_[m] = c;
        else
            p1.t_[{m.ex, 0, m.eu, m.ev}] = c;
    }
}

CurvePoly CurvePoly::substitute_uv(const Rat& u0, const Rat& v0) const {
    CurvePoly out;
    for (const auto& [m, c] : t_) {
        Rat scale = c;
        for (int i = 0; i < m.eu; ++i) scale *= u0;
        for (int i = 0; i < m.ev; ++i) scale *= v0;
        out.add_term({m.ex, m.ey, 0, 0}, scale);
    }
    return out;
}

std::optional<int> CurvePoly::weight() const {
    std::optional<int> w;
    for (const auto& [m, c] : t_) {
        if (!w)
            w = m.weight();
        else if (*w != m.weight())
            return std::nullopt;
    }
    return w;
}

std::string mono_string(const Mono& m, const Rat& c, bool leading) {
    std::ostringstream os;
    Rat a = c;
    if (a < 0) {
        os << (leading ? "-" : " - ");
        a = -a;
    } else if (!leading) {
        os << " + ";
    }
    std::vector<std::string> parts;
    auto var = [&](const char* name, int e) {
        if (e == 1)
            parts.push_back(name);
        else if (e > 1)
            parts.push_back(std::string(name) + "^" + std::to_string(e));
    };
    var("x", m.ex);
    var("y", m.ey);
    var("u", m.eu);
    var("v", m.ev);
    if (parts.empty()) {
        os << rat_str(a);
    } else {
        std::string joined;
        for (size_t i = 0; i < parts.size(); ++i) joined += (i ? "*" : "") + parts[i];
        if (a == 1)
            os << joined;
        else
            os << rat_str(a) << "*" << joined;
    }
    return os.str();
}

std::string poly_string(const CurvePoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool leading = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        out += mono_string(it->first, it->second, leading);
        leading = false;
    }
    return out;
}

std::string CurvePoly::to_string() const { return poly_string(*this); }

}  // namespace ellkzb
