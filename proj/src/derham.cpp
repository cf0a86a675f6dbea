#include "ellkzb/derham.hpp"

namespace ellkzb {

ReduceResult reduce_form(const CurvePoly& f) {
    ReduceResult out;
    CurvePoly p0, p1;
    f.split_y(p0, p1);

    // f1(x) y dx/y = f1(x) dx is exact: primitive is the x-antiderivative.
    for (const auto& [m, c] : p1.terms())
        out.primitive = out.primitive + CurvePoly::monomial({m.ex + 1, 0, m.eu, m.ev}, c / Rat(m.ex + 1));

    // Peel x-powers >= 2 down with x^{k+2} dx/y =
    //   (d(x^k y) + (k+1/2) u x^k dx/y + k v x^{k-1} dx/y) / (4k+6).
    while (true) {
        // grlex order may favour u,v-heavy monomials, so scan for the
        // highest x-power directly
        std::pair<Mono, Rat> lead{Mono{-1, 0, 0, 0}, Rat(0)};
        for (const auto& [m, c] : p0.terms())
            if (m.ex > lead.first.ex) lead = {m, c};
        int e = lead.first.ex;
        if (e <= 1) break;
        int k = e - 2;
        Rat scale = lead.second / Rat(4 * k + 6);
        Mono uvpart{0, 0, lead.first.eu, lead.first.ev};
        out.primitive = out.primitive + CurvePoly::monomial({k, 1, uvpart.eu, uvpart.ev}, scale);
        CurvePoly lower;
        lower = lower + CurvePoly::monomial({k, 0, uvpart.eu + 1, uvpart.ev}, scale * rat(2 * k + 1, 2));
        if (k >= 1) lower = lower + CurvePoly::monomial({k - 1, 0, uvpart.eu, uvpart.ev + 1}, scale * Rat(k));
        p0 = p0 - CurvePoly::monomial(lead.first, lead.second) + lower;
    }
    for (const auto& [m, c] : p0.terms()) {
        if (m.ex == 0)
            out.cls.c1 = out.cls.c1 + CurvePoly::monomial({0, 0, m.eu, m.ev}, c);
        else if (m.ex == 1)
            out.cls.c2 = out.cls.c2 + CurvePoly::monomial({0, 0, m.eu, m.ev}, c);
        else
            throw std::logic_error("reduce_form: reduction left a high power");
    }
    return out;
}

}  // namespace ellkzb
