#include "ellkzb/connection.hpp"

#include <functional>

#include "ellkzb/special.hpp"

namespace ellkzb {

int DerLabel::weight() const {
    int w = 0;
    for (char ch : word) w += (ch == 'T') ? 1 : -1;
    if (kind == Kind::d_s) w += 1;  // minus wt(S) = -(-1)
    if (kind == Kind::d_t) w -= 1;
    return w;
}

std::string DerLabel::to_string() const {
    switch (kind) {
        case Kind::ad: return "ad_" + bracket_string(word);
        case Kind::d_s: return bracket_string(word) + " d/dS";
        case Kind::d_t: return bracket_string(word) + " d/dT";
    }
    return "";
}

namespace {

LieElt<CurveFun> lie_word(const Word& w, int trunc) {
    LieElt<CurveFun> e(trunc);
    e.add(w, CurveFun(Rat(1)));
    return e;
}

}  // namespace

Derivation<CurveFun> label_derivation(const DerLabel& l, int trunc) {
    switch (l.kind) {
        case DerLabel::Kind::ad: return inner_derivation(lie_word(l.word, trunc));
        case DerLabel::Kind::d_s: return {lie_word(l.word, trunc), LieElt<CurveFun>(trunc)};
        case DerLabel::Kind::d_t: return {LieElt<CurveFun>(trunc), lie_word(l.word, trunc)};
    }
    throw std::logic_error("label_derivation: bad kind");
}

Connection Connection::from_terms(Family family, int degree, std::vector<ConnTerm> terms,
                                  std::optional<std::pair<Rat, Rat>> fiber, std::string model) {
    Connection c;
    c.family = family;
    c.degree = degree;
    c.fiber = std::move(fiber);
    c.model = std::move(model);
    int trunc = c.lie_trunc();
    for (auto& d : c.comp) d = Derivation<CurveFun>(trunc);
    std::erase_if(terms, [](const ConnTerm& t) { return t.form.is_zero(); });
    for (const auto& t : terms) {
        if (t.label.degree() > degree)
            throw std::invalid_argument("Connection::from_terms: term degree exceeds truncation");
        Derivation<CurveFun> base = label_derivation(t.label, trunc);
        c.comp[0] = c.comp[0] + base.scale(t.form.fx);
        c.comp[1] = c.comp[1] + base.scale(t.form.fu);
        c.comp[2] = c.comp[2] + base.scale(t.form.fv);
    }
    c.terms = std::move(terms);
    return c;
}

DiffForm1 tau_form() {
    return alpha_form() * CurveFun(CurvePoly(rat(3, 2)), 0, 1);
}

namespace {

CurveFun over_y(const CurvePoly& p) { return CurveFun(p, 1, 0); }

DiffForm1 alpha_over_2delta() { return alpha_form() * CurveFun(CurvePoly(rat(1, 2)), 0, 1); }

}  // namespace

DiffForm1 ell_alg_form() {
    CurvePoly six_x2_minus_u = CurvePoly::X() * CurvePoly::X() * Rat(6) - CurvePoly::U();
    return dx_over_y() - alpha_over_2delta() * over_y(six_x2_minus_u) -
           dlog_delta() * over_y(CurvePoly::X() * rat(1, 6));
}

DiffForm1 ell_reg_form() {
    return dx_over_y() + alpha_over_2delta() * over_y(CurvePoly::U()) -
           dlog_delta() * over_y(CurvePoly::X() * rat(1, 6));
}

namespace {

Word st_word(int n) { return "S" + Word(n, 'T'); }  // Lyndon; its bracketing is (-1)^n ad_T^n(S)

// Shared inner tower: sum over m of sign * (c_m * base + m * c_{m+1} * tau) ad_{ST^m}.
void add_tower(std::vector<ConnTerm>& terms, int degree, const DiffForm1& base, const DiffForm1& tau,
               const std::function<CurveFun(int)>& c, int m_min) {
    for (int m = m_min; m <= degree - 1; ++m) {
        DiffForm1 f = base * c(m) + tau * (c(m + 1) * Rat(m));
        Rat sign = (m % 2 == 0) ? Rat(1) : Rat(-1);
        terms.push_back({{DerLabel::Kind::ad, st_word(m)}, f * sign});
    }
}

void add_gm_terms(std::vector<ConnTerm>& terms) {
    DiffForm1 dld12 = dlog_delta() * rat(1, 12);
    DiffForm1 tau = tau_form();
    DiffForm1 u_alpha_8d = alpha_form() * CurveFun(CurvePoly::U() * rat(1, 8), 0, 1);
    terms.push_back({{DerLabel::Kind::d_t, "T"}, -dld12});
    terms.push_back({{DerLabel::Kind::d_t, "S"}, tau});
    terms.push_back({{DerLabel::Kind::d_s, "T"}, -u_alpha_8d});
    terms.push_back({{DerLabel::Kind::d_s, "S"}, dld12});
}

void add_psi_terms(std::vector<ConnTerm>& terms, int degree) {
    int trunc = degree + 1;
    for (int m = 1; 2 * m + 2 <= degree; ++m) {
        LieElt<Rat> w(trunc);
        LieElt<Rat> s = LieElt<Rat>::generator('S', trunc);
        for (int j = 1; j <= 2 * m; ++j) {
            int k = 2 * m + 1 - j;
            LieElt<Rat> term = bracket(ad_pow(j, s), ad_pow(k, s));
            w = (j % 2 == 0) ? w + term : w - term;
        }
        DiffForm1 f = tau_form() * (CurveFun(p_poly(2 * m + 2)) * (Rat(1) / rat_factorial(2 * m)));
        for (const auto& [word, co] : w.coeffs())
            terms.push_back({{DerLabel::Kind::d_s, word}, f * co});
    }
}

CurveFun q_fun(int n) { return CurveFun(q_poly(n)); }

}  // namespace

Connection nu1_naive(int degree) {
    std::vector<ConnTerm> terms;
    terms.push_back({{DerLabel::Kind::ad, "T"}, dx_over_y() * CurveFun(-CurvePoly::X())});
    terms.push_back({{DerLabel::Kind::ad, "S"}, dx_over_y()});
    return Connection::from_terms(Family::single_curve, degree, std::move(terms), std::nullopt, "nu-naive");
}

Connection nu1_alg(int degree) {
    std::vector<ConnTerm> terms;
    terms.push_back({{DerLabel::Kind::ad, "T"}, dx_over_y() * CurveFun(-CurvePoly::X())});
    terms.push_back({{DerLabel::Kind::ad, "S"}, dx_over_y()});
    for (int n = 2; n <= degree - 1; ++n) {
        Rat sign = (n % 2 == 0) ? Rat(1) : Rat(-1);
        terms.push_back({{DerLabel::Kind::ad, st_word(n)}, dx_over_y() * (q_fun(n) * sign)});
    }
    return Connection::from_terms(Family::single_curve, degree, std::move(terms), std::nullopt, "nu-alg");
}

Connection nu1_reg(int degree) {
    std::vector<ConnTerm> terms;
    CurveFun two_x2_over_y(CurvePoly::X() * CurvePoly::X() * Rat(2), 1, 0);
    DiffForm1 t_coeff = exterior_d(two_x2_over_y, DMode::fiber) - dx_over_y() * CurveFun(CurvePoly::X());
    terms.push_back({{DerLabel::Kind::ad, "T"}, t_coeff});
    terms.push_back({{DerLabel::Kind::ad, "S"}, dx_over_y()});
    for (int n = 1; n <= degree - 1; ++n) {
        Rat sign = (n % 2 == 0) ? Rat(1) : Rat(-1);
        terms.push_back({{DerLabel::Kind::ad, st_word(n)}, dx_over_y() * (r_fun(n) * sign)});
    }
    return Connection::from_terms(Family::single_curve, degree, std::move(terms), std::nullopt, "nu-reg");
}

Connection gauss_manin(int degree) {
    std::vector<ConnTerm> terms;
    add_gm_terms(terms);
    return Connection::from_terms(Family::universal, degree, std::move(terms), std::nullopt, "gauss-manin");
}

Connection omega_alg(int degree) {
    std::vector<ConnTerm> terms;
    add_gm_terms(terms);
    // T coefficient: -x dx/y + (alpha/4Delta)(ux+3v)/y + (1/6)(dDelta/Delta)(x^2/y)
    CurvePoly ux_3v = CurvePoly::U() * CurvePoly::X() + CurvePoly::V() * Rat(3);
    DiffForm1 t_coeff = dx_over_y() * CurveFun(-CurvePoly::X()) +
                        alpha_form() * CurveFun(ux_3v * rat(1, 4), 1, 1) +
                        dlog_delta() * over_y(CurvePoly::X() * CurvePoly::X() * rat(1, 6));
    terms.push_back({{DerLabel::Kind::ad, "T"}, t_coeff});
    terms.push_back({{DerLabel::Kind::ad, "S"}, ell_alg_form()});
    // Inner tower: the dx/y-type part carries q_m, the dtau part carries
    // m q_{m+1} (the T-derivative shifts the index by one).
    add_tower(
        terms, degree, ell_alg_form(), tau_form(),
        [](int n) { return n >= 2 ? q_fun(n) : CurveFun(); }, 1);
    add_psi_terms(terms, degree);
    return Connection::from_terms(Family::universal, degree, std::move(terms), std::nullopt, "omega-alg");
}

Connection omega_reg(int degree) {
    std::vector<ConnTerm> terms;
    add_gm_terms(terms);
    CurveFun two_x2_over_y(CurvePoly::X() * CurvePoly::X() * Rat(2), 1, 0);
    CurvePoly ux_3v = CurvePoly::U() * CurvePoly::X() + CurvePoly::V() * Rat(3);
    DiffForm1 t_coeff = exterior_d(two_x2_over_y, DMode::universal) - dx_over_y() * CurveFun(CurvePoly::X()) +
                        alpha_form() * CurveFun(ux_3v * rat(1, 4), 1, 1);
    terms.push_back({{DerLabel::Kind::ad, "T"}, t_coeff});
    terms.push_back({{DerLabel::Kind::ad, "S"}, ell_reg_form()});
    add_tower(
        terms, degree, ell_reg_form(), tau_form(), [](int n) { return r_fun(n); }, 1);
    add_psi_terms(terms, degree);
    return Connection::from_terms(Family::universal, degree, std::move(terms), std::nullopt, "omega-reg");
}

Connection model_by_name(const std::string& name, int degree) {
    if (name == "nu-naive") return nu1_naive(degree);
    if (name == "nu-alg") return nu1_alg(degree);
    if (name == "nu-reg") return nu1_reg(degree);
    if (name == "gauss-manin") return gauss_manin(degree);
    if (name == "omega-alg") return omega_alg(degree);
    if (name == "omega-reg") return omega_reg(degree);
    throw std::invalid_argument("unknown model '" + name + "'");
}

GaugeFun::GaugeFun(const Derivation<CurveFun>& d) : log(d) {
    if (d.on_s.min_degree() < 2 || d.on_t.min_degree() < 2)
        throw std::invalid_argument("GaugeFun: log must have strictly positive degree");
}

GaugeFun inner_gauge(const LieElt<CurveFun>& h) { return GaugeFun(inner_derivation(h)); }

GaugeFun g_reg_gauge(int degree) {
    int trunc = degree + 1;
    LieElt<CurveFun> h(trunc);
    h.add("T", CurveFun(CurvePoly::X() * CurvePoly::X() * Rat(-2), 1, 0));
    return inner_gauge(h);
}

namespace {

// d applied to every coefficient of a derivation; component i of the result
// collects the e_i part of each coefficient differential.
std::array<Derivation<CurveFun>, 3> derivation_d(const Derivation<CurveFun>& d, DMode mode) {
    std::array<Derivation<CurveFun>, 3> out{Derivation<CurveFun>(d.trunc()), Derivation<CurveFun>(d.trunc()),
                                            Derivation<CurveFun>(d.trunc())};
    auto feed = [&](const LieElt<CurveFun>& val, bool is_s) {
        for (const auto& [w, co] : val.coeffs()) {
            DiffForm1 dco = exterior_d(co, mode);
            auto put = [&](int i, const CurveFun& f) {
                if (f.is_zero()) return;
                (is_s ? out[i].on_s : out[i].on_t).add(w, f);
            };
            put(0, dco.fx);
            put(1, dco.fu);
            put(2, dco.fv);
        }
    };
    feed(d.on_s, true);
    feed(d.on_t, false);
    return out;
}

// Products reintroduce symbolic u, v through the curve relation; on a fixed
// fiber they must be substituted back to keep canonical forms comparable.
Derivation<CurveFun> derivation_subst(const Derivation<CurveFun>& d, const Rat& u0, const Rat& v0) {
    Derivation<CurveFun> out(d.trunc());
    for (const auto& [w, co] : d.on_s.coeffs()) out.on_s.add(w, co.substitute_uv(u0, v0));
    for (const auto& [w, co] : d.on_t.coeffs()) out.on_t.add(w, co.substitute_uv(u0, v0));
    return out;
}

std::vector<ConnTerm> terms_from_components(const std::array<Derivation<CurveFun>, 3>& comp) {
    std::map<DerLabel, DiffForm1> gather;
    for (int i = 0; i < 3; ++i) {
        auto feed = [&](const LieElt<CurveFun>& val, DerLabel::Kind kind) {
            for (const auto& [w, co] : val.coeffs()) {
                DiffForm1& f = gather[{kind, w}];
                if (i == 0) f.fx = f.fx + co;
                if (i == 1) f.fu = f.fu + co;
                if (i == 2) f.fv = f.fv + co;
            }
        };
        feed(comp[i].on_s, DerLabel::Kind::d_s);
        feed(comp[i].on_t, DerLabel::Kind::d_t);
    }
    std::vector<ConnTerm> out;
    for (auto& [label, form] : gather) out.push_back({label, form});
    return out;
}

}  // namespace

Connection gauge_transform(const Connection& c, const GaugeFun& g) {
    int trunc = c.lie_trunc();
    if (g.log.trunc() != trunc) throw std::invalid_argument("gauge_transform: truncation mismatch");
    DMode mode = c.dmode();

    // conjugation part: sum_k ad_D^k(omega) / k!
    std::array<Derivation<CurveFun>, 3> conj = c.comp;
    {
        std::array<Derivation<CurveFun>, 3> term = c.comp;
        Rat fact(1);
        for (int k = 1; k <= trunc; ++k) {
            bool all_zero = true;
            for (int i = 0; i < 3; ++i) {
                term[i] = dbracket(g.log, term[i]);
                if (!term[i].is_zero()) all_zero = false;
            }
            if (all_zero) break;
            fact *= Rat(k);
            for (int i = 0; i < 3; ++i) conj[i] = conj[i] + term[i].scale_rat(Rat(1) / fact);
        }
    }
    // -dG G^-1 = -sum_k ad_D^k(dD) / (k+1)!
    std::array<Derivation<CurveFun>, 3> dgg = derivation_d(g.log, mode);
    {
        std::array<Derivation<CurveFun>, 3> term = dgg;
        Rat fact(1);  // (k+1)! running
        for (int k = 1; k <= trunc; ++k) {
            bool all_zero = true;
            for (int i = 0; i < 3; ++i) {
                term[i] = dbracket(g.log, term[i]);
                if (!term[i].is_zero()) all_zero = false;
            }
            if (all_zero) break;
            fact *= Rat(k + 1);
            for (int i = 0; i < 3; ++i) dgg[i] = dgg[i] + term[i].scale_rat(Rat(1) / fact);
        }
    }

    Connection out;
    out.family = c.family;
    out.degree = c.degree;
    out.fiber = c.fiber;
    out.model = c.model.empty() ? "" : c.model + "+gauge";
    for (int i = 0; i < 3; ++i) {
        out.comp[i] = conj[i] - dgg[i];
        if (c.fiber) out.comp[i] = derivation_subst(out.comp[i], c.fiber->first, c.fiber->second);
    }
    out.terms = terms_from_components(out.comp);
    return out;
}

Curvature2 curvature(const Connection& c) {
    DMode mode = c.dmode();
    int trunc = c.lie_trunc();
    auto dmap = [&](const Derivation<CurveFun>& d, auto extract) {
        Derivation<CurveFun> out(trunc);
        auto feed = [&](const LieElt<CurveFun>& val, bool is_s) {
            for (const auto& [w, co] : val.coeffs()) {
                CurveFun f = extract(exterior_d(co, mode));
                if (f.is_zero()) continue;
                (is_s ? out.on_s : out.on_t).add(w, f);
            }
        };
        feed(d.on_s, true);
        feed(d.on_t, false);
        return out;
    };
    const auto& dx_c = c.comp[0];
    const auto& du_c = c.comp[1];
    const auto& dv_c = c.comp[2];
    Curvature2 f{std::array<Derivation<CurveFun>, 3>{Derivation<CurveFun>(trunc), Derivation<CurveFun>(trunc),
                                                     Derivation<CurveFun>(trunc)}};
    f.comp[0] = dmap(dx_c, [](const DiffForm1& w) { return -w.fu; }) +
                dmap(du_c, [](const DiffForm1& w) { return w.fx; }) + dbracket(dx_c, du_c);
    f.comp[1] = dmap(dx_c, [](const DiffForm1& w) { return -w.fv; }) +
                dmap(dv_c, [](const DiffForm1& w) { return w.fx; }) + dbracket(dx_c, dv_c);
    f.comp[2] = dmap(du_c, [](const DiffForm1& w) { return -w.fv; }) +
                dmap(dv_c, [](const DiffForm1& w) { return w.fu; }) + dbracket(du_c, dv_c);
    return f;
}

namespace {

CurveFun series_coeff(const LaurentSeries& s, int n) {
    if (n >= s.trunc()) throw truncation_error("series_coeff: beyond truncation");
    return s.coeff(n);
}

}  // namespace

Derivation<CurveFun> residue_at_identity(const Connection& c) {
    int trunc = c.lie_trunc();
    Derivation<CurveFun> res(trunc);
    CurveFun yfun = CurveFun::Y();
    auto feed = [&](const LieElt<CurveFun>& val, bool is_s) {
        for (const auto& [w, co] : val.coeffs()) {
            // ds coefficient of co dx is co * y in the parameter s
            LaurentSeries s = laurent_at_identity(co * yfun, 0);
            CurveFun r = series_coeff(s, -1);
            if (!r.is_zero()) (is_s ? res.on_s : res.on_t).add(w, r);
        }
    };
    feed(c.comp[0].on_s, true);
    feed(c.comp[0].on_t, false);
    return res;
}

int pole_order_at_identity(const Connection& c) {
    int order = 0;
    CurveFun yfun = CurveFun::Y();
    auto feed_val = [&](const LieElt<CurveFun>& val, bool with_y) {
        for (const auto& [w, co] : val.coeffs()) {
            CurveFun f = with_y ? co * yfun : co;
            if (f.is_zero()) continue;
            order = std::max(order, -valuation_at_identity(f));
        }
    };
    feed_val(c.comp[0].on_s, true);
    feed_val(c.comp[0].on_t, true);
    feed_val(c.comp[1].on_s, false);
    feed_val(c.comp[1].on_t, false);
    feed_val(c.comp[2].on_s, false);
    feed_val(c.comp[2].on_t, false);
    return order;
}

std::vector<std::string> weight_violations(const Connection& c) {
    std::vector<std::string> bad;
    for (const auto& t : c.terms) {
        auto w = weight_of(t.form);
        if (!w) {
            bad.push_back(t.label.to_string() + ": inhomogeneous coefficient form");
            continue;
        }
        int total = *w + t.label.weight();
        if (total != 0)
            bad.push_back(t.label.to_string() + ": weight " + std::to_string(total));
    }
    return bad;
}

int max_delta_exponent(const Connection& c) {
    int m = 0;
    for (const auto& t : c.terms)
        for (const CurveFun* f : {&t.form.fx, &t.form.fu, &t.form.fv}) m = std::max(m, f->dpow());
    return m;
}

Connection specialize_fiber_connection(const Connection& c, const Rat& u0, const Rat& v0) {
    std::vector<ConnTerm> terms;
    for (const auto& t : c.terms) {
        DiffForm1 f;
        f.fx = t.form.fx.substitute_uv(u0, v0);
        if (f.fx.is_zero()) continue;
        terms.push_back({t.label, f});
    }
    return Connection::from_terms(Family::single_curve, c.degree, std::move(terms), std::make_pair(u0, v0),
                                  c.model.empty() ? "" : c.model + "@fiber");
}

std::optional<LieElt<CurveFun>> as_inner(const Derivation<CurveFun>& d) {
    int trunc = d.trunc();
    LieElt<CurveFun> u(trunc);
    for (int deg = 1; deg < trunc; ++deg) {
        const auto& words = lyndon_words(deg);
        // rows: coordinates of [b(w), S] and [b(w), T] in degree deg+1
        const auto& target_words = lyndon_words(deg + 1);
        std::vector<std::vector<Rat>> a(2 * target_words.size(), std::vector<Rat>(words.size(), Rat(0)));
        std::vector<CurveFun> rhs(2 * target_words.size());
        LieElt<Rat> s = LieElt<Rat>::generator('S', deg + 1), t = LieElt<Rat>::generator('T', deg + 1);
        for (size_t j = 0; j < words.size(); ++j) {
            LieElt<Rat> bw(deg + 1);
            bw.add(words[j], Rat(1));
            LieElt<Rat> bs = bracket(bw, s), bt = bracket(bw, t);
            for (size_t i = 0; i < target_words.size(); ++i) {
                a[i][j] = bs.coeff(target_words[i]);
                a[target_words.size() + i][j] = bt.coeff(target_words[i]);
            }
        }
        for (size_t i = 0; i < target_words.size(); ++i) {
            rhs[i] = d.on_s.degree_part(deg + 1).coeff(target_words[i]);
            rhs[target_words.size() + i] = d.on_t.degree_part(deg + 1).coeff(target_words[i]);
        }
        // exact elimination with rational matrix, function-valued right side
        size_t rows = a.size(), cols = words.size(), r = 0;
        std::vector<int> pivot(cols, -1);
        for (size_t ccol = 0; ccol < cols && r < rows; ++ccol) {
            size_t pr = r;
            while (pr < rows && a[pr][ccol] == 0) ++pr;
            if (pr == rows) continue;
            std::swap(a[pr], a[r]);
            std::swap(rhs[pr], rhs[r]);
            Rat inv = Rat(1) / a[r][ccol];
            for (size_t j2 = ccol; j2 < cols; ++j2) a[r][j2] *= inv;
            rhs[r] = rhs[r] * inv;
            for (size_t i2 = 0; i2 < rows; ++i2) {
                if (i2 == r || a[i2][ccol] == 0) continue;
                Rat fct = a[i2][ccol];
                for (size_t j2 = ccol; j2 < cols; ++j2) a[i2][j2] -= fct * a[r][j2];
                rhs[i2] = rhs[i2] - rhs[r] * fct;
            }
            pivot[ccol] = (int)r;
            ++r;
        }
        for (size_t i2 = r; i2 < rows; ++i2)
            if (!rhs[i2].is_zero()) return std::nullopt;
        for (size_t j2 = 0; j2 < cols; ++j2)
            if (pivot[j2] >= 0 && !rhs[pivot[j2]].is_zero()) u.add(words[j2], rhs[pivot[j2]]);
    }
    // the candidate must reproduce d exactly
    if (!(inner_derivation(u) == d)) return std::nullopt;
    return u;
}

namespace {

std::string lie_pretty(const LieElt<CurveFun>& u) {
    std::string out;
    for (const auto& [w, co] : u.coeffs()) {
        std::string part;
        if (co == CurveFun(Rat(1))) {
            part = bracket_string(w);
        } else if (co == CurveFun(Rat(-1)) && w.size() >= 2) {
            auto [l, r] = standard_factorization(w);
            part = "[" + bracket_string(r) + "," + bracket_string(l) + "]";
        } else {
            part = "(" + co.to_string() + ")*" + bracket_string(w);
        }
        out += out.empty() ? part : " + " + part;
    }
    return out.empty() ? "0" : out;
}

}  // namespace

std::string derivation_pretty(const Derivation<CurveFun>& d) {
    if (d.is_zero()) return "0";
    if (auto u = as_inner(d)) return "ad_{" + lie_pretty(*u) + "}";
    return "(S -> " + d.on_s.to_string() + ", T -> " + d.on_t.to_string() + ")";
}

// --- matrix specialization -------------------------------------------------------

namespace {

MatFun mat_zero(size_t n) { return MatFun(n, std::vector<CurveFun>(n)); }

MatFun mat_from_rat(const MatRat& m) {
    MatFun out(m.size(), std::vector<CurveFun>(m.size()));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j) out[i][j] = CurveFun(m[i][j]);
    return out;
}

MatFun mat_mul(const MatFun& a, const MatFun& b) {
    size_t n = a.size();
    MatFun out = mat_zero(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < n; ++j) out[i][j] = out[i][j] + a[i][k] * b[k][j];
        }
    return out;
}

MatFun mat_add(const MatFun& a, const MatFun& b) {
    MatFun out = a;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) out[i][j] = out[i][j] + b[i][j];
    return out;
}

MatFun mat_scale(const MatFun& a, const Rat& c) {
    MatFun out = a;
    for (auto& row : out)
        for (auto& e : row) e = e * c;
    return out;
}

MatFun mat_scale_fun(const MatFun& a, const CurveFun& c) {
    MatFun out = a;
    for (auto& row : out)
        for (auto& e : row) e = e * c;
    return out;
}

bool mat_is_zero(const MatFun& a) {
    for (const auto& row : a)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

MatFun mat_bracket(const MatFun& a, const MatFun& b) {
    MatFun ab = mat_mul(a, b), ba = mat_mul(b, a);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a.size(); ++j) ab[i][j] = ab[i][j] - ba[i][j];
    return ab;
}

MatFun mat_exp(const MatFun& n) {
    size_t dim = n.size();
    MatFun out = mat_zero(dim);
    for (size_t i = 0; i < dim; ++i) out[i][i] = CurveFun(Rat(1));
    MatFun pw = out;
    Rat fact(1);
    for (size_t k = 1; k <= 2 * dim; ++k) {
        pw = mat_mul(pw, n);
        if (mat_is_zero(pw)) break;
        fact *= Rat(k);
        out = mat_add(out, mat_scale(pw, Rat(1) / fact));
    }
    return out;
}

MatFun word_matrix(const Word& w, const MatFun& rs, const MatFun& rt) {
    if (w.size() == 1) return w == "S" ? rs : rt;
    auto [l, r] = standard_factorization(w);
    return mat_bracket(word_matrix(l, rs, rt), word_matrix(r, rs, rt));
}

}  // namespace

bool is_nilpotent(const MatRat& m) {
    size_t n = m.size();
    MatFun p = mat_from_rat(m);
    for (size_t k = 1; k < n; ++k) p = mat_mul(p, mat_from_rat(m));
    return mat_is_zero(p);
}

MatFun lie_matrix_rep(const LieElt<CurveFun>& a, const MatRat& rho_s, const MatRat& rho_t) {
    MatFun rs = mat_from_rat(rho_s), rt = mat_from_rat(rho_t);
    MatFun out = mat_zero(rho_s.size());
    for (const auto& [w, co] : a.coeffs()) out = mat_add(out, mat_scale_fun(word_matrix(w, rs, rt), co));
    return out;
}

MatConnection specialize_rep(const Connection& c, const MatRat& rho_s, const MatRat& rho_t) {
    if (!is_nilpotent(rho_s) || !is_nilpotent(rho_t))
        throw std::invalid_argument("specialize_rep: generators must act nilpotently");
    size_t n = rho_s.size();
    MatConnection out;
    out.family = c.family;
    out.w.assign(n, std::vector<DiffForm1>(n));
    for (int i = 0; i < 3; ++i) {
        auto u = as_inner(c.comp[i]);
        if (!u) throw std::invalid_argument("specialize_rep: connection component is not inner-valued");
        MatFun m = lie_matrix_rep(*u, rho_s, rho_t);
        for (size_t r = 0; r < n; ++r)
            for (size_t s = 0; s < n; ++s) {
                if (m[r][s].is_zero()) continue;
                if (i == 0) out.w[r][s].fx = out.w[r][s].fx + m[r][s];
                if (i == 1) out.w[r][s].fu = out.w[r][s].fu + m[r][s];
                if (i == 2) out.w[r][s].fv = out.w[r][s].fv + m[r][s];
            }
    }
    return out;
}

MatFun lie_matrix_rep_of_gauge_log(const GaugeFun& g, const MatRat& rho_s, const MatRat& rho_t) {
    auto u = as_inner(g.log);
    if (!u) throw std::invalid_argument("gauge log is not inner");
    return lie_matrix_rep(*u, rho_s, rho_t);
}

MatConnection matrix_gauge_transform(const MatConnection& m, const MatFun& log_gauge) {
    size_t n = m.dim();
    DMode mode = m.family == Family::universal ? DMode::universal : DMode::fiber;
    MatFun g = mat_exp(log_gauge);
    MatFun gi = mat_exp(mat_scale(log_gauge, Rat(-1)));
    // component-wise: -dG G^-1 + G M G^-1
    MatConnection out;
    out.family = m.family;
    out.w.assign(n, std::vector<DiffForm1>(n));
    for (int comp = 0; comp < 3; ++comp) {
        auto pick = [&](const DiffForm1& f) -> const CurveFun& { return comp == 0 ? f.fx : comp == 1 ? f.fu : f.fv; };
        MatFun mc = mat_zero(n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) mc[i][j] = pick(m.w[i][j]);
        MatFun dg = mat_zero(n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                DiffForm1 d = exterior_d(g[i][j], mode);
                dg[i][j] = pick(d);
            }
        MatFun res = mat_mul(mat_mul(g, mc), gi);
        MatFun dgg = mat_mul(dg, gi);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                CurveFun e = res[i][j] - dgg[i][j];
                if (comp == 0) out.w[i][j].fx = e;
                if (comp == 1) out.w[i][j].fu = e;
                if (comp == 2) out.w[i][j].fv = e;
            }
    }
    return out;
}

}  // namespace ellkzb
