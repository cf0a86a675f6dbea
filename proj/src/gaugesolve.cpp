#include "ellkzb/gaugesolve.hpp"

#include <cassert>
#include <functional>

#include "ellkzb/linalg.hpp"
#include "ellkzb/special.hpp"

namespace ellkzb {

namespace {

struct UnknownConst {
    std::string display;
    Rat display_scale;  // display variable = scale * raw coefficient
    Rat value = Rat(0);
    bool resolved = false;
};

std::string format_equation(const std::vector<std::pair<size_t, Rat>>& lhs, const Rat& rhs_raw,
                            const std::vector<UnknownConst>& consts) {
    // lhs holds (unknown index, coefficient of the raw constant).
    if (lhs.empty()) return rhs_raw == 0 ? "0 = 0" : "0 = " + rat_str(rhs_raw);
    if (lhs.size() == 1) {
        auto [idx, a] = lhs[0];
        // a * raw = rhs, display = scale * raw
        Rat value = consts[idx].display_scale * rhs_raw / a;
        return consts[idx].display + " = " + rat_str(value);
    }
    std::string out;
    for (const auto& [idx, a] : lhs) {
        Rat coeff = a / consts[idx].display_scale;
        if (!out.empty()) out += " + ";
        out += rat_str(coeff) + "*" + consts[idx].display;
    }
    return out + " = " + rat_str(rhs_raw);
}

// Class of the 1-form (coeff dx) on the fiber: coeff*y is in O(E').
// Intermediate products reintroduce symbolic u, v (curve-relation
// reduction), so the fiber substitution is applied at extraction time.
CohomClass class_of(const CurveFun& coeff, const Rat& u0, const Rat& v0) {
    CurveFun f = (coeff * CurveFun::Y()).substitute_uv(u0, v0);
    if (f.ypow() != 0 || f.dpow() != 0)
        throw std::logic_error("solve_gauge: residual escaped the O(E')[1/y] ring");
    CohomClass cls = reduce_form(f.num()).cls;  // reduction identities carry u, v
    cls.c1 = cls.c1.substitute_uv(u0, v0);
    cls.c2 = cls.c2.substitute_uv(u0, v0);
    return cls;
}

CurvePoly primitive_of(const CurveFun& coeff, const Rat& u0, const Rat& v0) {
    CurveFun f = (coeff * CurveFun::Y()).substitute_uv(u0, v0);
    ReduceResult r = reduce_form(f.num());
    CohomClass cls = r.cls;
    cls.c1 = cls.c1.substitute_uv(u0, v0);
    cls.c2 = cls.c2.substitute_uv(u0, v0);
    if (!cls.is_zero()) throw std::logic_error("solve_gauge: primitive requested for nonzero class");
    return r.primitive.substitute_uv(u0, v0);
}

Rat as_const(const CurvePoly& p) {
    if (p.is_zero()) return Rat(0);
    if (p.terms().size() != 1 || !(p.terms().begin()->first == Mono{}))
        throw std::logic_error("solve_gauge: expected a constant class on a fixed fiber");
    return p.terms().begin()->second;
}

// Per-degree linear stage shared by both modes. `labels` indexes the basis
// at this degree; eval(values) returns the coefficient function per label of
// the degree-n residual with the unresolved constants set to `values`.
struct StageResult {
    bool ok = false;
    std::vector<Constraint> constraints;
    std::vector<CurveFun> final_coeffs;  // residual with constants resolved
};

StageResult run_stage(int degree_n, const std::vector<std::string>& label_names,
                      std::vector<UnknownConst>& consts, const std::vector<size_t>& open,
                      const std::function<std::vector<CurveFun>(const std::vector<Rat>&)>& eval,
                      const Rat& u0, const Rat& v0) {
    StageResult out;
    std::vector<Rat> base_vals(open.size(), Rat(0));
    std::vector<CurveFun> base = eval(base_vals);
    std::vector<std::vector<CurveFun>> columns(open.size());
    for (size_t i = 0; i < open.size(); ++i) {
        std::vector<Rat> vals(open.size(), Rat(0));
        vals[i] = Rat(1);
        columns[i] = eval(vals);
        for (size_t l = 0; l < base.size(); ++l) columns[i][l] = columns[i][l] - base[l];
    }

    // Class-vanishing conditions, two per label.
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    std::vector<Constraint> all;
    for (size_t l = 0; l < base.size(); ++l) {
        CohomClass c0 = class_of(base[l], u0, v0);
        std::vector<CohomClass> ci(open.size());
        for (size_t i = 0; i < open.size(); ++i) ci[i] = class_of(columns[i][l], u0, v0);
        for (int comp = 0; comp < 2; ++comp) {
            Rat rhs = -as_const(comp == 0 ? c0.c1 : c0.c2);
            std::vector<Rat> row(open.size(), Rat(0));
            std::vector<std::pair<size_t, Rat>> lhs;
            for (size_t i = 0; i < open.size(); ++i) {
                Rat a = as_const(comp == 0 ? ci[i].c1 : ci[i].c2);
                row[i] = a;
                if (a != 0) lhs.emplace_back(open[i], a);
            }
            if (lhs.empty() && rhs == 0) continue;
            A.push_back(row);
            b.push_back(rhs);
            all.push_back({format_equation(lhs, rhs, consts),
                           std::string(comp == 0 ? "[dx/y]" : "[x dx/y]") + " class at " + label_names[l] +
                               ", degree " + std::to_string(degree_n)});
        }
    }

    LinSolveResult sol = solve_linear_system(A, b);
    if (!sol.consistent) {
        out.constraints = std::move(all);
        return out;
    }
    for (size_t i = 0; i < open.size(); ++i) {
        consts[open[i]].value = sol.x[i];
        consts[open[i]].resolved = true;
    }
    std::vector<Rat> final_vals(open.size());
    for (size_t i = 0; i < open.size(); ++i) final_vals[i] = sol.x[i];
    out.final_coeffs = eval(final_vals);
    out.ok = true;
    return out;
}

std::string inner_display_name(const Word& w) {
    if (w == "T") return "alpha";
    if (w == "S") return "beta";
    if (w == "ST") return "mu";
    return "c[" + w + "]";
}

Rat inner_display_scale(const Word& w) {
    // In exp(l), with the degree-1 constants already forced to zero, the
    // coefficient of the word TS is minus the [S,T]-coefficient of l; the
    // classical unknown mu refers to that word coefficient.
    return w == "ST" ? Rat(-1) : Rat(1);
}

// Lie-valued 1-forms on the fiber, stored by their dx-coefficients.
LieElt<CurveFun> nu_lie(bool alg, int degree, const Rat& u0, const Rat& v0) {
    int trunc = degree + 1;
    LieElt<CurveFun> out(trunc);
    CurveFun inv_y(CurvePoly(Rat(1)), 1, 0);
    out.add("T", CurveFun(-CurvePoly::X()) * inv_y);
    out.add("S", inv_y);
    if (alg) {
        for (int n = 2; n <= degree - 1; ++n) {
            Rat sign = (n % 2 == 0) ? Rat(1) : Rat(-1);
            out.add("S" + Word(n, 'T'), CurveFun(q_poly(n)) * inv_y * sign);
        }
    }
    LieElt<CurveFun> spec(trunc);
    for (const auto& [w, co] : out.coeffs()) spec.add(w, co.substitute_uv(u0, v0));
    return spec;
}

LieElt<CurveFun> lie_d(const LieElt<CurveFun>& l) {
    LieElt<CurveFun> out(l.trunc());
    for (const auto& [w, co] : l.coeffs()) {
        CurveFun dfx = exterior_d(co, DMode::fiber).fx;
        if (!dfx.is_zero()) out.add(w, dfx);
    }
    return out;
}

// -sum_k ad_l^k(dl)/(k+1)! + sum_k ad_l^k(nu)/k! - nu_alg
LieElt<CurveFun> inner_residual(const LieElt<CurveFun>& l, const LieElt<CurveFun>& nu_n,
                                const LieElt<CurveFun>& nu_a) {
    int trunc = l.trunc();
    LieElt<CurveFun> dl = lie_d(l);
    LieElt<CurveFun> dgg = dl;
    {
        LieElt<CurveFun> term = dl;
        Rat fact(1);
        for (int k = 1; k <= trunc; ++k) {
            term = bracket(l, term);
            if (term.is_zero()) break;
            fact *= Rat(k + 1);
            dgg = dgg + term.scale_rat(Rat(1) / fact);
        }
    }
    LieElt<CurveFun> conj = nu_n;
    {
        LieElt<CurveFun> term = nu_n;
        Rat fact(1);
        for (int k = 1; k <= trunc; ++k) {
            term = bracket(l, term);
            if (term.is_zero()) break;
            fact *= Rat(k);
            conj = conj + term.scale_rat(Rat(1) / fact);
        }
    }
    return conj - dgg - nu_a;
}

SolveResult solve_inner(const GaugeProblem& p) {
    int N = p.degree, trunc = N + 1;
    LieElt<CurveFun> nu_n = nu_lie(false, N, p.u0, p.v0);
    LieElt<CurveFun> nu_a = nu_lie(true, N, p.u0, p.v0);

    std::vector<UnknownConst> consts;
    // gauge log accumulated so far; per-word map from unknown index
    LieElt<CurveFun> log_resolved(trunc);
    std::vector<std::pair<Word, size_t>> pending;  // introduced last degree

    for (int n = 1; n <= N; ++n) {
        const auto& words = lyndon_words(n);
        std::vector<std::string> names;
        for (const auto& w : words) names.push_back("ad_" + bracket_string(w));
        std::vector<size_t> open;
        for (const auto& [w, idx] : pending) open.push_back(idx);

        auto eval = [&](const std::vector<Rat>& vals) {
            LieElt<CurveFun> l = log_resolved;
            for (size_t i = 0; i < pending.size(); ++i) l.add(pending[i].first, CurveFun(vals[i]));
            LieElt<CurveFun> res = inner_residual(l, nu_n, nu_a).degree_part(n);
            std::vector<CurveFun> out;
            for (const auto& w : words) out.push_back(res.coeff(w));
            return out;
        };

        StageResult st = run_stage(n, names, consts, open, eval, p.u0, p.v0);
        if (!st.ok) {
            Obstruction ob;
            ob.degree = n;
            ob.constraints = std::move(st.constraints);
            return {std::nullopt, std::move(ob)};
        }
        // fold the resolved pending constants into the log
        for (size_t i = 0; i < pending.size(); ++i)
            log_resolved.add(pending[i].first, CurveFun(consts[pending[i].second].value));
        pending.clear();
        // residual dl_n = F_n: integrate each label, fresh constant each
        for (size_t l = 0; l < words.size(); ++l) {
            CurvePoly prim = primitive_of(st.final_coeffs[l], p.u0, p.v0);
            if (!prim.is_zero()) log_resolved.add(words[l], CurveFun(prim));
            consts.push_back({inner_display_name(words[l]), inner_display_scale(words[l])});
            pending.emplace_back(words[l], consts.size() - 1);
        }
    }
    // zero-constant normalization at the final degree
    pending.clear();

    SolveResult out;
    GaugeSolution sol;
    sol.gauge = inner_gauge(log_resolved);
    // residual vanishes through the solve degree (degree N+1 words are
    // outside the solved range)
    LieElt<CurveFun> check = inner_residual(log_resolved, nu_n, nu_a).truncate(N);
    // independent verification through the connection-level gauge action
    Connection cn = specialize_fiber_connection(nu1_naive(N), p.u0, p.v0);
    Connection ca = specialize_fiber_connection(nu1_alg(N), p.u0, p.v0);
    sol.verified = check.is_zero() && gauge_transform(cn, sol.gauge).same_value(ca);
    sol.action_on_s = exp_apply(sol.gauge.log, LieElt<CurveFun>::generator('S', trunc));
    sol.action_on_t = exp_apply(sol.gauge.log, LieElt<CurveFun>::generator('T', trunc));
    out.success = std::move(sol);
    return out;
}

SolveResult solve_full(const GaugeProblem& p) {
    int N = p.degree, trunc = N + 1;
    Connection cn = specialize_fiber_connection(nu1_naive(N), p.u0, p.v0);
    Connection ca = specialize_fiber_connection(nu1_alg(N), p.u0, p.v0);

    std::vector<UnknownConst> consts;
    Derivation<CurveFun> log_resolved(trunc);
    struct PendingSlot {
        char target;
        Word word;
        size_t idx;
    };
    std::vector<PendingSlot> pending;

    for (int n = 1; n <= N; ++n) {
        const auto& words = lyndon_words(n + 1);
        std::vector<std::string> names;
        for (const auto& w : words) names.push_back(bracket_string(w) + " d/dS");
        for (const auto& w : words) names.push_back(bracket_string(w) + " d/dT");
        std::vector<size_t> open;
        for (const auto& slot : pending) open.push_back(slot.idx);

        auto eval = [&](const std::vector<Rat>& vals) {
            Derivation<CurveFun> d = log_resolved;
            for (size_t i = 0; i < pending.size(); ++i) {
                if (vals[i] == 0) continue;
                (pending[i].target == 'S' ? d.on_s : d.on_t).add(pending[i].word, CurveFun(vals[i]));
            }
            Connection res = gauge_transform(cn, GaugeFun(d));
            std::vector<CurveFun> out;
            for (const auto& w : words)
                out.push_back(res.comp[0].on_s.coeff(w) - ca.comp[0].on_s.coeff(w));
            for (const auto& w : words)
                out.push_back(res.comp[0].on_t.coeff(w) - ca.comp[0].on_t.coeff(w));
            return out;
        };

        StageResult st = run_stage(n, names, consts, open, eval, p.u0, p.v0);
        if (!st.ok) {
            Obstruction ob;
            ob.degree = n;
            ob.constraints = std::move(st.constraints);
            return {std::nullopt, std::move(ob)};
        }
        for (const auto& slot : pending) {
            if (consts[slot.idx].value == 0) continue;
            (slot.target == 'S' ? log_resolved.on_s : log_resolved.on_t)
                .add(slot.word, CurveFun(consts[slot.idx].value));
        }
        pending.clear();
        for (size_t l = 0; l < 2 * words.size(); ++l) {
            char target = l < words.size() ? 'S' : 'T';
            const Word& w = words[l % words.size()];
            CurvePoly prim = primitive_of(st.final_coeffs[l], p.u0, p.v0);
            if (!prim.is_zero()) (target == 'S' ? log_resolved.on_s : log_resolved.on_t).add(w, CurveFun(prim));
            consts.push_back({std::string(target == 'S' ? "cS[" : "cT[") + w + "]", Rat(1)});
            pending.push_back({target, w, consts.size() - 1});
        }
    }
    pending.clear();

    SolveResult out;
    GaugeSolution sol;
    sol.gauge = GaugeFun(log_resolved);
    sol.verified = gauge_transform(cn, sol.gauge).same_value(ca);
    sol.action_on_s = exp_apply(log_resolved, LieElt<CurveFun>::generator('S', trunc));
    sol.action_on_t = exp_apply(log_resolved, LieElt<CurveFun>::generator('T', trunc));

    // Compare the normalized solution against the reference degree-3/5
    // action terms (same normalization is not guaranteed).
    auto flag = [&](const char* what, const LieElt<CurveFun>& actual, const Word& w, const CurveFun& expected) {
        if ((int)w.size() > trunc) return;
        bool same = actual.coeff(w) == expected;
        sol.notes.push_back(std::string(what) + " coefficient of " + bracket_string(w) +
                            (same ? " matches " : " differs from ") + "the reference value " + expected.to_string());
    };
    if (N >= 2) flag("T-image", sol.action_on_t, "STT", CurveFun(rat(1, 2)));
    if (N >= 4) {
        Rat u0v = p.u0;
        flag("S-image", sol.action_on_s, "STTTT", CurveFun(CurvePoly(u0v * rat(-29, 960))));
        flag("S-image", sol.action_on_s, "SSTTT", CurveFun(CurvePoly::X() * rat(1, 6)).substitute_uv(p.u0, p.v0));
        flag("T-image", sol.action_on_t, "STTTT", CurveFun(CurvePoly::X() * rat(-1, 6)).substitute_uv(p.u0, p.v0));
        flag("T-image", sol.action_on_t, "SSTTT", CurveFun(rat(1, 6)));
    }
    out.success = std::move(sol);
    return out;
}

}  // namespace

SolveResult solve_gauge(const GaugeProblem& p) {
    if (p.degree < 1) throw std::invalid_argument("solve_gauge: degree must be >= 1");
    Rat delta = p.u0 * p.u0 * p.u0 - Rat(27) * p.v0 * p.v0;
    if (delta == 0) throw std::invalid_argument("solve_gauge: fiber on the discriminant locus");
    return p.mode == GaugeMode::inner ? solve_inner(p) : solve_full(p);
}

}  // namespace ellkzb
