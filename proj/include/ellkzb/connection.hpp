#pragma once

#include <array>
#include <optional>

#include "ellkzb/diffform.hpp"
#include "ellkzb/freelie.hpp"
#include "ellkzb/laurent.hpp"

namespace ellkzb {

enum class Family { single_curve, universal };

// Basis label of a derivation-valued term: either an inner derivation ad_w
// (w a Lyndon word, standard bracketing) or w d/dS, w d/dT.
struct DerLabel {
    enum class Kind { ad, d_s, d_t };
    Kind kind = Kind::ad;
    Word word;

    int degree() const { return kind == Kind::ad ? (int)word.size() : (int)word.size() - 1; }
    int weight() const;
    std::string to_string() const;
    friend bool operator==(const DerLabel&, const DerLabel&) = default;
    friend bool operator<(const DerLabel& a, const DerLabel& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        return a.word < b.word;
    }
};

struct ConnTerm {
    DerLabel label;
    DiffForm1 form;
};

// Derivation-valued 1-form, truncated in derivation degree. Presentation
// terms keep the construction's labels; the canonical value is the triple
// of generator-value derivations along dx, du, dv.
class Connection {
  public:
    Family family = Family::single_curve;
    int degree = 5;
    std::optional<std::pair<Rat, Rat>> fiber;
    std::string model;  // display tag only
    std::vector<ConnTerm> terms;
    std::array<Derivation<CurveFun>, 3> comp;  // dx, du, dv components

    Connection() : comp{Derivation<CurveFun>(6), Derivation<CurveFun>(6), Derivation<CurveFun>(6)} {}

    static Connection from_terms(Family family, int degree, std::vector<ConnTerm> terms,
                                 std::optional<std::pair<Rat, Rat>> fiber = std::nullopt,
                                 std::string model = "");

    int lie_trunc() const { return degree + 1; }
    bool same_value(const Connection& o) const { return comp == o.comp; }
    friend bool operator==(const Connection& a, const Connection& b) {
        return a.family == b.family && a.degree == b.degree && a.fiber == b.fiber && a.comp == b.comp;
    }

    DMode dmode() const { return family == Family::universal ? DMode::universal : DMode::fiber; }
};

// The derivation a label denotes, with value truncation `trunc`.
Derivation<CurveFun> label_derivation(const DerLabel& l, int trunc);

// --- models ------------------------------------------------------------------

Connection nu1_naive(int degree);
Connection nu1_alg(int degree);
Connection nu1_reg(int degree);
Connection gauss_manin(int degree = 1);
Connection omega_alg(int degree);
Connection omega_reg(int degree);
Connection model_by_name(const std::string& name, int degree);

// Coefficient 1-forms shared by the universal models.
DiffForm1 tau_form();        // (3/2) alpha / Delta
DiffForm1 ell_alg_form();    // dx/y - ((6x^2-u)/y) alpha/(2 Delta) - (1/6)(dDelta/Delta)(x/y)
DiffForm1 ell_reg_form();    // dx/y + (u/y) alpha/(2 Delta) - (1/6)(dDelta/Delta)(x/y)

// --- gauge -------------------------------------------------------------------

// Gauge element exp(log), log a positive-degree derivation with exact
// function coefficients.
struct GaugeFun {
    Derivation<CurveFun> log;

    explicit GaugeFun(int trunc = 6) : log(trunc) {}
    explicit GaugeFun(const Derivation<CurveFun>& d);
    GaugeFun inverse() const { return GaugeFun(-log); }
};

GaugeFun inner_gauge(const LieElt<CurveFun>& h);
// exp(-(2x^2/y) T) at the value truncation of a degree-N connection.
GaugeFun g_reg_gauge(int degree);

// omega |-> -dg g^-1 + g omega g^-1.
Connection gauge_transform(const Connection& c, const GaugeFun& g);

// --- curvature -----------------------------------------------------------------

struct Curvature2 {
    std::array<Derivation<CurveFun>, 3> comp;  // dx^du, dx^dv, du^dv
    bool is_zero() const { return comp[0].is_zero() && comp[1].is_zero() && comp[2].is_zero(); }
};

// d omega + (1/2)[omega, omega].
Curvature2 curvature(const Connection& c);

// --- identity-section behaviour -------------------------------------------------

// Expansion in the local parameter s (dx/y = ds); residue is the
// s^-1 ds coefficient, u, v stay symbolic. du, dv terms carry no ds part.
Derivation<CurveFun> residue_at_identity(const Connection& c);
int pole_order_at_identity(const Connection& c);

// --- audits ---------------------------------------------------------------------

// Weight of every presentation term (coefficient weight + label weight);
// empty result means all terms sit in weight 0.
std::vector<std::string> weight_violations(const Connection& c);
int max_delta_exponent(const Connection& c);

Connection specialize_fiber_connection(const Connection& c, const Rat& u0, const Rat& v0);

// Inner part extraction: u with ad_u = d, when d is inner.
std::optional<LieElt<CurveFun>> as_inner(const Derivation<CurveFun>& d);
std::string derivation_pretty(const Derivation<CurveFun>& d);

// --- matrix specialization -------------------------------------------------------

using MatRat = std::vector<std::vector<Rat>>;
using MatFun = std::vector<std::vector<CurveFun>>;

struct MatConnection {
    Family family = Family::single_curve;
    std::vector<std::vector<DiffForm1>> w;

    size_t dim() const { return w.size(); }
    friend bool operator==(const MatConnection&, const MatConnection&) = default;
};

bool is_nilpotent(const MatRat& m);
MatFun lie_matrix_rep(const LieElt<CurveFun>& a, const MatRat& rho_s, const MatRat& rho_t);
// Requires an inner-valued connection; substitutes generators by matrices.
MatConnection specialize_rep(const Connection& c, const MatRat& rho_s, const MatRat& rho_t);
// -dG G^-1 + G M G^-1 for G = exp(N), N nilpotent with function entries.
MatConnection matrix_gauge_transform(const MatConnection& m, const MatFun& log_gauge);
MatFun lie_matrix_rep_of_gauge_log(const GaugeFun& g, const MatRat& rho_s, const MatRat& rho_t);

}  // namespace ellkzb
