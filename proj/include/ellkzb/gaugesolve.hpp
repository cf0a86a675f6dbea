#pragma once

#include "ellkzb/connection.hpp"
#include "ellkzb/derham.hpp"

namespace ellkzb {

enum class GaugeMode { inner, full };

// Solve dg = g nu_naive - nu_alg g on a fixed fiber, degree by degree.
// Inner mode restricts the gauge to exp of a Lie element (conjugation
// preserves the group structure on the fiber); full mode allows any
// automorphism exp(D), D a positive-degree derivation.
struct GaugeProblem {
    GaugeMode mode = GaugeMode::inner;
    int degree = 5;
    Rat u0 = Rat(4), v0 = Rat(1);
};

struct Constraint {
    std::string text;    // normalized equation, e.g. "mu = -1/2"
    std::string source;  // which class condition produced it
};

struct Obstruction {
    int degree = 0;
    std::vector<Constraint> constraints;
    bool mentions(const std::string& eq) const {
        for (const auto& c : constraints)
            if (c.text == eq) return true;
        return false;
    }
};

struct GaugeSolution {
    GaugeFun gauge;
    bool verified = false;  // exact residual check through gauge_transform
    LieElt<CurveFun> action_on_s, action_on_t;
    std::vector<std::string> notes;

    GaugeSolution() : gauge(6), action_on_s(6), action_on_t(6) {}
};

struct SolveResult {
    std::optional<GaugeSolution> success;
    std::optional<Obstruction> obstruction;
};

SolveResult solve_gauge(const GaugeProblem& p);

}  // namespace ellkzb
