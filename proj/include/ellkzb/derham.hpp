#pragma once

#include "ellkzb/diffform.hpp"

namespace ellkzb {

// Class of a 1-form on the punctured affine curve in the frame
// [dx/y], [x dx/y]; coefficients are u,v-polynomials (plain rationals once
// a fiber is fixed).
struct CohomClass {
    CurvePoly c1, c2;

    bool is_zero() const { return c1.is_zero() && c2.is_zero(); }
    friend bool operator==(const CohomClass&, const CohomClass&) = default;
};

struct ReduceResult {
    CohomClass cls;
    CurvePoly primitive;  // zero constant term in normal form
};

// Reduce f dx/y, f a normal-form polynomial, to
//   c1 dx/y + c2 x dx/y + d(primitive)
// using d(x^k y) = ((4k+6)x^{k+2} - (k+1/2)u x^k - k v x^{k-1}) dx/y and
// exactness of pure-x forms.
ReduceResult reduce_form(const CurvePoly& f);

}  // namespace ellkzb
