#pragma once

#include <vector>

#include "intpoly.hpp"
#include "rat.hpp"

namespace ainf {

// Universal Witt structure polynomials for one (p, n), derived once over the
// integers through the ghost components
//     w_k(Z_0..Z_k) = sum_{i<=k} p^i Z_i^(p^(k-i))
// and certified by re-evaluating the ghost identities symbolically plus at
// random integer points. Variables are ordered X_0..X_{n-1}, Y_0..Y_{n-1}.
//
// Addition of two Teichmuller lifts carries into fractional powers; the
// specialized carry polynomials c_k(X, Y) (weighted degree 1, exponents in
// Z[1/p]) are extracted here as well and drive digit-slot merges in quotient
// rings.
class StructurePolyCache {
public:
    struct CarryTerm {
        Rat ex;     // exponent of the first argument
        Rat ey;     // exponent of the second argument
        int coeff;  // in [1, p)
    };

    static const StructurePolyCache& get(int p, int n);

    int prime() const { return p_; }
    int length() const { return n_; }

    const IntPoly& add_poly(int k) const { return add_[k]; }
    const IntPoly& mul_poly(int k) const { return mul_[k]; }
    const IntPoly& neg_poly(int k) const { return neg_[k]; }

    // digits of [X] + [Y] in the fractional-power convention:
    // [X] + [Y] = sum_k p^k [c_k(X, Y)]
    const std::vector<CarryTerm>& teich_add_carry(int k) const { return carry_[k]; }

    // re-runs the full certification; throws on any violated identity
    void certify() const;

private:
    StructurePolyCache(int p, int n);
    void derive();
    void extract_carries();

    int p_;
    int n_;
    std::vector<IntPoly> add_;
    std::vector<IntPoly> mul_;
    std::vector<IntPoly> neg_;
    std::vector<std::vector<CarryTerm>> carry_;
};

} // namespace ainf
