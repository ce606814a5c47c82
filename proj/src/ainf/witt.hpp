#pragma once

#include <map>
#include <vector>

#include "fpring.hpp"
#include "structure.hpp"

namespace ainf {

// Truncated Witt vector over a perfect digit ring, stored in classical Witt
// coordinates (d_0, ..., d_{eff-1}). The Teichmuller series view
//     x = sum_l p^l [d_l^(1/p^l)]
// is what the Gauss and weighted Gauss norms read; the norm code divides
// exponents rationally and never takes actual roots.
//
// Effective length tracks digits still meaningful: operations return the
// minimum of their inputs' lengths and delta consumes one digit.
class WittVec {
public:
    WittVec() = default;
    WittVec(RingPtr ring, std::vector<PerfPoly> digits);

    static WittVec zero(const RingPtr& ring, int len = -1);
    static WittVec one(const RingPtr& ring, int len = -1);
    static WittVec from_int(const RingPtr& ring, long long c, int len = -1);
    static WittVec teichmuller(const PerfPoly& a, int len = -1);
    static WittVec p_times_one(const RingPtr& ring, int len = -1); // the element p

    const RingPtr& ring() const { return ring_; }
    int effective_length() const { return (int)digits_.size(); }
    const PerfPoly& digit(int l) const { return digits_[(size_t)l]; }
    const std::vector<PerfPoly>& digits() const { return digits_; }

    bool is_zero() const;
    bool is_one() const;

    friend bool operator==(const WittVec& a, const WittVec& b);

    std::string str() const;

private:
    RingPtr ring_;
    std::vector<PerfPoly> digits_;
};

WittVec w_add(const WittVec& x, const WittVec& y);
WittVec w_neg(const WittVec& x);
WittVec w_sub(const WittVec& x, const WittVec& y);
WittVec w_mul(const WittVec& x, const WittVec& y);
WittVec w_scalar(long long c, const WittVec& x);
WittVec w_pow(const WittVec& x, unsigned long long e);

WittVec verschiebung(const WittVec& x);
WittVec witt_frobenius(const WittVec& x);

// multiplication by p = V(F(x)); cheaper and exact
WittVec p_mul(const WittVec& x);

// exact division by p of an element with digit 0 = 0; digit shift with an
// inverse-Frobenius twist, consumes one digit and one perfection level
WittVec p_divide(const WittVec& x);

// inverse of a unit (digit 0 a unit in the digit ring)
WittVec witt_invert(const WittVec& u);

// delta(x) = (phi(x) - x^p)/p at effective length one shorter
WittVec delta(const WittVec& x);

struct DistinguishedReport {
    bool certified = false;
    MembershipCertificate certificate; // 1 in (d_0, delta(d)_0)
};
// (p, d, delta(d)) the unit ideal, decided through the digit ring at the
// working truncation; a negative is "not certified at this precision"
DistinguishedReport is_distinguished(const WittVec& d);

struct PrimitivityReport {
    bool certified = false;
    PerfPoly digit1_inverse; // re-verifiable certificate for the unit digit
};
// z_0 topologically nilpotent (alpha > 0) and z_1 a unit
PrimitivityReport is_primitive(const WittVec& z);

// Gauss norm alpha: min_l alpha(d_l)/p^l over effective digits
NormExponent gauss_alpha_witt(const WittVec& x);
// weighted Gauss norm alpha with weight rho = theta: min_l (l + alpha(d_l)/p^l)
NormExponent weighted_gauss_alpha(const WittVec& x);

// weighted_gauss_alpha(x^(p^k)) / p^k; monotone nonincreasing in k and equal
// to the weighted alpha exactly when the norm is power-multiplicative
NormExponent spectral_alpha_estimate(const WittVec& x, int k);

// x written as an exact integer combination of the generators V^l([nu]):
// x = sum c * V^l([nu]), one triple per (level, monomial); no Frobenius
// roots are taken
struct TeichTerm {
    int level;
    int coeff; // in [1, p)
    PerfMonomial monomial;
};
std::vector<TeichTerm> teich_decompose(const WittVec& x);

// ---------------------------------------------------------------------------
// constructive algorithms on Witt coordinates

// Writes 1 as a finite W-combination of Teichmuller powers of the xbar_i,
// given digit-ring witnesses sum_i abar_i * xbar_i = 1. Returns coefficients
// keyed by the integer floor vectors j (|j| = m or m+1) with
//     sum_j c_j [xbar_0]^(j_0) ... [xbar_m]^(j_m) = 1
// exactly at the working length. The expansion is computed universally over
// an integer-exponent scratch ring and specialized through fractional powers
// of the concrete abar_i, xbar_i.
std::map<std::vector<long long>, WittVec>
unit_witt_combination(const std::vector<PerfPoly>& abar, const std::vector<PerfPoly>& xbar);

// f = sum_i (f * b_i) [xbar_i] with every digit of f*b_i integral
// (nonnegative exponents); throws NormTooLarge otherwise
struct SmallNormDecomposition {
    std::vector<WittVec> coefficients; // a_i = f * b_i
};
SmallNormDecomposition small_norm_decompose(const WittVec& f, const std::vector<WittVec>& b,
                                            const std::vector<PerfPoly>& xbar);

// sufficient weighted-alpha threshold for small_norm_decompose over these b_i
Rat small_norm_threshold(const std::vector<WittVec>& b);

struct PerturbResult {
    std::vector<WittVec> adjusted; // (f_1 + t^k, f_2, ..., f_n, t^k)
    bool degenerate = false;       // t^k vanished at the truncation
};
// replaces (f_1, ..., f_n; g) by (f_1 + [xbar0]^k, ..., [xbar0]^k; g) after
// verifying the witness identity [xbar0]^k = sum a_i f_i + a_{n+1} g
PerturbResult perturb_parameters(const std::vector<WittVec>& f, const WittVec& g, long long k,
                                 const PerfPoly& xbar0, const std::vector<WittVec>& witness);

} // namespace ainf
