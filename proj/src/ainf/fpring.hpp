#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rat.hpp"

namespace ainf {

// Finite-precision caps for a truncated perfect F_p-algebra.
//   n  : p-adic digit count carried by Witt vectors over the ring
//   D  : geometric truncation degree; a monomial with sum of nonnegative
//        exponents >= D is identified with 0
//   N  : perfection depth; every exponent denominator divides p^N
//   DT : degree cap for auxiliary localization variables
//   L  : Laurent floor; inverted variables may not drop below -L
struct PrecisionBudget {
    int n = 1;
    Rat D = Rat(1);
    int N = 0;
    int DT = 1;
    long long L = 0;

    void validate() const {
        if (n < 1 || N < 0 || !(D > Rat(0)) || DT < 1 || L < 0)
            throw ConfigInvalid("precision budget out of range");
    }
};

struct Variable {
    std::string name;
    bool inverted = false;
    // Auxiliary (bounded) variables model elements of norm exactly 1: they
    // carry weight 0 in the Gauss norm, do not count toward the D
    // truncation, and are capped at degree DT instead. They cannot be
    // inverted.
    bool aux = false;
};

class RingPresentation;
using RingPtr = std::shared_ptr<const RingPresentation>;

// Exponent vector of one monomial, one entry per ring variable. Entries are
// exact rationals with denominator dividing p^N (enforced by the ring ops
// that create them). Ordered by (sum of exponents, lex) so that reduction
// rewrites high monomials into low ones and 1 is minimal.
class PerfMonomial {
public:
    PerfMonomial() = default;
    explicit PerfMonomial(size_t nvars) : exps_(nvars) {}
    explicit PerfMonomial(std::vector<Rat> e) : exps_(std::move(e)) {}

    size_t size() const { return exps_.size(); }
    const Rat& operator[](size_t i) const { return exps_[i]; }
    Rat& operator[](size_t i) { return exps_[i]; }
    const std::vector<Rat>& exponents() const { return exps_; }

    bool is_constant() const {
        for (const auto& e : exps_)
            if (!e.is_zero()) return false;
        return true;
    }

    // raw signed exponent sum; used only to grade the monomial order
    Rat order_grade() const {
        Rat s;
        for (const auto& e : exps_) s += e;
        return s;
    }
    // log-norm of the monomial: signed exponent sum over weight-1 variables
    Rat weighted_alpha(const std::vector<Variable>& vars) const {
        Rat s;
        for (size_t i = 0; i < exps_.size(); ++i)
            if (!vars[i].aux) s += exps_[i];
        return s;
    }
    // sum of nonnegative weight-1 exponents; the quantity the D cap bounds
    Rat positive_degree(const std::vector<Variable>& vars) const {
        Rat s;
        for (size_t i = 0; i < exps_.size(); ++i)
            if (!vars[i].aux && exps_[i] > Rat(0)) s += exps_[i];
        return s;
    }

    PerfMonomial operator*(const PerfMonomial& o) const {
        PerfMonomial r(*this);
        for (size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
        return r;
    }

    friend bool operator==(const PerfMonomial& a, const PerfMonomial& b) {
        return a.exps_ == b.exps_;
    }
    friend bool operator<(const PerfMonomial& a, const PerfMonomial& b) {
        Rat ga = a.order_grade(), gb = b.order_grade();
        if (ga != gb) return ga < gb;
        return a.exps_ < b.exps_;
    }
    friend bool operator>(const PerfMonomial& a, const PerfMonomial& b) { return b < a; }

    std::string str(const std::vector<Variable>& vars) const;

private:
    std::vector<Rat> exps_;
};

// Element of a truncated perfect F_p-algebra: finite F_p-combination of
// monomials with Z[1/p] exponents, kept in normal form with respect to the
// presentation's relation subspace. Immutable in practice: all operations
// return fresh values.
class PerfPoly {
public:
    using TermMap = std::map<PerfMonomial, int>;

    PerfPoly() = default;
    PerfPoly(RingPtr ring, TermMap terms);

    static PerfPoly zero(RingPtr ring);
    static PerfPoly one(RingPtr ring);
    static PerfPoly constant(RingPtr ring, long long c);
    static PerfPoly variable(RingPtr ring, const std::string& name, const Rat& exp = Rat(1));
    static PerfPoly monomial(RingPtr ring, const PerfMonomial& m, int coeff = 1);

    const RingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    size_t term_count() const { return terms_.size(); }

    friend PerfPoly operator+(const PerfPoly& a, const PerfPoly& b);
    friend PerfPoly operator-(const PerfPoly& a, const PerfPoly& b);
    friend PerfPoly operator*(const PerfPoly& a, const PerfPoly& b);
    PerfPoly operator-() const;
    PerfPoly scaled(long long c) const;

    PerfPoly pow(unsigned long long e) const;
    // a^(num/p^k) for num >= 0: k-fold Frobenius root then integer power
    PerfPoly rat_pow(const Rat& e) const;

    PerfPoly frobenius() const;
    PerfPoly frobenius_inverse() const;

    // min over stored monomials of the signed exponent sum; |0| -> +inf
    NormExponent gauss_alpha() const;

    friend bool operator==(const PerfPoly& a, const PerfPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator<(const PerfPoly& a, const PerfPoly& b) {
        return a.terms_ < b.terms_;
    }

    std::string str() const;

private:
    RingPtr ring_;
    TermMap terms_;
};

struct MembershipCertificate {
    bool member = false;
    // combining coefficients, one per *saturated* generator, such that
    // a = sum_i coeff[i] * gen[i] at the working truncation
    std::vector<PerfPoly> coefficients;
    std::vector<PerfPoly> generators; // the saturated generators used
};

// A truncated perfect F_p-algebra presentation: prime, variables, Laurent
// flags, relation generators (over the free ring on the same variables) and
// the precision budget. Relations are Frobenius-root-saturated to depth N and
// span a finite-dimensional subspace used for linear normal forms. Instances
// are immutable and shared through RingPtr; all queries are const and safe
// for concurrent readers.
class RingPresentation : public std::enable_shared_from_this<RingPresentation> {
public:
    static RingPtr create(int p, std::vector<Variable> vars, PrecisionBudget prec,
                          const std::vector<PerfPoly>& relations = {},
                          size_t dimension_cap = 500000);

    int prime() const { return p_; }
    const PrecisionBudget& budget() const { return prec_; }
    const std::vector<Variable>& variables() const { return vars_; }
    size_t var_index(const std::string& name) const;
    bool has_relations() const { return !relations_.empty(); }
    const std::vector<PerfPoly>& relation_generators() const { return relations_; }

    long long denominator_cap() const { return pow_p(prec_.N); }
    long long pow_p(int k) const;

    // truncation predicate: true when the monomial is identified with 0;
    // only the weight-1 degree cap D truncates silently (it is an ideal
    // quotient); auxiliary-window overflow is loud, see check_exponents
    bool truncates(const PerfMonomial& m) const {
        return !(m.positive_degree(vars_) < prec_.D);
    }
    // floor/denominator guards; throw on violation
    void check_exponents(const PerfMonomial& m) const;

    // normal form of a raw truncated term map with respect to the saturated
    // relation subspace (identity map for free rings)
    PerfPoly::TermMap reduce(PerfPoly::TermMap t) const;

    // ordered monomial basis of the truncated quotient (non-pivot monomials);
    // enumerated on first use for free rings, eagerly for presented ones
    const std::vector<PerfMonomial>& monomial_basis() const;
    // all monomials under the caps, before any quotient
    const std::vector<PerfMonomial>& ambient_monomials() const;
    std::optional<size_t> ambient_index(const PerfMonomial& m) const;

    std::string describe() const;

private:
    RingPresentation() = default;
    void build_relation_engine(size_t dimension_cap);
    void ensure_enumerated(size_t dimension_cap) const;

    int p_ = 2;
    std::vector<Variable> vars_;
    PrecisionBudget prec_;
    std::vector<PerfPoly> relations_; // original generators (free-ring term maps)

    // ambient enumeration + relation echelon, built once
    mutable std::once_flag enum_once_;
    mutable std::vector<PerfMonomial> ambient_;
    mutable std::map<PerfMonomial, size_t> ambient_pos_;
    mutable size_t dim_cap_ = 500000;

    // RREF rows of the relation subspace keyed by leading (largest) monomial
    // index; rows are dense coefficient vectors over the ambient monomials
    std::map<size_t, std::vector<uint8_t>, std::greater<size_t>> rref_;
    std::vector<PerfMonomial> basis_; // non-pivot monomials, ascending
};

bool same_ring(const RingPtr& a, const RingPtr& b);

bool is_unit(const PerfPoly& a);
PerfPoly invert(const PerfPoly& a);

MembershipCertificate ideal_membership(const PerfPoly& a, const std::vector<PerfPoly>& gens);

// parse the CLI polynomial grammar: terms of integer coefficients and
// variable powers, fractional exponents written x^(3/4)
PerfPoly parse_poly(const RingPtr& ring, const std::string& text);

} // namespace ainf
