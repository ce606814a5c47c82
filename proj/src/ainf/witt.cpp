#include "witt.hpp"

#include <algorithm>
#include <sstream>

namespace ainf {

namespace {

// evaluate an integer structure polynomial (variables X_0..X_{nc-1},
// Y_0..Y_{nc-1}) on digit lists, reducing coefficients mod p; digit powers
// are memoized per call
PerfPoly eval_structure(const IntPoly& f, const RingPtr& ring, const std::vector<PerfPoly>& xd,
                        const std::vector<PerfPoly>& yd) {
    const int p = ring->prime();
    const size_t nc = f.nvars() / 2;
    std::vector<std::map<uint32_t, PerfPoly>> powcache(2 * nc);
    auto power = [&](size_t vi, uint32_t e) -> const PerfPoly& {
        auto& cache = powcache[vi];
        auto it = cache.find(e);
        if (it != cache.end()) return it->second;
        const PerfPoly& base = vi < nc ? xd[vi] : yd[vi - nc];
        PerfPoly v = base.pow(e);
        return cache.emplace(e, std::move(v)).first->second;
    };
    PerfPoly acc = PerfPoly::zero(ring);
    for (const auto& [m, c] : f.terms()) {
        long long cm = (long long)(c % p);
        if (cm < 0) cm += p;
        if (cm == 0) continue;
        PerfPoly term = PerfPoly::constant(ring, cm);
        for (size_t vi = 0; vi < m.size(); ++vi) {
            if (m[vi] == 0) continue;
            if (term.is_zero()) break;
            term = term * power(vi, m[vi]);
        }
        acc = acc + term;
    }
    return acc;
}

const StructurePolyCache& cache_for(const RingPtr& ring, int len) {
    return StructurePolyCache::get(ring->prime(), std::max(len, 1));
}

} // namespace

WittVec::WittVec(RingPtr ring, std::vector<PerfPoly> digits)
    : ring_(std::move(ring)), digits_(std::move(digits)) {
    if (!ring_) throw Error("WittVec without ring");
    if ((int)digits_.size() > ring_->budget().n)
        throw PrecisionExhausted("Witt length beyond the budget's n");
    for (const auto& d : digits_)
        if (!same_ring(d.ring(), ring_)) throw RingMismatch("digit from a different ring");
}

WittVec WittVec::zero(const RingPtr& ring, int len) {
    if (len < 0) len = ring->budget().n;
    return WittVec(ring, std::vector<PerfPoly>((size_t)len, PerfPoly::zero(ring)));
}

WittVec WittVec::one(const RingPtr& ring, int len) { return from_int(ring, 1, len); }

WittVec WittVec::from_int(const RingPtr& ring, long long c, int len) {
    if (len < 0) len = ring->budget().n;
    std::vector<PerfPoly> d((size_t)len, PerfPoly::zero(ring));
    if (len > 0) d[0] = PerfPoly::one(ring);
    return w_scalar(c, WittVec(ring, std::move(d)));
}

WittVec WittVec::teichmuller(const PerfPoly& a, int len) {
    const RingPtr& ring = a.ring();
    if (len < 0) len = ring->budget().n;
    std::vector<PerfPoly> d((size_t)len, PerfPoly::zero(ring));
    if (len > 0) d[0] = a;
    return WittVec(ring, std::move(d));
}

WittVec WittVec::p_times_one(const RingPtr& ring, int len) {
    return p_mul(one(ring, len));
}

bool WittVec::is_zero() const {
    for (const auto& d : digits_)
        if (!d.is_zero()) return false;
    return true;
}

bool WittVec::is_one() const {
    if (digits_.empty()) return false;
    if (!digits_[0].is_one()) return false;
    for (size_t l = 1; l < digits_.size(); ++l)
        if (!digits_[l].is_zero()) return false;
    return true;
}

bool operator==(const WittVec& a, const WittVec& b) {
    return same_ring(a.ring_, b.ring_) && a.digits_ == b.digits_;
}

std::string WittVec::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t l = 0; l < digits_.size(); ++l) {
        if (l) os << "; ";
        os << digits_[l].str();
    }
    os << ")";
    return os.str();
}

WittVec w_add(const WittVec& x, const WittVec& y) {
    if (!same_ring(x.ring(), y.ring())) throw RingMismatch();
    int len = std::min(x.effective_length(), y.effective_length());
    const auto& sc = cache_for(x.ring(), len);
    std::vector<PerfPoly> out;
    out.reserve((size_t)len);
    for (int k = 0; k < len; ++k)
        out.push_back(eval_structure(sc.add_poly(k), x.ring(), x.digits(), y.digits()));
    return WittVec(x.ring(), std::move(out));
}

WittVec w_neg(const WittVec& x) {
    int len = x.effective_length();
    const auto& sc = cache_for(x.ring(), len);
    std::vector<PerfPoly> out;
    out.reserve((size_t)len);
    for (int k = 0; k < len; ++k)
        out.push_back(eval_structure(sc.neg_poly(k), x.ring(), x.digits(), x.digits()));
    return WittVec(x.ring(), std::move(out));
}

WittVec w_sub(const WittVec& x, const WittVec& y) { return w_add(x, w_neg(y)); }

WittVec w_mul(const WittVec& x, const WittVec& y) {
    if (!same_ring(x.ring(), y.ring())) throw RingMismatch();
    int len = std::min(x.effective_length(), y.effective_length());
    const auto& sc = cache_for(x.ring(), len);
    std::vector<PerfPoly> out;
    out.reserve((size_t)len);
    for (int k = 0; k < len; ++k)
        out.push_back(eval_structure(sc.mul_poly(k), x.ring(), x.digits(), y.digits()));
    return WittVec(x.ring(), std::move(out));
}

WittVec w_scalar(long long c, const WittVec& x) {
    // double-and-add; c reduced mod p^len implicitly by truncation
    bool neg = c < 0;
    unsigned long long cc = neg ? (unsigned long long)(-c) : (unsigned long long)c;
    WittVec acc = WittVec::zero(x.ring(), x.effective_length());
    WittVec base = x;
    while (cc) {
        if (cc & 1) acc = w_add(acc, base);
        cc >>= 1;
        if (cc) base = w_add(base, base);
    }
    return neg ? w_neg(acc) : acc;
}

WittVec w_pow(const WittVec& x, unsigned long long e) {
    WittVec acc = WittVec::one(x.ring(), x.effective_length());
    WittVec base = x;
    while (e) {
        if (e & 1) acc = w_mul(acc, base);
        e >>= 1;
        if (e) base = w_mul(base, base);
    }
    return acc;
}

WittVec verschiebung(const WittVec& x) {
    int len = std::min(x.effective_length() + 1, x.ring()->budget().n);
    std::vector<PerfPoly> out((size_t)len, PerfPoly::zero(x.ring()));
    for (int l = 1; l < len; ++l) out[(size_t)l] = x.digit(l - 1);
    return WittVec(x.ring(), std::move(out));
}

WittVec witt_frobenius(const WittVec& x) {
    std::vector<PerfPoly> out;
    out.reserve((size_t)x.effective_length());
    for (const auto& d : x.digits()) out.push_back(d.pow((unsigned long long)x.ring()->prime()));
    return WittVec(x.ring(), std::move(out));
}

WittVec p_mul(const WittVec& x) { return verschiebung(witt_frobenius(x)); }

WittVec p_divide(const WittVec& x) {
    if (x.effective_length() < 1 || !x.digit(0).is_zero())
        throw Error("p_divide needs digit 0 = 0");
    std::vector<PerfPoly> out;
    for (int l = 1; l < x.effective_length(); ++l) out.push_back(x.digit(l).frobenius_inverse());
    return WittVec(x.ring(), std::move(out));
}

WittVec witt_invert(const WittVec& u) {
    if (u.effective_length() < 1) throw NotAUnit("empty Witt vector");
    PerfPoly u0inv = invert(u.digit(0)); // NotAUnit propagates
    WittVec t = w_mul(u, WittVec::teichmuller(u0inv, u.effective_length()));
    // t = 1 + w with w in the V-filtration; finite geometric series
    WittVec w = w_sub(t, WittVec::one(u.ring(), u.effective_length()));
    WittVec negw = w_neg(w);
    WittVec sum = WittVec::one(u.ring(), u.effective_length());
    WittVec pw = negw;
    while (!pw.is_zero()) {
        sum = w_add(sum, pw);
        pw = w_mul(pw, negw);
    }
    WittVec inv = w_mul(WittVec::teichmuller(u0inv, u.effective_length()), sum);
    if (!w_mul(u, inv).is_one()) throw NotAUnit("inverse failed to verify");
    return inv;
}

WittVec delta(const WittVec& x) {
    if (x.effective_length() < 2) throw PrecisionExhausted("delta needs effective length >= 2");
    WittVec phi = witt_frobenius(x);
    WittVec xp = w_pow(x, (unsigned long long)x.ring()->prime());
    WittVec diff = w_sub(phi, xp);
    if (!diff.digit(0).is_zero()) throw Error("phi(x) - x^p has a nonzero digit 0");
    return p_divide(diff);
}

DistinguishedReport is_distinguished(const WittVec& d) {
    if (d.effective_length() < 2)
        throw PrecisionExhausted("is_distinguished needs effective length >= 2");
    DistinguishedReport rep;
    WittVec dl = delta(d);
    std::vector<PerfPoly> gens{d.digit(0), dl.digit(0)};
    rep.certificate = ideal_membership(PerfPoly::one(d.ring()), gens);
    rep.certified = rep.certificate.member;
    return rep;
}

PrimitivityReport is_primitive(const WittVec& z) {
    if (z.effective_length() < 2)
        throw PrecisionExhausted("is_primitive needs effective length >= 2");
    PrimitivityReport rep;
    NormExponent a0 = z.digit(0).gauss_alpha();
    bool nilpotent = a0.is_infinite() || a0.alpha() > Rat(0);
    if (!nilpotent) return rep;
    try {
        rep.digit1_inverse = invert(z.digit(1));
    } catch (const NotAUnit&) {
        return rep;
    }
    rep.certified = true;
    return rep;
}

NormExponent gauss_alpha_witt(const WittVec& x) {
    NormExponent best;
    long long pl = 1;
    for (int l = 0; l < x.effective_length(); ++l) {
        NormExponent a = x.digit(l).gauss_alpha();
        if (!a.is_infinite()) best = NormExponent::min_alpha(best, NormExponent(a.alpha() / Rat(pl)));
        pl *= x.ring()->prime();
    }
    return best;
}

NormExponent weighted_gauss_alpha(const WittVec& x) {
    NormExponent best;
    long long pl = 1;
    for (int l = 0; l < x.effective_length(); ++l) {
        NormExponent a = x.digit(l).gauss_alpha();
        if (!a.is_infinite())
            best = NormExponent::min_alpha(best, NormExponent(Rat(l) + a.alpha() / Rat(pl)));
        pl *= x.ring()->prime();
    }
    return best;
}

NormExponent spectral_alpha_estimate(const WittVec& x, int k) {
    if (k < 0) throw Error("spectral estimate needs k >= 0");
    WittVec y = x;
    long long pk = 1;
    for (int i = 0; i < k; ++i) {
        y = w_pow(y, (unsigned long long)x.ring()->prime());
        pk *= x.ring()->prime();
    }
    NormExponent a = weighted_gauss_alpha(y);
    if (a.is_infinite()) return a;
    return NormExponent(a.alpha() / Rat(pk));
}

std::vector<TeichTerm> teich_decompose(const WittVec& x) {
    std::vector<TeichTerm> out;
    WittVec rem = x;
    for (int l = 0; l < x.effective_length(); ++l) {
        const PerfPoly& dl = rem.digit(l);
        if (dl.is_zero()) continue;
        // h = sum over digit-l terms of c * V^l([nu]); digits below l stay 0
        WittVec h = WittVec::zero(x.ring(), x.effective_length());
        for (const auto& [nu, c] : dl.terms()) {
            out.push_back(TeichTerm{l, c, nu});
            std::vector<PerfPoly> d((size_t)x.effective_length(), PerfPoly::zero(x.ring()));
            d[(size_t)l] = PerfPoly::monomial(x.ring(), nu);
            h = w_add(h, w_scalar(c, WittVec(x.ring(), std::move(d))));
        }
        rem = w_sub(rem, h);
        for (int j = 0; j <= l; ++j)
            if (!rem.digit(j).is_zero()) throw Error("teich_decompose failed to clear a digit");
    }
    if (!rem.is_zero()) throw Error("teich_decompose left a remainder");
    return out;
}

// ---------------------------------------------------------------------------

std::map<std::vector<long long>, WittVec>
unit_witt_combination(const std::vector<PerfPoly>& abar, const std::vector<PerfPoly>& xbar) {
    if (abar.empty() || abar.size() != xbar.size())
        throw BadWitness("coefficient and generator lists must match and be nonempty");
    const RingPtr& ring = abar[0].ring();
    for (const auto& a : abar)
        if (!same_ring(a.ring(), ring)) throw RingMismatch();
    for (const auto& x : xbar)
        if (!same_ring(x.ring(), ring)) throw RingMismatch();

    // witness: sum abar_i xbar_i = 1 in the digit ring
    PerfPoly s = PerfPoly::zero(ring);
    for (size_t i = 0; i < abar.size(); ++i) s = s + abar[i] * xbar[i];
    if (!s.is_one()) throw BadWitness("sum abar_i * xbar_i != 1 in the digit ring");

    const int m = (int)abar.size() - 1;
    const int n = ring->budget().n;
    const int p = ring->prime();

    // integer-exponent scratch ring: carries at level l live in degree
    // (m+1) p^l, so D must clear (m+1) p^(n-1)
    long long pn1 = 1;
    for (int i = 0; i + 1 < n; ++i) pn1 *= p;
    PrecisionBudget yprec;
    yprec.n = n;
    yprec.D = Rat((long long)(m + 1) * pn1 + 1);
    yprec.N = 0;
    yprec.DT = 1;
    yprec.L = 0;
    std::vector<Variable> yvars;
    for (int i = 0; i <= m; ++i) yvars.push_back(Variable{"Y" + std::to_string(i), false});
    RingPtr Y = RingPresentation::create(p, yvars, yprec);

    // u = [ (Y_0 + ... + Y_m)^(m+1) ]
    PerfPoly ysum = PerfPoly::zero(Y);
    for (int i = 0; i <= m; ++i) ysum = ysum + PerfPoly::variable(Y, "Y" + std::to_string(i));
    WittVec u = WittVec::teichmuller(ysum.pow((unsigned long long)(m + 1)), n);

    std::map<std::vector<long long>, WittVec> out;
    for (const auto& term : teich_decompose(u)) {
        long long pl = 1;
        for (int i = 0; i < term.level; ++i) pl *= p;
        // series exponent vector i = e / p^l with |i| = m+1
        std::vector<Rat> iexp((size_t)m + 1);
        std::vector<long long> j((size_t)m + 1);
        for (int k = 0; k <= m; ++k) {
            iexp[(size_t)k] = term.monomial[(size_t)k] / Rat(pl);
            j[(size_t)k] = iexp[(size_t)k].floor();
        }
        // w = prod abar_k^(i_k) * prod xbar_k^(i_k - j_k) in the digit ring
        PerfPoly w = PerfPoly::one(ring);
        for (int k = 0; k <= m; ++k) {
            w = w * abar[(size_t)k].rat_pow(iexp[(size_t)k]);
            Rat frac = iexp[(size_t)k] - Rat(j[(size_t)k]);
            if (!frac.is_zero()) w = w * xbar[(size_t)k].rat_pow(frac);
        }
        // contribution c * p^l [w] = c * V^l([w^(p^l)])
        std::vector<PerfPoly> d((size_t)n, PerfPoly::zero(ring));
        d[(size_t)term.level] = w.pow((unsigned long long)pl);
        WittVec contrib = w_scalar(term.coeff, WittVec(ring, std::move(d)));
        auto it = out.find(j);
        if (it == out.end())
            out.emplace(std::move(j), std::move(contrib));
        else
            it->second = w_add(it->second, contrib);
    }

    // final identity: sum_j c_j [xbar]^j = 1, verified with independent Witt
    // arithmetic before returning
    WittVec total = WittVec::zero(ring, n);
    for (const auto& [j, c] : out) {
        WittVec t = c;
        for (int k = 0; k <= m; ++k)
            t = w_mul(t, w_pow(WittVec::teichmuller(xbar[(size_t)k], n), (unsigned long long)j[(size_t)k]));
        total = w_add(total, t);
    }
    if (!total.is_one()) throw Error("unit_witt_combination: final identity failed");
    return out;
}

SmallNormDecomposition small_norm_decompose(const WittVec& f, const std::vector<WittVec>& b,
                                            const std::vector<PerfPoly>& xbar) {
    if (b.empty() || b.size() != xbar.size())
        throw BadWitness("coefficient and generator lists must match and be nonempty");
    const RingPtr& ring = f.ring();
    const int len = f.effective_length();

    // witness: sum b_i [xbar_i] = 1
    WittVec total = WittVec::zero(ring, len);
    for (size_t i = 0; i < b.size(); ++i)
        total = w_add(total, w_mul(b[i], WittVec::teichmuller(xbar[i], b[i].effective_length())));
    if (!total.is_one()) throw BadWitness("sum b_i [xbar_i] != 1");

    SmallNormDecomposition out;
    for (size_t i = 0; i < b.size(); ++i) {
        WittVec a = w_mul(f, b[i]);
        for (int l = 0; l < a.effective_length(); ++l) {
            for (const auto& [mono, c] : a.digit(l).terms())
                for (size_t vi = 0; vi < mono.size(); ++vi)
                    if (mono[vi] < Rat(0))
                        throw NormTooLarge("digit " + std::to_string(l) + " of f*b_" +
                                           std::to_string(i) + " is not integral");
        }
        out.coefficients.push_back(std::move(a));
    }

    // reconstruction must be exact
    WittVec rec = WittVec::zero(ring, len);
    for (size_t i = 0; i < b.size(); ++i)
        rec = w_add(rec, w_mul(out.coefficients[i],
                               WittVec::teichmuller(xbar[i], out.coefficients[i].effective_length())));
    if (!(rec == f)) throw Error("small_norm_decompose: reconstruction failed");
    return out;
}

Rat small_norm_threshold(const std::vector<WittVec>& b) {
    // weighted alpha >= (n-1) + max_i max(0, -gauss_alpha(b_i)) forces every
    // digit of f*b_i to stay in the nonnegative-exponent subring
    Rat worst(0);
    int n = 1;
    for (const auto& bi : b) {
        n = std::max(n, bi.effective_length());
        NormExponent g = gauss_alpha_witt(bi);
        if (!g.is_infinite() && -g.alpha() > worst) worst = -g.alpha();
    }
    return Rat(n - 1) + worst;
}

PerturbResult perturb_parameters(const std::vector<WittVec>& f, const WittVec& g, long long k,
                                 const PerfPoly& xbar0, const std::vector<WittVec>& witness) {
    if (f.empty()) throw BadWitness("need at least one parameter f_1");
    if (witness.size() != f.size() + 1)
        throw BadWitness("witness must list one coefficient per f_i plus one for g");
    const RingPtr& ring = g.ring();
    int len = g.effective_length();
    for (const auto& fi : f) len = std::min(len, fi.effective_length());

    WittVec tk = w_pow(WittVec::teichmuller(xbar0, len), (unsigned long long)k);
    WittVec rhs = WittVec::zero(ring, len);
    for (size_t i = 0; i < f.size(); ++i) rhs = w_add(rhs, w_mul(witness[i], f[i]));
    rhs = w_add(rhs, w_mul(witness.back(), g));
    if (!(w_sub(tk, rhs).is_zero())) throw BadWitness("[xbar0]^k != sum a_i f_i + a g");

    PerturbResult out;
    out.degenerate = tk.is_zero();
    out.adjusted.push_back(w_add(f[0], tk));
    for (size_t i = 1; i < f.size(); ++i) out.adjusted.push_back(f[i]);
    out.adjusted.push_back(tk);
    return out;
}

} // namespace ainf
