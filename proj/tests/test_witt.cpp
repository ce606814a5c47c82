#include <doctest.h>

#include <random>

#include "ainf/witt.hpp"

using namespace ainf;

namespace {

RingPtr digit_ring(int p, int n, long long D, int N, long long L = 0, bool inverted = false) {
    PrecisionBudget prec;
    prec.n = n;
    prec.D = Rat(D);
    prec.N = N;
    prec.DT = 1;
    prec.L = L;
    return RingPresentation::create(p, {Variable{"x", inverted}}, prec);
}

PerfPoly random_poly(const RingPtr& ring, std::mt19937_64& rng, int maxterms = 3,
                     Rat degcap = Rat(-1)) {
    std::vector<PerfMonomial> pool;
    for (const auto& m : ring->monomial_basis())
        if (degcap < Rat(0) || !(m.positive_degree(ring->variables()) > degcap)) pool.push_back(m);
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> coeff(1, ring->prime() - 1);
    std::uniform_int_distribution<int> cnt(0, maxterms);
    PerfPoly acc = PerfPoly::zero(ring);
    int k = cnt(rng);
    for (int i = 0; i < k; ++i)
        acc = acc + PerfPoly::monomial(ring, pool[pick(rng)], coeff(rng));
    return acc;
}

WittVec random_witt(const RingPtr& ring, std::mt19937_64& rng, int maxterms = 3,
                    Rat degcap = Rat(-1)) {
    std::vector<PerfPoly> d;
    for (int l = 0; l < ring->budget().n; ++l)
        d.push_back(random_poly(ring, rng, maxterms, degcap));
    return WittVec(ring, std::move(d));
}

} // namespace

TEST_CASE("[x] + [x] = p[x] over F_2") {
    auto R = digit_ring(2, 2, 4, 2);
    PerfPoly x = PerfPoly::variable(R, "x");
    WittVec tx = WittVec::teichmuller(x);
    WittVec s = w_add(tx, tx);
    // ghost oracle over integer lifts gives (2x, -x^2); mod 2 that is (0, x^2)
    CHECK(s.digit(0).is_zero());
    CHECK(s.digit(1) == x * x);
    CHECK(s == p_mul(tx));
}

TEST_CASE("Teichmuller is multiplicative") {
    auto R = digit_ring(2, 3, 4, 2);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        PerfPoly a = random_poly(R, rng), b = random_poly(R, rng);
        CHECK(w_mul(WittVec::teichmuller(a), WittVec::teichmuller(b)) == WittVec::teichmuller(a * b));
    }
}

TEST_CASE("negation is exact") {
    auto R = digit_ring(2, 3, 4, 2);
    PerfPoly x = PerfPoly::variable(R, "x");
    WittVec tx = WittVec::teichmuller(x);
    CHECK(w_add(w_neg(tx), tx).is_zero());
    CHECK(w_neg(tx).digit(0) == x);
}

TEST_CASE("V and F identities") {
    auto R = digit_ring(2, 3, 4, 2);
    PerfPoly x = PerfPoly::variable(R, "x");
    WittVec tx = WittVec::teichmuller(x);
    WittVec v = verschiebung(tx);
    CHECK(v.digit(0).is_zero());
    CHECK(v.digit(1) == x);
    CHECK(witt_frobenius(v) == p_mul(tx));
    CHECK(witt_frobenius(tx) == WittVec::teichmuller(x * x));
    CHECK(verschiebung(WittVec::zero(R)).is_zero());
    // p*x = V(F(x)) on random samples
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        WittVec w = random_witt(R, rng);
        CHECK(w_scalar(2, w) == p_mul(w));
    }
}

TEST_CASE("W_n ring axioms on random triples") {
    auto R = digit_ring(2, 3, 4, 3);
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        WittVec a = random_witt(R, rng), b = random_witt(R, rng), c = random_witt(R, rng);
        CHECK(w_add(w_add(a, b), c) == w_add(a, w_add(b, c)));
        CHECK(w_mul(w_mul(a, b), c) == w_mul(a, w_mul(b, c)));
        CHECK(w_mul(a, w_add(b, c)) == w_add(w_mul(a, b), w_mul(a, c)));
        CHECK(w_add(a, b) == w_add(b, a));
        CHECK(w_mul(a, b) == w_mul(b, a));
        CHECK(w_mul(a, WittVec::one(R)) == a);
        CHECK(w_add(a, w_neg(a)).is_zero());
    }
}

TEST_CASE("delta of a Teichmuller lift vanishes; delta(p) = 1 - p^(p-1)") {
    auto R = digit_ring(2, 3, 4, 2);
    PerfPoly x = PerfPoly::variable(R, "x");
    CHECK(delta(WittVec::teichmuller(x)).is_zero());
    WittVec p2 = WittVec::p_times_one(R);
    WittVec d = delta(p2);
    // 1 - 2 = -1 at length 2
    CHECK(d == w_sub(WittVec::one(R, 2), WittVec::from_int(R, 2, 2)));
    CHECK(d.digit(0).is_one());
    // phi(x) = x^p + p delta(x) cross-check at length n-1
    auto R3 = digit_ring(3, 3, 3, 2);
    WittVec p3 = WittVec::p_times_one(R3);
    WittVec d3 = delta(p3);
    CHECK(d3 == w_sub(WittVec::one(R3, 2), WittVec::from_int(R3, 9, 2)));
}

TEST_CASE("delta axioms on random pairs") {
    // D = 16 with degree-1 two-term digits keeps the whole computation clear
    // of the Frobenius truncation edge, so the axioms hold digit-exactly
    auto R = digit_ring(2, 3, 16, 2);
    const int p = 2;
    std::mt19937_64 rng(23);
    CHECK(delta(WittVec::one(R)).is_zero());
    for (int i = 0; i < 100; ++i) {
        WittVec x = random_witt(R, rng, 2, Rat(1)), y = random_witt(R, rng, 2, Rat(1));
        int len = x.effective_length() - 1;
        // phi(x) = x^p + p delta(x)
        WittVec lhs = witt_frobenius(x);
        WittVec rhs = w_add(w_pow(x, p), p_mul(delta(x)));
        for (int l = 0; l < len; ++l) CHECK(lhs.digit(l) == rhs.digit(l));
        // delta(xy) = x^p delta(y) + y^p delta(x) + p delta(x) delta(y)
        WittVec dxy = delta(w_mul(x, y));
        WittVec expect = w_add(w_add(w_mul(w_pow(x, p), delta(y)), w_mul(w_pow(y, p), delta(x))),
                               p_mul(w_mul(delta(x), delta(y))));
        CHECK(dxy == expect);
        // delta(x+y) = delta(x) + delta(y) - sum_{i=1}^{p-1} (1/p) binom(p,i) x^i y^(p-i)
        WittVec dsum = delta(w_add(x, y));
        WittVec cross = WittVec::zero(R, len);
        for (int i2 = 1; i2 <= p - 1; ++i2) {
            long long binom_over_p = 1; // binom(2,1)/2 = 1
            WittVec t = w_mul(w_pow(x, i2), w_pow(y, p - i2));
            WittVec cut(t.ring(), std::vector<PerfPoly>(t.digits().begin(), t.digits().begin() + len));
            cross = w_add(cross, w_scalar(binom_over_p, cut));
        }
        CHECK(dsum == w_sub(w_add(delta(x), delta(y)), cross));
    }

    // the Frobenius-lift identity needs no sampling envelope: exact for
    // arbitrary digits even at tight caps
    auto Rt = digit_ring(2, 3, 4, 3);
    for (int i = 0; i < 100; ++i) {
        WittVec x = random_witt(Rt, rng);
        WittVec lhs = witt_frobenius(x);
        WittVec rhs = w_add(w_pow(x, p), p_mul(delta(x)));
        for (int l = 0; l + 1 < x.effective_length(); ++l) CHECK(lhs.digit(l) == rhs.digit(l));
    }
}

TEST_CASE("distinguished elements") {
    auto R = digit_ring(2, 3, 4, 2);
    PerfPoly x = PerfPoly::variable(R, "x");
    CHECK(is_distinguished(WittVec::p_times_one(R)).certified);
    WittVec z = w_sub(WittVec::teichmuller(x), WittVec::p_times_one(R));
    CHECK(is_distinguished(z).certified);
    CHECK_FALSE(is_distinguished(WittVec::teichmuller(x)).certified);
}

TEST_CASE("primitive elements") {
    auto R = digit_ring(2, 2, 4, 2);
    PerfPoly x = PerfPoly::variable(R, "x");
    WittVec z = w_sub(WittVec::teichmuller(x), WittVec::p_times_one(R));
    // digits (x, 1) at p = 2: the subtraction carries vanish
    CHECK(z.digit(0) == x);
    CHECK(z.digit(1).is_one());
    auto rep = is_primitive(z);
    CHECK(rep.certified);
    CHECK((rep.digit1_inverse * z.digit(1)).is_one());

    CHECK_FALSE(is_primitive(p_mul(WittVec::teichmuller(x))).certified);
    WittVec bad = w_sub(WittVec::one(R), WittVec::p_times_one(R));
    CHECK_FALSE(is_primitive(bad).certified);
}

TEST_CASE("Gauss and weighted norms") {
    auto R = digit_ring(2, 2, 4, 2);
    PerfPoly x = PerfPoly::variable(R, "x");
    PerfPoly xh = PerfPoly::variable(R, "x", Rat(1, 2));
    WittVec v = w_add(WittVec::teichmuller(x), p_mul(WittVec::teichmuller(xh)));
    CHECK(gauss_alpha_witt(v).alpha() == Rat(1, 2));
    CHECK(weighted_gauss_alpha(v).alpha() == Rat(1));
    CHECK(weighted_gauss_alpha(WittVec::p_times_one(R)).alpha() == Rat(1));
    CHECK(gauss_alpha_witt(WittVec::zero(R)).is_infinite());
}

TEST_CASE("spectral estimate stabilizes on power-multiplicative elements") {
    auto R = digit_ring(2, 3, 8, 3);
    PerfPoly a = parse_poly(R, "x + x^2");
    WittVec t = WittVec::teichmuller(a);
    for (int k = 0; k <= 2; ++k)
        CHECK(spectral_alpha_estimate(t, k).alpha() == a.gauss_alpha().alpha());
    CHECK(spectral_alpha_estimate(WittVec::p_times_one(R), 1).alpha() == Rat(1));
    // weighted power-multiplicativity over free digit rings
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        WittVec w = random_witt(R, rng, 2);
        NormExponent a1 = weighted_gauss_alpha(w);
        NormExponent a2 = weighted_gauss_alpha(w_pow(w, 2));
        if (a1.is_infinite())
            CHECK(a2.is_infinite());
        else if (a1.alpha() * Rat(2) < Rat(3)) // stays clear of the truncation
            CHECK(a2.alpha() == a1.alpha() * Rat(2));
    }
}

TEST_CASE("teich_decompose reconstructs") {
    auto R = digit_ring(2, 3, 4, 3);
    std::mt19937_64 rng(41);
    for (int i = 0; i < 50; ++i) {
        WittVec w = random_witt(R, rng);
        auto terms = teich_decompose(w);
        WittVec acc = WittVec::zero(R);
        for (const auto& t : terms) {
            std::vector<PerfPoly> d((size_t)w.effective_length(), PerfPoly::zero(R));
            d[(size_t)t.level] = PerfPoly::monomial(R, t.monomial);
            acc = w_add(acc, w_scalar(t.coeff, WittVec(R, std::move(d))));
        }
        CHECK(acc == w);
    }
}

TEST_CASE("witt_invert on units") {
    auto R = digit_ring(2, 3, 4, 2);
    PerfPoly x = PerfPoly::variable(R, "x");
    WittVec u = w_add(WittVec::one(R), p_mul(WittVec::teichmuller(x)));
    WittVec ui = witt_invert(u);
    CHECK(w_mul(u, ui).is_one());
    CHECK_THROWS_AS(witt_invert(WittVec::teichmuller(x)), NotAUnit);
}
