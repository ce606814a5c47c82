#include <doctest.h>

#include <random>

#include "ainf/fpring.hpp"

using namespace ainf;

namespace {

RingPtr free_ring_1var(int p, long long D, int N, long long L = 0, bool inverted = false) {
    PrecisionBudget prec;
    prec.n = 2;
    prec.D = Rat(D);
    prec.N = N;
    prec.DT = 1;
    prec.L = L;
    return RingPresentation::create(p, {Variable{"x", inverted}}, prec);
}

RingPtr relation_ring_uxvy(int N = 2, long long D = 4, int DT = 2) {
    PrecisionBudget prec;
    prec.n = 2;
    prec.D = Rat(D);
    prec.N = N;
    prec.DT = DT;
    prec.L = 0;
    // u, v are bounded coefficients (norm 1), not ideal-of-definition
    // generators: weight 0, capped by DT
    std::vector<Variable> vars{{"x", false, false},
                               {"y", false, false},
                               {"u", false, true},
                               {"v", false, true}};
    RingPtr free_ring = RingPresentation::create(2, vars, prec);
    PerfPoly rel = parse_poly(free_ring, "u*x + v*y - 1");
    return RingPresentation::create(2, vars, prec, {rel});
}

// random element over basis monomials; degree and aux exponents can be
// capped so that small products stay inside the faithful interior of the
// truncation window
PerfPoly random_poly(const RingPtr& ring, std::mt19937_64& rng, int maxterms = 4,
                     Rat auxcap = Rat(-1), Rat degcap = Rat(-1)) {
    std::vector<PerfMonomial> pool;
    for (const auto& m : ring->monomial_basis()) {
        bool ok = true;
        if (!(auxcap < Rat(0)))
            for (size_t i = 0; i < m.size(); ++i)
                if (ring->variables()[i].aux && m[i] > auxcap) ok = false;
        if (!(degcap < Rat(0)) && m.positive_degree(ring->variables()) > degcap) ok = false;
        if (ok) pool.push_back(m);
    }
    std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> coeff(1, ring->prime() - 1);
    std::uniform_int_distribution<int> cnt(0, maxterms);
    PerfPoly acc = PerfPoly::zero(ring);
    int k = cnt(rng);
    for (int i = 0; i < k; ++i)
        acc = acc + PerfPoly::monomial(ring, pool[pick(rng)], coeff(rng));
    return acc;
}

} // namespace

TEST_CASE("char-2 addition cancels") {
    auto R = free_ring_1var(2, 3, 2);
    PerfPoly x = PerfPoly::variable(R, "x");
    CHECK((x + x).is_zero());
}

TEST_CASE("fractional exponents add exactly") {
    auto R = free_ring_1var(2, 3, 2);
    PerfPoly xh = PerfPoly::variable(R, "x", Rat(1, 2));
    CHECK(xh * xh == PerfPoly::variable(R, "x"));
}

TEST_CASE("truncation kills degree >= D") {
    auto R = free_ring_1var(2, 3, 2);
    PerfPoly x3 = PerfPoly::variable(R, "x", Rat(3));
    CHECK(x3.is_zero());
    // x^(5/2) * x^(1/2) = x^3 -> 0
    PerfPoly a = PerfPoly::variable(R, "x", Rat(5, 2));
    PerfPoly b = PerfPoly::variable(R, "x", Rat(1, 2));
    CHECK((a * b).is_zero());
}

TEST_CASE("Laurent inversion and floor") {
    auto R = free_ring_1var(2, 3, 2, /*L=*/2, /*inverted=*/true);
    PerfPoly x = PerfPoly::variable(R, "x");
    PerfPoly xi = PerfPoly::variable(R, "x", Rat(-1));
    CHECK((x * xi).is_one());
    CHECK_THROWS_AS(xi * xi * xi, TruncationOverflow);
}

TEST_CASE("presented ring rewrites u*x + v*y to 1") {
    auto R = relation_ring_uxvy();
    PerfPoly lhs = parse_poly(R, "u*x + v*y");
    CHECK(lhs.is_one());
    // normal form is idempotent by construction; pp ops keep it
    PerfPoly z = lhs - PerfPoly::one(R);
    CHECK(z.is_zero());
}

TEST_CASE("frobenius and inverse") {
    auto R = free_ring_1var(2, 3, 2);
    PerfPoly xh = PerfPoly::variable(R, "x", Rat(1, 2));
    PerfPoly x = PerfPoly::variable(R, "x");
    PerfPoly y = xh.frobenius();
    CHECK(y == x);
    CHECK(y.frobenius_inverse() == xh);
    // freshman's dream
    auto R2 = RingPresentation::create(2, {Variable{"x", false}, Variable{"y", false}}, R->budget());
    PerfPoly s = parse_poly(R2, "x + y");
    CHECK(s.frobenius() == parse_poly(R2, "x^2 + y^2"));
    // budget boundary: x^(1/4) with N=2 has no further root
    PerfPoly deep = PerfPoly::variable(R, "x", Rat(1, 4));
    CHECK_THROWS_AS(deep.frobenius_inverse(), PrecisionExhausted);
}

TEST_CASE("gauss alpha") {
    auto R = free_ring_1var(2, 3, 2);
    PerfPoly a = parse_poly(R, "x + x^(1/2)");
    CHECK(a.gauss_alpha().alpha() == Rat(1, 2));
    CHECK(PerfPoly::one(R).gauss_alpha().alpha() == Rat(0));
    CHECK(PerfPoly::zero(R).gauss_alpha().is_infinite());
}

TEST_CASE("gauss alpha multiplicative on the free ring, ultrametric") {
    auto R = free_ring_1var(3, 4, 1);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        PerfPoly a = random_poly(R, rng), b = random_poly(R, rng);
        PerfPoly ab = a * b;
        NormExponent na = a.gauss_alpha(), nb = b.gauss_alpha(), nab = ab.gauss_alpha();
        if (!na.is_infinite() && !nb.is_infinite() && !nab.is_infinite()) {
            // multiplicative as long as nothing truncated away
            CHECK(nab.alpha() >= na.alpha() + nb.alpha());
            if (na.alpha() + nb.alpha() < Rat(4)) CHECK(nab.alpha() == na.alpha() + nb.alpha());
        }
        NormExponent ns = (a + b).gauss_alpha();
        NormExponent mn = NormExponent::min_alpha(na, nb);
        if (!ns.is_infinite()) {
            REQUIRE(!mn.is_infinite());
            CHECK(ns.alpha() >= mn.alpha());
        }
    }
}

TEST_CASE("ring axioms on random triples") {
    // sampled in the faithful interior: triple products stay below both the
    // D cap and the auxiliary window, where the reduced model is exactly a
    // ring (the edge is where analytic presentations have no exact model)
    auto Rq = relation_ring_uxvy(1, 3, /*DT=*/4);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        PerfPoly a = random_poly(Rq, rng, 4, Rat(1, 2), Rat(1, 2)),
                 b = random_poly(Rq, rng, 4, Rat(1, 2), Rat(1, 2)),
                 c = random_poly(Rq, rng, 4, Rat(1, 2), Rat(1, 2));
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * PerfPoly::one(Rq) == a);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("units and inversion") {
    auto R = free_ring_1var(2, 3, 2);
    PerfPoly x = PerfPoly::variable(R, "x");
    PerfPoly a = PerfPoly::one(R) + x;
    CHECK(is_unit(a));
    PerfPoly y = invert(a);
    CHECK((a * y).is_one());
    // geometric series shape: 1 + x + x^2 at D = 3
    CHECK(y == parse_poly(R, "1 + x + x^2"));
    CHECK_FALSE(is_unit(x));
    CHECK_THROWS_AS(invert(x), NotAUnit);

    auto Rq = relation_ring_uxvy();
    PerfPoly s = parse_poly(Rq, "u*x + v*y");
    CHECK(is_unit(s));
    CHECK(invert(s).is_one());
}

TEST_CASE("ideal membership with certificates") {
    auto R = free_ring_1var(2, 3, 2);
    PerfPoly x = PerfPoly::variable(R, "x");
    auto m1 = ideal_membership(x, {x});
    CHECK(m1.member);
    // certificate re-verifies
    PerfPoly acc = PerfPoly::zero(R);
    for (size_t i = 0; i < m1.generators.size(); ++i)
        acc = acc + m1.coefficients[i] * m1.generators[i];
    CHECK(acc == x);

    auto R2 = RingPresentation::create(2, {Variable{"x", false}, Variable{"y", false}}, R->budget());
    auto m2 = ideal_membership(PerfPoly::one(R2), {PerfPoly::variable(R2, "x"), PerfPoly::variable(R2, "y")});
    CHECK_FALSE(m2.member);

    // perfection saturation: x^(1/2) in (x) at N >= 1
    auto m3 = ideal_membership(PerfPoly::variable(R, "x", Rat(1, 2)), {x});
    CHECK(m3.member);
    acc = PerfPoly::zero(R);
    for (size_t i = 0; i < m3.generators.size(); ++i)
        acc = acc + m3.coefficients[i] * m3.generators[i];
    CHECK(acc == PerfPoly::variable(R, "x", Rat(1, 2)));
}

TEST_CASE("normal form idempotent via reduce") {
    auto Rq = relation_ring_uxvy(1, 3);
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        PerfPoly a = random_poly(Rq, rng);
        PerfPoly again(Rq, a.terms()); // re-runs construction + reduction
        CHECK(again == a);
    }
}

TEST_CASE("parser grammar") {
    auto R = free_ring_1var(2, 4, 2);
    CHECK(parse_poly(R, "x^(3/4)") == PerfPoly::variable(R, "x", Rat(3, 4)));
    CHECK(parse_poly(R, "x^2 - x") == PerfPoly::variable(R, "x", Rat(2)) - PerfPoly::variable(R, "x"));
    auto R3 = free_ring_1var(3, 4, 2);
    CHECK(parse_poly(R3, "2*x^(2/9)") == PerfPoly::variable(R3, "x", Rat(2, 9)).scaled(2));
    CHECK(parse_poly(R3, "1 + 1 + 1").is_zero());
    CHECK_THROWS_AS(parse_poly(R3, "q + 1"), Error);
}
