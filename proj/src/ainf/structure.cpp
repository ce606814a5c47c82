#include "structure.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <random>

#include "errors.hpp"

namespace ainf {

namespace {

BigInt pow_big(long long b, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// w_k applied to a list of polynomials: sum_{i<=k} p^i z_i^(p^(k-i))
IntPoly ghost(int p, int k, const std::vector<IntPoly>& z) {
    IntPoly acc(z[0].nvars());
    for (int i = 0; i <= k; ++i) {
        uint64_t e = 1;
        for (int t = 0; t < k - i; ++t) e *= (uint64_t)p;
        acc = acc + pow_big(p, i) * z[i].pow(e);
    }
    return acc;
}

} // namespace

StructurePolyCache::StructurePolyCache(int p, int n) : p_(p), n_(n) {
    long long size = 1;
    for (int i = 0; i < n; ++i) {
        size *= p;
        if (size > 128) throw ResourceBound("structure cache: p^n beyond the symbolic cap");
    }
    derive();
    certify();
    extract_carries();
}

void StructurePolyCache::derive() {
    const size_t nv = 2 * (size_t)n_;
    std::vector<IntPoly> X(n_), Y(n_);
    for (int i = 0; i < n_; ++i) {
        X[i] = IntPoly::variable(nv, i);
        Y[i] = IntPoly::variable(nv, n_ + i);
    }

    // S_k, P_k, N_k from the ghost recursion; exact division certifies
    // integrality digit by digit
    for (int k = 0; k < n_; ++k) {
        IntPoly target_add = ghost(p_, k, X) + ghost(p_, k, Y);
        IntPoly target_mul = ghost(p_, k, X) * ghost(p_, k, Y);
        IntPoly target_neg = -ghost(p_, k, X);
        IntPoly acc_add(nv), acc_mul(nv), acc_neg(nv);
        for (int i = 0; i < k; ++i) {
            uint64_t e = 1;
            for (int t = 0; t < k - i; ++t) e *= (uint64_t)p_;
            acc_add = acc_add + pow_big(p_, i) * add_[i].pow(e);
            acc_mul = acc_mul + pow_big(p_, i) * mul_[i].pow(e);
            acc_neg = acc_neg + pow_big(p_, i) * neg_[i].pow(e);
        }
        add_.push_back((target_add - acc_add).exact_divide(pow_big(p_, k)));
        mul_.push_back((target_mul - acc_mul).exact_divide(pow_big(p_, k)));
        neg_.push_back((target_neg - acc_neg).exact_divide(pow_big(p_, k)));
    }
}

void StructurePolyCache::certify() const {
    const size_t nv = 2 * (size_t)n_;
    std::vector<IntPoly> X(n_), Y(n_);
    for (int i = 0; i < n_; ++i) {
        X[i] = IntPoly::variable(nv, i);
        Y[i] = IntPoly::variable(nv, n_ + i);
    }
    for (int k = 0; k < n_; ++k) {
        if (!(ghost(p_, k, add_) == ghost(p_, k, X) + ghost(p_, k, Y)))
            throw Error("ghost identity violated for addition digit " + std::to_string(k));
        if (!(ghost(p_, k, mul_) == ghost(p_, k, X) * ghost(p_, k, Y)))
            throw Error("ghost identity violated for multiplication digit " + std::to_string(k));
        if (!(ghost(p_, k, neg_) == -ghost(p_, k, X)))
            throw Error("ghost identity violated for negation digit " + std::to_string(k));
    }

    // numeric spot checks on random integer points, an arithmetic path
    // independent of the symbolic expansion
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ ((uint64_t)p_ << 8) ^ (uint64_t)n_);
    std::uniform_int_distribution<long long> pick(-9, 9);
    auto eval = [&](const IntPoly& f, const std::vector<BigInt>& at) {
        BigInt acc = 0;
        for (const auto& [m, c] : f.terms()) {
            BigInt t = c;
            for (size_t i = 0; i < m.size(); ++i)
                for (uint32_t e = 0; e < m[i]; ++e) t *= at[i];
            acc += t;
        }
        return acc;
    };
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<BigInt> at(nv);
        for (auto& v : at) v = pick(rng);
        for (int k = 0; k < n_; ++k) {
            BigInt gx = 0, gy = 0, gs = 0, gp = 0, gn = 0;
            for (int i = 0; i <= k; ++i) {
                BigInt xe = 1, ye = 1;
                uint64_t e = 1;
                for (int t = 0; t < k - i; ++t) e *= (uint64_t)p_;
                for (uint64_t t = 0; t < e; ++t) {
                    xe *= at[i];
                    ye *= at[n_ + i];
                }
                gx += pow_big(p_, i) * xe;
                gy += pow_big(p_, i) * ye;
                BigInt se = 1, pe = 1, ne = 1;
                BigInt sv = eval(add_[i], at), pv = eval(mul_[i], at), nv2 = eval(neg_[i], at);
                for (uint64_t t = 0; t < e; ++t) {
                    se *= sv;
                    pe *= pv;
                    ne *= nv2;
                }
                gs += pow_big(p_, i) * se;
                gp += pow_big(p_, i) * pe;
                gn += pow_big(p_, i) * ne;
            }
            if (gs != gx + gy || gp != gx * gy || gn != -gx)
                throw Error("ghost identity numeric spot check failed at digit " + std::to_string(k));
        }
    }
}

void StructurePolyCache::extract_carries() {
    carry_.assign(n_, {});
    // specialize S_k at X = (x,0,..), Y = (y,0,..), reduce mod p, divide
    // exponents by p^k
    for (int k = 0; k < n_; ++k) {
        long long pk = 1;
        for (int t = 0; t < k; ++t) pk *= p_;
        std::vector<CarryTerm> terms;
        for (const auto& [m, c] : add_[k].terms()) {
            bool upper = false;
            for (int i = 1; i < n_; ++i)
                if (m[i] != 0 || m[n_ + i] != 0) upper = true;
            if (upper) continue;
            long long cm = (long long)(c % p_);
            if (cm < 0) cm += p_;
            if (cm == 0) continue;
            CarryTerm t;
            t.ex = Rat((long long)m[0], pk);
            t.ey = Rat((long long)m[n_], pk);
            t.coeff = (int)cm;
            if (!(t.ex + t.ey == Rat(1)))
                throw Error("carry polynomial is not weighted degree 1");
            terms.push_back(t);
        }
        carry_[k] = std::move(terms);
    }
}

const StructurePolyCache& StructurePolyCache::get(int p, int n) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<StructurePolyCache>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::unique_ptr<StructurePolyCache>(new StructurePolyCache(p, n))).first;
    return *it->second;
}

} // namespace ainf
