#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace ainf {

using BigInt = boost::multiprecision::cpp_int;

// Sparse multivariate polynomial over Z with integer exponents. Only used to
// derive and certify Witt structure polynomials, where coefficients outgrow
// 64 bits; everything downstream works mod p.
class IntPoly {
public:
    // exponent vector -> coefficient, zero coefficients never stored
    using Monomial = std::vector<uint32_t>;
    using TermMap = std::map<Monomial, BigInt>;

    IntPoly() = default;
    explicit IntPoly(size_t nvars) : nvars_(nvars) {}

    static IntPoly constant(size_t nvars, const BigInt& c) {
        IntPoly r(nvars);
        if (c != 0) r.terms_[Monomial(nvars, 0)] = c;
        return r;
    }
    static IntPoly variable(size_t nvars, size_t idx, uint32_t e = 1) {
        IntPoly r(nvars);
        Monomial m(nvars, 0);
        m[idx] = e;
        r.terms_[m] = 1;
        return r;
    }

    size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const Monomial& m, const BigInt& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        IntPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        IntPoly r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    IntPoly operator-() const {
        IntPoly r(nvars_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        IntPoly r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma);
                for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }
    friend IntPoly operator*(const BigInt& c, const IntPoly& a) {
        IntPoly r(a.nvars_);
        if (c == 0) return r;
        for (const auto& [m, co] : a.terms_) r.terms_[m] = c * co;
        return r;
    }

    IntPoly pow(uint64_t e) const {
        IntPoly acc = constant(nvars_, 1);
        IntPoly base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = e > 1 ? base * base : base;
            e >>= 1;
        }
        return acc;
    }

    // Exact division by the integer d; throws if any coefficient is not
    // divisible. The successful division is the integrality certificate for
    // the structure polynomials.
    IntPoly exact_divide(const BigInt& d) const {
        IntPoly r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (c % d != 0) throw Error("exact_divide: coefficient not divisible");
            r.terms_[m] = c / d;
        }
        return r;
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) {
        return a.terms_ == b.terms_;
    }

    std::string str(const std::vector<std::string>& names) const;

private:
    size_t nvars_ = 0;
    TermMap terms_;
};

} // namespace ainf
