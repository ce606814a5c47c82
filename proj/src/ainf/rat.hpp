#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>

#include "errors.hpp"

namespace ainf {

// Exact rational on 64-bit words. Exponents of monomials, norm exponents and
// p-power grids all live here; magnitudes stay tiny (numerators bounded by a
// few thousand, denominators by p^N), so int64 with __int128 intermediates is
// exact. Always normalized: den > 0, gcd(num, den) = 1.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    Rat operator-() const { return Rat(-num_, den_, already_normal{}); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return from128(n, d);
    }
    friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw Error("rational division by zero");
        return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
    Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
    Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        __int128 l = (__int128)a.num_ * b.den_;
        __int128 r = (__int128)b.num_ * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    // Largest integer <= value.
    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    long long ceil() const { return -((-*this).floor()); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    struct already_normal {};
    Rat(long long n, long long d, already_normal) : num_(n), den_(d) {}

    static Rat from128(__int128 n, __int128 d) {
        if (d == 0) throw Error("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw Error("rational overflow");
        return Rat((long long)n, (long long)d, already_normal{});
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) { __int128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
    void normalize() {
        if (den_ == 0) throw Error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_;
    long long den_;
};

// Log-exact norm value theta^alpha for a fixed weight theta in (0,1).
// alpha = +infinity encodes the zero element. Norm comparison is reversed
// comparison of alphas; that translation is left to call sites, which work
// in alpha space throughout.
class NormExponent {
public:
    NormExponent() : inf_(true) {}                       // |0| = theta^inf = 0
    explicit NormExponent(const Rat& a) : inf_(false), alpha_(a) {}

    static NormExponent infinity() { return NormExponent(); }

    bool is_infinite() const { return inf_; }
    const Rat& alpha() const {
        if (inf_) throw Error("alpha of the zero element is +infinity");
        return alpha_;
    }

    friend bool operator==(const NormExponent& a, const NormExponent& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.alpha_ == b.alpha_;
    }

    // min of alphas = max of norm values.
    static NormExponent min_alpha(const NormExponent& a, const NormExponent& b) {
        if (a.inf_) return b;
        if (b.inf_) return a;
        return a.alpha_ <= b.alpha_ ? a : b;
    }

    NormExponent shifted(const Rat& d) const {
        if (inf_) return *this;
        return NormExponent(alpha_ + d);
    }

    std::string str() const { return inf_ ? std::string("inf") : alpha_.str(); }

private:
    bool inf_;
    Rat alpha_;
};

} // namespace ainf
