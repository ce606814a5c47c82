#pragma once

#include "abgroup.hpp"
#include "witt.hpp"

namespace ainf {

// Label grading W_n(R) as a finite abelian p-group: (digit level ascending,
// monomial descending). Subtracting elements with equal leading label
// cancels it and moves support to strictly larger labels only: within one
// level digit subtraction is F_p-linear, and carries flow to higher levels.
struct WittLabel {
    int level = 0;
    PerfMonomial mono;

    friend bool operator<(const WittLabel& a, const WittLabel& b) {
        if (a.level != b.level) return a.level < b.level;
        return b.mono < a.mono; // larger monomial = smaller label
    }
    friend bool operator==(const WittLabel& a, const WittLabel& b) {
        return a.level == b.level && a.mono == b.mono;
    }
};

template <>
struct GroupTraits<WittVec> {
    using Label = WittLabel;

    static int prime(const WittVec& x) { return x.ring()->prime(); }
    static bool is_zero(const WittVec& x) { return x.is_zero(); }
    static std::pair<Label, int> leading(const WittVec& x) {
        for (int l = 0; l < x.effective_length(); ++l) {
            if (x.digit(l).is_zero()) continue;
            auto it = x.digit(l).terms().rbegin();
            return {Label{l, it->first}, it->second};
        }
        throw Error("leading label of zero");
    }
    static std::vector<std::pair<Label, int>> support(const WittVec& x) {
        std::vector<std::pair<Label, int>> out;
        for (int l = 0; l < x.effective_length(); ++l)
            for (auto it = x.digit(l).terms().rbegin(); it != x.digit(l).terms().rend(); ++it)
                out.push_back({Label{l, it->first}, it->second});
        return out;
    }
    static WittVec sub_scaled(const WittVec& a, int c, const WittVec& b) {
        return w_sub(a, w_scalar(c, b));
    }
    static WittVec scale(int c, const WittVec& x) { return w_scalar(c, x); }
    static WittVec p_scale(const WittVec& x) { return p_mul(x); }
};

// Finite-dimensional linearization of W_n(R): ordered generator labels
// g_(l,nu) = V^l([nu]) over the quotient monomial basis, digit coordinates,
// and multiplication-by-generator tables cross-checked against structured
// arithmetic.
class WittModule {
public:
    WittModule(RingPtr ring, int len) : ring_(std::move(ring)), len_(len) {
        for (int l = 0; l < len_; ++l)
            for (const auto& nu : ring_->monomial_basis()) labels_.push_back({l, nu});
    }

    const RingPtr& ring() const { return ring_; }
    int length() const { return len_; }
    size_t dimension() const { return labels_.size(); } // log_p |W_n(R)|
    const std::vector<WittLabel>& labels() const { return labels_; }

    WittVec generator(const WittLabel& lab) const {
        std::vector<PerfPoly> d((size_t)len_, PerfPoly::zero(ring_));
        d[(size_t)lab.level] = PerfPoly::monomial(ring_, lab.mono);
        return WittVec(ring_, std::move(d));
    }

    // digit coordinates: the unique F_p expansion x = sum c_(l,nu) g_(l,nu)
    std::map<WittLabel, int> coordinates(const WittVec& x) const {
        std::map<WittLabel, int> out;
        for (const auto& t : teich_decompose(x)) out[{t.level, t.monomial}] = t.coeff;
        return out;
    }
    WittVec from_coordinates(const std::map<WittLabel, int>& coords) const {
        WittVec acc = WittVec::zero(ring_, len_);
        for (const auto& [lab, c] : coords) acc = w_add(acc, w_scalar(c, generator(lab)));
        return acc;
    }

    // column table of multiplication by a fixed element, one structured
    // product per generator
    std::vector<WittVec> multiplication_table(const WittVec& a) const {
        std::vector<WittVec> cols;
        cols.reserve(labels_.size());
        for (const auto& lab : labels_) cols.push_back(w_mul(a, generator(lab)));
        return cols;
    }

    // cross-check: coordinate-bilinear products against structured w_mul
    void crosscheck_multiplication(std::mt19937_64& rng, int samples = 50) const;

private:
    RingPtr ring_;
    int len_;
    std::vector<WittLabel> labels_;
};

// Witt-level ideal membership: 1 in (x_0, ..., x_k) within W_n(R) at the
// working truncation, decided by the group echelon of faithful multiples
bool witt_unit_ideal(const std::vector<WittVec>& gens);

} // namespace ainf
