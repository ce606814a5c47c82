#pragma once

#include <memory>
#include <random>
#include <string>

#include "wittmod.hpp"

namespace ainf {

enum class Side { T, Tinv, Both };

// T-power bands with Witt coefficients; Tinv-side powers are stored as
// negative bands so one ascending label order serves every side
using BandVec = std::map<long long, WittVec>;

class LocRing;
using LocRingPtr = std::shared_ptr<const LocRing>;

// Element of a localization ring in canonical form (reduced against the
// relation span). Immutable in practice.
struct LocElem {
    const LocRing* ring = nullptr;
    BandVec bands;

    bool is_zero() const { return bands.empty(); }
};

// C<T>/(gT-f), C<T^-1>/(g-T^-1 f) or C<T,T^-1>/(gT-f) at the finite stage:
// band window over the linearized Witt module, quotient by the span of
// faithful relation multiples, canonical representatives by group echelon.
class LocRing : public std::enable_shared_from_this<LocRing> {
public:
    static LocRingPtr create(RingPtr base, int len, const WittVec& f, const WittVec& g, Side side,
                             long long window);

    const RingPtr& base_ring() const { return base_; }
    int length() const { return len_; }
    const WittVec& f() const { return f_; }
    const WittVec& g() const { return g_; }
    Side side() const { return side_; }
    long long band_lo() const { return lo_; }
    long long band_hi() const { return hi_; }
    const WittModule& base_module() const { return mod_; }

    // log_p of the quotient order
    long long quotient_rank() const {
        return (long long)(hi_ - lo_ + 1) * (long long)mod_.dimension() - (long long)rel_.rank();
    }
    long long relation_rank() const { return (long long)rel_.rank(); }

    LocElem zero() const { return LocElem{this, {}}; }
    LocElem embed(long long band, const WittVec& w) const; // T^band * w, reduced
    LocElem from_bands(BandVec raw) const;                 // rewrite + reduce

    LocElem add(const LocElem& a, const LocElem& b) const;
    LocElem sub(const LocElem& a, const LocElem& b) const;
    LocElem neg(const LocElem& a) const;
    LocElem scale(int c, const LocElem& a) const;
    LocElem mul(const LocElem& a, const LocElem& b) const;
    LocElem p_scale(const LocElem& a) const;

    // alpha of the canonical representative (a lower bound for the quotient
    // norm's alpha); band weight is 0 on every side
    NormExponent alpha(const LocElem& a) const;

    // module generator labels (band x Witt label) over the window
    struct GenLabel {
        long long band;
        WittLabel w;
    };
    std::vector<GenLabel> generator_labels() const;
    LocElem generator(const GenLabel& g) const;

private:
    LocRing() : mod_(nullptr, 0) {}
    void build_relations();
    BandVec rewrite_top(BandVec v) const;

    RingPtr base_;
    int len_ = 0;
    WittVec f_, g_, ginv_f_; // g^-1 f for top-band rewriting
    Side side_ = Side::T;
    long long lo_ = 0, hi_ = 0;
    WittModule mod_;
    GroupEchelon<LocElem> rel_;
};

template <>
struct GroupTraits<LocElem> {
    using Label = std::pair<long long, WittLabel>;

    static int prime(const LocElem& e);
    static bool is_zero(const LocElem& e) { return e.is_zero(); }
    static std::pair<Label, int> leading(const LocElem& e) {
        for (const auto& [band, w] : e.bands) {
            if (w.is_zero()) continue;
            auto [wl, c] = GroupTraits<WittVec>::leading(w);
            return {{band, wl}, c};
        }
        throw Error("leading label of zero localization element");
    }
    static std::vector<std::pair<Label, int>> support(const LocElem& e) {
        std::vector<std::pair<Label, int>> out;
        for (const auto& [band, w] : e.bands)
            for (const auto& [wl, c] : GroupTraits<WittVec>::support(w))
                out.push_back({{band, wl}, c});
        return out;
    }
    static LocElem sub_scaled(const LocElem& a, int c, const LocElem& b);
    static LocElem scale(int c, const LocElem& e);
    static LocElem p_scale(const LocElem& e);
};

// The three rings and two maps of the two-term complex, with the composite
// verified to vanish on every generator.
struct CechComplexDatum {
    RingPtr base;
    int len = 0;
    WittVec f, g;
    LocRingPtr piece1;  // side T
    LocRingPtr piece2;  // side Tinv
    LocRingPtr overlap; // side Both

    // negative-control switch: corrupts the difference map on one generator
    bool corrupt_map2 = false;

    std::pair<LocElem, LocElem> map1(const WittVec& c) const;
    LocElem map2(const LocElem& a, const LocElem& b) const;
    LocElem include1(const LocElem& a) const;
    LocElem include2(const LocElem& b) const;
};

CechComplexDatum cech_complex(RingPtr base, int len, const WittVec& f, const WittVec& g,
                              long long window);

struct RankNode {
    std::string node;
    long long kernel_dim = 0;
    long long image_dim = 0;
    std::string verdict;
};

struct RankReport {
    std::vector<RankNode> nodes;
    bool exact = false;
    bool h0_inverse_ok = false; // explicit inverse on H^0 constructed and verified
    std::string caps;
    std::string failure; // empty when exact
};

RankReport check_exactness(const CechComplexDatum& datum);

// Finite-stage analogue of the strict-inclusion constant for multiplication
// by x = sum x_t T^t on the free band algebra over C.
struct StrictMultReport {
    bool witness_ok = false;     // coefficients generate the unit ideal in C
    Rat realized_drop;           // max over basis of alpha(x*y) - alpha(y)
    long long degenerate = 0;    // basis elements with x*y = 0 at truncation
    long long basis_size = 0;
};
StrictMultReport check_strict_multiplication(RingPtr base, int len,
                                             const std::vector<WittVec>& coeffs,
                                             long long window);

// sparse triplet dump of a localization element over indexed labels
std::string dump_triplets(const std::vector<LocElem>& columns);

} // namespace ainf
