#include "wittmod.hpp"

#include <random>

namespace ainf {

void WittModule::crosscheck_multiplication(std::mt19937_64& rng, int samples) const {
    std::uniform_int_distribution<size_t> pick(0, labels_.size() - 1);
    std::uniform_int_distribution<int> coeff(0, ring_->prime() - 1);
    for (int s = 0; s < samples; ++s) {
        // sparse random coordinate vectors
        std::map<WittLabel, int> ca, cb;
        for (int t = 0; t < 3; ++t) {
            int c1 = coeff(rng), c2 = coeff(rng);
            if (c1) ca[labels_[pick(rng)]] = c1;
            if (c2) cb[labels_[pick(rng)]] = c2;
        }
        WittVec a = from_coordinates(ca), b = from_coordinates(cb);
        // bilinear expansion over generator products
        WittVec bilinear = WittVec::zero(ring_, len_);
        for (const auto& [la, c1] : ca)
            for (const auto& [lb, c2] : cb)
                bilinear = w_add(bilinear, w_scalar(c1 * c2, w_mul(generator(la), generator(lb))));
        if (!(bilinear == w_mul(a, b)))
            throw Error("linearized multiplication disagrees with structured arithmetic");
    }
}

bool witt_unit_ideal(const std::vector<WittVec>& gens) {
    if (gens.empty()) return false;
    const RingPtr& ring = gens[0].ring();
    int len = gens[0].effective_length();
    for (const auto& g : gens) len = std::min(len, g.effective_length());
    WittModule mod(ring, len);
    GroupEchelon<WittVec> ech;
    for (const auto& g : gens) {
        WittVec gg(ring, std::vector<PerfPoly>(g.digits().begin(), g.digits().begin() + len));
        for (const auto& lab : mod.labels()) ech.insert(w_mul(gg, mod.generator(lab)));
    }
    return ech.contains(WittVec::one(ring, len));
}

} // namespace ainf
