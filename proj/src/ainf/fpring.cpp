#include "fpring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ainf {

namespace {

int mod_p(long long c, int p) {
    int r = (int)(c % p);
    return r < 0 ? r + p : r;
}

int inv_mod_p(int c, int p) {
    // p is tiny; brute force
    c = mod_p(c, p);
    for (int y = 1; y < p; ++y)
        if ((c * y) % p == 1) return y;
    throw Error("inverse of 0 mod p");
}

} // namespace

// ---------------------------------------------------------------------------
// PerfMonomial

std::string PerfMonomial::str(const std::vector<Variable>& vars) const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i].is_zero()) continue;
        if (!first) os << "*";
        first = false;
        os << vars[i].name;
        if (!(exps_[i] == Rat(1))) {
            if (exps_[i].is_integer() && exps_[i].num() > 0)
                os << "^" << exps_[i].num();
            else
                os << "^(" << exps_[i].str() << ")";
        }
    }
    if (first) os << "1";
    return os.str();
}

// ---------------------------------------------------------------------------
// PerfPoly

PerfPoly::PerfPoly(RingPtr ring, TermMap terms) : ring_(std::move(ring)) {
    if (!ring_) throw Error("PerfPoly without ring");
    // truncate, validate, normalize coefficients, then reduce
    TermMap kept;
    for (auto& [m, c] : terms) {
        int cc = mod_p(c, ring_->prime());
        if (cc == 0) continue;
        if (ring_->truncates(m)) continue;
        ring_->check_exponents(m);
        kept.emplace(m, cc);
    }
    terms_ = ring_->reduce(std::move(kept));
}

PerfPoly PerfPoly::zero(RingPtr ring) { return PerfPoly(std::move(ring), {}); }

PerfPoly PerfPoly::one(RingPtr ring) { return constant(std::move(ring), 1); }

PerfPoly PerfPoly::constant(RingPtr ring, long long c) {
    TermMap t;
    size_t nv = ring->variables().size();
    if (mod_p(c, ring->prime()) != 0) t.emplace(PerfMonomial(nv), mod_p(c, ring->prime()));
    return PerfPoly(std::move(ring), std::move(t));
}

PerfPoly PerfPoly::variable(RingPtr ring, const std::string& name, const Rat& exp) {
    PerfMonomial m(ring->variables().size());
    m[ring->var_index(name)] = exp;
    return monomial(std::move(ring), m);
}

PerfPoly PerfPoly::monomial(RingPtr ring, const PerfMonomial& m, int coeff) {
    TermMap t;
    t.emplace(m, coeff);
    return PerfPoly(std::move(ring), std::move(t));
}

bool PerfPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_constant() &&
           terms_.begin()->second == 1;
}

PerfPoly operator+(const PerfPoly& a, const PerfPoly& b) {
    if (!same_ring(a.ring_, b.ring_)) throw RingMismatch();
    PerfPoly::TermMap t = a.terms_;
    for (const auto& [m, c] : b.terms_) {
        auto it = t.find(m);
        if (it == t.end())
            t.emplace(m, c);
        else {
            it->second = mod_p(it->second + c, a.ring_->prime());
            if (it->second == 0) t.erase(it);
        }
    }
    return PerfPoly(a.ring_, std::move(t));
}

PerfPoly PerfPoly::operator-() const {
    TermMap t;
    for (const auto& [m, c] : terms_) t.emplace(m, ring_->prime() - c);
    return PerfPoly(ring_, std::move(t));
}

PerfPoly operator-(const PerfPoly& a, const PerfPoly& b) { return a + (-b); }

PerfPoly operator*(const PerfPoly& a, const PerfPoly& b) {
    if (!same_ring(a.ring_, b.ring_)) throw RingMismatch();
    const int p = a.ring_->prime();
    PerfPoly::TermMap t;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            PerfMonomial m = ma * mb;
            if (a.ring_->truncates(m)) continue;
            a.ring_->check_exponents(m);
            int c = (ca * cb) % p;
            auto it = t.find(m);
            if (it == t.end())
                t.emplace(std::move(m), c);
            else {
                it->second = mod_p(it->second + c, p);
                if (it->second == 0) t.erase(it);
            }
        }
    }
    return PerfPoly(a.ring_, std::move(t));
}

PerfPoly PerfPoly::scaled(long long c) const {
    int cc = mod_p(c, ring_->prime());
    TermMap t;
    for (const auto& [m, co] : terms_) {
        int v = (co * cc) % ring_->prime();
        if (v) t.emplace(m, v);
    }
    return PerfPoly(ring_, std::move(t));
}

PerfPoly PerfPoly::pow(unsigned long long e) const {
    PerfPoly acc = one(ring_);
    PerfPoly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

PerfPoly PerfPoly::rat_pow(const Rat& e) const {
    if (e < Rat(0)) throw Error("rat_pow: negative exponent");
    long long den = e.den();
    PerfPoly base = *this;
    const int p = ring_->prime();
    while (den > 1) {
        if (den % p != 0) throw Error("rat_pow: denominator is not a p-power");
        base = base.frobenius_inverse();
        den /= p;
    }
    return base.pow((unsigned long long)e.num());
}

PerfPoly PerfPoly::frobenius() const {
    const int p = ring_->prime();
    TermMap t;
    for (const auto& [m, c] : terms_) {
        PerfMonomial mm(m.size());
        for (size_t i = 0; i < m.size(); ++i) mm[i] = m[i] * Rat(p);
        if (ring_->truncates(mm)) continue;
        ring_->check_exponents(mm);
        t.emplace(std::move(mm), c); // c^p = c in F_p
    }
    return PerfPoly(ring_, std::move(t));
}

PerfPoly PerfPoly::frobenius_inverse() const {
    const int p = ring_->prime();
    const long long cap = ring_->denominator_cap();
    TermMap t;
    for (const auto& [m, c] : terms_) {
        PerfMonomial mm(m.size());
        for (size_t i = 0; i < m.size(); ++i) {
            mm[i] = m[i] / Rat(p);
            if (mm[i].den() > cap)
                throw PrecisionExhausted("Frobenius root needs denominator beyond p^N");
        }
        t.emplace(std::move(mm), c);
    }
    return PerfPoly(ring_, std::move(t));
}

NormExponent PerfPoly::gauss_alpha() const {
    NormExponent best;
    for (const auto& [m, c] : terms_)
        best = NormExponent::min_alpha(best, NormExponent(m.weighted_alpha(ring_->variables())));
    return best;
}

std::string PerfPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (c != 1 || m.is_constant()) {
            os << c;
            if (!m.is_constant()) os << "*";
        }
        if (!m.is_constant()) os << m.str(ring_->variables());
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// RingPresentation

RingPtr RingPresentation::create(int p, std::vector<Variable> vars, PrecisionBudget prec,
                                 const std::vector<PerfPoly>& relations, size_t dimension_cap) {
    if (p < 2) throw ConfigInvalid("prime must be >= 2");
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) throw ConfigInvalid("p must be prime");
    prec.validate();
    for (const auto& v : vars)
        if (v.aux && v.inverted) throw ConfigInvalid("auxiliary variables cannot be inverted");
    auto ring = std::shared_ptr<RingPresentation>(new RingPresentation());
    ring->p_ = p;
    ring->vars_ = std::move(vars);
    ring->prec_ = prec;
    ring->dim_cap_ = dimension_cap;
    for (const auto& r : relations) {
        // adopt the raw term map; exponent grids agree by construction
        PerfPoly::TermMap t = r.terms();
        PerfPoly adopted;
        // build directly without reduction (engine not built yet)
        for (auto& [m, c] : t) {
            if (m.size() != ring->vars_.size())
                throw ConfigInvalid("relation variable count mismatch");
        }
        ring->relations_.push_back(PerfPoly()); // placeholder, fixed below
        ring->relations_.back() = PerfPoly(ring, std::move(t));
        // note: reduce() is the identity until the engine is built
    }
    if (!ring->relations_.empty()) ring->build_relation_engine(dimension_cap);
    return ring;
}

size_t RingPresentation::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return i;
    throw Error("unknown variable: " + name);
}

long long RingPresentation::pow_p(int k) const {
    long long r = 1;
    for (int i = 0; i < k; ++i) r *= p_;
    return r;
}

void RingPresentation::check_exponents(const PerfMonomial& m) const {
    const long long cap = denominator_cap();
    for (size_t i = 0; i < m.size(); ++i) {
        const Rat& e = m[i];
        if (e.den() > cap || cap % e.den() != 0)
            throw PrecisionExhausted("exponent denominator beyond p^N");
        if (vars_[i].inverted) {
            if (e < Rat(-prec_.L)) throw TruncationOverflow("exponent below -L on " + vars_[i].name);
        } else {
            if (e < Rat(0)) throw TruncationOverflow("negative exponent on non-inverted " + vars_[i].name);
        }
        // the auxiliary window is not an ideal: overflowing it fails loudly
        // rather than pretending the monomial is small
        if (vars_[i].aux && !(e < Rat(prec_.DT)))
            throw TruncationOverflow("auxiliary exponent at or beyond DT on " + vars_[i].name);
    }
}

void RingPresentation::ensure_enumerated(size_t dimension_cap) const {
    std::call_once(enum_once_, [&] {
        const long long denom = denominator_cap();
        std::vector<PerfMonomial> out;
        PerfMonomial cur(vars_.size());
        // depth-first over variables; prune on weighted positive degree and
        // cap auxiliary exponents at DT
        auto rec = [&](auto&& self, size_t i, const Rat& posdeg) -> void {
            if (i == vars_.size()) {
                out.push_back(cur);
                if (out.size() > dimension_cap)
                    throw ResourceBound("ambient monomial count exceeds cap");
                return;
            }
            long long lo = vars_[i].inverted ? -prec_.L * denom : 0;
            for (long long num = lo;; ++num) {
                Rat e(num, denom);
                Rat pd = posdeg;
                if (vars_[i].aux) {
                    if (!(e < Rat(prec_.DT))) break;
                } else {
                    if (e > Rat(0)) pd += e;
                    if (!(pd < prec_.D)) {
                        if (num <= 0) continue; // negative/zero weight-1 exponents never exceed D
                        break;
                    }
                }
                cur[i] = e;
                self(self, i + 1, pd);
            }
            cur[i] = Rat(0);
        };
        rec(rec, 0, Rat(0));
        std::sort(out.begin(), out.end());
        ambient_ = std::move(out);
        for (size_t k = 0; k < ambient_.size(); ++k) ambient_pos_.emplace(ambient_[k], k);
    });
}

const std::vector<PerfMonomial>& RingPresentation::ambient_monomials() const {
    ensure_enumerated(dim_cap_);
    return ambient_;
}

std::optional<size_t> RingPresentation::ambient_index(const PerfMonomial& m) const {
    ensure_enumerated(dim_cap_);
    auto it = ambient_pos_.find(m);
    if (it == ambient_pos_.end()) return std::nullopt;
    return it->second;
}

void RingPresentation::build_relation_engine(size_t dimension_cap) {
    ensure_enumerated(dimension_cap);
    const size_t dim = ambient_.size();
    const int p = p_;

    // Frobenius-root saturation to depth N
    std::vector<PerfPoly::TermMap> sat;
    for (const auto& r : relations_) {
        PerfPoly::TermMap cur = r.terms();
        sat.push_back(cur);
        for (int k = 1; k <= prec_.N; ++k) {
            PerfPoly::TermMap nxt;
            bool ok = true;
            for (const auto& [m, c] : cur) {
                PerfMonomial mm(m.size());
                for (size_t i = 0; i < m.size() && ok; ++i) {
                    mm[i] = m[i] / Rat(p);
                    if (mm[i].den() > denominator_cap()) ok = false;
                }
                if (!ok) break;
                nxt.emplace(std::move(mm), c);
            }
            if (!ok) break;
            sat.push_back(nxt);
            cur = std::move(nxt);
        }
    }

    auto to_dense = [&](const PerfPoly::TermMap& t) {
        std::vector<uint8_t> row(dim, 0);
        for (const auto& [m, c] : t) {
            auto it = ambient_pos_.find(m);
            if (it == ambient_pos_.end()) throw Error("monomial outside ambient enumeration");
            row[it->second] = (uint8_t)c;
        }
        return row;
    };

    auto axpy = [&](std::vector<uint8_t>& r, int c, const std::vector<uint8_t>& src) {
        // r += c * src mod p
        for (size_t i = 0; i < dim; ++i) {
            if (src[i]) r[i] = (uint8_t)((r[i] + c * src[i]) % p);
        }
    };

    auto reduce_row = [&](std::vector<uint8_t>& row) {
        for (size_t i = dim; i-- > 0;) {
            if (!row[i]) continue;
            auto it = rref_.find(i);
            if (it == rref_.end()) continue;
            axpy(row, p - row[i], it->second); // pivot rows have leading coeff 1
        }
    };

    // forward pass: multiples of saturated generators by every ambient
    // monomial. Only fully faithful products are admitted: a multiple whose
    // expansion loses any term to a cap is discarded, so every row is an
    // exact element of the relation ideal and reduction certifies honestly.
    for (const auto& g : sat) {
        for (const auto& m : ambient_) {
            PerfPoly::TermMap prod;
            bool valid = true;
            for (const auto& [gm, gc] : g) {
                PerfMonomial mm = m * gm;
                if (truncates(mm)) {
                    valid = false;
                    break;
                }
                try {
                    check_exponents(mm);
                } catch (const Error&) {
                    valid = false;
                    break;
                }
                auto it = prod.find(mm);
                if (it == prod.end())
                    prod.emplace(std::move(mm), gc);
                else {
                    it->second = mod_p(it->second + gc, p);
                    if (it->second == 0) prod.erase(it);
                }
            }
            if (!valid || prod.empty()) continue;
            auto row = to_dense(prod);
            reduce_row(row);
            size_t lead = dim;
            for (size_t i = dim; i-- > 0;)
                if (row[i]) { lead = i; break; }
            if (lead == dim) continue;
            if (row[lead] != 1) {
                int inv = inv_mod_p(row[lead], p);
                for (size_t i = 0; i <= lead; ++i) row[i] = (uint8_t)((row[i] * inv) % p);
            }
            rref_.emplace(lead, std::move(row));
        }
    }

    // backward pass: clear pivot positions from every tail (ascending pivots)
    std::vector<size_t> pivots;
    for (const auto& [lead, row] : rref_) pivots.push_back(lead);
    std::sort(pivots.begin(), pivots.end());
    for (size_t pv : pivots) {
        const auto& prow = rref_.at(pv);
        for (auto& [lead, row] : rref_) {
            if (lead == pv || !row[pv]) continue;
            axpy(row, p - row[pv], prow);
        }
    }

    // quotient basis: non-pivot monomials (ascending)
    basis_.clear();
    for (size_t i = 0; i < dim; ++i)
        if (rref_.find(i) == rref_.end()) basis_.push_back(ambient_[i]);
}

PerfPoly::TermMap RingPresentation::reduce(PerfPoly::TermMap t) const {
    if (rref_.empty()) return t;
    const size_t dim = ambient_.size();
    std::vector<uint8_t> row(dim, 0);
    for (const auto& [m, c] : t) {
        auto it = ambient_pos_.find(m);
        if (it == ambient_pos_.end()) throw Error("monomial outside ambient enumeration");
        row[it->second] = (uint8_t)c;
    }
    for (size_t i = dim; i-- > 0;) {
        if (!row[i]) continue;
        auto it = rref_.find(i);
        if (it == rref_.end()) continue;
        int c = p_ - row[i];
        const auto& src = it->second;
        for (size_t k = 0; k <= i; ++k)
            if (src[k]) row[k] = (uint8_t)((row[k] + c * src[k]) % p_);
    }
    PerfPoly::TermMap out;
    for (size_t i = 0; i < dim; ++i)
        if (row[i]) out.emplace(ambient_[i], (int)row[i]);
    return out;
}

const std::vector<PerfMonomial>& RingPresentation::monomial_basis() const {
    if (!relations_.empty()) return basis_;
    return ambient_monomials();
}

std::string RingPresentation::describe() const {
    std::ostringstream os;
    os << "F_" << p_ << "[";
    for (size_t i = 0; i < vars_.size(); ++i) {
        if (i) os << ",";
        os << vars_[i].name;
        if (vars_[i].inverted) os << "^(+-)";
    }
    os << "] n=" << prec_.n << " D=" << prec_.D.str() << " N=" << prec_.N
       << " DT=" << prec_.DT << " L=" << prec_.L;
    if (!relations_.empty()) {
        os << " rel:";
        for (const auto& r : relations_) os << " (" << r.str() << ")";
    }
    return os.str();
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a.get() == b.get(); }

// ---------------------------------------------------------------------------
// units and ideal membership

namespace {

// geometric-series inverse attempt for a = t*(1 + q) with t a single
// invertible monomial of uniquely minimal alpha
std::optional<PerfPoly> invert_series(const PerfPoly& a) {
    const auto& ring = a.ring();
    // locate unique minimal-alpha term
    auto best = a.terms().end();
    Rat besta;
    bool tie = false;
    for (auto it = a.terms().begin(); it != a.terms().end(); ++it) {
        Rat al = it->first.weighted_alpha(ring->variables());
        if (best == a.terms().end() || al < besta) {
            best = it;
            besta = al;
            tie = false;
        } else if (al == besta) {
            tie = true;
        }
    }
    if (best == a.terms().end() || tie) return std::nullopt;
    // inverse monomial must satisfy the floors
    PerfMonomial inv_m(best->first.size());
    for (size_t i = 0; i < inv_m.size(); ++i) inv_m[i] = -best->first[i];
    try {
        ring->check_exponents(inv_m);
        if (ring->truncates(inv_m)) return std::nullopt;
    } catch (const Error&) {
        return std::nullopt;
    }
    PerfPoly tinv = PerfPoly::monomial(ring, inv_m, inv_mod_p(best->second, ring->prime()));
    PerfPoly q = tinv * a - PerfPoly::one(ring); // alpha(q) > 0 by minimality
    if (!q.is_zero() && !(q.gauss_alpha().alpha() > Rat(0))) return std::nullopt;
    PerfPoly sum = PerfPoly::one(ring);
    PerfPoly pw = -q;
    while (!pw.is_zero()) {
        sum = sum + pw;
        pw = pw * (-q);
    }
    PerfPoly y = tinv * sum;
    if ((a * y).is_one()) return y;
    return std::nullopt;
}

} // namespace

PerfPoly invert(const PerfPoly& a) {
    const auto& ring = a.ring();
    if (a.is_zero()) throw NotAUnit("0 is not a unit");
    if (a.is_one()) return a;
    if (!ring->has_relations()) {
        if (auto y = invert_series(a)) return *y;
    }
    // linear solve a*y = 1 over the quotient basis
    const auto& basis = ring->monomial_basis();
    const size_t dim = basis.size();
    const int p = ring->prime();
    if (dim == 0) return PerfPoly::zero(ring); // collapsed ring: 0 = 1
    std::map<PerfMonomial, size_t> pos;
    for (size_t i = 0; i < dim; ++i) pos.emplace(basis[i], i);
    // columns: coordinates of a * basis[j]
    std::vector<std::vector<uint8_t>> M(dim, std::vector<uint8_t>(dim + 1, 0));
    for (size_t j = 0; j < dim; ++j) {
        PerfPoly col = a * PerfPoly::monomial(ring, basis[j]);
        for (const auto& [m, c] : col.terms()) {
            auto it = pos.find(m);
            if (it == pos.end()) throw Error("normal form left the quotient basis");
            M[it->second][j] = (uint8_t)c;
        }
    }
    {
        PerfPoly target = PerfPoly::one(ring);
        for (const auto& [m, c] : target.terms()) {
            auto it = pos.find(m);
            if (it == pos.end()) throw Error("normal form left the quotient basis");
            M[it->second][dim] = (uint8_t)c;
        }
    }
    // Gaussian elimination mod p
    std::vector<size_t> pivot_col(dim, SIZE_MAX);
    size_t rank = 0;
    for (size_t col = 0; col < dim && rank < dim; ++col) {
        size_t sel = SIZE_MAX;
        for (size_t r = rank; r < dim; ++r)
            if (M[r][col]) { sel = r; break; }
        if (sel == SIZE_MAX) continue;
        std::swap(M[rank], M[sel]);
        int inv = inv_mod_p(M[rank][col], p);
        for (size_t k = col; k <= dim; ++k) M[rank][k] = (uint8_t)((M[rank][k] * inv) % p);
        for (size_t r = 0; r < dim; ++r) {
            if (r == rank || !M[r][col]) continue;
            int c = p - M[r][col];
            for (size_t k = col; k <= dim; ++k)
                M[r][k] = (uint8_t)((M[r][k] + c * M[rank][k]) % p);
        }
        pivot_col[rank] = col;
        ++rank;
    }
    for (size_t r = rank; r < dim; ++r)
        if (M[r][dim]) throw NotAUnit();
    PerfPoly::TermMap yt;
    for (size_t r = 0; r < rank; ++r)
        if (M[r][dim]) yt.emplace(basis[pivot_col[r]], (int)M[r][dim]);
    PerfPoly y(ring, std::move(yt));
    if (!(a * y).is_one()) throw NotAUnit("linear solve produced no verified inverse");
    return y;
}

bool is_unit(const PerfPoly& a) {
    try {
        invert(a);
        return true;
    } catch (const NotAUnit&) {
        return false;
    }
}

MembershipCertificate ideal_membership(const PerfPoly& a, const std::vector<PerfPoly>& gens) {
    const auto& ring = a.ring();
    const int p = ring->prime();
    MembershipCertificate out;

    // saturate generators by Frobenius roots to depth N
    for (const auto& g : gens) {
        if (!same_ring(g.ring(), ring)) throw RingMismatch();
        PerfPoly cur = g;
        out.generators.push_back(cur);
        for (int k = 1; k <= ring->budget().N; ++k) {
            try {
                cur = cur.frobenius_inverse();
            } catch (const PrecisionExhausted&) {
                break;
            }
            if (cur.is_zero()) break;
            out.generators.push_back(cur);
        }
    }

    // echelon of generator multiples with certificate tracking
    struct Row {
        PerfPoly val;
        std::vector<PerfPoly> cert; // one coefficient per saturated generator
    };
    std::map<PerfMonomial, Row, std::greater<PerfMonomial>> ech;

    auto reduce_into = [&](Row r) -> std::optional<Row> {
        while (!r.val.is_zero()) {
            const auto& lead = r.val.terms().rbegin()->first;
            int lc = r.val.terms().rbegin()->second;
            auto it = ech.find(lead);
            if (it == ech.end()) {
                // normalize leading coefficient to 1
                int inv = inv_mod_p(lc, p);
                r.val = r.val.scaled(inv);
                for (auto& c : r.cert) c = c.scaled(inv);
                return r;
            }
            // subtract lc * pivot
            r.val = r.val - it->second.val.scaled(lc);
            for (size_t i = 0; i < r.cert.size(); ++i)
                r.cert[i] = r.cert[i] - it->second.cert[i].scaled(lc);
        }
        return std::nullopt;
    };

    const size_t G = out.generators.size();
    for (size_t gi = 0; gi < G; ++gi) {
        for (const auto& m : ring->ambient_monomials()) {
            // fully faithful multiples only: the certificate must be an exact
            // identity, so products that lose a term to any cap are skipped
            bool faithful = true;
            for (const auto& [gm, gc] : out.generators[gi].terms()) {
                PerfMonomial mm = m * gm;
                if (ring->truncates(mm)) {
                    faithful = false;
                    break;
                }
                try {
                    ring->check_exponents(mm);
                } catch (const Error&) {
                    faithful = false;
                    break;
                }
            }
            if (!faithful) continue;
            PerfPoly mult = PerfPoly::monomial(ring, m);
            PerfPoly v = mult * out.generators[gi];
            if (v.is_zero()) continue;
            Row r{v, std::vector<PerfPoly>(G, PerfPoly::zero(ring))};
            r.cert[gi] = mult;
            if (auto kept = reduce_into(std::move(r))) ech.emplace(kept->val.terms().rbegin()->first, std::move(*kept));
        }
    }

    // reduce the query, tracking the combination
    Row q{a, std::vector<PerfPoly>(G, PerfPoly::zero(ring))};
    while (!q.val.is_zero()) {
        const auto& lead = q.val.terms().rbegin()->first;
        int lc = q.val.terms().rbegin()->second;
        auto it = ech.find(lead);
        if (it == ech.end()) break;
        q.val = q.val - it->second.val.scaled(lc);
        for (size_t i = 0; i < G; ++i)
            q.cert[i] = q.cert[i] - it->second.cert[i].scaled(lc);
    }
    if (q.val.is_zero()) {
        out.member = true;
        out.coefficients.resize(G, PerfPoly::zero(ring));
        for (size_t i = 0; i < G; ++i) out.coefficients[i] = -q.cert[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// polynomial grammar

namespace {

struct Parser {
    const RingPtr& ring;
    const std::string& s;
    size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ConfigInvalid("parse error at position " + std::to_string(i) + ": " + what +
                            " in \"" + s + "\"");
    }

    long long integer() {
        skip();
        bool neg = eat('-');
        skip();
        if (i >= s.size() || !std::isdigit((unsigned char)s[i])) fail("expected integer");
        long long v = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) v = v * 10 + (s[i++] - '0');
        return neg ? -v : v;
    }

    Rat exponent() {
        skip();
        if (eat('(')) {
            long long num = integer();
            long long den = 1;
            skip();
            if (eat('/')) den = integer();
            if (!eat(')')) fail("expected ')'");
            return Rat(num, den);
        }
        return Rat(integer());
    }

    PerfPoly factor() {
        skip();
        if (i >= s.size()) fail("expected factor");
        if (eat('(')) {
            PerfPoly e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit((unsigned char)s[i])) return PerfPoly::constant(ring, integer());
        if (std::isalpha((unsigned char)s[i]) || s[i] == '_') {
            size_t j = i;
            while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) ++j;
            std::string name = s.substr(i, j - i);
            i = j;
            Rat e(1);
            skip();
            if (i < s.size() && s[i] == '^') {
                ++i;
                e = exponent();
            }
            return PerfPoly::variable(ring, name, e);
        }
        fail("unexpected character");
    }

    PerfPoly term() {
        PerfPoly r = factor();
        for (;;) {
            skip();
            if (eat('*')) {
                r = r * factor();
                continue;
            }
            // implicit product before a variable or '('
            if (i < s.size() && (std::isalpha((unsigned char)s[i]) || s[i] == '_' || s[i] == '(')) {
                r = r * factor();
                continue;
            }
            return r;
        }
    }

    PerfPoly expr() {
        skip();
        bool neg = eat('-');
        PerfPoly r = term();
        if (neg) r = -r;
        for (;;) {
            skip();
            if (eat('+'))
                r = r + term();
            else if (eat('-'))
                r = r - term();
            else
                return r;
        }
    }
};

} // namespace

PerfPoly parse_poly(const RingPtr& ring, const std::string& text) {
    Parser p{ring, text};
    PerfPoly r = p.expr();
    p.skip();
    if (p.i != text.size()) p.fail("trailing input");
    return r;
}

} // namespace ainf
