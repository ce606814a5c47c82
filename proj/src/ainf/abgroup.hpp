#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace ainf {

// Echelon machinery over finite abelian p-groups presented by digit normal
// forms. Truncated Witt modules are not F_p-vector spaces (addition
// carries), but every element has a unique label-graded expansion with F_p
// coefficients, and subtracting two elements with equal leading label
// cancels that label and disturbs only strictly larger ones. That is all a
// pivot-based echelon needs.
//
// GroupTraits<E> must provide:
//   using Label = ...;                     // totally ordered
//   static int prime(const E&);
//   static bool is_zero(const E&);
//   static std::pair<Label, int> leading(const E&);   // minimal label, coeff in [1,p)
//   static std::vector<std::pair<Label, int>> support(const E&); // ascending
//   static E sub_scaled(const E& a, int c, const E& b);          // a - c*b
//   static E scale(int c, const E&);
//   static E p_scale(const E&);            // multiplication by p
template <typename E>
struct GroupTraits;

template <typename E>
class GroupEchelon {
public:
    using T = GroupTraits<E>;
    using Label = typename T::Label;

    // inserts the element and the p-multiples of every new pivot; returns
    // the number of pivots added
    size_t insert(E v) {
        size_t added = 0;
        std::vector<E> queue;
        queue.push_back(std::move(v));
        while (!queue.empty()) {
            E cur = std::move(queue.back());
            queue.pop_back();
            cur = reduce_leading(std::move(cur));
            if (T::is_zero(cur)) continue;
            const int p = T::prime(cur);
            auto [lab, c] = T::leading(cur);
            cur = T::scale(inv_mod(c, p), cur);
            queue.push_back(T::p_scale(cur));
            pivots_.emplace(lab, std::move(cur));
            ++added;
        }
        return added;
    }

    // reduce until the leading label has no pivot (or zero); leaves larger
    // labels untouched by further pivots
    E reduce_leading(E cur) const {
        while (!T::is_zero(cur)) {
            auto [lab, c] = T::leading(cur);
            auto it = pivots_.find(lab);
            if (it == pivots_.end()) return cur;
            cur = T::sub_scaled(std::move(cur), c, it->second);
        }
        return cur;
    }

    // full coset normal form: no label in the support carries a pivot
    E reduce(E v) const {
        for (;;) {
            if (T::is_zero(v)) return v;
            bool hit = false;
            for (const auto& [lab, c] : T::support(v)) {
                auto it = pivots_.find(lab);
                if (it != pivots_.end()) {
                    v = T::sub_scaled(std::move(v), c, it->second);
                    hit = true;
                    break;
                }
            }
            if (!hit) return v;
        }
    }

    bool contains(E v) const { return T::is_zero(reduce(std::move(v))); }

    // log_p of the subgroup order
    size_t rank() const { return pivots_.size(); }

    const std::map<Label, E>& pivots() const { return pivots_; }

    static int inv_mod(int c, int p) {
        c %= p;
        if (c < 0) c += p;
        for (int y = 1; y < p; ++y)
            if ((c * y) % p == 1) return y;
        throw Error("no inverse mod p");
    }

private:
    std::map<Label, E> pivots_;
};

// Graph-subgroup echelon for a homomorphism f: M -> N, built from pairs
// (f(g), g). Image labels sort before source labels, so pivots split into
// image pivots (rank of f) and kernel pivots (source parts with zero image).
template <typename EN, typename EM>
struct GraphElem {
    EN img;
    EM src;
};

template <typename EN, typename EM>
struct GroupTraits<GraphElem<EN, EM>> {
    using TN = GroupTraits<EN>;
    using TM = GroupTraits<EM>;
    // index 0 = image side, index 1 = source side; variant ordering compares
    // the index first
    using Label = std::pair<int, std::pair<typename TN::Label, typename TM::Label>>;

    static Label img_label(const typename TN::Label& l, const typename TM::Label& dummy) {
        return {0, {l, dummy}};
    }
    static Label src_label(const typename TN::Label& dummy, const typename TM::Label& l) {
        return {1, {dummy, l}};
    }

    static int prime(const GraphElem<EN, EM>& e) {
        return TN::is_zero(e.img) ? TM::prime(e.src) : TN::prime(e.img);
    }
    static bool is_zero(const GraphElem<EN, EM>& e) {
        return TN::is_zero(e.img) && TM::is_zero(e.src);
    }
    static std::pair<Label, int> leading(const GraphElem<EN, EM>& e) {
        if (!TN::is_zero(e.img)) {
            auto [l, c] = TN::leading(e.img);
            return {img_label(l, dummy_m(e)), c};
        }
        auto [l, c] = TM::leading(e.src);
        return {src_label(dummy_n(e), l), c};
    }
    static std::vector<std::pair<Label, int>> support(const GraphElem<EN, EM>& e) {
        std::vector<std::pair<Label, int>> out;
        for (const auto& [l, c] : TN::support(e.img)) out.emplace_back(img_label(l, dummy_m(e)), c);
        for (const auto& [l, c] : TM::support(e.src)) out.emplace_back(src_label(dummy_n(e), l), c);
        return out;
    }
    static GraphElem<EN, EM> sub_scaled(const GraphElem<EN, EM>& a, int c,
                                        const GraphElem<EN, EM>& b) {
        return {TN::sub_scaled(a.img, c, b.img), TM::sub_scaled(a.src, c, b.src)};
    }
    static GraphElem<EN, EM> scale(int c, const GraphElem<EN, EM>& e) {
        return {TN::scale(c, e.img), TM::scale(c, e.src)};
    }
    static GraphElem<EN, EM> p_scale(const GraphElem<EN, EM>& e) {
        return {TN::p_scale(e.img), TM::p_scale(e.src)};
    }

private:
    // placeholder labels: these pairs never tie on the index, so the payload
    // of the unused side is irrelevant but must be constructible
    static typename TM::Label dummy_m(const GraphElem<EN, EM>& e) {
        if (!TM::is_zero(e.src)) return TM::leading(e.src).first;
        return typename TM::Label{};
    }
    static typename TN::Label dummy_n(const GraphElem<EN, EM>& e) {
        if (!TN::is_zero(e.img)) return TN::leading(e.img).first;
        return typename TN::Label{};
    }
};

// Summary of a homomorphism studied through its graph subgroup.
template <typename EN, typename EM>
struct MapAnalysis {
    GroupEchelon<GraphElem<EN, EM>> graph;
    size_t image_rank = 0;  // log_p |image|
    size_t kernel_rank = 0; // log_p |kernel|
    std::vector<EM> kernel_generators;

    void add_generator(EN fg, EM g) {
        graph.insert(GraphElem<EN, EM>{std::move(fg), std::move(g)});
        recount();
    }
    void recount() {
        image_rank = kernel_rank = 0;
        kernel_generators.clear();
        for (const auto& [lab, piv] : graph.pivots()) {
            if (lab.first == 0)
                ++image_rank;
            else {
                ++kernel_rank;
                kernel_generators.push_back(piv.src);
            }
        }
    }
    // solve f(x) = target; returns x or nullopt
    std::optional<EM> solve(EN target, EM zero_m) const {
        GraphElem<EN, EM> v{std::move(target), std::move(zero_m)};
        v = graph.reduce(std::move(v));
        if (!GroupTraits<EN>::is_zero(v.img)) return std::nullopt;
        return GroupTraits<EM>::scale(-1, v.src);
    }
};

} // namespace ainf
