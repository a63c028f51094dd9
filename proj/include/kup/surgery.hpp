#pragma once

#include <string>
#include <vector>

#include "kup/moves.hpp"

namespace kup {

namespace detail {

inline bool is_beta_side(const Diagram& e, int id) { return e.crossing(id).kind == CrossKind::BL; }

// Number of kind changes around the cyclic sequence.
inline std::size_t kind_changes(const Diagram& e, const std::vector<int>& seq) {
    std::size_t n = seq.size(), ch = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (is_beta_side(e, seq[i]) != is_beta_side(e, seq[(i + 1) % n])) ++ch;
    return ch;
}

}  // namespace detail

// One cyclic block of beta-link crossings and one of alpha-link crossings.
inline bool is_sorted_component(const Diagram& e, std::size_t comp) {
    return detail::kind_changes(e, e.curve({CurveKind::Link, comp}).seq) <= 2;
}

struct SortResult {
    Diagram diagram;
    std::size_t swaps = 0;
};

// Moves the component's crossings into a beta block followed by an alpha
// block, read from the base point. Each out-of-order (alpha-link, beta-link) neighbour pair is swapped
// by creating a cancelling alpha-beta pair next to it and running a triangle
// move, so the bracket is unchanged.
inline SortResult sort_link_crossings(const Diagram& in, std::size_t comp) {
    const CurveRef L{CurveKind::Link, comp};
    SortResult out{in, 0};
    Diagram& e = out.diagram;
    e.curve(L);
    while (true) {
        const auto seq = e.curve(L).seq;
        std::size_t i = 0;
        while (i + 1 < seq.size() && !(!detail::is_beta_side(e, seq[i]) && detail::is_beta_side(e, seq[i + 1]))) ++i;
        if (i + 1 >= seq.size()) break;
        const int q = seq[i], r = seq[i + 1];
        const CurveRef a = e.where(q, CurveKind::Alpha).curve, b = e.where(r, CurveKind::Beta).curve;
        // On the link r follows q; choose the helper's side on alpha and beta
        // so the triangle sign condition holds.
        const int ra = 1 ^ e.crossing(q).eta(), rb = e.crossing(r).eta();
        const int sign = ((1 + ra + rb) & 1) == 0 ? 1 : -1;
        const std::size_t qa = e.where(q, CurveKind::Alpha).pos, rbpos = e.where(r, CurveKind::Beta).pos;
        // alpha order (q, p, p') when ra, else (p', p, q); likewise beta with r
        const bool p_first = ra == 1;
        TwoPointSpec spec{a, b, ra ? qa + 1 : qa, rb ? rbpos + 1 : rbpos, p_first ? sign : -sign,
                          (rb == 1) != p_first};
        std::pair<int, int> ids;
        e = two_point_create(e, spec, &ids);
        e = three_point(e, p_first ? ids.first : ids.second, q, r);
        ++out.swaps;
    }
    return out;
}

// Replaces a sorted link component by a new alpha K_a through its former
// beta-link crossings and a new beta K_b through its former alpha-link
// crossings.
inline Diagram surgery(Diagram e, std::size_t comp) {
    require_valid(e);
    if (comp >= e.links.size()) fail(ErrorKind::NoSuchComponent, "no link component " + std::to_string(comp));
    if (!is_sorted_component(e, comp))
        fail(ErrorKind::NotSorted, "component " + std::to_string(comp) + " mixes alpha and beta crossings; sort it first");
    const std::vector<int> seq = e.links[comp].seq;
    e.links.erase(e.links.begin() + long(comp));
    Curve ka{e.next_curve_id(), {}}, kb{e.next_curve_id() + 1, {}};
    for (int id : seq) {
        auto& x = e.crossing(id);
        if (x.kind == CrossKind::BL)
            ka.seq.push_back(id);
        else
            kb.seq.push_back(id);
        x.kind = CrossKind::AB;
    }
    e.alpha.push_back(ka);
    e.beta.push_back(kb);
    ++e.genus;
    require_valid(e);
    return e;
}

// Sorts and surgers every link component, last to first.
inline Diagram surgery_all(const Diagram& in) {
    Diagram e = in;
    for (std::size_t c = e.links.size(); c-- > 0;) {
        if (!is_sorted_component(e, c)) {
            // base point at the start of a beta block saves swaps
            const CurveRef L{CurveKind::Link, c};
            const auto& seq = e.curve(L).seq;
            const std::size_t n = seq.size();
            for (std::size_t i = 0; i < n; ++i)
                if (detail::is_beta_side(e, seq[i]) && !detail::is_beta_side(e, seq[(i + n - 1) % n])) {
                    e = move_basepoint(e, L, long(i));
                    break;
                }
            e = sort_link_crossings(e, c).diagram;
        }
        e = surgery(e, c);
    }
    return e;
}

}  // namespace kup
