#pragma once

#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "kup/diagram.hpp"

namespace kup {

// Closure of a braid word on `strands` strands; generator +k crosses strands
// k and k+1 positively. Framings are listed per component. Zero strands is
// the empty link.
struct PlanarLink {
    int strands = 1;
    std::vector<int> word;
    std::vector<int> framings;
};

// One pass of a component through a braid crossing.
struct StrandEvent {
    std::size_t crossing = 0;  // index into the word
    bool over = false;
    std::size_t arc = 0;  // closure arcs passed since the component's start
};

struct BraidCrossing {
    int sign = 1;
    int over_strand = 0, under_strand = 0;  // top positions of the strands
    std::size_t over_comp = 0, under_comp = 0;
};

struct BraidAnalysis {
    std::vector<BraidCrossing> crossings;
    std::vector<std::vector<int>> components;        // top positions, traversal order
    std::vector<std::vector<StrandEvent>> traversal;  // per component
    std::vector<std::size_t> closure_arcs;            // per component
    std::vector<int> writhe;                          // self-crossing sign sums
};

inline void check_braid(const PlanarLink& p) {
    if (p.strands < 0) fail(ErrorKind::InvalidBraidWord, "negative strand count");
    for (int g : p.word)
        if (g == 0 || std::abs(g) >= p.strands)
            fail(ErrorKind::InvalidBraidWord,
                 "generator " + std::to_string(g) + " out of range for " + std::to_string(p.strands) + " strands");
}

inline BraidAnalysis analyze_braid(const PlanarLink& p) {
    check_braid(p);
    const int n = p.strands;
    BraidAnalysis out;
    std::vector<int> at(n);  // at[position] = strand (named by top position)
    std::iota(at.begin(), at.end(), 0);
    std::vector<std::vector<StrandEvent>> per_strand(n);
    for (std::size_t t = 0; t < p.word.size(); ++t) {
        int g = p.word[t];
        int k = std::abs(g);  // positions k-1, k (0-based)
        BraidCrossing c;
        c.sign = g > 0 ? 1 : -1;
        c.over_strand = g > 0 ? at[k] : at[k - 1];
        c.under_strand = g > 0 ? at[k - 1] : at[k];
        out.crossings.push_back(c);
        per_strand[c.over_strand].push_back({t, true});
        per_strand[c.under_strand].push_back({t, false});
        std::swap(at[k - 1], at[k]);
    }
    std::vector<int> next(n);  // strand s ends at bottom position q, closes to top q
    for (int q = 0; q < n; ++q) next[at[q]] = q;
    std::vector<int> comp_of(n, -1);
    for (int s = 0; s < n; ++s) {
        if (comp_of[s] >= 0) continue;
        std::vector<int> cyc;
        std::vector<StrandEvent> tr;
        int x = s;
        do {
            comp_of[x] = int(out.components.size());
            cyc.push_back(x);
            for (auto ev : per_strand[x]) {
                ev.arc = cyc.size() - 1;
                tr.push_back(ev);
            }
            x = next[x];
        } while (x != s);
        out.closure_arcs.push_back(cyc.size());
        out.components.push_back(cyc);
        out.traversal.push_back(tr);
    }
    out.writhe.assign(out.components.size(), 0);
    for (auto& c : out.crossings) {
        c.over_comp = std::size_t(comp_of[c.over_strand]);
        c.under_comp = std::size_t(comp_of[c.under_strand]);
        if (c.over_comp == c.under_comp) out.writhe[c.over_comp] += c.sign;
    }
    return out;
}

inline std::size_t component_count(const PlanarLink& p) { return analyze_braid(p).components.size(); }

inline void check_framings(const PlanarLink& p, std::size_t comps) {
    if (p.framings.size() != comps)
        fail(ErrorKind::InvalidBraidWord, "braid closure has " + std::to_string(comps) + " components but " +
                                              std::to_string(p.framings.size()) + " framings given");
}

// Framings on the diagonal, linking numbers off it.
inline std::vector<std::vector<long>> linking_matrix(const PlanarLink& p) {
    BraidAnalysis b = analyze_braid(p);
    const std::size_t c = b.components.size();
    check_framings(p, c);
    std::vector<std::vector<long>> twice(c, std::vector<long>(c, 0));
    for (const auto& x : b.crossings)
        if (x.over_comp != x.under_comp) {
            twice[x.over_comp][x.under_comp] += x.sign;
            twice[x.under_comp][x.over_comp] += x.sign;
        }
    std::vector<std::vector<long>> m(c, std::vector<long>(c, 0));
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) m[i][j] = i == j ? p.framings[i] : twice[i][j] / 2;
    return m;
}

// A kink or braid crossing, as seen along the link: sign, the two components
// and where each pass sits in the traversal.
struct GadgetPlan {
    int sign = 1;
    std::size_t over_comp = 0, under_comp = 0;
};

// Per component, the traversal as (gadget, over?) pairs: curl kinks fixing the
// framing come first, two passes each, then the braid
// crossings in traversal order. Shared by the diagram import and the HKR
// evaluation so both see the same link.
struct LinkPlan {
    std::vector<GadgetPlan> gadgets;
    std::vector<std::vector<StrandEvent>> traversal;
    BraidAnalysis braid;
};

inline LinkPlan plan_link(const PlanarLink& p) {
    LinkPlan out;
    out.braid = analyze_braid(p);
    const auto& b = out.braid;
    check_framings(p, b.components.size());
    for (const auto& x : b.crossings) out.gadgets.push_back({x.sign, x.over_comp, x.under_comp});
    for (std::size_t c = 0; c < b.components.size(); ++c) {
        std::vector<StrandEvent> tr;
        int k = p.framings[c] - b.writhe[c];
        for (int i = 0; i < std::abs(k); ++i) {
            std::size_t g = out.gadgets.size();
            out.gadgets.push_back({k > 0 ? 1 : -1, c, c});
            // as a braid stabilization: positive curls are met under-first
            tr.push_back({g, k < 0, 0});
            tr.push_back({g, k > 0, 0});
        }
        tr.insert(tr.end(), b.traversal[c].begin(), b.traversal[c].end());
        out.traversal.push_back(tr);
    }
    return out;
}

// Heegaard-Link diagram of (S³, L). Every crossing is resolved by a genus-one
// bridge: a new alpha A meeting the under strand, a new beta B meeting the
// over strand, and A, B meeting once.
inline Diagram from_planar_link(const PlanarLink& p) {
    LinkPlan plan = plan_link(p);
    Diagram e = s3_diagram();
    std::vector<int> al(plan.gadgets.size()), bl(plan.gadgets.size());
    for (std::size_t g = 0; g < plan.gadgets.size(); ++g) {
        const auto& x = plan.gadgets[g];
        int ab = e.add_crossing(CrossKind::AB, 1);
        al[g] = e.add_crossing(CrossKind::AL, 1);
        bl[g] = e.add_crossing(CrossKind::BL, x.sign);
        int id = e.next_curve_id();
        e.alpha.push_back({id, {ab, al[g]}});
        e.beta.push_back({id + 1, {ab, bl[g]}});
        ++e.genus;
    }
    for (std::size_t c = 0; c < plan.traversal.size(); ++c) {
        Curve l{e.next_curve_id(), {}};
        for (const auto& ev : plan.traversal[c]) l.seq.push_back(ev.over ? bl[ev.crossing] : al[ev.crossing]);
        e.links.push_back(l);
    }
    require_valid(e);
    return e;
}

}  // namespace kup
