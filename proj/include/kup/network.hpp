#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kup/tensor.hpp"

namespace kup {

struct LegRef {
    int node = 0;
    std::size_t leg = 0;
    auto operator<=>(const LegRef&) const = default;
};

struct Edge {
    LegRef out;
    LegRef in;
};

class TensorNetwork {
public:
    int add_node(Tensor t) {
        int id = next_id_++;
        nodes_.emplace(id, std::move(t));
        return id;
    }

    // Join an out-leg to an in-leg of equal dimension.
    std::size_t connect(LegRef out, LegRef in) {
        const Leg& lo = leg(out);
        const Leg& li = leg(in);
        if (lo.dir != Dir::Out || li.dir != Dir::In)
            fail(ErrorKind::LegMismatch, "edge must run from an out-leg to an in-leg");
        if (lo.dim != li.dim)
            fail(ErrorKind::LegMismatch, "edge joins dimensions " + std::to_string(lo.dim) +
                                             " and " + std::to_string(li.dim));
        if (used_.count(out) || used_.count(in))
            fail(ErrorKind::LegMismatch, "leg already participates in an edge");
        used_.insert(out);
        used_.insert(in);
        edges_.push_back({out, in});
        return edges_.size() - 1;
    }

    // Declare the order of the free legs. Without a declaration the free legs
    // are the unmatched legs ordered by (node id, leg index).
    void set_free_legs(std::vector<LegRef> legs) { declared_free_ = std::move(legs); }

    const std::map<int, Tensor>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    const Tensor& node(int id) const {
        auto it = nodes_.find(id);
        if (it == nodes_.end()) fail(ErrorKind::LegMismatch, "no node " + std::to_string(id));
        return it->second;
    }

    const Leg& leg(LegRef r) const {
        const Tensor& t = node(r.node);
        if (r.leg >= t.rank())
            fail(ErrorKind::LegMismatch, "node " + std::to_string(r.node) + " has no leg " +
                                             std::to_string(r.leg));
        return t.leg(r.leg);
    }

    std::vector<LegRef> free_legs() const {
        std::vector<LegRef> unmatched;
        for (const auto& [id, t] : nodes_)
            for (std::size_t k = 0; k < t.rank(); ++k)
                if (!used_.count({id, k})) unmatched.push_back({id, k});
        if (!declared_free_) return unmatched;
        auto sorted = *declared_free_;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != unmatched)
            fail(ErrorKind::LegMismatch, "declared free legs differ from the unmatched legs");
        return *declared_free_;
    }

    std::uint64_t node_count() const { return nodes_.size(); }

private:
    std::map<int, Tensor> nodes_;
    std::vector<Edge> edges_;
    std::set<LegRef> used_;
    std::optional<std::vector<LegRef>> declared_free_;
    int next_id_ = 0;
};

struct PlanStep {
    std::vector<std::size_t> edges;  // contracted together
    std::uint64_t size = 0;          // product of surviving leg dimensions
};

struct ContractionPlan {
    std::vector<PlanStep> steps;
    std::uint64_t cost = 0;  // sum of step sizes
};

namespace detail {

struct Groups {
    std::map<int, int> parent;

    explicit Groups(const TensorNetwork& n) {
        for (const auto& [id, t] : n.nodes()) parent[id] = id;
    }
    int find(int x) {
        while (parent.at(x) != x) x = parent[x] = parent.at(parent.at(x));
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent[b] = a;
    }
};

}  // namespace detail

// Greedy plan: repeatedly contract the pair of intermediates whose merged
// result is smallest; ties go to the smallest (node id, leg index) of the
// out-end of the edges involved. All edges joining the chosen pair are
// contracted in the same step.
inline ContractionPlan plan_contraction(const TensorNetwork& net) {
    ContractionPlan plan;
    const auto& edges = net.edges();
    detail::Groups groups(net);
    // Open legs per group, as dimensions keyed by leg.
    std::map<int, std::map<LegRef, std::uint32_t>> open;
    for (const auto& [id, t] : net.nodes())
        for (std::size_t k = 0; k < t.rank(); ++k) open[id][{id, k}] = t.leg(k).dim;
    std::vector<char> done(edges.size(), 0);
    std::size_t remaining = edges.size();

    while (remaining > 0) {
        struct Candidate {
            std::vector<std::size_t> edges;
            std::uint64_t size;
            LegRef key;
        };
        std::map<std::pair<int, int>, Candidate> cands;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (done[e]) continue;
            int g1 = groups.find(edges[e].out.node), g2 = groups.find(edges[e].in.node);
            auto pk = std::minmax(g1, g2);
            auto [it, fresh] = cands.try_emplace({pk.first, pk.second});
            if (fresh) it->second.key = edges[e].out;
            it->second.edges.push_back(e);
            it->second.key = std::min(it->second.key, edges[e].out);
        }
        std::optional<Candidate> best;
        for (auto& [pk, c] : cands) {
            std::set<LegRef> consumed;
            for (auto e : c.edges) {
                consumed.insert(edges[e].out);
                consumed.insert(edges[e].in);
            }
            std::uint64_t size = 1;
            auto tally = [&](int g) {
                for (const auto& [lr, d] : open[g])
                    if (!consumed.count(lr)) size = sat_mul(size, d);
            };
            tally(pk.first);
            if (pk.second != pk.first) tally(pk.second);
            c.size = size;
            if (!best || size < best->size || (size == best->size && c.key < best->key)) best = c;
        }
        int g1 = groups.find(edges[best->edges.front()].out.node);
        int g2 = groups.find(edges[best->edges.front()].in.node);
        std::map<LegRef, std::uint32_t> merged = open[g1];
        if (g2 != g1) {
            merged.insert(open[g2].begin(), open[g2].end());
            open.erase(g2);
        }
        for (auto e : best->edges) {
            merged.erase(edges[e].out);
            merged.erase(edges[e].in);
            done[e] = 1;
            --remaining;
        }
        open.erase(g1);
        groups.unite(g1, g2);
        open[groups.find(g1)] = std::move(merged);
        plan.steps.push_back({best->edges, best->size});
        plan.cost = sat_add(plan.cost, best->size);
    }
    return plan;
}

// Execute a plan (the greedy plan when none is given). Each step names edges
// that all join the same two intermediates (or lie inside one intermediate).
// Leftover disconnected pieces are multiplied together in node order, and the
// result legs follow the network's free-leg order.
inline Tensor contract(const TensorNetwork& net, const ContractionPlan* plan = nullptr) {
    ContractionPlan own;
    if (!plan) {
        own = plan_contraction(net);
        plan = &own;
    }
    const auto& edges = net.edges();
    struct Piece {
        Tensor t;
        std::vector<LegRef> axes;
    };
    std::map<int, Piece> pieces;
    detail::Groups groups(net);
    for (const auto& [id, t] : net.nodes()) {
        Piece p{t, {}};
        for (std::size_t k = 0; k < t.rank(); ++k) p.axes.push_back({id, k});
        pieces.emplace(id, std::move(p));
    }
    std::vector<char> done(edges.size(), 0);
    auto axis_of = [](const Piece& p, LegRef r) {
        auto it = std::find(p.axes.begin(), p.axes.end(), r);
        if (it == p.axes.end()) fail(ErrorKind::InvalidPlan, "leg no longer present");
        return static_cast<std::size_t>(it - p.axes.begin());
    };

    for (const auto& step : plan->steps) {
        if (step.edges.empty()) fail(ErrorKind::InvalidPlan, "empty plan step");
        int g1 = -1, g2 = -1;
        for (auto e : step.edges) {
            if (e >= edges.size()) fail(ErrorKind::InvalidPlan, "edge out of range");
            if (done[e]) fail(ErrorKind::InvalidPlan, "edge contracted twice");
            done[e] = 1;
            int a = groups.find(edges[e].out.node), b = groups.find(edges[e].in.node);
            if (g1 < 0) {
                g1 = a;
                g2 = b;
            } else if (!((a == g1 && b == g2) || (a == g2 && b == g1))) {
                fail(ErrorKind::InvalidPlan, "step edges join different intermediates");
            }
        }
        if (g1 == g2) {
            Piece& p = pieces.at(g1);
            LegPairs pairs;
            for (auto e : step.edges)
                pairs.push_back({axis_of(p, edges[e].out), axis_of(p, edges[e].in)});
            std::vector<char> drop(p.axes.size(), 0);
            for (auto [i, j] : pairs) drop[i] = drop[j] = 1;
            p.t = trace_legs(p.t, pairs);
            std::vector<LegRef> axes;
            for (std::size_t k = 0; k < p.axes.size(); ++k)
                if (!drop[k]) axes.push_back(p.axes[k]);
            p.axes = std::move(axes);
        } else {
            Piece& pa = pieces.at(g1);
            Piece& pb = pieces.at(g2);
            LegPairs pairs;
            for (auto e : step.edges) {
                LegRef ra = edges[e].out, rb = edges[e].in;
                if (groups.find(ra.node) != g1) std::swap(ra, rb);
                pairs.push_back({axis_of(pa, ra), axis_of(pb, rb)});
            }
            std::vector<char> da(pa.axes.size(), 0), db(pb.axes.size(), 0);
            for (auto [i, j] : pairs) da[i] = db[j] = 1;
            Piece merged{contract_pair(pa.t, pb.t, pairs), {}};
            for (std::size_t k = 0; k < pa.axes.size(); ++k)
                if (!da[k]) merged.axes.push_back(pa.axes[k]);
            for (std::size_t k = 0; k < pb.axes.size(); ++k)
                if (!db[k]) merged.axes.push_back(pb.axes[k]);
            pieces.erase(g1);
            pieces.erase(g2);
            groups.unite(g1, g2);
            pieces.emplace(groups.find(g1), std::move(merged));
        }
    }
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (!done[e]) fail(ErrorKind::InvalidPlan, "plan leaves edge " + std::to_string(e));

    Field f{};
    for (const auto& [id, t] : net.nodes())
        if (!t.field().is_rational()) f = t.field();
    Piece total{Tensor::scalar(Scalar::one(f)), {}};
    for (auto& [id, p] : pieces) {
        total.t = outer(total.t, p.t);
        total.axes.insert(total.axes.end(), p.axes.begin(), p.axes.end());
    }
    auto want = net.free_legs();
    std::vector<std::size_t> perm;
    for (const auto& r : want) perm.push_back(axis_of(total, r));
    return total.t.permuted(perm);
}

}  // namespace kup
