#pragma once

#include <vector>

#include "kup/network.hpp"

namespace kup {

inline std::size_t in_leg(const Tensor& t, std::size_t k) {
    for (std::size_t l = 0; l < t.rank(); ++l)
        if (t.leg(l).dir == Dir::In && k-- == 0) return l;
    fail(ErrorKind::LegMismatch, "no such in-leg");
}

inline std::size_t out_leg(const Tensor& t, std::size_t k) {
    for (std::size_t l = 0; l < t.rank(); ++l)
        if (t.leg(l).dir == Dir::Out && k-- == 0) return l;
    fail(ErrorKind::LegMismatch, "no such out-leg");
}

// Builds small networks by addressing legs as the k-th in- or out-leg of a node.
class Wiring {
public:
    int add(const Tensor& t) { return net.add_node(t); }

    LegRef in(int node, std::size_t k) const { return {node, in_leg(net.node(node), k)}; }
    LegRef out(int node, std::size_t k) const { return {node, out_leg(net.node(node), k)}; }

    void link(int from, std::size_t out_k, int to, std::size_t in_k) {
        net.connect(out(from, out_k), in(to, in_k));
    }

    Tensor result(std::vector<LegRef> free) {
        net.set_free_legs(std::move(free));
        return contract(net);
    }

    TensorNetwork net;
};

}  // namespace kup
