#pragma once

// Independent reference computations used by the unit tests and the
// acceptance run. None of these go through the tensor network engine.

#include <gmpxx.h>

#include <functional>
#include <map>
#include <random>
#include <vector>

#include "kup/diagram.hpp"
#include "kup/groups.hpp"
#include "kup/network.hpp"
#include "kup/reps.hpp"

namespace oracle {

using namespace kup;

// #Hom(pi_1, G) read off a link-free Heegaard diagram: alpha curves are
// generators, each beta curve spells a relator x_{alpha(c)}^{sign(c)} in its
// crossing order. Counts assignments G^genus satisfying every relator.
inline long hom_count(const Diagram& e, const Group& g) {
    if (!e.links.empty()) throw std::runtime_error("hom_count needs a link-free diagram");
    std::map<int, std::size_t> alpha_of;
    for (std::size_t i = 0; i < e.alpha.size(); ++i)
        for (int id : e.alpha[i].seq) alpha_of[id] = i;
    const auto n = g.order();
    const std::size_t k = e.alpha.size();
    std::vector<std::uint32_t> x(k, 0);
    long count = 0;
    while (true) {
        bool ok = true;
        for (const auto& b : e.beta) {
            std::uint32_t w = g.identity();
            for (int id : b.seq) {
                std::uint32_t s = x[alpha_of.at(id)];
                w = g.mul(w, e.crossing(id).sign > 0 ? s : g.inverse(s));
            }
            if (w != g.identity()) {
                ok = false;
                break;
            }
        }
        count += ok;
        std::size_t i = 0;
        while (i < k && ++x[i] == n) x[i++] = 0;
        if (i == k) break;
    }
    return count;
}

// #{g : g^p = 1}
inline long roots_count(const Group& g, long p) {
    long c = 0;
    for (std::uint32_t x = 0; x < g.order(); ++x) c += g.power(x, p) == g.identity();
    return c;
}

// Dense evaluation of a network by summing over every edge index assignment.
// Only for tiny networks with no free legs.
inline Scalar brute_force_value(const TensorNetwork& net, Field f) {
    const auto& edges = net.edges();
    std::vector<std::uint32_t> dims;
    for (const auto& e : edges) dims.push_back(net.node(e.out.node).leg(e.out.leg).dim);
    std::vector<std::uint32_t> val(edges.size(), 0);
    Scalar total = Scalar::zero(f);
    while (true) {
        Scalar term = Scalar::one(f);
        for (const auto& [id, t] : net.nodes()) {
            Index ix(t.rank(), 0);
            for (std::size_t e = 0; e < edges.size(); ++e) {
                if (edges[e].out.node == id) ix[edges[e].out.leg] = val[e];
                if (edges[e].in.node == id) ix[edges[e].in.leg] = val[e];
            }
            term *= t.get(ix);
            if (term.is_zero()) break;
        }
        total += term;
        std::size_t i = 0;
        while (i < val.size() && ++val[i] == dims[i]) val[i++] = 0;
        if (i == val.size()) break;
    }
    return total;
}

// ---- signature through Sturm sequences of the characteristic polynomial

using Poly = std::vector<mpq_class>;  // coefficients, low degree first

inline void trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class q = a.back() / b.back();
        std::size_t sh = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + sh] -= q * b[i];
        trim(a);
    }
    return a;
}

inline Poly poly_div(Poly a, const Poly& b) {
    trim(a);
    if (a.size() < b.size()) return {};
    Poly q(a.size() - b.size() + 1);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class c = a.back() / b.back();
        std::size_t sh = a.size() - b.size();
        q[sh] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + sh] -= c * b[i];
        trim(a);
    }
    return q;
}

inline Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * long(i));
    trim(d);
    return d;
}

inline Poly poly_gcd(Poly a, Poly b) {
    trim(a), trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

// Faddeev-LeVerrier: det(xI - A).
inline Poly char_poly(const std::vector<std::vector<long>>& a) {
    const std::size_t n = a.size();
    using M = std::vector<std::vector<mpq_class>>;
    M A(n, std::vector<mpq_class>(n)), Mk(n, std::vector<mpq_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A[i][j] = a[i][j];
    Poly c(n + 1);
    c[n] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        M next(n, std::vector<mpq_class>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t l = 0; l < n; ++l) next[i][j] += A[i][l] * Mk[l][j];
                if (i == j) next[i][j] += c[n - k + 1];
            }
        Mk = next;
        mpq_class tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) tr += A[i][l] * Mk[l][i];
        c[n - k] = -tr / long(k);
    }
    return c;
}

inline int sign_at_zero(const Poly& p) { return p.empty() ? 0 : sgn(p[0]); }
inline int sign_at_inf(const Poly& p, bool neg) {
    if (p.empty()) return 0;
    int s = sgn(p.back());
    return (neg && (p.size() - 1) % 2 == 1) ? -s : s;
}

// Distinct roots of a squarefree p in (0, inf) and (-inf, 0); p(0) != 0.
inline std::pair<int, int> sturm_counts(const Poly& p) {
    std::vector<Poly> seq{p, derivative(p)};
    while (!seq.back().empty()) {
        Poly r = poly_mod(seq[seq.size() - 2], seq.back());
        for (auto& x : r) x = -x;
        trim(r);
        if (r.empty()) break;
        seq.push_back(r);
    }
    auto changes = [&](auto sign_of) {
        int v = 0, last = 0;
        for (const auto& q : seq) {
            int s = sign_of(q);
            if (s == 0) continue;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    };
    int v0 = changes([](const Poly& q) { return sign_at_zero(q); });
    int vp = changes([](const Poly& q) { return sign_at_inf(q, false); });
    int vn = changes([](const Poly& q) { return sign_at_inf(q, true); });
    return {v0 - vp, vn - v0};
}

// Positive minus negative eigenvalues, with multiplicity.
inline int sturm_signature(const std::vector<std::vector<long>>& a) {
    Poly p = char_poly(a);
    trim(p);
    while (!p.empty() && sgn(p[0]) == 0) p.erase(p.begin());  // zero eigenvalues
    int pos = 0, neg = 0;
    Poly f = p;
    while (f.size() > 1) {
        Poly g = poly_gcd(f, derivative(f));
        Poly sq = poly_div(f, g);
        auto [pp, nn] = sturm_counts(sq);
        pos += pp;
        neg += nn;
        f = g;
    }
    return pos - neg;
}

inline std::vector<std::vector<long>> random_symmetric(std::mt19937& rng, std::size_t n, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    std::vector<std::vector<long>> m(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m[i][j] = m[j][i] = d(rng);
    return m;
}

// Trace of the double braiding on V⊗W for one-dimensional colors, with R
// written out by hand: R = Σ_g (eps⊗g)⊗(δ_g⊗1) acts on V⊗W as Σ_g A_V[g] B_W[g].
inline Scalar double_braiding_1d(const ColoredRep& v, const ColoredRep& w) {
    const std::size_t n = v.rep.A.size();
    Scalar rvw = Scalar::zero(v.rep.field), rwv = Scalar::zero(v.rep.field);
    for (std::size_t g = 0; g < n; ++g) {
        rvw += v.rep.A[g](0, 0) * w.rep.B[g](0, 0);
        rwv += w.rep.A[g](0, 0) * v.rep.B[g](0, 0);
    }
    return rvw * rwv;
}

}  // namespace oracle
