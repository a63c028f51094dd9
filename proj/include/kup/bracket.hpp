#pragma once

#include <map>
#include <vector>

#include "kup/diagram.hpp"
#include "kup/network.hpp"
#include "kup/reps.hpp"
#include "kup/wiring.hpp"

namespace kup {

// Per link component (by index) a representation with its trace.
using ColorAssignment = std::vector<const ColoredRep*>;

namespace detail {

inline Tensor matrix_family_slot(const std::vector<Matrix>& fam, const std::vector<SVec>& mix,
                                 std::uint32_t d, std::uint32_t n, Field f, bool alg_in) {
    // alg_in: legs (in alg, in row, out col); otherwise (in row, out alg, out col)
    std::vector<Leg> legs = alg_in ? std::vector<Leg>{{Dir::In, d}, {Dir::In, n}, {Dir::Out, n}}
                                   : std::vector<Leg>{{Dir::In, n}, {Dir::Out, d}, {Dir::Out, n}};
    Tensor t(legs, f);
    for (std::uint32_t h = 0; h < d; ++h)
        for (const auto& [k, v] : mix[h]) {
            const Matrix& m = fam[k];
            for (std::uint32_t r = 0; r < n; ++r)
                for (std::uint32_t c = 0; c < n; ++c) {
                    if (m(r, c).is_zero()) continue;
                    if (alg_in)
                        t.add({h, r, c}, v * m(r, c));
                    else
                        t.add({r, h, c}, v * m(r, c));
                }
        }
    return t;
}

inline std::vector<SVec> antipode_power(const HopfAlgebra& h, int eta, bool transpose) {
    std::vector<SVec> out(h.dim);
    for (std::uint32_t a = 0; a < h.dim; ++a) {
        if (eta == 0) {
            out[a].push_back({a, h.one_scalar()});
            continue;
        }
        for (const auto& [c, v] : h.antipode(a)) {
            if (transpose)
                out[c].push_back({a, v});
            else
                out[a].push_back({c, v});
        }
    }
    return out;
}

}  // namespace detail

struct AssembledNetwork {
    TensorNetwork net;
    std::size_t alpha_nodes = 0, beta_nodes = 0, link_nodes = 0;
};

// The bracket network: e→Δ chains on alpha curves, M chains→mu on beta curves,
// S^eta on alpha-beta edges, and per link component a closed chain of slot
// tensors rho(d_1)…rho(d_n) traced by W.
inline AssembledNetwork assemble(const Diagram& E, const HopfAlgebra& H, const ColorAssignment& colors) {
    require_valid(E);
    if (!H.axioms_verified) fail(ErrorKind::PreconditionViolated, "algebra is not verified");
    if (!H.integrals) fail(ErrorKind::PreconditionViolated, "algebra has no integrals");
    if (colors.size() < E.links.size())
        fail(ErrorKind::IncompleteColoring, std::to_string(E.links.size()) + " components but " +
                                                std::to_string(colors.size()) + " colors");
    for (std::size_t i = 0; i < E.links.size(); ++i) {
        if (!colors[i]) fail(ErrorKind::IncompleteColoring, "component " + std::to_string(i) + " is uncolored");
        const auto& rep = colors[i]->rep;
        if (rep.A.size() != H.dim || rep.B.size() != H.dim || rep.field != H.field)
            fail(ErrorKind::AlgebraMismatch, "coloring of component " + std::to_string(i) +
                                                 " is not a representation of this double");
    }
    const auto d = H.dim;
    const Field f = H.field;
    const Vec mu = tensor_to_vec(H.integrals->mu, d, f), e = tensor_to_vec(H.integrals->e, d, f);

    AssembledNetwork out;
    Wiring w;
    std::map<int, LegRef> alpha_leg, beta_leg;  // crossing id -> open leg

    for (const auto& c : E.alpha) {
        const std::size_t n = c.seq.size();
        if (n == 0) {
            w.add(Tensor::scalar(H.eps(e)));
            ++out.alpha_nodes;
            continue;
        }
        int cur = w.add(H.integrals->e);
        std::size_t cur_out = 0;
        ++out.alpha_nodes;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            int dn = w.add(H.Delta);
            ++out.alpha_nodes;
            w.link(cur, cur_out, dn, 0);
            alpha_leg[c.seq[k]] = w.out(dn, 0);
            cur = dn;
            cur_out = 1;
        }
        alpha_leg[c.seq[n - 1]] = w.out(cur, cur_out);
    }
    for (const auto& c : E.beta) {
        const std::size_t n = c.seq.size();
        if (n == 0) {
            w.add(Tensor::scalar(pair_vec(mu, H.one())));
            ++out.beta_nodes;
            continue;
        }
        int cur = w.add(H.integrals->mu);
        std::size_t cur_in = 0;
        ++out.beta_nodes;
        for (std::size_t k = n - 1; k >= 1; --k) {
            int m = w.add(H.M);
            ++out.beta_nodes;
            w.link(m, 0, cur, cur_in);
            beta_leg[c.seq[k]] = w.in(m, 1);
            cur = m;
            cur_in = 0;
        }
        beta_leg[c.seq[0]] = w.in(cur, cur_in);
    }

    const Tensor S = H.S;
    for (const auto& [id, x] : E.crossings) {
        if (x.kind != CrossKind::AB) continue;
        if (x.eta() == 0) {
            w.net.connect(alpha_leg.at(id), beta_leg.at(id));
        } else {
            int s = w.add(S);
            w.net.connect(alpha_leg.at(id), w.in(s, 0));
            w.net.connect(w.out(s, 0), beta_leg.at(id));
        }
    }

    for (std::size_t li = 0; li < E.links.size(); ++li) {
        const auto& seq = E.links[li].seq;
        const ColoredRep& cr = *colors[li];
        const auto nV = cr.rep.dimV;
        if (seq.empty()) {
            w.add(Tensor::scalar(cr.trace.W.trace()));
            ++out.link_nodes;
            continue;
        }
        std::vector<int> slots;
        for (int id : seq) {
            const Crossing& x = E.crossing(id);
            if (x.kind == CrossKind::AL) {
                // Slot[h] = Σ_k S^eta[h;k] A[x_k]
                Tensor t = detail::matrix_family_slot(cr.rep.A, detail::antipode_power(H, x.eta(), false), d, nV, f, true);
                int s = w.add(t);
                w.net.connect(alpha_leg.at(id), {s, 0});
                slots.push_back(s);
            } else {
                // Slot_out[c] = Σ_b B[f^b] S^eta[b;c]
                Tensor t = detail::matrix_family_slot(cr.rep.B, detail::antipode_power(H, x.eta(), true), d, nV, f, false);
                int s = w.add(t);
                w.net.connect({s, 1}, beta_leg.at(id));
                slots.push_back(s);
            }
            ++out.link_nodes;
        }
        Tensor W({{Dir::In, nV}, {Dir::Out, nV}}, f);
        for (std::uint32_t j = 0; j < nV; ++j)
            for (std::uint32_t i = 0; i < nV; ++i) W.set({j, i}, cr.trace.W(j, i));
        int wn = w.add(W);
        ++out.link_nodes;
        auto row_leg = [&](std::size_t k) {
            return LegRef{slots[k], std::size_t(E.crossing(seq[k]).kind == CrossKind::AL ? 1 : 0)};
        };
        for (std::size_t k = 0; k + 1 < slots.size(); ++k) w.net.connect({slots[k], 2}, row_leg(k + 1));
        w.net.connect({slots.back(), 2}, {wn, 0});
        w.net.connect({wn, 1}, row_leg(0));
    }
    out.net = std::move(w.net);
    return out;
}

inline Scalar bracket(const Diagram& E, const HopfAlgebra& H, const ColorAssignment& colors) {
    AssembledNetwork a = assemble(E, H, colors);
    return contract(a.net).value();
}

inline Scalar bracket(const Diagram& E, const HopfAlgebra& H, const ColoredRep& everywhere) {
    return bracket(E, H, ColorAssignment(E.links.size(), &everywhere));
}

inline Scalar kuperberg(const Diagram& E, const HopfAlgebra& H) {
    if (!E.links.empty()) fail(ErrorKind::LinkPresent, "diagram has link components");
    return bracket(E, H, ColorAssignment{});
}

// Sum of the bracket over all colorings of the components by the palette, in
// lexicographic coloring order.
inline Scalar colored_state_sum(const Diagram& E, const HopfAlgebra& H, const std::vector<ColoredRep>& palette) {
    if (palette.empty()) fail(ErrorKind::PreconditionViolated, "empty palette");
    const std::size_t m = E.links.size();
    std::vector<std::size_t> col(m, 0);
    Scalar total = Scalar::zero(H.field);
    while (true) {
        ColorAssignment ca;
        for (auto c : col) ca.push_back(&palette[c]);
        total += bracket(E, H, ca);
        std::size_t k = 0;
        while (k < m && ++col[k] == palette.size()) col[k++] = 0;
        if (k == m) break;
    }
    return total;
}

}  // namespace kup
