#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "kup/double.hpp"
#include "kup/network.hpp"
#include "kup/planar.hpp"
#include "kup/wiring.hpp"

namespace kup {

struct RibbonData {
    QuasitriangularData q;
    Vec v, v_inv;
    Scalar mu_v, mu_v_inv;
    Report report;
};

// Ribbon data of a materialized double with v = u.
inline RibbonData make_ribbon(const DoubleAlgebra& dd) {
    RibbonData r{quasitriangular(dd), dd.u, dd.u_inv, Scalar::zero(dd.base.field), Scalar::zero(dd.base.field), {}};
    if (!r.q.H.integrals) fail(ErrorKind::PreconditionViolated, "double has no integrals");
    r.report = check_ribbon(r.q, r.v);
    if (!r.report.ok())
        fail(ErrorKind::VerificationFailure, "ribbon check failed: " + r.report.first_failure()->name);
    const Vec mu = tensor_to_vec(r.q.H.integrals->mu, r.q.H.dim, r.q.H.field);
    r.mu_v = pair_vec(mu, r.v);
    r.mu_v_inv = pair_vec(mu, r.v_inv);
    return r;
}

// One R-factor placed on a strand.
struct Decoration {
    std::size_t gadget = 0;
    bool over = false;
    int winding = 0;  // +2 per closure arc passed from the base point
};

struct HkrBracket {
    Scalar value;
    std::vector<std::vector<Decoration>> decorations;  // per component
};

// Positive crossings carry (S⊗id)R, negative ones R; the first factor sits on
// the over strand. Each component multiplies its factors in traversal order
// and mu is applied. All antipode powers from winding are even, so trivial.
inline HkrBracket hkr_bracket(const PlanarLink& p, const RibbonData& rd) {
    const HopfAlgebra& H = rd.q.H;
    if (!H.axioms_verified || !H.integrals) fail(ErrorKind::PreconditionViolated, "ribbon algebra not verified");
    LinkPlan plan = plan_link(p);
    HkrBracket out{Scalar::zero(H.field), {}};
    Wiring w;
    std::vector<int> rnode(plan.gadgets.size());
    for (std::size_t g = 0; g < plan.gadgets.size(); ++g)
        rnode[g] = w.add(plan.gadgets[g].sign > 0 ? rd.q.R_inv : rd.q.R);

    for (std::size_t c = 0; c < plan.traversal.size(); ++c) {
        const auto& tr = plan.traversal[c];
        std::vector<Decoration> decs;
        for (const auto& ev : tr) decs.push_back({ev.crossing, ev.over, 2 * int(ev.arc)});
        out.decorations.push_back(decs);
        const std::size_t n = tr.size();
        if (n == 0) {
            w.add(Tensor::scalar(pair_vec(tensor_to_vec(H.integrals->mu, H.dim, H.field), H.one())));
            continue;
        }
        int cur = w.add(H.integrals->mu);
        std::size_t cur_in = 0;
        auto leg_of = [&](const StrandEvent& ev) { return w.out(rnode[ev.crossing], ev.over ? 0 : 1); };
        for (std::size_t k = n - 1; k >= 1; --k) {
            int m = w.add(H.M);
            w.link(m, 0, cur, cur_in);
            w.net.connect(leg_of(tr[k]), w.in(m, 1));
            cur = m;
            cur_in = 0;
        }
        w.net.connect(leg_of(tr[0]), w.in(cur, cur_in));
    }
    out.value = contract(w.net).value();
    return out;
}

struct HkrResult {
    Scalar value, bracket;
    std::size_t components = 0;
    int signature = 0;
};

// Exact signature by congruence diagonalization over Q.
inline int signature(const std::vector<std::vector<long>>& q) {
    const std::size_t n = q.size();
    for (const auto& row : q)
        if (row.size() != n) fail(ErrorKind::NotSymmetric, "matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (q[i][j] != q[j][i])
                fail(ErrorKind::NotSymmetric, "entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs from its transpose");
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = q[i][j];
    std::vector<bool> live(n, true);
    int sig = 0;
    while (true) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n && piv == n; ++i)
            if (live[i] && sgn(a[i][i]) != 0) piv = i;
        if (piv != n) {
            sig += sgn(a[piv][piv]) > 0 ? 1 : -1;
            live[piv] = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (!live[i] || sgn(a[i][piv]) == 0) continue;
                mpq_class f = a[i][piv] / a[piv][piv];
                for (std::size_t j = 0; j < n; ++j)
                    if (live[j]) a[i][j] -= f * a[piv][j];
            }
            continue;
        }
        std::size_t pi = n, pj = n;
        for (std::size_t i = 0; i < n && pi == n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (live[i] && live[j] && sgn(a[i][j]) != 0) {
                    pi = i, pj = j;
                    break;
                }
        if (pi == n) break;
        // hyperbolic block [[0,c],[c,0]]: one positive, one negative direction
        const mpq_class c = a[pi][pj];
        live[pi] = live[pj] = false;
        std::vector<mpq_class> ri(n), rj(n);
        for (std::size_t j = 0; j < n; ++j) ri[j] = a[pi][j], rj[j] = a[pj][j];
        for (std::size_t i = 0; i < n; ++i) {
            if (!live[i]) continue;
            // subtract [a_i,pi a_i,pj] B^{-1} [rows], B^{-1} = [[0,1/c],[1/c,0]]
            const mpq_class xi = a[i][pi], xj = a[i][pj];
            for (std::size_t j = 0; j < n; ++j)
                if (live[j]) a[i][j] -= (xi * rj[j] + xj * ri[j]) / c;
        }
    }
    return sig;
}

// With omega(v) = 1 the invariant is the bracket itself, once mu(v) = mu(v^-1) = 1.
inline HkrResult hkr_invariant(const PlanarLink& p, const RibbonData& rd) {
    if (!rd.mu_v.is_one() || !rd.mu_v_inv.is_one())
        fail(ErrorKind::NormalizationUnavailable,
             "mu(v) = " + rd.mu_v.str() + ", mu(v^-1) = " + rd.mu_v_inv.str() + "; need both equal to 1");
    HkrResult r{Scalar::zero(rd.q.H.field), Scalar::zero(rd.q.H.field), 0, 0};
    r.bracket = hkr_bracket(p, rd).value;
    r.value = r.bracket;
    r.components = component_count(p);
    r.signature = signature(linking_matrix(p));
    return r;
}

}  // namespace kup
