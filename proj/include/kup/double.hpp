#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kup/hopf.hpp"

namespace kup {

// Elements of H⊗H and H⊗H⊗H as sparse coefficient maps.
using Elem2 = std::map<std::array<std::uint32_t, 2>, Scalar>;
using Elem3 = std::map<std::array<std::uint32_t, 3>, Scalar>;

namespace detail {

template <class E>
void acc(E& e, const typename E::key_type& k, const Scalar& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = e.try_emplace(k, v);
    if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) e.erase(it);
    }
}

inline Elem2 elem2_from(const Tensor& t) {
    Elem2 e;
    for (const auto& [ix, v] : t.entries()) e[{ix[0], ix[1]}] = v;
    return e;
}

inline Tensor elem2_tensor(const Elem2& e, std::uint32_t d, Field f) {
    Tensor t = Tensor::map(d, 0, 2, f);
    for (const auto& [k, v] : e) t.set({k[0], k[1]}, v);
    return t;
}

template <std::size_t N>
std::map<std::array<std::uint32_t, N>, Scalar> elem_mul(
    const HopfAlgebra& h, const std::map<std::array<std::uint32_t, N>, Scalar>& x,
    const std::map<std::array<std::uint32_t, N>, Scalar>& y) {
    std::map<std::array<std::uint32_t, N>, Scalar> r;
    for (const auto& [kx, vx] : x)
        for (const auto& [ky, vy] : y) {
            // Expand the product factor by factor.
            std::vector<std::pair<std::array<std::uint32_t, N>, Scalar>> partial{{{}, vx * vy}};
            for (std::size_t m = 0; m < N; ++m) {
                std::vector<std::pair<std::array<std::uint32_t, N>, Scalar>> next;
                for (const auto& [k, v] : partial)
                    for (const auto& [c, pv] : h.product(kx[m], ky[m])) {
                        auto k2 = k;
                        k2[m] = c;
                        next.push_back({k2, v * pv});
                    }
                partial = std::move(next);
            }
            for (const auto& [k, v] : partial) acc(r, k, v);
        }
    return r;
}

inline Elem2 one2(const HopfAlgebra& h) {
    Elem2 e;
    for (std::uint32_t a = 0; a < h.dim; ++a)
        for (std::uint32_t b = 0; b < h.dim; ++b)
            acc(e, {a, b}, h.one()[a] * h.one()[b]);
    return e;
}

inline Elem2 delta_elem(const HopfAlgebra& h, std::uint32_t a, bool cop) {
    Elem2 e;
    for (const auto& t : h.coproduct(a)) acc(e, cop ? std::array{t.j, t.i} : std::array{t.i, t.j}, t.v);
    return e;
}

inline std::string elem_diff(const Elem2& a, const Elem2& b) {
    for (const auto& [k, v] : a) {
        auto it = b.find(k);
        Scalar w = it == b.end() ? Scalar::zero(v.field()) : it->second;
        if (w != v) return "at (" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "): " + v.str() + " vs " + w.str();
    }
    for (const auto& [k, v] : b)
        if (!a.count(k)) return "at (" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "): 0 vs " + v.str();
    return {};
}

}  // namespace detail

struct QuasitriangularData {
    HopfAlgebra H;
    Tensor R;      // (0,2)
    Tensor R_inv;  // (0,2), (S⊗id)R
};

inline QuasitriangularData make_quasitriangular(HopfAlgebra h, Tensor r) {
    detail::require_shape(r, "R", h.dim, 0, 2);
    QuasitriangularData q{std::move(h), std::move(r), {}};
    Tensor ri = Tensor::map(q.H.dim, 0, 2, q.H.field);
    for (const auto& [ix, v] : q.R.entries())
        for (const auto& [c, s] : q.H.antipode(ix[0])) ri.add({c, ix[1]}, v * s);
    q.R_inv = ri;
    return q;
}

// Quasitriangular axioms and their standard consequences.
inline Report check_quasitriangular(const QuasitriangularData& q) {
    using namespace detail;
    const HopfAlgebra& h = q.H;
    const auto d = h.dim;
    Report r;
    Elem2 R = elem2_from(q.R), Ri = elem2_from(q.R_inv), one = one2(h);
    r.add("R R^-1 = 1⊗1", elem_mul(h, R, Ri) == one, elem_diff(elem_mul(h, R, Ri), one));
    r.add("R^-1 R = 1⊗1", elem_mul(h, Ri, R) == one, elem_diff(elem_mul(h, Ri, R), one));

    bool inter = true;
    std::string w;
    for (std::uint32_t a = 0; a < d && inter; ++a) {
        Elem2 lhs = elem_mul(h, delta_elem(h, a, true), R);
        Elem2 rhs = elem_mul(h, R, delta_elem(h, a, false));
        if (lhs != rhs) inter = false, w = "x" + std::to_string(a) + " " + elem_diff(lhs, rhs);
    }
    r.add("Delta^cop(x) R = R Delta(x)", inter, w);

    // R13 R23 and R13 R12 against the coproduct applied to one leg.
    Elem3 r13, r23, r12, dl, dr;
    for (const auto& [k, v] : R) {
        for (std::uint32_t a = 0; a < d; ++a) {
            Scalar o = h.one()[a];
            if (o.is_zero()) continue;
            acc(r13, {k[0], a, k[1]}, v * o);
            acc(r23, {a, k[0], k[1]}, v * o);
            acc(r12, {k[0], k[1], a}, v * o);
        }
        for (const auto& t : h.coproduct(k[0])) acc(dl, {t.i, t.j, k[1]}, v * t.v);
        for (const auto& t : h.coproduct(k[1])) acc(dr, {k[0], t.i, t.j}, v * t.v);
    }
    r.add("(Delta⊗id)R = R13 R23", dl == elem_mul(h, r13, r23), "differs");
    r.add("(id⊗Delta)R = R13 R12", dr == elem_mul(h, r13, r12), "differs");

    Elem2 ss;
    for (const auto& [k, v] : R)
        for (const auto& [c1, s1] : h.antipode(k[0]))
            for (const auto& [c2, s2] : h.antipode(k[1])) acc(ss, {c1, c2}, v * s1 * s2);
    r.add("(S⊗S)R = R", ss == R, elem_diff(ss, R));

    Vec el(d, h.zero()), er(d, h.zero());
    for (const auto& [k, v] : R) {
        el[k[1]] += h.counit_vec()[k[0]] * v;
        er[k[0]] += h.counit_vec()[k[1]] * v;
    }
    r.add("(eps⊗id)R = 1", el == h.one());
    r.add("(id⊗eps)R = 1", er == h.one());
    return r;
}

// Left multiplication matrix of x (column b = x·x_b).
inline Matrix left_mul_matrix(const HopfAlgebra& h, const Vec& x) {
    Matrix m(h.dim, h.dim, h.field);
    for (std::uint32_t b = 0; b < h.dim; ++b) {
        Vec y = h.mul(x, h.basis(b));
        for (std::uint32_t c = 0; c < h.dim; ++c) m(c, b) = y[c];
    }
    return m;
}

inline std::optional<Vec> invert_element(const HopfAlgebra& h, const Vec& x) {
    auto inv = inverse(left_mul_matrix(h, x));
    if (!inv) return std::nullopt;
    Vec r(h.dim, h.zero());
    for (std::uint32_t c = 0; c < h.dim; ++c)
        for (std::uint32_t b = 0; b < h.dim; ++b) r[c] += (*inv)(c, b) * h.one()[b];
    return r;
}

struct DrinfeldElement {
    Vec u, u_inv;
    Report report;
};

// u = Σ S(R'') R', with invertibility, S(u) = u (involutory case) and
// S²(x) = u x u^-1 checked on the basis.
inline DrinfeldElement drinfeld_element(const QuasitriangularData& q) {
    const HopfAlgebra& h = q.H;
    Vec u(h.dim, h.zero());
    for (const auto& [ix, v] : q.R.entries()) {
        Vec t = h.mul(h.apply_S(h.basis(ix[1])), h.basis(ix[0]));
        for (std::uint32_t c = 0; c < h.dim; ++c) u[c] += v * t[c];
    }
    DrinfeldElement out{u, {}, {}};
    auto inv = invert_element(h, u);
    out.report.add("u invertible", inv.has_value());
    if (!inv) return out;
    out.u_inv = *inv;
    out.report.add("u u^-1 = 1", h.mul(u, *inv) == h.one() && h.mul(*inv, u) == h.one());
    bool conj = true;
    std::string w;
    for (std::uint32_t a = 0; a < h.dim && conj; ++a) {
        Vec s2 = h.apply_S(h.apply_S(h.basis(a)));
        if (s2 != h.mul(h.mul(u, h.basis(a)), *inv)) conj = false, w = "x" + std::to_string(a);
    }
    out.report.add("S^2(x) = u x u^-1", conj, w);
    if (h.involutory) out.report.add("S(u) = u", h.apply_S(u) == u);
    return out;
}

// Ribbon identities for a candidate v.
inline Report check_ribbon(const QuasitriangularData& q, const Vec& v) {
    using namespace detail;
    const HopfAlgebra& h = q.H;
    Report r;
    bool central = true;
    std::string w;
    for (std::uint32_t a = 0; a < h.dim && central; ++a)
        if (h.mul(v, h.basis(a)) != h.mul(h.basis(a), v)) central = false, w = "x" + std::to_string(a);
    r.add("v central", central, w);
    DrinfeldElement de = drinfeld_element(q);
    r.add("v^2 = u S(u)", h.mul(v, v) == h.mul(de.u, h.apply_S(de.u)));
    r.add("S(v) = v", h.apply_S(v) == v);
    r.add("eps(v) = 1", h.eps(v).is_one(), h.eps(v).str());
    // Delta(v) (R21 R) = v⊗v, equivalent to Delta(v) = (v⊗v)(R21 R)^-1.
    Elem2 R = elem2_from(q.R), R21, dv, vv;
    for (const auto& [k, x] : R) R21[{k[1], k[0]}] = x;
    for (std::uint32_t a = 0; a < h.dim; ++a) {
        if (v[a].is_zero()) continue;
        for (const auto& t : h.coproduct(a)) acc(dv, {t.i, t.j}, v[a] * t.v);
        for (std::uint32_t b = 0; b < h.dim; ++b) acc(vv, {a, b}, v[a] * v[b]);
    }
    Elem2 lhs = elem_mul(h, dv, elem_mul(h, R21, R));
    r.add("Delta(v) = (v⊗v)(R21 R)^-1", lhs == vv, elem_diff(lhs, vv));
    return r;
}

// D(H) = H*⊗H, basis f^a⊗x_b at index a*d + b.
//   (f⊗x)(g⊗y) = Σ f·g(S(x3) - x1) ⊗ x2 y
//   Delta(f⊗x) = Σ (f2⊗x1)⊗(f1⊗x2),  f(ab) = f1(a) f2(b)
//   S(f⊗x) = (eps⊗S x)(f∘S⊗1),  R = Σ_b (eps⊗x_b)⊗(f^b⊗1)
struct DoubleAlgebra {
    HopfAlgebra base;
    HopfAlgebra D;  // structure tensors; D.M stays empty when not materialized
    bool materialized = false;
    std::uint32_t factor_dim = 1;
    Tensor R, R_inv;       // (0,2) over D
    Vec u, u_inv;
    Tensor lambda, ell;    // lambda = e⊗mu as (1,0), ell = mu⊗e as (0,1)
    Report report;

    std::uint32_t dim() const { return factor_dim * factor_dim; }
    std::uint32_t index(std::uint32_t dual, std::uint32_t b) const { return dual * factor_dim + b; }
    std::uint32_t dual_part(std::uint32_t i) const { return i / factor_dim; }
    std::uint32_t base_part(std::uint32_t i) const { return i % factor_dim; }

    SVec mul_basis(std::uint32_t i, std::uint32_t j) const {
        if (materialized) return D.product(i, j);
        return compute_product(i, j);
    }
    Vec mul(const Vec& x, const Vec& y) const {
        if (materialized) return D.mul(x, y);
        Vec r(dim(), Scalar::zero(base.field));
        for (std::uint32_t a = 0; a < dim(); ++a) {
            if (x[a].is_zero()) continue;
            for (std::uint32_t b = 0; b < dim(); ++b) {
                if (y[b].is_zero()) continue;
                for (const auto& [c, v] : compute_product(a, b)) r[c] += x[a] * y[b] * v;
            }
        }
        return r;
    }
    Vec apply_S(const Vec& x) const {
        Vec r(dim(), Scalar::zero(base.field));
        for (std::uint32_t i = 0; i < dim(); ++i) {
            if (x[i].is_zero()) continue;
            for (const auto& [c, v] : antipode_basis(i)) r[c] += x[i] * v;
        }
        return r;
    }

    // Structure maps straight from the formulas above.
    SVec compute_product(std::uint32_t i, std::uint32_t j) const;
    std::vector<Term2> compute_coproduct(std::uint32_t i) const;
    SVec antipode_basis(std::uint32_t i) const;

    void prepare();

private:
    struct Cache {
        std::vector<std::vector<std::array<std::uint32_t, 3>>> d2_idx;  // Delta²(x_b)
        std::vector<std::vector<Scalar>> d2_val;
        std::vector<SVec> dual_mul;                           // f^a f^k
        std::vector<std::vector<Term2>> m_by_out;             // M entries by output
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Vec>> conj;
    };
    std::shared_ptr<Cache> cache_;
    const std::vector<Vec>& conj_table(std::uint32_t b3, std::uint32_t b1) const;
};

inline void DoubleAlgebra::prepare() {
    const auto d = factor_dim;
    cache_ = std::make_shared<Cache>();
    auto& c = *cache_;
    c.d2_idx.assign(d, {});
    c.d2_val.assign(d, {});
    for (std::uint32_t b = 0; b < d; ++b)
        for (const auto& t : base.coproduct(b))
            for (const auto& s : base.coproduct(t.i)) {
                c.d2_idx[b].push_back({s.i, s.j, t.j});
                c.d2_val[b].push_back(t.v * s.v);
            }
    c.dual_mul.assign(std::size_t(d) * d, {});
    for (std::uint32_t m = 0; m < d; ++m)
        for (const auto& t : base.coproduct(m)) c.dual_mul[t.i * d + t.j].push_back({m, t.v});
    c.m_by_out.assign(d, {});
    for (const auto& [ix, v] : base.M.entries()) c.m_by_out[ix[2]].push_back({ix[0], ix[1], v});
}

// conj[k][c] = coefficient of x_c in S(x_b3) x_k x_b1.
inline const std::vector<Vec>& DoubleAlgebra::conj_table(std::uint32_t b3, std::uint32_t b1) const {
    auto& c = *cache_;
    auto it = c.conj.find({b3, b1});
    if (it != c.conj.end()) return it->second;
    std::vector<Vec> tab;
    Vec sb3 = base.apply_S(base.basis(b3));
    for (std::uint32_t k = 0; k < factor_dim; ++k)
        tab.push_back(base.mul(base.mul(sb3, base.basis(k)), base.basis(b1)));
    return c.conj.emplace(std::pair{b3, b1}, std::move(tab)).first->second;
}

inline SVec DoubleAlgebra::compute_product(std::uint32_t i, std::uint32_t j) const {
    const auto d = factor_dim;
    const std::uint32_t a = i / d, b = i % d, c = j / d, e = j % d;
    std::map<std::uint32_t, Scalar> accm;
    const auto& idx = cache_->d2_idx[b];
    for (std::size_t t = 0; t < idx.size(); ++t) {
        const auto [b1, b2, b3] = idx[t];
        const Scalar& v = cache_->d2_val[b][t];
        const auto& tab = conj_table(b3, b1);
        const auto& prod = base.product(b2, e);
        if (prod.empty()) continue;
        for (std::uint32_t k = 0; k < d; ++k) {
            const Scalar& w = tab[k][c];
            if (w.is_zero()) continue;
            for (const auto& [m, dv] : cache_->dual_mul[a * d + k])
                for (const auto& [n, pv] : prod) detail::acc(accm, m * d + n, v * w * dv * pv);
        }
    }
    return {accm.begin(), accm.end()};
}

inline std::vector<Term2> DoubleAlgebra::compute_coproduct(std::uint32_t i) const {
    const auto d = factor_dim;
    const std::uint32_t a = i / d, b = i % d;
    std::map<std::array<std::uint32_t, 2>, Scalar> accm;
    for (const auto& m : cache_->m_by_out[a])
        for (const auto& t : base.coproduct(b))
            detail::acc(accm, {m.j * d + t.i, m.i * d + t.j}, m.v * t.v);
    std::vector<Term2> out;
    for (const auto& [k, v] : accm) out.push_back({k[0], k[1], v});
    return out;
}

inline SVec DoubleAlgebra::antipode_basis(std::uint32_t i) const {
    const auto d = factor_dim;
    const std::uint32_t a = i / d, b = i % d;
    const Scalar zero = Scalar::zero(base.field);
    Vec left(dim(), zero), right(dim(), zero);
    Vec sx = base.apply_S(base.basis(b));
    for (std::uint32_t c = 0; c < d; ++c)
        for (std::uint32_t n = 0; n < d; ++n) left[c * d + n] = base.counit_vec()[c] * sx[n];
    // f^a∘S = Σ_k f^a(S x_k) f^k
    for (std::uint32_t k = 0; k < d; ++k) {
        Scalar coef = zero;
        for (const auto& [t, v] : base.antipode(k))
            if (t == a) coef += v;
        if (coef.is_zero()) continue;
        for (std::uint32_t q = 0; q < d; ++q) right[k * d + q] += coef * base.one()[q];
    }
    Vec r(dim(), zero);
    for (std::uint32_t x = 0; x < dim(); ++x) {
        if (left[x].is_zero()) continue;
        for (std::uint32_t y = 0; y < dim(); ++y) {
            if (right[y].is_zero()) continue;
            for (const auto& [c, v] : compute_product(x, y)) r[c] += left[x] * right[y] * v;
        }
    }
    SVec out;
    for (std::uint32_t c = 0; c < dim(); ++c)
        if (!r[c].is_zero()) out.push_back({c, r[c]});
    return out;
}

inline constexpr std::uint32_t kDefaultDoubleThreshold = 64;

// Builds D(H). Above the threshold the product stays lazy and the axiom suite
// on D itself is skipped; R, u and the integrals are always built.
inline DoubleAlgebra drinfeld_double(HopfAlgebra h,
                                     std::uint32_t threshold = kDefaultDoubleThreshold) {
    require_verified(h);
    if (!h.involutory) fail(ErrorKind::PreconditionViolated, "algebra is not involutory");
    const IntegralPair ip = ensure_integrals(h);
    DoubleAlgebra dd;
    dd.base = std::move(h);
    const HopfAlgebra& b = dd.base;
    const auto d = b.dim;
    const Field f = b.field;
    const Scalar one = Scalar::one(f);
    dd.factor_dim = d;
    dd.prepare();
    const std::uint32_t n = d * d;

    HopfAlgebra& D = dd.D;
    D.dim = n;
    D.field = f;
    for (std::uint32_t a = 0; a < d; ++a)
        for (std::uint32_t c = 0; c < d; ++c) D.labels.push_back(b.labels[a] + "*⊗" + b.labels[c]);
    D.unit = Tensor::map(n, 0, 1, f);
    D.counit = Tensor::map(n, 1, 0, f);
    for (std::uint32_t a = 0; a < d; ++a)
        for (std::uint32_t c = 0; c < d; ++c) {
            D.unit.set({dd.index(a, c)}, b.counit_vec()[a] * b.one()[c]);
            D.counit.set({dd.index(a, c)}, b.one()[a] * b.counit_vec()[c]);
        }
    D.Delta = Tensor::map(n, 1, 2, f);
    D.S = Tensor::map(n, 1, 1, f);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (const auto& t : dd.compute_coproduct(i)) D.Delta.set({i, t.i, t.j}, t.v);
        for (const auto& [c, v] : dd.antipode_basis(i)) D.S.set({i, c}, v);
    }
    D.M = Tensor::map(n, 2, 1, f);
    dd.materialized = n <= threshold;
    if (dd.materialized)
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j)
                for (const auto& [c, v] : dd.compute_product(i, j)) D.M.set({i, j, c}, v);
    D.finalize();

    Vec mu = tensor_to_vec(ip.mu, d, f), e = tensor_to_vec(ip.e, d, f);
    dd.R = Tensor::map(n, 0, 2, f);
    for (std::uint32_t x = 0; x < d; ++x)
        for (std::uint32_t c = 0; c < d; ++c)
            for (std::uint32_t q = 0; q < d; ++q)
                dd.R.add({dd.index(c, x), dd.index(x, q)}, b.counit_vec()[c] * b.one()[q]);
    dd.R_inv = Tensor::map(n, 0, 2, f);
    for (const auto& [ix, v] : dd.R.entries())
        for (const auto& [c, s] : dd.antipode_basis(ix[0])) dd.R_inv.add({c, ix[1]}, v * s);

    dd.lambda = Tensor::map(n, 1, 0, f);
    dd.ell = Tensor::map(n, 0, 1, f);
    for (std::uint32_t a = 0; a < d; ++a)
        for (std::uint32_t c = 0; c < d; ++c) {
            dd.lambda.set({dd.index(a, c)}, e[a] * mu[c]);
            dd.ell.set({dd.index(a, c)}, mu[a] * e[c]);
        }

    // u = Σ S(R'') R'
    dd.u = Vec(n, Scalar::zero(f));
    for (const auto& [ix, v] : dd.R.entries()) {
        Vec sr(n, Scalar::zero(f)), rp(n, Scalar::zero(f));
        for (const auto& [c, s] : dd.antipode_basis(ix[1])) sr[c] += s;
        rp[ix[0]] = one;
        Vec t = dd.mul(sr, rp);
        for (std::uint32_t c = 0; c < n; ++c) dd.u[c] += v * t[c];
    }

    Report& rep = dd.report;
    Vec lam = tensor_to_vec(dd.lambda, n, f), el = tensor_to_vec(dd.ell, n, f);
    rep.add("lambda(ell) = 1", pair_vec(lam, el).is_one(), pair_vec(lam, el).str());
    if (dd.materialized) {
        Report ax = check_axioms(D);
        for (auto& it : ax.items) rep.items.push_back({"D: " + it.name, it.pass, it.witness});
        if (!D.axioms_verified || !D.involutory)
            fail(ErrorKind::VerificationFailure, "double fails its axioms: " + ax.str());
        IntegralPair dip{dd.lambda, dd.ell, one};
        for (auto& it : check_integrals(D, dip).items)
            rep.items.push_back({"D: " + it.name, it.pass, it.witness});
        D.integrals = dip;
        QuasitriangularData q = make_quasitriangular(D, dd.R);
        for (auto& it : check_quasitriangular(q).items)
            rep.items.push_back({"D: " + it.name, it.pass, it.witness});
        DrinfeldElement de = drinfeld_element(q);
        for (auto& it : de.report.items) rep.items.push_back({"D: " + it.name, it.pass, it.witness});
        if (de.u != dd.u) rep.add("D: u matches", false, "drinfeld_element disagrees");
        dd.u_inv = de.u_inv;
        if (!rep.ok())
            fail(ErrorKind::VerificationFailure,
                 "double invariant '" + rep.first_failure()->name + "' fails: " + rep.first_failure()->witness);
    } else {
        Matrix lm(n, n, f);
        for (std::uint32_t j = 0; j < n; ++j) {
            Vec y = dd.mul(dd.u, D.basis(j));
            for (std::uint32_t c = 0; c < n; ++c) lm(c, j) = y[c];
        }
        auto inv = inverse(lm);
        if (!inv) fail(ErrorKind::VerificationFailure, "Drinfeld element is not invertible");
        dd.u_inv = Vec(n, Scalar::zero(f));
        for (std::uint32_t c = 0; c < n; ++c)
            for (std::uint32_t j = 0; j < n; ++j) dd.u_inv[c] += (*inv)(c, j) * D.one()[j];
        rep.add("D: S(u) = u", dd.apply_S(dd.u) == dd.u);
    }
    return dd;
}

inline QuasitriangularData quasitriangular(const DoubleAlgebra& dd) {
    if (!dd.materialized)
        fail(ErrorKind::PreconditionViolated, "double is not materialized (raise the threshold)");
    return make_quasitriangular(dd.D, dd.R);
}

}  // namespace kup
