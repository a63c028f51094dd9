#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kup/linalg.hpp"
#include "kup/report.hpp"
#include "kup/wiring.hpp"

namespace kup {

using SVec = std::vector<std::pair<std::uint32_t, Scalar>>;

struct Term2 {
    std::uint32_t i, j;
    Scalar v;
};

struct IntegralPair {
    Tensor mu;  // (1,0)
    Tensor e;   // (0,1)
    Scalar scale;  // factor applied to the raw cointegral to reach mu(e) = 1
};

// Finite-dimensional Hopf algebra given by structure tensors over a basis:
// M (2,1), unit (0,1), Delta (1,2), counit (1,0), S (1,1).
struct HopfAlgebra {
    std::uint32_t dim = 1;
    std::vector<std::string> labels;
    Field field{};
    Tensor M, unit, Delta, counit, S;
    bool axioms_verified = false;
    bool involutory = false;
    std::optional<IntegralPair> integrals;

    // Rebuild the lookup tables after the tensors change.
    void finalize() {
        mul_.assign(std::size_t(dim) * dim, {});
        for (const auto& [ix, v] : M.entries()) mul_[ix[0] * dim + ix[1]].push_back({ix[2], v});
        comul_.assign(dim, {});
        for (const auto& [ix, v] : Delta.entries()) comul_[ix[0]].push_back({ix[1], ix[2], v});
        ant_.assign(dim, {});
        for (const auto& [ix, v] : S.entries()) ant_[ix[0]].push_back({ix[1], v});
        one_ = Vec(dim, zero());
        for (const auto& [ix, v] : unit.entries()) one_[ix[0]] = v;
        eps_ = Vec(dim, zero());
        for (const auto& [ix, v] : counit.entries()) eps_[ix[0]] = v;
    }

    Scalar zero() const { return Scalar::zero(field); }
    Scalar one_scalar() const { return Scalar::one(field); }

    Vec basis(std::uint32_t a) const {
        Vec v(dim, zero());
        v[a] = one_scalar();
        return v;
    }
    const Vec& one() const { return one_; }
    const Vec& counit_vec() const { return eps_; }
    const SVec& product(std::uint32_t a, std::uint32_t b) const { return mul_[a * dim + b]; }
    const std::vector<Term2>& coproduct(std::uint32_t a) const { return comul_[a]; }
    const SVec& antipode(std::uint32_t a) const { return ant_[a]; }

    Vec mul(const Vec& x, const Vec& y) const {
        Vec r(dim, zero());
        for (std::uint32_t a = 0; a < dim; ++a) {
            if (x[a].is_zero()) continue;
            for (std::uint32_t b = 0; b < dim; ++b) {
                if (y[b].is_zero()) continue;
                Scalar xy = x[a] * y[b];
                for (const auto& [c, v] : product(a, b)) r[c] += xy * v;
            }
        }
        return r;
    }
    Vec apply_S(const Vec& x) const {
        Vec r(dim, zero());
        for (std::uint32_t a = 0; a < dim; ++a) {
            if (x[a].is_zero()) continue;
            for (const auto& [c, v] : antipode(a)) r[c] += x[a] * v;
        }
        return r;
    }
    Scalar eps(const Vec& x) const {
        Scalar s = zero();
        for (std::uint32_t a = 0; a < dim; ++a)
            if (!x[a].is_zero() && !eps_[a].is_zero()) s += x[a] * eps_[a];
        return s;
    }
    // Element of H⊗H as a dim×dim coefficient matrix.
    Matrix comul(const Vec& x) const {
        Matrix m(dim, dim, field);
        for (std::uint32_t a = 0; a < dim; ++a) {
            if (x[a].is_zero()) continue;
            for (const auto& t : coproduct(a)) m(t.i, t.j) += x[a] * t.v;
        }
        return m;
    }

private:
    std::vector<SVec> mul_;
    std::vector<std::vector<Term2>> comul_;
    std::vector<SVec> ant_;
    Vec one_, eps_;
};

inline Vec tensor_to_vec(const Tensor& t, std::uint32_t dim, Field f) {
    Vec v(dim, Scalar::zero(f));
    for (const auto& [ix, x] : t.entries()) v[ix[0]] = x;
    return v;
}

inline Tensor vec_to_tensor(const Vec& v, Dir d, Field f) {
    Tensor t({{d, static_cast<std::uint32_t>(v.size())}}, f);
    for (std::uint32_t a = 0; a < v.size(); ++a) t.set({a}, v[a]);
    return t;
}

inline Scalar pair_vec(const Vec& f, const Vec& x) {
    Scalar s = f.empty() ? Scalar() : Scalar::zero(f[0].field());
    for (std::size_t a = 0; a < f.size(); ++a)
        if (!f[a].is_zero() && !x[a].is_zero()) s += f[a] * x[a];
    return s;
}

namespace detail {

inline void require_shape(const Tensor& t, const char* name, std::uint32_t dim, int n_in,
                          int n_out) {
    if (t.rank() != std::size_t(n_in + n_out) || t.n_in() != n_in || t.n_out() != n_out)
        fail(ErrorKind::ShapeMismatch, std::string(name) + " must be a (" +
                                           std::to_string(n_in) + "," + std::to_string(n_out) +
                                           ") tensor");
    for (const auto& l : t.legs())
        if (l.dim != dim)
            fail(ErrorKind::ShapeMismatch, std::string(name) + " has a leg of dimension " +
                                               std::to_string(l.dim) + ", expected " +
                                               std::to_string(dim));
    for (std::size_t k = 0; k < t.rank(); ++k)
        if (t.leg(k).dir != (int(k) < n_in ? Dir::In : Dir::Out))
            fail(ErrorKind::ShapeMismatch, std::string(name) + " is not in standard leg order");
}

inline Tensor id2(std::uint32_t d, Field f) {
    Tensor t = Tensor::map(d, 2, 2, f);
    for (std::uint32_t a = 0; a < d; ++a)
        for (std::uint32_t b = 0; b < d; ++b) t.set({a, b, a, b}, Scalar::one(f));
    return t;
}

// M after S⊗S, i.e. x⊗y ↦ S(y)S(x) when fed through M^op.
inline Tensor swap_ins(const Tensor& m) { return m.permuted({1, 0, 2}); }
inline Tensor swap_outs(const Tensor& d) { return d.permuted({0, 2, 1}); }

// The four ladder maps x⊗y ↦ x y1 ⊗ y2, x S(y1) ⊗ y2, x y2 ⊗ y1, x S(y2) ⊗ y1.
inline Tensor ladder(const HopfAlgebra& h, bool with_s, bool cop) {
    Wiring w;
    int m = w.add(h.M);
    int d = w.add(cop ? swap_outs(h.Delta) : h.Delta);
    if (with_s) {
        int s = w.add(h.S);
        w.link(d, 0, s, 0);
        w.link(s, 0, m, 1);
    } else {
        w.link(d, 0, m, 1);
    }
    return w.result({w.in(m, 0), w.in(d, 0), w.out(m, 0), w.out(d, 1)});
}

inline Tensor compose22(const Tensor& a, const Tensor& b) {
    Wiring w;
    int x = w.add(a), y = w.add(b);
    w.link(x, 0, y, 0);
    w.link(x, 1, y, 1);
    return w.result({w.in(x, 0), w.in(x, 1), w.out(y, 0), w.out(y, 1)});
}

}  // namespace detail

// Per-identity verification of the Hopf axioms, the standard consequences and
// the ladder lemma. Sets the verified/involutory flags on the algebra.
inline Report check_axioms(HopfAlgebra& h) {
    using namespace detail;
    const auto d = h.dim;
    const Field f = h.field;
    require_shape(h.M, "M", d, 2, 1);
    require_shape(h.unit, "unit", d, 0, 1);
    require_shape(h.Delta, "Delta", d, 1, 2);
    require_shape(h.counit, "counit", d, 1, 0);
    require_shape(h.S, "S", d, 1, 1);
    h.finalize();

    Report r;
    const Tensor id = Tensor::identity(d, f);
    add_equality(r, "associativity", tensor_compose(h.M, 0, h.M, 0), tensor_compose(h.M, 0, h.M, 1));
    add_equality(r, "left unit", tensor_compose(h.unit, 0, h.M, 0), id);
    add_equality(r, "right unit", tensor_compose(h.unit, 0, h.M, 1), id);
    add_equality(r, "coassociativity", tensor_compose(h.Delta, 0, h.Delta, 0),
                 tensor_compose(h.Delta, 1, h.Delta, 0));
    add_equality(r, "left counit", tensor_compose(h.Delta, 0, h.counit, 0), id);
    add_equality(r, "right counit", tensor_compose(h.Delta, 1, h.counit, 0), id);

    {
        Wiring w;
        int da = w.add(h.Delta), db = w.add(h.Delta), m1 = w.add(h.M), m2 = w.add(h.M);
        w.link(da, 0, m1, 0);
        w.link(db, 0, m1, 1);
        w.link(da, 1, m2, 0);
        w.link(db, 1, m2, 1);
        Tensor rhs = w.result({w.in(da, 0), w.in(db, 0), w.out(m1, 0), w.out(m2, 0)});
        add_equality(r, "bialgebra", tensor_compose(h.M, 0, h.Delta, 0), rhs);
    }
    add_equality(r, "counit multiplicative", tensor_compose(h.M, 0, h.counit, 0),
                 outer(h.counit, h.counit));
    add_equality(r, "unit comultiplicative", tensor_compose(h.unit, 0, h.Delta, 0),
                 outer(h.unit, h.unit));
    add_equality(r, "counit of unit", tensor_compose(h.unit, 0, h.counit, 0),
                 Tensor::scalar(Scalar::one(f)));

    auto antipode_side = [&](std::size_t s_leg) {
        Wiring w;
        int dd = w.add(h.Delta), s = w.add(h.S), m = w.add(h.M);
        w.link(dd, s_leg, s, 0);
        w.link(s, 0, m, s_leg);
        w.link(dd, 1 - s_leg, m, 1 - s_leg);
        return w.result({w.in(dd, 0), w.out(m, 0)});
    };
    Tensor eps_unit = outer(h.counit, h.unit);
    add_equality(r, "left antipode", antipode_side(0), eps_unit);
    add_equality(r, "right antipode", antipode_side(1), eps_unit);

    {
        Wiring w;
        int sa = w.add(h.S), sb = w.add(h.S), m = w.add(swap_ins(h.M));
        w.link(sa, 0, m, 0);
        w.link(sb, 0, m, 1);
        Tensor rhs = w.result({w.in(sa, 0), w.in(sb, 0), w.out(m, 0)});
        add_equality(r, "antipode anti-multiplicative", tensor_compose(h.M, 0, h.S, 0), rhs);
    }
    add_equality(r, "antipode of unit", tensor_compose(h.unit, 0, h.S, 0), h.unit);
    {
        Wiring w;
        int dd = w.add(swap_outs(h.Delta)), sa = w.add(h.S), sb = w.add(h.S);
        w.link(dd, 0, sa, 0);
        w.link(dd, 1, sb, 0);
        Tensor rhs = w.result({w.in(dd, 0), w.out(sa, 0), w.out(sb, 0)});
        add_equality(r, "antipode anti-comultiplicative", tensor_compose(h.S, 0, h.Delta, 0), rhs);
    }

    const Tensor i2 = id2(d, f);
    auto ladder_invertible = [&](const Tensor& a, const Tensor& b) {
        if (compose22(a, b) == i2 && compose22(b, a) == i2) return true;
        if (std::uint64_t(d) * d > 256) return false;
        Matrix m(d * d, d * d, f);
        for (const auto& [ix, v] : a.entries()) m(ix[2] * d + ix[3], ix[0] * d + ix[1]) = v;
        return rank(m) == std::size_t(d) * d;
    };
    Tensor l1 = ladder(h, false, false), l2 = ladder(h, true, false);
    Tensor l3 = ladder(h, false, true), l4 = ladder(h, true, true);
    r.add("ladder x⊗y -> x y1⊗y2 invertible", ladder_invertible(l1, l2), "singular");
    r.add("ladder x⊗y -> x S(y1)⊗y2 invertible", ladder_invertible(l2, l1), "singular");
    r.add("ladder x⊗y -> x y2⊗y1 invertible", ladder_invertible(l3, l4), "singular");
    r.add("ladder x⊗y -> x S(y2)⊗y1 invertible", ladder_invertible(l4, l3), "singular");

    h.axioms_verified = r.ok();
    Tensor ss = tensor_compose(h.S, 0, h.S, 0);
    add_equality(r, "involutory", ss, id);
    h.involutory = (ss == id);
    return r;
}

inline void require_verified(HopfAlgebra& h) {
    if (h.axioms_verified) return;
    Report r = check_axioms(h);
    if (!h.axioms_verified)
        fail(ErrorKind::VerificationFailure, "axiom '" + r.first_failure()->name + "' fails: " +
                                                 r.first_failure()->witness);
}

// Two-sided integral and cointegral, normalized so that mu(e) = 1.
inline IntegralPair solve_integrals(HopfAlgebra& h) {
    require_verified(h);
    if (!h.involutory) fail(ErrorKind::PreconditionViolated, "algebra is not involutory");
    const auto d = h.dim;
    const Field f = h.field;
    // Unknown mu_c: (id⊗mu)Delta(x_a) - mu_a 1 = 0 for every a and output k.
    auto integral_system = [&](bool left) {
        Matrix sys(std::size_t(d) * d, d, f);
        for (std::uint32_t a = 0; a < d; ++a) {
            for (const auto& t : h.coproduct(a)) {
                std::uint32_t k = left ? t.i : t.j, c = left ? t.j : t.i;
                sys(a * d + k, c) += t.v;
            }
            for (std::uint32_t k = 0; k < d; ++k) sys(a * d + k, a) -= h.one()[k];
        }
        return sys;
    };
    // Unknown e_c: e x_b - eps(x_b) e = 0 (or x_b e) for every b and output k.
    auto cointegral_system = [&](bool left) {
        Matrix sys(std::size_t(d) * d, d, f);
        for (std::uint32_t b = 0; b < d; ++b) {
            for (std::uint32_t c = 0; c < d; ++c)
                for (const auto& [k, v] : left ? h.product(c, b) : h.product(b, c))
                    sys(b * d + k, c) += v;
            for (std::uint32_t k = 0; k < d; ++k) sys(b * d + k, k) -= h.counit_vec()[b];
        }
        return sys;
    };
    auto satisfies = [&](const Matrix& sys, const Vec& x) {
        for (std::size_t row = 0; row < sys.rows; ++row) {
            Scalar s = Scalar::zero(f);
            for (std::size_t c = 0; c < sys.cols; ++c)
                if (!sys(row, c).is_zero() && !x[c].is_zero()) s += sys(row, c) * x[c];
            if (!s.is_zero()) return false;
        }
        return true;
    };

    auto mus = nullspace(integral_system(true));
    auto es = nullspace(cointegral_system(true));
    if (mus.empty() || es.empty())
        fail(ErrorKind::VerificationFailure, "integral space is zero (not a Hopf algebra?)");
    Vec mu = mus.front(), e = es.front();
    if (!satisfies(integral_system(false), mu))
        fail(ErrorKind::NotTwoSided, "left integral is not a right integral");
    if (!satisfies(cointegral_system(false), e))
        fail(ErrorKind::NotTwoSided, "left cointegral is not a right cointegral");
    Scalar mue = pair_vec(mu, e);
    if (mue.is_zero())
        fail(ErrorKind::NotNormalizable, "mu(e) = 0 in this field");
    Scalar scale = mue.inverse();
    for (auto& x : e) x *= scale;
    // eps(e) mu(1) = 0 means not semisimple (k[G] with char | |G|)
    Scalar ss = h.eps(e) * pair_vec(mu, h.one());
    if (ss.is_zero())
        fail(ErrorKind::NotNormalizable, "eps(e) mu(1) = 0 in this field (not semisimple)");
    IntegralPair ip{vec_to_tensor(mu, Dir::In, f), vec_to_tensor(e, Dir::Out, f), scale};
    h.integrals = ip;
    return ip;
}

inline const IntegralPair& ensure_integrals(HopfAlgebra& h) {
    if (!h.integrals) solve_integrals(h);
    return *h.integrals;
}

// Identity report for an integral pair: two-sidedness, normalization and
// antipode invariance.
inline Report check_integrals(const HopfAlgebra& h, const IntegralPair& ip) {
    Report r;
    const auto d = h.dim;
    Vec mu = tensor_to_vec(ip.mu, d, h.field), e = tensor_to_vec(ip.e, d, h.field);
    bool left = true, right = true, cl = true, cr = true;
    std::string wl, wr, wcl, wcr;
    for (std::uint32_t a = 0; a < d; ++a) {
        Matrix c = h.comul(h.basis(a));
        Vec lhs_l(d, h.zero()), lhs_r(d, h.zero());
        for (std::uint32_t i = 0; i < d; ++i)
            for (std::uint32_t j = 0; j < d; ++j) {
                if (c(i, j).is_zero()) continue;
                lhs_l[i] += c(i, j) * mu[j];
                lhs_r[j] += c(i, j) * mu[i];
            }
        Vec want(d, h.zero());
        for (std::uint32_t k = 0; k < d; ++k) want[k] = mu[a] * h.one()[k];
        if (lhs_l != want && left) left = false, wl = "x" + std::to_string(a);
        if (lhs_r != want && right) right = false, wr = "x" + std::to_string(a);
        Vec xe = h.mul(h.basis(a), e), ex = h.mul(e, h.basis(a));
        Vec eps_e = e;
        for (auto& v : eps_e) v *= h.counit_vec()[a];
        if (ex != eps_e && cl) cl = false, wcl = "x" + std::to_string(a);
        if (xe != eps_e && cr) cr = false, wcr = "x" + std::to_string(a);
    }
    r.add("(id⊗mu)Delta = mu 1", left, wl);
    r.add("(mu⊗id)Delta = mu 1", right, wr);
    r.add("e x = eps(x) e", cl, wcl);
    r.add("x e = eps(x) e", cr, wcr);
    r.add("mu(e) = 1", pair_vec(mu, e).is_one(), pair_vec(mu, e).str());
    Vec mus(d, h.zero());
    for (std::uint32_t a = 0; a < d; ++a) mus[a] = pair_vec(mu, h.apply_S(h.basis(a)));
    r.add("mu∘S = mu", mus == mu);
    r.add("S(e) = e", h.apply_S(e) == e);
    return r;
}

inline HopfAlgebra build_dual(const HopfAlgebra& h) {
    HopfAlgebra r;
    r.dim = h.dim;
    r.field = h.field;
    for (const auto& l : h.labels) r.labels.push_back(l + "*");
    auto flip = [&](const Tensor& t, std::vector<std::size_t> perm, int n_in) {
        Tensor p = t.permuted(perm);
        std::vector<Leg> legs;
        for (std::size_t k = 0; k < p.rank(); ++k)
            legs.push_back({int(k) < n_in ? Dir::In : Dir::Out, p.leg(k).dim});
        Tensor out(legs, h.field);
        out.mutable_entries() = p.entries();
        return out;
    };
    r.M = flip(h.Delta, {1, 2, 0}, 2);
    r.Delta = flip(h.M, {2, 0, 1}, 1);
    r.unit = flip(h.counit, {0}, 0);
    r.counit = flip(h.unit, {0}, 1);
    r.S = flip(h.S, {1, 0}, 1);
    r.finalize();
    check_axioms(r);
    return r;
}

namespace detail {

inline Tensor inverse_map(const Tensor& s, std::uint32_t d, Field f) {
    Matrix m(d, d, f);
    for (const auto& [ix, v] : s.entries()) m(ix[1], ix[0]) = v;
    auto inv = inverse(m);
    if (!inv) fail(ErrorKind::VerificationFailure, "antipode is not invertible");
    Tensor t = Tensor::map(d, 1, 1, f);
    for (std::uint32_t a = 0; a < d; ++a)
        for (std::uint32_t b = 0; b < d; ++b) t.set({a, b}, (*inv)(b, a));
    return t;
}

}  // namespace detail

inline HopfAlgebra build_op(const HopfAlgebra& h) {
    HopfAlgebra r = h;
    r.integrals.reset();
    r.M = detail::swap_ins(h.M);
    r.S = h.involutory ? h.S : detail::inverse_map(h.S, h.dim, h.field);
    r.finalize();
    check_axioms(r);
    return r;
}

inline HopfAlgebra build_cop(const HopfAlgebra& h) {
    HopfAlgebra r = h;
    r.integrals.reset();
    r.Delta = detail::swap_outs(h.Delta);
    r.S = h.involutory ? h.S : detail::inverse_map(h.S, h.dim, h.field);
    r.finalize();
    check_axioms(r);
    return r;
}

enum class PowerKind { Multiply, Comultiply };

// Iterated (co)multiplication: multiply n gives an (n,1) tensor, comultiply n
// a (1,n) tensor; n = 0 gives the unit or counit, n = 1 the identity.
inline Tensor power_tensor(const HopfAlgebra& h, PowerKind kind, int n, bool left_assoc = true) {
    if (n < 0) fail(ErrorKind::PreconditionViolated, "negative power");
    if (n == 0) return kind == PowerKind::Multiply ? h.unit : h.counit;
    Tensor p = Tensor::identity(h.dim, h.field);
    for (int k = 2; k <= n; ++k) {
        if (kind == PowerKind::Multiply) {
            p = left_assoc ? tensor_compose(p, 0, h.M, 0) : tensor_compose(p, 0, h.M, 1);
        } else {
            p = left_assoc ? tensor_compose(h.Delta, 0, p, 0)
                           : tensor_compose(p, std::size_t(k - 2), h.Delta, 0);
        }
    }
    return p;
}

inline HopfAlgebra trivial_algebra(Field f = Field::rational()) {
    HopfAlgebra h;
    h.dim = 1;
    h.field = f;
    h.labels = {"1"};
    Scalar one = Scalar::one(f);
    h.M = Tensor::map(1, 2, 1, f);
    h.M.set({0, 0, 0}, one);
    h.unit = Tensor::map(1, 0, 1, f);
    h.unit.set({0}, one);
    h.Delta = Tensor::map(1, 1, 2, f);
    h.Delta.set({0, 0, 0}, one);
    h.counit = Tensor::map(1, 1, 0, f);
    h.counit.set({0}, one);
    h.S = Tensor::identity(1, f);
    h.finalize();
    return h;
}

}  // namespace kup
