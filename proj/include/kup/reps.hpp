#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "kup/double.hpp"
#include "kup/groups.hpp"

namespace kup {

// Representation of D(H) stored by factors: A[b] = rho(eps⊗x_b), B[a] = rho(f^a⊗1).
struct DoubleRep {
    std::uint32_t dimV = 1;
    Field field{};
    std::vector<Matrix> A, B;
    bool verified = false;
    std::string name;

    // rho(f^a⊗x_b) = B[a] A[b]
    Matrix rho(std::uint32_t a, std::uint32_t b) const { return B[a] * A[b]; }
};

// T(X) = Σ W[j,i] X[i,j] = tr(W X).
struct TraceFunctional {
    Matrix W;
    bool trace_like = false;
    bool antipode_invariant = false;

    Scalar eval(const Matrix& X) const {
        Scalar s = Scalar::zero(W.field);
        for (std::size_t i = 0; i < X.rows; ++i)
            for (std::size_t j = 0; j < X.cols; ++j)
                if (!W(j, i).is_zero() && !X(i, j).is_zero()) s += W(j, i) * X(i, j);
        return s;
    }

    static TraceFunctional usual(std::uint32_t n, Field f) { return {Matrix::identity(n, f)}; }
};

struct ColoredRep {
    DoubleRep rep;
    TraceFunctional trace;
};

namespace detail {

// m += c x
inline void axpy(Matrix& m, const Matrix& x, const Scalar& c) {
    if (c.is_zero()) return;
    for (std::size_t k = 0; k < x.a.size(); ++k)
        if (!x.a[k].is_zero()) m.a[k] += c * x.a[k];
}

inline Matrix combo(const std::vector<Matrix>& fam, const Vec& coef, std::uint32_t n, Field f) {
    Matrix m(n, n, f);
    for (std::size_t k = 0; k < fam.size(); ++k) axpy(m, fam[k], coef[k]);
    return m;
}

inline Matrix combo(const std::vector<Matrix>& fam, const SVec& coef, std::uint32_t n, Field f) {
    Matrix m(n, n, f);
    for (const auto& [k, v] : coef) axpy(m, fam[k], v);
    return m;
}

// coefficients of f^a∘S in the dual basis
inline SVec dual_antipode(const HopfAlgebra& h, std::uint32_t a) {
    SVec out;
    for (std::uint32_t k = 0; k < h.dim; ++k)
        for (const auto& [t, v] : h.antipode(k))
            if (t == a) out.push_back({k, v});
    return out;
}

inline std::string pair_name(const char* what, std::size_t i, std::size_t j) {
    return std::string(what) + " (" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace detail

// Algebra-map laws for both families and the straightening law
//   A[b] B[a] = Σ B[f^a(S(b3) - b1)] A[b2],
// all on the base algebra H.
inline Report check_double_rep(const HopfAlgebra& h, DoubleRep& rep) {
    using detail::combo;
    const auto d = h.dim;
    const auto n = rep.dimV;
    const Field f = rep.field;
    Report r;
    if (rep.A.size() != d || rep.B.size() != d) {
        r.add("family sizes", false, "expected " + std::to_string(d) + " matrices per family");
        rep.verified = false;
        return r;
    }
    for (const auto& m : rep.A)
        if (m.rows != n || m.cols != n) r.add("A shapes", false, "matrix is not dimV×dimV");
    for (const auto& m : rep.B)
        if (m.rows != n || m.cols != n) r.add("B shapes", false, "matrix is not dimV×dimV");
    if (!r.ok()) {
        rep.verified = false;
        return r;
    }
    const Matrix I = Matrix::identity(n, f);

    std::string w;
    bool ok = true;
    for (std::uint32_t a = 0; a < d && ok; ++a)
        for (std::uint32_t b = 0; b < d && ok; ++b)
            if (rep.A[a] * rep.A[b] != combo(rep.A, h.product(a, b), n, f))
                ok = false, w = detail::pair_name("basis pair", a, b);
    r.add("A multiplicative", ok, w);
    r.add("A unital", combo(rep.A, h.one(), n, f) == I);

    ok = true;
    for (std::uint32_t a = 0; a < d && ok; ++a)
        for (std::uint32_t c = 0; c < d && ok; ++c) {
            SVec conv;
            for (std::uint32_t e = 0; e < d; ++e)
                for (const auto& t : h.coproduct(e))
                    if (t.i == a && t.j == c) conv.push_back({e, t.v});
            if (rep.B[a] * rep.B[c] != combo(rep.B, conv, n, f))
                ok = false, w = detail::pair_name("dual pair", a, c);
        }
    r.add("B multiplicative", ok, w);
    r.add("B unital", combo(rep.B, h.counit_vec(), n, f) == I);

    // straightening
    ok = true;
    std::vector<std::vector<Vec>> conj;  // conj[b3*d+b1][k] = S(x_b3) x_k x_b1
    conj.resize(std::size_t(d) * d);
    auto table = [&](std::uint32_t b3, std::uint32_t b1) -> const std::vector<Vec>& {
        auto& t = conj[b3 * d + b1];
        if (t.empty()) {
            Vec s = h.apply_S(h.basis(b3));
            for (std::uint32_t k = 0; k < d; ++k) t.push_back(h.mul(h.mul(s, h.basis(k)), h.basis(b1)));
        }
        return t;
    };
    for (std::uint32_t b = 0; b < d && ok; ++b) {
        std::vector<std::array<std::uint32_t, 3>> idx;
        std::vector<Scalar> val;
        for (const auto& t : h.coproduct(b))
            for (const auto& s : h.coproduct(t.i)) {
                idx.push_back({s.i, s.j, t.j});
                val.push_back(t.v * s.v);
            }
        for (std::uint32_t a = 0; a < d && ok; ++a) {
            Matrix rhs(n, n, f);
            for (std::size_t t = 0; t < idx.size(); ++t) {
                const auto [b1, b2, b3] = idx[t];
                const auto& tab = table(b3, b1);
                Matrix bsum(n, n, f);
                bool any = false;
                for (std::uint32_t k = 0; k < d; ++k)
                    if (!tab[k][a].is_zero()) detail::axpy(bsum, rep.B[k], tab[k][a]), any = true;
                if (any) detail::axpy(rhs, bsum * rep.A[b2], val[t]);
            }
            if (rep.A[b] * rep.B[a] != rhs) ok = false, w = detail::pair_name("(x_b, f^a)", b, a);
        }
    }
    r.add("straightening", ok, w);
    rep.verified = r.ok();
    return r;
}

inline Report check_double_rep(const DoubleAlgebra& dd, DoubleRep& rep) {
    return check_double_rep(dd.base, rep);
}

inline constexpr std::size_t kExhaustiveTraceBasis = 100;

// Trace-like law and antipode invariance. Up to kExhaustiveTraceBasis basis
// elements of D(H) every pair is tested; above that each generator A[b], B[a]
// is tested against every basis element, which implies the full law since
// T(g1 g2 Y) = T(g2 Y g1) = T(Y g1 g2).
inline Report check_trace(const DoubleRep& rep, TraceFunctional& T, const HopfAlgebra& h) {
    const auto d = h.dim;
    const auto n = rep.dimV;
    const Field f = rep.field;
    Report r;
    if (T.W.rows != n || T.W.cols != n) {
        r.add("weight shape", false, "W is not dimV×dimV");
        return r;
    }
    std::vector<Matrix> P;
    for (std::uint32_t a = 0; a < d; ++a)
        for (std::uint32_t b = 0; b < d; ++b) P.push_back(rep.rho(a, b));
    std::vector<const Matrix*> X;
    if (P.size() <= kExhaustiveTraceBasis) {
        for (const auto& p : P) X.push_back(&p);
    } else {
        for (const auto& m : rep.A) X.push_back(&m);
        for (const auto& m : rep.B) X.push_back(&m);
    }
    // tr((WX - XW) Y) = T(XY) - T(YX), with WX - XW kept as a nonzero list
    bool ok = true;
    std::string w;
    for (std::size_t i = 0; i < X.size() && ok; ++i) {
        Matrix c = T.W * *X[i];
        Matrix xw = *X[i] * T.W;
        std::vector<std::tuple<std::size_t, std::size_t, Scalar>> nz;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                Scalar v = c(x, y) - xw(x, y);
                if (!v.is_zero()) nz.emplace_back(x, y, v);
            }
        if (nz.empty()) continue;
        for (std::size_t j = 0; j < P.size() && ok; ++j) {
            Scalar s = Scalar::zero(f);
            for (const auto& [x, y, v] : nz)
                if (!P[j](y, x).is_zero()) s += v * P[j](y, x);
            if (!s.is_zero()) ok = false, w = detail::pair_name("D basis pair", i, j);
        }
    }
    r.add("trace-like", ok, w);
    T.trace_like = ok;

    // S(f^a⊗x_b) = (eps⊗S x_b)(f^a∘S⊗1)
    ok = true;
    for (std::uint32_t a = 0; a < d && ok; ++a) {
        Matrix bs = detail::combo(rep.B, detail::dual_antipode(h, a), n, f);
        for (std::uint32_t b = 0; b < d && ok; ++b) {
            Matrix as = detail::combo(rep.A, h.antipode(b), n, f);
            if (T.eval(as * bs) != T.eval(P[a * d + b]))
                ok = false, w = detail::pair_name("D basis", a, b);
        }
    }
    r.add("antipode-invariant", ok, w);
    T.antipode_invariant = ok;
    return r;
}

inline Report check_trace(const DoubleRep& rep, TraceFunctional& T, const DoubleAlgebra& dd) {
    return check_trace(rep, T, dd.base);
}

// Left regular representation of D(H) with T(X) = lambda_D(X 1_D).
inline ColoredRep make_regular_rep(const DoubleAlgebra& dd) {
    const auto d = dd.factor_dim, n = dd.dim();
    const Field f = dd.base.field;
    const HopfAlgebra& h = dd.base;
    auto left_mul = [&](const Vec& z) {
        Matrix m(n, n, f);
        for (std::uint32_t j = 0; j < n; ++j) {
            for (std::uint32_t i = 0; i < n; ++i) {
                if (z[i].is_zero()) continue;
                for (const auto& [c, v] : dd.mul_basis(i, j)) m(c, j) += z[i] * v;
            }
        }
        return m;
    };
    ColoredRep out;
    DoubleRep& rep = out.rep;
    rep.dimV = n;
    rep.field = f;
    rep.name = "regular";
    for (std::uint32_t b = 0; b < d; ++b) {
        Vec z(n, Scalar::zero(f));
        for (std::uint32_t c = 0; c < d; ++c) z[dd.index(c, b)] = h.counit_vec()[c];
        rep.A.push_back(left_mul(z));
    }
    for (std::uint32_t a = 0; a < d; ++a) {
        Vec z(n, Scalar::zero(f));
        for (std::uint32_t q = 0; q < d; ++q) z[dd.index(a, q)] = h.one()[q];
        rep.B.push_back(left_mul(z));
    }
    Vec one_d(n, Scalar::zero(f)), lam = tensor_to_vec(dd.lambda, n, f);
    for (const auto& [ix, v] : dd.D.unit.entries()) one_d[ix[0]] = v;
    out.trace.W = Matrix(n, n, f);
    for (std::uint32_t j = 0; j < n; ++j)
        for (std::uint32_t i = 0; i < n; ++i) out.trace.W(j, i) = one_d[j] * lam[i];
    Report rr = check_double_rep(h, rep);
    if (!rr.ok()) fail(ErrorKind::RepCheckFailure, "regular representation: " + rr.first_failure()->name);
    check_trace(rep, out.trace, h);
    return out;
}

// rho_R(f⊗v)(h) = Σ f(R') R'' v h on the carrier H, with T(X) = mu(X 1_H).
inline ColoredRep make_rho_R(const QuasitriangularData& q) {
    const HopfAlgebra& h = q.H;
    if (!h.integrals) fail(ErrorKind::PreconditionViolated, "rho_R needs the integrals of H");
    const auto d = h.dim;
    const Field f = h.field;
    ColoredRep out;
    DoubleRep& rep = out.rep;
    rep.dimV = d;
    rep.field = f;
    rep.name = "rho_R";
    for (std::uint32_t b = 0; b < d; ++b) rep.A.push_back(left_mul_matrix(h, h.basis(b)));
    for (std::uint32_t a = 0; a < d; ++a) {
        Vec z(d, h.zero());
        for (const auto& [ix, v] : q.R.entries())
            if (ix[0] == a) z[ix[1]] += v;
        rep.B.push_back(left_mul_matrix(h, z));
    }
    Vec mu = tensor_to_vec(h.integrals->mu, d, f);
    out.trace.W = Matrix(d, d, f);
    for (std::uint32_t j = 0; j < d; ++j)
        for (std::uint32_t i = 0; i < d; ++i) out.trace.W(j, i) = h.one()[j] * mu[i];
    Report rr = check_double_rep(h, rep);
    if (!rr.ok())
        fail(ErrorKind::RepCheckFailure,
             "rho_R: " + rr.first_failure()->name + " " + rr.first_failure()->witness);
    check_trace(rep, out.trace, h);
    return out;
}

// Roots of unity of order dividing n in the field.
inline std::vector<Scalar> roots_of_unity(std::uint32_t n, Field f) {
    std::vector<Scalar> out;
    if (f.is_rational()) {
        out.push_back(Scalar::one(f));
        if (n % 2 == 0) out.push_back(-Scalar::one(f));
        return out;
    }
    for (std::uint64_t x = 1; x < f.p; ++x) {
        Scalar s(f, static_cast<long>(x)), pw = Scalar::one(f);
        for (std::uint32_t k = 0; k < n; ++k) pw *= s;
        if (pw.is_one()) out.push_back(s);
    }
    return out;
}

// Characters G -> field^x by backtracking over element values.
inline std::vector<std::vector<Scalar>> group_characters(const Group& g, Field f) {
    const auto n = g.order();
    auto roots = roots_of_unity(n, f);
    std::vector<std::vector<Scalar>> out;
    std::vector<Scalar> chi(n, Scalar::zero(f));
    std::vector<char> set(n, 0);
    std::function<void(std::uint32_t)> go = [&](std::uint32_t k) {
        if (k == n) {
            out.push_back(chi);
            return;
        }
        for (const auto& r : roots) {
            chi[k] = r;
            set[k] = 1;
            bool ok = true;
            for (std::uint32_t a = 0; a <= k && ok; ++a)
                for (std::uint32_t b = 0; b <= k && ok; ++b) {
                    auto c = g.mul(a, b);
                    if (set[c]) ok = chi[c] == chi[a] * chi[b];
                }
            if (ok) go(k + 1);
            set[k] = 0;
        }
    };
    go(0);
    return out;
}

// One-dimensional irreps of D(k[A]) indexed by (a, chi): A[b] = chi(b),
// B[delta_g] = [g = a]. Ordered by a, then by character.
inline std::vector<ColoredRep> abelian_double_irreps(const Group& g, Field f = Field::rational()) {
    if (!g.abelian()) fail(ErrorKind::NotAbelian, "group is not abelian");
    auto chars = group_characters(g, f);
    if (chars.size() != g.order())
        fail(ErrorKind::FieldMismatch, "field lacks the roots of unity for all characters (found " +
                                           std::to_string(chars.size()) + " of " +
                                           std::to_string(g.order()) + ")");
    HopfAlgebra h = build_group_algebra(g, f);
    std::vector<ColoredRep> out;
    for (std::uint32_t a = 0; a < g.order(); ++a)
        for (std::size_t c = 0; c < chars.size(); ++c) {
            ColoredRep cr;
            cr.rep.dimV = 1;
            cr.rep.field = f;
            cr.rep.name = "(" + g.labels[a] + ",chi" + std::to_string(c) + ")";
            for (std::uint32_t b = 0; b < g.order(); ++b) {
                Matrix m(1, 1, f);
                m(0, 0) = chars[c][b];
                cr.rep.A.push_back(m);
                Matrix z(1, 1, f);
                if (b == a) z(0, 0) = Scalar::one(f);
                cr.rep.B.push_back(z);
            }
            cr.trace = TraceFunctional::usual(1, f);
            Report rr = check_double_rep(h, cr.rep);
            if (!rr.ok()) fail(ErrorKind::RepCheckFailure, cr.rep.name + ": " + rr.first_failure()->name);
            check_trace(cr.rep, cr.trace, h);
            out.push_back(std::move(cr));
        }
    return out;
}

}  // namespace kup
