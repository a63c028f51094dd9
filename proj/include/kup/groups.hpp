#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "kup/hopf.hpp"

namespace kup {

// Finite group by multiplication table; element 0 need not be the identity.
struct Group {
    std::vector<std::string> labels;
    std::vector<std::vector<std::uint32_t>> table;

    std::uint32_t order() const { return static_cast<std::uint32_t>(table.size()); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table[a][b]; }

    std::uint32_t identity() const {
        for (std::uint32_t e = 0; e < order(); ++e) {
            bool ok = true;
            for (std::uint32_t g = 0; g < order() && ok; ++g)
                ok = table[e][g] == g && table[g][e] == g;
            if (ok) return e;
        }
        fail(ErrorKind::NotAGroup, "no identity element");
    }
    std::uint32_t inverse(std::uint32_t g) const {
        std::uint32_t e = identity();
        for (std::uint32_t h = 0; h < order(); ++h)
            if (table[g][h] == e && table[h][g] == e) return h;
        fail(ErrorKind::NotAGroup, "element " + std::to_string(g) + " has no inverse");
    }
    std::uint32_t power(std::uint32_t g, long n) const {
        if (n < 0) return power(inverse(g), -n);
        std::uint32_t r = identity();
        for (long k = 0; k < n; ++k) r = mul(r, g);
        return r;
    }
    bool abelian() const {
        for (std::uint32_t a = 0; a < order(); ++a)
            for (std::uint32_t b = 0; b < order(); ++b)
                if (table[a][b] != table[b][a]) return false;
        return true;
    }

    // Checks closure, associativity, identity and inverses.
    void validate() const {
        const auto n = order();
        if (n == 0) fail(ErrorKind::NotAGroup, "empty table");
        for (const auto& row : table) {
            if (row.size() != n) fail(ErrorKind::NotAGroup, "table is not square");
            for (auto v : row)
                if (v >= n) fail(ErrorKind::NotAGroup, "entry out of range");
        }
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = 0; b < n; ++b)
                for (std::uint32_t c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        fail(ErrorKind::NotAGroup, "associativity fails at (" + std::to_string(a) +
                                                       "," + std::to_string(b) + "," +
                                                       std::to_string(c) + ")");
        identity();
        for (std::uint32_t g = 0; g < n; ++g) inverse(g);
        if (labels.size() != n) fail(ErrorKind::NotAGroup, "label count differs from order");
    }
};

inline Group cyclic_group(std::uint32_t n) {
    if (n == 0) fail(ErrorKind::ParseError, "cyclic group of order 0");
    Group g;
    for (std::uint32_t a = 0; a < n; ++a) {
        g.labels.push_back(std::to_string(a));
        g.table.emplace_back();
        for (std::uint32_t b = 0; b < n; ++b) g.table.back().push_back((a + b) % n);
    }
    return g;
}

// Permutations of {0..n-1} in lexicographic order (identity first); the
// product a·b is "apply b, then a".
inline Group symmetric_group(std::uint32_t n) {
    if (n == 0 || n > 6) fail(ErrorKind::ParseError, "symmetric group degree must be 1..6");
    std::vector<std::vector<std::uint32_t>> perms;
    std::vector<std::uint32_t> p(n);
    std::iota(p.begin(), p.end(), 0u);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    Group g;
    for (const auto& q : perms) {
        std::string s = "[";
        for (std::size_t k = 0; k < q.size(); ++k) s += (k ? " " : "") + std::to_string(q[k]);
        g.labels.push_back(s + "]");
    }
    for (const auto& a : perms) {
        g.table.emplace_back();
        for (const auto& b : perms) {
            std::vector<std::uint32_t> c(n);
            for (std::uint32_t k = 0; k < n; ++k) c[k] = a[b[k]];
            auto it = std::find(perms.begin(), perms.end(), c);
            g.table.back().push_back(static_cast<std::uint32_t>(it - perms.begin()));
        }
    }
    return g;
}

inline Group product_group(const Group& a, const Group& b) {
    Group g;
    const auto n = a.order(), m = b.order();
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < m; ++j) g.labels.push_back("(" + a.labels[i] + "," + b.labels[j] + ")");
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < m; ++j) {
            g.table.emplace_back();
            for (std::uint32_t k = 0; k < n; ++k)
                for (std::uint32_t l = 0; l < m; ++l)
                    g.table.back().push_back(a.mul(i, k) * m + b.mul(j, l));
        }
    return g;
}

// Group algebra k[G]: Delta(g) = g⊗g, eps(g) = 1, S(g) = g^{-1}.
inline HopfAlgebra build_group_algebra(const Group& g, Field f = Field::rational()) {
    g.validate();
    const auto n = g.order();
    HopfAlgebra h;
    h.dim = n;
    h.field = f;
    h.labels = g.labels;
    const Scalar one = Scalar::one(f);
    h.M = Tensor::map(n, 2, 1, f);
    h.Delta = Tensor::map(n, 1, 2, f);
    h.counit = Tensor::map(n, 1, 0, f);
    h.unit = Tensor::map(n, 0, 1, f);
    h.S = Tensor::map(n, 1, 1, f);
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = 0; b < n; ++b) h.M.set({a, b, g.mul(a, b)}, one);
        h.Delta.set({a, a, a}, one);
        h.counit.set({a}, one);
        h.S.set({a, g.inverse(a)}, one);
    }
    h.unit.set({g.identity()}, one);
    h.finalize();
    check_axioms(h);
    if (!h.axioms_verified) fail(ErrorKind::VerificationFailure, "group algebra failed its axioms");
    return h;
}

namespace detail {

inline std::uint32_t parse_order(const std::string& s) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size() || v <= 0 || v > 4096) throw std::invalid_argument(s);
        return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
        fail(ErrorKind::ParseError, "bad group order '" + s + "'");
    }
}

}  // namespace detail

// Specs: cyclic:n, symmetric:n, product:spec,spec. Table files are handled by
// the JSON layer.
inline Group group_from_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) fail(ErrorKind::ParseError, "group spec needs kind:arg");
    std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
    if (kind == "cyclic") return cyclic_group(detail::parse_order(arg));
    if (kind == "symmetric") return symmetric_group(detail::parse_order(arg));
    if (kind == "product") {
        // First comma at which both halves parse.
        for (std::size_t k = 0; k < arg.size(); ++k) {
            if (arg[k] != ',') continue;
            try {
                Group a = group_from_spec(arg.substr(0, k));
                Group b = group_from_spec(arg.substr(k + 1));
                return product_group(a, b);
            } catch (const Error&) {
            }
        }
        fail(ErrorKind::ParseError, "product spec needs two factors");
    }
    fail(ErrorKind::ParseError, "unknown group kind '" + kind + "'");
}

}  // namespace kup
