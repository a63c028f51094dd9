#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kup/errors.hpp"
#include "kup/scalar.hpp"

namespace kup {

enum class Dir : std::uint8_t { In, Out };

struct Leg {
    Dir dir;
    std::uint32_t dim;
    bool operator==(const Leg&) const = default;
};

using Index = std::vector<std::uint32_t>;

struct IndexHash {
    std::size_t operator()(const Index& ix) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto v : ix) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return (b > UINT64_MAX - a) ? UINT64_MAX : a + b;
}

// Multi-leg tensor with sparse exact storage. Absent indices are zero; stored
// values are never zero.
class Tensor {
public:
    using Storage = std::map<Index, Scalar>;

    Tensor() = default;
    explicit Tensor(std::vector<Leg> legs, Field f = Field::rational())
        : legs_(std::move(legs)), field_(f) {}

    // (m, n) tensor in standard form: the m in-legs first, then the n out-legs.
    static Tensor map(std::uint32_t dim, int n_in, int n_out, Field f = Field::rational()) {
        std::vector<Leg> legs;
        for (int k = 0; k < n_in; ++k) legs.push_back({Dir::In, dim});
        for (int k = 0; k < n_out; ++k) legs.push_back({Dir::Out, dim});
        return Tensor(std::move(legs), f);
    }

    static Tensor scalar(const Scalar& s) {
        Tensor t({}, s.field());
        t.set({}, s);
        return t;
    }

    static Tensor identity(std::uint32_t dim, Field f = Field::rational()) {
        Tensor t = map(dim, 1, 1, f);
        for (std::uint32_t i = 0; i < dim; ++i) t.set({i, i}, Scalar::one(f));
        return t;
    }

    static Tensor from_dense(std::vector<Leg> legs, const std::vector<Scalar>& data,
                             Field f = Field::rational()) {
        Tensor t(std::move(legs), f);
        if (data.size() != t.dense_size())
            fail(ErrorKind::ShapeMismatch, "dense data length " + std::to_string(data.size()) +
                                               " != " + std::to_string(t.dense_size()));
        Index ix(t.rank(), 0);
        for (std::size_t flat = 0; flat < data.size(); ++flat) {
            if (!data[flat].is_zero()) t.set(ix, data[flat]);
            t.advance(ix);
        }
        return t;
    }

    const std::vector<Leg>& legs() const { return legs_; }
    const Leg& leg(std::size_t k) const { return legs_.at(k); }
    std::size_t rank() const { return legs_.size(); }
    Field field() const { return field_; }
    void set_field(Field f) { field_ = f; }
    const Storage& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }

    int count(Dir d) const {
        return static_cast<int>(std::count_if(legs_.begin(), legs_.end(),
                                              [d](const Leg& l) { return l.dir == d; }));
    }
    int n_in() const { return count(Dir::In); }
    int n_out() const { return count(Dir::Out); }

    std::uint64_t dense_size() const {
        std::uint64_t s = 1;
        for (const auto& l : legs_) s = sat_mul(s, l.dim);
        return s;
    }

    Scalar get(const Index& ix) const {
        auto it = entries_.find(ix);
        return it == entries_.end() ? Scalar::zero(field_) : it->second;
    }

    void set(const Index& ix, const Scalar& v) {
        check_index(ix);
        if (v.is_zero()) {
            entries_.erase(ix);
        } else {
            entries_[ix] = align(v);
        }
    }

    void add(const Index& ix, const Scalar& v) {
        if (v.is_zero()) return;
        check_index(ix);
        auto [it, fresh] = entries_.try_emplace(ix, align(v));
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) entries_.erase(it);
        }
    }

    std::vector<Scalar> to_dense() const {
        std::vector<Scalar> out(dense_size(), Scalar::zero(field_));
        for (const auto& [ix, v] : entries_) out[flat(ix)] = v;
        return out;
    }

    // New leg k is old leg perm[k].
    Tensor permuted(const std::vector<std::size_t>& perm) const {
        if (perm.size() != rank()) fail(ErrorKind::ShapeMismatch, "permutation length");
        std::vector<Leg> nl;
        for (auto p : perm) nl.push_back(legs_.at(p));
        Tensor t(std::move(nl), field_);
        Index nix(rank());
        for (const auto& [ix, v] : entries_) {
            for (std::size_t k = 0; k < perm.size(); ++k) nix[k] = ix[perm[k]];
            t.entries_.emplace(nix, v);
        }
        return t;
    }

    Tensor scaled(const Scalar& c) const {
        Tensor t(legs_, field_);
        if (c.is_zero()) return t;
        for (const auto& [ix, v] : entries_) t.entries_.emplace(ix, v * c);
        return t;
    }

    Tensor plus(const Tensor& o) const {
        if (o.legs_ != legs_) fail(ErrorKind::ShapeMismatch, "sum of tensors with different legs");
        Tensor t = *this;
        for (const auto& [ix, v] : o.entries_) t.add(ix, v);
        return t;
    }

    // Value of a 0-leg tensor.
    Scalar value() const {
        if (rank() != 0) fail(ErrorKind::ShapeMismatch, "value() on a tensor with legs");
        return get({});
    }

    bool operator==(const Tensor& o) const {
        if (legs_ != o.legs_ || entries_.size() != o.entries_.size()) return false;
        auto a = entries_.begin();
        auto b = o.entries_.begin();
        for (; a != entries_.end(); ++a, ++b)
            if (a->first != b->first || a->second != b->second) return false;
        return true;
    }
    bool operator!=(const Tensor& o) const { return !(*this == o); }

    Storage& mutable_entries() { return entries_; }

private:
    void check_index(const Index& ix) const {
        if (ix.size() != rank())
            fail(ErrorKind::ShapeMismatch, "index of length " + std::to_string(ix.size()) +
                                               " on rank-" + std::to_string(rank()) + " tensor");
        for (std::size_t k = 0; k < ix.size(); ++k)
            if (ix[k] >= legs_[k].dim)
                fail(ErrorKind::ShapeMismatch, "index " + std::to_string(ix[k]) +
                                                   " out of range on leg " + std::to_string(k));
    }

    Scalar align(const Scalar& v) const {
        if (v.field() == field_) return v;
        return Scalar::zero(field_) + v;
    }

    std::uint64_t flat(const Index& ix) const {
        std::uint64_t f = 0;
        for (std::size_t k = 0; k < ix.size(); ++k) f = f * legs_[k].dim + ix[k];
        return f;
    }

    void advance(Index& ix) const {
        for (std::size_t k = ix.size(); k-- > 0;) {
            if (++ix[k] < legs_[k].dim) return;
            ix[k] = 0;
        }
    }

    std::vector<Leg> legs_;
    Storage entries_;
    Field field_{};
};

using LegPairs = std::vector<std::pair<std::size_t, std::size_t>>;

namespace detail {

inline Tensor from_accumulator(std::vector<Leg> legs, Field f,
                               std::unordered_map<Index, Scalar, IndexHash>& acc) {
    Tensor t(std::move(legs), f);
    auto& st = t.mutable_entries();
    for (auto& [ix, v] : acc)
        if (!v.is_zero()) st.emplace(ix, std::move(v));
    return t;
}

}  // namespace detail

// Sum over the paired legs of a and b (pairs are (leg of a, leg of b)). The
// surviving legs of a come first, then those of b, each in original order.
// Dimensions must agree; directions are the caller's business.
inline Tensor contract_pair(const Tensor& a, const Tensor& b, const LegPairs& pairs) {
    std::vector<char> a_used(a.rank(), 0), b_used(b.rank(), 0);
    for (auto [i, j] : pairs) {
        if (i >= a.rank() || j >= b.rank()) fail(ErrorKind::LegMismatch, "leg out of range");
        if (a_used[i] || b_used[j]) fail(ErrorKind::LegMismatch, "leg paired twice");
        if (a.leg(i).dim != b.leg(j).dim)
            fail(ErrorKind::LegMismatch, "dimension " + std::to_string(a.leg(i).dim) + " vs " +
                                             std::to_string(b.leg(j).dim));
        a_used[i] = b_used[j] = 1;
    }
    std::vector<std::size_t> a_free, b_free;
    std::vector<Leg> legs;
    for (std::size_t k = 0; k < a.rank(); ++k)
        if (!a_used[k]) {
            a_free.push_back(k);
            legs.push_back(a.leg(k));
        }
    for (std::size_t k = 0; k < b.rank(); ++k)
        if (!b_used[k]) {
            b_free.push_back(k);
            legs.push_back(b.leg(k));
        }

    std::unordered_map<Index, std::vector<const Tensor::Storage::value_type*>, IndexHash> by_key;
    Index key(pairs.size());
    for (const auto& e : b.entries()) {
        for (std::size_t k = 0; k < pairs.size(); ++k) key[k] = e.first[pairs[k].second];
        by_key[key].push_back(&e);
    }

    std::unordered_map<Index, Scalar, IndexHash> acc;
    Index out(legs.size());
    for (const auto& ea : a.entries()) {
        for (std::size_t k = 0; k < pairs.size(); ++k) key[k] = ea.first[pairs[k].first];
        auto it = by_key.find(key);
        if (it == by_key.end()) continue;
        for (std::size_t k = 0; k < a_free.size(); ++k) out[k] = ea.first[a_free[k]];
        for (const auto* eb : it->second) {
            for (std::size_t k = 0; k < b_free.size(); ++k)
                out[a_free.size() + k] = eb->first[b_free[k]];
            Scalar prod = ea.second * eb->second;
            auto [slot, fresh] = acc.try_emplace(out, prod);
            if (!fresh) slot->second += prod;
        }
    }
    Field f = a.field().is_rational() ? b.field() : a.field();
    return detail::from_accumulator(std::move(legs), f, acc);
}

// Sum over index coincidences on the given leg pairs of a single tensor.
inline Tensor trace_legs(const Tensor& a, const LegPairs& pairs) {
    std::vector<char> used(a.rank(), 0);
    for (auto [i, j] : pairs) {
        if (i >= a.rank() || j >= a.rank() || i == j || used[i] || used[j])
            fail(ErrorKind::LegMismatch, "bad trace pair");
        if (a.leg(i).dim != a.leg(j).dim) fail(ErrorKind::LegMismatch, "trace dimension mismatch");
        used[i] = used[j] = 1;
    }
    std::vector<std::size_t> keep;
    std::vector<Leg> legs;
    for (std::size_t k = 0; k < a.rank(); ++k)
        if (!used[k]) {
            keep.push_back(k);
            legs.push_back(a.leg(k));
        }
    std::unordered_map<Index, Scalar, IndexHash> acc;
    Index out(keep.size());
    for (const auto& [ix, v] : a.entries()) {
        bool diag = true;
        for (auto [i, j] : pairs)
            if (ix[i] != ix[j]) {
                diag = false;
                break;
            }
        if (!diag) continue;
        for (std::size_t k = 0; k < keep.size(); ++k) out[k] = ix[keep[k]];
        auto [slot, fresh] = acc.try_emplace(out, v);
        if (!fresh) slot->second += v;
    }
    return detail::from_accumulator(std::move(legs), a.field(), acc);
}

inline Tensor outer(const Tensor& a, const Tensor& b) { return contract_pair(a, b, {}); }

namespace detail {

inline std::vector<std::size_t> legs_with(const Tensor& t, Dir d) {
    std::vector<std::size_t> r;
    for (std::size_t k = 0; k < t.rank(); ++k)
        if (t.leg(k).dir == d) r.push_back(k);
    return r;
}

}  // namespace detail

// Feed the a_out-th out-leg of a into the b_in-th in-leg of b. The result is
// in standard form. In-legs: those of b before the joined one, then all of a's,
// then the rest of b's. Out-legs: those of a before the joined one, then all of
// b's, then the rest of a's.
inline Tensor tensor_compose(const Tensor& a, std::size_t a_out, const Tensor& b,
                             std::size_t b_in) {
    auto a_outs = detail::legs_with(a, Dir::Out), a_ins = detail::legs_with(a, Dir::In);
    auto b_outs = detail::legs_with(b, Dir::Out), b_ins = detail::legs_with(b, Dir::In);
    if (a_out >= a_outs.size() || b_in >= b_ins.size())
        fail(ErrorKind::LegMismatch, "tensor_compose leg index out of range");
    std::size_t la = a_outs[a_out], lb = b_ins[b_in];
    if (a.leg(la).dim != b.leg(lb).dim) fail(ErrorKind::LegMismatch, "tensor_compose dimension");
    Tensor c = contract_pair(a, b, {{la, lb}});
    // Position of each surviving original leg inside c.
    auto pos_a = [&](std::size_t k) { return k - (k > la ? 1 : 0); };
    auto pos_b = [&](std::size_t k) { return a.rank() - 1 + k - (k > lb ? 1 : 0); };
    std::vector<std::size_t> perm;
    for (std::size_t t = 0; t < b_in; ++t) perm.push_back(pos_b(b_ins[t]));
    for (auto k : a_ins) perm.push_back(pos_a(k));
    for (std::size_t t = b_in + 1; t < b_ins.size(); ++t) perm.push_back(pos_b(b_ins[t]));
    for (std::size_t t = 0; t < a_out; ++t) perm.push_back(pos_a(a_outs[t]));
    for (auto k : b_outs) perm.push_back(pos_b(k));
    for (std::size_t t = a_out + 1; t < a_outs.size(); ++t) perm.push_back(pos_a(a_outs[t]));
    return c.permuted(perm);
}

}  // namespace kup
