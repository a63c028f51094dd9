#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "kup/diagram.hpp"

namespace kup {

namespace detail {

inline std::size_t cyc(std::size_t i, std::size_t n) { return n == 0 ? 0 : i % n; }

// True when crossing a immediately precedes b on the curve (cyclically).
inline bool precedes(const Curve& c, int a, int b) {
    const auto n = c.seq.size();
    for (std::size_t i = 0; i < n; ++i)
        if (c.seq[i] == a && c.seq[cyc(i + 1, n)] == b) return true;
    return false;
}

inline bool adjacent(const Curve& c, int a, int b) { return precedes(c, a, b) || precedes(c, b, a); }

// The curve of the other kind through a crossing.
inline CurveRef other_end(const Diagram& e, int id, CurveRef self) {
    for (auto k : ends_of(e.crossing(id).kind))
        if (k != self.kind) return e.where(id, k).curve;
    fail(ErrorKind::PreconditionViolated, "crossing does not touch the curve");
}

inline void insert_at(std::vector<int>& seq, std::size_t pos, const std::vector<int>& items) {
    if (pos > seq.size()) fail(ErrorKind::PreconditionViolated, "insert position out of range");
    seq.insert(seq.begin() + long(pos), items.begin(), items.end());
}

inline void erase_id(std::vector<int>& seq, int id) { seq.erase(std::remove(seq.begin(), seq.end(), id), seq.end()); }

inline std::size_t index_of(const std::vector<int>& seq, int id) {
    auto it = std::find(seq.begin(), seq.end(), id);
    if (it == seq.end()) fail(ErrorKind::PreconditionViolated, "crossing " + std::to_string(id) + " missing");
    return std::size_t(it - seq.begin());
}

}  // namespace detail

inline Diagram move_basepoint(Diagram e, CurveRef c, long offset) {
    auto& seq = e.curve(c).seq;
    if (seq.empty()) return e;
    long n = long(seq.size());
    long k = ((offset % n) + n) % n;
    std::rotate(seq.begin(), seq.begin() + k, seq.end());
    return e;
}

// Reverse the orientation of a Heegaard circle: the sequence reverses and
// every crossing on it changes sign. Link components are refused, reversing
// one changes the oriented link (and dualizes its coloring).
inline Diagram move_reverse(Diagram e, CurveRef c) {
    if (c.kind == CurveKind::Link)
        fail(ErrorKind::PreconditionViolated, "reversing link component " + c.str() + " changes the link");
    auto& seq = e.curve(c).seq;
    std::reverse(seq.begin(), seq.end());
    for (int id : seq) e.crossing(id).sign = -e.crossing(id).sign;
    return e;
}

inline Diagram two_point_cancel(Diagram e, int c1, int c2) {
    require_valid(e);
    const Crossing& x1 = e.crossing(c1);
    const Crossing& x2 = e.crossing(c2);
    if (c1 == c2) fail(ErrorKind::PreconditionViolated, "two_point_cancel needs two distinct crossings");
    if (x1.kind != x2.kind) fail(ErrorKind::PreconditionViolated, "crossings are of different kinds");
    if (x1.sign == x2.sign) fail(ErrorKind::PreconditionViolated, "crossings have the same sign");
    for (auto k : ends_of(x1.kind)) {
        Location l1 = e.where(c1, k), l2 = e.where(c2, k);
        if (l1.curve != l2.curve)
            fail(ErrorKind::PreconditionViolated, "crossings join different curves (" + l1.curve.str() + " vs " + l2.curve.str() + ")");
        if (!detail::adjacent(e.curve(l1.curve), c1, c2))
            fail(ErrorKind::PreconditionViolated, "crossings are not adjacent on " + l1.curve.str());
    }
    for (auto k : ends_of(x1.kind)) {
        CurveRef r = e.where(c1, k).curve;
        detail::erase_id(e.curve(r).seq, c1);
        detail::erase_id(e.curve(r).seq, c2);
    }
    e.crossings.erase(c1);
    e.crossings.erase(c2);
    return e;
}

struct TwoPointSpec {
    CurveRef x, y;
    std::size_t x_pos = 0, y_pos = 0;  // insertion points
    int sign = 1;                      // sign of the first new crossing
    bool y_reversed = false;           // order on y is (second, first)
};

// Inserts a cancelling pair; returns the new ids through `ids`.
inline Diagram two_point_create(Diagram e, const TwoPointSpec& s, std::pair<int, int>* ids = nullptr) {
    CrossKind k = cross_kind_of(s.x.kind, s.y.kind);
    if (s.sign != 1 && s.sign != -1) fail(ErrorKind::PreconditionViolated, "sign must be ±1");
    e.curve(s.x);
    e.curve(s.y);
    int a = e.add_crossing(k, s.sign);
    int b = e.add_crossing(k, -s.sign);
    detail::insert_at(e.curve(s.x).seq, s.x_pos, {a, b});
    detail::insert_at(e.curve(s.y).seq, s.y_pos, s.y_reversed ? std::vector<int>{b, a} : std::vector<int>{a, b});
    if (ids) *ids = {a, b};
    return e;
}

// Triangle move on crossings p (alpha-beta), q (alpha-link), r (beta-link):
// each adjacent pair swaps, signs stay. With ra = [q precedes p on alpha],
// rb = [r precedes p on beta], rl = [r precedes q on the link] the move needs
// eta_p = 1+ra+rb, eta_q = 1+ra+rl, eta_r = rb+rl (mod 2).
inline Diagram three_point(Diagram e, int x, int y, int z) {
    require_valid(e);
    int p = -1, q = -1, r = -1;
    for (int id : {x, y, z}) {
        switch (e.crossing(id).kind) {
            case CrossKind::AB: p = id; break;
            case CrossKind::AL: q = id; break;
            case CrossKind::BL: r = id; break;
        }
    }
    if (p < 0 || q < 0 || r < 0)
        fail(ErrorKind::PreconditionViolated, "three_point needs one crossing of each kind");
    CurveRef a = e.where(p, CurveKind::Alpha).curve, b = e.where(p, CurveKind::Beta).curve;
    CurveRef l = e.where(q, CurveKind::Link).curve;
    if (e.where(q, CurveKind::Alpha).curve != a || e.where(r, CurveKind::Beta).curve != b ||
        e.where(r, CurveKind::Link).curve != l)
        fail(ErrorKind::PreconditionViolated, "crossings do not form a triangle");
    const Curve &ca = e.curve(a), &cb = e.curve(b), &cl = e.curve(l);
    if (!detail::adjacent(ca, p, q) || !detail::adjacent(cb, p, r) || !detail::adjacent(cl, q, r))
        fail(ErrorKind::PreconditionViolated, "triangle crossings are not adjacent");
    auto options = [](const Curve& c, int first, int second) {
        std::vector<int> o;
        if (detail::precedes(c, first, second)) o.push_back(1);
        if (detail::precedes(c, second, first)) o.push_back(0);
        return o;
    };
    const int ep = e.crossing(p).eta(), eq = e.crossing(q).eta(), er = e.crossing(r).eta();
    bool found = false;
    for (int ra : options(ca, q, p))
        for (int rb : options(cb, r, p))
            for (int rl : options(cl, r, q))
                if (ep == ((1 + ra + rb) & 1) && eq == ((1 + ra + rl) & 1) && er == ((rb + rl) & 1)) found = true;
    if (!found) fail(ErrorKind::PreconditionViolated, "crossing signs do not admit a triangle move");
    auto swap_pair = [&](CurveRef c, int u, int v) {
        auto& seq = e.curve(c).seq;
        std::swap(seq[detail::index_of(seq, u)], seq[detail::index_of(seq, v)]);
    };
    swap_pair(a, p, q);
    swap_pair(b, p, r);
    swap_pair(l, q, r);
    return e;
}

// Slides `slider` over `over`: a copy of over's sequence goes into the slider
// at `pos`, each crossing c of over with a curve Y gets a twin between slider
// and Y with the same sign, placed right after c on Y (right before when c is
// negative).
inline Diagram handle_slide(Diagram e, CurveRef slider, CurveRef over, std::size_t pos) {
    require_valid(e);
    if (slider == over) fail(ErrorKind::PreconditionViolated, "a curve cannot slide over itself");
    if (over.kind == CurveKind::Link) fail(ErrorKind::PreconditionViolated, "cannot slide over a link component");
    if (slider.kind != CurveKind::Link && slider.kind != over.kind)
        fail(ErrorKind::PreconditionViolated, "handle slides need two alpha or two beta curves");
    if (slider.kind == CurveKind::Link)
        for (int id : e.curve(over).seq)
            if (e.crossing(id).kind != CrossKind::AB)
                fail(ErrorKind::PreconditionViolated, "link slides need a circle that meets no link");
    if (pos > e.curve(slider).seq.size()) fail(ErrorKind::PreconditionViolated, "slide position out of range");
    const std::vector<int> over_seq = e.curve(over).seq;
    std::vector<int> copies;
    for (int c : over_seq) {
        CurveRef y = detail::other_end(e, c, over);
        const Crossing xc = e.crossing(c);
        int twin = e.add_crossing(cross_kind_of(slider.kind, y.kind), xc.sign);
        copies.push_back(twin);
        auto& yseq = e.curve(y).seq;
        std::size_t at = detail::index_of(yseq, c);
        yseq.insert(yseq.begin() + long(at + (xc.eta() == 0 ? 1 : 0)), twin);
    }
    detail::insert_at(e.curve(slider).seq, pos, copies);
    return e;
}

inline Diagram stabilize(Diagram e) {
    int c = e.add_crossing(CrossKind::AB, 1);
    int id = e.next_curve_id();
    e.alpha.push_back({id, {c}});
    e.beta.push_back({id + 1, {c}});
    ++e.genus;
    return e;
}

inline Diagram destabilize(Diagram e, std::size_t ai, std::size_t bi) {
    CurveRef a{CurveKind::Alpha, ai}, b{CurveKind::Beta, bi};
    const auto& sa = e.curve(a).seq;
    const auto& sb = e.curve(b).seq;
    if (sa.size() != 1 || sb.size() != 1 || sa[0] != sb[0])
        fail(ErrorKind::PreconditionViolated, "curves must meet each other exactly once and nothing else");
    e.crossings.erase(sa[0]);
    e.alpha.erase(e.alpha.begin() + long(ai));
    e.beta.erase(e.beta.begin() + long(bi));
    --e.genus;
    return e;
}

// Textual move specs used by the CLI:
//   basepoint:CURVE:K  reverse:CURVE  cancel:C1:C2
//   create:X:XPOS:Y:YPOS:SIGN[:rev]  three:C1:C2:C3  slide:SLIDER:OVER:POS
//   stabilize  destabilize:AI:BI
inline Diagram apply_move(const Diagram& e, const std::string& spec) {
    std::vector<std::string> f;
    std::size_t start = 0;
    while (true) {
        auto k = spec.find(':', start);
        f.push_back(spec.substr(start, k == std::string::npos ? std::string::npos : k - start));
        if (k == std::string::npos) break;
        start = k + 1;
    }
    auto num = [&](std::size_t i) -> long {
        if (i >= f.size()) fail(ErrorKind::ParseError, "move '" + spec + "' is missing arguments");
        try {
            std::size_t used = 0;
            long v = std::stol(f[i], &used);
            if (used != f[i].size()) throw std::invalid_argument(f[i]);
            return v;
        } catch (const std::exception&) {
            fail(ErrorKind::ParseError, "bad number '" + f[i] + "' in move '" + spec + "'");
        }
    };
    auto ref = [&](std::size_t i) {
        if (i >= f.size()) fail(ErrorKind::ParseError, "move '" + spec + "' is missing arguments");
        return parse_curve_ref(f[i]);
    };
    auto nonneg = [&](std::size_t i) {
        long v = num(i);
        if (v < 0) fail(ErrorKind::ParseError, "negative position in move '" + spec + "'");
        return std::size_t(v);
    };
    const std::string& k = f[0];
    Diagram out;
    if (k == "basepoint") out = move_basepoint(e, ref(1), num(2));
    else if (k == "reverse") out = move_reverse(e, ref(1));
    else if (k == "cancel") out = two_point_cancel(e, int(num(1)), int(num(2)));
    else if (k == "create") {
        TwoPointSpec s{ref(1), ref(3), nonneg(2), nonneg(4), int(num(5)), f.size() > 6 && f[6] == "rev"};
        out = two_point_create(e, s);
    } else if (k == "three") out = three_point(e, int(num(1)), int(num(2)), int(num(3)));
    else if (k == "slide") out = handle_slide(e, ref(1), ref(2), nonneg(3));
    else if (k == "stabilize") out = stabilize(e);
    else if (k == "destabilize") out = destabilize(e, nonneg(1), nonneg(2));
    else fail(ErrorKind::ParseError, "unknown move '" + k + "'");
    require_valid(out);
    return out;
}

}  // namespace kup
