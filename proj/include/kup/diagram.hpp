#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kup/errors.hpp"
#include "kup/report.hpp"

namespace kup {

enum class CurveKind { Alpha, Beta, Link };
enum class CrossKind { AB, AL, BL };

inline const char* kind_tag(CrossKind k) {
    switch (k) {
        case CrossKind::AB: return "ab";
        case CrossKind::AL: return "aL";
        case CrossKind::BL: return "bL";
    }
    return "?";
}

inline CrossKind cross_kind_of(CurveKind a, CurveKind b) {
    if (a > b) std::swap(a, b);
    if (a == CurveKind::Alpha && b == CurveKind::Beta) return CrossKind::AB;
    if (a == CurveKind::Alpha && b == CurveKind::Link) return CrossKind::AL;
    if (a == CurveKind::Beta && b == CurveKind::Link) return CrossKind::BL;
    fail(ErrorKind::PreconditionViolated, "these curve kinds never cross");
}

// The two curve kinds a crossing joins, in (alpha, beta, link) order.
inline std::array<CurveKind, 2> ends_of(CrossKind k) {
    switch (k) {
        case CrossKind::AB: return {CurveKind::Alpha, CurveKind::Beta};
        case CrossKind::AL: return {CurveKind::Alpha, CurveKind::Link};
        case CrossKind::BL: return {CurveKind::Beta, CurveKind::Link};
    }
    return {CurveKind::Alpha, CurveKind::Beta};
}

struct Crossing {
    int id = 0;
    CrossKind kind = CrossKind::AB;
    int sign = 1;
    int eta() const { return sign > 0 ? 0 : 1; }
};

struct Curve {
    int id = 0;
    std::vector<int> seq;  // crossing ids from the base point
};

struct CurveRef {
    CurveKind kind = CurveKind::Alpha;
    std::size_t index = 0;
    auto operator<=>(const CurveRef&) const = default;
    std::string str() const {
        return std::string(kind == CurveKind::Alpha ? "a" : kind == CurveKind::Beta ? "b" : "l") +
               std::to_string(index);
    }
};

// "a0", "b2", "l1"
inline CurveRef parse_curve_ref(const std::string& s) {
    if (s.size() < 2) fail(ErrorKind::ParseError, "bad curve reference '" + s + "'");
    CurveRef r;
    switch (s[0]) {
        case 'a': r.kind = CurveKind::Alpha; break;
        case 'b': r.kind = CurveKind::Beta; break;
        case 'l': r.kind = CurveKind::Link; break;
        default: fail(ErrorKind::ParseError, "bad curve reference '" + s + "'");
    }
    try {
        std::size_t used = 0;
        long v = std::stol(s.substr(1), &used);
        if (used != s.size() - 1 || v < 0) throw std::invalid_argument(s);
        r.index = std::size_t(v);
    } catch (const std::exception&) {
        fail(ErrorKind::ParseError, "bad curve reference '" + s + "'");
    }
    return r;
}

struct Location {
    CurveRef curve;
    std::size_t pos = 0;
};

struct Diagram {
    int genus = 0;
    std::vector<Curve> alpha, beta, links;
    std::map<int, Crossing> crossings;

    std::vector<Curve>& curves(CurveKind k) {
        return k == CurveKind::Alpha ? alpha : k == CurveKind::Beta ? beta : links;
    }
    const std::vector<Curve>& curves(CurveKind k) const {
        return k == CurveKind::Alpha ? alpha : k == CurveKind::Beta ? beta : links;
    }
    Curve& curve(CurveRef r) {
        auto& v = curves(r.kind);
        if (r.index >= v.size()) fail(ErrorKind::NoSuchComponent, "no curve " + r.str());
        return v[r.index];
    }
    const Curve& curve(CurveRef r) const {
        const auto& v = curves(r.kind);
        if (r.index >= v.size()) fail(ErrorKind::NoSuchComponent, "no curve " + r.str());
        return v[r.index];
    }
    const Crossing& crossing(int id) const {
        auto it = crossings.find(id);
        if (it == crossings.end()) fail(ErrorKind::PreconditionViolated, "no crossing " + std::to_string(id));
        return it->second;
    }
    Crossing& crossing(int id) {
        auto it = crossings.find(id);
        if (it == crossings.end()) fail(ErrorKind::PreconditionViolated, "no crossing " + std::to_string(id));
        return it->second;
    }

    int next_crossing_id() const { return crossings.empty() ? 0 : crossings.rbegin()->first + 1; }
    int next_curve_id() const {
        int m = -1;
        for (auto k : {CurveKind::Alpha, CurveKind::Beta, CurveKind::Link})
            for (const auto& c : curves(k)) m = std::max(m, c.id);
        return m + 1;
    }

    int add_crossing(CrossKind kind, int sign) {
        int id = next_crossing_id();
        crossings[id] = {id, kind, sign};
        return id;
    }

    // Both locations of every crossing, in (alpha, beta, link) order.
    std::map<int, std::vector<Location>> locate() const {
        std::map<int, std::vector<Location>> out;
        for (auto k : {CurveKind::Alpha, CurveKind::Beta, CurveKind::Link}) {
            const auto& v = curves(k);
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t p = 0; p < v[i].seq.size(); ++p)
                    out[v[i].seq[p]].push_back({{k, i}, p});
        }
        return out;
    }

    // Location of crossing id on a curve of the given kind.
    Location where(int id, CurveKind k) const {
        const auto& v = curves(k);
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t p = 0; p < v[i].seq.size(); ++p)
                if (v[i].seq[p] == id) return {{k, i}, p};
        fail(ErrorKind::PreconditionViolated, "crossing " + std::to_string(id) + " is not on any " +
                                                  (k == CurveKind::Alpha ? "alpha" : k == CurveKind::Beta ? "beta" : "link") +
                                                  " curve");
    }

    bool operator==(const Diagram& o) const {
        auto same = [](const std::vector<Curve>& a, const std::vector<Curve>& b) {
            if (a.size() != b.size()) return false;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i].id != b[i].id || a[i].seq != b[i].seq) return false;
            return true;
        };
        if (genus != o.genus || !same(alpha, o.alpha) || !same(beta, o.beta) || !same(links, o.links))
            return false;
        if (crossings.size() != o.crossings.size()) return false;
        for (const auto& [id, c] : crossings) {
            auto it = o.crossings.find(id);
            if (it == o.crossings.end() || it->second.kind != c.kind || it->second.sign != c.sign)
                return false;
        }
        return true;
    }
};

inline Report validate(const Diagram& e) {
    Report r;
    r.add("genus matches curve counts",
          e.genus >= 0 && e.alpha.size() == std::size_t(e.genus) && e.beta.size() == std::size_t(e.genus),
          "genus " + std::to_string(e.genus) + ", " + std::to_string(e.alpha.size()) + " alpha, " +
              std::to_string(e.beta.size()) + " beta");

    std::string w;
    bool ok = true;
    for (const auto& [id, c] : e.crossings) {
        if (c.id != id) ok = false, w = "crossing " + std::to_string(id) + " has mismatched id";
        if (c.sign != 1 && c.sign != -1) ok = false, w = "crossing " + std::to_string(id) + " has sign " + std::to_string(c.sign);
    }
    r.add("crossing records", ok, w);

    ok = true;
    auto loc = e.locate();
    for (const auto& [id, ls] : loc) {
        if (!e.crossings.count(id)) {
            ok = false, w = "curve " + ls[0].curve.str() + " lists unknown crossing " + std::to_string(id);
            break;
        }
    }
    r.add("sequences reference known crossings", ok, w);

    ok = true;
    for (const auto& [id, c] : e.crossings) {
        auto it = loc.find(id);
        auto want = ends_of(c.kind);
        if (it == loc.end() || it->second.size() != 2) {
            ok = false;
            w = "crossing " + std::to_string(id) + " is listed " +
                std::to_string(it == loc.end() ? 0 : it->second.size()) + " times";
            break;
        }
        const auto& ls = it->second;
        if (ls[0].curve.kind != want[0] || ls[1].curve.kind != want[1]) {
            ok = false;
            w = "crossing " + std::to_string(id) + " of kind " + kind_tag(c.kind) + " lies on " +
                ls[0].curve.str() + " and " + ls[1].curve.str();
            break;
        }
    }
    r.add("each crossing on exactly its two curves", ok, w);

    ok = true;
    std::map<std::pair<int, int>, int> ids;
    for (auto k : {CurveKind::Alpha, CurveKind::Beta, CurveKind::Link})
        for (const auto& c : e.curves(k))
            if (++ids[{int(k), c.id}] > 1) ok = false, w = "duplicate curve id " + std::to_string(c.id);
    r.add("curve ids unique per kind", ok, w);
    return r;
}

inline void require_valid(const Diagram& e) {
    Report r = validate(e);
    if (!r.ok())
        fail(ErrorKind::InvalidDiagram, r.first_failure()->name + ": " + r.first_failure()->witness);
}

// Genus-1 diagram of S³: one alpha and one beta meeting once positively.
inline Diagram s3_diagram() {
    Diagram e;
    e.genus = 1;
    e.crossings[0] = {0, CrossKind::AB, 1};
    e.alpha.push_back({0, {0}});
    e.beta.push_back({1, {0}});
    return e;
}

// Genus-1 diagram of S¹×S²: disjoint alpha and beta.
inline Diagram s1s2_diagram() {
    Diagram e;
    e.genus = 1;
    e.alpha.push_back({0, {}});
    e.beta.push_back({1, {}});
    return e;
}

// Genus-1 diagram of L(p,1): beta winds p times through alpha.
inline Diagram lens_diagram(int p) {
    if (p < 1) fail(ErrorKind::PreconditionViolated, "lens parameter must be positive");
    Diagram e;
    e.genus = 1;
    e.alpha.push_back({0, {}});
    e.beta.push_back({1, {}});
    for (int k = 0; k < p; ++k) {
        e.crossings[k] = {k, CrossKind::AB, 1};
        e.alpha[0].seq.push_back(k);
        e.beta[0].seq.push_back(k);
    }
    return e;
}

}  // namespace kup
