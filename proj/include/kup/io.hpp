#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "kup/bracket.hpp"
#include "kup/double.hpp"
#include "kup/groups.hpp"
#include "kup/planar.hpp"
#include "kup/reps.hpp"

namespace kup::io {

using json = nlohmann::ordered_json;

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::ParseError, "cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

// Typed access with ParseError on anything unexpected.
template <class T>
T get(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(ErrorKind::ParseError, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(ErrorKind::ParseError, std::string("field '") + key + "': " + e.what());
    }
}

inline const json& child(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(ErrorKind::ParseError, std::string("missing field '") + key + "'");
    return j.at(key);
}

// ---- scalars, vectors, matrices, tensors

inline json to_json(const Scalar& s) { return s.str(); }

inline Scalar scalar_from(const json& j, Field f) {
    if (j.is_number_integer()) return Scalar(f, j.get<long>());
    if (!j.is_string()) fail(ErrorKind::ParseError, "scalars are written as \"p/q\" strings");
    return Scalar::parse(j.get<std::string>(), f);
}

inline json to_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

inline Vec vec_from(const json& j, Field f, std::size_t n) {
    if (!j.is_array() || j.size() != n) fail(ErrorKind::ParseError, "expected a vector of length " + std::to_string(n));
    Vec v;
    for (const auto& x : j) v.push_back(scalar_from(x, f));
    return v;
}

inline json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json r = json::array();
        for (std::size_t k = 0; k < m.cols; ++k) r.push_back(m(i, k).str());
        rows.push_back(r);
    }
    return rows;
}

inline Matrix matrix_from(const json& j, Field f, std::size_t n) {
    if (!j.is_array() || j.size() != n) fail(ErrorKind::ParseError, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    Matrix m(n, n, f);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec row = vec_from(j[i], f, n);
        for (std::size_t k = 0; k < n; ++k) m(i, k) = row[k];
    }
    return m;
}

inline json to_json(const Tensor& t) {
    json legs = json::array(), entries = json::array();
    for (const auto& l : t.legs()) legs.push_back({{"dir", l.dir == Dir::In ? "in" : "out"}, {"dim", l.dim}});
    for (const auto& [ix, v] : t.entries()) entries.push_back({ix, v.str()});
    return {{"legs", legs}, {"entries", entries}};
}

inline Tensor tensor_from(const json& j, Field f) {
    std::vector<Leg> legs;
    for (const auto& l : child(j, "legs")) {
        auto d = get<std::string>(l, "dir");
        if (d != "in" && d != "out") fail(ErrorKind::ParseError, "leg dir must be in/out");
        legs.push_back({d == "in" ? Dir::In : Dir::Out, get<std::uint32_t>(l, "dim")});
    }
    Tensor t(legs, f);
    for (const auto& e : child(j, "entries")) {
        if (!e.is_array() || e.size() != 2) fail(ErrorKind::ParseError, "tensor entries are [index, value]");
        Index ix;
        try {
            ix = e[0].get<Index>();
        } catch (const json::exception&) {
            fail(ErrorKind::ParseError, "bad tensor index");
        }
        if (ix.size() != legs.size()) fail(ErrorKind::ShapeMismatch, "index rank differs from leg count");
        for (std::size_t k = 0; k < ix.size(); ++k)
            if (ix[k] >= legs[k].dim) fail(ErrorKind::ShapeMismatch, "index out of range");
        t.set(ix, scalar_from(e[1], f));
    }
    return t;
}

// ---- groups

inline json to_json(const Group& g) { return {{"labels", g.labels}, {"table", g.table}}; }

inline Group group_from(const json& j) {
    Group g;
    g.labels = get<std::vector<std::string>>(j, "labels");
    g.table = get<std::vector<std::vector<std::uint32_t>>>(j, "table");
    g.validate();
    return g;
}

// cyclic:n, symmetric:n, product:a,b, table:FILE
inline Group group_from_any_spec(const std::string& spec) {
    if (spec.rfind("table:", 0) == 0) return group_from(read_json_file(spec.substr(6)));
    return group_from_spec(spec);
}

// ---- algebras

struct LoadedAlgebra {
    HopfAlgebra h;
    std::optional<Group> group;
    Report report;  // axioms, then integrals
};

inline json field_json(Field f) { return f.p; }

inline json to_json(const HopfAlgebra& h, const Group* g = nullptr) {
    json j;
    j["kind"] = "hopf-algebra";
    j["field"] = field_json(h.field);
    j["dim"] = h.dim;
    j["labels"] = h.labels;
    j["M"] = to_json(h.M);
    j["unit"] = to_json(h.unit);
    j["Delta"] = to_json(h.Delta);
    j["counit"] = to_json(h.counit);
    j["S"] = to_json(h.S);
    if (h.integrals) {
        j["integrals"] = {{"mu", to_json(tensor_to_vec(h.integrals->mu, h.dim, h.field))},
                          {"e", to_json(tensor_to_vec(h.integrals->e, h.dim, h.field))}};
    }
    if (g) j["group"] = to_json(*g);
    return j;
}

inline Field field_from(const json& j) {
    auto p = j.contains("field") ? get<std::uint64_t>(j, "field") : 0;
    return p == 0 ? Field::rational() : Field::prime(p);
}

// Parses structure tensors and runs the axiom and integral checks. Nothing
// stored in the file is trusted: given integrals are only compared.
inline LoadedAlgebra algebra_from(const json& j) {
    if (j.contains("kind") && get<std::string>(j, "kind") != "hopf-algebra")
        fail(ErrorKind::ParseError, "expected kind hopf-algebra, got " + get<std::string>(j, "kind"));
    LoadedAlgebra out;
    HopfAlgebra& h = out.h;
    h.field = field_from(j);
    h.dim = get<std::uint32_t>(j, "dim");
    if (h.dim == 0) fail(ErrorKind::ParseError, "dimension must be positive");
    if (j.contains("labels")) h.labels = get<std::vector<std::string>>(j, "labels");
    h.M = tensor_from(child(j, "M"), h.field);
    h.unit = tensor_from(child(j, "unit"), h.field);
    h.Delta = tensor_from(child(j, "Delta"), h.field);
    h.counit = tensor_from(child(j, "counit"), h.field);
    h.S = tensor_from(child(j, "S"), h.field);
    if (j.contains("group")) out.group = group_from(j.at("group"));
    out.report = check_axioms(h);
    if (!h.axioms_verified) return out;
    try {
        ensure_integrals(h);
        out.report.add("integrals normalizable", true);
    } catch (const Error& e) {
        out.report.add("integrals normalizable", false, e.what());
        return out;
    }
    if (j.contains("integrals")) {
        const auto& ij = j.at("integrals");
        Vec mu = vec_from(child(ij, "mu"), h.field, h.dim), e = vec_from(child(ij, "e"), h.field, h.dim);
        bool same = mu == tensor_to_vec(h.integrals->mu, h.dim, h.field) &&
                    e == tensor_to_vec(h.integrals->e, h.dim, h.field);
        if (!same) {
            // a different normalization is still fine if it satisfies the checks
            IntegralPair ip{vec_to_tensor(mu, Dir::In, h.field), vec_to_tensor(e, Dir::Out, h.field), Scalar::one(h.field)};
            Report r = check_integrals(h, ip);
            for (const auto& it : r.items) out.report.add("given " + it.name, it.pass, it.witness);
            if (r.ok()) h.integrals = ip;
        }
    }
    return out;
}

// Loads and demands a verified algebra.
inline LoadedAlgebra load_algebra(const json& j) {
    LoadedAlgebra a = algebra_from(j);
    if (!a.report.ok())
        fail(ErrorKind::VerificationFailure, a.report.first_failure()->name + " [" + a.report.first_failure()->witness + "]");
    return a;
}

// ---- doubles

inline json to_json(const DoubleAlgebra& dd, const Group* g = nullptr) {
    json j;
    j["kind"] = "drinfeld-double";
    j["base"] = to_json(dd.base, g);
    j["dim"] = dd.dim();
    j["materialized"] = dd.materialized;
    j["R"] = to_json(dd.R);
    j["u"] = to_json(dd.u);
    if (dd.materialized) j["algebra"] = to_json(dd.D);
    return j;
}

struct LoadedDouble {
    DoubleAlgebra dd;
    std::optional<Group> group;
};

// Rebuilds the double from its base and checks the stored R and u.
inline LoadedDouble double_from(const json& j) {
    if (get<std::string>(j, "kind") != "drinfeld-double") fail(ErrorKind::ParseError, "expected kind drinfeld-double");
    LoadedAlgebra base = load_algebra(child(j, "base"));
    LoadedDouble out{drinfeld_double(base.h), base.group};
    const Field f = out.dd.base.field;
    if (j.contains("R") && !(tensor_from(j.at("R"), f).entries() == out.dd.R.entries()))
        fail(ErrorKind::VerificationFailure, "stored R differs from the recomputed R");
    if (j.contains("u") && vec_from(j.at("u"), f, out.dd.dim()) != out.dd.u)
        fail(ErrorKind::VerificationFailure, "stored u differs from the recomputed u");
    if (!out.dd.report.ok())
        fail(ErrorKind::VerificationFailure, "double: " + out.dd.report.first_failure()->name);
    return out;
}

// ---- diagrams

inline json to_json(const Diagram& e) {
    auto curves = [](const std::vector<Curve>& v) {
        json a = json::array();
        for (const auto& c : v) a.push_back({{"id", c.id}, {"seq", c.seq}});
        return a;
    };
    json xs = json::array();
    for (const auto& [id, c] : e.crossings) xs.push_back({{"id", id}, {"kind", kind_tag(c.kind)}, {"sign", c.sign}});
    return {{"genus", e.genus}, {"alpha", curves(e.alpha)}, {"beta", curves(e.beta)},
            {"links", curves(e.links)}, {"crossings", xs}};
}

inline Diagram diagram_from(const json& j) {
    Diagram e;
    e.genus = get<int>(j, "genus");
    auto curves = [&](const char* key) {
        std::vector<Curve> v;
        if (!j.contains(key)) return v;
        for (const auto& c : j.at(key)) v.push_back({get<int>(c, "id"), get<std::vector<int>>(c, "seq")});
        return v;
    };
    e.alpha = curves("alpha");
    e.beta = curves("beta");
    e.links = curves("links");
    for (const auto& x : child(j, "crossings")) {
        Crossing c;
        c.id = get<int>(x, "id");
        auto k = get<std::string>(x, "kind");
        if (k == "ab") c.kind = CrossKind::AB;
        else if (k == "aL") c.kind = CrossKind::AL;
        else if (k == "bL") c.kind = CrossKind::BL;
        else fail(ErrorKind::ParseError, "crossing kind must be ab, aL or bL");
        c.sign = get<int>(x, "sign");
        if (e.crossings.count(c.id)) fail(ErrorKind::InvalidDiagram, "crossing id " + std::to_string(c.id) + " repeated");
        e.crossings[c.id] = c;
    }
    return e;
}

// ---- planar links

inline json to_json(const PlanarLink& p) { return {{"strands", p.strands}, {"word", p.word}, {"framings", p.framings}}; }

inline PlanarLink planar_from(const json& j) {
    PlanarLink p;
    p.strands = get<int>(j, "strands");
    p.word = get<std::vector<int>>(j, "word");
    p.framings = get<std::vector<int>>(j, "framings");
    check_framings(p, component_count(p));
    return p;
}

// ---- colorings

inline std::size_t parse_index(const std::string& s) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size() || v < 0) throw std::invalid_argument(s);
        return std::size_t(v);
    } catch (const std::exception&) {
        fail(ErrorKind::ParseError, "bad index '" + s + "'");
    }
}

// Context needed to resolve named colors.
struct ColorContext {
    const HopfAlgebra* H = nullptr;             // base algebra of the bracket
    const DoubleAlgebra* double_of_H = nullptr;  // for "regular"
    const QuasitriangularData* qt = nullptr;     // for "rho_R" (H quasitriangular)
    const Group* group = nullptr;                // for "irrep:a:c"
};

inline json to_json(const ColoredRep& c) {
    json a = json::array(), b = json::array();
    for (const auto& m : c.rep.A) a.push_back(to_json(m));
    for (const auto& m : c.rep.B) b.push_back(to_json(m));
    return {{"name", c.rep.name}, {"dim", c.rep.dimV}, {"A", a}, {"B", b}, {"trace", to_json(c.trace.W)}};
}

// A color is "regular", "rho_R", "irrep:A:C" (group element index, character
// index) or an explicit {"dim", "A", "B", "trace"} object.
inline ColoredRep color_from(const json& j, const ColorContext& ctx) {
    if (!ctx.H) fail(ErrorKind::PreconditionViolated, "no algebra for colors");
    const HopfAlgebra& H = *ctx.H;
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "regular") {
            if (!ctx.double_of_H) fail(ErrorKind::PreconditionViolated, "regular color needs the double");
            return make_regular_rep(*ctx.double_of_H);
        }
        if (s == "rho_R") {
            if (!ctx.qt) fail(ErrorKind::PreconditionViolated, "rho_R needs a quasitriangular algebra (pass a double file)");
            return make_rho_R(*ctx.qt);
        }
        if (s.rfind("irrep:", 0) == 0) {
            if (!ctx.group) fail(ErrorKind::PreconditionViolated, "irrep colors need a group algebra with its table");
            auto rest = s.substr(6);
            auto c = rest.find(':');
            if (c == std::string::npos) fail(ErrorKind::ParseError, "irrep color is irrep:A:C");
            const std::size_t a = parse_index(rest.substr(0, c)), ch = parse_index(rest.substr(c + 1));
            auto irr = abelian_double_irreps(*ctx.group, H.field);
            const std::size_t n = ctx.group->order();
            if (a >= n || ch >= n) fail(ErrorKind::ParseError, "irrep index out of range");
            return irr[a * n + ch];
        }
        fail(ErrorKind::ParseError, "unknown color '" + s + "'");
    }
    ColoredRep c;
    c.rep.dimV = get<std::uint32_t>(j, "dim");
    c.rep.field = H.field;
    c.rep.name = j.contains("name") ? get<std::string>(j, "name") : "explicit";
    for (const auto& m : child(j, "A")) c.rep.A.push_back(matrix_from(m, H.field, c.rep.dimV));
    for (const auto& m : child(j, "B")) c.rep.B.push_back(matrix_from(m, H.field, c.rep.dimV));
    if (c.rep.A.size() != H.dim || c.rep.B.size() != H.dim)
        fail(ErrorKind::AlgebraMismatch, "representation needs " + std::to_string(H.dim) + " A and B matrices");
    c.trace.W = j.contains("trace") ? matrix_from(j.at("trace"), H.field, c.rep.dimV)
                                    : Matrix::identity(c.rep.dimV, H.field);
    Report rr = check_double_rep(H, c.rep);
    if (!rr.ok()) fail(ErrorKind::RepCheckFailure, c.rep.name + ": " + rr.first_failure()->name + " " + rr.first_failure()->witness);
    Report tr = check_trace(c.rep, c.trace, H);
    if (!tr.ok()) fail(ErrorKind::RepCheckFailure, c.rep.name + ": " + tr.first_failure()->name);
    return c;
}

inline std::vector<ColoredRep> colors_from(const json& j, const char* key, const ColorContext& ctx) {
    std::vector<ColoredRep> out;
    const json& arr = child(j, key);
    if (!arr.is_array()) fail(ErrorKind::ParseError, std::string("'") + key + "' must be a list");
    for (const auto& c : arr) out.push_back(color_from(c, ctx));
    return out;
}

}  // namespace kup::io
