#pragma once

#include <string>

#include "kup/bracket.hpp"
#include "kup/hkr.hpp"
#include "kup/surgery.hpp"

namespace kup {

enum class Relation { T2, T3, T4, Corollary };

inline Relation parse_relation(const std::string& s) {
    if (s == "t2") return Relation::T2;
    if (s == "t3") return Relation::T3;
    if (s == "t4") return Relation::T4;
    if (s == "corollary") return Relation::Corollary;
    fail(ErrorKind::ParseError, "unknown relation '" + s + "' (t2, t3, t4, corollary)");
}

struct VerifyResult {
    Scalar lhs, rhs;
    std::string lhs_name, rhs_name;
    bool holds() const { return lhs == rhs; }
};

// Everything is rebuilt from the group: the algebra, its double and the
// representations all pass their checks again before evaluation.
inline VerifyResult verify_relation(Relation rel, const PlanarLink& link, const Group& g) {
    HopfAlgebra h = build_group_algebra(g);
    ensure_integrals(h);
    const Diagram E = from_planar_link(link);
    auto hkr_double = [&](const DoubleAlgebra& dd) { return hkr_invariant(link, make_ribbon(dd)).value; };
    auto checked_double = [&]() {
        DoubleAlgebra dd = drinfeld_double(h);
        if (!dd.materialized) fail(ErrorKind::PreconditionViolated, "double too large to materialize");
        if (!dd.report.ok()) fail(ErrorKind::VerificationFailure, "double: " + dd.report.first_failure()->name);
        return dd;
    };
    switch (rel) {
        case Relation::T4: {
            DoubleAlgebra dd = drinfeld_double(h);
            return {bracket(E, h, make_regular_rep(dd)), kuperberg(surgery_all(E), h), "regular bracket",
                    "surgery kuperberg"};
        }
        case Relation::T2: {
            DoubleAlgebra dd = checked_double();
            return {bracket(E, h, make_regular_rep(dd)), hkr_double(dd), "regular bracket", "hkr over D(H)"};
        }
        case Relation::T3: {
            DoubleAlgebra dd = checked_double();
            ColoredRep rho = make_rho_R(quasitriangular(dd));
            return {bracket(E, dd.D, rho), hkr_double(dd), "rho_R bracket over D(H)", "hkr over D(H)"};
        }
        case Relation::Corollary: {
            DoubleAlgebra dd = checked_double();
            return {kuperberg(surgery_all(E), h), hkr_double(dd), "surgery kuperberg", "hkr over D(H)"};
        }
    }
    fail(ErrorKind::PreconditionViolated, "unknown relation");
}

}  // namespace kup
