#include "kup/cli.hpp"

#include <functional>
#include <memory>
#include <ostream>

#include "CLI11.hpp"
#include "kup/io.hpp"
#include "kup/moves.hpp"
#include "kup/verify.hpp"

namespace kup {
namespace {

using io::json;

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotNormalizable:
        case ErrorKind::NotTwoSided:
        case ErrorKind::NormalizationUnavailable:
        case ErrorKind::FieldMismatch:
        case ErrorKind::NotAbelian:
            return 2;
        default:
            return 1;
    }
}

// An algebra argument: a hopf-algebra file, or a double file whose D(H) is used.
struct AlgebraArg {
    io::LoadedAlgebra base;
    std::optional<io::LoadedDouble> dbl;  // set when the file held a double
    std::optional<QuasitriangularData> qt;
    std::unique_ptr<DoubleAlgebra> double_of_H;

    const HopfAlgebra& H() const { return dbl ? dbl->dd.D : base.h; }
    const Group* group() const { return !dbl && base.group ? &*base.group : nullptr; }
};

std::unique_ptr<AlgebraArg> load_algebra_arg(const std::string& path) {
    json j = io::read_json_file(path);
    auto a = std::make_unique<AlgebraArg>();
    if (j.contains("kind") && j["kind"] == "drinfeld-double") {
        a->dbl = io::double_from(j);
        if (!a->dbl->dd.materialized) fail(ErrorKind::PreconditionViolated, "double too large to use as the algebra");
        a->qt = quasitriangular(a->dbl->dd);
    } else {
        a->base = io::load_algebra(j);
    }
    return a;
}

io::ColorContext color_context(AlgebraArg& a, bool need_regular) {
    if (need_regular && !a.double_of_H) a.double_of_H = std::make_unique<DoubleAlgebra>(drinfeld_double(a.H()));
    return {&a.H(), a.double_of_H.get(), a.qt ? &*a.qt : nullptr, a.group()};
}

bool mentions_regular(const json& arr) {
    for (const auto& c : arr)
        if (c.is_string() && c.get<std::string>() == "regular") return true;
    return false;
}

void print_report(std::ostream& out, const Report& r) { out << r.str(); }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact Kuperberg, extended bracket and HKR invariants"};
    app.require_subcommand(1);
    std::function<int()> action;

    // algebra
    auto* alg = app.add_subcommand("algebra", "build and check Hopf algebras");
    alg->require_subcommand(1);
    {
        auto* c = alg->add_subcommand("group", "group algebra k[G]");
        auto cyc = std::make_shared<std::uint32_t>(0), sym = std::make_shared<std::uint32_t>(0);
        auto table = std::make_shared<std::string>(), outp = std::make_shared<std::string>();
        auto prime = std::make_shared<std::uint64_t>(0);
        auto* o1 = c->add_option("--cyclic", *cyc, "Z/n");
        auto* o2 = c->add_option("--symmetric", *sym, "S_n");
        auto* o3 = c->add_option("--table", *table, "group table JSON");
        o1->excludes(o2)->excludes(o3);
        o2->excludes(o3);
        c->add_option("--field", *prime, "prime characteristic (0 = rationals)");
        c->add_option("--out", *outp, "output file")->required();
        c->callback([&, cyc, sym, table, outp, prime, o1, o2, o3] {
            action = [&, cyc, sym, table, outp, prime, o1, o2, o3] {
                Group g;
                if (*o1) g = cyclic_group(*cyc);
                else if (*o2) g = symmetric_group(*sym);
                else if (*o3) g = io::group_from(io::read_json_file(*table));
                else fail(ErrorKind::ParseError, "give --cyclic, --symmetric or --table");
                HopfAlgebra h = build_group_algebra(g, *prime ? Field::prime(*prime) : Field::rational());
                ensure_integrals(h);
                io::write_json_file(*outp, io::to_json(h, &g));
                out << "wrote " << *outp << " (dim " << h.dim << ")\n";
                return 0;
            };
        });
    }
    {
        auto* c = alg->add_subcommand("check", "verify Hopf axioms and integrals");
        auto file = std::make_shared<std::string>();
        c->add_option("FILE", *file)->required();
        c->callback([&, file] {
            action = [&, file] {
                json j = io::read_json_file(*file);
                if (j.contains("kind") && j["kind"] == "drinfeld-double") {
                    io::LoadedDouble d = io::double_from(j);
                    print_report(out, d.dd.report);
                    return d.dd.report.ok() ? 0 : 1;
                }
                io::LoadedAlgebra a = io::algebra_from(j);
                print_report(out, a.report);
                if (a.report.ok()) return 0;
                err << "failed: " << a.report.first_failure()->name << "\n";
                const auto& w = a.report.first_failure()->witness;
                return w.find("NotNormalizable") != std::string::npos ? 2 : 1;
            };
        });
    }
    {
        auto* c = alg->add_subcommand("double", "Drinfeld double D(H)");
        auto file = std::make_shared<std::string>(), outp = std::make_shared<std::string>();
        c->add_option("FILE", *file)->required();
        c->add_option("--out", *outp)->required();
        c->callback([&, file, outp] {
            action = [&, file, outp] {
                io::LoadedAlgebra a = io::load_algebra(io::read_json_file(*file));
                DoubleAlgebra dd = drinfeld_double(a.h);
                print_report(out, dd.report);
                io::write_json_file(*outp, io::to_json(dd, a.group ? &*a.group : nullptr));
                out << "wrote " << *outp << " (dim " << dd.dim() << ")\n";
                return dd.report.ok() ? 0 : 1;
            };
        });
    }

    // diagram
    auto* dia = app.add_subcommand("diagram", "Heegaard-Link diagrams");
    dia->require_subcommand(1);
    {
        auto* c = dia->add_subcommand("validate", "check diagram invariants");
        auto file = std::make_shared<std::string>();
        c->add_option("FILE", *file)->required();
        c->callback([&, file] {
            action = [&, file] {
                Report r = validate(io::diagram_from(io::read_json_file(*file)));
                print_report(out, r);
                return r.ok() ? 0 : 1;
            };
        });
    }
    {
        auto* c = dia->add_subcommand("from-link", "diagram of (S³, L) from a braid closure");
        auto file = std::make_shared<std::string>(), outp = std::make_shared<std::string>();
        c->add_option("FILE", *file)->required();
        c->add_option("--out", *outp)->required();
        c->callback([&, file, outp] {
            action = [&, file, outp] {
                Diagram e = from_planar_link(io::planar_from(io::read_json_file(*file)));
                io::write_json_file(*outp, io::to_json(e));
                out << "wrote " << *outp << " (genus " << e.genus << ")\n";
                return 0;
            };
        });
    }
    {
        auto* c = dia->add_subcommand("move", "apply moves");
        auto file = std::make_shared<std::string>(), outp = std::make_shared<std::string>();
        auto moves = std::make_shared<std::vector<std::string>>();
        c->add_option("FILE", *file)->required();
        c->add_option("--move", *moves, "move spec, repeatable")->required();
        c->add_option("--out", *outp)->required();
        c->callback([&, file, outp, moves] {
            action = [&, file, outp, moves] {
                Diagram e = io::diagram_from(io::read_json_file(*file));
                require_valid(e);
                for (const auto& m : *moves) e = apply_move(e, m);
                io::write_json_file(*outp, io::to_json(e));
                out << "wrote " << *outp << "\n";
                return 0;
            };
        });
    }
    {
        auto* c = dia->add_subcommand("surgery", "surgery on link components");
        auto file = std::make_shared<std::string>(), outp = std::make_shared<std::string>();
        auto comp = std::make_shared<std::size_t>(0);
        c->add_option("FILE", *file)->required();
        auto* oc = c->add_option("--component", *comp);
        c->add_option("--out", *outp)->required();
        c->callback([&, file, outp, comp, oc] {
            action = [&, file, outp, comp, oc] {
                Diagram e = io::diagram_from(io::read_json_file(*file));
                require_valid(e);
                if (*oc) {
                    if (*comp >= e.links.size())
                        fail(ErrorKind::NoSuchComponent, "no link component " + std::to_string(*comp));
                    e = surgery(sort_link_crossings(e, *comp).diagram, *comp);
                } else {
                    e = surgery_all(e);
                }
                io::write_json_file(*outp, io::to_json(e));
                out << "wrote " << *outp << " (genus " << e.genus << ")\n";
                return 0;
            };
        });
    }

    // invariant
    auto* inv = app.add_subcommand("invariant", "evaluate invariants");
    inv->require_subcommand(1);
    {
        auto* c = inv->add_subcommand("bracket", "extended bracket; regular colors by default");
        auto dfile = std::make_shared<std::string>(), afile = std::make_shared<std::string>();
        auto colors = std::make_shared<std::string>();
        c->add_option("DIAGRAM", *dfile)->required();
        c->add_option("ALGEBRA", *afile)->required();
        c->add_option("--colors", *colors, "JSON {\"colors\": [...]}, one per component");
        c->callback([&, dfile, afile, colors] {
            action = [&, dfile, afile, colors] {
                Diagram e = io::diagram_from(io::read_json_file(*dfile));
                auto a = load_algebra_arg(*afile);
                std::vector<ColoredRep> reps;
                if (colors->empty()) {
                    if (!e.links.empty()) reps.push_back(io::color_from("regular", color_context(*a, true)));
                    ColorAssignment ca(e.links.size(), reps.empty() ? nullptr : &reps[0]);
                    out << bracket(e, a->H(), ca).str() << "\n";
                    return 0;
                }
                json cj = io::read_json_file(*colors);
                reps = io::colors_from(cj, "colors", color_context(*a, mentions_regular(io::child(cj, "colors"))));
                ColorAssignment ca;
                for (const auto& r : reps) ca.push_back(&r);
                out << bracket(e, a->H(), ca).str() << "\n";
                return 0;
            };
        });
    }
    {
        auto* c = inv->add_subcommand("kuperberg", "Kuperberg invariant of a link-free diagram");
        auto dfile = std::make_shared<std::string>(), afile = std::make_shared<std::string>();
        c->add_option("DIAGRAM", *dfile)->required();
        c->add_option("ALGEBRA", *afile)->required();
        c->callback([&, dfile, afile] {
            action = [&, dfile, afile] {
                Diagram e = io::diagram_from(io::read_json_file(*dfile));
                auto a = load_algebra_arg(*afile);
                out << kuperberg(e, a->H()).str() << "\n";
                return 0;
            };
        });
    }
    {
        auto* c = inv->add_subcommand("hennings", "HKR invariant of a braid closure");
        auto lfile = std::make_shared<std::string>(), dfile = std::make_shared<std::string>();
        c->add_option("LINK", *lfile)->required();
        c->add_option("DOUBLE", *dfile)->required();
        c->callback([&, lfile, dfile] {
            action = [&, lfile, dfile] {
                PlanarLink p = io::planar_from(io::read_json_file(*lfile));
                io::LoadedDouble d = io::double_from(io::read_json_file(*dfile));
                HkrResult r = hkr_invariant(p, make_ribbon(d.dd));
                json j{{"bracket", r.bracket.str()}, {"value", r.value.str()}, {"components", r.components},
                       {"signature", r.signature}};
                out << j.dump() << "\n";
                return 0;
            };
        });
    }
    {
        auto* c = inv->add_subcommand("colored", "bracket over all colorings from a palette");
        auto dfile = std::make_shared<std::string>(), afile = std::make_shared<std::string>();
        auto pfile = std::make_shared<std::string>();
        auto sum = std::make_shared<bool>(false);
        c->add_option("DIAGRAM", *dfile)->required();
        c->add_option("ALGEBRA", *afile)->required();
        c->add_option("--palette", *pfile, "JSON {\"palette\": [...]}")->required();
        c->add_flag("--sum", *sum, "print only the sum over colorings");
        c->callback([&, dfile, afile, pfile, sum] {
            action = [&, dfile, afile, pfile, sum] {
                Diagram e = io::diagram_from(io::read_json_file(*dfile));
                auto a = load_algebra_arg(*afile);
                json pj = io::read_json_file(*pfile);
                auto pal = io::colors_from(pj, "palette", color_context(*a, mentions_regular(io::child(pj, "palette"))));
                if (*sum) {
                    out << colored_state_sum(e, a->H(), pal).str() << "\n";
                    return 0;
                }
                const std::size_t m = e.links.size();
                std::vector<std::size_t> col(m, 0);
                while (true) {
                    ColorAssignment ca;
                    for (std::size_t k = 0; k < m; ++k) {
                        ca.push_back(&pal[col[k]]);
                        out << (k ? "," : "") << pal[col[k]].rep.name;
                    }
                    out << (m ? ": " : "") << bracket(e, a->H(), ca).str() << "\n";
                    std::size_t k = 0;
                    while (k < m && ++col[k] == pal.size()) col[k++] = 0;
                    if (k == m) break;
                }
                return 0;
            };
        });
    }

    // verify
    {
        auto* c = app.add_subcommand("verify", "check a relation between pipelines");
        auto rel = std::make_shared<std::string>(), lfile = std::make_shared<std::string>();
        auto gspec = std::make_shared<std::string>();
        c->add_option("RELATION", *rel, "t2, t3, t4 or corollary")->required();
        c->add_option("--link", *lfile)->required();
        c->add_option("--group", *gspec, "cyclic:n, symmetric:n, product:A,B or table:FILE")->required();
        c->callback([&, rel, lfile, gspec] {
            action = [&, rel, lfile, gspec] {
                Relation r = parse_relation(*rel);
                PlanarLink p = io::planar_from(io::read_json_file(*lfile));
                Group g = io::group_from_any_spec(*gspec);
                VerifyResult v = verify_relation(r, p, g);
                if (v.holds()) {
                    out << "lhs = rhs = " << v.lhs.str() << "\n";
                    return 0;
                }
                out << "lhs = " << v.lhs.str() << " (" << v.lhs_name << "), rhs = " << v.rhs.str() << " ("
                    << v.rhs_name << ")\n";
                return 3;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }
    try {
        return action ? action() : 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace kup
