// conserv: exact-arithmetic workbench for the algebras S2, W2, W(2).
//
// Subcommands: show, graph, analyze, autos, derivations, kantor,
// verify-paper. Fields are Q or F<p> with p prime. Exit codes: 0 all pass,
// 1 some check failed, 2 usage error. CONSERV_THREADS caps parallelism.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "conserv/verify_paper.hpp"

using namespace conserv;

namespace {

FieldSpec parse_field_or_die(const std::string& s) {
    auto spec = FieldSpec::parse(s);
    if (!spec)
        throw error("'" + s + "' is not Q or F<p> with p prime "
                    "(v1 supports only the rationals and prime fields)");
    return *spec;
}

template <class Fn>
int with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.kind == FieldSpec::Kind::rationals) {
        Rationals Q;
        return fn(Q);
    }
    PrimeField Fp(spec.p);
    return fn(Fp);
}

template <Field F>
StructureAlgebra<F> load_algebra(const F& f, const std::string& ref) {
    if (auto name = catalog_name_from(ref)) return catalog(*name, f);
    if (ref.size() > 5 && ref.substr(ref.size() - 5) == ".json") {
        auto j = load_json_file(ref);
        auto file_spec = field_from_json(j.at("field"));
        if (!(file_spec == f.spec()))
            throw error("file declares field " + file_spec.name() + ", requested " +
                        f.spec().name());
        return algebra_from_json(f, j);
    }
    throw error("unknown algebra '" + ref + "' (catalog: S2, S2_char2, W2, W2x2, or a .json path)");
}

template <Field F>
void print_table(std::ostream& os, const StructureAlgebra<F>& A) {
    os << A.name << " over " << A.field.spec().name() << ", dim " << A.dim << "\n";
    for (int i = 0; i < A.dim; ++i) {
        for (int j = 0; j < A.dim; ++j)
            os << "e" << (i + 1) << "*e" << (j + 1) << " = "
               << format_vec(A, A.basis_product(i, j)) << (j + 1 < A.dim ? "   " : "");
        os << "\n";
    }
}

template <Field F>
nlohmann::json analyze_algebra(const StructureAlgebra<F>& A) {
    const F& f = A.field;
    nlohmann::json out;
    out["algebra"] = A.name;
    out["field"] = f.spec().name();
    out["dim"] = A.dim;
    auto g = build_graph(A);
    out["graph"] = {{"edges", g.edge_count()},
                    {"strongly_connected", is_strongly_connected(g)}};
    if (A.dim <= 20) {
        auto ideals = ideals_from_fixed_points(A);
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& I : ideals) {
            nlohmann::json v = nlohmann::json::array();
            for (int x : I.vertices) v.push_back(x + 1);
            arr.push_back({{"vertices", v}, {"verified", I.verified}});
        }
        out["fixed_point_ideals"] = arr;
    }
    auto M = generate_mult_algebra(A);
    out["dimension"] = M.dim();
    auto rad = trace_form_radical(M);
    out["radical_dim"] = int(rad.size());
    if (!rad.empty()) {
        auto nil = subspace_is_nilpotent(M, rad);
        out["radical_square_dims"] = nil.chain_dims;
        out["radical_nilpotent"] = nil.nilpotent;
    }
    // quotient identification against the paper's explicit unit candidates
    std::string quotient = M.dim() == A.dim * A.dim ? "End" : "unidentified";
    if (A.name == "S2" && f.characteristic() == 3) {
        std::vector<Matrix<F>> fam{basis_unit(f, 4, 0, 0), basis_unit(f, 4, 0, 2),
                                   basis_unit(f, 4, 2, 0), basis_unit(f, 4, 2, 2)};
        auto units = verify_matrix_units(M, {fam}, 2);
        if (units.all_inside && units.relations_ok) quotient = "M2";
    } else if (A.name == "W2" && f.characteristic() == 3) {
        auto C = [&](std::initializer_list<std::array<int, 3>> t) {
            return detail::unit_combo(f, 6, t);
        };
        std::vector<Matrix<F>> e_fam{
            C({{{1, 1, 1}}, {{1, 5, 1}}}), C({{{1, 3, 1}}, {{1, 6, 1}}}),
            C({{{3, 1, 1}}, {{3, 5, 1}}}), C({{{3, 3, 1}}, {{3, 6, 1}}})};
        std::vector<Matrix<F>> u_fam{
            C({{{1, 5, -1}}, {{5, 5, 1}}}), C({{{1, 6, 1}}, {{5, 6, -1}}}),
            C({{{3, 5, 1}}, {{6, 5, -1}}}), C({{{3, 6, -1}}, {{6, 6, 1}}})};
        auto units = verify_matrix_units(M, {e_fam, u_fam}, 2);
        if (units.all_inside && units.relations_ok && units.cross_ok) quotient = "M2+M2";
    }
    out["quotient_identification"] = quotient;
    if (!A.has_zero_product()) {
        out["simple_by_dimension"] = simplicity_by_dimension(A);
        if (f.characteristic() != 0) {
            auto cert = simplicity_lemma_check(A);
            out["simple_by_lemma"] = cert.simple;
            if (!cert.simple) out["lemma_failure"] = cert.failure;
        }
    }
    auto ann = annihilators(A);
    auto span_json = [&](const std::vector<Vec<F>>& rows) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& v : rows) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto& x : v) row.push_back(f.to_string(x));
            arr.push_back(row);
        }
        return arr;
    };
    out["annihilators"] = {{"left", span_json(ann.left)},
                           {"right", span_json(ann.right)},
                           {"two_sided", span_json(ann.two_sided)}};
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for the conservative algebras S2, W2, W(2)"};
    app.require_subcommand(1);

    std::string field_str = "Q", ref, dot_path, json_path, family_name;
    std::string data_dir = std::string(CONSERV_DATA_DIR);
    bool opt_enumerate = false, opt_complete = false, opt_family = false;
    bool opt_rebuild = false, opt_check_inv = false, opt_json = false;

    auto add_field = [&](CLI::App* cmd) {
        cmd->add_option("--field", field_str, "Q or F<p>, p prime")->capture_default_str();
    };

    auto* show = app.add_subcommand("show", "print a multiplication table");
    show->add_option("algebra", ref, "catalog name or .json path")->required();
    add_field(show);
    show->add_flag("--json", opt_json, "emit the JSON exchange format");

    auto* graph = app.add_subcommand("graph", "basis graph and its invariants");
    graph->add_option("algebra", ref)->required();
    add_field(graph);
    graph->add_option("--dot", dot_path, "write Graphviz DOT to this path");

    auto* analyze = app.add_subcommand("analyze", "multiplication algebra analysis");
    analyze->add_option("algebra", ref)->required();
    add_field(analyze);

    auto* autos = app.add_subcommand("autos", "automorphism groups");
    autos->add_option("algebra", ref)->required();
    add_field(autos);
    autos->add_flag("--enumerate", opt_enumerate, "exhaustive enumeration (finite fields)");
    autos->add_flag("--family", opt_family, "verify the applicable printed family and law");
    autos->add_flag("--complete", opt_complete, "enumeration vs family set equality");

    auto* deriv = app.add_subcommand("derivations", "derivation algebra");
    deriv->add_option("algebra", ref)->required();
    add_field(deriv);

    auto* kantor = app.add_subcommand("kantor", "Kantor construction of W(2)");
    add_field(kantor);
    kantor->add_flag("--rebuild-w2", opt_rebuild, "rebuild W(2) and compare with the table");
    kantor->add_flag("--check-invariants", opt_check_inv,
                     "sample the invariant/charpoly normalization");

    auto* verify = app.add_subcommand("verify-paper", "run the full verification suite");
    verify->add_option("--json", json_path, "also write the report as JSON");
    verify->add_option("--data-dir", data_dir, "directory with invariant_normalization.json")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        auto spec = parse_field_or_die(field_str);
        if (show->parsed())
            return with_field(spec, [&](auto f) {
                auto A = load_algebra(f, ref);
                if (opt_json)
                    std::cout << algebra_to_json(A).dump(2) << "\n";
                else
                    print_table(std::cout, A);
                return 0;
            });
        if (graph->parsed())
            return with_field(spec, [&](auto f) {
                auto A = load_algebra(f, ref);
                auto g = build_graph(A);
                std::cout << "vertices: " << g.n << "\nedges: " << g.edge_count()
                          << "\nstrongly_connected: "
                          << (is_strongly_connected(g) ? "true" : "false") << "\n";
                if (A.dim <= 20) {
                    auto fps = tree_fixed_points(g);
                    std::cout << "tree_fixed_points: " << fps.size() << "\n";
                    for (const auto& S : fps) {
                        std::cout << "  {";
                        for (size_t i = 0; i < S.size(); ++i)
                            std::cout << (i ? "," : "") << "e" << (S[i] + 1);
                        std::cout << "}\n";
                    }
                }
                if (!dot_path.empty()) {
                    std::ofstream out(dot_path);
                    if (!out) throw error("cannot write " + dot_path);
                    out << export_dot(g);
                    std::cout << "dot written to " << dot_path << "\n";
                }
                return 0;
            });
        if (analyze->parsed())
            return with_field(spec, [&](auto f) {
                auto A = load_algebra(f, ref);
                std::cout << analyze_algebra(A).dump(2) << "\n";
                return 0;
            });
        if (autos->parsed())
            return with_field(spec, [&](auto f) {
                auto A = load_algebra(f, ref);
                auto name = catalog_name_from(ref);
                if (!opt_enumerate && !opt_family && !opt_complete) opt_enumerate = true;
                int rc = 0;
                if (opt_enumerate) {
                    auto list = enumerate_automorphisms(A);
                    std::cout << "automorphisms: " << list.size() << "\n";
                    nlohmann::json arr = nlohmann::json::array();
                    for (const auto& m : list) {
                        nlohmann::json jm = nlohmann::json::array();
                        for (int r = 0; r < m.rows; ++r) {
                            nlohmann::json row = nlohmann::json::array();
                            for (int c = 0; c < m.cols; ++c)
                                row.push_back(f.to_string(m.at(r, c)));
                            jm.push_back(row);
                        }
                        arr.push_back(jm);
                    }
                    std::cout << arr.dump() << "\n";
                }
                if (opt_family || opt_complete) {
                    if (!name) throw error("--family/--complete need a catalog algebra");
                    auto fams = automorphism_families(f);
                    bool any = false;
                    for (const auto& fam : fams) {
                        if (fam.target != *name || !fam.char_ok(f.characteristic())) continue;
                        any = true;
                        if (opt_family) {
                            auto fr = verify_family(f, fam);
                            auto lr = verify_group_law(f, fam);
                            std::cout << fam.name << ": members "
                                      << (fr.ok ? "pass" : "FAIL") << " ("
                                      << fr.members_checked << "), law "
                                      << (lr.ok ? "pass" : "FAIL") << "\n";
                            if (!fr.ok || !lr.ok) rc = 1;
                        }
                        if (opt_complete) {
                            auto cr = family_completeness(f, fam);
                            std::cout << fam.name << ": " << cr.enumerated << " enumerated = "
                                      << cr.family_size << " family members, "
                                      << (cr.ok ? "pass" : "FAIL") << "\n";
                            if (!cr.ok) rc = 1;
                        }
                    }
                    if (!any) throw error("no printed family covers this algebra/characteristic");
                }
                return rc;
            });
        if (deriv->parsed())
            return with_field(spec, [&](auto f) {
                auto A = load_algebra(f, ref);
                auto d = derivations(A);
                std::cout << "dim Der = " << d.dim() << "\n";
                if (d.aff2_normalized) std::cout << "normalized bracket: [h, x] = x\n";
                for (int i = 0; i < d.dim(); ++i) {
                    std::cout << "D" << (i + 1) << ":\n";
                    for (int r = 0; r < A.dim; ++r) {
                        for (int c = 0; c < A.dim; ++c)
                            std::cout << f.to_string(d.basis[i].at(r, c)) << " ";
                        std::cout << "\n";
                    }
                }
                return 0;
            });
        if (kantor->parsed())
            return with_field(spec, [&](auto f) {
                if (!opt_rebuild && !opt_check_inv) opt_rebuild = true;
                int rc = 0;
                if (opt_rebuild) {
                    auto K = build_W2(f);
                    std::cout << "W(2) built on the alpha basis, dim " << K.alg.dim << "\n";
                    try {
                        auto W = change_to_e_basis(K);
                        bool match = W.table == catalog(CatalogName::W2x2, f).table;
                        std::cout << "e-basis table matches printed table: "
                                  << (match ? "yes" : "NO") << "\n";
                        if (!match) rc = 1;
                    } catch (const error& e) {
                        std::cout << e.what() << "\n";
                    }
                }
                if (opt_check_inv) {
                    if (f.characteristic() != 0)
                        throw error("--check-invariants samples over F101; use --field Q");
                    PrimeField F101(101);
                    std::mt19937_64 rng(7);
                    std::uniform_int_distribution<long long> d(0, 100);
                    auto sample = [&](int n) {
                        Vec<PrimeField> v(n);
                        for (auto& x : v) x = d(rng);
                        return v;
                    };
                    std::vector<Vec<PrimeField>> s6, s8;
                    for (int i = 0; i < 20; ++i) {
                        s6.push_back(sample(6));
                        s8.push_back(sample(8));
                    }
                    auto m6 = find_invariant_normalization(CatalogName::W2, F101, s6);
                    auto m8 = find_invariant_normalization(CatalogName::W2x2, F101, s8);
                    auto dump = [&](const char* label, const InvariantMapping& m) {
                        std::cout << label << ": indices";
                        for (int i : m.index) std::cout << " " << i;
                        std::cout << ", signs";
                        for (int s : m.sign) std::cout << " " << s;
                        std::cout << "\n";
                    };
                    dump("W2", m6);
                    dump("W2x2", m8);
                }
                return rc;
            });
        if (verify->parsed()) {
            VerifyOptions opt;
            opt.data_dir = data_dir;
            auto rep = run_paper_verification(opt);
            rep.print(std::cout);
            if (!json_path.empty()) {
                save_json_file(json_path, rep.to_json());
                std::cout << "report written to " << json_path << "\n";
            }
            return rep.all_passed() ? 0 : 1;
        }
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
