#pragma once

// JSON exchange format for algebras:
//   { "name": str, "field": {"kind":"Q"} | {"kind":"Fp","p":int},
//     "dim": n, "table": [[["c_ij^1", ...], ...], ...] }
// Scalars travel as exact strings ("-3", "2/7"); anything non-exact is
// rejected by the loader.

#include <fstream>

#include <json.hpp>

#include "conserv/algebra.hpp"

namespace conserv {

using nlohmann::json;

inline json field_to_json(const FieldSpec& spec) {
    if (spec.kind == FieldSpec::Kind::rationals) return json{{"kind", "Q"}};
    return json{{"kind", "Fp"}, {"p", spec.p}};
}

inline FieldSpec field_from_json(const json& j) {
    auto kind = j.at("kind").get<std::string>();
    if (kind == "Q") return FieldSpec::rationals();
    if (kind == "Fp") return FieldSpec::prime(j.at("p").get<long long>());
    throw error("field: unknown kind '" + kind + "'");
}

template <Field F>
json algebra_to_json(const StructureAlgebra<F>& A) {
    json t = json::array();
    for (int i = 0; i < A.dim; ++i) {
        json row = json::array();
        for (int j = 0; j < A.dim; ++j) {
            json cell = json::array();
            for (int k = 0; k < A.dim; ++k) cell.push_back(A.field.to_string(A.c(i, j, k)));
            row.push_back(std::move(cell));
        }
        t.push_back(std::move(row));
    }
    return json{{"name", A.name},
                {"field", field_to_json(A.field.spec())},
                {"dim", A.dim},
                {"table", std::move(t)}};
}

template <Field F>
StructureAlgebra<F> algebra_from_json(const F& f, const json& j) {
    int n = j.at("dim").get<int>();
    if (n < 0) throw error("algebra: negative dimension");
    StructureAlgebra<F> A(f, n, j.value("name", ""));
    const auto& t = j.at("table");
    if (int(t.size()) != n) throw error("algebra: table has wrong shape");
    for (int i = 0; i < n; ++i) {
        if (int(t[i].size()) != n) throw error("algebra: table has wrong shape");
        for (int jj = 0; jj < n; ++jj) {
            if (int(t[i][jj].size()) != n) throw error("algebra: table has wrong shape");
            for (int k = 0; k < n; ++k) {
                auto s = t[i][jj][k].get<std::string>();
                auto v = f.parse(s);
                if (!v) throw error("algebra: non-exact scalar token '" + s + "'");
                A.c(i, jj, k) = *v;
            }
        }
    }
    return A;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace conserv
