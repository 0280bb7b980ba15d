#pragma once

// Built-in algebras: S2 (4-dim), its independently stored characteristic-2
// table, W2 (6-dim) and W(2) (8-dim, named W2x2 here). Tables are stored with
// integer entries and reduced into the requested field.

#include <array>
#include <optional>

#include "conserv/algebra.hpp"

namespace conserv {

enum class CatalogName { S2, S2_char2, W2, W2x2 };

inline std::optional<CatalogName> catalog_name_from(std::string_view s) {
    if (s == "S2") return CatalogName::S2;
    if (s == "S2_char2") return CatalogName::S2_char2;
    if (s == "W2") return CatalogName::W2;
    if (s == "W2x2" || s == "W(2)") return CatalogName::W2x2;
    return std::nullopt;
}

inline std::string catalog_name_str(CatalogName n) {
    switch (n) {
        case CatalogName::S2: return "S2";
        case CatalogName::S2_char2: return "S2_char2";
        case CatalogName::W2: return "W2";
        case CatalogName::W2x2: return "W2x2";
    }
    return "?";
}

namespace tables {

// entry[i][j][k] of the 8x8 table; the 6x6 and 4x4 tables are its leading
// blocks, which is how the paper presents W2 and S2 inside W(2)
inline constexpr std::array<std::array<std::array<int, 8>, 8>, 8> w2x2{{
    // e1*e_j
    {{{-1, 0, 0, 0, 0, 0, 0, 0},   // e1e1 = -e1
      {0, -3, 0, 0, 0, 0, 0, 0},   // e1e2 = -3e2
      {0, 0, 1, 0, 0, 0, 0, 0},    // e1e3 = e3
      {0, 0, 0, 3, 0, 0, 0, 0},    // e1e4 = 3e4
      {0, 0, 0, 0, -1, 0, 0, 0},   // e1e5 = -e5
      {0, 0, 0, 0, 0, 1, 0, 0},    // e1e6 = e6
      {0, 0, 0, 0, 0, 0, 1, 0},    // e1e7 = e7
      {0, 0, 0, 0, 0, 0, 0, -1}}}, // e1e8 = -e8
    // e2*e_j
    {{{0, 3, 0, 0, 0, 0, 0, 0},    // e2e1 = 3e2
      {0, 0, 0, 0, 0, 0, 0, 0},
      {2, 0, 0, 0, 0, 0, 0, 0},    // e2e3 = 2e1
      {0, 0, 1, 0, 0, 0, 0, 0},    // e2e4 = e3
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, -1, 0, 0, 0},   // e2e6 = -e5
      {0, 0, 0, 0, 0, 0, 0, 1},    // e2e7 = e8
      {0, 0, 0, 0, 0, 0, 0, 0}}},
    // e3*e_j
    {{{0, 0, -2, 0, 0, 0, 0, 0},   // e3e1 = -2e3
      {-1, 0, 0, 0, 0, 0, 0, 0},   // e3e2 = -e1
      {0, 0, 0, -3, 0, 0, 0, 0},   // e3e3 = -3e4
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 1, 0, 0},    // e3e5 = e6
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, -1, 0}}}, // e3e8 = -e7
    // e4*e_j
    {{{0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0}}},
    // e5*e_j
    {{{-2, 0, 0, 0, 0, 0, 0, 0},   // e5e1 = -2e1
      {0, -3, 0, 0, 0, 0, 0, 0},   // e5e2 = -3e2
      {0, 0, -1, 0, 0, 0, 0, 0},   // e5e3 = -e3
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, -2, 0, 0, 0},   // e5e5 = -2e5
      {0, 0, 0, 0, 0, -1, 0, 0},   // e5e6 = -e6
      {0, 0, 0, 0, 0, 0, -1, 0},   // e5e7 = -e7
      {0, 0, 0, 0, 0, 0, 0, -2}}}, // e5e8 = -2e8
    // e6*e_j
    {{{0, 0, 2, 0, 0, 0, 0, 0},    // e6e1 = 2e3
      {1, 0, 0, 0, 0, 0, 0, 0},    // e6e2 = e1
      {0, 0, 0, 3, 0, 0, 0, 0},    // e6e3 = 3e4
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, -1, 0, 0},   // e6e5 = -e6
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 1, 0}}},  // e6e8 = e7
    // e7*e_j (identical to the e6 row in the printed table)
    {{{0, 0, 2, 0, 0, 0, 0, 0},
      {1, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 3, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, -1, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 1, 0}}},
    // e8*e_j
    {{{0, 0, 0, 0, 0, 0, 0, 0},
      {0, 1, 0, 0, 0, 0, 0, 0},    // e8e2 = e2
      {0, 0, -1, 0, 0, 0, 0, 0},   // e8e3 = -e3
      {0, 0, 0, -2, 0, 0, 0, 0},   // e8e4 = -2e4
      {0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, -1, 0, 0},   // e8e6 = -e6
      {0, 0, 0, 0, 0, 0, -1, 0},   // e8e7 = -e7
      {0, 0, 0, 0, 0, 0, 0, 0}}},
}};

// The characteristic-2 table of S2 as printed, kept separately from the
// mod-2 reduction so the two can be cross-checked.
inline constexpr std::array<std::array<std::array<int, 4>, 4>, 4> s2_char2{{
    {{{1, 0, 0, 0},   // e1e1 = e1
      {0, 1, 0, 0},   // e1e2 = e2
      {0, 0, 1, 0},   // e1e3 = e3
      {0, 0, 0, 1}}}, // e1e4 = e4
    {{{0, 1, 0, 0},   // e2e1 = e2
      {0, 0, 0, 0},
      {0, 0, 0, 0},
      {0, 0, 1, 0}}}, // e2e4 = e3
    {{{0, 0, 0, 0},
      {1, 0, 0, 0},   // e3e2 = e1
      {0, 0, 0, 1},   // e3e3 = e4
      {0, 0, 0, 0}}},
    {{{0, 0, 0, 0},
      {0, 0, 0, 0},
      {0, 0, 0, 0},
      {0, 0, 0, 0}}},
}};

} // namespace tables

template <Field F>
StructureAlgebra<F> catalog(CatalogName which, const F& f) {
    auto fill = [&](int n, auto&& entry, const std::string& nm) {
        StructureAlgebra<F> A(f, n, nm);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) A.c(i, j, k) = f.from_int(entry(i, j, k));
        return A;
    };
    switch (which) {
        case CatalogName::S2:
            return fill(4, [](int i, int j, int k) { return tables::w2x2[i][j][k]; }, "S2");
        case CatalogName::S2_char2:
            if (f.characteristic() != 2)
                throw error("catalog: S2_char2 requires a field of characteristic 2");
            return fill(4, [](int i, int j, int k) { return tables::s2_char2[i][j][k]; },
                        "S2_char2");
        case CatalogName::W2:
            return fill(6, [](int i, int j, int k) { return tables::w2x2[i][j][k]; }, "W2");
        case CatalogName::W2x2:
            return fill(8, [](int i, int j, int k) { return tables::w2x2[i][j][k]; }, "W2x2");
    }
    throw error("catalog: unknown name");
}

} // namespace conserv
