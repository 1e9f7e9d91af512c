#include "germstab/catalog.hpp"

#include "germstab/errors.hpp"

#include <algorithm>
#include <map>

namespace germstab {

namespace {

/* Component jets from sparse (multi-index, coefficient) lists. */
Jet make_jet(int m, int order, std::initializer_list<std::pair<std::vector<int>, long>> terms) {
    Jet j(m, order);
    for (const auto& [exps, c] : terms)
        j.set_coeff(MultiIndex(exps), Rat(c));
    return j;
}

Subspace span_rows(int n, std::initializer_list<std::vector<long>> rows) {
    Mat m(static_cast<Eigen::Index>(rows.size()), n);
    Eigen::Index r = 0;
    for (const auto& row : rows) {
        for (int j = 0; j < n; ++j)
            m(r, j) = Rat(row[static_cast<std::size_t>(j)]);
        ++r;
    }
    return Subspace::span_of_rows(m);
}

struct EntryDef {
    CatalogEntry entry;
    int degree;  // natural polynomial degree of the germ
};

std::vector<EntryDef> build_entries() {
    std::vector<EntryDef> defs;
    auto add = [&](const std::string& name, int m, int n, int degree, std::vector<Jet> comps,
                   std::optional<Subspace> stratum, bool stable, const std::string& notes) {
        EntryDef d;
        d.entry.name = name;
        d.entry.source_dim = m;
        d.entry.target_dim = n;
        d.entry.germ = MapGermJet::from_components(std::move(comps));
        d.entry.stratum_tangent = std::move(stratum);
        d.entry.expected_stable = stable;
        d.entry.notes = notes;
        d.degree = degree;
        defs.push_back(std::move(d));
    };

    // m = n = 1
    add("regular_1_1", 1, 1, 1, {make_jet(1, 1, {{{1}, 1}})}, Subspace::full(1), true,
        "regular point of a map of curves; the stratum is everything");
    add("fold_1_1", 1, 1, 2, {make_jet(1, 2, {{{2}, 1}})}, span_rows(1, {}), true,
        "A1 fold x -> x^2; fold points of a curve map are isolated");
    add("cubic_1_1", 1, 1, 3, {make_jet(1, 3, {{{3}, 1}})}, std::nullopt, false,
        "x -> x^3 is not stable: no tangent direction reaches the linear jet");

    // m = n = 2
    add("regular_2_2", 2, 2, 1,
        {make_jet(2, 1, {{{1, 0}, 1}}), make_jet(2, 1, {{{0, 1}, 1}})}, Subspace::full(2), true,
        "regular point of a planar map");
    add("fold_2_2", 2, 2, 2,
        {make_jet(2, 2, {{{1, 0}, 1}}), make_jet(2, 2, {{{0, 2}, 1}})},
        span_rows(2, {{1, 0}}), true,
        "fold (x, y^2); the fold line y = 0 maps to the first axis");
    add("fold_2_2_vertical", 2, 2, 2,
        {make_jet(2, 2, {{{2, 0}, 1}}), make_jet(2, 2, {{{0, 1}, 1}})},
        span_rows(2, {{0, 1}}), true,
        "fold (x^2, y); the fold line x = 0 maps to the second axis");
    add("fold_2_2_diagonal", 2, 2, 2,
        {make_jet(2, 2, {{{1, 0}, 1}}), make_jet(2, 2, {{{1, 0}, 1}, {{0, 2}, 1}})},
        span_rows(2, {{1, 1}}), true,
        "fold (x, x + y^2); the fold line maps to the diagonal");
    add("cusp_2_2", 2, 2, 3,
        {make_jet(2, 3, {{{1, 0}, 1}}), make_jet(2, 3, {{{0, 3}, 1}, {{1, 1}, 1}})},
        span_rows(2, {}), true,
        "A2 cusp (x, y^3 + xy); cusp points are isolated in the plane");

    // m = 2, n = 3
    add("crosscap_2_3", 2, 3, 2,
        {make_jet(2, 2, {{{1, 0}, 1}}), make_jet(2, 2, {{{0, 2}, 1}}),
         make_jet(2, 2, {{{1, 1}, 1}})},
        span_rows(3, {}), true,
        "Whitney cross-cap (x, y^2, xy); cross-cap points are isolated");
    add("sheet_xy_2_3", 2, 3, 1,
        {make_jet(2, 1, {{{1, 0}, 1}}), make_jet(2, 1, {{{0, 1}, 1}}), Jet(2, 1)},
        span_rows(3, {{1, 0, 0}, {0, 1, 0}}), true,
        "immersed sheet spanning the first two axes");
    add("sheet_xz_2_3", 2, 3, 1,
        {make_jet(2, 1, {{{1, 0}, 1}}), Jet(2, 1), make_jet(2, 1, {{{0, 1}, 1}})},
        span_rows(3, {{1, 0, 0}, {0, 0, 1}}), true,
        "immersed sheet spanning the first and third axes");
    add("sheet_yz_2_3", 2, 3, 1,
        {Jet(2, 1), make_jet(2, 1, {{{1, 0}, 1}}), make_jet(2, 1, {{{0, 1}, 1}})},
        span_rows(3, {{0, 1, 0}, {0, 0, 1}}), true,
        "immersed sheet spanning the last two axes");
    add("sheet_skew_2_3", 2, 3, 1,
        {make_jet(2, 1, {{{1, 0}, 1}}), make_jet(2, 1, {{{0, 1}, 1}}),
         make_jet(2, 1, {{{0, 1}, 1}})},
        span_rows(3, {{1, 0, 0}, {0, 1, 1}}), true,
        "immersed sheet through the skew plane y2 = y3");

    // m = n = 3
    add("regular_3_3", 3, 3, 1,
        {make_jet(3, 1, {{{1, 0, 0}, 1}}), make_jet(3, 1, {{{0, 1, 0}, 1}}),
         make_jet(3, 1, {{{0, 0, 1}, 1}})},
        Subspace::full(3), true, "regular point of a map of 3-manifolds");
    add("swallowtail_3_3", 3, 3, 4,
        {make_jet(3, 4, {{{1, 0, 0}, 1}}), make_jet(3, 4, {{{0, 1, 0}, 1}}),
         make_jet(3, 4, {{{0, 0, 4}, 1}, {{1, 0, 2}, 1}, {{0, 1, 1}, 1}})},
        span_rows(3, {}), true,
        "A3 swallowtail (x, y, z^4 + xz^2 + yz); swallowtail points are isolated");

    return defs;
}

const std::vector<EntryDef>& entries() {
    static const std::vector<EntryDef> defs = build_entries();
    return defs;
}

struct ConfigDef {
    std::string name;
    std::vector<std::string> entry_names;
    bool expected_stable;
    std::string notes;
};

const std::vector<ConfigDef>& config_defs() {
    static const std::vector<ConfigDef> defs = {
        // Singleton fibers, one per entry.
        {"regular_1_1", {"regular_1_1"}, true, "single regular germ"},
        {"fold_1_1", {"fold_1_1"}, true, "single fold germ"},
        {"cubic_1_1", {"cubic_1_1"}, false, "single unstable cubic germ"},
        {"regular_2_2", {"regular_2_2"}, true, "single planar regular germ"},
        {"fold_2_2", {"fold_2_2"}, true, "single planar fold germ"},
        {"cusp_2_2", {"cusp_2_2"}, true, "single cusp germ"},
        {"crosscap_2_3", {"crosscap_2_3"}, true, "single cross-cap germ"},
        {"sheet_2_3", {"sheet_xy_2_3"}, true, "single immersed sheet"},
        {"swallowtail_3_3", {"swallowtail_3_3"}, true, "single swallowtail germ"},
        // Composite fibers.
        {"two_folds_1_1",
         {"fold_1_1", "fold_1_1"},
         false,
         "two fold points over one value; one target field cannot serve both"},
        {"fold_regular_1_1",
         {"fold_1_1", "regular_1_1"},
         true,
         "fold plus a regular point over the same value"},
        {"two_transverse_folds_2_2",
         {"fold_2_2", "fold_2_2_vertical"},
         true,
         "two fold curves crossing transversally"},
        {"three_fold_lines_2_2",
         {"fold_2_2", "fold_2_2_vertical", "fold_2_2_diagonal"},
         false,
         "three fold lines through one point; three lines in the plane are never in general "
         "position"},
        {"cusp_fold_2_2",
         {"cusp_2_2", "fold_2_2"},
         false,
         "cusp plus fold over one value; the cusp stratum is a point, not transverse to the "
         "fold line"},
        {"two_sheets_2_3",
         {"sheet_xy_2_3", "sheet_xz_2_3"},
         true,
         "two immersed sheets meeting transversally"},
        {"three_sheets_2_3",
         {"sheet_xy_2_3", "sheet_xz_2_3", "sheet_yz_2_3"},
         true,
         "triple point of immersed sheets in general position"},
        {"four_sheets_2_3",
         {"sheet_xy_2_3", "sheet_xz_2_3", "sheet_yz_2_3", "sheet_skew_2_3"},
         false,
         "four sheets through one point of a 3-space can never be in general position"},
    };
    return defs;
}

}  // namespace

CatalogEntry catalog_get(const std::string& name, int order) {
    for (const EntryDef& def : entries()) {
        if (def.entry.name != name)
            continue;
        int k = order > 0 ? order : std::max(def.entry.target_dim + 1, def.degree);
        if (k < def.degree)
            throw argument_error("catalog entry '" + name + "' needs order >= " +
                                 std::to_string(def.degree));
        CatalogEntry out = def.entry;
        out.germ = out.germ.truncated(k);
        return out;
    }
    throw argument_error("unknown catalog entry '" + name + "'");
}

std::vector<std::string> catalog_list() {
    std::vector<std::string> names;
    for (const EntryDef& def : entries())
        names.push_back(def.entry.name);
    return names;
}

CatalogConfig catalog_config_get(const std::string& name, int order) {
    for (const ConfigDef& def : config_defs()) {
        if (def.name != name)
            continue;
        int target_dim = 0;
        int degree = 1;
        std::vector<CatalogEntry> picked;
        for (const std::string& entry_name : def.entry_names) {
            CatalogEntry e = catalog_get(entry_name);
            degree = std::max(degree, e.germ.max_degree());
            target_dim = e.target_dim;
            picked.push_back(std::move(e));
        }
        int k = order > 0 ? order : std::max(target_dim + 1, degree);
        if (k < degree)
            throw argument_error("catalog config '" + name + "' needs order >= " +
                                 std::to_string(degree));
        std::vector<MapGermJet> germs;
        std::vector<std::optional<Subspace>> strata;
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < picked.size(); ++i) {
            germs.push_back(picked[i].germ.truncated(k));
            strata.push_back(picked[i].stratum_tangent);
            labels.push_back(picked[i].name + "@p" + std::to_string(i + 1));
        }
        CatalogConfig out;
        out.name = def.name;
        out.config = MultigermConfig(target_dim, std::move(germs), std::move(strata),
                                     std::move(labels));
        out.expected_stable = def.expected_stable;
        out.notes = def.notes;
        return out;
    }
    throw argument_error("unknown catalog config '" + name + "'");
}

std::vector<std::string> catalog_config_list() {
    std::vector<std::string> names;
    for (const ConfigDef& def : config_defs())
        names.push_back(def.name);
    return names;
}

}  // namespace germstab
