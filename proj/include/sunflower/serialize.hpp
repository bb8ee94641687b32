#pragma once

// JSON encodings of fields, subspaces, families, trees and certificates.
// Big integers travel as decimal strings.

#include "sunflower/verify.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace sunflower {

using json = nlohmann::json;

inline json field_to_json(const Field& f) {
    return {{"p", f.characteristic()}, {"t", f.degree()}, {"q", f.order()}, {"modulus", f.modulus()}};
}

inline json field_to_json(const ExtField& f) {
    json j = field_to_json(f.base());
    j["ext_degree"] = f.degree();
    j["ext_modulus"] = f.modulus();
    return j;
}

inline FieldPtr field_from_json(const json& j) {
    const unsigned p = j.at("p").get<unsigned>();
    const unsigned t = j.at("t").get<unsigned>();
    auto modulus = j.at("modulus").get<std::vector<unsigned>>();
    Field::Poly poly;
    for (auto c : modulus) {
        detail::require(c < 256, "modulus coefficient out of range");
        poly.push_back(static_cast<Field::Elem>(c));
    }
    auto f = Field::make(p, t, std::move(poly));
    if (j.contains("q")) detail::require(j.at("q").get<unsigned>() == f->order(), "field order does not match p^t");
    return f;
}

inline json basis_rows(const Subspace& s) {
    json rows = json::array();
    for (std::size_t i = 0; i < s.dim(); ++i) {
        auto r = s.basis().row(i);
        rows.push_back(std::vector<unsigned>(r.begin(), r.end()));
    }
    return rows;
}

inline json subspace_to_json(const Subspace& s) {
    return {{"n", s.ambient_dim()}, {"dim", s.dim()}, {"basis", basis_rows(s)}};
}

inline Subspace subspace_from_rows(const FieldPtr& field, std::size_t n, const json& rows) {
    detail::require(rows.is_array(), "subspace basis must be an array of rows");
    Matrix m(0, n);
    for (const auto& r : rows) {
        auto v = r.get<std::vector<unsigned>>();
        detail::require(v.size() == n, "basis row length does not match the ambient dimension");
        std::vector<Matrix::Elem> e;
        for (auto c : v) {
            detail::require(c < field->order(), "field element code out of range");
            e.push_back(static_cast<Matrix::Elem>(c));
        }
        m.append_row(e);
    }
    return Subspace::from_rows(field, n, m);
}

inline Subspace subspace_from_json(const FieldPtr& field, const json& j) {
    const auto n = j.at("n").get<std::size_t>();
    auto s = subspace_from_rows(field, n, j.at("basis"));
    if (j.contains("dim")) detail::require(j.at("dim").get<std::size_t>() == s.dim(), "subspace record has a dependent basis");
    return s;
}

/// A flat family of k-spaces with its provenance header.
struct FamilyFile {
    FieldPtr field;
    std::size_t ambient_n = 0;
    std::size_t k = 0;
    std::string construction;
    std::size_t s = 0;
    std::vector<Subspace> members;
    json extra = json::object();  ///< size report and other metadata
};

inline json family_to_json(const FamilyFile& f) {
    json members = json::array();
    for (const auto& m : f.members) members.push_back(basis_rows(m));
    json j = {{"field", field_to_json(*f.field)},
              {"q", f.field->order()},
              {"p", f.field->characteristic()},
              {"t", f.field->degree()},
              {"ambient_n", f.ambient_n},
              {"k", f.k},
              {"construction", f.construction},
              {"s", f.s},
              {"size", f.members.size()},
              {"members", std::move(members)}};
    for (auto it = f.extra.begin(); it != f.extra.end(); ++it) j[it.key()] = it.value();
    return j;
}

inline FamilyFile family_from_json(const json& j) {
    FamilyFile f;
    f.field = field_from_json(j.at("field"));
    f.ambient_n = j.at("ambient_n").get<std::size_t>();
    f.k = j.at("k").get<std::size_t>();
    f.construction = j.value("construction", std::string{});
    f.s = j.value("s", std::size_t{0});
    for (const auto& rows : j.at("members")) {
        auto m = subspace_from_rows(f.field, f.ambient_n, rows);
        detail::require(m.dim() == f.k, "family member does not have dimension k");
        f.members.push_back(std::move(m));
    }
    if (j.contains("size"))
        detail::require(j.at("size").get<std::size_t>() == f.members.size(), "size does not match the member count");
    return f;
}

inline json params_to_json(const NestingParams& p) {
    json levels = json::array();
    for (const auto& lv : p.levels)
        levels.push_back({{"label", lv.label},
                          {"n", lv.n},
                          {"m", lv.m},
                          {"d", lv.d},
                          {"sigma", lv.sigma_dim},
                          {"tau", lv.tau_dim},
                          {"exponent", lv.exponent()}});
    return {{"construction", to_string(p.tag)}, {"s", p.s},           {"k", p.k},
            {"ambient_n", p.ambient},           {"m_values", p.m_values}, {"m_offset", p.m_offset},
            {"tower_dims", p.tower_dims},       {"levels", std::move(levels)}};
}

inline json tree_node_to_json(const TreeNode& node) {
    json children = json::array();
    for (const auto& c : node.children) children.push_back(tree_node_to_json(c));
    return {{"member", subspace_to_json(node.member)}, {"children", std::move(children)}};
}

inline json tree_to_json(const FamilyTree& tree) {
    json tower = json::array();
    for (const auto& t : tree.tower) tower.push_back(subspace_to_json(t));
    json nodes = json::array();
    for (const auto& c : tree.root.children) nodes.push_back(tree_node_to_json(c));
    json leaves = json::array();
    for (const auto& l : tree.leaves) leaves.push_back({{"path", l.path}, {"space", subspace_to_json(l.space)}});
    return {{"field", field_to_json(*tree.field)},
            {"params", params_to_json(tree.params)},
            {"level_sizes", tree.level_sizes},
            {"tower", std::move(tower)},
            {"nodes", std::move(nodes)},
            {"leaves", std::move(leaves)}};
}

inline json witness_to_json(const SunflowerWitness& w) {
    return {{"members", w.members},
            {"kernel", subspace_to_json(w.kernel)},
            {"kernel_dim", w.kernel_dim},
            {"span_dim", w.span_dim}};
}

inline json certificate_to_json(const Certificate& c) {
    json j = {{"kind", c.kind},
              {"family_id", c.family_id},
              {"family_size", c.family_size},
              {"s", c.s},
              {"mode", to_string(c.mode)},
              {"status", to_string(c.status)},
              {"outcome", to_string(c.outcome)},
              {"pairs_examined", c.pairs_examined},
              {"subsets_examined", c.subsets_examined},
              {"checks", c.checks},
              {"violations", c.violations}};
    j["witness"] = c.witness ? witness_to_json(*c.witness) : json(nullptr);
    if (!c.extensions.empty()) {
        json ext = json::array();
        for (const auto& e : c.extensions)
            ext.push_back({{"candidate", subspace_to_json(e.candidate)}, {"sunflower", witness_to_json(e.sunflower)}});
        j["extensions"] = std::move(ext);
    }
    if (c.bounds)
        j["bounds"] = {{"lower", to_decimal(c.bounds->lower)},
                       {"actual", to_decimal(c.bounds->actual)},
                       {"upper", to_decimal(c.bounds->upper)}};
    return j;
}

/// Compact encoding, newline-terminated.
inline std::string dump_line(const json& j) { return j.dump() + "\n"; }

}  // namespace sunflower
