#pragma once

#include "forestpat/error.hpp"
#include "forestpat/forest.hpp"
#include "forestpat/forest_young.hpp"
#include "forestpat/pattern.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace forestpat {

using json = nlohmann::json;

// {"labels":[...], "parent":{"<label>": <label>|null, ...}}, null meaning ROOT.
inline json forest_to_json(const LabeledForest& f) {
    json j;
    j["labels"] = f.labels();
    json par = json::object();
    for (int i = 0; i < f.size(); ++i) {
        int p = f.parent_of(i);
        if (p == LabeledForest::kRoot)
            par[std::to_string(f.label(i))] = nullptr;
        else
            par[std::to_string(f.label(i))] = f.label(p);
    }
    j["parent"] = par;
    return j;
}

inline LabeledForest forest_from_json(const json& j) {
    if (!j.contains("labels") || !j.contains("parent"))
        throw error(errc::parse_error, "forest JSON needs \"labels\" and \"parent\"");
    std::map<int, int> pm;
    for (int lab : j["labels"]) pm[lab] = 0;
    for (const auto& [key, val] : j["parent"].items()) {
        int lab = 0;
        try {
            lab = std::stoi(key);
        } catch (const std::exception&) {
            throw error(errc::parse_error, "bad label key '" + key + "'");
        }
        if (pm.find(lab) == pm.end())
            throw error(errc::parse_error, "parent key " + key + " not in labels");
        if (val.is_null())
            pm[lab] = 0;
        else if (val.is_number_integer())
            pm[lab] = val.get<int>();
        else if (val.is_string())
            pm[lab] = std::stoi(val.get<std::string>());
        else
            throw error(errc::parse_error, "parent value must be a label or null");
    }
    if (pm.size() != j["labels"].size())
        throw error(errc::parse_error, "duplicate labels");
    try {
        return LabeledForest::from_parent_map(pm);
    } catch (const error& e) {
        if (e.code() == errc::unknown_label) throw;
        throw error(errc::parse_error, e.what());
    }
}

// {"parent":{"<vertex>": <vertex>|null}, "height":{"<vertex>": h}}; vertex ids
// are 0-based column indices.
inline json diagram_to_json(const ForestYoungDiagram& y) {
    json par = json::object(), height = json::object();
    for (int v = 0; v < y.size(); ++v) {
        if (y.parent(v) == ForestYoungDiagram::kRoot)
            par[std::to_string(v)] = nullptr;
        else
            par[std::to_string(v)] = y.parent(v);
        height[std::to_string(v)] = y.height(v);
    }
    return json{{"parent", par}, {"height", height}};
}

inline ForestYoungDiagram diagram_from_json(const json& j) {
    if (!j.contains("parent") || !j.contains("height"))
        throw error(errc::parse_error, "diagram JSON needs \"parent\" and \"height\"");
    size_t n = j["parent"].size();
    if (j["height"].size() != n)
        throw error(errc::parse_error, "parent and height must cover the same vertices");
    std::vector<int> parent(n, ForestYoungDiagram::kRoot), height(n, 0);
    for (const auto& [key, val] : j["parent"].items()) {
        size_t v = static_cast<size_t>(std::stoi(key));
        if (v >= n) throw error(errc::parse_error, "vertex id out of range");
        if (!val.is_null()) parent[v] = val.get<int>();
    }
    for (const auto& [key, val] : j["height"].items()) {
        size_t v = static_cast<size_t>(std::stoi(key));
        if (v >= n) throw error(errc::parse_error, "vertex id out of range");
        height[v] = val.get<int>();
    }
    return ForestYoungDiagram::make(std::move(parent), std::move(height));
}

inline json transversal_to_json(const Transversal& t) {
    json row = json::object();
    for (size_t v = 0; v < t.row_of.size(); ++v) row[std::to_string(v)] = t.row_of[v];
    return json{{"rowOf", row}};
}

inline Transversal transversal_from_json(const json& j) {
    if (!j.contains("rowOf")) throw error(errc::parse_error, "transversal JSON needs \"rowOf\"");
    Transversal t;
    t.row_of.assign(j["rowOf"].size(), 0);
    for (const auto& [key, val] : j["rowOf"].items()) {
        size_t v = static_cast<size_t>(std::stoi(key));
        if (v >= t.row_of.size()) throw error(errc::parse_error, "vertex id out of range");
        t.row_of[v] = val.get<int>();
    }
    return t;
}

} // namespace forestpat
