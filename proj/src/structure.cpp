#include "macell/structure.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "macell/errors.hpp"

namespace macell {

using nlohmann::json;

const RelationInfo* Signature::find_relation(const std::string& name) const {
    for (const auto& r : relations)
        if (r.name == name) return &r;
    return nullptr;
}

bool Signature::has_constant(const std::string& name) const {
    for (const auto& c : constants)
        if (c == name) return true;
    return false;
}

void Signature::validate() const {
    std::set<std::string> seen;
    for (const auto& r : relations) {
        if (r.name.empty()) throw InputError("relation with empty name");
        if (r.arity < 1) throw InputError("relation " + r.name + " has arity < 1");
        if (r.degree_bound && *r.degree_bound < 0)
            throw InputError("relation " + r.name + " has negative degree bound");
        if (!seen.insert(r.name).second)
            throw InputError("duplicate symbol name: " + r.name);
    }
    for (const auto& c : constants) {
        if (c.empty()) throw InputError("constant with empty name");
        if (!seen.insert(c).second) throw InputError("duplicate symbol name: " + c);
    }
}

Structure::Structure(Signature sig, std::vector<std::string> universe)
    : sig_(std::move(sig)), universe_(std::move(universe)) {
    for (int i = 0; i < static_cast<int>(universe_.size()); ++i) {
        if (!index_.emplace(universe_[i], i).second)
            throw InputError("duplicate element id: " + universe_[i]);
    }
}

bool Structure::has_element(const std::string& id) const { return index_.count(id) > 0; }

int Structure::add_element(const std::string& id) {
    int index = static_cast<int>(universe_.size());
    if (!index_.emplace(id, index).second) throw InputError("duplicate element id: " + id);
    universe_.push_back(id);
    return index;
}

int Structure::element_index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw InputError("unknown element id: " + id);
    return it->second;
}

static const std::set<std::vector<int>> kNoTuples;

const std::set<std::vector<int>>& Structure::tuples(const std::string& relation) const {
    if (!sig_.find_relation(relation)) throw InputError("unknown relation: " + relation);
    auto it = rel_.find(relation);
    return it == rel_.end() ? kNoTuples : it->second;
}

bool Structure::holds(const std::string& relation, const std::vector<int>& tuple) const {
    return tuples(relation).count(tuple) > 0;
}

void Structure::add_tuple(const std::string& relation, const std::vector<int>& tuple) {
    const RelationInfo* info = sig_.find_relation(relation);
    if (!info) throw InputError("unknown relation: " + relation);
    if (static_cast<int>(tuple.size()) != info->arity)
        throw InputError("arity mismatch for " + relation);
    for (int e : tuple)
        if (e < 0 || e >= size()) throw InputError("tuple element out of range in " + relation);
    rel_[relation].insert(tuple);
}

void Structure::set_tuples(const std::string& relation, std::set<std::vector<int>> tuples) {
    rel_.erase(relation);
    for (auto& t : tuples) add_tuple(relation, t);
}

void Structure::assign_constant(const std::string& name, int element) {
    if (!sig_.has_constant(name)) throw InputError("unknown constant: " + name);
    if (element < 0 || element >= size())
        throw InputError("constant " + name + " assigned out of range");
    constants_[name] = element;
}

int Structure::constant_element(const std::string& name) const {
    auto it = constants_.find(name);
    if (it == constants_.end()) throw InputError("unassigned constant: " + name);
    return it->second;
}

void Structure::validate() const {
    sig_.validate();
    for (const auto& [name, tuples] : rel_) {
        const RelationInfo* info = sig_.find_relation(name);
        if (!info) throw InputError("tuples for unknown relation: " + name);
        for (const auto& t : tuples) {
            if (static_cast<int>(t.size()) != info->arity)
                throw InputError("arity mismatch for " + name);
            for (int e : t)
                if (e < 0 || e >= size())
                    throw InputError("tuple element out of range in " + name);
        }
    }
    for (const auto& c : sig_.constants)
        if (!constants_.count(c)) throw InputError("unassigned constant: " + c);
    for (const auto& [name, e] : constants_) {
        if (!sig_.has_constant(name)) throw InputError("assignment for unknown constant: " + name);
        if (e < 0 || e >= size()) throw InputError("constant " + name + " out of range");
    }
}

bool Structure::operator==(const Structure& o) const {
    return sig_ == o.sig_ && universe_ == o.universe_ && rel_ == o.rel_ &&
           constants_ == o.constants_;
}

// ---- JSON ----

static Signature signature_from_json(const json& j) {
    if (!j.is_object()) throw InputError("signature must be an object");
    Signature sig;
    for (const auto& r : j.value("relations", json::array())) {
        RelationInfo info;
        info.name = r.at("name").get<std::string>();
        info.arity = r.at("arity").get<int>();
        if (r.contains("degree_bound") && !r["degree_bound"].is_null())
            info.degree_bound = r["degree_bound"].get<int>();
        sig.relations.push_back(std::move(info));
    }
    for (const auto& c : j.value("constants", json::array()))
        sig.constants.push_back(c.get<std::string>());
    return sig;
}

static json signature_to_json(const Signature& sig) {
    json rels = json::array();
    for (const auto& r : sig.relations) {
        json jr = {{"name", r.name}, {"arity", r.arity}};
        if (r.degree_bound) jr["degree_bound"] = *r.degree_bound;
        rels.push_back(std::move(jr));
    }
    return json{{"relations", std::move(rels)}, {"constants", sig.constants}};
}

Structure structure_from_json(const json& j) {
    if (!j.is_object()) throw InputError("structure document must be an object");
    Signature sig = signature_from_json(j.at("signature"));
    std::vector<std::string> universe;
    for (const auto& e : j.value("universe", json::array()))
        universe.push_back(e.get<std::string>());
    Structure m(std::move(sig), std::move(universe));
    // items() holds a reference; the container must outlive the loop.
    const json rels = j.value("relations", json::object());
    for (const auto& [name, tuples] : rels.items()) {
        for (const auto& t : tuples) {
            std::vector<int> tuple;
            for (const auto& e : t) tuple.push_back(m.element_index(e.get<std::string>()));
            m.add_tuple(name, tuple);
        }
    }
    const json consts = j.value("constants", json::object());
    for (const auto& [name, e] : consts.items())
        m.assign_constant(name, m.element_index(e.get<std::string>()));
    m.validate();
    return m;
}

json structure_to_json(const Structure& m) {
    json rels = json::object();
    for (const auto& r : m.signature().relations) {
        json list = json::array();
        // std::set ordering gives the lexicographic tuple order directly.
        for (const auto& t : m.tuples(r.name)) {
            json jt = json::array();
            for (int e : t) jt.push_back(m.element_name(e));
            list.push_back(std::move(jt));
        }
        rels[r.name] = std::move(list);
    }
    json consts = json::object();
    for (const auto& [name, e] : m.constant_map()) consts[name] = m.element_name(e);
    return json{{"signature", signature_to_json(m.signature())},
                {"universe", m.universe()},
                {"relations", std::move(rels)},
                {"constants", std::move(consts)}};
}

Structure load_structure(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InputError(std::string("bad JSON: ") + e.what());
    }
    try {
        return structure_from_json(j);
    } catch (const json::exception& e) {
        throw InputError(std::string("bad structure document: ") + e.what());
    }
}

Structure load_structure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_structure(buf.str());
}

std::string serialize(const Structure& m) { return structure_to_json(m).dump(2) + "\n"; }

void save_structure_file(const Structure& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open file for writing: " + path);
    out << serialize(m);
}

}  // namespace macell
