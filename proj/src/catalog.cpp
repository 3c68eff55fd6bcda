#include "macell/catalog.hpp"

#include <fstream>
#include <sstream>

#include "macell/components.hpp"
#include "macell/errors.hpp"
#include "macell/json_io.hpp"

namespace macell {

void validate_catalog(const StructureCatalog& cat) {
    cat.base.validate();
    auto check_template = [&](const Structure& t, const std::string& what) {
        t.validate();
        if (t.size() == 0) throw InputError(what + " is empty");
        if (t.signature().relations != cat.base.signature().relations)
            throw InputError(what + " disagrees with the base on relations");
        if (!t.signature().constants.empty() || !t.constant_map().empty())
            throw InputError(what + " carries constants; constants belong to the base");
        if (decompose(t).components.size() != 1)
            throw InputError(what + " is not a single component");
    };
    for (std::size_t i = 0; i < cat.entries.size(); ++i) {
        check_template(cat.entries[i].tmpl, "entry " + std::to_string(i) + " template");
        const auto& mult = cat.entries[i].multiplicity;
        if (mult && *mult < 0)
            throw InputError("entry " + std::to_string(i) + " has a negative multiplicity");
    }
    for (std::size_t i = 0; i < cat.family.size(); ++i) {
        check_template(cat.family[i], "family template " + std::to_string(i));
        if (i > 0 && cat.family[i].size() <= cat.family[i - 1].size())
            throw InputError("family sizes must strictly increase");
    }
}

StructureCatalog catalog_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("catalog document must be a JSON object");
    StructureCatalog cat;

    if (j.contains("entries")) {
        if (!j["entries"].is_array()) throw InputError("\"entries\" must be an array");
        for (const auto& item : j["entries"]) {
            if (!item.is_object() || !item.contains("template"))
                throw InputError("catalog entry needs a \"template\"");
            CatalogEntry e;
            e.tmpl = structure_from_json(item["template"]);
            if (!item.contains("multiplicity"))
                throw InputError("catalog entry needs a \"multiplicity\"");
            const auto& mult = item["multiplicity"];
            if (mult.is_string() && mult.get<std::string>() == "omega")
                e.multiplicity = std::nullopt;
            else if (mult.is_number_integer())
                e.multiplicity = mult.get<long long>();
            else
                throw InputError("multiplicity must be an integer or \"omega\"");
            cat.entries.push_back(std::move(e));
        }
    }
    if (j.contains("family") && !j["family"].is_null()) {
        const auto& fam = j["family"];
        if (!fam.is_object() || !fam.contains("templates") || !fam["templates"].is_array())
            throw InputError("\"family\" needs a \"templates\" array");
        if (!fam.contains("unbounded") || !fam["unbounded"].is_boolean() ||
            !fam["unbounded"].get<bool>())
            throw InputError("a family must be flagged \"unbounded\": true");
        for (const auto& t : fam["templates"]) cat.family.push_back(structure_from_json(t));
        if (cat.family.empty()) throw InputError("a family needs at least one template");
    }

    if (j.contains("base") && !j["base"].is_null()) {
        cat.base = structure_from_json(j["base"]);
    } else {
        // Empty base: borrow the relational signature from the first template.
        const Structure* source = nullptr;
        if (!cat.entries.empty())
            source = &cat.entries.front().tmpl;
        else if (!cat.family.empty())
            source = &cat.family.front();
        if (!source) throw InputError("catalog needs a base, an entry, or a family");
        Signature sig;
        sig.relations = source->signature().relations;
        cat.base = Structure(sig, {});
    }

    validate_catalog(cat);
    return cat;
}

nlohmann::json catalog_to_json(const StructureCatalog& cat) {
    nlohmann::json j;
    j["base"] = structure_to_json(cat.base);
    j["entries"] = nlohmann::json::array();
    for (const auto& e : cat.entries) {
        nlohmann::json item;
        item["template"] = structure_to_json(e.tmpl);
        if (e.multiplicity)
            item["multiplicity"] = *e.multiplicity;
        else
            item["multiplicity"] = "omega";
        j["entries"].push_back(std::move(item));
    }
    if (!cat.family.empty()) {
        nlohmann::json fam;
        fam["templates"] = nlohmann::json::array();
        for (const auto& t : cat.family) fam["templates"].push_back(structure_to_json(t));
        fam["unbounded"] = true;
        j["family"] = std::move(fam);
    }
    return j;
}

StructureCatalog load_catalog(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    return catalog_from_json(j);
}

StructureCatalog load_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_catalog(buf.str());
}

std::string serialize_catalog(const StructureCatalog& cat) {
    return catalog_to_json(cat).dump(2) + "\n";
}

CellularityDecision catalog_is_cellular(const StructureCatalog& cat) {
    validate_catalog(cat);
    if (cat.has_family()) return {false, "unbounded component sizes"};
    bool infinite = false;
    for (const auto& e : cat.entries)
        if (e.is_omega()) infinite = true;
    if (infinite)
        return {true, "component sizes uniformly bounded with finitely many component types"};
    return {true, "finite structure"};
}

namespace {

// Appends one copy of the template, renaming elements t{entry}_{copy}_{index}.
void add_copy(Structure& out, const Structure& tmpl, int entry, long long copy) {
    std::vector<int> fresh(tmpl.size());
    const std::string prefix = "t" + std::to_string(entry) + "_" + std::to_string(copy) + "_";
    for (int i = 0; i < tmpl.size(); ++i)
        fresh[i] = out.add_element(prefix + std::to_string(i));
    for (const auto& r : tmpl.signature().relations)
        for (const auto& t : tmpl.tuples(r.name)) {
            std::vector<int> mapped;
            mapped.reserve(t.size());
            for (int e : t) mapped.push_back(fresh[e]);
            out.add_tuple(r.name, mapped);
        }
}

}  // namespace

Structure realize(const StructureCatalog& cat, long long budget) {
    validate_catalog(cat);
    if (budget < cat.base.size())
        throw InputError("budget " + std::to_string(budget) + " is below the base size " +
                         std::to_string(cat.base.size()));

    Structure out = cat.base;
    long long room = budget - out.size();

    for (std::size_t i = 0; i < cat.entries.size(); ++i) {
        const auto& e = cat.entries[i];
        if (e.is_omega()) continue;
        for (long long c = 0; c < *e.multiplicity && e.tmpl.size() <= room; ++c) {
            add_copy(out, e.tmpl, static_cast<int>(i), c);
            room -= e.tmpl.size();
        }
    }

    std::vector<long long> copies(cat.entries.size(), 0);
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < cat.entries.size(); ++i) {
            const auto& e = cat.entries[i];
            if (!e.is_omega() || e.tmpl.size() > room) continue;
            add_copy(out, e.tmpl, static_cast<int>(i), copies[i]++);
            room -= e.tmpl.size();
            progress = true;
        }
    }

    for (std::size_t i = 0; i < cat.family.size(); ++i) {
        if (cat.family[i].size() > room) break;  // sizes increase, nothing later fits
        add_copy(out, cat.family[i], static_cast<int>(cat.entries.size() + i), 0);
        room -= cat.family[i].size();
    }

    out.validate();
    return out;
}

}  // namespace macell
