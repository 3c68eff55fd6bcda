#include "macell/cellular.hpp"

#include <algorithm>
#include <sstream>

#include "macell/components.hpp"
#include "macell/errors.hpp"

namespace macell {

CellularPartition partition_from_json(const nlohmann::json& j, const Structure& m) {
    if (!j.is_object() || !j.contains("K") || !j.contains("bands"))
        throw InputError("partition document needs \"K\" and \"bands\"");
    CellularPartition p;
    if (!j["K"].is_array()) throw InputError("\"K\" must be an array of element ids");
    for (const auto& e : j["K"]) {
        if (!e.is_string()) throw InputError("\"K\" must be an array of element ids");
        p.k_elements.push_back(m.element_index(e.get<std::string>()));
    }
    std::sort(p.k_elements.begin(), p.k_elements.end());
    if (!j["bands"].is_array()) throw InputError("\"bands\" must be an array");
    for (const auto& b : j["bands"]) {
        if (!b.is_object() || !b.contains("k") || !b.contains("cells") ||
            !b["k"].is_number_integer() || !b["cells"].is_array())
            throw InputError("each band needs an integer \"k\" and a \"cells\" array");
        Band band;
        band.k = b["k"].get<int>();
        if (band.k < 1) throw InputError("band length must be at least 1");
        for (const auto& c : b["cells"]) {
            if (!c.is_array() || static_cast<int>(c.size()) != band.k)
                throw InputError("every cell must be an array of the band's length");
            std::vector<int> cell;
            for (const auto& e : c) {
                if (!e.is_string()) throw InputError("cell entries must be element ids");
                cell.push_back(m.element_index(e.get<std::string>()));
            }
            band.cells.push_back(std::move(cell));
        }
        p.bands.push_back(std::move(band));
    }
    return p;
}

nlohmann::json partition_to_json(const CellularPartition& p, const Structure& m) {
    nlohmann::json j;
    j["K"] = nlohmann::json::array();
    for (int e : p.k_elements) j["K"].push_back(m.element_name(e));
    j["bands"] = nlohmann::json::array();
    for (const auto& band : p.bands) {
        nlohmann::json b;
        b["k"] = band.k;
        b["cells"] = nlohmann::json::array();
        for (const auto& cell : band.cells) {
            nlohmann::json c = nlohmann::json::array();
            for (int e : cell) c.push_back(m.element_name(e));
            b["cells"].push_back(std::move(c));
        }
        j["bands"].push_back(std::move(b));
    }
    return j;
}

CellularPartition load_partition(const std::string& json_text, const Structure& m) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    return partition_from_json(j, m);
}

std::string serialize_partition(const CellularPartition& p, const Structure& m) {
    return partition_to_json(p, m).dump(2) + "\n";
}

CellularPartition cellular_decompose(const Structure& m, int threshold) {
    if (threshold < 2) throw InputError("threshold must be at least 2");
    Decomposition d = decompose(m);

    struct PendingBand {
        int k;
        std::string encoding;
        std::vector<std::vector<int>> cells;
    };
    CellularPartition p;
    std::vector<PendingBand> bands;
    for (const auto& cls : d.classes) {
        if (static_cast<int>(cls.members.size()) < threshold) {
            for (int ci : cls.members)
                p.k_elements.insert(p.k_elements.end(), d.components[ci].elements.begin(),
                                    d.components[ci].elements.end());
            continue;
        }
        PendingBand band{cls.size, cls.encoding, {}};
        for (int ci : cls.members) band.cells.push_back(d.canonical_order[ci]);
        std::sort(band.cells.begin(), band.cells.end());
        bands.push_back(std::move(band));
    }
    std::sort(p.k_elements.begin(), p.k_elements.end());
    std::sort(bands.begin(), bands.end(), [](const PendingBand& a, const PendingBand& b) {
        return std::tie(a.k, a.encoding) < std::tie(b.k, b.encoding);
    });
    for (auto& band : bands) p.bands.push_back({band.k, std::move(band.cells)});
    return p;
}

namespace {

std::string tuple_text(const Structure& m, const std::string& rel, const std::vector<int>& t) {
    std::string s = rel + "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += m.element_name(t[i]);
    }
    return s + ")";
}

std::string cell_text(const Structure& m, const std::vector<int>& cell) {
    std::string s = "(";
    for (std::size_t i = 0; i < cell.size(); ++i) {
        if (i) s += ",";
        s += m.element_name(cell[i]);
    }
    return s + ")";
}

CellularReport fail(int condition, std::string violation) {
    CellularReport r;
    r.pass = false;
    r.condition = condition;
    r.violation = std::move(violation);
    return r;
}

// Identity outside the two cells, coordinatewise exchange across them.
std::vector<int> swap_permutation(int n, const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t l = 0; l < a.size(); ++l) {
        perm[a[l]] = b[l];
        perm[b[l]] = a[l];
    }
    return perm;
}

// Tuples of m lying entirely inside `region` (as a membership mask), per
// relation, paired with the relation name.
std::vector<std::pair<std::string, std::vector<int>>> tuples_inside(
    const Structure& m, const std::vector<char>& region) {
    std::vector<std::pair<std::string, std::vector<int>>> out;
    for (const auto& r : m.signature().relations)
        for (const auto& t : m.tuples(r.name)) {
            bool inside = true;
            for (int e : t)
                if (!region[e]) {
                    inside = false;
                    break;
                }
            if (inside) out.emplace_back(r.name, t);
        }
    return out;
}

// Does some bijection of cell a onto cell b, fixing K pointwise, carry every
// relation tuple inside K+a to a tuple inside K+b and conversely? Constants
// are ignored here; condition 3 accounts for them.
bool isomorphic_over_k(const Structure& m, const std::vector<char>& k_mask,
                       const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<char> region_a = k_mask, region_b = k_mask;
    for (int e : a) region_a[e] = 1;
    for (int e : b) region_b[e] = 1;
    auto tuples_a = tuples_inside(m, region_a);
    auto tuples_b = tuples_inside(m, region_b);
    if (tuples_a.size() != tuples_b.size()) return false;

    std::vector<int> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa.size() > 8) throw Error("cell too long for the isomorphism search");
    std::vector<int> image(m.size(), -1);
    for (std::size_t i = 0; i < k_mask.size(); ++i)
        if (k_mask[i]) image[i] = static_cast<int>(i);
    do {
        for (std::size_t l = 0; l < sa.size(); ++l) image[sa[l]] = sb[l];
        bool ok = true;
        for (const auto& [rel, t] : tuples_a) {
            std::vector<int> mapped;
            mapped.reserve(t.size());
            for (int e : t) mapped.push_back(image[e]);
            if (!m.holds(rel, mapped)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;  // bijection + equal counts makes it onto
    } while (std::next_permutation(sb.begin(), sb.end()));
    return false;
}

}  // namespace

CellularReport verify_cellular(const Structure& m, const CellularPartition& p) {
    const int n = m.size();

    // Condition 1: lengths per band, and K plus the cell entries partition
    // the universe.
    std::vector<int> covered(n, 0);
    auto touch = [&](int e, const std::string& what) -> std::string {
        if (e < 0 || e >= n) return what + " references an element outside the universe";
        if (covered[e]++) return "element " + m.element_name(e) + " is covered twice (" + what + ")";
        return "";
    };
    for (int e : p.k_elements)
        if (auto msg = touch(e, "K"); !msg.empty()) return fail(1, msg);
    for (std::size_t bi = 0; bi < p.bands.size(); ++bi) {
        const Band& band = p.bands[bi];
        if (band.k < 1)
            return fail(1, "band " + std::to_string(bi + 1) + " has length " + std::to_string(band.k));
        for (const auto& cell : band.cells) {
            if (static_cast<int>(cell.size()) != band.k)
                return fail(1, "band " + std::to_string(bi + 1) + " cell " + cell_text(m, cell) +
                                   " does not have length " + std::to_string(band.k));
            for (int e : cell)
                if (auto msg = touch(e, "band " + std::to_string(bi + 1)); !msg.empty())
                    return fail(1, msg);
        }
    }
    for (int e = 0; e < n; ++e)
        if (!covered[e]) return fail(1, "element " + m.element_name(e) + " is not covered");

    // Condition 2: cells of a band pairwise isomorphic over K.
    std::vector<char> k_mask(n, 0);
    for (int e : p.k_elements) k_mask[e] = 1;
    for (std::size_t bi = 0; bi < p.bands.size(); ++bi) {
        const auto& cells = p.bands[bi].cells;
        for (std::size_t j = 0; j < cells.size(); ++j)
            for (std::size_t j2 = j + 1; j2 < cells.size(); ++j2)
                if (!isomorphic_over_k(m, k_mask, cells[j], cells[j2]))
                    return fail(2, "band " + std::to_string(bi + 1) + " cells " +
                                       cell_text(m, cells[j]) + " and " + cell_text(m, cells[j2]) +
                                       " are not isomorphic over K");
    }

    // Condition 3: every coordinatewise pair swap is an automorphism.
    for (std::size_t bi = 0; bi < p.bands.size(); ++bi) {
        const auto& cells = p.bands[bi].cells;
        for (std::size_t j = 0; j < cells.size(); ++j)
            for (std::size_t j2 = j + 1; j2 < cells.size(); ++j2) {
                std::vector<int> perm = swap_permutation(n, cells[j], cells[j2]);
                std::string where = "band " + std::to_string(bi + 1) + " swap of cells " +
                                    cell_text(m, cells[j]) + " and " + cell_text(m, cells[j2]);
                for (const auto& [name, e] : m.constant_map())
                    if (perm[e] != e)
                        return fail(3, where + " moves the constant " + name);
                for (const auto& r : m.signature().relations)
                    for (const auto& t : m.tuples(r.name)) {
                        std::vector<int> mapped;
                        mapped.reserve(t.size());
                        for (int e : t) mapped.push_back(perm[e]);
                        if (!m.holds(r.name, mapped))
                            return fail(3, where + " sends " + tuple_text(m, r.name, t) +
                                               " to " + tuple_text(m, r.name, mapped) +
                                               " which does not hold");
                    }
            }
    }
    return {};
}

std::string CellularReport::text() const {
    if (pass) return "cellular check: PASS\n";
    return "cellular check: FAIL (condition " + std::to_string(condition) + ")\n  " + violation +
           "\n";
}

nlohmann::json CellularReport::to_json() const {
    nlohmann::json j;
    j["pass"] = pass;
    if (!pass) {
        j["condition"] = condition;
        j["violation"] = violation;
    }
    return j;
}

CellularPartition refine_indecomposable(const Structure& m, const CellularPartition& p) {
    {
        CellularReport r = verify_cellular(m, p);
        if (!r.pass) throw DomainError("partition fails verification: " + r.violation);
    }
    CellularPartition cur = p;
    bool split_any = false;
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t bi = 0; bi < cur.bands.size() && !progress; ++bi) {
            const Band& band = cur.bands[bi];
            for (int s = 1; s < band.k && !progress; ++s) {
                CellularPartition candidate;
                candidate.k_elements = cur.k_elements;
                for (std::size_t o = 0; o < cur.bands.size(); ++o)
                    if (o != bi) candidate.bands.push_back(cur.bands[o]);
                Band prefix{s, {}}, suffix{band.k - s, {}};
                for (const auto& cell : band.cells) {
                    prefix.cells.emplace_back(cell.begin(), cell.begin() + s);
                    suffix.cells.emplace_back(cell.begin() + s, cell.end());
                }
                candidate.bands.push_back(std::move(prefix));
                candidate.bands.push_back(std::move(suffix));
                if (verify_cellular(m, candidate).pass) {
                    cur = std::move(candidate);
                    progress = true;
                    split_any = true;
                }
            }
        }
    }
    if (!split_any) return cur;
    for (auto& band : cur.bands) std::sort(band.cells.begin(), band.cells.end());
    std::sort(cur.bands.begin(), cur.bands.end(), [](const Band& a, const Band& b) {
        return std::tie(a.k, a.cells) < std::tie(b.k, b.cells);
    });
    return cur;
}

Structure grid_expansion(const Structure& m, const CellularPartition& p) {
    {
        CellularReport r = verify_cellular(m, p);
        if (!r.pass) throw DomainError("partition fails verification: " + r.violation);
    }
    Signature sig;
    for (std::size_t bi = 0; bi < p.bands.size(); ++bi) {
        const std::string i = std::to_string(bi + 1);
        for (int l = 1; l <= p.bands[bi].k; ++l)
            sig.relations.push_back({"U" + i + "_" + std::to_string(l), 1, 1});
        sig.relations.push_back({"R" + i, p.bands[bi].k, p.bands[bi].k});
    }
    for (int e : p.k_elements) sig.constants.push_back("c_" + m.element_name(e));

    Structure out(sig, m.universe());
    for (int e : p.k_elements) out.assign_constant("c_" + m.element_name(e), e);
    for (std::size_t bi = 0; bi < p.bands.size(); ++bi) {
        const std::string i = std::to_string(bi + 1);
        for (const auto& cell : p.bands[bi].cells) {
            for (int l = 1; l <= p.bands[bi].k; ++l)
                out.add_tuple("U" + i + "_" + std::to_string(l), {cell[l - 1]});
            out.add_tuple("R" + i, cell);
        }
    }
    out.validate();
    return out;
}

}  // namespace macell
