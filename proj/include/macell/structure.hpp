#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace macell {

// One relation symbol. `degree_bound`, when present, asserts that no element
// of a conforming structure occurs in more than `degree_bound` tuples of this
// relation (occurrence at any coordinate counts).
struct RelationInfo {
    std::string name;
    int arity = 1;
    std::optional<int> degree_bound;

    bool operator==(const RelationInfo& o) const {
        return name == o.name && arity == o.arity && degree_bound == o.degree_bound;
    }
};

// A finite relational signature: named relations plus named constants.
// Names are unique across both kinds.
struct Signature {
    std::vector<RelationInfo> relations;
    std::vector<std::string> constants;

    const RelationInfo* find_relation(const std::string& name) const;
    bool has_constant(const std::string& name) const;
    void validate() const;  // throws InputError on duplicate/invalid entries

    bool operator==(const Signature& o) const {
        return relations == o.relations && constants == o.constants;
    }
};

// A finite structure. Element ids are opaque strings; the universe vector
// fixes document order, which is used for deterministic output only and
// carries no semantics. Internally elements are addressed by index into
// `universe`. Relation tuples are kept as sorted sets of index vectors so
// serialization is canonical by construction.
class Structure {
  public:
    Structure() = default;
    Structure(Signature sig, std::vector<std::string> universe);

    const Signature& signature() const { return sig_; }
    const std::vector<std::string>& universe() const { return universe_; }
    int size() const { return static_cast<int>(universe_.size()); }

    bool has_element(const std::string& id) const;
    // Appends a fresh element; throws InputError on a duplicate id.
    int add_element(const std::string& id);
    // Index of an element id; throws InputError if absent.
    int element_index(const std::string& id) const;
    const std::string& element_name(int index) const { return universe_.at(index); }

    // Tuple access. Tuples are vectors of element indices.
    const std::set<std::vector<int>>& tuples(const std::string& relation) const;
    bool holds(const std::string& relation, const std::vector<int>& tuple) const;
    void add_tuple(const std::string& relation, const std::vector<int>& tuple);
    void set_tuples(const std::string& relation, std::set<std::vector<int>> tuples);

    // Constant assignment (element index). Every constant of the signature
    // must be assigned before the structure validates.
    void assign_constant(const std::string& name, int element);
    int constant_element(const std::string& name) const;
    const std::map<std::string, int>& constant_map() const { return constants_; }

    // Full well-formedness check: signature validity, arity and range of all
    // tuples, totality of the constant assignment. Throws InputError.
    void validate() const;

    bool operator==(const Structure& o) const;

  private:
    Signature sig_;
    std::vector<std::string> universe_;
    std::map<std::string, int> index_;                       // id -> universe index
    std::map<std::string, std::set<std::vector<int>>> rel_;  // relation -> tuples
    std::map<std::string, int> constants_;                   // constant -> element index
};

// JSON document I/O. `load_structure` accepts the document format
//   {"signature": {...}, "universe": [...], "relations": {...}, "constants": {...}}
// and validates the result. `serialize` emits the same format with relation
// tuples sorted lexicographically; load_structure(serialize(m)) == m.
Structure load_structure(const std::string& json_text);
Structure load_structure_file(const std::string& path);
std::string serialize(const Structure& m);
void save_structure_file(const Structure& m, const std::string& path);

}  // namespace macell
