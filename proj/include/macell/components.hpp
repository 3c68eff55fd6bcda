#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "macell/formula.hpp"
#include "macell/structure.hpp"

namespace macell {

// Two elements are mates when they co-occur in some relation tuple (equality
// is a logical atom and never contributes). Components are the classes of the
// transitive closure of the mate relation; isolated elements are singletons.
struct ComponentInfo {
    std::vector<int> elements;  // universe order
    int iso_class = 0;
};

struct IsoClassInfo {
    std::string encoding;       // canonical-form invariant
    int size = 0;               // elements per member component
    std::vector<int> members;   // component indices, ascending
};

struct Decomposition {
    std::vector<ComponentInfo> components;          // ordered by smallest element
    std::vector<int> component_of;                  // element index -> component index
    std::vector<IsoClassInfo> classes;              // ordered by first appearance
    std::vector<std::vector<int>> canonical_order;  // per component: canonical positions
};

Decomposition decompose(const Structure& m);

// Distance in tuple steps: the least k such that tuples t_1..t_k chain from
// x to y with consecutive tuples intersecting. d(x,x) is 1 when x occurs in
// some tuple; nullopt means unreachable (distinct components, or an isolated
// element even for x = y).
std::optional<int> gaifman_distance(const Structure& m, const std::string& x,
                                    const std::string& y);

// Elements within distance <= radius of center; radius 0 gives {center}.
// Returned in universe order.
std::vector<std::string> ball(const Structure& m, const std::string& center, int radius);

// A linked conjunction witnessing connectivity: conjuncts are relational
// atoms over shared variables, one per tuple of a shortest chain, with the
// satisfying assignment. first_var/last_var name the designated endpoints.
struct LinkedWitness {
    FormulaPtr conjunction;
    std::map<std::string, std::string> assignment;  // variable -> element id
    std::string first_var;
    std::string last_var;
};

// Throws DomainError when x and y are not connected.
LinkedWitness find_linked_witness(const Structure& m, const std::string& x,
                                  const std::string& y);

// Conjunction of >= 1 relational atoms where consecutive variable blocks
// share a variable (a single relational atom qualifies).
bool is_linked_conjunction(const FormulaPtr& f);

// f maps element id -> element id and must be a total bijection of the
// universe (throws InputError otherwise). is_automorphism additionally
// requires constants fixed and all relations preserved in both directions;
// is_component_map requires components to map setwise onto components with
// each restriction an isomorphism of the induced substructures. The two
// predicates agree on every bijection.
bool is_automorphism(const Structure& m, const std::map<std::string, std::string>& f);
bool is_component_map(const Structure& m, const std::map<std::string, std::string>& f);

// Branching constant for ball-growth estimates:
// max(2, 1 + sum over relations of degree * (arity - 1)), using measured
// degrees.
long long branching_constant(const Structure& m);

}  // namespace macell
