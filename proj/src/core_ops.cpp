#include "macell/core_ops.hpp"

#include <set>

#include "macell/errors.hpp"
#include "macell/eval.hpp"

namespace macell {

Structure qf_expand(const Structure& m, const DefinitionSet& defs) {
    Signature sig = m.signature();
    std::set<std::string> names;
    for (const auto& r : sig.relations) names.insert(r.name);
    for (const auto& c : sig.constants) names.insert(c);

    for (const auto& d : defs) {
        if (!names.insert(d.name).second)
            throw InputError("definition name clashes with existing symbol: " + d.name);
        if (d.vars.empty()) throw InputError("definition " + d.name + " has arity 0");
        if (!is_quantifier_free(d.body))
            throw InputError("definition " + d.name + " is not quantifier-free");
        std::set<std::string> declared(d.vars.begin(), d.vars.end());
        if (declared.size() != d.vars.size())
            throw InputError("definition " + d.name + " repeats a variable");
        for (const auto& v : d.body->free_vars)
            if (!declared.count(v))
                throw InputError("definition " + d.name + " leaves " + v + " undeclared");
        sig.relations.push_back({d.name, static_cast<int>(d.vars.size()), d.degree_bound});
    }

    Structure out(sig, m.universe());
    for (const auto& r : m.signature().relations)
        for (const auto& t : m.tuples(r.name)) out.add_tuple(r.name, t);
    for (const auto& [name, e] : m.constant_map()) out.assign_constant(name, e);

    for (const auto& d : defs) {
        Evaluator ev(m);
        const int arity = static_cast<int>(d.vars.size());
        std::vector<int> tuple(arity, 0);
        Env env;
        if (m.size() > 0) {
            while (true) {
                for (int i = 0; i < arity; ++i) env[d.vars[i]] = tuple[i];
                if (ev.eval(d.body, env)) out.add_tuple(d.name, tuple);
                int i = 0;
                for (; i < arity; ++i) {
                    if (++tuple[i] < m.size()) break;
                    tuple[i] = 0;
                }
                if (i == arity) break;
            }
        }
    }
    out.validate();
    return out;
}

Structure reduct(const Structure& m, const std::vector<std::string>& relations,
                 const std::vector<std::string>& constants) {
    Signature sig;
    for (const auto& name : relations) {
        const RelationInfo* info = m.signature().find_relation(name);
        if (!info) throw InputError("reduct names unknown relation: " + name);
        sig.relations.push_back(*info);
    }
    for (const auto& name : constants) {
        if (!m.signature().has_constant(name))
            throw InputError("reduct names unknown constant: " + name);
        sig.constants.push_back(name);
    }
    Structure out(sig, m.universe());
    for (const auto& name : relations)
        for (const auto& t : m.tuples(name)) out.add_tuple(name, t);
    for (const auto& name : constants) out.assign_constant(name, m.constant_element(name));
    out.validate();
    return out;
}

Structure expand_with_unaries(const Structure& m,
                              const std::vector<std::vector<std::string>>& colors,
                              const std::string& name_prefix) {
    Signature sig = m.signature();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < colors.size(); ++i) {
        std::string name = name_prefix + std::to_string(i);
        if (sig.find_relation(name) || sig.has_constant(name))
            throw InputError("unary expansion name clashes: " + name);
        sig.relations.push_back({name, 1, 1});
        names.push_back(std::move(name));
    }
    Structure out(sig, m.universe());
    for (const auto& r : m.signature().relations)
        for (const auto& t : m.tuples(r.name)) out.add_tuple(r.name, t);
    for (const auto& [name, e] : m.constant_map()) out.assign_constant(name, e);
    for (std::size_t i = 0; i < colors.size(); ++i)
        for (const auto& id : colors[i]) out.add_tuple(names[i], {m.element_index(id)});
    out.validate();
    return out;
}

}  // namespace macell
