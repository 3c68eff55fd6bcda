#pragma once

// Quantifier elimination into bounded existential form. Over a structure
// whose relations carry degree bounds, every first-order formula (counting
// quantifiers included) is equivalent, on all large enough realizations of a
// given catalog, to a boolean combination of bounded existential members.
// The rewriter reports the size threshold from which the equivalence holds
// and a trace of the decisions it took.

#include <string>
#include <vector>

#include "macell/catalog.hpp"
#include "macell/formula.hpp"
#include "macell/structure.hpp"

namespace macell {

struct RewriteResult {
    FormulaPtr formula;
    // The rewrite is claimed (and tested) to agree with the input on every
    // realization with at least this many elements.
    long long threshold = 1;
    std::vector<std::string> notes;
};

// Requires every relation of `sig` to carry a degree bound (InputError
// otherwise). The catalog may be null; it is consulted only when a clause
// needs a semantic decision (all literals on the eliminated variable mention
// nothing else), and its absence then raises InputError. DomainError is
// raised when an anchored literal admits no derivable degree bound, or when
// the result of a semantic decision cannot be expressed inside the bounded
// counting fragment.
RewriteResult qe_rewrite(const FormulaPtr& phi, const Signature& sig,
                         const StructureCatalog* cat = nullptr);

RewriteResult qe_rewrite(const FormulaPtr& phi, const StructureCatalog& cat);

}  // namespace macell
