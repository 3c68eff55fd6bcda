#pragma once

#include <string>

#include "macell/formula.hpp"
#include "macell/structure.hpp"

namespace macell {

// Parses formula text against a signature. Grammar (whitespace insensitive):
//
//   formula := disj
//   disj    := conj ('|' conj)*
//   conj    := unary ('&' unary)*
//   unary   := '!' unary | quant | atom | '(' formula ')' | 'true' | 'false'
//   quant   := ('E' | 'A' | 'E[<=' INT ']' | 'E[=' INT ']' | 'E[<' INT ']') VAR '.' unary
//   atom    := NAME '(' term (',' term)* ')' | term '=' term
//   term    := VAR | '#' ELEMENT_ID
//
// `Ex.` may be written with or without a space after the quantifier letter.
// Throws ParseError for grammar violations and InputError for unknown
// relation symbols or arity mismatches.
FormulaPtr parse_formula(const std::string& text, const Signature& sig);

}  // namespace macell
