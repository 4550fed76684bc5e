#pragma once

#include <memory>
#include <string>
#include <vector>

#include "polsep/nfa.hpp"

namespace polsep {

/// Regular-expression AST. Grammar accepted by parse:
///   expr   := term ('+' term)*            union
///   term   := factor+                     concatenation by juxtaposition
///   factor := atom '*'*
///   atom   := '(' expr ')' | '[' tok (',' tok)* ']' | '_EPS_' | 'tok' | bare
/// Bare letters are matched greedily (longest alphabet token first); quoted
/// tokens use single quotes. `[x,y,z]` is a letter-set alternative.
struct RegexNode {
    enum class Kind { Epsilon, Letter, LetterSet, Concat, Union, Star };
    Kind kind = Kind::Epsilon;
    std::vector<std::uint32_t> letters;               // Letter / LetterSet
    std::vector<std::shared_ptr<RegexNode>> children; // Concat / Union / Star
};

using RegexPtr = std::shared_ptr<RegexNode>;

RegexPtr parse_regex_ast(const std::string& text, const Alphabet& a);
std::string print_regex(const RegexNode& node, const Alphabet& a);
Nfa compile_regex(const RegexNode& node, const Alphabet& a);

/// Thompson construction from the grammar above; epsilon-free result.
Nfa parse_regex(const std::string& text, const Alphabet& a);

}  // namespace polsep
