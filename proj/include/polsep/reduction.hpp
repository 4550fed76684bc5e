#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polsep/basis.hpp"
#include "polsep/separation.hpp"

namespace polsep {

/// A tagging: a morphism tau from {0,1}* into a finite monoid T plus a set G
/// of usable tag values. The rank |G| bounds how many transitions can be
/// relabeled with pairwise distinct tags.
struct Tagging {
    Monoid t;                          // tag monoid
    std::uint32_t tau0 = 0;            // image of letter 0
    std::uint32_t tau1 = 0;            // image of letter 1
    std::vector<std::uint32_t> g;      // usable tags, sorted
    std::uint32_t rank() const { return static_cast<std::uint32_t>(g.size()); }
    std::uint32_t tau_of_length(std::uint64_t len) const;  // image of 0^len
    void validate() const;
};

/// Z/kZ with tau(0) = tau(1) = 1 mod k and G = all of Z/kZ; rank k.
Tagging cyclic_tagging(std::uint32_t k);

/// One NFA relabeled by a tagging: transition i (in the fixed order: sorted by
/// source, letter token, target) reads the composite letter (a_i, g_i), where
/// g_i is the i-th usable tag. All labels end up pairwise distinct. The result
/// alphabet is the full product A x T with tokens "a|t3".
struct RelabeledNfa {
    Nfa nfa;                                   // over A x T
    Alphabet base_alphabet;                    // A
    std::vector<Transition> transition_order;  // original transitions, fixed order
    std::vector<std::uint32_t> tags;           // tag of each ordered transition
};
RelabeledNfa relabel_nfa(const Nfa& n, const Tagging& p);

/// NFA over A + {tag letters} for the padded language: an arbitrary tag-word
/// prefix, then for each original letter a tag-word whose tau-class matches
/// the transition's tag.
Nfa build_language_nfa(const Nfa& n, const Tagging& p);

/// The explicit monoid recognizer of the same padded language:
/// M = T + (T x N x A x T) where N = Q^2 + {zero, unit} composes transition
/// pairs. Asserts the size bound |M| = |T| + |A| |T|^2 (|Q|^2 + 2) and
/// associativity (exhaustively up to 1e8 triples, sampled beyond).
RecognizedLanguage build_language_monoid(const Nfa& n, const Tagging& p);

struct ReductionArtifacts {
    Tagging tagging;
    RelabeledNfa relabeled1, relabeled2;
    RecognizedLanguage language1, language2;  // over A + tag letters
    ExtendedBasis extended;                   // basis for the padded alphabet
    CompatibleProduct product;
};

/// Complete monoid-side instance equivalent to the NFA-side separation
/// problem at `level`: shared cyclic tagging of rank max(|delta1|, |delta2|, 1),
/// the two explicit language monoids, and their compatible product over the
/// extended basis. Pre: level desugars to Pol/BPol over a Triv/At-style basis.
ReductionArtifacts reduce_instance(const Nfa& n1, const Nfa& n2, const Level& level,
                                   const Caps& caps = {});

}  // namespace polsep
