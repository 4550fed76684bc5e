#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polsep/basis.hpp"
#include "polsep/regex.hpp"
#include "polsep/trees.hpp"

namespace polsep {

/// Seeded generators for test corpora. All functions are deterministic in the
/// Rng state and never depend on global state.

Alphabet two_letter_alphabet();

/// Random NFA: 1..max_states states, up to max_transitions distinct
/// transitions, random nonempty-ish initial/final sets (either may be empty).
Nfa random_nfa(Rng& rng, std::uint32_t max_states, const Alphabet& a,
               std::uint32_t max_transitions);

/// Random regex AST of depth <= max_depth over `a`.
RegexPtr random_regex(Rng& rng, const Alphabet& a, std::uint32_t max_depth);

/// Random monoid with at most max_size elements: the transformation monoid
/// generated by 1-2 random self-maps on <= 3 points, retried until small
/// enough.
Monoid random_monoid(Rng& rng, std::uint32_t max_size);

/// A random basis whose monoid has <= max_size elements, over {a,b}:
/// Triv, At, AtRestricted({a}), or a cyclic-group user basis.
Basis random_basis(Rng& rng, std::uint32_t max_size);

/// Random compatible morphism into a product with the basis quotient (class
/// map = projection), target size <= max_size. Returns nullopt if the size
/// filter keeps failing.
std::optional<CompatibleMorphism> random_compatible(Rng& rng, const Alphabet& a,
                                                    const Basis& basis,
                                                    std::uint32_t max_size);

/// All subsets of beta's target that are good (contain the image, closed
/// under multiplication). Requires target size <= 16.
std::vector<Bitset> all_good_subsets(const Morphism& beta);

/// All multiplication tables on {0..n-1} with unit 0 that are associative.
std::vector<Monoid> enumerate_monoids(std::uint32_t n);

}  // namespace polsep
