#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "polsep/monoid.hpp"

namespace polsep {

/// A finitely based quotienting Boolean algebra, given through the canonical
/// morphism onto its syntactic quotient:
///  - Triv: the one-element monoid (classes: none vs. all words),
///  - At: powerset of the alphabet under union, a |-> {a} (alphabet testable),
///  - AtRestricted(A0): powerset of A0, letters outside A0 map to the unit,
///  - User: an explicit surjective morphism loaded from a file.
enum class BasisKind { Triv, At, AtRestricted, User };

struct Basis {
    BasisKind kind = BasisKind::Triv;
    std::vector<std::string> restricted;       // AtRestricted: tracked letter tokens
    std::shared_ptr<const Morphism> user;      // User: fixed morphism (own alphabet)

    static Basis triv() { return {}; }
    static Basis at() { return {BasisKind::At, {}, nullptr}; }
    static Basis at_restricted(std::vector<std::string> letters) {
        return {BasisKind::AtRestricted, std::move(letters), nullptr};
    }
    static Basis user_basis(Morphism m);

    /// Parses the CLI form: "triv" | "at" | "at:a,b" | "user:path".
    static Basis parse(const std::string& text);
    std::string spec_string() const;

    /// The canonical morphism over `a`. For User the alphabet must match the
    /// loaded morphism's alphabet exactly.
    Morphism canonical(const Alphabet& a) const;
};

/// Result of extending a basis to the alphabet A + {two tag letters}.
struct ExtendedBasis {
    Basis basis;
    Alphabet extended_alphabet;
    std::array<std::string, 2> tag_letters;
    std::array<std::uint32_t, 2> tag_indices;
};

/// Names for the two tag letters: "0"/"1" unless taken, then "_t0"/"_t1",
/// then growing underscore prefixes.
std::array<std::string, 2> choose_tag_letters(const Alphabet& a);

/// Extends `b` to A union {tag letters}: Triv stays Triv; At over A becomes
/// AtRestricted(A); AtRestricted keeps its tracked set. The tag letters become
/// class-invisible. Pre: b is Triv/At/AtRestricted.
ExtendedBasis extend_basis_E(const Basis& b, const Alphabet& a);

/// A morphism together with a per-element class map into the basis quotient,
/// such that the class of alpha(w) is the canonical class of w.
struct CompatibleMorphism {
    Morphism morphism;
    std::vector<std::uint32_t> class_table;  // per element; see pair_derived
    /// When true, the target is pair-backed and class_table is indexed by the
    /// first pair component over the base monoid.
    bool pair_derived = false;
    Morphism canonical;  // basis canonical morphism, same alphabet
    Basis basis;

    std::uint32_t cls(std::uint32_t x) const {
        if (pair_derived) return class_table[x / morphism.target.pair_base().size()];
        return class_table[x];
    }
    std::uint32_t basis_size() const { return canonical.target.size(); }
    /// Exhaustively checks that cls is a monoid morphism consistent with the
    /// canonical letter classes. Throws invariant_error on violation.
    void validate() const;
};

/// True iff S contains the image of beta and is closed under multiplication.
/// S is a bitset over beta's target.
bool is_good(const Bitset& S, const Morphism& beta);

struct CompatibleProduct {
    CompatibleMorphism cm;
    std::vector<std::uint32_t> accept0;  // l0.accept lifted into the product
    std::vector<std::uint32_t> accept1;  // l1.accept lifted into the product
};

/// Reachable part of M0 x M1 x (basis monoid) under the componentwise letter
/// images; the class map is the third projection. Both languages must share
/// one alphabet. Throws resource_limit_error past caps.monoid_cap.
CompatibleProduct compatible_product(const RecognizedLanguage& l0,
                                     const RecognizedLanguage& l1, const Basis& basis,
                                     const Caps& caps = {});

/// Quotients the product by the coarsest congruence that keeps the two accept
/// sets and the class map well-defined (partition refinement over left/right
/// multiplication by the letter images). The recognized languages, the basis,
/// and hence every separation verdict are unchanged; the carrier shrinks to
/// the syntactic image, which keeps downstream fixpoints tractable. Pre: the
/// target is generated by the letter images (as compatible_product ensures).
CompatibleProduct syntactic_quotient(const CompatibleProduct& p);

}  // namespace polsep
