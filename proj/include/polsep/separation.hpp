#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "polsep/trees.hpp"

namespace polsep {

/// Hierarchy levels handled by the deciders. The named ST levels desugar to
/// polynomial/Boolean-polynomial closure over the fixed bases:
///   st-1/2 = Pol(Triv), st-1 = BPol(Triv), st-3/2 = Pol(At), st-2 = BPol(At).
struct Level {
    enum class Kind { StHalf, StOne, StThreeHalf, StTwo, Pol, Bpol };
    Kind kind = Kind::StHalf;
    Basis basis;  // for Pol/Bpol

    static Level parse(const std::string& text, const Basis& basis_flag);
    std::string name() const;
    /// Whether the level is a Boolean closure (BPol) and the effective basis.
    bool boolean_closure() const;
    Basis effective_basis() const;
};

struct SepStats {
    std::uint64_t m_size = 0;         // compatible product size
    std::uint64_t n_size = 0;         // saturation codomain size
    std::uint64_t basis_size = 0;
    std::uint64_t height = 0;         // saturation height used
    std::uint64_t iterations = 0;     // Red iterations (BPol) or levels run
    std::uint64_t family_sets = 0;    // stored sets in the last family
    std::uint64_t red_surviving = 0;  // |S| at the fixpoint (BPol)
    bool red_chain_strict = true;     // each Red step strictly shrank until fixpoint
    bool red_all_good = true;         // every iterate was a good subset
    bool red_fixpoint = false;        // final set verified to be a fixpoint
    double wall_ms = 0;               // console-only; never serialized
};

struct Verdict {
    bool separable = false;
    /// Pairs (s0, s1) of accepting elements joined by a root label (Pol) or
    /// surviving the Red fixpoint (BPol); empty iff separable.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> witnesses;
    std::string level;
    std::string strategy;
    SepStats stats;
};

/// Decides Pol(basis)-separability of the two languages recognized by cm via
/// F0, F1. S is fixed to the image of cm; saturation height is the J-depth of
/// the basis monoid.
Verdict pol_separates(const CompatibleMorphism& cm, const std::vector<std::uint32_t>& F0,
                      const std::vector<std::uint32_t>& F1, const Caps& caps = {});

/// Decides BPol(basis)-separability: iterates the root-label refinement on
/// pair sets downward from image x image to its greatest fixpoint, asserting
/// goodness, shrinkage, and fixpoint-hood along the way.
Verdict bpol_separates(const CompatibleMorphism& cm, const std::vector<std::uint32_t>& F0,
                       const std::vector<std::uint32_t>& F1, const Caps& caps = {});

enum class Strategy { TransitionMonoid, TaggingReduction };
Strategy parse_strategy(const std::string& s);
std::string strategy_name(Strategy s);

using SepInput = std::variant<Nfa, RecognizedLanguage>;

/// Full pipeline: inputs to compatible product (directly, or through the
/// tagging reduction) to the Pol/BPol decider for the requested level.
Verdict st_separates(const Level& level, const SepInput& in1, const SepInput& in2,
                     Strategy strategy = Strategy::TransitionMonoid, const Caps& caps = {});

/// Separator certificates. A Pol certificate is a finite union of marked
/// products [B_0, a_1, B_1, ..., a_n, B_n]: each block B_i is a set of basis
/// classes and denotes the union of their membership languages. A BPol
/// certificate is a Boolean tree over Pol certificates.
struct PolProduct {
    std::vector<std::vector<std::uint32_t>> blocks;  // n+1 blocks of class ids
    std::vector<std::string> letters;                // n marked letter tokens
};
struct PolCertificate {
    std::vector<PolProduct> products;  // union; empty = empty language
};
struct CertNode {
    enum class Op { Leaf, And, Or, Not };
    Op op = Op::Leaf;
    PolCertificate leaf;                            // Leaf
    std::vector<std::shared_ptr<CertNode>> children;  // And/Or (>=1), Not (=1)
};
struct Certificate {
    bool boolean = false;  // false: Pol, true: BPol
    Basis basis;
    CertNode root;  // for Pol certificates a single Leaf node
};

/// Compiles the certificate language K over `a` into an NFA.
Nfa certificate_to_nfa(const Certificate& c, const Alphabet& a, const Caps& caps = {});

/// True iff K contains L(n1) and misses L(n2).
bool verify_certificate(const Certificate& c, const Nfa& n1, const Nfa& n2,
                        const Caps& caps = {});

}  // namespace polsep
