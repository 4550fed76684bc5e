#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "polsep/basis.hpp"

namespace polsep {

/// Inputs of a saturation run: two compatible morphisms alpha (into M) and
/// beta (into N) over the same alphabet and basis, plus a good subset S of N.
struct TreeContext {
    const CompatibleMorphism* alpha = nullptr;
    const CompatibleMorphism* beta = nullptr;
    Bitset S;  // over beta's target

    void validate() const;
};

/// Per element s of M, the inclusion-maximal sets T over N such that the pair
/// (s, T) is derivable from singleton seeds by pointwise products and
/// idempotent insertion steps. The represented family is downward closed: a
/// pair (s, T) belongs to it iff T is contained in one of the stored sets.
struct LabelFamily {
    std::uint32_t domain = 0;    // |M|
    std::uint32_t codomain = 0;  // |N|
    std::vector<std::vector<Bitset>> rows;  // rows[s]: antichain, canonical order

    bool operator==(const LabelFamily& o) const {
        return domain == o.domain && codomain == o.codomain && rows == o.rows;
    }
    std::uint64_t total_sets() const;
    /// One line per stored (s, T), "s : {t1,t2,...}", sorted.
    std::string dump() const;
};

struct SaturateOptions {
    Caps caps{};
    /// Apply the alphabet-content filter while generating (AT-style bases
    /// only). A no-op on correct runs; useful as a cross-check and to shrink
    /// intermediate sets.
    bool at_prune = false;
};

/// All pairs (alpha(w), beta(w)): breadth-first closure from the unit pair.
std::vector<std::pair<std::uint32_t, std::uint32_t>> leaf_labels(const TreeContext& ctx);

/// Stratified saturation: level 0 holds the singleton leaf family; level j+1
/// closes level j plus one more round of idempotent insertion steps under
/// pointwise products. Stops early at a fixpoint. Deterministic.
LabelFamily saturate(const TreeContext& ctx, std::uint32_t max_height,
                     const SaturateOptions& opts = {});

/// Literal least-fixpoint reference: explicit (s, subset) pairs closed under
/// the binary rule (all subsets of pointwise products) and the insertion rule
/// on exactly-idempotent labels. Requires |N| <= 12. Oracle for saturate.
struct NaiveFamily {
    std::uint32_t domain = 0;
    std::uint32_t codomain = 0;
    std::unordered_set<std::uint64_t> entries;  // s * 2^16 + mask

    static std::uint64_t key(std::uint32_t s, std::uint32_t mask) {
        return (std::uint64_t(s) << 16) | mask;
    }
    bool contains(std::uint32_t s, std::uint32_t mask) const {
        return entries.count(key(s, mask)) != 0;
    }
};
NaiveFamily saturate_naive(const TreeContext& ctx, const Caps& caps = {});

/// True iff the singleton {t} appears at s (i.e. t lies in a stored set).
bool has_root_label(const LabelFamily& f, std::uint32_t s, std::uint32_t t);

/// Drops from every stored set at s the elements whose basis class differs
/// from the class of s, re-maximalizing rows. Identity on families produced by
/// saturate; removes corrupted entries. Pre: AT-style basis.
LabelFamily alphabet_safe_prune(const LabelFamily& f, const TreeContext& ctx);

}  // namespace polsep
