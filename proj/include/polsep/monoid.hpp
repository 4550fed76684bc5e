#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "polsep/alphabet.hpp"
#include "polsep/nfa.hpp"
#include "polsep/util.hpp"

namespace polsep {

/// Finite monoid, elements 0..size-1. Either table-backed (explicit
/// multiplication table) or pair-backed: elements are pairs (u, v) over a
/// shared base monoid, encoded u * base.size + v, multiplied componentwise.
/// Pair backing avoids materializing quadratic tables for product monoids.
class Monoid {
  public:
    Monoid() = default;
    static Monoid from_table(std::uint32_t size, std::uint32_t unit,
                             std::vector<std::uint32_t> table, bool check_assoc = true);
    static Monoid pair_of(std::shared_ptr<const Monoid> base);

    std::uint32_t size() const { return size_; }
    std::uint32_t unit() const { return unit_; }
    bool pair_backed() const { return base_ != nullptr; }
    const Monoid& pair_base() const { return *base_; }
    std::uint32_t pair_encode(std::uint32_t u, std::uint32_t v) const {
        return u * base_->size() + v;
    }
    std::pair<std::uint32_t, std::uint32_t> pair_decode(std::uint32_t x) const {
        return {x / base_->size(), x % base_->size()};
    }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (base_) {
            const std::uint32_t k = base_->size();
            return base_->mul(a / k, b / k) * k + base_->mul(a % k, b % k);
        }
        return table_[std::size_t(a) * size_ + b];
    }

    /// Full associativity + neutrality check; O(size^3). Throws input_error.
    void validate() const;
    const std::vector<std::uint32_t>& table() const { return table_; }

  private:
    std::uint32_t size_ = 1;
    std::uint32_t unit_ = 0;
    std::vector<std::uint32_t> table_{0};
    std::shared_ptr<const Monoid> base_;
};

/// Monoid morphism from A* given by letter images.
struct Morphism {
    Alphabet alphabet;
    Monoid target;
    std::vector<std::uint32_t> letter_image;  // one per alphabet letter

    std::uint32_t image_of_letter(std::uint32_t l) const { return letter_image[l]; }
    std::uint32_t apply(const Word& w) const {
        std::uint32_t m = target.unit();
        for (auto l : w) m = target.mul(m, letter_image[l]);
        return m;
    }
    void validate() const;
};

/// A regular language presented as a morphism plus accepting element set.
struct RecognizedLanguage {
    Morphism morphism;
    std::vector<std::uint32_t> accept;  // sorted, unique
    void validate() const;
};

/// Transition monoid of an NFA: Boolean reachability relations on Q, generated
/// by the letter relations, with the identity relation as unit (this makes the
/// empty word come out right). Accepting relations connect an initial to a
/// final state. Throws resource_limit_error past caps.monoid_cap elements or
/// if the multiplication table would not fit in memory.
RecognizedLanguage transition_monoid(const Nfa& n, const Caps& caps = {});

/// Sorted list of elements reachable as images of words (the submonoid
/// generated by the letter images together with the unit).
std::vector<std::uint32_t> morphism_image(const Morphism& m);

std::vector<std::uint32_t> idempotents(const Monoid& m);

/// The unique idempotent power of s.
std::uint32_t omega_power(const Monoid& m, std::uint32_t s);

/// Greatest h such that pairwise distinct s_1..s_h exist with each
/// s_{i+1} = x*s_i*y: the longest path in the condensation of two-sided
/// division, where every component counts with its size (mutually dividing
/// elements can all appear on one chain). For a group this is |G|, not 1.
std::uint32_t j_depth(const Monoid& m);

/// Deterministic complete automaton on the monoid elements: s --a--> s*img(a),
/// initial {unit}, finals = accept. Recognizes the same language.
Nfa morphism_to_nfa(const RecognizedLanguage& rl);

}  // namespace polsep
