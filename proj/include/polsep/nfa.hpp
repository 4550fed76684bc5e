#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "polsep/alphabet.hpp"
#include "polsep/util.hpp"

namespace polsep {

struct Transition {
    std::uint32_t from = 0;
    std::uint32_t letter = 0;
    std::uint32_t to = 0;
    bool operator==(const Transition& o) const {
        return from == o.from && letter == o.letter && to == o.to;
    }
};

/// Nondeterministic finite automaton without epsilon transitions. States are
/// 0..states-1; transitions are kept sorted by (source, letter token, target).
struct Nfa {
    Alphabet alphabet;
    std::uint32_t states = 0;
    std::vector<Transition> transitions;
    std::vector<std::uint32_t> initial;  // sorted, unique
    std::vector<std::uint32_t> final;    // sorted, unique

    /// Sorts transitions/initial/final, deduplicates, validates state bounds.
    void normalize();
    bool is_final(std::uint32_t q) const;
    bool is_initial(std::uint32_t q) const;
};

/// The empty language over `a`.
Nfa nfa_empty(const Alphabet& a);
/// The language {epsilon} over `a`.
Nfa nfa_epsilon(const Alphabet& a);
/// The language A* over `a`.
Nfa nfa_universal(const Alphabet& a);
/// The single-word language {w}.
Nfa nfa_word(const Alphabet& a, const Word& w);

bool accepts(const Nfa& n, const Word& w);
bool is_empty(const Nfa& n);

/// Product automaton over a shared alphabet (reachable part only).
Nfa intersect(const Nfa& a, const Nfa& b);
/// Disjoint union over a shared alphabet.
Nfa nfa_union(const Nfa& a, const Nfa& b);
/// Complete DFA for the same language via subset construction; throws
/// resource_limit_error if more than caps.det_cap subsets appear.
Nfa determinize(const Nfa& n, const Caps& caps = {});
/// Complement via determinization; same cap behaviour.
Nfa complement(const Nfa& n, const Caps& caps = {});
/// Moore partition refinement on a complete DFA (one initial state, exactly
/// one transition per state and letter, as determinize produces); returns the
/// minimal complete DFA for the same language. Throws input_error otherwise.
Nfa minimize_dfa(const Nfa& dfa);
/// True iff L(big) contains L(small), via intersect(small, complement(big)).
bool includes(const Nfa& big, const Nfa& small, const Caps& caps = {});
bool equivalent(const Nfa& a, const Nfa& b, const Caps& caps = {});

/// Keeps only states reachable from initial and co-reachable to final,
/// renumbering in BFS order (deterministic).
Nfa trim(const Nfa& n);

/// Re-letters an automaton: letter i of n.alphabet becomes letter_map[i] of
/// `target` (several letters may merge). Used to project composite letters.
Nfa project_letters(const Nfa& n, const Alphabet& target,
                    const std::vector<std::uint32_t>& letter_map);

/// Closure of L(n) upward under the scattered-subword order (adds self-loops
/// on every letter at every state).
Nfa subword_closure(const Nfa& n);

/// Builder for Thompson-style fragments with epsilon transitions.
/// to_nfa eliminates epsilons and trims.
class EpsBuilder {
  public:
    struct Frag {
        std::uint32_t start;
        std::uint32_t accept;
    };

    explicit EpsBuilder(Alphabet a) : alphabet_(std::move(a)) {}

    Frag eps();
    Frag letter(std::uint32_t l);
    Frag letter_set(const std::vector<std::uint32_t>& ls);
    Frag concat(Frag a, Frag b);
    Frag alt(Frag a, Frag b);
    Frag star(Frag a);
    /// Copies an existing epsilon-free NFA into the builder as a fragment.
    Frag embed(const Nfa& n);

    std::uint32_t state_count() const { return states_; }
    /// Epsilon elimination + trim; `f` becomes the (single) initial/final pair.
    Nfa to_nfa(Frag f) const;

  private:
    std::uint32_t fresh();
    void edge(std::uint32_t q, std::optional<std::uint32_t> letter, std::uint32_t r);

    Alphabet alphabet_;
    std::uint32_t states_ = 0;
    // letter+1 encoding, 0 = epsilon
    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> edges_;
};

}  // namespace polsep
