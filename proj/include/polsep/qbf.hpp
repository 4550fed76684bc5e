#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polsep/nfa.hpp"
#include "polsep/separation.hpp"

namespace polsep {

/// Quantified Boolean formula in prenex CNF. Variables are numbered 1..n with
/// x_1 the INNERMOST quantifier; quantifiers[i] binds x_{i+1}. Literals are
/// +v / -v. Every clause is nonempty.
struct Qbf {
    enum class Quant : std::uint8_t { Exists, Forall };
    std::vector<Quant> quantifiers;          // innermost first
    std::vector<std::vector<int>> clauses;   // over variables 1..n

    std::uint32_t variables() const { return static_cast<std::uint32_t>(quantifiers.size()); }
    void validate() const;
};

/// QDIMACS reader: `p cnf n m`, one e/a line per quantifier block listed
/// outermost-first (reversed on load), clauses `lit... 0`. Every variable must
/// be quantified. Throws input_error with line positions.
Qbf parse_qdimacs(const std::string& text);
std::string print_qdimacs(const Qbf& q);

/// Brute-force evaluation; requires variables() <= 20.
bool eval_qbf(const Qbf& q);

/// The two languages attached to a QBF. Alphabet (3n+1 letters):
/// x1,nx1,...,xn,nxn, h1..hn, dollar — tokens "x1", "nx1", "h1", "dollar".
struct QbfInstance {
    Qbf qbf;
    Alphabet alphabet;
    Nfa l;        // satisfaction-side language
    Nfa lprime;   // refutation-side language
    /// Epsilon-builder state counts per nesting level (before elimination),
    /// recorded so the linear growth law can be checked and logged.
    std::vector<std::uint32_t> l_builder_states;
    std::vector<std::uint32_t> lprime_builder_states;
};

/// Builds the instance whose ST[3/2]-inseparability is equivalent to the
/// truth of the formula.
QbfInstance build_qbf_languages(const Qbf& q);

/// Pretty token for display: "x1" -> x_1, "nx1" -> ~x_1, "h1" -> #_1,
/// "dollar" -> $.
std::string pretty_letter(const std::string& token);

struct QbfCheckResult {
    enum class Status { Pass, Fail, Skipped };
    Status status = Status::Pass;
    bool truth = false;          // eval_qbf
    bool separable = false;      // decider verdict (valid unless Skipped)
    std::string note;
};

/// Compares eval_qbf with NOT separable at ST[3/2] on the generated instance.
/// Budget overruns (monoid caps, deadline) yield Skipped, never Fail.
QbfCheckResult check_qbf_reduction(const Qbf& q, const Caps& caps = {});

/// Instance transform lifting ST[3/2] separation to ST[2]: over A plus fresh
/// marker letters m ("#") and d ("$"),
///   L  = m (H' m (A* d m)*)* H m (A* d m)*   and   L' = m (H' m (A* d m)*)*.
/// H is ST[3/2]-separable from H' iff L is ST[2]-separable from L'.
struct BpolredInstance {
    Alphabet alphabet;       // A + {hash, dollar}
    std::string hash_token, dollar_token;
    bool renamed = false;    // markers collided with A and were renamed
    Nfa l, lprime;
};
BpolredInstance build_bpolred_instance(const Nfa& h, const Nfa& hprime);

}  // namespace polsep
