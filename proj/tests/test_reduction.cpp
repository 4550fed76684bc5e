#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polsep/corpus.hpp"
#include "polsep/io.hpp"
#include "polsep/reduction.hpp"
#include "polsep/separation.hpp"

using namespace polsep;

TEST_CASE("cyclic taggings") {
    Tagging p = cyclic_tagging(3);
    CHECK(p.t.size() == 3);
    CHECK(p.rank() == 3);
    CHECK(p.tau0 == 1);
    CHECK(p.tau1 == 1);
    CHECK(p.tau_of_length(0) == 0);
    CHECK(p.tau_of_length(7) == 1);
    CHECK(p.tau_of_length(9) == 0);
    CHECK_NOTHROW(p.validate());

    Tagging unit = cyclic_tagging(1);
    CHECK(unit.t.size() == 1);
    CHECK(unit.tau_of_length(5) == 0);

    Tagging bad = p;
    bad.g = {0, 0, 1};
    CHECK_THROWS_AS(bad.validate(), input_error);
}

TEST_CASE("relabeling fixes the transition order and distinct tags") {
    const Alphabet ab = two_letter_alphabet();
    Nfa n;
    n.alphabet = ab;
    n.states = 2;
    n.initial = {0};
    n.final = {1};
    n.transitions = {{1, 0, 0}, {0, 1, 1}, {0, 0, 1}};
    n.normalize();

    Tagging p = cyclic_tagging(3);
    RelabeledNfa r = relabel_nfa(n, p);
    REQUIRE(r.transition_order.size() == 3);
    // sorted by source state, then letter token, then target
    CHECK(r.transition_order[0] == Transition{0, 0, 1});
    CHECK(r.transition_order[1] == Transition{0, 1, 1});
    CHECK(r.transition_order[2] == Transition{1, 0, 0});
    CHECK(r.tags == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(r.base_alphabet.tokens() == ab.tokens());

    // composite alphabet is base-major, tag-minor
    CHECK(r.nfa.alphabet.size() == 6);
    CHECK(r.nfa.alphabet.token(0) == "a|t0");
    CHECK(r.nfa.alphabet.token(1) == "a|t1");
    CHECK(r.nfa.alphabet.token(5) == "b|t2");
    CHECK(r.nfa.transitions.size() == 3);
    for (const auto& t : r.nfa.transitions) {
        // each original transition carries its own tag
        std::uint32_t base = t.letter / p.t.size();
        std::uint32_t tag = t.letter % p.t.size();
        bool found = false;
        for (std::size_t i = 0; i < 3; ++i)
            if (r.transition_order[i].from == t.from && r.transition_order[i].to == t.to &&
                r.transition_order[i].letter == base)
                found = found || r.tags[i] == tag;
        CHECK(found);
    }

    Tagging small = cyclic_tagging(2);
    CHECK_THROWS_AS(relabel_nfa(n, small), input_error);  // rank below |delta|
}

TEST_CASE("padded language of a one-loop automaton is universal") {
    const Alphabet ua({"a"});
    Nfa loop;
    loop.alphabet = ua;
    loop.states = 1;
    loop.initial = {0};
    loop.final = {0};
    loop.transitions = {{0, 0, 0}};
    loop.normalize();

    Nfa lang = build_language_nfa(loop, cyclic_tagging(1));
    CHECK(lang.alphabet.size() == 3);  // a + two tag letters
    CHECK(equivalent(lang, nfa_universal(lang.alphabet)));
}

TEST_CASE("padded language words by hand") {
    const Alphabet ua({"a"});
    // two states, a single a-transition 0 -> 1
    Nfa step;
    step.alphabet = ua;
    step.states = 2;
    step.initial = {0};
    step.final = {1};
    step.transitions = {{0, 0, 1}};
    step.normalize();

    Tagging p = cyclic_tagging(2);
    Nfa lang = build_language_nfa(step, p);
    // letters: a = 0, tags "0" = 1, "1" = 2; the transition carries tag 0,
    // so the tag word after the 'a' must have even length
    CHECK_FALSE(accepts(lang, {}));
    CHECK(accepts(lang, {0}));
    CHECK(accepts(lang, {1, 0}));          // tag prefix is free
    CHECK(accepts(lang, {2, 2, 1, 0}));
    CHECK(accepts(lang, {0, 1, 2}));       // even tag tail keeps class 0
    CHECK_FALSE(accepts(lang, {0, 1}));    // odd tail has the wrong class
    CHECK_FALSE(accepts(lang, {0, 0}));    // no second a-transition from state 1
    CHECK_FALSE(accepts(lang, {1}));       // initial state is not final

    RecognizedLanguage rl = build_language_monoid(step, p);
    CHECK(equivalent(lang, morphism_to_nfa(rl)));
    // |M| = |T| + |A| |T|^2 (|Q|^2 + 2)
    CHECK(rl.morphism.target.size() == 2 + 1 * 4 * (4 + 2));
}

TEST_CASE("padded constructions agree on random instances") {
    const Alphabet ab = two_letter_alphabet();
    Rng rng(31);
    for (int i = 0; i < 10; ++i) {
        Nfa n = random_nfa(rng, 3, ab, 4);
        auto k = static_cast<std::uint32_t>(
            std::max<std::size_t>(n.transitions.size(), 1) + rng.below(2));
        Tagging p = cyclic_tagging(k);
        Nfa lang = build_language_nfa(n, p);
        RecognizedLanguage rl = build_language_monoid(n, p);
        CAPTURE(i);
        CHECK(equivalent(lang, morphism_to_nfa(rl)));
    }
}

TEST_CASE("reduce_instance assembles a decidable product") {
    const Alphabet ab = two_letter_alphabet();
    Nfa a_start;
    a_start.alphabet = ab;
    a_start.states = 2;
    a_start.initial = {0};
    a_start.final = {1};
    a_start.transitions = {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}};
    a_start.normalize();
    Nfa b_start = a_start;
    b_start.transitions = {{0, 1, 1}, {1, 0, 1}, {1, 1, 1}};
    b_start.normalize();

    Level half = Level::parse("st-1/2", Basis::triv());
    ReductionArtifacts art = reduce_instance(a_start, b_start, half, Caps{});
    CHECK(art.tagging.rank() == 3);
    CHECK(art.language1.morphism.alphabet.tokens() ==
          art.language2.morphism.alphabet.tokens());
    CHECK(art.extended.extended_alphabet.size() == 4);
    const std::uint64_t bound = 3 + 2 * 9 * (4 + 2);
    CHECK(art.language1.morphism.target.size() == bound);
    CHECK(art.language2.morphism.target.size() == bound);
    CHECK(art.product.cm.morphism.target.size() > 0);
    CHECK_NOTHROW(art.product.cm.validate());

    // the extended basis keeps tag letters invisible: over Triv it is Triv
    CHECK(art.extended.basis.spec_string() == "triv");

    Level threehalf = Level::parse("st-3/2", Basis::triv());
    ReductionArtifacts art2 = reduce_instance(a_start, b_start, threehalf, Caps{});
    CHECK(art2.extended.basis.spec_string() == "at:a,b");
}

TEST_CASE("reduction artifacts are deterministic") {
    const Alphabet ab = two_letter_alphabet();
    Rng rng(8);
    Nfa n1 = random_nfa(rng, 3, ab, 4);
    Nfa n2 = random_nfa(rng, 3, ab, 4);
    Level lv = Level::parse("st-1/2", Basis::triv());
    ReductionArtifacts a = reduce_instance(n1, n2, lv, Caps{});
    ReductionArtifacts b = reduce_instance(n1, n2, lv, Caps{});
    CHECK(dump_json(tagging_to_json(a.tagging)) == dump_json(tagging_to_json(b.tagging)));
    CHECK(a.relabeled1.tags == b.relabeled1.tags);
    CHECK(dump_json(morphism_to_json(a.language1)) ==
          dump_json(morphism_to_json(b.language1)));
}

TEST_CASE("alphabet mismatch is rejected") {
    Nfa n1 = nfa_universal(two_letter_alphabet());
    Nfa n2 = nfa_universal(Alphabet({"a"}));
    CHECK_THROWS_AS(
        reduce_instance(n1, n2, Level::parse("st-1/2", Basis::triv()), Caps{}),
        input_error);
}
