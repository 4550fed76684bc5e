#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polsep/nfa.hpp"
#include "polsep/qbf.hpp"
#include "polsep/separation.hpp"

using namespace polsep;

namespace {

Qbf make_qbf(std::vector<Qbf::Quant> quants, std::vector<std::vector<int>> clauses) {
    Qbf q;
    q.quantifiers = std::move(quants);  // index 0 = innermost variable
    q.clauses = std::move(clauses);
    q.validate();
    return q;
}

Word to_word(const Alphabet& a, const std::vector<std::string>& toks) {
    Word w;
    for (const auto& t : toks) w.push_back(a.index(t));
    return w;
}

}  // namespace

TEST_CASE("qdimacs parsing and the index reversal") {
    // prefix lists outermost first; variable numbered n is outermost in our
    // indexing, so qdimacs var 2 (listed first) becomes index 2
    std::string text =
        "c a comment\n"
        "p cnf 2 2\n"
        "e 2 0\n"
        "a 1 0\n"
        "1 -2 0\n"
        "2 0\n";
    Qbf q = parse_qdimacs(text);
    CHECK(q.quantifiers.size() == 2);
    CHECK(q.quantifiers[0] == Qbf::Quant::Forall);   // innermost = index 1
    CHECK(q.quantifiers[1] == Qbf::Quant::Exists);   // outermost = index 2
    REQUIRE(q.clauses.size() == 2);
    CHECK(q.clauses[0] == std::vector<int>{1, -2});
    CHECK(q.clauses[1] == std::vector<int>{2});

    // printing round-trips through the parser
    CHECK(print_qdimacs(parse_qdimacs(print_qdimacs(q))) == print_qdimacs(q));

    CHECK_THROWS_AS(parse_qdimacs("p cnf 1 1\n1 0\n"), input_error);   // unquantified
    CHECK_THROWS_AS(parse_qdimacs("p cnf 1 0\ne 1 0\n"), input_error);   // no clauses
    CHECK_THROWS_AS(parse_qdimacs("p cnf 1 1\ne 1 0\n0\n"), input_error);  // empty clause
    CHECK_THROWS_AS(parse_qdimacs("p cnf 1 1\ne 1 0\n2 0\n"), input_error);  // range
    CHECK_THROWS_AS(parse_qdimacs("p cnf 1 1\ne 1\n1 0\n"), input_error);  // bare prefix line
}

TEST_CASE("brute-force truth") {
    using Q = Qbf::Quant;
    CHECK(eval_qbf(make_qbf({Q::Exists}, {{1}})));
    CHECK_FALSE(eval_qbf(make_qbf({Q::Forall}, {{1}})));
    CHECK(eval_qbf(make_qbf({Q::Forall}, {{1, -1}})));
    CHECK_FALSE(eval_qbf(make_qbf({Q::Exists}, {{1}, {-1}})));

    // forall x2 exists x1 (x1 <-> x2)
    CHECK(eval_qbf(make_qbf({Q::Exists, Q::Forall}, {{1, -2}, {-1, 2}})));
    // exists x1 forall x2 (x1 <-> x2)
    CHECK_FALSE(eval_qbf(make_qbf({Q::Forall, Q::Exists}, {{2, -1}, {-2, 1}})));
}

TEST_CASE("language alphabet and letter order") {
    using Q = Qbf::Quant;
    QbfInstance inst = build_qbf_languages(make_qbf({Q::Exists, Q::Forall}, {{1}, {2}}));
    CHECK(inst.alphabet.size() == 7);  // 2n literals + n markers + separator
    CHECK(inst.alphabet.token(0) == "x1");
    CHECK(inst.alphabet.token(1) == "nx1");
    CHECK(inst.alphabet.token(2) == "x2");
    CHECK(inst.alphabet.token(3) == "nx2");
    CHECK(inst.alphabet.token(4) == "h1");
    CHECK(inst.alphabet.token(5) == "h2");
    CHECK(inst.alphabet.token(6) == "dollar");
    CHECK(pretty_letter("dollar") == "$");
    CHECK(pretty_letter("nx2") == "~x_2");
    CHECK(pretty_letter("h1") == "#_1");
}

TEST_CASE("level-zero languages by hand") {
    using Q = Qbf::Quant;
    // the quantifier-free parts: L_0 = B_0*, L'_0 = one letter per clause
    Qbf q = make_qbf({Q::Exists}, {{1}, {1, -1}});
    QbfInstance inst = build_qbf_languages(q);

    // L'_1 contains a word whose level-0 core picks x1 from both clauses
    // (display: loop of h1 (x1|nx1) core $ (x1|nx1), closed by h1 $ T-side)
    CHECK_FALSE(is_empty(inst.l));
    CHECK_FALSE(is_empty(inst.lprime));

    // builder growth is recorded per level
    CHECK(inst.l_builder_states.size() == 2);
    CHECK(inst.lprime_builder_states.size() == 2);
}

TEST_CASE("builder state counts grow linearly per added level") {
    using Q = Qbf::Quant;
    std::vector<std::uint32_t> l_states, lp_states;
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<Q> quants(n, Q::Exists);
        QbfInstance inst = build_qbf_languages(make_qbf(std::move(quants), {{1}}));
        l_states.push_back(inst.l_builder_states.back());
        lp_states.push_back(inst.lprime_builder_states.back());
    }
    // second differences vanish: each extra level adds a constant
    CHECK(l_states[2] - l_states[1] == l_states[1] - l_states[0]);
    CHECK(l_states[3] - l_states[2] == l_states[2] - l_states[1]);
    CHECK(lp_states[2] - lp_states[1] == lp_states[1] - lp_states[0]);
    CHECK(lp_states[3] - lp_states[2] == lp_states[2] - lp_states[1]);
}

TEST_CASE("reduction check passes on the four basic one-variable formulas") {
    using Q = Qbf::Quant;
    for (auto quant : {Q::Exists, Q::Forall})
        for (const auto& clauses :
             std::vector<std::vector<std::vector<int>>>{{{1}}, {{-1}}}) {
            Qbf q = make_qbf({quant}, clauses);
            QbfCheckResult res = check_qbf_reduction(q, Caps{});
            CAPTURE(res.note);
            CHECK(res.status == QbfCheckResult::Status::Pass);
        }
}

TEST_CASE("bpolred structure by hand") {
    Alphabet ab({"a", "b"});
    Nfa h = nfa_word(ab, {0});   // {a}
    Nfa hp = nfa_word(ab, {1});  // {b}
    BpolredInstance inst = build_bpolred_instance(h, hp);
    CHECK_FALSE(inst.renamed);
    const Alphabet& ext = inst.l.alphabet;
    CHECK(ext.size() == 4);
    CHECK(ext.find("#") < ext.size());
    CHECK(ext.find("$") < ext.size());

    // L' = # (H' # (A* $ #)*)* : the bare marker and marked b-words
    CHECK(accepts(inst.lprime, to_word(ext, {"#"})));
    CHECK(accepts(inst.lprime, to_word(ext, {"#", "b", "#"})));
    CHECK(accepts(inst.lprime, to_word(ext, {"#", "b", "#", "a", "a", "$", "#"})));
    CHECK_FALSE(accepts(inst.lprime, to_word(ext, {"#", "a", "#"})));
    CHECK_FALSE(accepts(inst.lprime, to_word(ext, {"#", "b"})));

    // L = L'-prefix, then an H-word, then # and padding
    CHECK(accepts(inst.l, to_word(ext, {"#", "a", "#"})));
    CHECK(accepts(inst.l, to_word(ext, {"#", "b", "#", "a", "#"})));
    CHECK(accepts(inst.l, to_word(ext, {"#", "a", "#", "b", "$", "#"})));
    CHECK_FALSE(accepts(inst.l, to_word(ext, {"#", "b", "#"})));
    CHECK_FALSE(accepts(inst.l, to_word(ext, {"#"})));

    // marker collision forces a rename
    Alphabet hashy({"#", "x"});
    BpolredInstance renamed = build_bpolred_instance(nfa_word(hashy, {1}),
                                                     nfa_word(hashy, {0}));
    CHECK(renamed.renamed);
    CHECK(renamed.l.alphabet.find("_#") < renamed.l.alphabet.size());
}

TEST_CASE("level-lift preserves one known verdict") {
    Alphabet ab({"a", "b"});
    Nfa h = nfa_word(ab, {0});
    Nfa hp = nfa_word(ab, {1});
    // {a} and {b} separate at st-3/2; the lifted pair separates at st-2
    Verdict base = st_separates(Level::parse("st-3/2", Basis::triv()), h, hp,
                                Strategy::TransitionMonoid, Caps{});
    CHECK(base.separable);
    BpolredInstance inst = build_bpolred_instance(h, hp);
    Verdict lifted = st_separates(Level::parse("st-2", Basis::triv()), inst.l,
                                  inst.lprime, Strategy::TransitionMonoid, Caps{});
    CHECK(lifted.separable);
}
