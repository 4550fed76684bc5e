#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "polsep/basis.hpp"
#include "polsep/corpus.hpp"
#include "polsep/monoid.hpp"
#include "polsep/nfa.hpp"
#include "polsep/regex.hpp"

using namespace polsep;

namespace {

Monoid zmod(std::uint32_t k) {
    std::vector<std::uint32_t> t(std::size_t(k) * k);
    for (std::uint32_t a = 0; a < k; ++a)
        for (std::uint32_t b = 0; b < k; ++b) t[std::size_t(a) * k + b] = (a + b) % k;
    return Monoid::from_table(k, 0, std::move(t));
}

Monoid u1() {  // {1, 0} with absorption
    return Monoid::from_table(2, 0, {0, 1, 1, 1});
}

}  // namespace

TEST_CASE("transition monoids of small automata") {
    const Alphabet ua({"a"});
    Nfa even;
    even.alphabet = ua;
    even.states = 2;
    even.initial = {0};
    even.final = {0};
    even.transitions = {{0, 0, 1}, {1, 0, 0}};
    even.normalize();

    RecognizedLanguage rl = transition_monoid(even);
    CHECK(rl.morphism.target.size() == 2);
    CHECK(rl.accept == std::vector<std::uint32_t>{rl.morphism.target.unit()});
    CHECK(equivalent(morphism_to_nfa(rl), even));

    const Alphabet ab = two_letter_alphabet();
    Nfa universal = nfa_universal(ab);
    CHECK(transition_monoid(universal).morphism.target.size() == 1);

    // words starting with a: relations {1, a, b} with ab = a, ba = bb = b
    Nfa astart;
    astart.alphabet = ab;
    astart.states = 2;
    astart.initial = {0};
    astart.final = {1};
    astart.transitions = {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}};
    astart.normalize();
    RecognizedLanguage rs = transition_monoid(astart);
    CHECK(rs.morphism.target.size() == 3);
    CHECK(equivalent(morphism_to_nfa(rs), astart));
}

TEST_CASE("transition monoid respects the cap") {
    const Alphabet ab = two_letter_alphabet();
    Caps tight;
    tight.monoid_cap = 2;
    CHECK_THROWS_AS(transition_monoid(nfa_word(ab, {0, 1, 0}), tight),
                    resource_limit_error);
}

TEST_CASE("j-depth counts elements along division chains") {
    CHECK(j_depth(Monoid{}) == 1);           // trivial
    CHECK(j_depth(zmod(2)) == 2);            // groups: whole group on one chain
    CHECK(j_depth(zmod(3)) == 3);
    CHECK(j_depth(zmod(5)) == 5);
    CHECK(j_depth(u1()) == 2);               // unit above zero

    const Alphabet ab = two_letter_alphabet();
    CHECK(j_depth(Basis::at().canonical(ab).target) == 3);  // |A| + 1
    CHECK(j_depth(Basis::at().canonical(Alphabet({"a"})).target) == 2);
    CHECK(j_depth(Basis::triv().canonical(ab).target) == 1);
}

TEST_CASE("idempotents and omega powers") {
    CHECK(idempotents(zmod(4)) == std::vector<std::uint32_t>{0});
    CHECK(idempotents(u1()) == std::vector<std::uint32_t>{0, 1});
    CHECK(omega_power(zmod(4), 1) == 0);  // 1+1+1+1 = 0 mod 4
    CHECK(omega_power(zmod(4), 2) == 0);
    CHECK(omega_power(u1(), 1) == 1);

    const Alphabet ab = two_letter_alphabet();
    const Monoid& at = Basis::at().canonical(ab).target;
    CHECK(idempotents(at).size() == at.size());  // a band
    for (std::uint32_t s = 0; s < at.size(); ++s) CHECK(omega_power(at, s) == s);
}

TEST_CASE("pair-backed monoids multiply componentwise") {
    auto base = std::make_shared<const Monoid>(zmod(3));
    Monoid p = Monoid::pair_of(base);
    CHECK(p.size() == 9);
    CHECK(p.pair_backed());
    for (std::uint32_t u = 0; u < 3; ++u)
        for (std::uint32_t v = 0; v < 3; ++v)
            for (std::uint32_t x = 0; x < 3; ++x)
                for (std::uint32_t y = 0; y < 3; ++y)
                    CHECK(p.mul(p.pair_encode(u, v), p.pair_encode(x, y)) ==
                          p.pair_encode((u + x) % 3, (v + y) % 3));
    CHECK(p.unit() == p.pair_encode(0, 0));
}

TEST_CASE("monoid validation catches broken tables") {
    // (1*1)*2 = 1 but 1*(1*2) = 2: not associative
    CHECK_THROWS_AS(Monoid::from_table(3, 0, {0, 1, 2, 1, 2, 1, 2, 1, 1}), input_error);
    // x*y = x is associative but 0 is not a left unit
    CHECK_THROWS_AS(Monoid::from_table(2, 0, {0, 0, 1, 1}), input_error);
}

TEST_CASE("canonical basis morphisms") {
    const Alphabet ab = two_letter_alphabet();

    Morphism triv = Basis::triv().canonical(ab);
    CHECK(triv.target.size() == 1);
    CHECK(triv.apply({0, 1, 0}) == 0);

    Morphism at = Basis::at().canonical(ab);
    CHECK(at.target.size() == 4);
    // union semantics: content of "ab" = content of "ba" = content of "abab"
    CHECK(at.apply({0, 1}) == at.apply({1, 0}));
    CHECK(at.apply({0, 1}) == at.apply({0, 1, 0, 1}));
    CHECK(at.apply({0}) != at.apply({1}));
    CHECK(at.apply({0}) != at.apply({0, 1}));
    CHECK(at.apply({}) == at.target.unit());

    Morphism res = Basis::at_restricted({"a"}).canonical(ab);
    CHECK(res.target.size() == 2);
    CHECK(res.apply({1, 1}) == res.target.unit());  // b is invisible
    CHECK(res.apply({0}) != res.target.unit());

    Morphism par;
    par.alphabet = ab;
    par.target = zmod(2);
    par.letter_image = {1, 0};
    Morphism canon = Basis::user_basis(par).canonical(ab);
    CHECK(canon.apply({0, 0, 1}) == 0);
    CHECK(canon.apply({0, 1}) == 1);
}

TEST_CASE("basis spec strings parse and print") {
    CHECK(Basis::parse("triv").spec_string() == "triv");
    CHECK(Basis::parse("at").spec_string() == "at");
    CHECK(Basis::parse("at:a,b").spec_string() == "at:a,b");
    CHECK_THROWS_AS(Basis::parse("nope"), input_error);
}

TEST_CASE("compatible products track the basis class") {
    const Alphabet ab = two_letter_alphabet();
    RecognizedLanguage pa;  // even number of a's
    pa.morphism.alphabet = ab;
    pa.morphism.target = zmod(2);
    pa.morphism.letter_image = {1, 0};
    pa.accept = {0};
    RecognizedLanguage pb;  // even number of b's
    pb.morphism.alphabet = ab;
    pb.morphism.target = zmod(2);
    pb.morphism.letter_image = {0, 1};
    pb.accept = {0};

    CompatibleProduct prod = compatible_product(pa, pb, Basis::at());
    prod.cm.validate();
    // reachable triples (parity_a, parity_b, content): 1 + 2 + 2 + 4
    CHECK(prod.cm.morphism.target.size() == 9);
    // six triples have parity_a = 0; six have parity_b = 0
    CHECK(prod.accept0.size() == 6);
    CHECK(prod.accept1.size() == 6);

    CompatibleProduct trivp = compatible_product(pa, pb, Basis::triv());
    trivp.cm.validate();
    CHECK(trivp.cm.morphism.target.size() == 4);
    for (std::uint32_t x = 0; x < 4; ++x) CHECK(trivp.cm.cls(x) == 0);

    Caps tight;
    tight.monoid_cap = 3;
    CHECK_THROWS_AS(compatible_product(pa, pb, Basis::at(), tight),
                    resource_limit_error);
}

TEST_CASE("syntactic quotient collapses redundant recognitions") {
    const Alphabet ab = two_letter_alphabet();
    RecognizedLanguage pa;  // even a's, recognized redundantly through Z/4
    pa.morphism.alphabet = ab;
    pa.morphism.target = zmod(4);
    pa.morphism.letter_image = {1, 0};
    pa.accept = {0, 2};
    RecognizedLanguage pb;  // even b's
    pb.morphism.alphabet = ab;
    pb.morphism.target = zmod(2);
    pb.morphism.letter_image = {0, 1};
    pb.accept = {0};

    CompatibleProduct prod = compatible_product(pa, pb, Basis::triv());
    CHECK(prod.cm.morphism.target.size() == 8);  // Z/4 x Z/2, all reachable

    CompatibleProduct q = syntactic_quotient(prod);
    q.cm.validate();
    CHECK(q.cm.morphism.target.size() == 4);  // parity x parity is syntactic

    // Membership of every word up to length 5 is unchanged by the quotient.
    auto member = [](const CompatibleProduct& p, const Word& w, bool first) {
        const std::uint32_t x = p.cm.morphism.apply(w);
        const auto& acc = first ? p.accept0 : p.accept1;
        return std::find(acc.begin(), acc.end(), x) != acc.end();
    };
    std::vector<Word> words = {Word{}};
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].size() == 5) continue;
        for (std::uint32_t c = 0; c < 2; ++c) {
            Word w = words[i];
            w.push_back(c);
            words.push_back(std::move(w));
        }
    }
    for (const Word& w : words) {
        CHECK(member(prod, w, true) == member(q, w, true));
        CHECK(member(prod, w, false) == member(q, w, false));
    }

    // Idempotent: a second quotient finds nothing left to merge.
    CompatibleProduct q2 = syntactic_quotient(q);
    CHECK(q2.cm.morphism.target.size() == q.cm.morphism.target.size());

    // With a finer basis the quotient still validates and never grows.
    CompatibleProduct prodat = compatible_product(pa, pb, Basis::at());
    CompatibleProduct qat = syntactic_quotient(prodat);
    qat.cm.validate();
    CHECK(qat.cm.morphism.target.size() <= prodat.cm.morphism.target.size());
    for (const Word& w : words) {
        CHECK(member(prodat, w, true) == member(qat, w, true));
        CHECK(qat.cm.cls(qat.cm.morphism.apply(w)) ==
              prodat.cm.cls(prodat.cm.morphism.apply(w)));
    }
}

TEST_CASE("good subsets contain the image and multiply into themselves") {
    const Alphabet ab = two_letter_alphabet();
    Morphism par;
    par.alphabet = ab;
    par.target = zmod(2);
    par.letter_image = {1, 0};

    auto goods = all_good_subsets(par);
    // image is {0,1}: the only good subset of Z/2 is the whole monoid
    CHECK(goods.size() == 1);
    CHECK(goods[0].count() == 2);
    for (const auto& s : goods) CHECK(is_good(s, par));

    Morphism into_u1;
    into_u1.alphabet = ab;
    into_u1.target = u1();
    into_u1.letter_image = {1, 1};
    auto goods2 = all_good_subsets(into_u1);
    CHECK(goods2.size() == 1);  // image {0,1} forces everything

    Morphism unit_only;
    unit_only.alphabet = ab;
    unit_only.target = u1();
    unit_only.letter_image = {0, 0};
    auto goods3 = all_good_subsets(unit_only);
    CHECK(goods3.size() == 2);  // {1} and {1,0}
}

TEST_CASE("morphism image is the generated submonoid") {
    const Alphabet ab = two_letter_alphabet();
    Morphism m;
    m.alphabet = ab;
    m.target = zmod(4);
    m.letter_image = {2, 2};
    CHECK(morphism_image(m) == std::vector<std::uint32_t>{0, 2});
}

TEST_CASE("monoid enumeration finds the classics") {
    CHECK(enumerate_monoids(1).size() == 1);
    // order 2 with fixed unit: Z/2 and U1
    CHECK(enumerate_monoids(2).size() == 2);
    for (const auto& m : enumerate_monoids(3)) CHECK_NOTHROW(m.validate());
    // the enumeration is complete enough to contain Z/3 (some table equals it)
    bool found_group = false;
    for (const auto& m : enumerate_monoids(3)) {
        bool is_group = true;
        for (std::uint32_t x = 0; x < 3 && is_group; ++x) {
            bool has_inverse = false;
            for (std::uint32_t y = 0; y < 3; ++y)
                if (m.mul(x, y) == m.unit()) has_inverse = true;
            is_group = has_inverse;
        }
        found_group = found_group || is_group;
    }
    CHECK(found_group);
}
