#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unordered_set>

#include "polsep/corpus.hpp"
#include "polsep/monoid.hpp"
#include "polsep/trees.hpp"

using namespace polsep;

namespace {

Monoid zmod(std::uint32_t k) {
    std::vector<std::uint32_t> t(std::size_t(k) * k);
    for (std::uint32_t a = 0; a < k; ++a)
        for (std::uint32_t b = 0; b < k; ++b) t[std::size_t(a) * k + b] = (a + b) % k;
    return Monoid::from_table(k, 0, std::move(t));
}

CompatibleMorphism over_triv(const Alphabet& a, Monoid m,
                             std::vector<std::uint32_t> letters) {
    CompatibleMorphism cm;
    cm.morphism.alphabet = a;
    cm.morphism.target = std::move(m);
    cm.morphism.letter_image = std::move(letters);
    cm.class_table.assign(cm.morphism.target.size(), 0);
    cm.pair_derived = false;
    cm.basis = Basis::triv();
    cm.canonical = cm.basis.canonical(a);
    cm.validate();
    return cm;
}

Bitset full_set(std::uint32_t n) {
    Bitset s(n);
    for (std::uint32_t i = 0; i < n; ++i) s.set(i);
    return s;
}

/// Downward closure of the antichain family on nonempty masks, keyed like the
/// naive oracle.
std::unordered_set<std::uint64_t> closure_keys(const LabelFamily& f) {
    std::unordered_set<std::uint64_t> keys;
    for (std::uint32_t s = 0; s < f.domain; ++s)
        for (const auto& set : f.rows[s]) {
            std::uint32_t mask = 0;
            set.for_each([&](std::uint32_t t) { mask |= 1u << t; });
            for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask)
                keys.insert(NaiveFamily::key(s, sub));
        }
    return keys;
}

std::unordered_set<std::uint64_t> nonempty_naive_keys(const NaiveFamily& f) {
    std::unordered_set<std::uint64_t> keys;
    for (auto e : f.entries)
        if (e & 0xFFFFull) keys.insert(e);
    return keys;
}

}  // namespace

TEST_CASE("hand-checked saturation: parity morphism over the trivial basis") {
    const Alphabet ab = two_letter_alphabet();
    // alpha = beta: number of a's mod 2
    CompatibleMorphism cm = over_triv(ab, zmod(2), {1, 0});
    TreeContext ctx;
    ctx.alpha = &cm;
    ctx.beta = &cm;
    ctx.S = full_set(2);

    LabelFamily f = saturate(ctx, 1);
    // derivation: leaves (0,{0}), (1,{1}); the idempotent pair (0,{0}) absorbs
    // all of S, giving (0,{0,1}); products spread it to (1,{0,1})
    CHECK(f.domain == 2);
    CHECK(f.total_sets() == 2);
    for (std::uint32_t s = 0; s < 2; ++s)
        for (std::uint32_t t = 0; t < 2; ++t) CHECK(has_root_label(f, s, t));
    CHECK(f.rows[0].size() == 1);
    CHECK(f.rows[0][0].count() == 2);
}

TEST_CASE("hand-checked saturation: absorbing element stays absorbed") {
    const Alphabet ua({"a"});
    // alpha = beta into {1, 0}: a maps to the absorbing zero
    CompatibleMorphism cm = over_triv(ua, Monoid::from_table(2, 0, {0, 1, 1, 1}), {1});
    TreeContext ctx;
    ctx.alpha = &cm;
    ctx.beta = &cm;
    ctx.S = full_set(2);

    LabelFamily f = saturate(ctx, 1);
    // the unit row absorbs S; the zero row cannot recover the unit
    CHECK(has_root_label(f, 0, 0));
    CHECK(has_root_label(f, 0, 1));
    CHECK(has_root_label(f, 1, 1));
    CHECK_FALSE(has_root_label(f, 1, 0));
}

TEST_CASE("leaf labels enumerate reachable image pairs") {
    const Alphabet ab = two_letter_alphabet();
    CompatibleMorphism cm = over_triv(ab, zmod(4), {1, 1});
    TreeContext ctx;
    ctx.alpha = &cm;
    ctx.beta = &cm;
    ctx.S = full_set(4);
    auto leaves = leaf_labels(ctx);
    CHECK(leaves.size() == 4);
    for (const auto& [s, t] : leaves) CHECK(s == t);
}

TEST_CASE("saturation agrees with the naive oracle on random instances") {
    const Alphabet ab = two_letter_alphabet();
    Rng rng(2024);
    int done = 0;
    for (int attempt = 0; attempt < 4000 && done < 40; ++attempt) {
        Basis basis = random_basis(rng, 4);
        auto ca = random_compatible(rng, ab, basis, 5);
        auto cb = random_compatible(rng, ab, basis, 4);
        if (!ca || !cb) continue;
        auto goods = all_good_subsets(cb->morphism);
        if (goods.empty()) continue;
        TreeContext ctx;
        ctx.alpha = &*ca;
        ctx.beta = &*cb;
        ctx.S = goods[rng.below(goods.size())];
        LabelFamily f = saturate(ctx, j_depth(ca->canonical.target));
        NaiveFamily nv = saturate_naive(ctx);
        CHECK(closure_keys(f) == nonempty_naive_keys(nv));
        ++done;
    }
    CHECK(done == 40);
}

TEST_CASE("extra height never adds labels") {
    const Alphabet ab = two_letter_alphabet();
    Rng rng(77);
    int done = 0;
    for (int attempt = 0; attempt < 4000 && done < 25; ++attempt) {
        Basis basis = random_basis(rng, 4);
        auto ca = random_compatible(rng, ab, basis, 5);
        auto cb = random_compatible(rng, ab, basis, 4);
        if (!ca || !cb) continue;
        auto goods = all_good_subsets(cb->morphism);
        if (goods.empty()) continue;
        TreeContext ctx;
        ctx.alpha = &*ca;
        ctx.beta = &*cb;
        ctx.S = goods[0];
        auto jd = j_depth(ca->canonical.target);
        CHECK(saturate(ctx, jd) == saturate(ctx, jd + 2));
        ++done;
    }
    CHECK(done == 25);
}

TEST_CASE("prunes are identities on saturated families") {
    const Alphabet ab = two_letter_alphabet();
    Rng rng(99);
    int done = 0;
    for (int attempt = 0; attempt < 4000 && done < 25; ++attempt) {
        Basis basis = rng.flip() ? Basis::at() : Basis::at_restricted({"a"});
        auto ca = random_compatible(rng, ab, basis, 5);
        auto cb = random_compatible(rng, ab, basis, 4);
        if (!ca || !cb) continue;
        auto goods = all_good_subsets(cb->morphism);
        if (goods.empty()) continue;
        TreeContext ctx;
        ctx.alpha = &*ca;
        ctx.beta = &*cb;
        ctx.S = goods[goods.size() / 2];
        LabelFamily f = saturate(ctx, j_depth(ca->canonical.target));
        CHECK(alphabet_safe_prune(f, ctx) == f);

        SaturateOptions with_prune;
        with_prune.at_prune = true;
        CHECK(saturate(ctx, j_depth(ca->canonical.target), with_prune) == f);
        ++done;
    }
    CHECK(done == 25);
}

TEST_CASE("family cap trips on stored sets") {
    const Alphabet ab = two_letter_alphabet();
    CompatibleMorphism cm = over_triv(ab, zmod(2), {1, 0});
    TreeContext ctx;
    ctx.alpha = &cm;
    ctx.beta = &cm;
    ctx.S = full_set(2);
    SaturateOptions opts;
    opts.caps.family_cap = 1;
    CHECK_THROWS_AS(saturate(ctx, 1, opts), resource_limit_error);
}

TEST_CASE("context validation rejects mismatched bases") {
    const Alphabet ab = two_letter_alphabet();
    CompatibleMorphism a = over_triv(ab, zmod(2), {1, 0});
    CompatibleMorphism b = over_triv(Alphabet({"a"}), Monoid{}, {0});
    TreeContext ctx;
    ctx.alpha = &a;
    ctx.beta = &b;
    ctx.S = full_set(1);
    CHECK_THROWS_AS(ctx.validate(), std::exception);
}
