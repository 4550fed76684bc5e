#include "polsep/separation.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "polsep/reduction.hpp"

namespace polsep {

Level Level::parse(const std::string& text, const Basis& basis_flag) {
    Level l;
    if (text == "st-1/2") {
        l.kind = Kind::StHalf;
    } else if (text == "st-1") {
        l.kind = Kind::StOne;
    } else if (text == "st-3/2") {
        l.kind = Kind::StThreeHalf;
    } else if (text == "st-2") {
        l.kind = Kind::StTwo;
    } else if (text == "pol") {
        l.kind = Kind::Pol;
        l.basis = basis_flag;
    } else if (text == "bpol") {
        l.kind = Kind::Bpol;
        l.basis = basis_flag;
    } else {
        throw input_error("unknown level '" + text +
                          "' (expected st-1/2, st-1, st-3/2, st-2, pol, bpol)");
    }
    return l;
}

std::string Level::name() const {
    switch (kind) {
        case Kind::StHalf:
            return "st-1/2";
        case Kind::StOne:
            return "st-1";
        case Kind::StThreeHalf:
            return "st-3/2";
        case Kind::StTwo:
            return "st-2";
        case Kind::Pol:
            return "pol(" + basis.spec_string() + ")";
        case Kind::Bpol:
            return "bpol(" + basis.spec_string() + ")";
    }
    return "?";
}

bool Level::boolean_closure() const {
    return kind == Kind::StOne || kind == Kind::StTwo || kind == Kind::Bpol;
}

Basis Level::effective_basis() const {
    switch (kind) {
        case Kind::StHalf:
        case Kind::StOne:
            return Basis::triv();
        case Kind::StThreeHalf:
        case Kind::StTwo:
            return Basis::at();
        case Kind::Pol:
        case Kind::Bpol:
            return basis;
    }
    return Basis::triv();
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

Verdict pol_separates(const CompatibleMorphism& cm, const std::vector<std::uint32_t>& F0,
                      const std::vector<std::uint32_t>& F1, const Caps& caps) {
    auto t0 = std::chrono::steady_clock::now();
    const auto& m = cm.morphism.target;
    Bitset s_set(m.size());
    for (auto x : morphism_image(cm.morphism)) s_set.set(x);

    TreeContext ctx;
    ctx.alpha = &cm;
    ctx.beta = &cm;
    ctx.S = std::move(s_set);

    const std::uint32_t height = j_depth(cm.canonical.target);
    SaturateOptions opts;
    opts.caps = caps;
    LabelFamily fam = saturate(ctx, height, opts);

    Verdict v;
    for (auto s0 : F0)
        for (auto s1 : F1)
            if (has_root_label(fam, s0, s1)) v.witnesses.emplace_back(s0, s1);
    v.separable = v.witnesses.empty();
    v.stats.m_size = m.size();
    v.stats.n_size = m.size();
    v.stats.basis_size = cm.basis_size();
    v.stats.height = height;
    v.stats.iterations = 1;
    v.stats.family_sets = fam.total_sets();
    v.stats.wall_ms = elapsed_ms(t0);
    return v;
}

Verdict bpol_separates(const CompatibleMorphism& cm, const std::vector<std::uint32_t>& F0,
                       const std::vector<std::uint32_t>& F1, const Caps& caps) {
    auto t0 = std::chrono::steady_clock::now();
    const auto& m = cm.morphism.target;

    // reindex the image submonoid: the saturation codomain is pairs over it
    auto image = morphism_image(cm.morphism);
    const auto k = static_cast<std::uint32_t>(image.size());
    std::vector<std::uint32_t> pos(m.size(), UINT32_MAX);
    for (std::uint32_t i = 0; i < k; ++i) pos[image[i]] = i;
    std::vector<std::uint32_t> table(std::size_t(k) * k);
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j < k; ++j) {
            auto z = pos[m.mul(image[i], image[j])];
            check(z != UINT32_MAX, "image submonoid is not closed");
            table[std::size_t(i) * k + j] = z;
        }

    CompatibleMorphism ak;
    ak.morphism.alphabet = cm.morphism.alphabet;
    ak.morphism.target = Monoid::from_table(k, pos[m.unit()], std::move(table), false);
    ak.morphism.letter_image.resize(cm.morphism.letter_image.size());
    for (std::size_t l = 0; l < ak.morphism.letter_image.size(); ++l)
        ak.morphism.letter_image[l] = pos[cm.morphism.letter_image[l]];
    ak.class_table.resize(k);
    for (std::uint32_t i = 0; i < k; ++i) ak.class_table[i] = cm.cls(image[i]);
    ak.pair_derived = false;
    ak.canonical = cm.canonical;
    ak.basis = cm.basis;
    ak.validate();

    CompatibleMorphism bk;
    bk.morphism.alphabet = cm.morphism.alphabet;
    bk.morphism.target = Monoid::pair_of(std::make_shared<const Monoid>(ak.morphism.target));
    bk.morphism.letter_image.resize(ak.morphism.letter_image.size());
    for (std::size_t l = 0; l < bk.morphism.letter_image.size(); ++l) {
        auto s = ak.morphism.letter_image[l];
        bk.morphism.letter_image[l] = s * k + s;
    }
    bk.class_table = ak.class_table;
    bk.pair_derived = true;
    bk.canonical = cm.canonical;
    bk.basis = cm.basis;
    bk.validate();

    const std::uint32_t height = j_depth(cm.canonical.target);
    SaturateOptions opts;
    opts.caps = caps;

    // Pairs with distinct canonical classes are separated by the basis
    // itself, so the greatest fixpoint lives inside the same-class pairs;
    // starting there is sound (the refinement operator is monotone and every
    // iterate still contains the fixpoint) and skips a degenerate first
    // sweep over the full square.
    Bitset s_set(k * k);
    for (std::uint32_t s = 0; s < k; ++s)
        for (std::uint32_t t = 0; t < k; ++t)
            if (ak.class_table[s] == ak.class_table[t]) s_set.set(s * k + t);

    Verdict v;
    v.stats.m_size = m.size();
    v.stats.n_size = std::uint64_t(k) * k;
    v.stats.basis_size = cm.basis_size();
    v.stats.height = height;

    std::uint64_t iter = 0;
    while (true) {
        ++iter;
        check(iter <= std::uint64_t(k) * k + 1, "pair refinement ran too long");
        TreeContext ctx;
        ctx.alpha = &ak;
        ctx.beta = &bk;
        ctx.S = s_set;  // copy; the context keeps the iterate under scrutiny
        LabelFamily fam = saturate(ctx, height, opts);
        v.stats.family_sets = fam.total_sets();

        Bitset next(k * k);
        s_set.for_each([&](std::uint32_t p) {
            std::uint32_t s = p / k, t = p % k;
            if (has_root_label(fam, s, t * k + s)) next.set(p);
        });
        check(next.subset_of(s_set), "pair refinement grew");
        if (next == s_set) {
            v.stats.red_fixpoint = true;
            break;
        }
        s_set = std::move(next);
        caps.check_deadline("bpol fixpoint");
    }
    // goodness of every iterate was checked by the saturation context; a
    // violation throws before reaching this point
    v.stats.red_all_good = true;
    v.stats.red_chain_strict = true;
    v.stats.iterations = iter;
    v.stats.red_surviving = s_set.count();

    for (auto s0 : F0) {
        if (pos[s0] == UINT32_MAX) continue;  // recognizes the empty language
        for (auto s1 : F1) {
            if (pos[s1] == UINT32_MAX) continue;
            if (s_set.test(pos[s0] * k + pos[s1])) v.witnesses.emplace_back(s0, s1);
        }
    }
    v.separable = v.witnesses.empty();
    v.stats.wall_ms = elapsed_ms(t0);
    return v;
}

Strategy parse_strategy(const std::string& s) {
    if (s == "tm") return Strategy::TransitionMonoid;
    if (s == "tag") return Strategy::TaggingReduction;
    throw input_error("unknown strategy '" + s + "' (expected tm or tag)");
}

std::string strategy_name(Strategy s) {
    return s == Strategy::TransitionMonoid ? "tm" : "tag";
}

namespace {

RecognizedLanguage to_language(const SepInput& in, const Caps& caps) {
    if (std::holds_alternative<Nfa>(in)) return transition_monoid(std::get<Nfa>(in), caps);
    auto rl = std::get<RecognizedLanguage>(in);
    rl.validate();
    return rl;
}

Nfa to_nfa(const SepInput& in) {
    if (std::holds_alternative<Nfa>(in)) return std::get<Nfa>(in);
    return morphism_to_nfa(std::get<RecognizedLanguage>(in));
}

const Alphabet& input_alphabet(const SepInput& in) {
    if (std::holds_alternative<Nfa>(in)) return std::get<Nfa>(in).alphabet;
    return std::get<RecognizedLanguage>(in).morphism.alphabet;
}

}  // namespace

Verdict st_separates(const Level& level, const SepInput& in1, const SepInput& in2,
                     Strategy strategy, const Caps& caps) {
    require(input_alphabet(in1).tokens() == input_alphabet(in2).tokens(),
            "separation inputs must share an alphabet");
    Verdict v;
    if (strategy == Strategy::TransitionMonoid) {
        RecognizedLanguage l0 = to_language(in1, caps);
        RecognizedLanguage l1 = to_language(in2, caps);
        auto cp = syntactic_quotient(compatible_product(l0, l1, level.effective_basis(), caps));
        v = level.boolean_closure() ? bpol_separates(cp.cm, cp.accept0, cp.accept1, caps)
                                    : pol_separates(cp.cm, cp.accept0, cp.accept1, caps);
    } else {
        auto art = reduce_instance(to_nfa(in1), to_nfa(in2), level, caps);
        auto cp = syntactic_quotient(art.product);
        v = level.boolean_closure() ? bpol_separates(cp.cm, cp.accept0, cp.accept1, caps)
                                    : pol_separates(cp.cm, cp.accept0, cp.accept1, caps);
    }
    v.level = level.name();
    v.strategy = strategy_name(strategy);
    return v;
}

namespace {

Nfa block_to_nfa(const std::vector<std::uint32_t>& classes, const Morphism& canon) {
    RecognizedLanguage rl;
    rl.morphism = canon;
    rl.accept = classes;
    std::sort(rl.accept.begin(), rl.accept.end());
    rl.accept.erase(std::unique(rl.accept.begin(), rl.accept.end()), rl.accept.end());
    for (auto c : rl.accept)
        require(c < canon.target.size(), "certificate block class out of range");
    return morphism_to_nfa(rl);
}

Nfa leaf_to_nfa(const PolCertificate& cert, const Morphism& canon, const Alphabet& a) {
    if (cert.products.empty()) return nfa_empty(a);
    EpsBuilder b(a);
    std::optional<EpsBuilder::Frag> all;
    for (const auto& p : cert.products) {
        require(p.blocks.size() == p.letters.size() + 1,
                "certificate product needs one more block than letters");
        std::optional<EpsBuilder::Frag> prod;
        for (std::size_t i = 0; i < p.blocks.size(); ++i) {
            auto f = b.embed(block_to_nfa(p.blocks[i], canon));
            prod = prod ? b.concat(*prod, f) : f;
            if (i < p.letters.size()) {
                require(a.contains(p.letters[i]),
                        "certificate letter '" + p.letters[i] + "' not in the alphabet");
                prod = b.concat(*prod, b.letter(a.index(p.letters[i])));
            }
        }
        all = all ? b.alt(*all, *prod) : *prod;
    }
    return b.to_nfa(*all);
}

}  // namespace

Nfa certificate_to_nfa(const Certificate& c, const Alphabet& a, const Caps& caps) {
    Morphism canon = c.basis.canonical(a);
    if (!c.boolean)
        require(c.root.op == CertNode::Op::Leaf,
                "a polynomial certificate must be a single union of products");
    std::function<Nfa(const CertNode&)> go = [&](const CertNode& node) -> Nfa {
        switch (node.op) {
            case CertNode::Op::Leaf:
                return leaf_to_nfa(node.leaf, canon, a);
            case CertNode::Op::And:
            case CertNode::Op::Or: {
                require(!node.children.empty(), "certificate junction without children");
                Nfa out = go(*node.children[0]);
                for (std::size_t i = 1; i < node.children.size(); ++i) {
                    Nfa rhs = go(*node.children[i]);
                    out = node.op == CertNode::Op::And ? intersect(out, rhs)
                                                       : nfa_union(out, rhs);
                }
                return out;
            }
            case CertNode::Op::Not:
                require(node.children.size() == 1,
                        "certificate negation needs exactly one child");
                return complement(go(*node.children[0]), caps);
        }
        throw invariant_error("unhandled certificate node");
    };
    return go(c.root);
}

bool verify_certificate(const Certificate& c, const Nfa& n1, const Nfa& n2,
                        const Caps& caps) {
    require(n1.alphabet.tokens() == n2.alphabet.tokens(),
            "certificate inputs must share an alphabet");
    Nfa k = certificate_to_nfa(c, n1.alphabet, caps);
    return includes(k, n1, caps) && is_empty(intersect(k, n2));
}

}  // namespace polsep
