#include "polsep/basis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "polsep/io.hpp"

namespace polsep {

Basis Basis::user_basis(Morphism m) {
    m.validate();
    auto image = morphism_image(m);
    require(image.size() == m.target.size(), "user basis morphism must be surjective");
    Basis b;
    b.kind = BasisKind::User;
    b.user = std::make_shared<const Morphism>(std::move(m));
    return b;
}

Basis Basis::parse(const std::string& text) {
    if (text == "triv") return triv();
    if (text == "at") return at();
    if (text.rfind("at:", 0) == 0) {
        std::vector<std::string> letters;
        std::stringstream ss(text.substr(3));
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) letters.push_back(tok);
        require(!letters.empty(), "restricted alphabet basis needs at least one letter");
        std::sort(letters.begin(), letters.end());
        letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
        return at_restricted(std::move(letters));
    }
    if (text.rfind("user:", 0) == 0) {
        std::string path = text.substr(5);
        require(!path.empty(), "user basis needs a file path");
        Json j;
        try {
            j = Json::parse(read_file(path));
        } catch (const Json::exception& e) {
            throw input_error("user basis file '" + path + "': " + e.what());
        }
        return user_basis(morphism_from_json(j).morphism);
    }
    throw input_error("unknown basis '" + text +
                      "' (expected triv, at, at:<letters>, user:<path>)");
}

std::string Basis::spec_string() const {
    switch (kind) {
        case BasisKind::Triv:
            return "triv";
        case BasisKind::At:
            return "at";
        case BasisKind::AtRestricted: {
            std::string s = "at:";
            for (std::size_t i = 0; i < restricted.size(); ++i) {
                if (i) s += ',';
                s += restricted[i];
            }
            return s;
        }
        case BasisKind::User:
            return "user";
    }
    return "?";
}

Morphism Basis::canonical(const Alphabet& a) const {
    Morphism m;
    m.alphabet = a;
    switch (kind) {
        case BasisKind::Triv: {
            m.target = Monoid::from_table(1, 0, {0}, false);
            m.letter_image.assign(a.size(), 0);
            break;
        }
        case BasisKind::At:
        case BasisKind::AtRestricted: {
            std::vector<std::uint32_t> tracked;
            if (kind == BasisKind::At) {
                for (std::uint32_t l = 0; l < a.size(); ++l) tracked.push_back(l);
            } else {
                for (const auto& tok : restricted) {
                    require(a.contains(tok),
                            "restricted basis letter '" + tok + "' not in the alphabet");
                    tracked.push_back(a.index(tok));
                }
                std::sort(tracked.begin(), tracked.end());
                tracked.erase(std::unique(tracked.begin(), tracked.end()), tracked.end());
            }
            require(tracked.size() <= 20, "alphabet too large for a powerset basis");
            const std::uint32_t n = 1u << tracked.size();
            std::vector<std::uint32_t> table(std::size_t(n) * n);
            for (std::uint32_t x = 0; x < n; ++x)
                for (std::uint32_t y = 0; y < n; ++y) table[std::size_t(x) * n + y] = x | y;
            m.target = Monoid::from_table(n, 0, std::move(table), false);
            m.letter_image.assign(a.size(), 0);
            for (std::size_t i = 0; i < tracked.size(); ++i)
                m.letter_image[tracked[i]] = 1u << i;
            break;
        }
        case BasisKind::User: {
            check(user != nullptr, "user basis carries no morphism");
            require(user->alphabet.tokens() == a.tokens(),
                    "user basis alphabet does not match the input alphabet");
            m = *user;
            break;
        }
    }
    m.validate();
    return m;
}

std::array<std::string, 2> choose_tag_letters(const Alphabet& a) {
    auto free_pair = [&](const std::string& x, const std::string& y) {
        return !a.contains(x) && !a.contains(y);
    };
    if (free_pair("0", "1")) return {"0", "1"};
    std::string t0 = "_t0", t1 = "_t1";
    while (!free_pair(t0, t1)) {
        t0 = "_" + t0;
        t1 = "_" + t1;
    }
    return {t0, t1};
}

ExtendedBasis extend_basis_E(const Basis& b, const Alphabet& a) {
    require(b.kind != BasisKind::User, "only the built-in bases extend to tag letters");
    ExtendedBasis eb;
    auto tags = choose_tag_letters(a);
    std::vector<std::string> tokens = a.tokens();
    tokens.push_back(tags[0]);
    tokens.push_back(tags[1]);
    eb.extended_alphabet = Alphabet(tokens);
    eb.tag_letters = tags;
    eb.tag_indices = {a.size(), a.size() + 1};
    switch (b.kind) {
        case BasisKind::Triv:
            eb.basis = Basis::triv();
            break;
        case BasisKind::At:
            // keep tracking exactly the original letters; tags stay invisible
            eb.basis = Basis::at_restricted(a.tokens());
            break;
        case BasisKind::AtRestricted:
            eb.basis = b;
            break;
        case BasisKind::User:
            break;  // unreachable
    }
    return eb;
}

void CompatibleMorphism::validate() const {
    morphism.validate();
    canonical.validate();
    check(morphism.alphabet.tokens() == canonical.alphabet.tokens(),
          "compatible morphism alphabet mismatch");
    const auto& mb = canonical.target;
    if (pair_derived) {
        check(morphism.target.pair_backed(), "pair-derived class table needs a pair monoid");
        const auto& base = morphism.target.pair_base();
        check(class_table.size() == base.size(), "class table size mismatch (pair-derived)");
        for (auto c : class_table) check(c < mb.size(), "class value out of range");
        // the class of a pair is the class of its first component, so the
        // morphism law reduces to the base monoid
        for (std::uint32_t x = 0; x < base.size(); ++x)
            for (std::uint32_t y = 0; y < base.size(); ++y)
                check(class_table[base.mul(x, y)] == mb.mul(class_table[x], class_table[y]),
                      "class map is not a monoid morphism");
    } else {
        check(class_table.size() == morphism.target.size(), "class table size mismatch");
        for (auto c : class_table) check(c < mb.size(), "class value out of range");
        const auto& m = morphism.target;
        for (std::uint32_t x = 0; x < m.size(); ++x)
            for (std::uint32_t y = 0; y < m.size(); ++y)
                check(class_table[m.mul(x, y)] == mb.mul(class_table[x], class_table[y]),
                      "class map is not a monoid morphism");
    }
    check(cls(morphism.target.unit()) == mb.unit(), "class map does not send unit to unit");
    for (std::uint32_t l = 0; l < morphism.alphabet.size(); ++l)
        check(cls(morphism.letter_image[l]) == canonical.letter_image[l],
              "class map disagrees with the canonical morphism on a letter");
}

bool is_good(const Bitset& S, const Morphism& beta) {
    check(S.size_bits() == beta.target.size(), "good-set universe mismatch");
    for (auto x : morphism_image(beta))
        if (!S.test(x)) return false;
    bool closed = true;
    S.for_each([&](std::uint32_t x) {
        if (!closed) return;
        S.for_each([&](std::uint32_t y) {
            if (closed && !S.test(beta.target.mul(x, y))) closed = false;
        });
    });
    return closed;
}

CompatibleProduct compatible_product(const RecognizedLanguage& l0, const RecognizedLanguage& l1,
                                     const Basis& basis, const Caps& caps) {
    require(l0.morphism.alphabet.tokens() == l1.morphism.alphabet.tokens(),
            "input languages must share an alphabet");
    const Alphabet& alphabet = l0.morphism.alphabet;
    Morphism canon = basis.canonical(alphabet);

    const auto& m0 = l0.morphism.target;
    const auto& m1 = l1.morphism.target;
    const auto& mb = canon.target;

    using Key = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;
    std::map<Key, std::uint32_t> index;
    std::vector<Key> elems;
    std::vector<std::uint32_t> work;
    auto intern = [&](const Key& k) {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        if (elems.size() >= caps.monoid_cap)
            throw resource_limit_error("compatible product exceeded the monoid element cap");
        auto id = static_cast<std::uint32_t>(elems.size());
        index.emplace(k, id);
        elems.push_back(k);
        work.push_back(id);
        return id;
    };
    intern({m0.unit(), m1.unit(), mb.unit()});
    std::vector<Key> letter_keys(alphabet.size());
    for (std::uint32_t l = 0; l < alphabet.size(); ++l)
        letter_keys[l] = {l0.morphism.letter_image[l], l1.morphism.letter_image[l],
                          canon.letter_image[l]};
    for (std::size_t next = 0; next < work.size(); ++next) {
        auto [a0, a1, ab] = elems[work[next]];
        for (std::uint32_t l = 0; l < alphabet.size(); ++l) {
            auto [g0, g1, gb] = letter_keys[l];
            intern({m0.mul(a0, g0), m1.mul(a1, g1), mb.mul(ab, gb)});
        }
        caps.check_deadline("compatible_product");
    }

    const auto n = static_cast<std::uint32_t>(elems.size());
    if (std::size_t(n) * n > (std::size_t(1) << 28))
        throw resource_limit_error("compatible product table would be too large (" +
                                   std::to_string(n) + " elements)");
    std::vector<std::uint32_t> table(std::size_t(n) * n);
    for (std::uint32_t x = 0; x < n; ++x) {
        auto [x0, x1, xb] = elems[x];
        for (std::uint32_t y = 0; y < n; ++y) {
            auto [y0, y1, yb] = elems[y];
            Key z{m0.mul(x0, y0), m1.mul(x1, y1), mb.mul(xb, yb)};
            auto it = index.find(z);
            check(it != index.end(), "compatible product not closed under multiplication");
            table[std::size_t(x) * n + y] = it->second;
        }
        caps.check_deadline("compatible_product table");
    }

    CompatibleProduct out;
    out.cm.morphism.alphabet = alphabet;
    out.cm.morphism.target = Monoid::from_table(n, 0, std::move(table), false);
    out.cm.morphism.letter_image.resize(alphabet.size());
    for (std::uint32_t l = 0; l < alphabet.size(); ++l)
        out.cm.morphism.letter_image[l] = index.at(letter_keys[l]);
    out.cm.class_table.resize(n);
    for (std::uint32_t x = 0; x < n; ++x) out.cm.class_table[x] = std::get<2>(elems[x]);
    out.cm.pair_derived = false;
    out.cm.canonical = std::move(canon);
    out.cm.basis = basis;
    out.cm.validate();

    Bitset in0(m0.size()), in1(m1.size());
    for (auto s : l0.accept) in0.set(s);
    for (auto s : l1.accept) in1.set(s);
    for (std::uint32_t x = 0; x < n; ++x) {
        if (in0.test(std::get<0>(elems[x]))) out.accept0.push_back(x);
        if (in1.test(std::get<1>(elems[x]))) out.accept1.push_back(x);
    }
    return out;
}

CompatibleProduct syntactic_quotient(const CompatibleProduct& p) {
    const Monoid& m = p.cm.morphism.target;
    const auto n = m.size();

    Bitset in0(n), in1(n);
    for (auto s : p.accept0) in0.set(s);
    for (auto s : p.accept1) in1.set(s);

    // Distinct letter images act as the generators; the target is generated
    // by them, so a partition stable under one-generator left/right steps is
    // stable under multiplication by every element.
    std::vector<std::uint32_t> gens = p.cm.morphism.letter_image;
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

    // Seed partition: accept memberships and the basis class must stay
    // constant on each block, then refine to the coarsest congruence.
    std::vector<std::uint32_t> part(n);
    {
        std::map<std::tuple<bool, bool, std::uint32_t>, std::uint32_t> seed;
        for (std::uint32_t x = 0; x < n; ++x) {
            auto [it, fresh] = seed.emplace(
                std::make_tuple(in0.test(x), in1.test(x), p.cm.cls(x)),
                static_cast<std::uint32_t>(seed.size()));
            (void)fresh;
            part[x] = it->second;
        }
    }
    for (;;) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> sig_to_id;
        std::vector<std::uint32_t> refined(n);
        for (std::uint32_t x = 0; x < n; ++x) {
            std::vector<std::uint32_t> sig;
            sig.reserve(2 * gens.size() + 1);
            sig.push_back(part[x]);
            for (auto g : gens) {
                sig.push_back(part[m.mul(g, x)]);
                sig.push_back(part[m.mul(x, g)]);
            }
            auto [it, fresh] =
                sig_to_id.emplace(std::move(sig), static_cast<std::uint32_t>(sig_to_id.size()));
            (void)fresh;
            refined[x] = it->second;
        }
        bool changed = refined != part;
        part = std::move(refined);
        if (!changed) break;
    }

    std::uint32_t classes = 0;
    std::vector<std::uint32_t> renumber(n, n);
    std::vector<std::uint32_t> rep;
    for (std::uint32_t x = 0; x < n; ++x)
        if (renumber[part[x]] == n) {
            renumber[part[x]] = classes++;
            rep.push_back(x);
        }
    auto q = [&](std::uint32_t x) { return renumber[part[x]]; };

    std::vector<std::uint32_t> table(std::size_t(classes) * classes);
    for (std::uint32_t a = 0; a < classes; ++a)
        for (std::uint32_t b = 0; b < classes; ++b)
            table[std::size_t(a) * classes + b] = q(m.mul(rep[a], rep[b]));

    CompatibleProduct out;
    out.cm.morphism.alphabet = p.cm.morphism.alphabet;
    out.cm.morphism.target = Monoid::from_table(classes, q(m.unit()), std::move(table), false);
    out.cm.morphism.letter_image.resize(p.cm.morphism.letter_image.size());
    for (std::size_t l = 0; l < out.cm.morphism.letter_image.size(); ++l)
        out.cm.morphism.letter_image[l] = q(p.cm.morphism.letter_image[l]);
    out.cm.class_table.resize(classes);
    for (std::uint32_t c = 0; c < classes; ++c) out.cm.class_table[c] = p.cm.cls(rep[c]);
    out.cm.pair_derived = false;
    out.cm.canonical = p.cm.canonical;
    out.cm.basis = p.cm.basis;
    out.cm.validate();

    std::set<std::uint32_t> a0, a1;
    for (auto s : p.accept0) a0.insert(q(s));
    for (auto s : p.accept1) a1.insert(q(s));
    out.accept0.assign(a0.begin(), a0.end());
    out.accept1.assign(a1.begin(), a1.end());
    return out;
}

}  // namespace polsep
