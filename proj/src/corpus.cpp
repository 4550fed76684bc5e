#include "polsep/corpus.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace polsep {

Alphabet two_letter_alphabet() { return Alphabet({"a", "b"}); }

Nfa random_nfa(Rng& rng, std::uint32_t max_states, const Alphabet& a,
               std::uint32_t max_transitions) {
    require(max_states >= 1, "need at least one state");
    Nfa n;
    n.alphabet = a;
    n.states = 1 + rng.below(max_states);
    for (std::uint32_t i = 0; i < max_transitions; ++i) {
        Transition t;
        t.from = rng.below(n.states);
        t.letter = rng.below(a.size());
        t.to = rng.below(n.states);
        n.transitions.push_back(t);
    }
    for (std::uint32_t q = 0; q < n.states; ++q) {
        if (rng.below(3) == 0) n.initial.push_back(q);
        if (rng.below(3) == 0) n.final.push_back(q);
    }
    if (n.initial.empty() && rng.flip()) n.initial.push_back(rng.below(n.states));
    if (n.final.empty() && rng.flip()) n.final.push_back(rng.below(n.states));
    n.normalize();
    return n;
}

RegexPtr random_regex(Rng& rng, const Alphabet& a, std::uint32_t max_depth) {
    require(a.size() >= 1, "regex needs a nonempty alphabet");
    auto node = std::make_shared<RegexNode>();
    const std::uint32_t kind = max_depth == 0 ? rng.below(3) : rng.below(6);
    switch (kind) {
        case 0:
            node->kind = RegexNode::Kind::Epsilon;
            break;
        case 1:
            node->kind = RegexNode::Kind::Letter;
            node->letters.push_back(rng.below(a.size()));
            break;
        case 2: {
            node->kind = RegexNode::Kind::LetterSet;
            for (std::uint32_t l = 0; l < a.size(); ++l)
                if (rng.flip()) node->letters.push_back(l);
            if (node->letters.empty()) node->letters.push_back(rng.below(a.size()));
            break;
        }
        case 3:
            node->kind = RegexNode::Kind::Star;
            node->children.push_back(random_regex(rng, a, max_depth - 1));
            break;
        case 4:
            node->kind = RegexNode::Kind::Concat;
            node->children.push_back(random_regex(rng, a, max_depth - 1));
            node->children.push_back(random_regex(rng, a, max_depth - 1));
            break;
        default:
            node->kind = RegexNode::Kind::Union;
            node->children.push_back(random_regex(rng, a, max_depth - 1));
            node->children.push_back(random_regex(rng, a, max_depth - 1));
            break;
    }
    return node;
}

namespace {

/// Closure of 1-2 self-maps on `points` under composition, as a monoid table.
Monoid transformation_monoid(Rng& rng, std::uint32_t points, std::uint32_t gens,
                             std::uint32_t max_size, bool& ok) {
    std::vector<std::vector<std::uint8_t>> maps;
    std::vector<std::uint8_t> identity(points);
    for (std::uint32_t i = 0; i < points; ++i) identity[i] = static_cast<std::uint8_t>(i);
    maps.push_back(identity);
    std::map<std::vector<std::uint8_t>, std::uint32_t> index;
    index[identity] = 0;

    std::vector<std::vector<std::uint8_t>> generators;
    for (std::uint32_t g = 0; g < gens; ++g) {
        std::vector<std::uint8_t> f(points);
        for (std::uint32_t i = 0; i < points; ++i)
            f[i] = static_cast<std::uint8_t>(rng.below(points));
        generators.push_back(std::move(f));
    }
    auto compose = [&](const std::vector<std::uint8_t>& f,
                       const std::vector<std::uint8_t>& g) {
        std::vector<std::uint8_t> h(points);
        for (std::uint32_t i = 0; i < points; ++i) h[i] = g[f[i]];
        return h;
    };

    for (std::size_t next = 0; next < maps.size(); ++next) {
        for (const auto& g : generators) {
            auto h = compose(maps[next], g);
            if (index.emplace(h, static_cast<std::uint32_t>(maps.size())).second) {
                maps.push_back(std::move(h));
                if (maps.size() > max_size) {
                    ok = false;
                    return Monoid::from_table(1, 0, {0}, false);
                }
            }
        }
    }

    const auto size = static_cast<std::uint32_t>(maps.size());
    std::vector<std::uint32_t> table(std::size_t(size) * size);
    for (std::uint32_t x = 0; x < size; ++x)
        for (std::uint32_t y = 0; y < size; ++y)
            table[std::size_t(x) * size + y] = index.at(compose(maps[x], maps[y]));
    ok = true;
    return Monoid::from_table(size, 0, std::move(table), false);
}

}  // namespace

Monoid random_monoid(Rng& rng, std::uint32_t max_size) {
    require(max_size >= 1, "max_size must be positive");
    for (int tries = 0; tries < 64; ++tries) {
        std::uint32_t points = 1 + rng.below(3);
        std::uint32_t gens = 1 + rng.below(2);
        bool ok = false;
        Monoid m = transformation_monoid(rng, points, gens, max_size, ok);
        if (ok) return m;
    }
    return Monoid::from_table(1, 0, {0}, false);
}

Basis random_basis(Rng& rng, std::uint32_t max_size) {
    const Alphabet ab = two_letter_alphabet();
    for (int tries = 0; tries < 64; ++tries) {
        Basis b;
        switch (rng.below(4)) {
            case 0:
                b = Basis::triv();
                break;
            case 1:
                b = Basis::at();
                break;
            case 2:
                b = Basis::at_restricted({"a"});
                break;
            default: {
                std::uint32_t k = 2 + rng.below(3);
                std::vector<std::uint32_t> table(std::size_t(k) * k);
                for (std::uint32_t i = 0; i < k; ++i)
                    for (std::uint32_t j = 0; j < k; ++j)
                        table[std::size_t(i) * k + j] = (i + j) % k;
                Morphism m;
                m.alphabet = ab;
                m.target = Monoid::from_table(k, 0, std::move(table), false);
                m.letter_image = {1 % k, static_cast<std::uint32_t>(rng.below(k))};
                b = Basis::user_basis(std::move(m));
                break;
            }
        }
        if (b.canonical(ab).target.size() <= max_size) return b;
    }
    return Basis::triv();
}

std::optional<CompatibleMorphism> random_compatible(Rng& rng, const Alphabet& a,
                                                    const Basis& basis,
                                                    std::uint32_t max_size) {
    Morphism canon = basis.canonical(a);
    for (int tries = 0; tries < 64; ++tries) {
        Monoid m0 = random_monoid(rng, max_size);
        std::vector<std::uint32_t> img0(a.size());
        for (std::uint32_t l = 0; l < a.size(); ++l) img0[l] = rng.below(m0.size());

        // reachable part of m0 x canon generated by the letter pairs
        using Key = std::pair<std::uint32_t, std::uint32_t>;
        std::map<Key, std::uint32_t> index;
        std::vector<Key> elems;
        auto intern = [&](Key k) -> std::uint32_t {
            auto [it, fresh] = index.emplace(k, static_cast<std::uint32_t>(elems.size()));
            if (fresh) elems.push_back(k);
            return it->second;
        };
        intern({m0.unit(), canon.target.unit()});
        std::vector<std::uint32_t> letters(a.size());
        for (std::uint32_t l = 0; l < a.size(); ++l)
            letters[l] = intern({img0[l], canon.letter_image[l]});
        bool too_big = false;
        for (std::size_t next = 0; next < elems.size() && !too_big; ++next) {
            for (std::uint32_t l = 0; l < a.size(); ++l) {
                Key k{m0.mul(elems[next].first, img0[l]),
                      canon.target.mul(elems[next].second, canon.letter_image[l])};
                intern(k);
                if (elems.size() > max_size) {
                    too_big = true;
                    break;
                }
            }
        }
        if (too_big) continue;

        const auto size = static_cast<std::uint32_t>(elems.size());
        std::vector<std::uint32_t> table(std::size_t(size) * size);
        bool closed = true;
        for (std::uint32_t x = 0; x < size && closed; ++x)
            for (std::uint32_t y = 0; y < size; ++y) {
                Key k{m0.mul(elems[x].first, elems[y].first),
                      canon.target.mul(elems[x].second, elems[y].second)};
                auto it = index.find(k);
                if (it == index.end()) {
                    closed = false;
                    break;
                }
                table[std::size_t(x) * size + y] = it->second;
            }
        check(closed, "generated submonoid is not closed");

        CompatibleMorphism cm;
        cm.morphism.alphabet = a;
        cm.morphism.target = Monoid::from_table(size, 0, std::move(table), false);
        cm.morphism.letter_image = letters;
        cm.class_table.resize(size);
        for (std::uint32_t i = 0; i < size; ++i) cm.class_table[i] = elems[i].second;
        cm.pair_derived = false;
        cm.canonical = canon;
        cm.basis = basis;
        cm.validate();
        return cm;
    }
    return std::nullopt;
}

std::vector<Bitset> all_good_subsets(const Morphism& beta) {
    const auto n = beta.target.size();
    require(n <= 16, "good-subset enumeration supports at most 16 elements");
    std::uint32_t image_mask = 0;
    for (auto x : morphism_image(beta)) image_mask |= 1u << x;

    std::vector<Bitset> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if ((mask & image_mask) != image_mask) continue;
        bool closed = true;
        for (std::uint32_t x = 0; x < n && closed; ++x) {
            if (!((mask >> x) & 1u)) continue;
            for (std::uint32_t y = 0; y < n; ++y) {
                if (!((mask >> y) & 1u)) continue;
                if (!((mask >> beta.target.mul(x, y)) & 1u)) {
                    closed = false;
                    break;
                }
            }
        }
        if (!closed) continue;
        Bitset s(n);
        for (std::uint32_t x = 0; x < n; ++x)
            if ((mask >> x) & 1u) s.set(x);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<Monoid> enumerate_monoids(std::uint32_t n) {
    require(n >= 1 && n <= 4, "monoid enumeration supports sizes 1..4");
    std::vector<Monoid> out;
    std::vector<std::uint32_t> table(std::size_t(n) * n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        table[std::size_t(0) * n + i] = i;
        table[std::size_t(i) * n + 0] = i;
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> free_cells;
    for (std::uint32_t i = 1; i < n; ++i)
        for (std::uint32_t j = 1; j < n; ++j) free_cells.emplace_back(i, j);

    std::function<void(std::size_t)> go = [&](std::size_t cell) {
        if (cell == free_cells.size()) {
            for (std::uint32_t x = 0; x < n; ++x)
                for (std::uint32_t y = 0; y < n; ++y)
                    for (std::uint32_t z = 0; z < n; ++z) {
                        auto xy = table[std::size_t(x) * n + y];
                        auto yz = table[std::size_t(y) * n + z];
                        if (table[std::size_t(xy) * n + z] != table[std::size_t(x) * n + yz])
                            return;
                    }
            out.push_back(Monoid::from_table(n, 0, table, false));
            return;
        }
        auto [i, j] = free_cells[cell];
        for (std::uint32_t v = 0; v < n; ++v) {
            table[std::size_t(i) * n + j] = v;
            go(cell + 1);
        }
        table[std::size_t(i) * n + j] = 0;
    };
    go(0);
    return out;
}

}  // namespace polsep
