#include "polsep/monoid.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace polsep {

Monoid Monoid::from_table(std::uint32_t size, std::uint32_t unit,
                          std::vector<std::uint32_t> table, bool check_assoc) {
    require(size >= 1, "monoid must have at least the unit");
    require(unit < size, "monoid unit out of range");
    require(table.size() == std::size_t(size) * size, "multiplication table size mismatch");
    Monoid m;
    m.size_ = size;
    m.unit_ = unit;
    m.table_ = std::move(table);
    for (auto x : m.table_) require(x < size, "multiplication table entry out of range");
    if (check_assoc) m.validate();
    return m;
}

Monoid Monoid::pair_of(std::shared_ptr<const Monoid> base) {
    check(base != nullptr && !base->pair_backed(), "pair monoid requires a table-backed base");
    Monoid m;
    m.size_ = base->size() * base->size();
    m.unit_ = base->unit() * base->size() + base->unit();
    m.table_.clear();
    m.base_ = std::move(base);
    return m;
}

void Monoid::validate() const {
    for (std::uint32_t x = 0; x < size_; ++x) {
        require(mul(unit_, x) == x && mul(x, unit_) == x, "monoid unit is not neutral");
    }
    for (std::uint32_t x = 0; x < size_; ++x)
        for (std::uint32_t y = 0; y < size_; ++y)
            for (std::uint32_t z = 0; z < size_; ++z)
                require(mul(mul(x, y), z) == mul(x, mul(y, z)),
                        "multiplication is not associative");
}

void Morphism::validate() const {
    require(letter_image.size() == alphabet.size(), "morphism letter image count mismatch");
    for (auto m : letter_image) require(m < target.size(), "letter image out of range");
}

void RecognizedLanguage::validate() const {
    morphism.validate();
    for (auto s : accept) require(s < morphism.target.size(), "accept element out of range");
    check(std::is_sorted(accept.begin(), accept.end()), "accept set must be sorted");
}

namespace {

/// Boolean relation on states, row-major bit matrix.
struct Relation {
    std::vector<std::uint64_t> bits;
    bool operator==(const Relation& o) const { return bits == o.bits; }
};
struct RelationHash {
    std::size_t operator()(const Relation& r) const {
        std::uint64_t h = 14695981039346656037ull;
        for (auto x : r.bits) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

RecognizedLanguage transition_monoid(const Nfa& n, const Caps& caps) {
    const std::uint32_t q = n.states;
    const std::uint32_t row_words = (q + 63) / 64 == 0 ? 1 : (q + 63) / 64;
    auto make_rel = [&]() {
        Relation r;
        r.bits.assign(std::size_t(row_words) * (q ? q : 1), 0);
        return r;
    };
    auto rel_set = [&](Relation& r, std::uint32_t i, std::uint32_t j) {
        r.bits[std::size_t(i) * row_words + (j >> 6)] |= std::uint64_t(1) << (j & 63);
    };
    auto rel_test = [&](const Relation& r, std::uint32_t i, std::uint32_t j) {
        return (r.bits[std::size_t(i) * row_words + (j >> 6)] >> (j & 63)) & 1u;
    };
    auto compose = [&](const Relation& x, const Relation& y) {
        Relation z = make_rel();
        for (std::uint32_t i = 0; i < q; ++i) {
            const std::uint64_t* xrow = &x.bits[std::size_t(i) * row_words];
            std::uint64_t* zrow = &z.bits[std::size_t(i) * row_words];
            for (std::uint32_t wi = 0; wi < row_words; ++wi) {
                std::uint64_t w = xrow[wi];
                while (w) {
                    unsigned b = static_cast<unsigned>(__builtin_ctzll(w));
                    std::uint32_t k = (wi << 6) + b;
                    const std::uint64_t* yrow = &y.bits[std::size_t(k) * row_words];
                    for (std::uint32_t wj = 0; wj < row_words; ++wj) zrow[wj] |= yrow[wj];
                    w &= w - 1;
                }
            }
        }
        return z;
    };

    Relation identity = make_rel();
    for (std::uint32_t i = 0; i < q; ++i) rel_set(identity, i, i);
    std::vector<Relation> letter_rel(n.alphabet.size(), make_rel());
    for (const auto& t : n.transitions) rel_set(letter_rel[t.letter], t.from, t.to);

    std::vector<Relation> elems;
    std::unordered_map<Relation, std::uint32_t, RelationHash> index;
    std::deque<std::uint32_t> work;
    auto intern = [&](Relation r) {
        auto it = index.find(r);
        if (it != index.end()) return it->second;
        if (elems.size() >= caps.monoid_cap)
            throw resource_limit_error("transition monoid exceeded element cap");
        auto id = static_cast<std::uint32_t>(elems.size());
        index.emplace(r, id);
        elems.push_back(std::move(r));
        work.push_back(id);
        return id;
    };
    intern(identity);
    while (!work.empty()) {
        auto id = work.front();
        work.pop_front();
        for (std::uint32_t l = 0; l < n.alphabet.size(); ++l) {
            Relation z = compose(elems[id], letter_rel[l]);
            intern(std::move(z));
        }
        caps.check_deadline("transition_monoid");
    }

    const auto m = static_cast<std::uint32_t>(elems.size());
    if (std::size_t(m) * m > (std::size_t(1) << 28))
        throw resource_limit_error("transition monoid table would be too large (" +
                                   std::to_string(m) + " elements)");
    std::vector<std::uint32_t> table(std::size_t(m) * m);
    for (std::uint32_t x = 0; x < m; ++x) {
        for (std::uint32_t y = 0; y < m; ++y) {
            Relation z = compose(elems[x], elems[y]);
            auto it = index.find(z);
            check(it != index.end(), "transition monoid closure not closed");
            table[std::size_t(x) * m + y] = it->second;
        }
        caps.check_deadline("transition_monoid table");
    }

    RecognizedLanguage rl;
    rl.morphism.alphabet = n.alphabet;
    rl.morphism.target = Monoid::from_table(m, 0, std::move(table), /*check_assoc=*/false);
    rl.morphism.letter_image.resize(n.alphabet.size());
    for (std::uint32_t l = 0; l < n.alphabet.size(); ++l)
        rl.morphism.letter_image[l] = index.at(letter_rel[l]);
    for (std::uint32_t x = 0; x < m; ++x) {
        bool acc = false;
        for (auto i : n.initial) {
            for (auto f : n.final)
                if (rel_test(elems[x], i, f)) {
                    acc = true;
                    break;
                }
            if (acc) break;
        }
        if (acc) rl.accept.push_back(x);
    }
    return rl;
}

std::vector<std::uint32_t> morphism_image(const Morphism& m) {
    Bitset seen(m.target.size());
    std::deque<std::uint32_t> work;
    seen.set(m.target.unit());
    work.push_back(m.target.unit());
    while (!work.empty()) {
        auto x = work.front();
        work.pop_front();
        for (auto g : m.letter_image) {
            auto y = m.target.mul(x, g);
            if (!seen.test(y)) {
                seen.set(y);
                work.push_back(y);
            }
        }
    }
    return seen.to_vector();
}

std::vector<std::uint32_t> idempotents(const Monoid& m) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t x = 0; x < m.size(); ++x)
        if (m.mul(x, x) == x) out.push_back(x);
    return out;
}

std::uint32_t omega_power(const Monoid& m, std::uint32_t s) {
    // power sequence s, s^2, ... must cycle; the cycle contains exactly one
    // idempotent power
    std::unordered_map<std::uint32_t, std::uint32_t> seen;  // element -> exponent
    std::uint32_t x = s, exp = 1;
    while (!seen.count(x)) {
        seen.emplace(x, exp);
        x = m.mul(x, s);
        ++exp;
    }
    std::uint32_t mu = seen.at(x);            // cycle entry exponent
    std::uint32_t lambda = exp - mu;          // cycle length
    std::uint32_t k = ((mu + lambda - 1) / lambda) * lambda;  // first multiple >= mu
    // compute s^k
    std::uint32_t r = s;
    for (std::uint32_t i = 1; i < k; ++i) r = m.mul(r, s);
    check(m.mul(r, r) == r, "omega power is not idempotent");
    return r;
}

namespace {

/// Iterative Tarjan SCC over the two-sided-ideal one-step relation
/// s -> x*s and s -> s*x for every x; neighbors generated on the fly.
struct JDepth {
    const Monoid& m;
    std::vector<std::uint32_t> idx, low, comp;
    std::vector<std::uint32_t> stack;
    std::vector<bool> on_stack;
    std::uint32_t counter = 0, comps = 0;

    explicit JDepth(const Monoid& mm)
        : m(mm),
          idx(mm.size(), UINT32_MAX),
          low(mm.size(), 0),
          comp(mm.size(), UINT32_MAX),
          on_stack(mm.size(), false) {}

    std::uint32_t neighbor(std::uint32_t s, std::uint32_t e) const {
        // 2*size neighbors: left multiples then right multiples
        return e < m.size() ? m.mul(e, s) : m.mul(s, e - m.size());
    }

    void strongconnect(std::uint32_t root) {
        // explicit stack: (node, next neighbor index)
        std::vector<std::pair<std::uint32_t, std::uint32_t>> call;
        call.emplace_back(root, 0);
        idx[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, ei] = call.back();
            if (ei < 2 * m.size()) {
                auto w = neighbor(v, ei++);
                if (idx[w] == UINT32_MAX) {
                    idx[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], idx[w]);
                }
            } else {
                if (low[v] == idx[v]) {
                    while (true) {
                        auto w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = comps;
                        if (w == v) break;
                    }
                    ++comps;
                }
                call.pop_back();
                if (!call.empty()) {
                    auto parent = call.back().first;
                    low[parent] = std::min(low[parent], low[v]);
                }
            }
        }
    }
};

}  // namespace

std::uint32_t j_depth(const Monoid& m) {
    JDepth t(m);
    for (std::uint32_t s = 0; s < m.size(); ++s)
        if (t.idx[s] == UINT32_MAX) t.strongconnect(s);
    // Elements of one SCC are mutually reachable in a single x*s*y step, so a
    // chain of pairwise distinct elements can walk through a whole SCC before
    // descending. The answer is the longest path in the condensation where
    // each SCC contributes its size. Tarjan completes components in
    // topological order of reachability: an edge u -> v across components has
    // comp[v] < comp[u], so processing elements by decreasing component index
    // finalizes each component's depth before relaxing its outgoing edges.
    std::vector<std::uint32_t> size_of(t.comps, 0);
    for (std::uint32_t s = 0; s < m.size(); ++s) ++size_of[t.comp[s]];
    std::vector<std::uint32_t> depth(t.comps);
    for (std::uint32_t c = 0; c < t.comps; ++c) depth[c] = size_of[c];
    std::vector<std::uint32_t> order(m.size());
    for (std::uint32_t s = 0; s < m.size(); ++s) order[s] = s;
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        return t.comp[x] > t.comp[y];
    });
    for (auto s : order) {
        for (std::uint32_t e = 0; e < 2 * m.size(); ++e) {
            auto w = t.neighbor(s, e);
            if (t.comp[w] != t.comp[s])
                depth[t.comp[w]] =
                    std::max(depth[t.comp[w]], depth[t.comp[s]] + size_of[t.comp[w]]);
        }
    }
    std::uint32_t best = 1;
    for (auto d : depth) best = std::max(best, d);
    return best;
}

Nfa morphism_to_nfa(const RecognizedLanguage& rl) {
    const auto& m = rl.morphism.target;
    Nfa n;
    n.alphabet = rl.morphism.alphabet;
    n.states = m.size();
    n.initial = {m.unit()};
    n.final = rl.accept;
    for (std::uint32_t s = 0; s < m.size(); ++s)
        for (std::uint32_t l = 0; l < n.alphabet.size(); ++l)
            n.transitions.push_back({s, l, m.mul(s, rl.morphism.letter_image[l])});
    n.normalize();
    return n;
}

}  // namespace polsep
