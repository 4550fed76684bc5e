#include "polsep/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>

namespace polsep {

namespace {

/// Sort key honoring the serialization order: source, letter token, target.
bool trans_less(const Nfa& n, const Transition& x, const Transition& y) {
    if (x.from != y.from) return x.from < y.from;
    if (x.letter != y.letter)
        return n.alphabet.token(x.letter) < n.alphabet.token(y.letter);
    return x.to < y.to;
}

void sort_unique(std::vector<std::uint32_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<Bitset> letter_step_table(const Nfa& n) {
    // per letter, per state: successor set
    std::vector<Bitset> step(std::size_t(n.alphabet.size()) * n.states, Bitset(n.states));
    for (const auto& t : n.transitions)
        step[std::size_t(t.letter) * n.states + t.from].set(t.to);
    return step;
}

}  // namespace

void Nfa::normalize() {
    for (const auto& t : transitions) {
        require(t.from < states && t.to < states, "transition state out of range");
        require(t.letter < alphabet.size(), "transition letter out of range");
    }
    for (auto q : initial) require(q < states, "initial state out of range");
    for (auto q : final) require(q < states, "final state out of range");
    sort_unique(initial);
    sort_unique(final);
    std::sort(transitions.begin(), transitions.end(),
              [this](const Transition& x, const Transition& y) { return trans_less(*this, x, y); });
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
}

bool Nfa::is_final(std::uint32_t q) const {
    return std::binary_search(final.begin(), final.end(), q);
}
bool Nfa::is_initial(std::uint32_t q) const {
    return std::binary_search(initial.begin(), initial.end(), q);
}

Nfa nfa_empty(const Alphabet& a) {
    Nfa n;
    n.alphabet = a;
    n.states = 0;
    return n;
}

Nfa nfa_epsilon(const Alphabet& a) {
    Nfa n;
    n.alphabet = a;
    n.states = 1;
    n.initial = {0};
    n.final = {0};
    return n;
}

Nfa nfa_universal(const Alphabet& a) {
    Nfa n;
    n.alphabet = a;
    n.states = 1;
    n.initial = {0};
    n.final = {0};
    for (std::uint32_t l = 0; l < a.size(); ++l) n.transitions.push_back({0, l, 0});
    n.normalize();
    return n;
}

Nfa nfa_word(const Alphabet& a, const Word& w) {
    Nfa n;
    n.alphabet = a;
    n.states = static_cast<std::uint32_t>(w.size()) + 1;
    n.initial = {0};
    n.final = {n.states - 1};
    for (std::uint32_t i = 0; i < w.size(); ++i) n.transitions.push_back({i, w[i], i + 1});
    n.normalize();
    return n;
}

bool accepts(const Nfa& n, const Word& w) {
    if (n.states == 0) return false;
    Bitset cur(n.states);
    for (auto q : n.initial) cur.set(q);
    auto step = letter_step_table(n);
    for (auto l : w) {
        Bitset next(n.states);
        cur.for_each([&](std::uint32_t q) { next.or_with(step[std::size_t(l) * n.states + q]); });
        cur = next;
        if (!cur.any()) return false;
    }
    bool ok = false;
    cur.for_each([&](std::uint32_t q) { ok = ok || n.is_final(q); });
    return ok;
}

bool is_empty(const Nfa& n) {
    if (n.states == 0 || n.initial.empty()) return true;
    Bitset seen(n.states);
    std::deque<std::uint32_t> work;
    for (auto q : n.initial) {
        seen.set(q);
        work.push_back(q);
    }
    std::vector<std::vector<std::uint32_t>> out(n.states);
    for (const auto& t : n.transitions) out[t.from].push_back(t.to);
    while (!work.empty()) {
        auto q = work.front();
        work.pop_front();
        if (n.is_final(q)) return false;
        for (auto r : out[q])
            if (!seen.test(r)) {
                seen.set(r);
                work.push_back(r);
            }
    }
    return true;
}

Nfa intersect(const Nfa& a, const Nfa& b) {
    require(a.alphabet == b.alphabet, "intersect: alphabet mismatch");
    Nfa out;
    out.alphabet = a.alphabet;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> id;
    std::deque<std::pair<std::uint32_t, std::uint32_t>> work;
    auto get = [&](std::uint32_t p, std::uint32_t q) {
        auto key = std::make_pair(p, q);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        auto nid = static_cast<std::uint32_t>(id.size());
        id.emplace(key, nid);
        work.push_back(key);
        return nid;
    };
    std::vector<std::vector<Transition>> outa(a.states), outb(b.states);
    for (const auto& t : a.transitions) outa[t.from].push_back(t);
    for (const auto& t : b.transitions) outb[t.from].push_back(t);
    for (auto p : a.initial)
        for (auto q : b.initial) out.initial.push_back(get(p, q));
    while (!work.empty()) {
        auto [p, q] = work.front();
        work.pop_front();
        auto sid = id.at({p, q});
        if (a.is_final(p) && b.is_final(q)) out.final.push_back(sid);
        for (const auto& ta : outa[p])
            for (const auto& tb : outb[q])
                if (ta.letter == tb.letter)
                    out.transitions.push_back({sid, ta.letter, get(ta.to, tb.to)});
    }
    out.states = static_cast<std::uint32_t>(id.size());
    out.normalize();
    return out;
}

Nfa nfa_union(const Nfa& a, const Nfa& b) {
    require(a.alphabet == b.alphabet, "union: alphabet mismatch");
    Nfa out;
    out.alphabet = a.alphabet;
    out.states = a.states + b.states;
    out.transitions = a.transitions;
    for (const auto& t : b.transitions)
        out.transitions.push_back({t.from + a.states, t.letter, t.to + a.states});
    out.initial = a.initial;
    for (auto q : b.initial) out.initial.push_back(q + a.states);
    out.final = a.final;
    for (auto q : b.final) out.final.push_back(q + a.states);
    out.normalize();
    return out;
}

Nfa determinize(const Nfa& n, const Caps& caps) {
    Nfa out;
    out.alphabet = n.alphabet;
    auto step = letter_step_table(n);
    std::map<std::vector<std::uint32_t>, std::uint32_t> id;
    std::deque<std::vector<std::uint32_t>> work;
    auto get = [&](const std::vector<std::uint32_t>& subset) {
        auto it = id.find(subset);
        if (it != id.end()) return it->second;
        if (id.size() >= caps.det_cap)
            throw resource_limit_error("determinization exceeded subset cap");
        auto nid = static_cast<std::uint32_t>(id.size());
        id.emplace(subset, nid);
        work.push_back(subset);
        return nid;
    };
    std::vector<std::uint32_t> start(n.initial);
    get(start);
    while (!work.empty()) {
        auto subset = work.front();
        work.pop_front();
        auto sid = id.at(subset);
        bool fin = false;
        for (auto q : subset) fin = fin || n.is_final(q);
        if (fin) out.final.push_back(sid);
        for (std::uint32_t l = 0; l < n.alphabet.size(); ++l) {
            Bitset next(n.states ? n.states : 1);
            for (auto q : subset) {
                if (n.states) next.or_with(step[std::size_t(l) * n.states + q]);
            }
            out.transitions.push_back({sid, l, get(next.to_vector())});
        }
        caps.check_deadline("determinize");
    }
    out.initial = {0};
    out.states = static_cast<std::uint32_t>(id.size());
    out.normalize();
    return out;
}

Nfa minimize_dfa(const Nfa& dfa) {
    require(dfa.initial.size() == 1, "minimize_dfa: expected exactly one initial state");
    const auto letters = dfa.alphabet.size();
    const std::uint32_t none = dfa.states;
    std::vector<std::uint32_t> next(std::size_t(dfa.states) * letters, none);
    for (const auto& t : dfa.transitions) {
        auto& slot = next[std::size_t(t.from) * letters + t.letter];
        require(slot == none, "minimize_dfa: nondeterministic transition");
        slot = t.to;
    }
    for (auto slot : next) require(slot != none, "minimize_dfa: incomplete transition table");

    // Moore refinement: split classes by (own class, class of each successor)
    // until stable. Classes are numbered by first occurrence in state order so
    // the result is deterministic.
    std::vector<std::uint32_t> cls(dfa.states);
    for (std::uint32_t q = 0; q < dfa.states; ++q) cls[q] = dfa.is_final(q) ? 1 : 0;
    for (;;) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> sig_to_cls;
        std::vector<std::uint32_t> refined(dfa.states);
        for (std::uint32_t q = 0; q < dfa.states; ++q) {
            std::vector<std::uint32_t> sig;
            sig.reserve(letters + 1);
            sig.push_back(cls[q]);
            for (std::uint32_t l = 0; l < letters; ++l)
                sig.push_back(cls[next[std::size_t(q) * letters + l]]);
            auto [it, fresh] =
                sig_to_cls.emplace(std::move(sig), static_cast<std::uint32_t>(sig_to_cls.size()));
            (void)fresh;
            refined[q] = it->second;
        }
        bool changed = refined != cls;
        cls = std::move(refined);
        if (!changed) break;
    }
    // Renumber classes in first-occurrence order and build the quotient.
    std::uint32_t classes = 0;
    std::vector<std::uint32_t> renumber(dfa.states, none);
    for (std::uint32_t q = 0; q < dfa.states; ++q)
        if (renumber[cls[q]] == none) renumber[cls[q]] = classes++;
    Nfa out;
    out.alphabet = dfa.alphabet;
    out.states = classes;
    out.initial = {renumber[cls[dfa.initial[0]]]};
    std::vector<bool> emitted(classes, false);
    for (std::uint32_t q = 0; q < dfa.states; ++q) {
        auto c = renumber[cls[q]];
        if (dfa.is_final(q)) out.final.push_back(c);
        if (emitted[c]) continue;
        emitted[c] = true;
        for (std::uint32_t l = 0; l < letters; ++l)
            out.transitions.push_back({c, l, renumber[cls[next[std::size_t(q) * letters + l]]]});
    }
    out.normalize();
    return out;
}

Nfa complement(const Nfa& n, const Caps& caps) {
    Nfa d = determinize(n, caps);
    std::vector<std::uint32_t> flipped;
    for (std::uint32_t q = 0; q < d.states; ++q)
        if (!d.is_final(q)) flipped.push_back(q);
    d.final = std::move(flipped);
    d.normalize();
    return d;
}

bool includes(const Nfa& big, const Nfa& small, const Caps& caps) {
    require(big.alphabet == small.alphabet, "includes: alphabet mismatch");
    return is_empty(intersect(small, complement(big, caps)));
}

bool equivalent(const Nfa& a, const Nfa& b, const Caps& caps) {
    return includes(a, b, caps) && includes(b, a, caps);
}

Nfa trim(const Nfa& n) {
    // forward reachability
    Bitset fwd(n.states ? n.states : 1);
    {
        std::deque<std::uint32_t> work;
        for (auto q : n.initial) {
            fwd.set(q);
            work.push_back(q);
        }
        std::vector<std::vector<std::uint32_t>> out(n.states);
        for (const auto& t : n.transitions) out[t.from].push_back(t.to);
        while (!work.empty()) {
            auto q = work.front();
            work.pop_front();
            for (auto r : out[q])
                if (!fwd.test(r)) {
                    fwd.set(r);
                    work.push_back(r);
                }
        }
    }
    // backward reachability
    Bitset bwd(n.states ? n.states : 1);
    {
        std::deque<std::uint32_t> work;
        for (auto q : n.final) {
            bwd.set(q);
            work.push_back(q);
        }
        std::vector<std::vector<std::uint32_t>> in(n.states);
        for (const auto& t : n.transitions) in[t.to].push_back(t.from);
        while (!work.empty()) {
            auto q = work.front();
            work.pop_front();
            for (auto r : in[q])
                if (!bwd.test(r)) {
                    bwd.set(r);
                    work.push_back(r);
                }
        }
    }
    std::vector<std::uint32_t> remap(n.states, UINT32_MAX);
    std::uint32_t cnt = 0;
    for (std::uint32_t q = 0; q < n.states; ++q)
        if (fwd.test(q) && bwd.test(q)) remap[q] = cnt++;
    Nfa out;
    out.alphabet = n.alphabet;
    out.states = cnt;
    for (const auto& t : n.transitions)
        if (remap[t.from] != UINT32_MAX && remap[t.to] != UINT32_MAX)
            out.transitions.push_back({remap[t.from], t.letter, remap[t.to]});
    for (auto q : n.initial)
        if (remap[q] != UINT32_MAX) out.initial.push_back(remap[q]);
    for (auto q : n.final)
        if (remap[q] != UINT32_MAX) out.final.push_back(remap[q]);
    out.normalize();
    return out;
}

Nfa project_letters(const Nfa& n, const Alphabet& target,
                    const std::vector<std::uint32_t>& letter_map) {
    require(letter_map.size() == n.alphabet.size(), "project: letter map size mismatch");
    Nfa out;
    out.alphabet = target;
    out.states = n.states;
    out.initial = n.initial;
    out.final = n.final;
    for (const auto& t : n.transitions) {
        require(letter_map[t.letter] < target.size(), "project: mapped letter out of range");
        out.transitions.push_back({t.from, letter_map[t.letter], t.to});
    }
    out.normalize();
    return out;
}

Nfa subword_closure(const Nfa& n) {
    Nfa out = n;
    for (std::uint32_t q = 0; q < out.states; ++q)
        for (std::uint32_t l = 0; l < out.alphabet.size(); ++l)
            out.transitions.push_back({q, l, q});
    out.normalize();
    return out;
}

std::uint32_t EpsBuilder::fresh() { return states_++; }

void EpsBuilder::edge(std::uint32_t q, std::optional<std::uint32_t> letter, std::uint32_t r) {
    edges_.emplace_back(q, letter ? *letter + 1 : 0, r);
}

EpsBuilder::Frag EpsBuilder::eps() {
    auto s = fresh();
    return {s, s};
}

EpsBuilder::Frag EpsBuilder::letter(std::uint32_t l) {
    require(l < alphabet_.size(), "builder letter out of range");
    auto s = fresh(), t = fresh();
    edge(s, l, t);
    return {s, t};
}

EpsBuilder::Frag EpsBuilder::letter_set(const std::vector<std::uint32_t>& ls) {
    auto s = fresh(), t = fresh();
    for (auto l : ls) {
        require(l < alphabet_.size(), "builder letter out of range");
        edge(s, l, t);
    }
    return {s, t};
}

EpsBuilder::Frag EpsBuilder::concat(Frag a, Frag b) {
    edge(a.accept, std::nullopt, b.start);
    return {a.start, b.accept};
}

EpsBuilder::Frag EpsBuilder::alt(Frag a, Frag b) {
    auto s = fresh(), t = fresh();
    edge(s, std::nullopt, a.start);
    edge(s, std::nullopt, b.start);
    edge(a.accept, std::nullopt, t);
    edge(b.accept, std::nullopt, t);
    return {s, t};
}

EpsBuilder::Frag EpsBuilder::star(Frag a) {
    auto s = fresh(), t = fresh();
    edge(s, std::nullopt, a.start);
    edge(s, std::nullopt, t);
    edge(a.accept, std::nullopt, a.start);
    edge(a.accept, std::nullopt, t);
    return {s, t};
}

EpsBuilder::Frag EpsBuilder::embed(const Nfa& n) {
    require(n.alphabet == alphabet_, "embed: alphabet mismatch");
    auto base = states_;
    states_ += n.states;
    for (const auto& t : n.transitions) edge(base + t.from, t.letter, base + t.to);
    auto s = fresh(), t = fresh();
    for (auto q : n.initial) edge(s, std::nullopt, base + q);
    for (auto q : n.final) edge(base + q, std::nullopt, t);
    return {s, t};
}

Nfa EpsBuilder::to_nfa(Frag f) const {
    // epsilon closures by BFS per state
    std::vector<std::vector<std::uint32_t>> epsout(states_);
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> letout(states_);
    for (const auto& [q, l, r] : edges_) {
        if (l == 0)
            epsout[q].push_back(r);
        else
            letout[q].emplace_back(l - 1, r);
    }
    Nfa out;
    out.alphabet = alphabet_;
    out.states = states_;
    out.initial = {f.start};
    for (std::uint32_t q = 0; q < states_; ++q) {
        Bitset close(states_);
        std::deque<std::uint32_t> work{q};
        close.set(q);
        while (!work.empty()) {
            auto p = work.front();
            work.pop_front();
            for (auto r : epsout[p])
                if (!close.test(r)) {
                    close.set(r);
                    work.push_back(r);
                }
        }
        bool fin = close.test(f.accept);
        if (fin) out.final.push_back(q);
        close.for_each([&](std::uint32_t p) {
            for (auto [l, r] : letout[p]) out.transitions.push_back({q, l, r});
        });
    }
    out.normalize();
    return trim(out);
}

}  // namespace polsep
