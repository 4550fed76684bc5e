#include "polsep/reduction.hpp"

#include <algorithm>
#include <unordered_set>

namespace polsep {

std::uint32_t Tagging::tau_of_length(std::uint64_t len) const {
    require(tau0 == tau1, "tagging is not length-determined");
    std::uint32_t acc = t.unit();
    std::uint32_t base = tau0;
    while (len > 0) {
        if (len & 1) acc = t.mul(acc, base);
        base = t.mul(base, base);
        len >>= 1;
    }
    return acc;
}

void Tagging::validate() const {
    t.validate();
    require(tau0 < t.size() && tau1 < t.size(), "tag letter image out of range");
    require(!g.empty(), "tagging has empty tag set");
    require(std::is_sorted(g.begin(), g.end()), "tag set must be sorted");
    require(std::adjacent_find(g.begin(), g.end()) == g.end(), "tag set has duplicates");
    require(g.back() < t.size(), "tag value out of range");
}

Tagging cyclic_tagging(std::uint32_t k) {
    require(k >= 1, "cyclic tagging needs k >= 1");
    std::vector<std::uint32_t> table(std::size_t(k) * k);
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j < k; ++j) table[std::size_t(i) * k + j] = (i + j) % k;
    Tagging p;
    p.t = Monoid::from_table(k, 0, std::move(table), false);
    p.tau0 = 1 % k;
    p.tau1 = 1 % k;
    p.g.resize(k);
    for (std::uint32_t i = 0; i < k; ++i) p.g[i] = i;
    return p;
}

RelabeledNfa relabel_nfa(const Nfa& n, const Tagging& p) {
    require(p.rank() >= n.transitions.size(),
            "tagging rank is smaller than the transition count");
    const std::uint32_t nt = p.t.size();

    RelabeledNfa out;
    out.base_alphabet = n.alphabet;
    out.transition_order = n.transitions;
    std::sort(out.transition_order.begin(), out.transition_order.end(),
              [&](const Transition& x, const Transition& y) {
                  if (x.from != y.from) return x.from < y.from;
                  const auto& tx = n.alphabet.tokens()[x.letter];
                  const auto& ty = n.alphabet.tokens()[y.letter];
                  if (tx != ty) return tx < ty;
                  return x.to < y.to;
              });
    out.tags.assign(p.g.begin(), p.g.begin() + std::ptrdiff_t(out.transition_order.size()));

    std::vector<std::string> tokens;
    tokens.reserve(std::size_t(n.alphabet.size()) * nt);
    for (const auto& tok : n.alphabet.tokens())
        for (std::uint32_t t = 0; t < nt; ++t) tokens.push_back(tok + "|t" + std::to_string(t));
    out.nfa.alphabet = Alphabet(std::move(tokens));
    out.nfa.states = n.states;
    out.nfa.initial = n.initial;
    out.nfa.final = n.final;
    out.nfa.transitions.reserve(out.transition_order.size());
    for (std::size_t i = 0; i < out.transition_order.size(); ++i) {
        const auto& tr = out.transition_order[i];
        out.nfa.transitions.push_back({tr.from, tr.letter * nt + out.tags[i], tr.to});
    }
    out.nfa.normalize();
    return out;
}

namespace {

Alphabet padded_alphabet(const Alphabet& base) {
    auto tags = choose_tag_letters(base);
    std::vector<std::string> tokens = base.tokens();
    tokens.push_back(tags[0]);
    tokens.push_back(tags[1]);
    return Alphabet(std::move(tokens));
}

}  // namespace

Nfa build_language_nfa(const Nfa& n, const Tagging& p) {
    RelabeledNfa rel = relabel_nfa(n, p);
    const std::uint32_t nt = p.t.size();
    const auto nd = static_cast<std::uint32_t>(rel.transition_order.size());

    Nfa out;
    out.alphabet = padded_alphabet(n.alphabet);
    const std::uint32_t tag0 = n.alphabet.size();
    const std::uint32_t tag1 = tag0 + 1;
    // state 0 reads the free tag prefix; gadget i tracks the tau class of the
    // tag word following the i-th original transition's letter
    out.states = 1 + nd * nt;
    auto gadget = [&](std::uint32_t i, std::uint32_t t) { return 1 + i * nt + t; };

    out.initial = {0};
    out.transitions.push_back({0, tag0, 0});
    out.transitions.push_back({0, tag1, 0});

    std::unordered_set<std::uint32_t> initial(n.initial.begin(), n.initial.end());
    for (std::uint32_t j = 0; j < nd; ++j) {
        const auto& tj = rel.transition_order[j];
        if (initial.count(tj.from)) out.transitions.push_back({0, tj.letter, gadget(j, p.t.unit())});
    }
    for (std::uint32_t i = 0; i < nd; ++i) {
        for (std::uint32_t t = 0; t < nt; ++t) {
            out.transitions.push_back({gadget(i, t), tag0, gadget(i, p.t.mul(t, p.tau0))});
            out.transitions.push_back({gadget(i, t), tag1, gadget(i, p.t.mul(t, p.tau1))});
        }
        const std::uint32_t exit = gadget(i, rel.tags[i]);
        for (std::uint32_t j = 0; j < nd; ++j) {
            const auto& tj = rel.transition_order[j];
            if (tj.from == rel.transition_order[i].to)
                out.transitions.push_back({exit, tj.letter, gadget(j, p.t.unit())});
        }
    }

    bool eps_accepted = false;
    for (auto q : n.initial)
        if (n.is_final(q)) eps_accepted = true;
    if (eps_accepted) out.final.push_back(0);
    for (std::uint32_t i = 0; i < nd; ++i)
        if (n.is_final(rel.transition_order[i].to)) out.final.push_back(gadget(i, rel.tags[i]));

    out.normalize();
    return out;
}

RecognizedLanguage build_language_monoid(const Nfa& n, const Tagging& p) {
    RelabeledNfa rel = relabel_nfa(n, p);
    const std::uint32_t nt = p.t.size();
    const std::uint32_t na = n.alphabet.size();
    const std::uint32_t nq = n.states;

    // transition-pair composition monoid: pairs (q, r) plus a zero and a unit
    const std::uint32_t n_zero = nq * nq;
    const std::uint32_t n_one = n_zero + 1;
    const std::uint32_t nn = n_zero + 2;
    auto nmul = [&](std::uint32_t x, std::uint32_t y) -> std::uint32_t {
        if (x == n_one) return y;
        if (y == n_one) return x;
        if (x == n_zero || y == n_zero) return n_zero;
        return x % nq == y / nq ? (x / nq) * nq + y % nq : n_zero;
    };

    // each composite letter labels at most one relabeled transition
    std::vector<std::uint32_t> beta(std::size_t(na) * nt, n_zero);
    for (std::size_t i = 0; i < rel.transition_order.size(); ++i) {
        const auto& tr = rel.transition_order[i];
        beta[std::size_t(tr.letter) * nt + rel.tags[i]] = tr.from * nq + tr.to;
    }

    const std::uint64_t size64 =
        std::uint64_t(nt) + std::uint64_t(na) * nt * nt * nn;
    if (size64 * size64 > (std::uint64_t(1) << 28))
        throw resource_limit_error("padded-language monoid is too large to tabulate");
    const auto m_size = static_cast<std::uint32_t>(size64);
    auto enc = [&](std::uint32_t t1, std::uint32_t s, std::uint32_t a,
                   std::uint32_t t2) -> std::uint32_t {
        return nt + ((t1 * nn + s) * na + a) * nt + t2;
    };

    std::vector<std::uint32_t> table(std::size_t(m_size) * m_size);
    auto mul_into = [&](std::uint32_t x, std::uint32_t y) -> std::uint32_t {
        if (x < nt && y < nt) return p.t.mul(x, y);
        if (x < nt) {
            std::uint32_t r = y - nt;
            std::uint32_t t2 = r % nt;
            r /= nt;
            std::uint32_t a = r % na;
            r /= na;
            std::uint32_t s = r % nn;
            std::uint32_t t1 = r / nn;
            return enc(p.t.mul(x, t1), s, a, t2);
        }
        if (y < nt) {
            std::uint32_t r = x - nt;
            std::uint32_t t2 = r % nt;
            r /= nt;
            std::uint32_t a = r % na;
            r /= na;
            std::uint32_t s = r % nn;
            std::uint32_t t1 = r / nn;
            return enc(t1, s, a, p.t.mul(t2, y));
        }
        std::uint32_t r = x - nt;
        std::uint32_t xt2 = r % nt;
        r /= nt;
        std::uint32_t xa = r % na;
        r /= na;
        std::uint32_t xs = r % nn;
        std::uint32_t xt1 = r / nn;
        std::uint32_t q = y - nt;
        std::uint32_t yt2 = q % nt;
        q /= nt;
        std::uint32_t ya = q % na;
        q /= na;
        std::uint32_t ys = q % nn;
        std::uint32_t yt1 = q / nn;
        std::uint32_t mid = beta[std::size_t(xa) * nt + p.t.mul(xt2, yt1)];
        return enc(xt1, nmul(nmul(xs, mid), ys), ya, yt2);
    };
    for (std::uint32_t x = 0; x < m_size; ++x)
        for (std::uint32_t y = 0; y < m_size; ++y)
            table[std::size_t(x) * m_size + y] = mul_into(x, y);

    RecognizedLanguage out;
    out.morphism.alphabet = padded_alphabet(n.alphabet);
    out.morphism.target = Monoid::from_table(m_size, p.t.unit(), std::move(table), false);

    check(out.morphism.target.size() ==
              std::uint64_t(nt) + std::uint64_t(na) * nt * nt * (std::uint64_t(nq) * nq + 2),
          "padded-language monoid misses its size bound");
    const auto& m = out.morphism.target;
    const std::uint64_t triples = std::uint64_t(m_size) * m_size * m_size;
    if (triples <= 100'000'000ull) {
        for (std::uint32_t x = 0; x < m_size; ++x)
            for (std::uint32_t y = 0; y < m_size; ++y)
                for (std::uint32_t z = 0; z < m_size; ++z)
                    check(m.mul(m.mul(x, y), z) == m.mul(x, m.mul(y, z)),
                          "padded-language monoid is not associative");
    } else {
        Rng rng(0xA55A5AA5u);
        for (std::uint32_t i = 0; i < 1'000'000; ++i) {
            auto x = rng.below(m_size), y = rng.below(m_size), z = rng.below(m_size);
            check(m.mul(m.mul(x, y), z) == m.mul(x, m.mul(y, z)),
                  "padded-language monoid is not associative");
        }
    }

    out.morphism.letter_image.resize(na + 2);
    for (std::uint32_t a = 0; a < na; ++a)
        out.morphism.letter_image[a] = enc(p.t.unit(), n_one, a, p.t.unit());
    out.morphism.letter_image[na] = p.tau0;
    out.morphism.letter_image[na + 1] = p.tau1;

    // accepted classes: the tag-word prefix is free, so a tuple is accepted
    // when its composed run extends to an accepting one via its last letter
    std::vector<char> h(nn, 0);
    bool eps_accepted = false;
    for (auto q : n.initial) {
        if (n.is_final(q)) eps_accepted = true;
        for (auto r : n.final) h[q * nq + r] = 1;
    }
    if (eps_accepted) h[n_one] = 1;

    if (eps_accepted)
        for (std::uint32_t x = 0; x < nt; ++x) out.accept.push_back(x);
    for (std::uint32_t t1 = 0; t1 < nt; ++t1)
        for (std::uint32_t s = 0; s < nn; ++s)
            for (std::uint32_t a = 0; a < na; ++a)
                for (std::uint32_t t2 = 0; t2 < nt; ++t2)
                    if (h[nmul(s, beta[std::size_t(a) * nt + t2])])
                        out.accept.push_back(enc(t1, s, a, t2));
    std::sort(out.accept.begin(), out.accept.end());
    out.validate();
    return out;
}

ReductionArtifacts reduce_instance(const Nfa& n1, const Nfa& n2, const Level& level,
                                   const Caps& caps) {
    require(n1.alphabet.tokens() == n2.alphabet.tokens(),
            "reduction inputs must share an alphabet");
    const auto k = static_cast<std::uint32_t>(
        std::max<std::size_t>({n1.transitions.size(), n2.transitions.size(), 1}));

    ReductionArtifacts art;
    art.tagging = cyclic_tagging(k);
    art.relabeled1 = relabel_nfa(n1, art.tagging);
    art.relabeled2 = relabel_nfa(n2, art.tagging);
    art.language1 = build_language_monoid(n1, art.tagging);
    art.language2 = build_language_monoid(n2, art.tagging);
    art.extended = extend_basis_E(level.effective_basis(), n1.alphabet);
    art.product = compatible_product(art.language1, art.language2, art.extended.basis, caps);
    return art;
}

}  // namespace polsep
