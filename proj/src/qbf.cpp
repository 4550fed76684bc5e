#include "polsep/qbf.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace polsep {

void Qbf::validate() const {
    const auto n = variables();
    require(!clauses.empty(), "a formula needs at least one clause");
    for (const auto& cl : clauses) {
        require(!cl.empty(), "clauses must be nonempty");
        for (int lit : cl) {
            require(lit != 0, "literal 0 inside a clause");
            require(std::abs(lit) <= static_cast<int>(n),
                    "literal references an unquantified variable");
        }
    }
}

namespace {

std::vector<long> parse_int_line(const std::string& line, std::size_t lineno) {
    std::istringstream ss(line);
    std::vector<long> out;
    long v;
    while (ss >> v) out.push_back(v);
    if (ss.fail() && !ss.eof()) {
        ss.clear();
        std::string rest;
        if (ss >> rest)
            throw input_error("line " + std::to_string(lineno) + ": unexpected token '" + rest +
                              "'");
    }
    return out;
}

}  // namespace

Qbf parse_qdimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    long n = -1, m = -1;
    // quantifier prefix, outermost first, as (variable, quantifier) in
    // declaration order
    std::vector<std::pair<long, Qbf::Quant>> prefix;
    std::vector<std::vector<long>> raw_clauses;
    bool clauses_started = false;

    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == 'c') continue;
        if (line[first] == 'p') {
            if (n >= 0) throw input_error("line " + std::to_string(lineno) + ": duplicate problem line");
            std::istringstream ss(line.substr(first));
            std::string p, cnf;
            if (!(ss >> p >> cnf >> n >> m) || p != "p" || cnf != "cnf" || n < 0 || m < 0)
                throw input_error("line " + std::to_string(lineno) + ": malformed problem line (expected 'p cnf n m')");
            continue;
        }
        if (line[first] == 'e' || line[first] == 'a') {
            if (n < 0) throw input_error("line " + std::to_string(lineno) + ": quantifier before the problem line");
            if (clauses_started)
                throw input_error("line " + std::to_string(lineno) + ": quantifier after the first clause");
            auto quant = line[first] == 'e' ? Qbf::Quant::Exists : Qbf::Quant::Forall;
            auto vals = parse_int_line(line.substr(first + 1), lineno);
            if (vals.empty() || vals.back() != 0)
                throw input_error("line " + std::to_string(lineno) + ": quantifier line must end with 0");
            vals.pop_back();
            if (vals.empty())
                throw input_error("line " + std::to_string(lineno) + ": empty quantifier block");
            for (long v : vals) {
                if (v <= 0 || v > n)
                    throw input_error("line " + std::to_string(lineno) + ": variable " + std::to_string(v) + " out of range");
                for (const auto& [u, qq] : prefix)
                    if (u == v)
                        throw input_error("line " + std::to_string(lineno) + ": variable " + std::to_string(v) + " quantified twice");
                prefix.emplace_back(v, quant);
            }
            continue;
        }
        // clause line
        if (n < 0) throw input_error("line " + std::to_string(lineno) + ": clause before the problem line");
        auto vals = parse_int_line(line, lineno);
        if (vals.empty() || vals.back() != 0)
            throw input_error("line " + std::to_string(lineno) + ": clause must end with 0");
        vals.pop_back();
        if (vals.empty()) throw input_error("line " + std::to_string(lineno) + ": empty clause");
        for (long lit : vals)
            if (lit == 0 || std::abs(lit) > n)
                throw input_error("line " + std::to_string(lineno) + ": literal " + std::to_string(lit) + " out of range");
        raw_clauses.push_back(std::move(vals));
        clauses_started = true;
    }

    if (n < 0) throw input_error("missing problem line 'p cnf n m'");
    if (static_cast<long>(prefix.size()) != n)
        throw input_error("every variable must be quantified (" +
                          std::to_string(prefix.size()) + " of " + std::to_string(n) +
                          " are)");
    if (static_cast<long>(raw_clauses.size()) != m)
        throw input_error("clause count " + std::to_string(raw_clauses.size()) +
                          " differs from the declared " + std::to_string(m));

    // renumber so that index 1 is the innermost variable
    std::vector<std::uint32_t> inner_index(static_cast<std::size_t>(n) + 1, 0);
    Qbf q;
    q.quantifiers.resize(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < prefix.size(); ++j) {
        auto paper = static_cast<std::uint32_t>(prefix.size() - j);  // 1-based
        inner_index[static_cast<std::size_t>(prefix[j].first)] = paper;
        q.quantifiers[paper - 1] = prefix[j].second;
    }
    for (auto& cl : raw_clauses) {
        std::vector<int> mapped;
        mapped.reserve(cl.size());
        for (long lit : cl) {
            auto v = inner_index[static_cast<std::size_t>(std::abs(lit))];
            mapped.push_back(lit > 0 ? static_cast<int>(v) : -static_cast<int>(v));
        }
        q.clauses.push_back(std::move(mapped));
    }
    q.validate();
    return q;
}

std::string print_qdimacs(const Qbf& q) {
    std::ostringstream out;
    const auto n = q.variables();
    out << "p cnf " << n << ' ' << q.clauses.size() << '\n';
    for (std::uint32_t i = n; i >= 1; --i)
        out << (q.quantifiers[i - 1] == Qbf::Quant::Exists ? 'e' : 'a') << ' ' << i
            << " 0\n";
    for (const auto& cl : q.clauses) {
        for (int lit : cl) out << lit << ' ';
        out << "0\n";
    }
    return out.str();
}

bool eval_qbf(const Qbf& q) {
    q.validate();
    const auto n = q.variables();
    require(n <= 20, "brute-force evaluation supports at most 20 variables");
    auto clause_true = [&](std::uint32_t assign, const std::vector<int>& cl) {
        for (int lit : cl) {
            bool bit = (assign >> (std::abs(lit) - 1)) & 1u;
            if (lit > 0 ? bit : !bit) return true;
        }
        return false;
    };
    std::function<bool(std::uint32_t, std::uint32_t)> go = [&](std::uint32_t i,
                                                               std::uint32_t assign) {
        if (i == 0) {
            for (const auto& cl : q.clauses)
                if (!clause_true(assign, cl)) return false;
            return true;
        }
        bool lo = go(i - 1, assign);
        bool hi = go(i - 1, assign | (1u << (i - 1)));
        return q.quantifiers[i - 1] == Qbf::Quant::Exists ? (lo || hi) : (lo && hi);
    };
    return go(n, 0);
}

namespace {

using Frag = EpsBuilder::Frag;

// the loop block shared by both sides: ( h_i (x_i + ~x_i) inner $ (x_i + ~x_i) )*
Frag level_loop(EpsBuilder& b, Frag inner, std::uint32_t hi, std::uint32_t xi,
                std::uint32_t nxi, std::uint32_t dollar) {
    Frag f = b.letter(hi);
    f = b.concat(f, b.letter_set({xi, nxi}));
    f = b.concat(f, inner);
    f = b.concat(f, b.letter(dollar));
    f = b.concat(f, b.letter_set({xi, nxi}));
    return b.star(f);
}

// fixed-polarity block: ( h_i lit (B_{i-1} minus other)* $ lit )*
Frag polarity_loop(EpsBuilder& b, std::uint32_t hi, std::uint32_t lit,
                   const std::vector<std::uint32_t>& b_prev_minus_other,
                   std::uint32_t dollar) {
    Frag f = b.letter(hi);
    f = b.concat(f, b.letter(lit));
    f = b.concat(f, b.star(b.letter_set(b_prev_minus_other)));
    f = b.concat(f, b.letter(dollar));
    f = b.concat(f, b.letter(lit));
    return b.star(f);
}

}  // namespace

QbfInstance build_qbf_languages(const Qbf& q) {
    q.validate();
    const std::uint32_t n = q.variables();

    std::vector<std::string> tokens;
    tokens.reserve(3 * std::size_t(n) + 1);
    for (std::uint32_t i = 1; i <= n; ++i) {
        tokens.push_back("x" + std::to_string(i));
        tokens.push_back("nx" + std::to_string(i));
    }
    for (std::uint32_t i = 1; i <= n; ++i) tokens.push_back("h" + std::to_string(i));
    tokens.push_back("dollar");

    QbfInstance inst;
    inst.qbf = q;
    inst.alphabet = Alphabet(std::move(tokens));
    auto xl = [&](std::uint32_t i) { return 2 * (i - 1); };
    auto nxl = [&](std::uint32_t i) { return 2 * (i - 1) + 1; };
    auto hl = [&](std::uint32_t i) { return 2 * n + (i - 1); };
    const std::uint32_t dollar = 3 * n;

    std::vector<std::uint32_t> b0;
    for (std::uint32_t i = 1; i <= n; ++i) {
        b0.push_back(xl(i));
        b0.push_back(nxl(i));
    }
    // letters of B_{i-1} for i >= 1 (B_0 has no separators)
    auto b_prev = [&](std::uint32_t i, std::uint32_t excluded) {
        std::vector<std::uint32_t> out;
        for (auto l : b0)
            if (l != excluded) out.push_back(l);
        if (i >= 2) {
            for (std::uint32_t j = 1; j + 1 <= i; ++j) out.push_back(hl(j));
            out.push_back(dollar);
        }
        return out;
    };

    EpsBuilder lb(inst.alphabet), pb(inst.alphabet);

    Frag l = lb.star(lb.letter_set(b0));
    inst.l_builder_states.push_back(lb.state_count());

    std::optional<Frag> lp;
    for (const auto& cl : q.clauses) {
        std::vector<std::uint32_t> letters;
        for (int lit : cl)
            letters.push_back(lit > 0 ? xl(static_cast<std::uint32_t>(lit))
                                      : nxl(static_cast<std::uint32_t>(-lit)));
        std::sort(letters.begin(), letters.end());
        letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
        Frag f = pb.letter_set(letters);
        lp = lp ? pb.concat(*lp, f) : f;
    }
    inst.lprime_builder_states.push_back(pb.state_count());

    for (std::uint32_t i = 1; i <= n; ++i) {
        l = lb.concat(level_loop(lb, l, hl(i), xl(i), nxl(i), dollar), lb.letter(hl(i)));
        inst.l_builder_states.push_back(lb.state_count());

        Frag core = level_loop(pb, *lp, hl(i), xl(i), nxl(i), dollar);
        if (q.quantifiers[i - 1] == Qbf::Quant::Exists) {
            // core h_i $ (T_i h_i + ~T_i h_i)
            Frag t = polarity_loop(pb, hl(i), xl(i), b_prev(i, nxl(i)), dollar);
            Frag tbar = polarity_loop(pb, hl(i), nxl(i), b_prev(i, xl(i)), dollar);
            Frag tail = pb.alt(pb.concat(t, pb.letter(hl(i))),
                               pb.concat(tbar, pb.letter(hl(i))));
            lp = pb.concat(pb.concat(pb.concat(core, pb.letter(hl(i))), pb.letter(dollar)),
                           tail);
        } else {
            // ~T_i h_i $ core h_i $ T_i h_i
            Frag t = polarity_loop(pb, hl(i), xl(i), b_prev(i, nxl(i)), dollar);
            Frag tbar = polarity_loop(pb, hl(i), nxl(i), b_prev(i, xl(i)), dollar);
            Frag f = pb.concat(pb.concat(tbar, pb.letter(hl(i))), pb.letter(dollar));
            f = pb.concat(pb.concat(f, core), pb.letter(hl(i)));
            f = pb.concat(f, pb.letter(dollar));
            f = pb.concat(pb.concat(f, t), pb.letter(hl(i)));
            lp = f;
        }
        inst.lprime_builder_states.push_back(pb.state_count());
    }

    inst.l = lb.to_nfa(l);
    inst.lprime = pb.to_nfa(*lp);
    return inst;
}

std::string pretty_letter(const std::string& token) {
    if (token == "dollar") return "$";
    if (token.size() >= 2 && token[0] == 'x') return "x_" + token.substr(1);
    if (token.size() >= 3 && token[0] == 'n' && token[1] == 'x') return "~x_" + token.substr(2);
    if (token.size() >= 2 && token[0] == 'h') return "#_" + token.substr(1);
    return token;
}

QbfCheckResult check_qbf_reduction(const Qbf& q, const Caps& caps) {
    QbfCheckResult r;
    try {
        QbfInstance inst = build_qbf_languages(q);
        r.truth = eval_qbf(q);
        Verdict v = st_separates(Level::parse("st-3/2", Basis::triv()), inst.l, inst.lprime,
                                 Strategy::TransitionMonoid, caps);
        r.separable = v.separable;
        bool ok = r.truth == !r.separable;
        r.status = ok ? QbfCheckResult::Status::Pass : QbfCheckResult::Status::Fail;
        r.note = std::string("truth=") + (r.truth ? "1" : "0") +
                 " separable=" + (r.separable ? "1" : "0");
    } catch (const resource_limit_error& e) {
        r.status = QbfCheckResult::Status::Skipped;
        r.note = e.what();
    }
    return r;
}

namespace {

Nfa lift_alphabet(const Nfa& n, const Alphabet& ext) {
    Nfa out = n;
    out.alphabet = ext;
    return out;
}

}  // namespace

BpolredInstance build_bpolred_instance(const Nfa& h, const Nfa& hprime) {
    require(h.alphabet.tokens() == hprime.alphabet.tokens(),
            "instance transform inputs must share an alphabet");

    BpolredInstance inst;
    inst.hash_token = "#";
    inst.dollar_token = "$";
    while (h.alphabet.contains(inst.hash_token)) {
        inst.hash_token = "_" + inst.hash_token;
        inst.renamed = true;
    }
    while (h.alphabet.contains(inst.dollar_token) || inst.dollar_token == inst.hash_token) {
        inst.dollar_token = "_" + inst.dollar_token;
        inst.renamed = true;
    }
    std::vector<std::string> tokens = h.alphabet.tokens();
    tokens.push_back(inst.hash_token);
    tokens.push_back(inst.dollar_token);
    inst.alphabet = Alphabet(std::move(tokens));
    const std::uint32_t hm = h.alphabet.size();
    const std::uint32_t dm = hm + 1;
    std::vector<std::uint32_t> base_letters(h.alphabet.size());
    for (std::uint32_t i = 0; i < h.alphabet.size(); ++i) base_letters[i] = i;

    // (A* $ #)*
    auto tail = [&](EpsBuilder& b) {
        Frag f = b.star(b.letter_set(base_letters));
        f = b.concat(f, b.letter(dm));
        f = b.concat(f, b.letter(hm));
        return b.star(f);
    };
    // # (H' # (A* $ #)*)*
    auto head = [&](EpsBuilder& b) {
        Frag f = b.embed(lift_alphabet(hprime, inst.alphabet));
        f = b.concat(f, b.letter(hm));
        f = b.concat(f, tail(b));
        return b.concat(b.letter(hm), b.star(f));
    };

    EpsBuilder lb(inst.alphabet);
    Frag f = head(lb);
    f = lb.concat(f, lb.embed(lift_alphabet(h, inst.alphabet)));
    f = lb.concat(f, lb.letter(hm));
    f = lb.concat(f, tail(lb));
    inst.l = lb.to_nfa(f);

    EpsBuilder pb(inst.alphabet);
    inst.lprime = pb.to_nfa(head(pb));
    return inst;
}

}  // namespace polsep
