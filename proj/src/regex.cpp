#include "polsep/regex.hpp"

#include <algorithm>

namespace polsep {

namespace {

struct Parser {
    const std::string& text;
    const Alphabet& a;
    std::size_t pos = 0;
    // alphabet tokens sorted by descending length for greedy matching
    std::vector<std::uint32_t> by_length;

    Parser(const std::string& t, const Alphabet& alpha) : text(t), a(alpha) {
        for (std::uint32_t i = 0; i < a.size(); ++i) by_length.push_back(i);
        std::sort(by_length.begin(), by_length.end(), [&](std::uint32_t x, std::uint32_t y) {
            if (a.token(x).size() != a.token(y).size())
                return a.token(x).size() > a.token(y).size();
            return a.token(x) < a.token(y);
        });
    }

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n'))
            ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
        throw input_error("regex: " + what + " at position " + std::to_string(pos));
    }

    RegexPtr parse() {
        auto e = expr();
        if (!at_end()) fail("trailing input");
        return e;
    }

    RegexPtr expr() {
        auto node = term();
        while (peek() == '+') {
            ++pos;
            auto rhs = term();
            if (node->kind != RegexNode::Kind::Union) {
                auto u = std::make_shared<RegexNode>();
                u->kind = RegexNode::Kind::Union;
                u->children = {node};
                node = u;
            }
            node->children.push_back(rhs);
        }
        return node;
    }

    bool starts_atom() {
        char c = peek();
        if (c == '\0' || c == ')' || c == '+' || c == '*' || c == ']' || c == ',') return false;
        return true;
    }

    RegexPtr term() {
        auto node = factor();
        while (starts_atom()) {
            auto rhs = factor();
            if (node->kind != RegexNode::Kind::Concat) {
                auto cat = std::make_shared<RegexNode>();
                cat->kind = RegexNode::Kind::Concat;
                cat->children = {node};
                node = cat;
            }
            node->children.push_back(rhs);
        }
        return node;
    }

    RegexPtr factor() {
        auto node = atom();
        while (peek() == '*') {
            ++pos;
            auto st = std::make_shared<RegexNode>();
            st->kind = RegexNode::Kind::Star;
            st->children = {node};
            node = st;
        }
        return node;
    }

    std::uint32_t quoted_letter() {
        ++pos;  // opening quote
        auto close = text.find('\'', pos);
        if (close == std::string::npos) fail("unterminated quoted letter");
        std::string tok = text.substr(pos, close - pos);
        pos = close + 1;
        auto idx = a.find(tok);
        if (idx == a.size()) fail("letter '" + tok + "' not in alphabet");
        return idx;
    }

    std::uint32_t bare_letter() {
        for (auto idx : by_length) {
            const auto& tok = a.token(idx);
            if (text.compare(pos, tok.size(), tok) == 0) {
                pos += tok.size();
                return idx;
            }
        }
        fail("no alphabet letter matches input");
    }

    RegexPtr atom() {
        char c = peek();
        if (c == '(') {
            ++pos;
            auto e = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos;
            return e;
        }
        if (c == '[') {
            ++pos;
            auto node = std::make_shared<RegexNode>();
            node->kind = RegexNode::Kind::LetterSet;
            while (true) {
                skip_ws();
                std::uint32_t l = (peek() == '\'') ? quoted_letter() : bare_letter();
                node->letters.push_back(l);
                char d = peek();
                if (d == ',') {
                    ++pos;
                    continue;
                }
                if (d == ']') {
                    ++pos;
                    break;
                }
                fail("expected ',' or ']' in letter set");
            }
            std::sort(node->letters.begin(), node->letters.end());
            node->letters.erase(std::unique(node->letters.begin(), node->letters.end()),
                                node->letters.end());
            return node;
        }
        if (text.compare(pos, 5, "_EPS_") == 0) {
            pos += 5;
            auto node = std::make_shared<RegexNode>();
            node->kind = RegexNode::Kind::Epsilon;
            return node;
        }
        auto node = std::make_shared<RegexNode>();
        node->kind = RegexNode::Kind::Letter;
        node->letters.push_back(c == '\'' ? quoted_letter() : bare_letter());
        return node;
    }
};

/// True when the token can appear unquoted without being misread.
bool token_needs_quotes(const std::string& tok) {
    for (char c : tok)
        if (c == '(' || c == ')' || c == '+' || c == '*' || c == '[' || c == ']' || c == ',' ||
            c == '\'' || c == ' ')
            return true;
    return tok == "_EPS_";
}

void print_node(const RegexNode& n, const Alphabet& a, std::string& out, bool parenthesize) {
    switch (n.kind) {
        case RegexNode::Kind::Epsilon:
            out += "_EPS_";
            break;
        case RegexNode::Kind::Letter: {
            const auto& tok = a.token(n.letters[0]);
            if (token_needs_quotes(tok))
                out += "'" + tok + "'";
            else
                out += tok;
            break;
        }
        case RegexNode::Kind::LetterSet: {
            out += '[';
            for (std::size_t i = 0; i < n.letters.size(); ++i) {
                if (i) out += ',';
                const auto& tok = a.token(n.letters[i]);
                if (token_needs_quotes(tok))
                    out += "'" + tok + "'";
                else
                    out += tok;
            }
            out += ']';
            break;
        }
        case RegexNode::Kind::Concat: {
            if (parenthesize) out += '(';
            for (const auto& c : n.children) print_node(*c, a, out, true);
            if (parenthesize) out += ')';
            break;
        }
        case RegexNode::Kind::Union: {
            if (parenthesize) out += '(';
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) out += '+';
                print_node(*n.children[i], a, out, true);
            }
            if (parenthesize) out += ')';
            break;
        }
        case RegexNode::Kind::Star: {
            std::string inner;
            print_node(*n.children[0], a, inner, true);
            out += inner;
            out += '*';
            break;
        }
    }
}

EpsBuilder::Frag build(const RegexNode& n, EpsBuilder& b) {
    switch (n.kind) {
        case RegexNode::Kind::Epsilon:
            return b.eps();
        case RegexNode::Kind::Letter:
            return b.letter(n.letters[0]);
        case RegexNode::Kind::LetterSet:
            return b.letter_set(n.letters);
        case RegexNode::Kind::Concat: {
            auto f = build(*n.children[0], b);
            for (std::size_t i = 1; i < n.children.size(); ++i)
                f = b.concat(f, build(*n.children[i], b));
            return f;
        }
        case RegexNode::Kind::Union: {
            auto f = build(*n.children[0], b);
            for (std::size_t i = 1; i < n.children.size(); ++i)
                f = b.alt(f, build(*n.children[i], b));
            return f;
        }
        case RegexNode::Kind::Star:
            return b.star(build(*n.children[0], b));
    }
    throw invariant_error("regex: unknown node kind");
}

}  // namespace

RegexPtr parse_regex_ast(const std::string& text, const Alphabet& a) {
    Parser p(text, a);
    return p.parse();
}

std::string print_regex(const RegexNode& node, const Alphabet& a) {
    std::string out;
    print_node(node, a, out, false);
    return out;
}

Nfa compile_regex(const RegexNode& node, const Alphabet& a) {
    EpsBuilder b(a);
    auto f = build(node, b);
    return b.to_nfa(f);
}

Nfa parse_regex(const std::string& text, const Alphabet& a) {
    return compile_regex(*parse_regex_ast(text, a), a);
}

}  // namespace polsep
