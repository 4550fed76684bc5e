#include "polsep/io.hpp"

#include <fstream>
#include <sstream>

namespace polsep {

const char* const kToolVersion = "polsep 0.1.0";

namespace {

std::uint32_t get_u32(const Json& j, const char* key) {
    require(j.contains(key), std::string("missing field '") + key + "'");
    const auto& v = j.at(key);
    require(v.is_number_unsigned(), std::string("field '") + key + "' must be a nonnegative integer");
    auto raw = v.get<std::uint64_t>();
    require(raw <= UINT32_MAX, std::string("field '") + key + "' is too large");
    return static_cast<std::uint32_t>(raw);
}

std::vector<std::uint32_t> get_u32_array(const Json& j, const char* key) {
    require(j.contains(key), std::string("missing field '") + key + "'");
    const auto& v = j.at(key);
    require(v.is_array(), std::string("field '") + key + "' must be an array");
    std::vector<std::uint32_t> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        require(e.is_number_unsigned(), std::string("field '") + key + "' must hold nonnegative integers");
        auto raw = e.get<std::uint64_t>();
        require(raw <= UINT32_MAX, std::string("field '") + key + "' holds a value that is too large");
        out.push_back(static_cast<std::uint32_t>(raw));
    }
    return out;
}

Alphabet alphabet_from_json(const Json& j) {
    require(j.contains("alphabet") && j.at("alphabet").is_array(),
            "missing or malformed 'alphabet'");
    std::vector<std::string> tokens;
    for (const auto& e : j.at("alphabet")) {
        require(e.is_string(), "'alphabet' must hold strings");
        tokens.push_back(e.get<std::string>());
    }
    return Alphabet(std::move(tokens));
}

}  // namespace

Json nfa_to_json(const Nfa& n) {
    Json j;
    j["alphabet"] = n.alphabet.tokens();
    j["states"] = n.states;
    j["initial"] = n.initial;
    j["final"] = n.final;
    Json trans = Json::array();
    for (const auto& t : n.transitions)
        trans.push_back(Json::array({t.from, n.alphabet.tokens()[t.letter], t.to}));
    j["transitions"] = std::move(trans);
    return j;
}

Nfa nfa_from_json(const Json& j) {
    Nfa n;
    n.alphabet = alphabet_from_json(j);
    n.states = get_u32(j, "states");
    n.initial = get_u32_array(j, "initial");
    n.final = get_u32_array(j, "final");
    require(j.contains("transitions") && j.at("transitions").is_array(),
            "missing or malformed 'transitions'");
    for (const auto& e : j.at("transitions")) {
        require(e.is_array() && e.size() == 3, "transitions must be [from, letter, to] triples");
        require(e[0].is_number_unsigned() && e[1].is_string() && e[2].is_number_unsigned(),
                "transitions must be [from, letter, to] triples");
        Transition t;
        t.from = static_cast<std::uint32_t>(e[0].get<std::uint64_t>());
        t.letter = n.alphabet.index(e[1].get<std::string>());
        t.to = static_cast<std::uint32_t>(e[2].get<std::uint64_t>());
        require(t.from < n.states && t.to < n.states, "transition endpoint out of range");
        n.transitions.push_back(t);
    }
    for (auto q : n.initial) require(q < n.states, "initial state out of range");
    for (auto q : n.final) require(q < n.states, "final state out of range");
    n.normalize();
    return n;
}

Json morphism_to_json(const RecognizedLanguage& rl) {
    const auto& m = rl.morphism.target;
    Json j;
    j["alphabet"] = rl.morphism.alphabet.tokens();
    j["size"] = m.size();
    j["unit"] = m.unit();
    Json rows = Json::array();
    for (std::uint32_t x = 0; x < m.size(); ++x) {
        Json row = Json::array();
        for (std::uint32_t y = 0; y < m.size(); ++y) row.push_back(m.mul(x, y));
        rows.push_back(std::move(row));
    }
    j["mul"] = std::move(rows);
    Json letters = Json::object();
    for (std::uint32_t l = 0; l < rl.morphism.alphabet.size(); ++l)
        letters[rl.morphism.alphabet.tokens()[l]] = rl.morphism.letter_image[l];
    j["letters"] = std::move(letters);
    j["accept"] = rl.accept;
    return j;
}

RecognizedLanguage morphism_from_json(const Json& j) {
    RecognizedLanguage rl;
    rl.morphism.alphabet = alphabet_from_json(j);
    auto size = get_u32(j, "size");
    auto unit = get_u32(j, "unit");
    require(j.contains("mul") && j.at("mul").is_array() && j.at("mul").size() == size,
            "'mul' must be a size x size table");
    std::vector<std::uint32_t> table;
    table.reserve(std::size_t(size) * size);
    for (const auto& row : j.at("mul")) {
        require(row.is_array() && row.size() == size, "'mul' must be a size x size table");
        for (const auto& e : row) {
            require(e.is_number_unsigned() && e.get<std::uint64_t>() < size,
                    "'mul' entry out of range");
            table.push_back(static_cast<std::uint32_t>(e.get<std::uint64_t>()));
        }
    }
    rl.morphism.target = Monoid::from_table(size, unit, std::move(table), true);
    require(j.contains("letters") && j.at("letters").is_object(),
            "missing or malformed 'letters'");
    rl.morphism.letter_image.assign(rl.morphism.alphabet.size(), 0);
    std::size_t seen = 0;
    for (const auto& [tok, img] : j.at("letters").items()) {
        require(rl.morphism.alphabet.contains(tok),
                "letter '" + tok + "' is not in the alphabet");
        require(img.is_number_unsigned() && img.get<std::uint64_t>() < size,
                "letter image out of range");
        rl.morphism.letter_image[rl.morphism.alphabet.index(tok)] =
            static_cast<std::uint32_t>(img.get<std::uint64_t>());
        ++seen;
    }
    require(seen == rl.morphism.alphabet.size(), "every letter needs an image");
    rl.accept = get_u32_array(j, "accept");
    rl.validate();
    return rl;
}

Json verdict_to_json(const Verdict& v) {
    Json j;
    j["separable"] = v.separable;
    j["level"] = v.level;
    j["strategy"] = v.strategy;
    Json w = Json::array();
    for (const auto& [s0, s1] : v.witnesses) w.push_back(Json::array({s0, s1}));
    j["witnesses"] = std::move(w);
    Json stats;
    stats["m_size"] = v.stats.m_size;
    stats["n_size"] = v.stats.n_size;
    stats["basis_size"] = v.stats.basis_size;
    stats["height"] = v.stats.height;
    stats["iterations"] = v.stats.iterations;
    stats["family_sets"] = v.stats.family_sets;
    stats["red_surviving"] = v.stats.red_surviving;
    stats["red_chain_strict"] = v.stats.red_chain_strict;
    stats["red_all_good"] = v.stats.red_all_good;
    stats["red_fixpoint"] = v.stats.red_fixpoint;
    j["stats"] = std::move(stats);
    return j;
}

namespace {

Json pol_certificate_to_json(const PolCertificate& c) {
    Json products = Json::array();
    for (const auto& p : c.products) {
        Json jp;
        Json blocks = Json::array();
        for (const auto& b : p.blocks) blocks.push_back(b);
        jp["blocks"] = std::move(blocks);
        jp["letters"] = p.letters;
        products.push_back(std::move(jp));
    }
    Json j;
    j["products"] = std::move(products);
    return j;
}

PolCertificate pol_certificate_from_json(const Json& j) {
    PolCertificate c;
    require(j.contains("products") && j.at("products").is_array(),
            "missing or malformed 'products'");
    for (const auto& jp : j.at("products")) {
        PolProduct p;
        require(jp.contains("blocks") && jp.at("blocks").is_array(),
                "missing or malformed 'blocks'");
        for (const auto& b : jp.at("blocks")) {
            require(b.is_array(), "'blocks' must hold arrays of class ids");
            std::vector<std::uint32_t> blk;
            for (const auto& e : b) {
                require(e.is_number_unsigned(), "block class ids must be nonnegative integers");
                blk.push_back(static_cast<std::uint32_t>(e.get<std::uint64_t>()));
            }
            p.blocks.push_back(std::move(blk));
        }
        require(jp.contains("letters") && jp.at("letters").is_array(),
                "missing or malformed 'letters'");
        for (const auto& e : jp.at("letters")) {
            require(e.is_string(), "'letters' must hold strings");
            p.letters.push_back(e.get<std::string>());
        }
        require(p.blocks.size() == p.letters.size() + 1,
                "certificate product needs one more block than letters");
        c.products.push_back(std::move(p));
    }
    return c;
}

Json cert_node_to_json(const CertNode& n) {
    Json j;
    switch (n.op) {
        case CertNode::Op::Leaf:
            j["op"] = "leaf";
            j["language"] = pol_certificate_to_json(n.leaf);
            return j;
        case CertNode::Op::And:
            j["op"] = "and";
            break;
        case CertNode::Op::Or:
            j["op"] = "or";
            break;
        case CertNode::Op::Not:
            j["op"] = "not";
            break;
    }
    Json kids = Json::array();
    for (const auto& k : n.children) kids.push_back(cert_node_to_json(*k));
    j["children"] = std::move(kids);
    return j;
}

CertNode cert_node_from_json(const Json& j) {
    require(j.contains("op") && j.at("op").is_string(), "certificate node needs an 'op'");
    auto op = j.at("op").get<std::string>();
    CertNode n;
    if (op == "leaf") {
        n.op = CertNode::Op::Leaf;
        require(j.contains("language"), "leaf node needs a 'language'");
        n.leaf = pol_certificate_from_json(j.at("language"));
        return n;
    }
    if (op == "and")
        n.op = CertNode::Op::And;
    else if (op == "or")
        n.op = CertNode::Op::Or;
    else if (op == "not")
        n.op = CertNode::Op::Not;
    else
        throw input_error("unknown certificate op '" + op + "'");
    require(j.contains("children") && j.at("children").is_array(),
            "junction node needs 'children'");
    for (const auto& k : j.at("children"))
        n.children.push_back(std::make_shared<CertNode>(cert_node_from_json(k)));
    require(!n.children.empty(), "junction node needs at least one child");
    require(n.op != CertNode::Op::Not || n.children.size() == 1,
            "'not' needs exactly one child");
    return n;
}

}  // namespace

Json certificate_to_json(const Certificate& c) {
    Json j;
    j["boolean"] = c.boolean;
    j["basis"] = c.basis.spec_string();
    j["root"] = cert_node_to_json(c.root);
    return j;
}

Certificate certificate_from_json(const Json& j) {
    Certificate c;
    require(j.contains("boolean") && j.at("boolean").is_boolean(),
            "certificate needs a 'boolean' flag");
    c.boolean = j.at("boolean").get<bool>();
    require(j.contains("basis") && j.at("basis").is_string(), "certificate needs a 'basis'");
    c.basis = Basis::parse(j.at("basis").get<std::string>());
    require(c.basis.kind != BasisKind::User,
            "certificates over user bases are not supported");
    require(j.contains("root"), "certificate needs a 'root'");
    c.root = cert_node_from_json(j.at("root"));
    return c;
}

Json tagging_to_json(const Tagging& t) {
    Json j;
    j["size"] = t.t.size();
    j["unit"] = t.t.unit();
    Json rows = Json::array();
    for (std::uint32_t x = 0; x < t.t.size(); ++x) {
        Json row = Json::array();
        for (std::uint32_t y = 0; y < t.t.size(); ++y) row.push_back(t.t.mul(x, y));
        rows.push_back(std::move(row));
    }
    j["mul"] = std::move(rows);
    j["tau0"] = t.tau0;
    j["tau1"] = t.tau1;
    j["tags"] = t.g;
    return j;
}

Tagging tagging_from_json(const Json& j) {
    Tagging t;
    auto size = get_u32(j, "size");
    auto unit = get_u32(j, "unit");
    require(j.contains("mul") && j.at("mul").is_array() && j.at("mul").size() == size,
            "'mul' must be a size x size table");
    std::vector<std::uint32_t> table;
    table.reserve(std::size_t(size) * size);
    for (const auto& row : j.at("mul")) {
        require(row.is_array() && row.size() == size, "'mul' must be a size x size table");
        for (const auto& e : row) {
            require(e.is_number_unsigned() && e.get<std::uint64_t>() < size,
                    "'mul' entry out of range");
            table.push_back(static_cast<std::uint32_t>(e.get<std::uint64_t>()));
        }
    }
    t.t = Monoid::from_table(size, unit, std::move(table), false);
    t.tau0 = get_u32(j, "tau0");
    t.tau1 = get_u32(j, "tau1");
    t.g = get_u32_array(j, "tags");
    t.validate();
    return t;
}

Json make_manifest(std::uint64_t seed, const Caps& caps,
                   const std::vector<ManifestInput>& inputs) {
    Json j;
    j["tool"] = kToolVersion;
    j["seed"] = seed;
    Json jcaps;
    jcaps["monoid"] = caps.monoid_cap;
    jcaps["det"] = caps.det_cap;
    jcaps["family"] = caps.family_cap;
    jcaps["naive"] = caps.naive_cap;
    j["caps"] = std::move(jcaps);
    Json jin = Json::array();
    for (const auto& in : inputs) {
        Json e;
        e["path"] = in.path;
        e["digest"] = to_hex(in.digest);
        jin.push_back(std::move(e));
    }
    j["inputs"] = std::move(jin);
    return j;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    require(!in.bad(), "failed reading '" + path + "'");
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    require(out.good(), "cannot write '" + path + "'");
    out << bytes;
    out.flush();
    require(out.good(), "failed writing '" + path + "'");
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace polsep
