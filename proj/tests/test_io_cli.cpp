#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "polsep/corpus.hpp"
#include "polsep/io.hpp"
#include "polsep/regex.hpp"
#include "polsep/separation.hpp"

using namespace polsep;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("polsep-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

/// Runs the built CLI (path from POLSEP_BIN) and returns its exit code.
int run_cli(const std::string& args, const std::string& stdout_to = "/dev/null") {
    const char* bin = std::getenv("POLSEP_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " > " + stdout_to + " 2>/dev/null";
    int ret = std::system(cmd.c_str());
    REQUIRE(ret != -1);
    return WEXITSTATUS(ret);
}

}  // namespace

TEST_CASE("nfa json round trip") {
    const Alphabet ab = two_letter_alphabet();
    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        Nfa n = random_nfa(rng, 4, ab, 8);
        Json j = nfa_to_json(n);
        Nfa back = nfa_from_json(j);
        CHECK(equivalent(n, back));
        CHECK(dump_json(nfa_to_json(back)) == dump_json(j));
    }
    Json j = nfa_to_json(nfa_word(ab, {0, 1}));
    j["transitions"][0][0] = 99;  // endpoint out of range
    CHECK_THROWS_AS(nfa_from_json(j), input_error);
}

TEST_CASE("morphism json round trip") {
    const Alphabet ab = two_letter_alphabet();
    RecognizedLanguage rl = transition_monoid(parse_regex("a(a+b)*", ab));
    Json j = morphism_to_json(rl);
    RecognizedLanguage back = morphism_from_json(j);
    CHECK(dump_json(morphism_to_json(back)) == dump_json(j));
    CHECK(equivalent(morphism_to_nfa(rl), morphism_to_nfa(back)));

    Json broken = j;
    broken["letters"].erase("a");
    CHECK_THROWS_AS(morphism_from_json(broken), input_error);
}

TEST_CASE("certificate json round trip") {
    Certificate c;
    c.boolean = true;
    c.basis = Basis::at();
    c.root.op = CertNode::Op::And;
    auto leaf = std::make_shared<CertNode>();
    leaf->op = CertNode::Op::Leaf;
    PolProduct p;
    p.blocks = {{0, 2}, {1}};
    p.letters = {"a"};
    leaf->leaf.products.push_back(p);
    auto neg = std::make_shared<CertNode>();
    neg->op = CertNode::Op::Not;
    neg->children.push_back(leaf);
    c.root.children = {leaf, neg};

    Json j = certificate_to_json(c);
    Certificate back = certificate_from_json(j);
    CHECK(dump_json(certificate_to_json(back)) == dump_json(j));
    CHECK(back.boolean);
    CHECK(back.root.children.size() == 2);
}

TEST_CASE("tagging json round trip") {
    Tagging t = cyclic_tagging(4);
    Json j = tagging_to_json(t);
    Tagging back = tagging_from_json(j);
    CHECK(dump_json(tagging_to_json(back)) == dump_json(j));
    CHECK(back.rank() == 4);
}

TEST_CASE("verdicts serialize without wall time") {
    const Alphabet ab = two_letter_alphabet();
    Verdict v = st_separates(Level::parse("st-1/2", Basis::triv()),
                             parse_regex("a", ab), parse_regex("b", ab),
                             Strategy::TransitionMonoid, Caps{});
    v.stats.wall_ms = 123.0;
    Json j = verdict_to_json(v);
    CHECK(j.contains("separable"));
    CHECK(j.contains("level"));
    CHECK(j.contains("strategy"));
    CHECK(j.contains("stats"));
    CHECK_FALSE(j["stats"].contains("wall_ms"));
    CHECK(dump_json(j).back() == '\n');
}

TEST_CASE("manifests are deterministic") {
    Caps caps;
    Json a = make_manifest(7, caps, {{"x", fnv64("bytes")}});
    Json b = make_manifest(7, caps, {{"x", fnv64("bytes")}});
    CHECK(dump_json(a) == dump_json(b));
    CHECK(a.contains("tool"));
    CHECK(a["seed"] == 7);
    // frozen FNV-1a offset basis for the empty string
    CHECK(fnv64("") == 0xcbf29ce484222325ull);
}

TEST_CASE("cli separate verdicts and exit codes") {
    TempDir tmp;
    const Alphabet ab = two_letter_alphabet();
    std::string a_nfa = tmp.file("a.nfa"), b_nfa = tmp.file("b.nfa");
    write_file(a_nfa, dump_json(nfa_to_json(parse_regex("a(a+b)*", ab))));
    write_file(b_nfa, dump_json(nfa_to_json(parse_regex("b(a+b)*", ab))));

    // no piecewise-testable or shuffle-ideal separator exists for these two
    CHECK(run_cli("separate --level st-1/2 " + a_nfa + " " + b_nfa) == 3);
    CHECK(run_cli("separate --level st-1 " + a_nfa + " " + b_nfa) == 3);
    CHECK(run_cli("separate --level st-3/2 " + a_nfa + " " + b_nfa) == 0);
    CHECK(run_cli("separate --level st-2 " + a_nfa + " " + b_nfa) == 0);

    // same nonempty language on both sides
    CHECK(run_cli("separate --level st-2 " + a_nfa + " " + a_nfa) == 3);

    // a missing file is not a valid regex either
    CHECK(run_cli("separate --level st-1/2 " + tmp.file("missing.nfa") + " " + b_nfa) ==
          1);

    // regex inputs work directly
    CHECK(run_cli("separate --level st-1/2 'ab' 'ba'") == 0);

    // caps produce the resource exit code
    CHECK(run_cli("separate --level st-1/2 --cap-monoid 2 " + a_nfa + " " + b_nfa) == 2);
}

TEST_CASE("cli outputs embed manifests and rerun byte-identically") {
    TempDir tmp;
    const Alphabet ab = two_letter_alphabet();
    std::string a_nfa = tmp.file("a.nfa"), b_nfa = tmp.file("b.nfa");
    write_file(a_nfa, dump_json(nfa_to_json(parse_regex("a(a+b)*", ab))));
    write_file(b_nfa, dump_json(nfa_to_json(parse_regex("b(a+b)*", ab))));

    std::string v1 = tmp.file("v1.json"), v2 = tmp.file("v2.json");
    CHECK(run_cli("separate --level st-3/2 --out " + v1 + " " + a_nfa + " " + b_nfa) ==
          0);
    CHECK(run_cli("separate --level st-3/2 --out " + v2 + " " + a_nfa + " " + b_nfa) ==
          0);
    std::string c1 = read_file(v1), c2 = read_file(v2);
    CHECK(c1 == c2);
    Json j = Json::parse(c1);
    CHECK(j.contains("manifest"));
    CHECK(j["manifest"].contains("inputs"));
    CHECK(j["verdict"]["separable"] == true);
}

TEST_CASE("cli monoid stats") {
    TempDir tmp;
    std::string out = tmp.file("m.json");
    CHECK(run_cli("monoid '(aa)*' --out " + out) == 0);
    Json j = Json::parse(read_file(out));
    CHECK(j["stats"]["size"] == 2);
    CHECK(j["stats"]["idempotents"] == 1);
    // the two-element group sits on a single division chain
    CHECK(j["stats"]["j_depth"] == 2);

    std::string out2 = tmp.file("m2.json");
    CHECK(run_cli("monoid '(a+b)*' --out " + out2) == 0);
    CHECK(Json::parse(read_file(out2))["stats"]["size"] == 1);
}

TEST_CASE("cli reduce emits size-checked artifacts") {
    TempDir tmp;
    std::string out = tmp.file("red.json");
    CHECK(run_cli("reduce a b --out " + out) == 0);
    Json j = Json::parse(read_file(out));
    CHECK(j["inputs"].size() == 2);
    for (const auto& side : j["inputs"]) CHECK(side["size_bound"]["ok"] == true);
    CHECK(j.contains("tagging"));
    CHECK(j.contains("manifest"));
}

TEST_CASE("cli qbf gen and check") {
    TempDir tmp;
    std::string q = tmp.file("f.qdimacs");
    write_file(q, "p cnf 1 1\ne 1 0\n1 0\n");

    std::string gen = tmp.file("gen.json");
    CHECK(run_cli("qbf gen " + q + " --out " + gen) == 0);
    Json j = Json::parse(read_file(gen));
    CHECK(j.contains("l"));
    CHECK(j.contains("lprime"));
    CHECK(j.contains("letters"));
    CHECK(j["variables"] == 1);

    CHECK(run_cli("qbf check " + q) == 0);

    std::string bad = tmp.file("bad.qdimacs");
    write_file(bad, "p cnf 1 1\n1 0\n");
    CHECK(run_cli("qbf check " + bad) == 1);  // parse error -> usage
}

TEST_CASE("cli certify validates and rejects") {
    TempDir tmp;
    Certificate up_a;
    up_a.basis = Basis::triv();
    up_a.root.op = CertNode::Op::Leaf;
    PolProduct p;
    p.blocks = {{0}, {0}};
    p.letters = {"a"};
    up_a.root.leaf.products.push_back(p);
    std::string cert = tmp.file("cert.json");
    write_file(cert, dump_json(certificate_to_json(up_a)));

    CHECK(run_cli("certify " + cert + " a 'b*'") == 0);
    CHECK(run_cli("certify " + cert + " b 'b*'") == 3);
}

TEST_CASE("cli selftest quick suites") {
    CHECK(run_cli("selftest --suite discipline --quick") == 0);
    CHECK(run_cli("selftest --criterion 10 --quick") == 0);
    CHECK(run_cli("selftest --suite nope") == 1);
}

TEST_CASE("cli bench emits csv") {
    TempDir tmp;
    std::string out = tmp.file("bench.csv");
    CHECK(run_cli("bench --sizes 2 --count 2 --out " + out) == 0);
    std::string csv = read_file(out);
    CHECK(csv.find("max_states,instance,level,product_size,sets,wall_ms") !=
          std::string::npos);
    CHECK(csv.find("st-1/2") != std::string::npos);
}
