#include <CLI11.hpp>

#include <cctype>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "polsep/corpus.hpp"
#include "polsep/io.hpp"
#include "polsep/monoid.hpp"
#include "polsep/qbf.hpp"
#include "polsep/reduction.hpp"
#include "polsep/regex.hpp"
#include "polsep/selftest.hpp"
#include "polsep/separation.hpp"
#include "polsep/trees.hpp"

namespace ps = polsep;

namespace {

constexpr int kExitSeparable = 0;
constexpr int kExitUsage = 1;
constexpr int kExitResource = 2;
constexpr int kExitInseparable = 3;
constexpr int kExitCheckFailed = 4;

struct CommonOpts {
    std::string level = "st-1/2";
    std::string basis = "triv";
    std::string strategy = "tm";
    std::uint64_t cap_monoid = 0;
    std::uint64_t cap_det = 0;
    std::uint64_t budget_ms = 0;
    std::uint64_t seed = 20240801;
    std::string out;
    std::string format = "text";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_level = true) {
    if (with_level)
        cmd->add_option("--level", o.level,
                        "level: st-1/2, st-1, st-3/2, st-2, pol, bpol");
    cmd->add_option("--basis", o.basis, "basis spec: triv, at, at:<letters>, user:<path>");
    cmd->add_option("--cap-monoid", o.cap_monoid, "monoid size cap");
    cmd->add_option("--cap-det", o.cap_det, "determinization state cap");
    cmd->add_option("--budget-ms", o.budget_ms, "wall-clock budget in milliseconds");
    cmd->add_option("--seed", o.seed, "seed recorded in the output manifest");
    cmd->add_option("--out", o.out, "write the JSON result to this path");
    cmd->add_option("--format", o.format, "console format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
}

ps::Caps caps_from(const CommonOpts& o) {
    ps::Caps c;
    if (o.cap_monoid) c.monoid_cap = o.cap_monoid;
    if (o.cap_det) c.det_cap = o.cap_det;
    if (o.budget_ms) c = ps::Caps::with_budget_ms(o.budget_ms, c);
    return c;
}

/// Single-character letter pre-scan for inline regexes: every alphanumeric
/// character (plus # $ ~ _) outside the _EPS_ keyword becomes a one-character
/// letter token. Multi-character tokens require file inputs.
ps::Alphabet scan_regex_alphabet(const std::vector<std::string>& texts) {
    std::set<char> chars;
    for (const auto& t : texts) {
        std::string s = t;
        for (std::size_t p; (p = s.find("_EPS_")) != std::string::npos;) s.erase(p, 5);
        for (char c : s)
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '#' || c == '$' ||
                c == '_' || c == '~')
                chars.insert(c);
    }
    std::vector<std::string> toks;
    toks.reserve(chars.size());
    for (char c : chars) toks.emplace_back(1, c);
    if (toks.empty()) toks = {"a"};  // degenerate regex like "()" still needs letters
    return ps::Alphabet(std::move(toks));
}

struct LoadedInput {
    ps::SepInput value;
    ps::ManifestInput manifest;
};

const ps::Alphabet& alphabet_of(const ps::SepInput& v) {
    if (std::holds_alternative<ps::Nfa>(v)) return std::get<ps::Nfa>(v).alphabet;
    return std::get<ps::RecognizedLanguage>(v).morphism.alphabet;
}

/// Loads one separation input: an existing file is parsed as JSON (a "mul"
/// field selects the morphism format, anything else the NFA format); other
/// arguments are parsed as regexes over `hint` or over their own letter scan.
LoadedInput load_input(const std::string& arg, const ps::Alphabet* hint,
                       const std::vector<std::string>& regex_pool) {
    LoadedInput li;
    if (std::filesystem::exists(arg)) {
        std::string bytes = ps::read_file(arg);
        li.manifest = {arg, ps::fnv64(bytes)};
        ps::Json j = ps::Json::parse(bytes);
        if (j.contains("mul"))
            li.value = ps::morphism_from_json(j);
        else
            li.value = ps::nfa_from_json(j);
        return li;
    }
    ps::Alphabet a = hint ? *hint : scan_regex_alphabet(regex_pool);
    li.manifest = {"regex:" + arg, ps::fnv64(arg)};
    li.value = ps::parse_regex(arg, a);
    return li;
}

/// `extra_tokens` only widens an *inferred* alphabet (both inputs inline
/// regexes); explicit file alphabets stay authoritative.
std::pair<LoadedInput, LoadedInput> load_pair(const std::string& a1, const std::string& a2,
                                              const std::vector<std::string>& extra_tokens = {}) {
    const bool f1 = std::filesystem::exists(a1), f2 = std::filesystem::exists(a2);
    std::vector<std::string> pool;
    if (!f1) pool.push_back(a1);
    if (!f2) pool.push_back(a2);
    if (f1) {
        LoadedInput first = load_input(a1, nullptr, {});
        LoadedInput second = load_input(a2, &alphabet_of(first.value), pool);
        return {std::move(first), std::move(second)};
    }
    if (f2) {
        LoadedInput second = load_input(a2, nullptr, {});
        LoadedInput first = load_input(a1, &alphabet_of(second.value), pool);
        return {std::move(first), std::move(second)};
    }
    ps::Alphabet scanned = scan_regex_alphabet(pool);
    std::set<std::string> toks(extra_tokens.begin(), extra_tokens.end());
    for (std::uint32_t i = 0; i < scanned.size(); ++i) toks.insert(scanned.token(i));
    ps::Alphabet joint(std::vector<std::string>(toks.begin(), toks.end()));
    LoadedInput first = load_input(a1, &joint, pool);
    LoadedInput second = load_input(a2, &joint, pool);
    return {std::move(first), std::move(second)};
}

void emit(const CommonOpts& o, const ps::Json& j, const std::string& text_form) {
    if (!o.out.empty()) ps::write_file(o.out, ps::dump_json(j));
    if (o.format == "json")
        std::cout << ps::dump_json(j);
    else
        std::cout << text_form;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

int run_separate(const CommonOpts& o, const std::string& in1, const std::string& in2) {
    ps::Caps caps = caps_from(o);
    auto [a, b] = load_pair(in1, in2);
    ps::Level level = ps::Level::parse(o.level, ps::Basis::parse(o.basis));
    auto t0 = std::chrono::steady_clock::now();
    ps::Verdict v = ps::st_separates(level, a.value, b.value,
                                     ps::parse_strategy(o.strategy), caps);
    v.stats.wall_ms = ms_since(t0);

    ps::Json j;
    j["manifest"] = ps::make_manifest(o.seed, caps, {a.manifest, b.manifest});
    j["verdict"] = ps::verdict_to_json(v);

    std::ostringstream t;
    t << "verdict: " << (v.separable ? "separable" : "inseparable") << "\n"
      << "level: " << v.level << "\n"
      << "strategy: " << v.strategy << "\n";
    if (!v.witnesses.empty()) {
        t << "witnesses:";
        std::size_t shown = 0;
        for (const auto& [s0, s1] : v.witnesses) {
            if (shown++ == 8) {
                t << " ... (" << v.witnesses.size() << " total)";
                break;
            }
            t << " (" << s0 << "," << s1 << ")";
        }
        t << "\n";
    }
    t << "stats: product " << v.stats.m_size << ", codomain " << v.stats.n_size
      << ", basis " << v.stats.basis_size << ", height " << v.stats.height
      << ", iterations " << v.stats.iterations << ", sets " << v.stats.family_sets
      << "\n"
      << "wall: " << v.stats.wall_ms << " ms\n";
    emit(o, j, t.str());
    return v.separable ? kExitSeparable : kExitInseparable;
}

int run_monoid(const CommonOpts& o, const std::string& in) {
    ps::Caps caps = caps_from(o);
    LoadedInput li = load_input(in, nullptr, {in});
    ps::check(std::holds_alternative<ps::Nfa>(li.value),
              "monoid expects an NFA or regex input");
    ps::Nfa n = std::get<ps::Nfa>(li.value);
    // A regex names a language, not a machine: canonicalize to the minimal
    // DFA so the stats describe the syntactic monoid. Explicit NFA files are
    // taken as given.
    if (li.manifest.path.rfind("regex:", 0) == 0)
        n = ps::minimize_dfa(ps::determinize(n, caps));
    ps::RecognizedLanguage rl = ps::transition_monoid(n, caps);

    ps::Json j = ps::morphism_to_json(rl);
    j["stats"] = {{"size", rl.morphism.target.size()},
                  {"idempotents", ps::idempotents(rl.morphism.target).size()},
                  {"j_depth", ps::j_depth(rl.morphism.target)}};
    j["manifest"] = ps::make_manifest(o.seed, caps, {li.manifest});

    std::ostringstream t;
    t << "monoid size: " << rl.morphism.target.size() << "\n"
      << "idempotents: " << ps::idempotents(rl.morphism.target).size() << "\n"
      << "j-depth: " << ps::j_depth(rl.morphism.target) << "\n";
    emit(o, j, t.str());
    return 0;
}

ps::Json transitions_json(const std::vector<ps::Transition>& ts, const ps::Alphabet& a) {
    ps::Json arr = ps::Json::array();
    for (const auto& t : ts) arr.push_back({t.from, a.token(t.letter), t.to});
    return arr;
}

int run_reduce(const CommonOpts& o, const std::string& in1, const std::string& in2) {
    ps::Caps caps = caps_from(o);
    auto [a, b] = load_pair(in1, in2);
    ps::check(std::holds_alternative<ps::Nfa>(a.value) &&
                  std::holds_alternative<ps::Nfa>(b.value),
              "reduce expects NFA or regex inputs");
    const ps::Nfa& n1 = std::get<ps::Nfa>(a.value);
    const ps::Nfa& n2 = std::get<ps::Nfa>(b.value);
    ps::Level level = ps::Level::parse(o.level, ps::Basis::parse(o.basis));
    ps::ReductionArtifacts art = ps::reduce_instance(n1, n2, level, caps);

    auto side = [&](const ps::RelabeledNfa& r, const ps::RecognizedLanguage& lang,
                    const ps::Nfa& orig) {
        const std::uint64_t nt = art.tagging.t.size(), na = r.base_alphabet.size(),
                            nq = orig.states;
        const std::uint64_t bound = nt + na * nt * nt * (nq * nq + 2);
        ps::Json s;
        s["transition_order"] = transitions_json(r.transition_order, r.base_alphabet);
        s["tags"] = r.tags;
        s["language_monoid"] = ps::morphism_to_json(lang);
        s["size_bound"] = {{"expected", bound},
                           {"actual", lang.morphism.target.size()},
                           {"ok", lang.morphism.target.size() == bound}};
        return s;
    };

    ps::Json j;
    j["level"] = level.name();
    j["tagging"] = ps::tagging_to_json(art.tagging);
    j["inputs"] = {side(art.relabeled1, art.language1, n1),
                   side(art.relabeled2, art.language2, n2)};
    j["extended_alphabet"] = art.extended.extended_alphabet.tokens();
    j["tag_letters"] = {art.extended.tag_letters[0], art.extended.tag_letters[1]};
    j["product_size"] = art.product.cm.morphism.target.size();
    j["manifest"] = ps::make_manifest(o.seed, caps, {a.manifest, b.manifest});

    std::ostringstream t;
    t << "tagging: cyclic, rank " << art.tagging.rank() << "\n"
      << "language monoids: " << art.language1.morphism.target.size() << ", "
      << art.language2.morphism.target.size() << " (size bounds hold)\n"
      << "compatible product: " << art.product.cm.morphism.target.size() << "\n";
    emit(o, j, t.str());
    return 0;
}

int run_qbf_gen(const CommonOpts& o, const std::string& in) {
    ps::Caps caps = caps_from(o);
    std::string bytes = ps::read_file(in);
    ps::Qbf q = ps::parse_qdimacs(bytes);
    ps::QbfInstance ql = ps::build_qbf_languages(q);

    ps::Json j;
    j["formula"] = ps::print_qdimacs(q);
    const auto n = q.quantifiers.size();
    j["variables"] = n;
    j["variable_order"] =
        "index 1 is the innermost variable; the QDIMACS prefix lists outermost first";
    ps::Json letters = ps::Json::object();
    for (std::size_t i = 1; i <= n; ++i) {
        std::string k = std::to_string(i);
        letters[k] = {{"positive", "x" + k},
                      {"negative", "nx" + k},
                      {"marker", "h" + k}};
    }
    letters["separator"] = "dollar";
    j["letters"] = letters;
    j["l"] = ps::nfa_to_json(ql.l);
    j["lprime"] = ps::nfa_to_json(ql.lprime);
    j["builder_states"] = {{"l", ql.l_builder_states}, {"lprime", ql.lprime_builder_states}};
    j["manifest"] = ps::make_manifest(o.seed, caps, {{in, ps::fnv64(bytes)}});

    std::ostringstream t;
    t << "formula: " << ps::print_qdimacs(q).substr(0, 60) << "\n"
      << "l: " << ql.l.states << " states, " << ql.l.transitions.size()
      << " transitions\n"
      << "lprime: " << ql.lprime.states << " states, " << ql.lprime.transitions.size()
      << " transitions\n";
    emit(o, j, t.str());
    return 0;
}

int run_qbf_check(const CommonOpts& o, const std::string& in) {
    ps::Caps caps = caps_from(o);
    std::string bytes = ps::read_file(in);
    ps::Qbf q = ps::parse_qdimacs(bytes);
    ps::QbfCheckResult res = ps::check_qbf_reduction(q, caps);

    const char* status = res.status == ps::QbfCheckResult::Status::Pass     ? "PASS"
                         : res.status == ps::QbfCheckResult::Status::Fail   ? "FAIL"
                                                                            : "SKIPPED";
    ps::Json j;
    j["status"] = status;
    j["note"] = res.note;
    j["manifest"] = ps::make_manifest(o.seed, caps, {{in, ps::fnv64(bytes)}});
    emit(o, j, std::string(status) + ": " + res.note + "\n");
    switch (res.status) {
        case ps::QbfCheckResult::Status::Pass:
            return 0;
        case ps::QbfCheckResult::Status::Fail:
            return kExitCheckFailed;
        default:
            return kExitResource;
    }
}

int run_certify(const CommonOpts& o, const std::string& cert_path, const std::string& in1,
                const std::string& in2) {
    ps::Caps caps = caps_from(o);
    std::string bytes = ps::read_file(cert_path);
    ps::Certificate cert = ps::certificate_from_json(ps::Json::parse(bytes));
    // Inline regexes infer their alphabet from a letter scan; the certificate
    // may legitimately mention letters the regexes never use, so widen the
    // inferred alphabet with them.
    std::vector<std::string> cert_letters;
    std::function<void(const ps::CertNode&)> collect = [&](const ps::CertNode& node) {
        for (const auto& p : node.leaf.products)
            for (const auto& tok : p.letters) cert_letters.push_back(tok);
        for (const auto& child : node.children) collect(*child);
    };
    collect(cert.root);
    auto [a, b] = load_pair(in1, in2, cert_letters);
    ps::check(std::holds_alternative<ps::Nfa>(a.value) &&
                  std::holds_alternative<ps::Nfa>(b.value),
              "certify expects NFA or regex language inputs");
    bool ok = ps::verify_certificate(cert, std::get<ps::Nfa>(a.value),
                                     std::get<ps::Nfa>(b.value), caps);

    ps::Json j;
    j["valid"] = ok;
    j["boolean"] = cert.boolean;
    j["basis"] = cert.basis.spec_string();
    j["manifest"] = ps::make_manifest(
        o.seed, caps, {{cert_path, ps::fnv64(bytes)}, a.manifest, b.manifest});
    emit(o, j, std::string("certificate: ") + (ok ? "valid" : "invalid") + "\n");
    return ok ? 0 : kExitInseparable;
}

int run_selftest(const CommonOpts& o, const std::string& suite,
                 std::vector<int> criteria, bool quick) {
    static const std::map<std::string, std::vector<int>> suites = {
        {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
        {"oracle", {1, 2}},
        {"verdicts", {3, 4}},
        {"strategies", {5}},
        {"reduction", {6, 8}},
        {"qbf", {7}},
        {"discipline", {9}},
        {"certificates", {10}}};
    if (criteria.empty()) {
        auto it = suites.find(suite);
        if (it == suites.end()) {
            std::cerr << "error: unknown suite '" << suite << "'\n";
            return kExitUsage;
        }
        criteria = it->second;
    }

    ps::SelftestConfig cfg;
    cfg.seed = o.seed;
    cfg.caps = caps_from(o);
    cfg.quick = quick;
    cfg.progress = [](const std::string& line) { std::cerr << line << "\n"; };

    bool all_pass = true;
    ps::Json rows = ps::Json::array();
    for (int id : criteria) {
        ps::CriterionResult r = ps::run_criterion(id, cfg);
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": "
                  << r.name << " (" << r.detail << ")\n"
                  << std::flush;
        rows.push_back({{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"checked", r.checked},
                        {"skipped", r.skipped},
                        {"detail", r.detail}});
    }
    if (!o.out.empty()) {
        ps::Json j;
        j["criteria"] = rows;
        j["manifest"] = ps::make_manifest(o.seed, cfg.caps, {});
        ps::write_file(o.out, ps::dump_json(j));
    }
    return all_pass ? 0 : kExitCheckFailed;
}

int run_bench(const CommonOpts& o, std::vector<std::uint32_t> sizes,
              std::uint32_t count) {
    ps::Caps caps = caps_from(o);
    if (sizes.empty()) sizes = {2, 3, 4};
    std::ostringstream csv;
    csv << "# " << ps::kToolVersion << " seed=" << o.seed << "\n"
        << "max_states,instance,level,product_size,sets,wall_ms\n";
    const ps::Alphabet ab = ps::two_letter_alphabet();
    for (auto sz : sizes) {
        ps::Rng rng(o.seed + sz);
        for (std::uint32_t i = 0; i < count; ++i) {
            ps::Nfa n1 = ps::random_nfa(rng, sz, ab, 2 * sz);
            ps::Nfa n2 = ps::random_nfa(rng, sz, ab, 2 * sz);
            for (const char* lv : {"st-1/2", "st-1"}) {
                auto t0 = std::chrono::steady_clock::now();
                ps::Verdict v =
                    ps::st_separates(ps::Level::parse(lv, ps::Basis::triv()), n1, n2,
                                     ps::Strategy::TransitionMonoid, caps);
                csv << sz << "," << i << "," << lv << "," << v.stats.m_size << ","
                    << v.stats.family_sets << "," << ms_since(t0) << "\n";
            }
        }
    }
    if (!o.out.empty())
        ps::write_file(o.out, csv.str());
    else
        std::cout << csv.str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"separation deciders for low concatenation-hierarchy levels"};
    app.require_subcommand(1);
    app.footer(
        "exit codes: 0 separable/valid/pass, 1 usage error, 2 resource cap,\n"
        "            3 inseparable/invalid, 4 check failed");

    CommonOpts o;
    std::string in1, in2, in3;

    auto* sep = app.add_subcommand("separate", "decide separability of two languages");
    sep->add_option("input1", in1, "NFA file, morphism file, or regex")->required();
    sep->add_option("input2", in2, "NFA file, morphism file, or regex")->required();
    sep->add_option("--strategy", o.strategy, "tm (transition monoid) or tag (reduction)")
        ->check(CLI::IsMember({"tm", "tag"}));
    add_common(sep, o);

    auto* mon = app.add_subcommand("monoid", "export the transition monoid of an NFA");
    mon->add_option("input", in1, "NFA file or regex")->required();
    add_common(mon, o, false);

    auto* red = app.add_subcommand("reduce", "emit the monoid-side instance of a pair");
    red->add_option("input1", in1, "NFA file or regex")->required();
    red->add_option("input2", in2, "NFA file or regex")->required();
    add_common(red, o);

    auto* qbf = app.add_subcommand("qbf", "hardness instances from quantified formulas");
    qbf->require_subcommand(1);
    auto* qgen = qbf->add_subcommand("gen", "build the language pair of a formula");
    qgen->add_option("input", in1, "QDIMACS file")->required();
    add_common(qgen, o, false);
    auto* qchk = qbf->add_subcommand("check", "verify truth against inseparability");
    qchk->add_option("input", in1, "QDIMACS file")->required();
    add_common(qchk, o, false);

    auto* cert = app.add_subcommand("certify", "verify a separator certificate");
    cert->add_option("certificate", in1, "certificate JSON file")->required();
    cert->add_option("input1", in2, "NFA file or regex")->required();
    cert->add_option("input2", in3, "NFA file or regex")->required();
    add_common(cert, o, false);

    std::string suite = "all";
    std::vector<int> criteria;
    bool quick = false;
    auto* st = app.add_subcommand("selftest", "run the acceptance criteria");
    st->add_option("--suite", suite,
                   "all, oracle, verdicts, strategies, reduction, qbf, discipline, "
                   "certificates");
    st->add_option("--criterion", criteria, "run specific criteria (1..10)");
    st->add_flag("--quick", quick, "smaller corpora for smoke runs");
    add_common(st, o, false);

    std::vector<std::uint32_t> sizes;
    std::uint32_t count = 5;
    auto* bench = app.add_subcommand("bench", "time saturation against input sizes");
    bench->add_option("--sizes", sizes, "NFA state counts to sweep");
    bench->add_option("--count", count, "instances per size");
    add_common(bench, o, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sep) return run_separate(o, in1, in2);
        if (*mon) return run_monoid(o, in1);
        if (*red) return run_reduce(o, in1, in2);
        if (*qgen) return run_qbf_gen(o, in1);
        if (*qchk) return run_qbf_check(o, in1);
        if (*cert) return run_certify(o, in1, in2, in3);
        if (*st) return run_selftest(o, suite, criteria, quick);
        if (*bench) return run_bench(o, sizes, count);
    } catch (const ps::resource_limit_error& e) {
        std::cerr << "resource cap exceeded: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
