#pragma once

#include <string>

#include <json.hpp>

#include "polsep/monoid.hpp"
#include "polsep/nfa.hpp"
#include "polsep/reduction.hpp"
#include "polsep/separation.hpp"

namespace polsep {

using Json = nlohmann::ordered_json;

/// {"alphabet": [...], "states": n, "initial": [...], "final": [...],
///  "transitions": [[q, "a", r], ...]} — epsilon-free, all arrays sorted.
Json nfa_to_json(const Nfa& n);
Nfa nfa_from_json(const Json& j);

/// {"alphabet": [...], "size": m, "unit": u, "mul": [[...]],
///  "letters": {"a": i, ...}, "accept": [...]}
Json morphism_to_json(const RecognizedLanguage& rl);
RecognizedLanguage morphism_from_json(const Json& j);

Json verdict_to_json(const Verdict& v);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json tagging_to_json(const Tagging& t);
Tagging tagging_from_json(const Json& j);

/// Tool/run description embedded in every output file. Deterministic: equal
/// manifests imply byte-identical outputs.
struct ManifestInput {
    std::string path;
    std::uint64_t digest;  // fnv64 of the raw bytes
};
Json make_manifest(std::uint64_t seed, const Caps& caps,
                   const std::vector<ManifestInput>& inputs);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

/// Stable serialization used for all output files (2-space indent + newline).
std::string dump_json(const Json& j);

extern const char* const kToolVersion;

}  // namespace polsep
