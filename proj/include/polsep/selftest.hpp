#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polsep/util.hpp"

namespace polsep {

/// One acceptance criterion outcome. `pass` reflects the criterion as stated;
/// `detail` carries counts, skip rates and failure notes.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::uint64_t checked = 0;
    std::uint64_t skipped = 0;
    std::string detail;
};

struct SelftestConfig {
    std::uint64_t seed = 20240801;
    Caps caps{};
    /// Shrinks corpora for quick smoke runs (unit tests); acceptance uses false.
    bool quick = false;
    std::function<void(const std::string&)> progress;  // optional line sink
};

CriterionResult run_criterion(int id, const SelftestConfig& cfg);
std::vector<CriterionResult> run_all_criteria(const SelftestConfig& cfg);

/// Stable names for the ten criteria, indexable by id 1..10.
const char* criterion_name(int id);

}  // namespace polsep
