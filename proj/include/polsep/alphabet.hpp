#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "polsep/util.hpp"

namespace polsep {

/// Letters are interned multi-character tokens; a word is a sequence of letter
/// indices into its alphabet. Alphabets are ordered: index order is declaration
/// order and is significant for serialization.
using Word = std::vector<std::uint32_t>;

class Alphabet {
  public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> letters);

    std::uint32_t size() const { return static_cast<std::uint32_t>(letters_.size()); }
    const std::string& token(std::uint32_t i) const { return letters_[i]; }
    const std::vector<std::string>& tokens() const { return letters_; }
    bool contains(const std::string& tok) const { return index_.count(tok) != 0; }
    /// Index of a token; throws input_error if absent.
    std::uint32_t index(const std::string& tok) const;
    /// Index of a token, or size() if absent.
    std::uint32_t find(const std::string& tok) const;

    bool operator==(const Alphabet& o) const { return letters_ == o.letters_; }
    bool operator!=(const Alphabet& o) const { return !(*this == o); }

    std::string word_string(const Word& w, const std::string& sep = "") const;

  private:
    std::vector<std::string> letters_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

}  // namespace polsep
