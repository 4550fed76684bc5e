#include "polsep/alphabet.hpp"

namespace polsep {

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
    for (std::uint32_t i = 0; i < letters_.size(); ++i) {
        require(!letters_[i].empty(), "alphabet letter tokens must be nonempty");
        auto [it, fresh] = index_.emplace(letters_[i], i);
        (void)it;
        require(fresh, "duplicate letter token '" + letters_[i] + "'");
    }
}

std::uint32_t Alphabet::index(const std::string& tok) const {
    auto it = index_.find(tok);
    require(it != index_.end(), "unknown letter token '" + tok + "'");
    return it->second;
}

std::uint32_t Alphabet::find(const std::string& tok) const {
    auto it = index_.find(tok);
    return it == index_.end() ? size() : it->second;
}

std::string Alphabet::word_string(const Word& w, const std::string& sep) const {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += sep;
        s += letters_[w[i]];
    }
    return s;
}

}  // namespace polsep
