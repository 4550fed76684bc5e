#pragma once

#include <chrono>
#include <cstdint>
#include <cstring>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polsep {

/// Raised on malformed user input (files, regexes, CLI arguments).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a configured resource cap (monoid size, determinization size,
/// stored-set budget, wall-clock deadline) is exceeded.
struct resource_limit_error : std::runtime_error {
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

/// Internal invariant violation; indicates an implementation bug, never bad input.
struct invariant_error : std::logic_error {
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw input_error(what);
}

inline void check(bool cond, const std::string& what) {
    if (!cond) throw invariant_error(what);
}

/// Resource caps threaded through every potentially explosive construction.
struct Caps {
    std::uint64_t monoid_cap = 50000;        ///< max elements in any monoid closure
    std::uint64_t det_cap = 1u << 20;        ///< max subsets during determinization
    std::uint64_t family_cap = 250000;       ///< max stored sets during saturation
    std::uint64_t naive_cap = 1u << 22;      ///< max entries in the naive saturation
    /// Wall-clock deadline; zero means none.
    std::chrono::steady_clock::time_point deadline{};

    bool has_deadline() const { return deadline.time_since_epoch().count() != 0; }
    void check_deadline(const char* where) const {
        if (has_deadline() && std::chrono::steady_clock::now() > deadline)
            throw resource_limit_error(std::string("deadline exceeded in ") + where);
    }
    static Caps with_budget_ms(std::uint64_t ms, Caps base) {
        base.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
        return base;
    }
    static Caps with_budget_ms(std::uint64_t ms) { return with_budget_ms(ms, Caps()); }
};

/// Dynamic bitset sized once; used for element sets over a finite monoid.
class Bitset {
  public:
    Bitset() = default;
    explicit Bitset(std::uint32_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    std::uint32_t size_bits() const { return nbits_; }
    bool test(std::uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::uint32_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::uint32_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    void set_all() {
        for (auto& x : w_) x = ~std::uint64_t(0);
        trim();
    }
    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }
    std::uint32_t count() const {
        std::uint32_t c = 0;
        for (auto x : w_) c += static_cast<std::uint32_t>(__builtin_popcountll(x));
        return c;
    }
    bool subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    void and_with(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    }
    void or_with(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    }
    bool operator==(const Bitset& o) const { return nbits_ == o.nbits_ && w_ == o.w_; }
    bool operator!=(const Bitset& o) const { return !(*this == o); }
    /// Word-lexicographic order; used only to canonicalize output order.
    bool lex_less(const Bitset& o) const { return w_ < o.w_; }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t x = w_[wi];
            while (x) {
                unsigned b = static_cast<unsigned>(__builtin_ctzll(x));
                f(static_cast<std::uint32_t>((wi << 6) + b));
                x &= x - 1;
            }
        }
    }
    std::vector<std::uint32_t> to_vector() const {
        std::vector<std::uint32_t> v;
        for_each([&](std::uint32_t i) { v.push_back(i); });
        return v;
    }
    std::uint64_t hash() const {
        std::uint64_t h = 14695981039346656037ull;
        for (auto x : w_) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h ^ nbits_;
    }

  private:
    void trim() {
        if (nbits_ & 63) w_.back() &= (~std::uint64_t(0)) >> (64 - (nbits_ & 63));
    }
    std::uint32_t nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Deterministic 64-bit generator (splitmix64); identical streams on every
/// platform, unlike distributions layered over std engines.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    /// Uniform-ish value in [0, n); n must be nonzero. Modulo bias is irrelevant
    /// for corpus generation.
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    /// Value in [lo, hi] inclusive.
    std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    bool flip() { return next() & 1; }

  private:
    std::uint64_t state_;
};

/// FNV-1a 64-bit hash of a byte string; used for input digests in manifests.
inline std::uint64_t fnv64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string to_hex(std::uint64_t v);

}  // namespace polsep
