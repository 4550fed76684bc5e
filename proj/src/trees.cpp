#include "polsep/trees.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_map>

namespace polsep {

void TreeContext::validate() const {
    check(alpha != nullptr && beta != nullptr, "tree context misses a morphism");
    check(alpha->morphism.alphabet.tokens() == beta->morphism.alphabet.tokens(),
          "tree context morphisms use different alphabets");
    check(alpha->basis_size() == beta->basis_size(),
          "tree context morphisms use different bases");
    check(alpha->canonical.letter_image == beta->canonical.letter_image,
          "tree context canonical morphisms disagree");
    check(S.size_bits() == beta->morphism.target.size(), "tree context set universe mismatch");
    check(is_good(S, beta->morphism), "tree context set is not good");
}

std::uint64_t LabelFamily::total_sets() const {
    std::uint64_t n = 0;
    for (const auto& row : rows) n += row.size();
    return n;
}

std::string LabelFamily::dump() const {
    std::ostringstream out;
    for (std::uint32_t s = 0; s < rows.size(); ++s) {
        for (const auto& set : rows[s]) {
            out << s << " : {";
            bool first = true;
            set.for_each([&](std::uint32_t t) {
                if (!first) out << ',';
                first = false;
                out << t;
            });
            out << "}\n";
        }
    }
    return out.str();
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> leaf_labels(const TreeContext& ctx) {
    const Monoid& m = ctx.alpha->morphism.target;
    const Monoid& n = ctx.beta->morphism.target;
    const auto& ia = ctx.alpha->morphism.letter_image;
    const auto& ib = ctx.beta->morphism.letter_image;
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    std::deque<std::pair<std::uint32_t, std::uint32_t>> work;
    seen.emplace(m.unit(), n.unit());
    work.emplace_back(m.unit(), n.unit());
    while (!work.empty()) {
        auto [a, b] = work.front();
        work.pop_front();
        for (std::uint32_t l = 0; l < ia.size(); ++l) {
            std::pair<std::uint32_t, std::uint32_t> nxt{m.mul(a, ia[l]), n.mul(b, ib[l])};
            if (seen.insert(nxt).second) work.push_back(nxt);
        }
    }
    return {seen.begin(), seen.end()};
}

namespace {

/// Interns bitsets so products and omega powers can be memoized by id.
class SetPool {
  public:
    std::uint32_t intern(Bitset b) {
        auto h = b.hash();
        auto& bucket = buckets_[h];
        for (auto id : bucket)
            if (sets_[id] == b) return id;
        auto id = static_cast<std::uint32_t>(sets_.size());
        sets_.push_back(std::move(b));
        bucket.push_back(id);
        return id;
    }
    const Bitset& get(std::uint32_t id) const { return sets_[id]; }
    std::uint64_t size() const { return sets_.size(); }

  private:
    std::vector<Bitset> sets_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

class Saturator {
  public:
    Saturator(const TreeContext& ctx, const SaturateOptions& opts)
        : ctx_(ctx),
          opts_(opts),
          m_(ctx.alpha->morphism.target),
          n_(ctx.beta->morphism.target),
          kb_(n_.pair_backed() ? n_.pair_base().size() : 0),
          rows_(m_.size()) {
        // per basis class: the part of S with that class, and all of N with
        // that class (prune filter)
        const std::uint32_t classes = ctx_.beta->basis_size();
        std::vector<Bitset> in_s(classes, Bitset(n_.size()));
        class_all_.assign(classes, Bitset(n_.size()));
        for (std::uint32_t t = 0; t < n_.size(); ++t) {
            auto c = ctx_.beta->cls(t);
            class_all_[c].set(t);
            if (ctx_.S.test(t)) in_s[c].set(t);
        }
        xclass_id_.resize(classes);
        for (std::uint32_t c = 0; c < classes; ++c) xclass_id_[c] = pool_.intern(in_s[c]);
    }

    void seed() {
        for (auto [s, t] : leaf_labels(ctx_)) {
            Bitset b(n_.size());
            b.set(t);
            seed_insert(s, std::move(b));
        }
        for (std::uint32_t s = 0; s < m_.size(); ++s)
            if (!rows_[s].empty()) domain_.push_back(s);
        for (auto s : domain_)
            if (m_.mul(s, s) == s) idems_.push_back(s);
    }

    /// One stratification level: idempotent insertion steps on the omega
    /// powers of all current maximal sets, then the pointwise-product closure.
    /// Returns whether the family grew.
    bool round() {
        changed_ = false;
        for (auto e : idems_) {
            auto snapshot = rows_[e];
            for (auto tid : snapshot) {
                auto wid = omega_set(tid);
                auto out = prod(prod(wid, xclass_id_[ctx_.alpha->cls(e)]), wid);
                insert(e, Bitset(pool_.get(out)));
            }
        }
        drain();
        return changed_;
    }

    LabelFamily family() const {
        LabelFamily f;
        f.domain = m_.size();
        f.codomain = n_.size();
        f.rows.resize(m_.size());
        for (std::uint32_t s = 0; s < m_.size(); ++s) {
            std::vector<Bitset> row;
            row.reserve(rows_[s].size());
            for (auto id : rows_[s]) row.push_back(pool_.get(id));
            std::sort(row.begin(), row.end(),
                      [](const Bitset& a, const Bitset& b) { return a.lex_less(b); });
            f.rows[s] = std::move(row);
        }
        return f;
    }

  private:
    std::uint32_t prod(std::uint32_t x, std::uint32_t y) {
        auto key = (std::uint64_t(x) << 32) | y;
        auto it = prod_memo_.find(key);
        if (it != prod_memo_.end()) return it->second;
        Bitset out = kb_ ? prod_pair(x, y) : prod_elementwise(pool_.get(x), pool_.get(y));
        auto id = pool_.intern(std::move(out));
        prod_memo_.emplace(key, id);
        return id;
    }

    Bitset prod_elementwise(const Bitset& a, const Bitset& b) {
        Bitset out(n_.size());
        a.for_each([&](std::uint32_t t1) {
            b.for_each([&](std::uint32_t t2) { out.set(n_.mul(t1, t2)); });
        });
        return out;
    }

    /// Sparse row decomposition of a pair-ground set, memoized by pool id:
    /// (base element u, interned base set of its row).
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& rows_decomp(std::uint32_t id) {
        auto it = rows_memo_.find(id);
        if (it != rows_memo_.end()) return it->second;
        const Bitset& s = pool_.get(id);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        for (std::uint32_t u = 0; u < kb_; ++u) {
            Bitset row(kb_);
            bool any = false;
            for (std::uint32_t v = 0; v < kb_; ++v)
                if (s.test(u * kb_ + v)) {
                    row.set(v);
                    any = true;
                }
            if (any) out.emplace_back(u, base_pool_.intern(std::move(row)));
        }
        return rows_memo_.emplace(id, std::move(out)).first->second;
    }

    /// Pair-backed ground set: a set over base x base is a boolean matrix,
    /// and its product factors through base-level row products, which repeat
    /// heavily and are memoized. Turns |a|*|b| element steps into nonempty-row
    /// combinations.
    Bitset prod_pair(std::uint32_t x, std::uint32_t y) {
        const Monoid& base = n_.pair_base();
        const auto& ra = rows_decomp(x);
        const auto& rb = rows_decomp(y);
        std::vector<Bitset> out_rows(kb_);
        std::vector<bool> touched(kb_, false);
        for (const auto& [u1, r1] : ra) {
            for (const auto& [u2, r2] : rb) {
                const std::uint32_t w = base.mul(u1, u2);
                const Bitset& rp = base_pool_.get(base_prod(r1, r2));
                if (!touched[w]) {
                    out_rows[w] = rp;
                    touched[w] = true;
                } else {
                    out_rows[w].or_with(rp);
                }
            }
        }
        Bitset out(n_.size());
        for (std::uint32_t w = 0; w < kb_; ++w)
            if (touched[w])
                out_rows[w].for_each([&](std::uint32_t v) { out.set(w * kb_ + v); });
        return out;
    }

    /// Base-monoid set product, memoized by interned ids.
    std::uint32_t base_prod(std::uint32_t x, std::uint32_t y) {
        auto key = (std::uint64_t(x) << 32) | y;
        auto it = base_prod_memo_.find(key);
        if (it != base_prod_memo_.end()) return it->second;
        const Monoid& base = n_.pair_base();
        const Bitset& a = base_pool_.get(x);
        const Bitset& b = base_pool_.get(y);
        Bitset out(kb_);
        a.for_each([&](std::uint32_t t1) {
            b.for_each([&](std::uint32_t t2) { out.set(base.mul(t1, t2)); });
        });
        auto id = base_pool_.intern(std::move(out));
        base_prod_memo_.emplace(key, id);
        return id;
    }

    std::uint32_t omega_set(std::uint32_t tid) {
        auto it = omega_memo_.find(tid);
        if (it != omega_memo_.end()) return it->second;
        std::uint32_t result;
        if (pool_.get(tid).count() == 1) {
            std::uint32_t t = pool_.get(tid).to_vector()[0];
            Bitset b(n_.size());
            b.set(omega_power(n_, t));
            result = pool_.intern(std::move(b));
        } else {
            // power sequence in the power monoid; seq[i] holds T^(i+1)
            std::vector<std::uint32_t> seq{tid};
            std::unordered_map<std::uint32_t, std::uint32_t> pos{{tid, 0}};
            while (true) {
                auto nxt = prod(seq.back(), tid);
                auto found = pos.find(nxt);
                if (found != pos.end()) {
                    std::uint32_t mu = found->second + 1;  // cycle entry exponent
                    std::uint32_t lambda =
                        static_cast<std::uint32_t>(seq.size()) + 1 - mu;
                    std::uint32_t k = ((mu + lambda - 1) / lambda) * lambda;
                    result = seq[k - 1];
                    break;
                }
                pos.emplace(nxt, static_cast<std::uint32_t>(seq.size()));
                seq.push_back(nxt);
                opts_.caps.check_deadline("omega_set");
            }
        }
        check(prod(result, result) == result, "omega power of a set is not idempotent");
        omega_memo_.emplace(tid, result);
        omega_memo_.emplace(result, result);
        return result;
    }

    void seed_insert(std::uint32_t s, Bitset t) { insert_impl(s, std::move(t), false); }

    void insert(std::uint32_t s, Bitset t) { insert_impl(s, std::move(t), true); }

    void insert_impl(std::uint32_t s, Bitset t, bool enqueue) {
        if (opts_.at_prune) t.and_with(class_all_[ctx_.alpha->cls(s)]);
        auto id = pool_.intern(std::move(t));
        if (pool_.size() > opts_.caps.family_cap)
            throw resource_limit_error("saturation exceeded the stored-set budget");
        auto& row = rows_[s];
        const Bitset& nb = pool_.get(id);
        for (auto e : row)
            if (nb.subset_of(pool_.get(e))) return;
        row.erase(std::remove_if(row.begin(), row.end(),
                                 [&](std::uint32_t e) { return pool_.get(e).subset_of(nb); }),
                  row.end());
        row.push_back(id);
        changed_ = true;
        if (enqueue) work_.emplace_back(s, id);
    }

    void drain() {
        while (!work_.empty()) {
            auto [s, id] = work_.front();
            work_.pop_front();
            // superseded entries need no processing: products with a strictly
            // larger stored set dominate theirs
            auto& row = rows_[s];
            if (std::find(row.begin(), row.end(), id) == row.end()) continue;
            for (auto s2 : domain_) {
                auto snapshot = rows_[s2];
                for (auto id2 : snapshot) {
                    insert(m_.mul(s, s2), Bitset(pool_.get(prod(id, id2))));
                    insert(m_.mul(s2, s), Bitset(pool_.get(prod(id2, id))));
                }
            }
            opts_.caps.check_deadline("saturate");
        }
    }

    const TreeContext& ctx_;
    const SaturateOptions& opts_;
    const Monoid& m_;
    const Monoid& n_;
    const std::uint32_t kb_;  // pair_base size when the ground set is pair-backed
    SetPool pool_;
    SetPool base_pool_;
    std::unordered_map<std::uint64_t, std::uint32_t> base_prod_memo_;
    std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>>
        rows_memo_;
    std::unordered_map<std::uint64_t, std::uint32_t> prod_memo_;
    std::unordered_map<std::uint32_t, std::uint32_t> omega_memo_;
    std::vector<std::vector<std::uint32_t>> rows_;
    std::vector<std::uint32_t> domain_;  // elements with nonempty rows, sorted
    std::vector<std::uint32_t> idems_;   // idempotent domain elements, sorted
    std::vector<Bitset> class_all_;      // per class: all of N with that class
    std::vector<std::uint32_t> xclass_id_;  // per class: interned {t in S : cls t = c}
    std::deque<std::pair<std::uint32_t, std::uint32_t>> work_;
    bool changed_ = false;
};

}  // namespace

LabelFamily saturate(const TreeContext& ctx, std::uint32_t max_height,
                     const SaturateOptions& opts) {
    ctx.validate();
    Saturator sat(ctx, opts);
    sat.seed();
    std::uint32_t rounds = 0;
    while (sat.round()) {
        ++rounds;
        check(rounds <= max_height, "saturation did not stabilize within its height bound");
    }
    return sat.family();
}

NaiveFamily saturate_naive(const TreeContext& ctx, const Caps& caps) {
    ctx.validate();
    const Monoid& m = ctx.alpha->morphism.target;
    const Monoid& n = ctx.beta->morphism.target;
    require(n.size() <= 12, "naive saturation requires a codomain with at most 12 elements");

    NaiveFamily f;
    f.domain = m.size();
    f.codomain = n.size();

    const std::uint32_t classes = ctx.beta->basis_size();
    std::vector<std::uint32_t> xmask(classes, 0);
    for (std::uint32_t t = 0; t < n.size(); ++t)
        if (ctx.S.test(t)) xmask[ctx.beta->cls(t)] |= 1u << t;

    auto prodmask = [&](std::uint32_t m1, std::uint32_t m2) {
        std::uint32_t out = 0;
        for (std::uint32_t t1 = 0; t1 < n.size(); ++t1) {
            if (!((m1 >> t1) & 1)) continue;
            for (std::uint32_t t2 = 0; t2 < n.size(); ++t2)
                if ((m2 >> t2) & 1) out |= 1u << n.mul(t1, t2);
        }
        return out;
    };

    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
    std::deque<std::size_t> work;
    auto add = [&](std::uint32_t s, std::uint32_t mask) {
        // the binary rule admits arbitrary subsets, so close downward eagerly
        std::uint32_t sub = mask;
        while (true) {
            auto key = NaiveFamily::key(s, sub);
            if (f.entries.insert(key).second) {
                if (f.entries.size() > caps.naive_cap)
                    throw resource_limit_error("naive saturation exceeded its entry budget");
                entries.emplace_back(s, sub);
                work.push_back(entries.size() - 1);
            }
            if (sub == 0) break;
            sub = (sub - 1) & mask;
        }
    };

    for (auto [s, t] : leaf_labels(ctx)) add(s, 1u << t);

    while (!work.empty()) {
        auto i = work.front();
        work.pop_front();
        auto [s, mask] = entries[i];
        const std::size_t snapshot = entries.size();
        for (std::size_t j = 0; j < snapshot; ++j) {
            auto [s2, mask2] = entries[j];
            add(m.mul(s, s2), prodmask(mask, mask2));
            add(m.mul(s2, s), prodmask(mask2, mask));
        }
        if (m.mul(s, s) == s && prodmask(mask, mask) == mask) {
            auto x = xmask[ctx.alpha->cls(s)];
            add(s, prodmask(prodmask(mask, x), mask));
        }
        caps.check_deadline("saturate_naive");
    }
    return f;
}

bool has_root_label(const LabelFamily& f, std::uint32_t s, std::uint32_t t) {
    check(s < f.domain && t < f.codomain, "root label query out of range");
    for (const auto& set : f.rows[s])
        if (set.test(t)) return true;
    return false;
}

LabelFamily alphabet_safe_prune(const LabelFamily& f, const TreeContext& ctx) {
    const std::uint32_t classes = ctx.beta->basis_size();
    std::vector<Bitset> class_all(classes, Bitset(f.codomain));
    for (std::uint32_t t = 0; t < f.codomain; ++t) class_all[ctx.beta->cls(t)].set(t);

    LabelFamily out;
    out.domain = f.domain;
    out.codomain = f.codomain;
    out.rows.resize(f.domain);
    for (std::uint32_t s = 0; s < f.domain; ++s) {
        std::vector<Bitset> pruned;
        for (const auto& set : f.rows[s]) {
            Bitset t = set;
            t.and_with(class_all[ctx.alpha->cls(s)]);
            pruned.push_back(std::move(t));
        }
        // re-maximalize: drop sets contained in another (keep the first of
        // duplicates)
        std::vector<Bitset> keep;
        for (std::size_t i = 0; i < pruned.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < pruned.size() && !dominated; ++j) {
                if (i == j) continue;
                if (pruned[i].subset_of(pruned[j]) &&
                    (pruned[i] != pruned[j] || j < i))
                    dominated = true;
            }
            if (!dominated) keep.push_back(pruned[i]);
        }
        std::sort(keep.begin(), keep.end(),
                  [](const Bitset& a, const Bitset& b) { return a.lex_less(b); });
        out.rows[s] = std::move(keep);
    }
    return out;
}

}  // namespace polsep
