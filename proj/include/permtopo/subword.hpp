#pragma once

// Generalized subword order over a rooted forest P.  Node 0 is the bottom
// adjoined to P; words never contain 0, embeddings use it for gaps.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "permtopo/error.hpp"
#include "permtopo/permutation.hpp"
#include "permtopo/poset.hpp"

namespace permtopo {

using Word = std::vector<int>;

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (int x : w) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

inline std::string word_str(const Word& w) { return encode_letters(w); }
inline Word parse_word(std::string_view text) { return decode_letters(text); }

class ForestPoset {
public:
    ForestPoset() = default;

    /// The chain 1 < 2 < ... < m (positive integers truncated at m).
    static ForestPoset chain(int m) {
        ForestPoset f;
        for (int k = 1; k <= m; ++k) f.add(k, k - 1);
        return f;
    }

    /// Nodes given as (id, parent) with parent 0 for roots; parents may
    /// appear in any order.
    static ForestPoset from_parents(std::vector<std::pair<int, int>> nodes) {
        ForestPoset f;
        std::vector<char> placed(nodes.size(), 0);
        for (bool progress = true; progress;) {
            progress = false;
            for (std::size_t k = 0; k < nodes.size(); ++k) {
                if (placed[k]) continue;
                const auto [id, parent] = nodes[k];
                if (parent != 0 && !f.has(parent)) continue;
                f.add(id, parent);
                placed[k] = 1;
                progress = true;
            }
        }
        if (std::find(placed.begin(), placed.end(), 0) != placed.end())
            throw Error(ErrorKind::invalid_input, "forest has a cycle or a missing parent");
        return f;
    }

    static ForestPoset from_json(const nlohmann::json& j) {
        std::vector<std::pair<int, int>> nodes;
        for (const auto& n : j.at("nodes")) nodes.emplace_back(n.at("id").get<int>(), n.value("parent", 0));
        return from_parents(std::move(nodes));
    }

    bool has(int x) const noexcept {
        return x == 0 || (x > 0 && static_cast<std::size_t>(x) < parent_.size() && parent_[static_cast<std::size_t>(x)] >= 0);
    }
    int parent(int x) const { return parent_[checked(x)]; }
    int rank(int x) const { return x == 0 ? 0 : rank_[checked(x)]; }
    /// Minimal in P (covers the adjoined bottom).
    bool is_minimal(int x) const { return x != 0 && parent(x) == 0; }

    /// x <= y in P_0: x is an ancestor of y, or equal, or 0.
    bool leq(int x, int y) const {
        if (x == 0) return true;
        if (y == 0) return false;
        while (rank(y) > rank(x)) y = parent(y);
        return x == y;
    }

    int ancestor_at_rank(int x, int r) const {
        while (x != 0 && rank(x) > r) x = parent(x);
        return x;
    }

    std::vector<int> nodes() const {
        std::vector<int> out;
        for (std::size_t i = 1; i < parent_.size(); ++i)
            if (parent_[i] >= 0) out.push_back(static_cast<int>(i));
        return out;
    }

    void require_word(const Word& w, bool allow_zero = false) const {
        for (int x : w)
            if (!has(x) || (x == 0 && !allow_zero))
                throw Error(ErrorKind::alphabet_mismatch, "letter " + std::to_string(x) + " is not in the alphabet");
    }

private:
    void add(int id, int parent) {
        if (id <= 0) throw Error(ErrorKind::invalid_input, "node ids must be positive");
        if (has(id)) throw Error(ErrorKind::invalid_input, "duplicate node " + std::to_string(id));
        if (static_cast<std::size_t>(id) >= parent_.size()) {
            parent_.resize(static_cast<std::size_t>(id) + 1, -1);
            rank_.resize(static_cast<std::size_t>(id) + 1, 0);
        }
        parent_[static_cast<std::size_t>(id)] = parent;
        rank_[static_cast<std::size_t>(id)] = parent == 0 ? 1 : rank_[static_cast<std::size_t>(parent)] + 1;
    }

    std::size_t checked(int x) const {
        if (x <= 0 || !has(x)) throw Error(ErrorKind::alphabet_mismatch, "letter " + std::to_string(x) + " is not in the alphabet");
        return static_cast<std::size_t>(x);
    }

    std::vector<int> parent_{-1};  // index 0 is the bottom
    std::vector<int> rank_{0};
};

/// The chain alphabet large enough for every letter of w.
inline ForestPoset chain_for(const Word& w) {
    const int m = w.empty() ? 1 : *std::max_element(w.begin(), w.end());
    return ForestPoset::chain(std::max(m, 1));
}

inline int rk(const ForestPoset& f, const Word& w) {
    int r = 0;
    for (int x : w) r += f.rank(x);
    return r;
}

inline int parts(const Word& w) {
    return static_cast<int>(std::count_if(w.begin(), w.end(), [](int x) { return x != 0; }));
}

inline Word strip_zeros(const Word& w) {
    Word out;
    for (int x : w)
        if (x != 0) out.push_back(x);
    return out;
}

/// u <= w by greedy leftmost matching, which is optimal for subsequence
/// matching under a fixed pairwise predicate.
inline bool word_leq(const ForestPoset& f, const Word& u, const Word& w) {
    f.require_word(u, true);
    f.require_word(w, true);
    std::size_t i = 0;
    for (int x : u) {
        if (x == 0) continue;
        while (i < w.size() && !(w[i] != 0 && f.leq(x, w[i]))) ++i;
        if (i == w.size()) return false;
        ++i;
    }
    return true;
}

/// All embeddings of u in w (w may contain zeros), in lexicographic order
/// of the occupied position sets.
inline std::vector<Word> word_embeddings(const ForestPoset& f, const Word& u, const Word& w) {
    f.require_word(u);
    f.require_word(w, true);
    std::vector<Word> out;
    Word eta(w.size(), 0);
    auto place = [&](auto&& self, std::size_t j, std::size_t from) -> void {
        if (j == u.size()) {
            out.push_back(eta);
            return;
        }
        for (std::size_t i = from; i + (u.size() - j) <= w.size(); ++i) {
            if (w[i] == 0 || !f.leq(u[j], w[i])) continue;
            eta[i] = u[j];
            self(self, j + 1, i + 1);
            eta[i] = 0;
        }
    };
    place(place, 0, 0);
    return out;
}

/// The embedding that places every letter of u as far right as possible.
inline Word rightmost_embedding(const ForestPoset& f, const Word& u, const Word& w) {
    f.require_word(u);
    f.require_word(w, true);
    Word eta(w.size(), 0);
    std::size_t i = w.size();
    for (std::size_t j = u.size(); j-- > 0;) {
        while (i > 0 && !(w[i - 1] != 0 && f.leq(u[j], w[i - 1]))) --i;
        if (i == 0) throw Error(ErrorKind::not_comparable, word_str(u) + " is not below " + word_str(w));
        eta[--i] = u[j];
    }
    return eta;
}

// ---------------------------------------------------------------------------
// Intervals

using WordInterval = Interval<Word, WordHash>;

/// Words covered by v: decrease one letter to its parent, or delete a
/// minimal letter.
inline std::vector<Word> word_lower_covers(const ForestPoset& f, const Word& v) {
    std::vector<Word> out;
    for (std::size_t p = 0; p < v.size(); ++p) {
        Word x = v;
        if (f.is_minimal(v[p])) x.erase(x.begin() + static_cast<std::ptrdiff_t>(p));
        else x[p] = f.parent(v[p]);
        out.push_back(std::move(x));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// [u, w]: each position of w independently keeps an ancestor-or-self of
/// its letter or is dropped; the distinct results above u form the interval.
inline WordInterval build_word_interval(const ForestPoset& f, const Word& u, const Word& w) {
    f.require_word(u);
    f.require_word(w);
    if (!word_leq(f, u, w)) throw Error(ErrorKind::not_comparable, word_str(u) + " is not below " + word_str(w));
    std::unordered_set<Word, WordHash> seen;
    Word v;
    auto choose = [&](auto&& self, std::size_t p) -> void {
        if (p == w.size()) {
            if (!seen.count(v) && word_leq(f, u, v)) seen.insert(v);
            return;
        }
        self(self, p + 1);
        for (int x = w[p]; x != 0; x = f.parent(x)) {
            v.push_back(x);
            self(self, p + 1);
            v.pop_back();
        }
    };
    choose(choose, 0);
    std::vector<Word> elems(seen.begin(), seen.end());
    return assemble_interval<Word, WordHash>(
        std::move(elems), [&](const Word& x) { return rk(f, x); },
        [&](const Word& x) { return word_lower_covers(f, x); });
}

// ---------------------------------------------------------------------------
// Disconnection

namespace detail {

inline void require_word_rank_three(const ForestPoset& f, const Word& u, const Word& w) {
    if (!word_leq(f, u, w)) throw Error(ErrorKind::not_comparable, word_str(u) + " is not below " + word_str(w));
    if (rk(f, w) - rk(f, u) < 3) throw Error(ErrorKind::rank_too_small, "rank must be at least 3");
}

}  // namespace detail

/// u is w with one letter deleted that equals its left neighbour.
inline bool is_disconnected_word(const ForestPoset& f, const Word& u, const Word& w) {
    detail::require_word_rank_three(f, u, w);
    if (u.size() + 1 != w.size()) return false;
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (w[i - 1] != w[i]) continue;
        Word x = w;
        x.erase(x.begin() + static_cast<std::ptrdiff_t>(i));
        if (x == u) return true;
    }
    return false;
}

/// Some embedding of u agrees with w except for one zero at a position
/// whose letter repeats its left neighbour.
inline bool is_disconnected_word_by_embedding(const ForestPoset& f, const Word& u, const Word& w) {
    detail::require_word_rank_three(f, u, w);
    for (const auto& eta : word_embeddings(f, u, w))
        for (std::size_t i = 1; i < w.size(); ++i) {
            if (eta[i] != 0 || w[i - 1] != w[i]) continue;
            bool rest = true;
            for (std::size_t j = 0; j < w.size() && rest; ++j)
                if (j != i && eta[j] != w[j]) rest = false;
            if (rest) return true;
        }
    return false;
}

/// Graph check: more than one component in the open interval (u, w).
inline bool is_disconnected_word_by_graph(const ForestPoset& f, const Word& u, const Word& w) {
    const auto I = build_word_interval(f, u, w);
    return open_components(I).size() > 1;
}

struct WordSubintervalWitness {
    Word eta;  // embedding of u in w
    int a = 0;
    int i = 0, j = 0;  // 1-based
    Word u_prime, w_prime;
};

/// Searches embeddings in order, then i, then j, taking the least valid a.
inline std::optional<WordSubintervalWitness> has_disconnected_subinterval_word(const ForestPoset& f, const Word& u,
                                                                               const Word& w) {
    for (const auto& eta : word_embeddings(f, u, w)) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            const int r = std::max(3, f.rank(eta[i]));
            if (f.rank(w[i]) < r) continue;
            const int a = f.ancestor_at_rank(w[i], r);
            for (std::size_t j = i + 1; j < w.size() && eta[j] == 0; ++j) {
                if (!f.leq(a, w[j])) continue;
                WordSubintervalWitness wit{eta, a, static_cast<int>(i) + 1, static_cast<int>(j) + 1, {}, {}};
                Word lower = eta, upper = eta;
                lower[i] = a;
                upper[i] = upper[j] = a;
                wit.u_prime = strip_zeros(lower);
                wit.w_prime = strip_zeros(upper);
                return wit;
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Position labels

/// Position k, with `checked` marking the label strictly between k-1 and k.
struct ChainLabel {
    int position = 0;
    bool checked = false;

    friend bool operator==(const ChainLabel&, const ChainLabel&) = default;
    friend std::strong_ordering operator<=>(const ChainLabel& a, const ChainLabel& b) {
        if (auto c = a.position <=> b.position; c != 0) return c;
        return (a.checked ? 0 : 1) <=> (b.checked ? 0 : 1);
    }
    std::string str() const { return std::to_string(position) + (checked ? "v" : ""); }
};

namespace detail {

/// A chain element as its canonical embedding in the top word.
struct TrackedStep {
    int slot = -1;  // 0-based slot of the top word that changed
    bool deletion = false;
    bool lowers_late_rank2 = false;  // rank-2 letter, not first of its run, decreased
};

/// Word index of each nonzero slot.
inline std::vector<int> slot_order(const Word& slots) {
    std::vector<int> out;
    for (std::size_t s = 0; s < slots.size(); ++s)
        if (slots[s] != 0) out.push_back(static_cast<int>(s));
    return out;
}

/// True if the letter in `slot` is preceded in the word by an equal letter.
inline bool has_equal_left_neighbour(const Word& slots, int slot) {
    for (int s = slot - 1; s >= 0; --s)
        if (slots[static_cast<std::size_t>(s)] != 0) return slots[static_cast<std::size_t>(s)] == slots[static_cast<std::size_t>(slot)];
    return false;
}

inline TrackedStep apply_step(const ForestPoset& f, Word& slots, int slot) {
    TrackedStep step;
    step.slot = slot;
    const int x = slots[static_cast<std::size_t>(slot)];
    if (f.is_minimal(x)) {
        step.deletion = true;
        slots[static_cast<std::size_t>(slot)] = 0;
    } else {
        step.lowers_late_rank2 = f.rank(x) == 2 && has_equal_left_neighbour(slots, slot);
        slots[static_cast<std::size_t>(slot)] = f.parent(x);
    }
    return step;
}

/// Steps allowed from `slots`: any decrease, and deletions only of the
/// leftmost letter of a run of equal minimal letters.
inline std::vector<int> canonical_slots(const ForestPoset& f, const Word& slots) {
    std::vector<int> out;
    for (int s : slot_order(slots)) {
        if (f.is_minimal(slots[static_cast<std::size_t>(s)]) && has_equal_left_neighbour(slots, s)) continue;
        out.push_back(s);
    }
    return out;
}

inline ChainLabel label_of(const TrackedStep& step, const std::optional<TrackedStep>& previous, bool modified) {
    ChainLabel l{step.slot + 1, false};
    if (modified && step.deletion && previous && previous->lowers_late_rank2 && previous->slot == step.slot)
        l.checked = true;
    return l;
}

/// Finds the canonical step turning the word of `slots` into `next`.
inline int match_step(const ForestPoset& f, const Word& slots, const Word& next) {
    const auto order = slot_order(slots);
    Word word;
    for (int s : order) word.push_back(slots[static_cast<std::size_t>(s)]);
    if (next.size() == word.size()) {
        int diff = -1;
        for (std::size_t k = 0; k < word.size(); ++k)
            if (word[k] != next[k]) {
                if (diff >= 0) return -1;
                diff = static_cast<int>(k);
            }
        if (diff < 0 || f.is_minimal(word[static_cast<std::size_t>(diff)]) ||
            f.parent(word[static_cast<std::size_t>(diff)]) != next[static_cast<std::size_t>(diff)])
            return -1;
        return order[static_cast<std::size_t>(diff)];
    }
    if (next.size() + 1 != word.size()) return -1;
    std::size_t d = 0;
    while (d < next.size() && word[d] == next[d]) ++d;
    while (d > 0 && word[d - 1] == word[d]) --d;
    Word x = word;
    x.erase(x.begin() + static_cast<std::ptrdiff_t>(d));
    if (x != next || !f.is_minimal(word[d])) return -1;
    return order[d];
}

inline std::vector<ChainLabel> labels_for_chain(const ForestPoset& f, const std::vector<Word>& chain, bool modified) {
    if (chain.empty()) throw Error(ErrorKind::non_maximal_chain, "empty chain");
    for (const auto& w : chain) f.require_word(w);
    Word slots = chain.front();
    std::vector<ChainLabel> out;
    std::optional<TrackedStep> previous;
    for (std::size_t k = 1; k < chain.size(); ++k) {
        const int slot = match_step(f, slots, chain[k]);
        if (slot < 0)
            throw Error(ErrorKind::non_maximal_chain, word_str(chain[k - 1]) + " does not cover " + word_str(chain[k]));
        const auto step = apply_step(f, slots, slot);
        out.push_back(label_of(step, previous, modified));
        previous = step;
    }
    return out;
}

}  // namespace detail

/// Position labels of a chain given top to bottom.
inline std::vector<ChainLabel> position_labels(const ForestPoset& f, const std::vector<Word>& chain) {
    return detail::labels_for_chain(f, chain, false);
}

/// Position labels with k replaced by the checked k when a non-leading
/// rank-2 letter of a run is decreased and then deleted.
inline std::vector<ChainLabel> modified_position_labels(const ForestPoset& f, const std::vector<Word>& chain) {
    return detail::labels_for_chain(f, chain, true);
}

/// The canonical embeddings of a chain's elements in its top word.
inline std::vector<Word> canonical_embeddings(const ForestPoset& f, const std::vector<Word>& chain) {
    if (chain.empty()) return {};
    Word slots = chain.front();
    std::vector<Word> out{slots};
    for (std::size_t k = 1; k < chain.size(); ++k) {
        const int slot = detail::match_step(f, slots, chain[k]);
        if (slot < 0)
            throw Error(ErrorKind::non_maximal_chain, word_str(chain[k - 1]) + " does not cover " + word_str(chain[k]));
        detail::apply_step(f, slots, slot);
        out.push_back(slots);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dual CL certificate

/// Maximal chains from `top` down to `bottom` under the modified labeling.
struct RootedChainSummary {
    int increasing = 0;  // capped at 2
    std::vector<Word> lex_first;
    std::vector<ChainLabel> lex_first_labels;
    std::vector<Word> first_increasing;
    bool lex_first_increasing = false;
};

inline RootedChainSummary summarize_rooted_chains(const ForestPoset& f, const Word& bottom, const Word& top) {
    RootedChainSummary out;
    const int target = rk(f, bottom);
    // Greedy lexicographically first chain: labels leaving a node are distinct.
    {
        Word slots = top;
        std::optional<detail::TrackedStep> previous;
        out.lex_first.push_back(top);
        bool increasing = true;
        while (rk(f, slots) > target) {
            std::optional<std::pair<ChainLabel, int>> best;
            for (int s : detail::canonical_slots(f, slots)) {
                Word trial = slots;
                const auto step = detail::apply_step(f, trial, s);
                if (!word_leq(f, bottom, trial)) continue;
                const auto l = detail::label_of(step, previous, true);
                if (!best || l < best->first) best = std::make_pair(l, s);
            }
            if (!best) throw Error(ErrorKind::precondition, word_str(bottom) + " is not below " + word_str(top));
            if (!out.lex_first_labels.empty() && best->first < out.lex_first_labels.back()) increasing = false;
            out.lex_first_labels.push_back(best->first);
            previous = detail::apply_step(f, slots, best->second);
            out.lex_first.push_back(strip_zeros(slots));
        }
        out.lex_first_increasing = increasing;
    }
    // Weakly increasing chains, pruned as soon as a descent appears.
    std::vector<Word> path{top};
    auto dfs = [&](auto&& self, Word& slots, std::optional<detail::TrackedStep> previous,
                   std::optional<ChainLabel> last) -> void {
        if (out.increasing >= 2) return;
        if (rk(f, slots) == target) {
            if (out.increasing++ == 0) out.first_increasing = path;
            return;
        }
        for (int s : detail::canonical_slots(f, slots)) {
            Word trial = slots;
            const auto step = detail::apply_step(f, trial, s);
            if (!word_leq(f, bottom, trial)) continue;
            const auto l = detail::label_of(step, previous, true);
            if (last && l < *last) continue;
            path.push_back(strip_zeros(trial));
            self(self, trial, step, l);
            path.pop_back();
        }
    };
    Word start = top;
    dfs(dfs, start, std::nullopt, std::nullopt);
    return out;
}

struct CertifyResult {
    bool certified = false;
    std::optional<WordSubintervalWitness> refutation;
    /// A rooted pair (bottom, top) where the labeling check failed.
    std::optional<std::pair<Word, Word>> failing_pair;
    long pairs_checked = 0;
};

/// Refutes via a disconnected subinterval if there is one; otherwise checks,
/// for every v <= v' in [u, w], that exactly one weakly increasing maximal
/// chain runs from v' down to v and that it is lexicographically first.
inline CertifyResult certify_dual_cl(const ForestPoset& f, const Word& u, const Word& w) {
    CertifyResult r;
    if (!word_leq(f, u, w)) throw Error(ErrorKind::not_comparable, word_str(u) + " is not below " + word_str(w));
    r.refutation = has_disconnected_subinterval_word(f, u, w);
    if (r.refutation) return r;
    const auto I = build_word_interval(f, u, w);
    for (int hi = 0; hi < I.size(); ++hi)
        for (int lo = 0; lo < I.size(); ++lo) {
            if (!I.leq(lo, hi) || I.rank[static_cast<std::size_t>(hi)] - I.rank[static_cast<std::size_t>(lo)] < 2) continue;
            ++r.pairs_checked;
            const auto s = summarize_rooted_chains(f, I.elements[static_cast<std::size_t>(lo)],
                                                   I.elements[static_cast<std::size_t>(hi)]);
            if (s.increasing != 1 || !s.lex_first_increasing || s.first_increasing != s.lex_first) {
                r.failing_pair = std::make_pair(I.elements[static_cast<std::size_t>(lo)], I.elements[static_cast<std::size_t>(hi)]);
                return r;
            }
        }
    r.certified = true;
    return r;
}

// ---------------------------------------------------------------------------
// Layered permutations

inline bool is_layered(const Permutation& pi) {
    if (pi.empty()) return true;
    for (const auto& c : finest_decomposition(pi, SumKind::direct).components)
        for (int i = 1; i < c.size(); ++i)
            if (c[i] > c[i - 1]) return false;
    return true;
}

/// Layer lengths of a layered permutation.
inline Word layered_to_word(const Permutation& pi) {
    if (!is_layered(pi)) throw Error(ErrorKind::invalid_input, pi.str() + " is not layered");
    Word out;
    if (pi.empty()) return out;
    for (const auto& c : finest_decomposition(pi, SumKind::direct).components) out.push_back(c.size());
    return out;
}

inline Permutation word_to_layered(const Word& c) {
    Permutation acc;
    for (int k : c) {
        if (k <= 0) throw Error(ErrorKind::invalid_input, "layer lengths must be positive");
        std::vector<int> layer(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) layer[static_cast<std::size_t>(i)] = k - i;
        acc = direct_sum(acc, Permutation::from_standard(std::move(layer)));
    }
    return acc;
}

}  // namespace permtopo
