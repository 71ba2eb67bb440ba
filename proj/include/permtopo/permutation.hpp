#pragma once

// Permutations in one-line notation and the pattern-containment toolkit:
// flattening, occurrences, embeddings, deletions, (skew) sums, finest
// decompositions, runs and the symmetry maps.  Positions are 1-based in
// every public interface.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "permtopo/error.hpp"

namespace permtopo {

/// Sorted list of 1-based positions.
using PositionSet = std::vector<int>;

// ---------------------------------------------------------------------------
// Text encoding shared by permutations, embeddings and words.

/// Letters are written without separators unless some letter exceeds 9,
/// in which case they are comma separated ("10,2,...").
inline std::string encode_letters(std::span<const int> letters) {
    const bool wide = std::any_of(letters.begin(), letters.end(), [](int x) { return x > 9; });
    std::string out;
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (wide && i > 0) out += ',';
        out += std::to_string(letters[i]);
    }
    return out;
}

inline std::vector<int> decode_letters(std::string_view text) {
    std::vector<int> out;
    if (text == "e" || text == "empty" || text == "\xE2\x88\x85") return out;
    if (text.find(',') != std::string_view::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find(',', start);
            if (end == std::string_view::npos) end = text.size();
            std::string_view tok = text.substr(start, end - start);
            while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
            while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
            if (tok.empty()) throw Error(ErrorKind::invalid_input, "empty letter in '" + std::string(text) + "'");
            int value = 0;
            for (char c : tok) {
                if (c < '0' || c > '9') throw Error(ErrorKind::invalid_input, "bad letter in '" + std::string(text) + "'");
                value = value * 10 + (c - '0');
                if (value > 1000000) throw Error(ErrorKind::invalid_input, "letter too large");
            }
            out.push_back(value);
            start = end + 1;
        }
        return out;
    }
    for (char c : text) {
        if (c < '0' || c > '9') throw Error(ErrorKind::invalid_input, "bad letter in '" + std::string(text) + "'");
        out.push_back(c - '0');
    }
    return out;
}

// ---------------------------------------------------------------------------

/// A permutation of {1..n} in one-line notation; n = 0 is the empty permutation.
class Permutation {
public:
    Permutation() = default;

    /// Throws invalid-input unless `letters` is a rearrangement of 1..n.
    explicit Permutation(std::vector<int> letters) : letters_(std::move(letters)) {
        std::vector<char> seen(letters_.size() + 1, 0);
        for (int x : letters_) {
            if (x < 1 || x > static_cast<int>(letters_.size()) || seen[x])
                throw Error(ErrorKind::invalid_input, "not a permutation: " + encode_letters(letters_));
            seen[x] = 1;
        }
    }

    Permutation(std::initializer_list<int> letters) : Permutation(std::vector<int>(letters)) {}

    static Permutation identity(int n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 1);
        return from_standard(std::move(v));
    }

    /// Strict parse: the text must already be in standard form.
    static Permutation parse(std::string_view text) { return Permutation(decode_letters(text)); }

    int size() const noexcept { return static_cast<int>(letters_.size()); }
    bool empty() const noexcept { return letters_.empty(); }
    /// 0-based access.
    int operator[](int i) const noexcept { return letters_[static_cast<std::size_t>(i)]; }
    /// 1-based access, matching the positional conventions elsewhere.
    int at(int position) const {
        if (position < 1 || position > size()) throw Error(ErrorKind::out_of_range, "position " + std::to_string(position));
        return letters_[static_cast<std::size_t>(position - 1)];
    }
    std::span<const int> letters() const noexcept { return letters_; }
    std::string str() const { return encode_letters(letters_); }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    /// Shorter first, then lexicographic; this is the enumeration order used everywhere.
    friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
        if (a.size() != b.size()) return a.size() <=> b.size();
        return a.letters_ <=> b.letters_;
    }

    /// Skips validation; callers guarantee standard form.
    static Permutation from_standard(std::vector<int> letters) {
        Permutation p;
        p.letters_ = std::move(letters);
        return p;
    }

private:
    std::vector<int> letters_;
};

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const noexcept {
        std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(p.size());
        for (int x : p.letters()) {
            h ^= static_cast<std::uint64_t>(x);
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

// ---------------------------------------------------------------------------
// Flattening and deletion

/// Standard form of a sequence of distinct positive integers.
inline Permutation flatten(std::span<const int> word) {
    std::vector<int> order(word.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return word[a] < word[b]; });
    std::vector<int> out(word.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        if (word[order[r]] < 1) throw Error(ErrorKind::invalid_input, "letters must be positive");
        if (r > 0 && word[order[r]] == word[order[r - 1]])
            throw Error(ErrorKind::invalid_input, "duplicate letter " + std::to_string(word[order[r]]));
        out[order[r]] = static_cast<int>(r) + 1;
    }
    return Permutation::from_standard(std::move(out));
}

inline Permutation flatten(std::initializer_list<int> word) {
    return flatten(std::span<const int>(word.begin(), word.size()));
}

/// Deletes the letter at 1-based `position` and flattens.
inline Permutation remove_position(const Permutation& tau, int position) {
    if (position < 1 || position > tau.size())
        throw Error(ErrorKind::out_of_range, "position " + std::to_string(position));
    const int removed = tau.at(position);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(tau.size() - 1));
    for (int i = 0; i < tau.size(); ++i) {
        if (i == position - 1) continue;
        out.push_back(tau[i] > removed ? tau[i] - 1 : tau[i]);
    }
    return Permutation::from_standard(std::move(out));
}

/// tau - Z: delete the letters at the positions in Z and flatten.
inline Permutation remove_positions(const Permutation& tau, std::span<const int> zero_set) {
    std::vector<char> drop(static_cast<std::size_t>(tau.size()), 0);
    for (int z : zero_set) {
        if (z < 1 || z > tau.size()) throw Error(ErrorKind::out_of_range, "position " + std::to_string(z));
        drop[static_cast<std::size_t>(z - 1)] = 1;
    }
    std::vector<int> kept;
    for (int i = 0; i < tau.size(); ++i)
        if (!drop[static_cast<std::size_t>(i)]) kept.push_back(tau[i]);
    return flatten(kept);
}

/// Letters of tau at the given positions, flattened.
inline Permutation pattern_at(const Permutation& tau, std::span<const int> positions) {
    std::vector<int> picked;
    picked.reserve(positions.size());
    for (int p : positions) picked.push_back(tau.at(p));
    return flatten(picked);
}

// ---------------------------------------------------------------------------
// Occurrence search

namespace detail {

/// For each j, the earlier index holding the nearest smaller / larger value
/// of sigma (or -1).  An extension of a partial occurrence is valid iff the
/// new letter lies strictly between the letters matched to those two indices.
struct PatternShape {
    std::vector<int> below, above;

    explicit PatternShape(const Permutation& sigma) : below(sigma.size(), -1), above(sigma.size(), -1) {
        for (int j = 0; j < sigma.size(); ++j) {
            for (int i = 0; i < j; ++i) {
                if (sigma[i] < sigma[j] && (below[j] < 0 || sigma[i] > sigma[below[j]])) below[j] = i;
                if (sigma[i] > sigma[j] && (above[j] < 0 || sigma[i] < sigma[above[j]])) above[j] = i;
            }
        }
    }
};

/// Calls `visit(chosen)` for each occurrence in lexicographic order of
/// position sets; `chosen` holds 0-based positions.  Stops when visit returns false.
template <class Visit>
class OccurrenceSearch {
public:
    OccurrenceSearch(const Permutation& sigma, const Permutation& tau, Visit& visit)
        : tau_(tau), shape_(sigma), k_(sigma.size()), n_(tau.size()), chosen_(static_cast<std::size_t>(k_)), visit_(visit) {}

    bool run() {
        if (k_ > n_) return true;
        if (k_ == 0) return visit_(std::span<const int>(chosen_));
        return extend(0, 0);
    }

private:
    bool extend(int j, int from) {
        for (int i = from; i <= n_ - (k_ - j); ++i) {
            const int v = tau_[i];
            if (shape_.below[j] >= 0 && tau_[chosen_[shape_.below[j]]] > v) continue;
            if (shape_.above[j] >= 0 && tau_[chosen_[shape_.above[j]]] < v) continue;
            chosen_[j] = i;
            if (j + 1 == k_) {
                if (!visit_(std::span<const int>(chosen_))) return false;
            } else if (!extend(j + 1, i + 1)) {
                return false;
            }
        }
        return true;
    }

    const Permutation& tau_;
    PatternShape shape_;
    int k_, n_;
    std::vector<int> chosen_;
    Visit& visit_;
};

template <class Visit>
bool search_occurrences(const Permutation& sigma, const Permutation& tau, Visit&& visit) {
    OccurrenceSearch<std::remove_reference_t<Visit>> search(sigma, tau, visit);
    return search.run();
}

}  // namespace detail

/// sigma <= tau in the pattern order.
inline bool contains(const Permutation& sigma, const Permutation& tau) {
    if (sigma.size() > tau.size()) return false;
    if (sigma.size() == tau.size()) return sigma == tau;
    bool found = false;
    detail::search_occurrences(sigma, tau, [&](std::span<const int>) {
        found = true;
        return false;
    });
    return found;
}

/// All occurrences of sigma in tau as 1-based position sets, lexicographically.
inline std::vector<PositionSet> occurrences(const Permutation& sigma, const Permutation& tau) {
    std::vector<PositionSet> out;
    detail::search_occurrences(sigma, tau, [&](std::span<const int> chosen) {
        PositionSet s(chosen.begin(), chosen.end());
        for (int& x : s) ++x;
        out.push_back(std::move(s));
        return true;
    });
    return out;
}

/// A length-|tau| placement of sigma's letters, zeros elsewhere.
struct Embedding {
    std::vector<int> entries;

    PositionSet zero_set() const {
        PositionSet z;
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i] == 0) z.push_back(static_cast<int>(i) + 1);
        return z;
    }
    PositionSet support() const {
        PositionSet s;
        for (std::size_t i = 0; i < entries.size(); ++i)
            if (entries[i] != 0) s.push_back(static_cast<int>(i) + 1);
        return s;
    }
    std::string str() const { return encode_letters(entries); }
    friend bool operator==(const Embedding&, const Embedding&) = default;
    friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

inline Embedding make_embedding(const Permutation& sigma, int tau_length, const PositionSet& occurrence) {
    Embedding e{std::vector<int>(static_cast<std::size_t>(tau_length), 0)};
    for (std::size_t j = 0; j < occurrence.size(); ++j) e.entries[static_cast<std::size_t>(occurrence[j] - 1)] = sigma[static_cast<int>(j)];
    return e;
}

/// One embedding per occurrence, in the same order as `occurrences`.
inline std::vector<Embedding> embeddings(const Permutation& sigma, const Permutation& tau) {
    std::vector<Embedding> out;
    for (const auto& occ : occurrences(sigma, tau)) out.push_back(make_embedding(sigma, tau.size(), occ));
    return out;
}

// ---------------------------------------------------------------------------
// Sums and decompositions

enum class SumKind { direct, skew };

inline Permutation direct_sum(const Permutation& alpha, const Permutation& beta) {
    std::vector<int> out(alpha.letters().begin(), alpha.letters().end());
    for (int x : beta.letters()) out.push_back(x + alpha.size());
    return Permutation::from_standard(std::move(out));
}

inline Permutation skew_sum(const Permutation& alpha, const Permutation& beta) {
    std::vector<int> out;
    for (int x : alpha.letters()) out.push_back(x + beta.size());
    for (int x : beta.letters()) out.push_back(x);
    return Permutation::from_standard(std::move(out));
}

inline Permutation sum(const Permutation& alpha, const Permutation& beta, SumKind kind) {
    return kind == SumKind::direct ? direct_sum(alpha, beta) : skew_sum(alpha, beta);
}

/// Sum of a list of components; the empty list gives the empty permutation.
inline Permutation sum_of(std::span<const Permutation> parts, SumKind kind) {
    Permutation acc;
    for (const auto& p : parts) acc = sum(acc, p, kind);
    return acc;
}

/// 1^k = 1 + 1 + ... + 1 (k copies), i.e. the identity of length k.
inline Permutation ones(int k) { return Permutation::identity(k); }

struct Decomposition {
    std::vector<Permutation> components;
    SumKind kind = SumKind::direct;

    Permutation recompose() const { return sum_of(components, kind); }
    int count() const noexcept { return static_cast<int>(components.size()); }
};

/// Splits pi into the maximum number of (skew) indecomposable components.
inline Decomposition finest_decomposition(const Permutation& pi, SumKind kind) {
    if (pi.empty()) throw Error(ErrorKind::invalid_input, "finest decomposition of the empty permutation");
    Decomposition d{{}, kind};
    const int n = pi.size();
    int start = 0;
    int extreme = kind == SumKind::direct ? 0 : n + 1;
    for (int i = 0; i < n; ++i) {
        extreme = kind == SumKind::direct ? std::max(extreme, pi[i]) : std::min(extreme, pi[i]);
        const bool cut = kind == SumKind::direct ? extreme == i + 1 : extreme == n - i;
        if (cut) {
            d.components.push_back(flatten(pi.letters().subspan(static_cast<std::size_t>(start), static_cast<std::size_t>(i + 1 - start))));
            start = i + 1;
        }
    }
    return d;
}

/// True iff pi is nonempty and not a nontrivial (skew) sum.
inline bool is_indecomposable(const Permutation& pi, SumKind kind = SumKind::direct) {
    return !pi.empty() && finest_decomposition(pi, kind).count() == 1;
}

// ---------------------------------------------------------------------------
// Symmetries

inline Permutation complement(const Permutation& pi) {
    std::vector<int> out;
    for (int x : pi.letters()) out.push_back(pi.size() + 1 - x);
    return Permutation::from_standard(std::move(out));
}

inline Permutation reverse(const Permutation& pi) {
    std::vector<int> out(pi.letters().rbegin(), pi.letters().rend());
    return Permutation::from_standard(std::move(out));
}

// ---------------------------------------------------------------------------
// Runs and removable letters

/// Closed range of 1-based positions.
struct PositionRange {
    int first = 0;
    int last = 0;
    bool contains(int p) const noexcept { return first <= p && p <= last; }
    friend bool operator==(const PositionRange&, const PositionRange&) = default;
};

/// Maximal runs (a, a+1, ...) or (a, a-1, ...), left to right.
inline std::vector<PositionRange> runs(const Permutation& tau) {
    std::vector<PositionRange> out;
    if (tau.empty()) return out;
    int first = 1;
    int direction = 0;
    for (int p = 2; p <= tau.size(); ++p) {
        const int step = tau.at(p) - tau.at(p - 1);
        const bool extends = (step == 1 || step == -1) && (direction == 0 || direction == step);
        if (extends) {
            direction = step;
        } else {
            out.push_back({first, p - 1});
            first = p;
            direction = 0;
        }
    }
    out.push_back({first, tau.size()});
    return out;
}

/// Positions i of tau with sigma <= tau - {i}.
inline PositionSet removable_letters(const Permutation& sigma, const Permutation& tau) {
    if (!contains(sigma, tau))
        throw Error(ErrorKind::not_comparable, sigma.str() + " is not contained in " + tau.str());
    PositionSet out;
    if (sigma.size() == tau.size()) return out;
    // A position is removable iff some occurrence of sigma avoids it.
    std::vector<char> used_by_all(static_cast<std::size_t>(tau.size()), 1);
    detail::search_occurrences(sigma, tau, [&](std::span<const int> chosen) {
        std::vector<char> in(static_cast<std::size_t>(tau.size()), 0);
        for (int c : chosen) in[static_cast<std::size_t>(c)] = 1;
        for (std::size_t i = 0; i < in.size(); ++i)
            if (!in[i]) used_by_all[i] = 0;
        return true;
    });
    for (int i = 0; i < tau.size(); ++i)
        if (!used_by_all[static_cast<std::size_t>(i)]) out.push_back(i + 1);
    return out;
}

// ---------------------------------------------------------------------------
// Enumeration

/// All permutations of length n in lexicographic order.
inline std::vector<Permutation> all_permutations(int n) {
    std::vector<Permutation> out;
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    do {
        out.push_back(Permutation::from_standard(v));
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

/// All permutations of length 0..max_n, by length then lexicographically.
inline std::vector<Permutation> all_permutations_up_to(int max_n) {
    std::vector<Permutation> out;
    for (int n = 0; n <= max_n; ++n) {
        auto level = all_permutations(n);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

}  // namespace permtopo
