#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "permtopo/pattern_poset.hpp"
#include "permtopo/permutation.hpp"

namespace permtopo {

/// tau - (Z - {z}) for every z in the zero set of eta: the permutations
/// obtained by filling one zero of eta.
inline std::vector<Permutation> fill_one_zero(const Permutation& tau, const Embedding& eta) {
    const auto zeros = eta.zero_set();
    std::vector<Permutation> out;
    out.reserve(zeros.size());
    PositionSet rest;
    for (std::size_t skip = 0; skip < zeros.size(); ++skip) {
        rest.clear();
        for (std::size_t i = 0; i < zeros.size(); ++i)
            if (i != skip) rest.push_back(zeros[i]);
        out.push_back(remove_positions(tau, rest));
    }
    return out;
}

inline bool zero_sets_meet(const Embedding& a, const Embedding& b) {
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        if (a.entries[i] == 0 && b.entries[i] == 0) return true;
    return false;
}

enum class PartitionVerdict { ok, fails_a, fails_b };

inline const char* to_string(PartitionVerdict v) {
    switch (v) {
        case PartitionVerdict::ok: return "ok";
        case PartitionVerdict::fails_a: return "fails_a";
        case PartitionVerdict::fails_b: return "fails_b";
    }
    return "unknown";
}

/// Two embeddings, one zero of each, and the permutation both fillings give.
struct FillWitness {
    Embedding eta1, eta2;
    int z1 = 0, z2 = 0;
    Permutation common;
};

struct PartitionCheck {
    PartitionVerdict verdict = PartitionVerdict::ok;
    int shared_zero = 0;                 // set when fails_a
    std::optional<FillWitness> witness;  // set when fails_b
};

namespace detail {

inline void require_rank_three(const Permutation& sigma, const Permutation& tau) {
    if (!contains(sigma, tau))
        throw Error(ErrorKind::not_comparable, sigma.str() + " is not contained in " + tau.str());
    if (tau.size() - sigma.size() < 3) throw Error(ErrorKind::rank_too_small, "rank must be at least 3");
}

/// Parts must be nonempty, pairwise disjoint, and cover all embeddings.
inline void require_partition(const Permutation& sigma, const Permutation& tau,
                              const std::vector<std::vector<Embedding>>& parts) {
    auto all = embeddings(sigma, tau);
    std::vector<Embedding> given;
    for (const auto& p : parts) {
        if (p.empty()) throw Error(ErrorKind::invalid_partition, "empty part");
        given.insert(given.end(), p.begin(), p.end());
    }
    std::sort(all.begin(), all.end());
    std::sort(given.begin(), given.end());
    if (std::adjacent_find(given.begin(), given.end()) != given.end())
        throw Error(ErrorKind::invalid_partition, "parts overlap");
    if (given != all) throw Error(ErrorKind::invalid_partition, "parts do not cover the embeddings exactly");
}

}  // namespace detail

/// Checks conditions (a) and (b) of the embedding-partition test.
inline PartitionCheck check_partition(const Permutation& sigma, const Permutation& tau,
                                      const std::vector<Embedding>& e1, const std::vector<Embedding>& e2) {
    detail::require_rank_three(sigma, tau);
    detail::require_partition(sigma, tau, {e1, e2});
    PartitionCheck out;
    std::vector<char> s1(static_cast<std::size_t>(tau.size()), 0);
    for (const auto& eta : e1)
        for (int z : eta.zero_set()) s1[static_cast<std::size_t>(z - 1)] = 1;
    for (const auto& eta : e2)
        for (int z : eta.zero_set())
            if (s1[static_cast<std::size_t>(z - 1)]) {
                out.verdict = PartitionVerdict::fails_a;
                out.shared_zero = z;
                return out;
            }
    for (const auto& eta1 : e1) {
        const auto z1s = eta1.zero_set();
        const auto f1 = fill_one_zero(tau, eta1);
        for (const auto& eta2 : e2) {
            const auto z2s = eta2.zero_set();
            const auto f2 = fill_one_zero(tau, eta2);
            for (std::size_t a = 0; a < f1.size(); ++a)
                for (std::size_t b = 0; b < f2.size(); ++b)
                    if (f1[a] == f2[b]) {
                        out.verdict = PartitionVerdict::fails_b;
                        out.witness = FillWitness{eta1, eta2, z1s[a], z2s[b], f1[a]};
                        return out;
                    }
        }
    }
    return out;
}

struct DisconnectReport {
    bool disconnected = false;
    int rank = 0;
    /// Classes of embeddings forced together by (a) and (b); rank >= 3 only.
    std::vector<std::vector<Embedding>> blocks;
    /// First block against the rest, when disconnected with rank >= 3.
    std::vector<Embedding> e1, e2;
    /// Components of the open interval, used for ranks below 3.
    int components = 0;
    /// Rank-2 disconnected intervals are antichains, shellable anyway.
    bool trivially_shellable() const { return disconnected && rank == 2; }
};

/// Decides whether (sigma, tau) is disconnected.  For rank >= 3 this merges
/// embeddings that share a zero or violate (b); the interval is
/// disconnected iff more than one class survives.
inline DisconnectReport is_disconnected(const Permutation& sigma, const Permutation& tau) {
    if (!contains(sigma, tau))
        throw Error(ErrorKind::not_comparable, sigma.str() + " is not contained in " + tau.str());
    DisconnectReport r;
    r.rank = tau.size() - sigma.size();
    if (r.rank < 3) {
        if (r.rank == 2) r.components = static_cast<int>(open_components(sigma, tau).size());
        else r.components = 0;
        r.disconnected = r.components > 1;
        return r;
    }
    const auto embs = embeddings(sigma, tau);
    const auto n = embs.size();
    std::vector<std::vector<Permutation>> fills(n);
    for (std::size_t i = 0; i < n; ++i) {
        fills[i] = fill_one_zero(tau, embs[i]);
        std::sort(fills[i].begin(), fills[i].end());
    }
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto meets = [](const std::vector<Permutation>& a, const std::vector<Permutation>& b) {
        auto i = a.begin();
        auto j = b.begin();
        while (i != a.end() && j != b.end()) {
            if (*i == *j) return true;
            if (*i < *j) ++i;
            else ++j;
        }
        return false;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (find(i) == find(j)) continue;
            if (zero_sets_meet(embs[i], embs[j]) || meets(fills[i], fills[j])) parent[find(i)] = find(j);
        }
    std::vector<int> block_of(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const auto root = find(i);
        if (block_of[root] < 0) {
            block_of[root] = static_cast<int>(r.blocks.size());
            r.blocks.emplace_back();
        }
        r.blocks[static_cast<std::size_t>(block_of[root])].push_back(embs[i]);
    }
    r.components = static_cast<int>(r.blocks.size());
    r.disconnected = r.blocks.size() > 1;
    if (r.disconnected) {
        r.e1 = r.blocks.front();
        for (std::size_t b = 1; b < r.blocks.size(); ++b) r.e2.insert(r.e2.end(), r.blocks[b].begin(), r.blocks[b].end());
    }
    return r;
}

/// Number of parts, after checking that every pair of parts satisfies (a)
/// and (b); the open interval then has at least that many components.
inline int component_count_lower_bound(const Permutation& sigma, const Permutation& tau,
                                       const std::vector<std::vector<Embedding>>& parts) {
    if (parts.size() == 1) {
        detail::require_partition(sigma, tau, parts);
        return 1;
    }
    detail::require_rank_three(sigma, tau);
    detail::require_partition(sigma, tau, parts);
    for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::size_t b = a + 1; b < parts.size(); ++b)
            for (const auto& x : parts[a])
                for (const auto& y : parts[b]) {
                    if (zero_sets_meet(x, y))
                        throw Error(ErrorKind::invalid_partition, "parts share a zero position");
                    auto fx = fill_one_zero(tau, x);
                    auto fy = fill_one_zero(tau, y);
                    for (const auto& p : fx)
                        if (std::find(fy.begin(), fy.end(), p) != fy.end())
                            throw Error(ErrorKind::invalid_partition, "parts can be refilled to " + p.str());
                }
    return static_cast<int>(parts.size());
}

// ---------------------------------------------------------------------------
// Constructions

/// (sigma, sigma + sigma) if sigma is indecomposable, else the skew version.
inline std::pair<Permutation, Permutation> make_disconnected(const Permutation& sigma) {
    if (sigma.size() < 2) throw Error(ErrorKind::invalid_input, "sigma must have length at least 2");
    if (is_indecomposable(sigma, SumKind::direct)) return {sigma, direct_sum(sigma, sigma)};
    return {sigma, skew_sum(sigma, sigma)};
}

enum class AugmentMode { direct_left, skew_left, direct_right, skew_right };

inline std::pair<Permutation, Permutation> augment(const Permutation& sigma, const Permutation& tau,
                                                   const Permutation& alpha, AugmentMode mode) {
    switch (mode) {
        case AugmentMode::direct_left: return {direct_sum(alpha, sigma), direct_sum(alpha, tau)};
        case AugmentMode::skew_left: return {skew_sum(alpha, sigma), skew_sum(alpha, tau)};
        case AugmentMode::direct_right: return {direct_sum(sigma, alpha), direct_sum(tau, alpha)};
        case AugmentMode::skew_right: return {skew_sum(sigma, alpha), skew_sum(tau, alpha)};
    }
    return {sigma, tau};
}

// ---------------------------------------------------------------------------
// Subinterval scan

struct SubintervalWitness {
    Permutation x, y;
    int components = 0;
};

/// All pairs x < y in [sigma, tau] with rank difference >= 3 and (x, y)
/// disconnected, ordered by (x, y) position in the interval.
inline std::vector<SubintervalWitness> disconnected_subintervals(const PatternInterval& I) {
    std::vector<SubintervalWitness> out;
    for (int x = 0; x < I.size(); ++x)
        for_each_bit(I.above[static_cast<std::size_t>(x)], [&](int y) {
            if (I.rank[static_cast<std::size_t>(y)] - I.rank[static_cast<std::size_t>(x)] < 3) return;
            const auto comps = hasse_components(I, open_members(I, x, y));
            if (comps.size() > 1)
                out.push_back({I.elements[static_cast<std::size_t>(x)], I.elements[static_cast<std::size_t>(y)],
                               static_cast<int>(comps.size())});
        });
    return out;
}

inline std::optional<SubintervalWitness> has_nontrivial_disconnected_subinterval(const Permutation& sigma,
                                                                                 const Permutation& tau) {
    const auto I = build_interval(sigma, tau);
    for (int x = 0; x < I.size(); ++x) {
        std::optional<SubintervalWitness> hit;
        for_each_bit(I.above[static_cast<std::size_t>(x)], [&](int y) {
            if (hit || I.rank[static_cast<std::size_t>(y)] - I.rank[static_cast<std::size_t>(x)] < 3) return;
            const auto comps = hasse_components(I, open_members(I, x, y));
            if (comps.size() > 1)
                hit = SubintervalWitness{I.elements[static_cast<std::size_t>(x)], I.elements[static_cast<std::size_t>(y)],
                                         static_cast<int>(comps.size())};
        });
        if (hit) return hit;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Monte Carlo prevalence

struct PrevalenceEstimate {
    Permutation pattern;  // sigma + sigma or sigma - sigma
    int n = 0;
    long trials = 0;
    long hits = 0;
    std::uint64_t seed = 0;
    double frequency = 0;
    double std_error = 0;
    double bound = 0;  // 1 - (1 - 1/k!)^floor(n/k)
    bool consistent() const { return frequency > bound - 3 * std_error; }
};

/// Lower bound on the probability that a random permutation of length n
/// contains a fixed pattern of length k, from disjoint length-k blocks.
inline double block_lower_bound(int k, int n) {
    double factorial = 1;
    for (int i = 2; i <= k; ++i) factorial *= i;
    return 1.0 - std::pow(1.0 - 1.0 / factorial, n / k);
}

namespace detail {

/// Uniform integer in [0, bound) by rejection, independent of the
/// standard library's distribution implementation.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return x % bound;
}

}  // namespace detail

inline Permutation random_permutation(int n, std::mt19937_64& rng) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    for (int i = n - 1; i > 0; --i)
        std::swap(v[static_cast<std::size_t>(i)], v[detail::uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);
    return Permutation::from_standard(std::move(v));
}

inline PrevalenceEstimate monte_carlo_prevalence(const Permutation& sigma, int n, long trials, std::uint64_t seed) {
    if (sigma.size() < 2) throw Error(ErrorKind::invalid_input, "sigma must have length at least 2");
    if (trials <= 0 || n < 0) throw Error(ErrorKind::invalid_input, "trials must be positive and n nonnegative");
    PrevalenceEstimate est;
    est.pattern = make_disconnected(sigma).second;
    est.n = n;
    est.trials = trials;
    est.seed = seed;
    est.bound = block_lower_bound(est.pattern.size(), n);
    if (n >= est.pattern.size()) {
        std::mt19937_64 rng(seed);
        for (long t = 0; t < trials; ++t)
            if (contains(est.pattern, random_permutation(n, rng))) ++est.hits;
    }
    est.frequency = static_cast<double>(est.hits) / static_cast<double>(trials);
    est.std_error = std::sqrt(est.frequency * (1 - est.frequency) / static_cast<double>(trials));
    return est;
}

/// Exact fraction of S_n containing the pattern, by enumeration.
inline double exact_prevalence(const Permutation& sigma, int n) {
    const auto pattern = make_disconnected(sigma).second;
    long hits = 0, total = 0;
    for (const auto& tau : all_permutations(n)) {
        ++total;
        if (contains(pattern, tau)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace permtopo
