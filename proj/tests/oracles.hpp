#pragma once

// Slow reference implementations.  They share nothing with the library
// beyond the Permutation value type and are used only in tests.

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "permtopo/permutation.hpp"

namespace oracle {

using permtopo::Permutation;

/// Standard form by ranking each letter among the others.
inline std::vector<int> standardize(const std::vector<int>& v) {
    std::vector<int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = 1 + static_cast<int>(std::count_if(v.begin(), v.end(), [&](int x) { return x < v[i]; }));
    return out;
}

/// Containment by trying every subset of positions of the right size.
inline bool contains(const Permutation& sigma, const Permutation& tau) {
    const int k = sigma.size(), n = tau.size();
    if (k > n) return false;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != k) continue;
        std::vector<int> sub;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) sub.push_back(tau[i]);
        if (std::ranges::equal(standardize(sub), sigma.letters())) return true;
    }
    return false;
}

/// Every pattern of tau, one standardized subsequence per position subset.
inline std::set<Permutation> down_set(const Permutation& tau) {
    std::set<Permutation> out;
    const int n = tau.size();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> sub;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) sub.push_back(tau[i]);
        out.insert(Permutation::from_standard(standardize(sub)));
    }
    return out;
}

/// Every permutation of length n, by std::next_permutation.
inline std::vector<Permutation> perms(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    std::vector<Permutation> out;
    do out.push_back(Permutation::from_standard(v));
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

/// {pi : sigma <= pi <= tau} by scanning all permutations of each length.
inline std::set<Permutation> interval(const Permutation& sigma, const Permutation& tau) {
    std::set<Permutation> out;
    for (int n = sigma.size(); n <= tau.size(); ++n)
        for (const auto& p : perms(n))
            if (oracle::contains(sigma, p) && oracle::contains(p, tau)) out.insert(p);
    return out;
}

/// mu(sigma, tau) from the defining recursion on the oracle interval.
inline long mobius(const Permutation& sigma, const Permutation& tau) {
    const auto elems = interval(sigma, tau);
    std::map<Permutation, long> mu;
    for (const auto& p : elems) {  // set order is by length first
        if (p == sigma) {
            mu[p] = 1;
            continue;
        }
        long s = 0;
        for (const auto& [q, v] : mu)
            if (q.size() < p.size() && oracle::contains(q, p)) s += v;
        mu[p] = -s;
    }
    return mu.count(tau) ? mu[tau] : 0;
}

/// Connected components of the comparability graph on `elems`.
inline std::vector<std::size_t> component_sizes(const std::vector<Permutation>& elems) {
    std::vector<int> parent(elems.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j)
            if (i != j && oracle::contains(elems[i], elems[j])) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
    std::map<int, std::size_t> count;
    for (std::size_t i = 0; i < elems.size(); ++i) ++count[find(static_cast<int>(i))];
    std::vector<std::size_t> out;
    for (const auto& [r, c] : count) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

/// Largest antichain by trying subsets from the largest down; |elems| <= 20.
inline int max_antichain(const std::vector<Permutation>& elems) {
    const int n = static_cast<int>(elems.size());
    int best = 0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        const int size = std::popcount(mask);
        if (size <= best) continue;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j)
                if (i != j && (mask >> i & 1u) && (mask >> j & 1u) && oracle::contains(elems[i], elems[j])) ok = false;
        if (ok) best = size;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Words over the positive integers as a chain

using Word = std::vector<int>;

/// u <= w: some order-preserving injection with u(j) <= w(i_j), by search.
inline bool word_leq(const Word& u, const Word& w, std::size_t i = 0, std::size_t j = 0) {
    if (i == u.size()) return true;
    for (std::size_t k = j; k < w.size(); ++k)
        if (u[i] <= w[k] && word_leq(u, w, i + 1, k + 1)) return true;
    return false;
}

inline int word_rank(const Word& w) { return std::accumulate(w.begin(), w.end(), 0); }

/// Every word with letters in 1..max_letter and at most max_parts letters.
inline std::vector<Word> all_words(int max_letter, int max_parts) {
    std::vector<Word> out{{}};
    for (std::size_t start = 0; start < out.size(); ++start) {
        if (static_cast<int>(out[start].size()) == max_parts) continue;
        for (int a = 1; a <= max_letter; ++a) {
            Word next = out[start];
            next.push_back(a);
            out.push_back(next);
        }
    }
    return out;
}

inline std::vector<Word> word_interval(const Word& u, const Word& w) {
    const int top = w.empty() ? 1 : *std::max_element(w.begin(), w.end());
    std::vector<Word> out;
    for (const auto& v : all_words(top, static_cast<int>(w.size())))
        if (word_leq(u, v) && word_leq(v, w)) out.push_back(v);
    return out;
}

/// Components of the open word interval's comparability graph.
inline std::size_t word_open_components(const Word& u, const Word& w) {
    std::vector<Word> open;
    for (const auto& v : word_interval(u, w))
        if (v != u && v != w) open.push_back(v);
    std::vector<int> parent(open.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (std::size_t i = 0; i < open.size(); ++i)
        for (std::size_t j = 0; j < open.size(); ++j)
            if (i != j && word_leq(open[i], open[j])) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
    std::set<int> roots;
    for (std::size_t i = 0; i < open.size(); ++i) roots.insert(find(static_cast<int>(i)));
    return roots.size();
}

}  // namespace oracle
