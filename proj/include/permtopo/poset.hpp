#pragma once

// Finite graded posets with a unique bottom and top, stored as Hasse
// diagrams plus reflexive comparability bitsets.  Everything here is
// independent of what the elements are; pattern-poset and subword-order
// intervals both instantiate Interval<Elem>.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "permtopo/error.hpp"
#include "permtopo/integer.hpp"

namespace permtopo {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

template <class F>
void for_each_bit(const Bitset& bits, F&& f) {
    for (auto i = bits.find_first(); i != Bitset::npos; i = bits.find_next(i)) f(static_cast<int>(i));
}

/// Index 0 is the bottom, index size()-1 the top; indices are sorted by rank.
struct HasseDiagram {
    std::vector<int> rank;
    std::vector<std::vector<int>> up;    // elements covering i
    std::vector<std::vector<int>> down;  // elements covered by i
    std::vector<Bitset> below;           // below[i][j] <=> j <= i
    std::vector<Bitset> above;           // above[i][j] <=> j >= i

    int size() const noexcept { return static_cast<int>(rank.size()); }
    int bottom_index() const noexcept { return 0; }
    int top_index() const noexcept { return size() - 1; }
    /// Rank of the closed interval.
    int length() const noexcept { return rank.empty() ? 0 : rank.back(); }
    bool leq(int i, int j) const { return above[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    /// Closed interval [i, j] as a bitset over indices.
    Bitset between(int i, int j) const { return above[static_cast<std::size_t>(i)] & below[static_cast<std::size_t>(j)]; }
    std::size_t cover_count() const {
        std::size_t c = 0;
        for (const auto& d : down) c += d.size();
        return c;
    }

    /// Fills `up`, `below` and `above` from `down`; indices must be in rank order.
    void close() {
        const auto n = static_cast<std::size_t>(size());
        up.assign(n, {});
        for (std::size_t i = 0; i < n; ++i)
            for (int j : down[i]) up[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
        below.assign(n, Bitset(n));
        for (std::size_t i = 0; i < n; ++i) {
            below[i].set(i);
            for (int j : down[i]) below[i] |= below[static_cast<std::size_t>(j)];
        }
        above.assign(n, Bitset(n));
        for (std::size_t i = n; i-- > 0;) {
            above[i].set(i);
            for (int j : up[i]) above[i] |= above[static_cast<std::size_t>(j)];
        }
    }
};

/// Closed interval [bottom, top] with explicit elements and cover relations.
template <class Elem, class Hash = std::hash<Elem>>
struct Interval : HasseDiagram {
    Elem bottom{};
    Elem top{};
    std::vector<Elem> elements;
    std::unordered_map<Elem, int, Hash> index;

    int index_of(const Elem& e) const {
        auto it = index.find(e);
        return it == index.end() ? -1 : it->second;
    }
    bool has(const Elem& e) const { return index.count(e) > 0; }

    /// Cover pairs (upper, lower) as element indices.
    std::vector<std::pair<int, int>> covers() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < size(); ++i)
            for (int j : down[static_cast<std::size_t>(i)]) out.emplace_back(i, j);
        return out;
    }
};

/// Builds an interval from its element set.  `rank_of(e)` must grade the
/// set, and `lower_covers(e)` must return candidates covered by e (entries
/// not in the set are ignored).
template <class Elem, class Hash, class RankFn, class CoversFn>
Interval<Elem, Hash> assemble_interval(std::vector<Elem> elems, RankFn&& rank_of, CoversFn&& lower_covers) {
    std::vector<std::pair<int, Elem>> keyed;
    keyed.reserve(elems.size());
    for (auto& e : elems) keyed.emplace_back(rank_of(e), std::move(e));
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    if (keyed.empty()) throw Error(ErrorKind::invalid_input, "empty interval");

    Interval<Elem, Hash> I;
    const int base = keyed.front().first;
    for (auto& [r, e] : keyed) {
        I.index.emplace(e, static_cast<int>(I.elements.size()));
        I.rank.push_back(r - base);
        I.elements.push_back(std::move(e));
    }
    if (I.size() > 1 && (I.rank[1] == 0 || I.rank[I.size() - 2] == I.rank.back()))
        throw Error(ErrorKind::invalid_input, "interval must have a unique bottom and top");
    I.bottom = I.elements.front();
    I.top = I.elements.back();
    I.down.assign(I.elements.size(), {});
    for (std::size_t i = 0; i < I.elements.size(); ++i) {
        for (const auto& c : lower_covers(I.elements[i])) {
            const int j = I.index_of(c);
            if (j >= 0) I.down[i].push_back(j);
        }
        auto& d = I.down[i];
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
    }
    I.close();
    return I;
}

/// The closed subinterval [elements[lo], elements[hi]] with fresh indices.
template <class Elem, class Hash>
Interval<Elem, Hash> subinterval(const Interval<Elem, Hash>& I, int lo, int hi) {
    if (!I.leq(lo, hi)) throw Error(ErrorKind::not_comparable, "subinterval endpoints are not comparable");
    const Bitset members = I.between(lo, hi);
    std::vector<int> remap(static_cast<std::size_t>(I.size()), -1);
    Interval<Elem, Hash> S;
    for_each_bit(members, [&](int i) {
        remap[static_cast<std::size_t>(i)] = S.size();
        S.index.emplace(I.elements[static_cast<std::size_t>(i)], S.size());
        S.elements.push_back(I.elements[static_cast<std::size_t>(i)]);
        S.rank.push_back(I.rank[static_cast<std::size_t>(i)] - I.rank[static_cast<std::size_t>(lo)]);
    });
    S.down.assign(S.elements.size(), {});
    for_each_bit(members, [&](int i) {
        for (int j : I.down[static_cast<std::size_t>(i)])
            if (remap[static_cast<std::size_t>(j)] >= 0)
                S.down[static_cast<std::size_t>(remap[static_cast<std::size_t>(i)])].push_back(remap[static_cast<std::size_t>(j)]);
    });
    S.bottom = S.elements.front();
    S.top = S.elements.back();
    S.close();
    return S;
}

// ---------------------------------------------------------------------------
// Structural predicates

inline std::vector<long> rank_sizes(const HasseDiagram& P) {
    std::vector<long> sizes(static_cast<std::size_t>(P.length() + 1), 0);
    for (int r : P.rank) ++sizes[static_cast<std::size_t>(r)];
    return sizes;
}

/// a_0 <= ... <= a_k >= ... >= a_l.
inline bool is_rank_unimodal(std::span<const long> sizes) {
    std::size_t i = 1;
    while (i < sizes.size() && sizes[i] >= sizes[i - 1]) ++i;
    while (i < sizes.size() && sizes[i] <= sizes[i - 1]) ++i;
    return i >= sizes.size();
}

inline bool is_chain(const HasseDiagram& P) {
    return std::all_of(P.down.begin(), P.down.end(), [](const auto& d) { return d.size() <= 1; }) &&
           static_cast<int>(P.size()) == P.length() + 1;
}

/// Connected components of the Hasse graph restricted to `members`.
inline std::vector<std::vector<int>> hasse_components(const HasseDiagram& P, const Bitset& members) {
    std::vector<std::vector<int>> comps;
    Bitset seen(members.size());
    for_each_bit(members, [&](int start) {
        if (seen[static_cast<std::size_t>(start)]) return;
        std::vector<int> comp{start};
        seen.set(static_cast<std::size_t>(start));
        for (std::size_t k = 0; k < comp.size(); ++k) {
            const auto v = static_cast<std::size_t>(comp[k]);
            for (const auto* adj : {&P.up[v], &P.down[v]})
                for (int w : *adj)
                    if (members[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
                        seen.set(static_cast<std::size_t>(w));
                        comp.push_back(w);
                    }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    });
    return comps;
}

/// Open interval (lo, hi) as a bitset.
inline Bitset open_members(const HasseDiagram& P, int lo, int hi) {
    Bitset m = P.between(lo, hi);
    m.reset(static_cast<std::size_t>(lo));
    m.reset(static_cast<std::size_t>(hi));
    return m;
}

/// Components of the open interval (bottom, top), via cover edges.
inline std::vector<std::vector<int>> open_components(const HasseDiagram& P) {
    if (P.size() <= 2) return {};
    return hasse_components(P, open_members(P, P.bottom_index(), P.top_index()));
}

/// Same components computed from the full comparability relation.
inline std::vector<std::vector<int>> comparability_components(const HasseDiagram& P) {
    if (P.size() <= 2) return {};
    const Bitset members = open_members(P, P.bottom_index(), P.top_index());
    std::vector<std::vector<int>> comps;
    Bitset seen(members.size());
    for_each_bit(members, [&](int start) {
        if (seen[static_cast<std::size_t>(start)]) return;
        std::vector<int> comp{start};
        seen.set(static_cast<std::size_t>(start));
        for (std::size_t k = 0; k < comp.size(); ++k) {
            const auto v = static_cast<std::size_t>(comp[k]);
            Bitset next = (P.above[v] | P.below[v]) & members & ~seen;
            for_each_bit(next, [&](int w) {
                seen.set(static_cast<std::size_t>(w));
                comp.push_back(w);
            });
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    });
    return comps;
}

// ---------------------------------------------------------------------------
// Möbius function

/// mu(bottom, x) for every x, by the defining recursion.
inline std::vector<Integer> mobius_from_bottom(const HasseDiagram& P) {
    std::vector<Integer> mu(static_cast<std::size_t>(P.size()));
    for (int x = 0; x < P.size(); ++x) {
        if (x == P.bottom_index()) {
            mu[0] = 1;
            continue;
        }
        Integer s = 0;
        for_each_bit(P.below[static_cast<std::size_t>(x)], [&](int z) {
            if (z != x) s += mu[static_cast<std::size_t>(z)];
        });
        mu[static_cast<std::size_t>(x)] = -s;
    }
    return mu;
}

/// mu(x, top) for every x, by the dual recursion.
inline std::vector<Integer> mobius_to_top(const HasseDiagram& P) {
    std::vector<Integer> mu(static_cast<std::size_t>(P.size()));
    for (int x = P.size(); x-- > 0;) {
        if (x == P.top_index()) {
            mu[static_cast<std::size_t>(x)] = 1;
            continue;
        }
        Integer s = 0;
        for_each_bit(P.above[static_cast<std::size_t>(x)], [&](int z) {
            if (z != x) s += mu[static_cast<std::size_t>(z)];
        });
        mu[static_cast<std::size_t>(x)] = -s;
    }
    return mu;
}

// ---------------------------------------------------------------------------
// Antichains (Dilworth via bipartite matching)

/// Size of a maximum antichain among `members`, by Dilworth: the number
/// of elements minus a maximum matching of the strict order.
inline int max_antichain_size(const HasseDiagram& P, const Bitset& members) {
    std::vector<int> elems;
    for_each_bit(members, [&](int v) { elems.push_back(v); });
    const auto m = elems.size();
    std::vector<int> local(static_cast<std::size_t>(P.size()), -1);
    for (std::size_t a = 0; a < m; ++a) local[static_cast<std::size_t>(elems[a])] = static_cast<int>(a);
    std::vector<std::vector<int>> adj(m);
    for (std::size_t a = 0; a < m; ++a) {
        Bitset up = P.above[static_cast<std::size_t>(elems[a])] & members;
        up.reset(static_cast<std::size_t>(elems[a]));
        for_each_bit(up, [&](int b) { adj[a].push_back(local[static_cast<std::size_t>(b)]); });
    }
    std::vector<int> match_right(m, -1);
    std::vector<std::size_t> visited(m, m);
    auto augment = [&](auto&& self, std::size_t a, std::size_t stamp) -> bool {
        for (int b : adj[a]) {
            const auto bb = static_cast<std::size_t>(b);
            if (visited[bb] == stamp) continue;
            visited[bb] = stamp;
            if (match_right[bb] < 0 || self(self, static_cast<std::size_t>(match_right[bb]), stamp)) {
                match_right[bb] = static_cast<int>(a);
                return true;
            }
        }
        return false;
    };
    int matching = 0;
    for (std::size_t a = 0; a < m; ++a)
        if (augment(augment, a, a)) ++matching;
    return static_cast<int>(m) - matching;
}

/// Maximum antichain of the closed interval, or of the open one.
inline int max_antichain_size(const HasseDiagram& P, bool open = false) {
    if (open) return P.size() <= 2 ? 0 : max_antichain_size(P, open_members(P, P.bottom_index(), P.top_index()));
    return max_antichain_size(P, P.between(P.bottom_index(), P.top_index()));
}

struct SpernerReport {
    int max_antichain = 0;
    long max_rank_size = 0;
    bool sperner = false;
};

inline SpernerReport sperner_report(const HasseDiagram& P, bool open = false) {
    SpernerReport r;
    r.max_antichain = max_antichain_size(P, open);
    auto sizes = rank_sizes(P);
    if (open) {
        if (sizes.size() <= 2) sizes.clear();
        else sizes = std::vector<long>(sizes.begin() + 1, sizes.end() - 1);
    }
    r.max_rank_size = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
    r.sperner = r.max_antichain == r.max_rank_size;
    return r;
}

inline bool is_sperner(const HasseDiagram& P, bool open = false) { return sperner_report(P, open).sperner; }

// ---------------------------------------------------------------------------
// Isomorphism

namespace detail {

/// Joint colour refinement on the disjoint union of A and B, seeded by
/// (rank, up-degree, down-degree).
inline std::pair<std::vector<int>, std::vector<int>> refine_colours(const HasseDiagram& A, const HasseDiagram& B) {
    const HasseDiagram* graphs[2] = {&A, &B};
    std::vector<int> colour[2];
    {
        std::map<std::tuple<int, std::size_t, std::size_t>, int> ids;
        for (int g = 0; g < 2; ++g)
            for (int i = 0; i < graphs[g]->size(); ++i) {
                const auto u = static_cast<std::size_t>(i);
                auto key = std::make_tuple(graphs[g]->rank[u], graphs[g]->up[u].size(), graphs[g]->down[u].size());
                colour[g].push_back(ids.emplace(key, static_cast<int>(ids.size())).first->second);
            }
    }
    std::size_t classes = 0;
    for (;;) {
        std::map<std::tuple<int, std::vector<int>, std::vector<int>>, int> ids;
        std::vector<int> next[2];
        for (int g = 0; g < 2; ++g)
            for (int i = 0; i < graphs[g]->size(); ++i) {
                const auto u = static_cast<std::size_t>(i);
                std::vector<int> ups, downs;
                for (int w : graphs[g]->up[u]) ups.push_back(colour[g][static_cast<std::size_t>(w)]);
                for (int w : graphs[g]->down[u]) downs.push_back(colour[g][static_cast<std::size_t>(w)]);
                std::sort(ups.begin(), ups.end());
                std::sort(downs.begin(), downs.end());
                auto key = std::make_tuple(colour[g][u], std::move(ups), std::move(downs));
                next[g].push_back(ids.emplace(std::move(key), static_cast<int>(ids.size())).first->second);
            }
        colour[0] = std::move(next[0]);
        colour[1] = std::move(next[1]);
        if (ids.size() == classes) break;
        classes = ids.size();
    }
    return {std::move(colour[0]), std::move(colour[1])};
}

}  // namespace detail

/// A cover-preserving bijection A -> B (both directions), if one exists.
inline std::optional<std::vector<int>> find_isomorphism(const HasseDiagram& A, const HasseDiagram& B) {
    if (A.size() != B.size() || A.cover_count() != B.cover_count() || rank_sizes(A) != rank_sizes(B))
        return std::nullopt;
    const auto [ca, cb] = detail::refine_colours(A, B);
    {
        auto sa = ca, sb = cb;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }
    const int n = A.size();
    std::vector<int> map(static_cast<std::size_t>(n), -1), used(static_cast<std::size_t>(n), 0);
    // Rank order means every vertex after the bottom has an assigned lower cover.
    auto consistent = [&](int v, int w) {
        for (int x : A.down[static_cast<std::size_t>(v)]) {
            const int fx = map[static_cast<std::size_t>(x)];
            if (fx < 0) continue;
            const auto& d = B.down[static_cast<std::size_t>(w)];
            if (std::find(d.begin(), d.end(), fx) == d.end()) return false;
        }
        for (int x : A.up[static_cast<std::size_t>(v)]) {
            const int fx = map[static_cast<std::size_t>(x)];
            if (fx < 0) continue;
            const auto& u = B.up[static_cast<std::size_t>(w)];
            if (std::find(u.begin(), u.end(), fx) == u.end()) return false;
        }
        return true;
    };
    auto assign = [&](auto&& self, int v) -> bool {
        if (v == n) return true;
        for (int w = 0; w < n; ++w) {
            if (used[static_cast<std::size_t>(w)] || cb[static_cast<std::size_t>(w)] != ca[static_cast<std::size_t>(v)]) continue;
            if (!consistent(v, w)) continue;
            map[static_cast<std::size_t>(v)] = w;
            used[static_cast<std::size_t>(w)] = 1;
            if (self(self, v + 1)) return true;
            map[static_cast<std::size_t>(v)] = -1;
            used[static_cast<std::size_t>(w)] = 0;
        }
        return false;
    };
    if (!assign(assign, 0)) return std::nullopt;
    return map;
}

inline bool are_isomorphic(const HasseDiagram& A, const HasseDiagram& B) { return find_isomorphism(A, B).has_value(); }

/// True iff `map` is a bijection preserving covers in both directions.
inline bool is_isomorphism(const HasseDiagram& A, const HasseDiagram& B, std::span<const int> map) {
    if (A.size() != B.size() || static_cast<int>(map.size()) != A.size()) return false;
    std::vector<int> hit(static_cast<std::size_t>(B.size()), 0);
    for (int w : map) {
        if (w < 0 || w >= B.size() || hit[static_cast<std::size_t>(w)]++) return false;
    }
    if (A.cover_count() != B.cover_count()) return false;
    for (int v = 0; v < A.size(); ++v)
        for (int x : A.down[static_cast<std::size_t>(v)]) {
            const auto& d = B.down[static_cast<std::size_t>(map[static_cast<std::size_t>(v)])];
            if (std::find(d.begin(), d.end(), map[static_cast<std::size_t>(x)]) == d.end()) return false;
        }
    return true;
}

}  // namespace permtopo
