#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "permtopo/integer.hpp"
#include "permtopo/pattern_poset.hpp"
#include "permtopo/permutation.hpp"

namespace permtopo {

/// mu(sigma, tau) by the defining recursion over [sigma, tau].
inline Integer mobius_brute(const Permutation& sigma, const Permutation& tau) {
    const auto I = build_interval(sigma, tau);
    return mobius_from_bottom(I).back();
}

/// mu(sigma, pi) for every pi in [sigma, tau].
struct MobiusTable {
    Permutation base;
    std::vector<Permutation> elements;
    std::vector<Integer> values;

    static MobiusTable build(const Permutation& sigma, const Permutation& tau) {
        const auto I = build_interval(sigma, tau);
        return {sigma, I.elements, mobius_from_bottom(I)};
    }
};

/// Packs a permutation of length <= 15 into one word: length in the low
/// nibble, then one nibble per letter.
inline std::optional<std::uint64_t> pack(const Permutation& pi) {
    if (pi.size() > 15) return std::nullopt;
    std::uint64_t key = static_cast<std::uint64_t>(pi.size());
    for (int i = 0; i < pi.size(); ++i) key |= static_cast<std::uint64_t>(pi[i] & 0xF) << (4 * (i + 1));
    return key;
}

/// Caches mu(., tau) over the down-set of tau, one column per tau.
/// Not thread-safe; use one per worker.
class MobiusCalculator {
public:
    /// mu(sigma, tau), zero when sigma is not contained in tau.
    Integer mu(const Permutation& sigma, const Permutation& tau) {
        if (sigma.size() > tau.size()) return 0;
        if (sigma.size() == tau.size()) return sigma == tau ? 1 : 0;
        const auto key = pack(tau);
        if (!key) return contains(sigma, tau) ? mobius_brute(sigma, tau) : Integer(0);
        auto it = columns_.find(*key);
        if (it == columns_.end()) it = columns_.emplace(*key, make_column(tau)).first;
        const auto& col = it->second;
        const auto probe = *pack(sigma);
        auto pos = std::lower_bound(col.begin(), col.end(), probe,
                                    [](const auto& entry, std::uint64_t k) { return entry.first < k; });
        return pos != col.end() && pos->first == probe ? pos->second : Integer(0);
    }

    std::size_t cached_columns() const noexcept { return columns_.size(); }

private:
    using Column = std::vector<std::pair<std::uint64_t, Integer>>;

    static Column make_column(const Permutation& tau) {
        const auto I = build_down_set(tau);
        auto mu = mobius_to_top(I);
        Column col;
        col.reserve(I.elements.size());
        for (std::size_t i = 0; i < I.elements.size(); ++i) col.emplace_back(*pack(I.elements[i]), std::move(mu[i]));
        std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return col;
    }

    std::unordered_map<std::uint64_t, Column> columns_;
};

namespace detail {

inline Permutation sum_range(const std::vector<Permutation>& parts, std::size_t from, std::size_t to, SumKind kind) {
    return sum_of(std::span<const Permutation>(parts.data() + from, to - from), kind);
}

inline std::vector<Permutation> components_or_empty(const Permutation& pi, SumKind kind) {
    return pi.empty() ? std::vector<Permutation>{} : finest_decomposition(pi, kind).components;
}

}  // namespace detail

/// One summand of the unified recursion: the split of sigma and its product.
struct MobiusTerm {
    std::vector<Permutation> split;  // sigma_1, ..., sigma_t, possibly empty
    Integer value;
};

/// Every split sigma = sigma_1 (+) ... (+) sigma_t with sigma_m <= tau_m,
/// together with its contribution to mu(sigma, tau).
inline std::vector<MobiusTerm> mobius_decomposable_terms(const Permutation& sigma, const Permutation& tau,
                                                        MobiusCalculator& calc, SumKind kind = SumKind::direct) {
    if (tau.empty()) throw Error(ErrorKind::precondition, "tau must be nonempty");
    const auto tparts = finest_decomposition(tau, kind).components;
    const auto sparts = detail::components_or_empty(sigma, kind);
    const std::size_t t = tparts.size();
    const std::size_t s = sparts.size();
    std::vector<MobiusTerm> terms;
    // cut[m] is where block m starts in the component list of sigma.
    std::vector<std::size_t> cut(t + 1, 0);
    cut[t] = s;
    std::vector<Permutation> split(t);
    std::vector<Integer> factor(t);
    auto place = [&](auto&& self, std::size_t m, std::size_t from) -> void {
        if (m == t) {
            Integer product = 1;
            for (const auto& f : factor) product *= f;
            terms.push_back({split, product});
            return;
        }
        // The last block takes whatever is left.
        for (std::size_t to = (m + 1 == t) ? s : from; to <= s; ++to) {
            split[m] = detail::sum_range(sparts, from, to, kind);
            if (!contains(split[m], tparts[m])) continue;
            factor[m] = calc.mu(split[m], tparts[m]);
            if (split[m].empty() && m > 0 && tparts[m - 1] == tparts[m]) factor[m] += 1;
            self(self, m + 1, to);
        }
    };
    place(place, 0, 0);
    return terms;
}

/// mu(sigma, tau) by the unified recursion over the finest decomposition
/// of tau; components are evaluated by brute force.
inline Integer mobius_decomposable(const Permutation& sigma, const Permutation& tau, MobiusCalculator& calc,
                                   SumKind kind = SumKind::direct) {
    if (!contains(sigma, tau))
        throw Error(ErrorKind::not_comparable, sigma.str() + " is not contained in " + tau.str());
    if (tau.empty()) return 1;
    Integer total = 0;
    for (const auto& term : mobius_decomposable_terms(sigma, tau, calc, kind)) total += term.value;
    return total;
}

inline Integer mobius_decomposable(const Permutation& sigma, const Permutation& tau, SumKind kind = SumKind::direct) {
    MobiusCalculator calc;
    return mobius_decomposable(sigma, tau, calc, kind);
}

namespace detail {

inline int leading_equal(const std::vector<Permutation>& parts, const Permutation& first) {
    int k = 0;
    while (k < static_cast<int>(parts.size()) && parts[static_cast<std::size_t>(k)] == first) ++k;
    return k;
}

inline void check_bjjs(const Permutation& sigma, const std::vector<Permutation>& tparts) {
    if (sigma.empty()) throw Error(ErrorKind::precondition, "sigma must be nonempty");
    if (tparts.size() < 2) throw Error(ErrorKind::precondition, "tau must have at least two components");
}

}  // namespace detail

/// Case tau_1 = 1, with k leading 1-components in tau and l in sigma.
inline Integer mobius_bjjs_one(const Permutation& sigma, const Permutation& tau, MobiusCalculator& calc,
                               SumKind kind = SumKind::direct) {
    if (tau.empty()) throw Error(ErrorKind::precondition, "tau must be nonempty");
    const auto tparts = finest_decomposition(tau, kind).components;
    detail::check_bjjs(sigma, tparts);
    if (tparts.front() != ones(1)) throw Error(ErrorKind::precondition, "first component of tau must be 1");
    const auto sparts = finest_decomposition(sigma, kind).components;
    const int k = detail::leading_equal(tparts, ones(1));
    const int l = detail::leading_equal(sparts, ones(1));
    const auto s = sparts.size();
    const auto tail_tau = detail::sum_range(tparts, static_cast<std::size_t>(k), tparts.size(), kind);
    auto tail_sigma = [&](int from) {
        return detail::sum_range(sparts, std::min(static_cast<std::size_t>(from), s), s, kind);
    };
    if (k - 1 > l) return 0;
    if (k - 1 == l) return -calc.mu(tail_sigma(k - 1), tail_tau);
    return calc.mu(tail_sigma(k), tail_tau) - calc.mu(tail_sigma(k - 1), tail_tau);
}

/// Case tau_1 > 1, with k leading components equal to tau_1.
inline Integer mobius_bjjs_two(const Permutation& sigma, const Permutation& tau, MobiusCalculator& calc,
                               SumKind kind = SumKind::direct) {
    if (tau.empty()) throw Error(ErrorKind::precondition, "tau must be nonempty");
    const auto tparts = finest_decomposition(tau, kind).components;
    detail::check_bjjs(sigma, tparts);
    if (tparts.front().size() <= 1) throw Error(ErrorKind::precondition, "first component of tau must exceed 1");
    const auto sparts = finest_decomposition(sigma, kind).components;
    const int k = detail::leading_equal(tparts, tparts.front());
    const auto s = sparts.size();
    Integer total = 0;
    for (std::size_t i = 1; i <= s; ++i) {
        const Integer head = calc.mu(detail::sum_range(sparts, 0, i, kind), tparts.front());
        if (head == 0) continue;
        const auto rest = detail::sum_range(sparts, i, s, kind);
        for (int j = 1; j <= k; ++j)
            total += head * calc.mu(rest, detail::sum_range(tparts, static_cast<std::size_t>(j), tparts.size(), kind));
    }
    return total;
}

inline Integer mobius_bjjs_one(const Permutation& sigma, const Permutation& tau, SumKind kind = SumKind::direct) {
    MobiusCalculator calc;
    return mobius_bjjs_one(sigma, tau, calc, kind);
}

inline Integer mobius_bjjs_two(const Permutation& sigma, const Permutation& tau, SumKind kind = SumKind::direct) {
    MobiusCalculator calc;
    return mobius_bjjs_two(sigma, tau, calc, kind);
}

/// Which of the two older recursions applies to (sigma, tau), if any.
enum class BjjsCase { none, one, two };

inline BjjsCase bjjs_case(const Permutation& sigma, const Permutation& tau, SumKind kind = SumKind::direct) {
    if (sigma.empty() || tau.empty()) return BjjsCase::none;
    const auto d = finest_decomposition(tau, kind);
    if (d.count() < 2) return BjjsCase::none;
    return d.components.front().size() == 1 ? BjjsCase::one : BjjsCase::two;
}

/// The skew form of the unified recursion.
inline Integer mobius_skew_variants(const Permutation& sigma, const Permutation& tau, MobiusCalculator& calc) {
    return mobius_decomposable(sigma, tau, calc, SumKind::skew);
}

inline Integer mobius_skew_variants(const Permutation& sigma, const Permutation& tau) {
    MobiusCalculator calc;
    return mobius_skew_variants(sigma, tau, calc);
}

/// Outcome of comparing every available method on one pair.
struct MobiusComparison {
    Integer brute;
    std::optional<Integer> decomposable;
    std::optional<Integer> skew_decomposable;
    std::optional<Integer> bjjs;
    std::optional<Integer> bjjs_skew;
    bool agree() const {
        for (const auto* v : {&decomposable, &skew_decomposable, &bjjs, &bjjs_skew})
            if (*v && **v != brute) return false;
        return true;
    }
};

/// `brute` is passed in so sweeps can read it off a down-set column.
inline MobiusComparison compare_mobius(const Permutation& sigma, const Permutation& tau, const Integer& brute,
                                       MobiusCalculator& calc) {
    MobiusComparison c{brute, {}, {}, {}, {}};
    if (tau.empty()) return c;
    for (SumKind kind : {SumKind::direct, SumKind::skew}) {
        if (finest_decomposition(tau, kind).count() < 2) continue;
        const bool direct = kind == SumKind::direct;
        (direct ? c.decomposable : c.skew_decomposable) = mobius_decomposable(sigma, tau, calc, kind);
        switch (bjjs_case(sigma, tau, kind)) {
            case BjjsCase::one: (direct ? c.bjjs : c.bjjs_skew) = mobius_bjjs_one(sigma, tau, calc, kind); break;
            case BjjsCase::two: (direct ? c.bjjs : c.bjjs_skew) = mobius_bjjs_two(sigma, tau, calc, kind); break;
            case BjjsCase::none: break;
        }
    }
    return c;
}

}  // namespace permtopo
