#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "permtopo/permutation.hpp"
#include "permtopo/poset.hpp"

namespace permtopo {

using PatternInterval = Interval<Permutation, PermutationHash>;

/// All distinct single deletions of pi.  Deleting any letter of a run gives
/// the same permutation, so one deletion per run suffices.
inline std::vector<Permutation> single_deletions(const Permutation& pi) {
    std::vector<Permutation> out;
    for (const auto& r : runs(pi)) out.push_back(remove_position(pi, r.first));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// [sigma, tau], built downward from tau one deletion at a time.  Every
/// element of the interval is reachable this way because the poset is
/// graded by length.
inline PatternInterval build_interval(const Permutation& sigma, const Permutation& tau) {
    if (!contains(sigma, tau))
        throw Error(ErrorKind::not_comparable, sigma.str() + " is not contained in " + tau.str());
    const int levels = tau.size() - sigma.size() + 1;
    // layer[r] holds the elements of length |sigma| + r.
    std::vector<std::vector<Permutation>> layer(static_cast<std::size_t>(levels));
    std::vector<std::unordered_map<Permutation, std::vector<Permutation>, PermutationHash>> lower(
        static_cast<std::size_t>(levels));
    layer.back().push_back(tau);
    for (int r = levels - 1; r > 0; --r) {
        std::unordered_set<Permutation, PermutationHash> next;
        for (const auto& pi : layer[static_cast<std::size_t>(r)]) {
            auto& below = lower[static_cast<std::size_t>(r)][pi];
            for (auto& d : single_deletions(pi)) {
                if (next.count(d) || contains(sigma, d)) {
                    next.insert(d);
                    below.push_back(std::move(d));
                }
            }
        }
        layer[static_cast<std::size_t>(r - 1)].assign(next.begin(), next.end());
        std::sort(layer[static_cast<std::size_t>(r - 1)].begin(), layer[static_cast<std::size_t>(r - 1)].end());
    }

    PatternInterval I;
    for (int r = 0; r < levels; ++r)
        for (const auto& pi : layer[static_cast<std::size_t>(r)]) {
            I.index.emplace(pi, I.size());
            I.elements.push_back(pi);
            I.rank.push_back(r);
        }
    I.down.assign(I.elements.size(), {});
    for (int r = 1; r < levels; ++r)
        for (const auto& [pi, below] : lower[static_cast<std::size_t>(r)]) {
            auto& d = I.down[static_cast<std::size_t>(I.index_of(pi))];
            for (const auto& b : below) d.push_back(I.index_of(b));
            std::sort(d.begin(), d.end());
        }
    I.bottom = sigma;
    I.top = tau;
    I.close();
    return I;
}

/// [empty, tau]: every pattern of tau.
inline PatternInterval build_down_set(const Permutation& tau) { return build_interval(Permutation{}, tau); }

/// Chain test by the removable-run criterion: [sigma, tau] is a chain iff
/// the removable letters of tau form a single run.
inline bool is_chain(const Permutation& sigma, const Permutation& tau) {
    const auto removable = removable_letters(sigma, tau);
    if (removable.empty()) return true;
    for (const auto& r : runs(tau))
        if (r.contains(removable.front())) return r.contains(removable.back());
    return false;
}

/// Number of runs of tau made of removable letters.  Removability is
/// constant along a run, so counting runs that meet the removable set is enough.
inline int removable_run_count(const Permutation& sigma, const Permutation& tau) {
    const auto removable = removable_letters(sigma, tau);
    int count = 0;
    for (const auto& r : runs(tau))
        if (std::any_of(removable.begin(), removable.end(), [&](int p) { return r.contains(p); })) ++count;
    return count;
}

/// Elements of rank 1 in the open interval (empty when the rank is below 2).
inline std::vector<Permutation> rank1_elements(const Permutation& sigma, const Permutation& tau) {
    if (!contains(sigma, tau))
        throw Error(ErrorKind::not_comparable, sigma.str() + " is not contained in " + tau.str());
    std::vector<Permutation> out;
    if (tau.size() - sigma.size() < 2) return out;
    const auto I = build_interval(sigma, tau);
    for (int i = 0; i < I.size(); ++i)
        if (I.rank[static_cast<std::size_t>(i)] == 1) out.push_back(I.elements[static_cast<std::size_t>(i)]);
    return out;
}

/// Components of the open interval (sigma, tau) as element lists.
inline std::vector<std::vector<Permutation>> open_components(const Permutation& sigma, const Permutation& tau) {
    const auto I = build_interval(sigma, tau);
    std::vector<std::vector<Permutation>> out;
    for (const auto& comp : open_components(static_cast<const HasseDiagram&>(I))) {
        std::vector<Permutation> elems;
        for (int i : comp) elems.push_back(I.elements[static_cast<std::size_t>(i)]);
        out.push_back(std::move(elems));
    }
    return out;
}

/// Isomorphism between two intervals, as a map of elements.
template <class Elem, class Hash>
std::optional<std::vector<std::pair<Elem, Elem>>> isomorphism_witness(const Interval<Elem, Hash>& A,
                                                                      const Interval<Elem, Hash>& B) {
    const auto map = find_isomorphism(A, B);
    if (!map) return std::nullopt;
    std::vector<std::pair<Elem, Elem>> out;
    for (int i = 0; i < A.size(); ++i)
        out.emplace_back(A.elements[static_cast<std::size_t>(i)], B.elements[static_cast<std::size_t>((*map)[static_cast<std::size_t>(i)])]);
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

inline nlohmann::json to_json(const PatternInterval& I) {
    nlohmann::json j;
    j["bottom"] = I.bottom.str();
    j["top"] = I.top.str();
    auto elems = nlohmann::json::array();
    for (const auto& e : I.elements) elems.push_back(e.str());
    j["elements"] = std::move(elems);
    auto covers = nlohmann::json::array();
    for (const auto& [hi, lo] : I.covers())
        covers.push_back({I.elements[static_cast<std::size_t>(hi)].str(), I.elements[static_cast<std::size_t>(lo)].str()});
    j["covers"] = std::move(covers);
    return j;
}

/// Reads {bottom, top, elements, covers}; ranks come from lengths.
inline PatternInterval interval_from_json(const nlohmann::json& j) {
    std::vector<Permutation> elems;
    for (const auto& e : j.at("elements")) elems.push_back(Permutation::parse(e.get<std::string>()));
    std::unordered_map<Permutation, std::vector<Permutation>, PermutationHash> lower;
    for (const auto& c : j.at("covers"))
        lower[Permutation::parse(c.at(0).get<std::string>())].push_back(Permutation::parse(c.at(1).get<std::string>()));
    auto I = assemble_interval<Permutation, PermutationHash>(
        std::move(elems), [](const Permutation& p) { return p.size(); },
        [&](const Permutation& p) {
            auto it = lower.find(p);
            return it == lower.end() ? std::vector<Permutation>{} : it->second;
        });
    return I;
}

}  // namespace permtopo
