#pragma once

// Regression fixtures: the worked figures and examples, rebuilt from scratch
// and compared with hand-copied element and cover lists.

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "permtopo/disconnect.hpp"
#include "permtopo/mobius.hpp"
#include "permtopo/pattern_poset.hpp"
#include "permtopo/subword.hpp"

namespace permtopo {

struct FigureFixture {
    std::string name;
    std::string sigma, tau;
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> covers;  // (upper, lower)
};

inline const std::vector<FigureFixture>& figure_fixtures() {
    static const std::vector<FigureFixture> figs{
        {"figure-1",
         "1342",
         "1342675",
         {"1342", "21453", "12453", "13425", "231564", "132564", "123564", "134265", "134256", "1342675"},
         {{"21453", "1342"},     {"12453", "1342"},     {"13425", "1342"},     {"231564", "21453"},
          {"132564", "21453"},   {"231564", "12453"},   {"132564", "12453"},   {"123564", "12453"},
          {"134265", "13425"},   {"134256", "13425"},   {"1342675", "231564"}, {"1342675", "132564"},
          {"1342675", "123564"}, {"1342675", "134265"}, {"1342675", "134256"}}},
        {"figure-2",
         "123",
         "356124",
         {"123", "4123", "3124", "1342", "2341", "45123", "35124", "24513", "34512", "356124"},
         {{"4123", "123"},
          {"3124", "123"},
          {"1342", "123"},
          {"2341", "123"},
          {"45123", "4123"},
          {"35124", "4123"},
          {"35124", "3124"},
          {"24513", "1342"},
          {"24513", "2341"},
          {"34512", "2341"},
          {"356124", "45123"},
          {"356124", "35124"},
          {"356124", "24513"},
          {"356124", "34512"}}},
        {"figure-3",
         "123",
         "351624",
         {"123", "1423", "4123", "3124", "1342", "2341", "2314", "41523", "31524", "35124", "24513", "24153", "34152",
          "351624"},
         {{"1423", "123"},    {"4123", "123"},    {"3124", "123"},    {"1342", "123"},    {"2341", "123"},
          {"2314", "123"},    {"41523", "1423"},  {"31524", "1423"},  {"41523", "4123"},  {"35124", "4123"},
          {"31524", "3124"},  {"35124", "3124"},  {"24513", "1342"},  {"24153", "1342"},  {"24513", "2341"},
          {"34152", "2341"},  {"24153", "2314"},  {"34152", "2314"},  {"351624", "41523"}, {"351624", "31524"},
          {"351624", "35124"}, {"351624", "24513"}, {"351624", "24153"}, {"351624", "34152"}}},
    };
    return figs;
}

struct FixtureCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct FixtureReport {
    std::vector<FixtureCheck> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.ok; });
    }
    nlohmann::json to_json() const {
        auto j = nlohmann::json::array();
        for (const auto& c : checks) j.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        return {{"ok", ok()}, {"checks", j}};
    }
};

namespace detail {

inline std::set<std::pair<std::string, std::string>> cover_set(const PatternInterval& I) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& [hi, lo] : I.covers())
        out.emplace(I.elements[static_cast<std::size_t>(hi)].str(), I.elements[static_cast<std::size_t>(lo)].str());
    return out;
}

inline std::vector<std::size_t> sorted_sizes(const std::vector<std::vector<int>>& comps) {
    std::vector<std::size_t> s;
    for (const auto& c : comps) s.push_back(c.size());
    std::sort(s.begin(), s.end());
    return s;
}

inline std::string sizes_str(const std::vector<std::size_t>& s) {
    std::string out;
    for (auto x : s) out += (out.empty() ? "" : ",") + std::to_string(x);
    return out;
}

inline std::string labels_str(const std::vector<ChainLabel>& ls) {
    std::string out;
    for (const auto& l : ls) out += (out.empty() ? "" : " ") + l.str();
    return out;
}

}  // namespace detail

/// Diffs a rebuilt figure against its fixture.
inline FixtureCheck check_figure(const FigureFixture& fig) {
    const auto I = build_interval(Permutation::parse(fig.sigma), Permutation::parse(fig.tau));
    std::set<std::string> want(fig.elements.begin(), fig.elements.end()), got;
    for (const auto& e : I.elements) got.insert(e.str());
    const std::set<std::pair<std::string, std::string>> want_covers(fig.covers.begin(), fig.covers.end());
    const auto got_covers = detail::cover_set(I);
    FixtureCheck c{fig.name, want == got && want_covers == got_covers, {}};
    c.detail = std::to_string(got.size()) + " elements, " + std::to_string(got_covers.size()) + " covers";
    if (want != got) c.detail += "; element sets differ";
    if (want_covers != got_covers) c.detail += "; cover sets differ";
    return c;
}

inline FixtureCheck check_component_sizes(const std::string& name, const std::string& sigma, const std::string& tau,
                                          std::vector<std::size_t> want) {
    const auto I = build_interval(Permutation::parse(sigma), Permutation::parse(tau));
    const auto got = detail::sorted_sizes(open_components(I));
    std::sort(want.begin(), want.end());
    return {name, got == want, "component sizes " + detail::sizes_str(got)};
}

/// The open interval with every pi of mu(sigma, pi) = 0 removed still has
/// more than one component.
inline FixtureCheck check_disconnected_without_mobius_zeros(const std::string& sigma, const std::string& tau) {
    const auto I = build_interval(Permutation::parse(sigma), Permutation::parse(tau));
    const auto mu = mobius_from_bottom(I);
    Bitset keep = open_members(I, I.bottom_index(), I.top_index());
    int removed = 0;
    for (int i = 0; i < I.size(); ++i)
        if (keep.test(static_cast<std::size_t>(i)) && mu[static_cast<std::size_t>(i)] == 0) {
            keep.reset(static_cast<std::size_t>(i));
            ++removed;
        }
    const auto comps = hasse_components(I, keep);
    return {"figure-2-without-mobius-zeros", comps.size() > 1,
            "removed " + std::to_string(removed) + ", components " + detail::sizes_str(detail::sorted_sizes(comps))};
}

inline FixtureCheck check_mobius_example() {
    const auto sigma = Permutation::parse("12");
    const auto tau = Permutation::parse("24136857");
    MobiusCalculator calc;
    const auto I = build_interval(sigma, tau);
    const Integer brute = mobius_from_bottom(I).back();
    std::vector<Integer> terms;
    for (const auto& t : mobius_decomposable_terms(sigma, tau, calc)) terms.push_back(t.value);
    std::sort(terms.begin(), terms.end());
    const bool ok = I.size() == 62 && I.covers().size() == 223 && brute == 12 &&
                    mobius_decomposable(sigma, tau, calc) == 12 && mobius_bjjs_two(sigma, tau, calc) == 12 &&
                    terms == std::vector<Integer>{0, 3, 9} &&
                    calc.mu(sigma, Permutation::parse("2413")) == 3 &&
                    calc.mu(Permutation::parse("1"), Permutation::parse("2413")) == -3;
    std::string detail = std::to_string(I.size()) + " elements, " + std::to_string(I.covers().size()) +
                         " covers, mu " + brute.str() + ", terms";
    for (const auto& t : terms) detail += " " + t.str();
    return {"mobius-example", ok, detail};
}

inline FixtureCheck check_labels(const std::string& name, const std::vector<std::string>& chain, bool modified,
                                 const std::vector<ChainLabel>& want) {
    std::vector<Word> words;
    for (const auto& s : chain) words.push_back(strip_zeros(parse_word(s)));
    const auto f = ForestPoset::chain(9);
    const auto got = modified ? modified_position_labels(f, words) : position_labels(f, words);
    return {name, got == want, detail::labels_str(got)};
}

/// [22, 222] over the positive integers: three maximal chains, all weakly
/// increasing under plain position labels, exactly one under modified ones.
inline FixtureCheck check_figure_5() {
    const auto f = ForestPoset::chain(9);
    const auto I = build_word_interval(f, parse_word("22"), parse_word("222"));
    const std::vector<std::vector<Word>> chains{{parse_word("222"), parse_word("122"), parse_word("22")},
                                                {parse_word("222"), parse_word("212"), parse_word("22")},
                                                {parse_word("222"), parse_word("221"), parse_word("22")}};
    const std::vector<std::vector<ChainLabel>> want{{{1, false}, {1, false}}, {{2, false}, {2, true}}, {{3, false}, {3, true}}};
    int plain_increasing = 0, modified_increasing = 0;
    bool labels_match = true;
    std::string detail;
    for (std::size_t k = 0; k < chains.size(); ++k) {
        const auto plain = position_labels(f, chains[k]);
        const auto mod = modified_position_labels(f, chains[k]);
        plain_increasing += std::is_sorted(plain.begin(), plain.end()) ? 1 : 0;
        modified_increasing += std::is_sorted(mod.begin(), mod.end()) ? 1 : 0;
        labels_match = labels_match && mod == want[k];
        detail += (detail.empty() ? "(" : " (") + detail::labels_str(mod) + ")";
    }
    const bool ok = I.size() == 5 && labels_match && plain_increasing == 3 && modified_increasing == 1;
    detail += "; weakly increasing " + std::to_string(plain_increasing) + " plain, " +
              std::to_string(modified_increasing) + " modified";
    return {"figure-5", ok, detail};
}

inline FixtureReport fixtures() {
    FixtureReport r;
    for (const auto& fig : figure_fixtures()) r.checks.push_back(check_figure(fig));
    r.checks.push_back(check_component_sizes("figure-1-components", "1342", "1342675", {5, 3}));
    r.checks.push_back(check_component_sizes("figure-3-components", "123", "351624", {6, 6}));
    r.checks.push_back(check_disconnected_without_mobius_zeros("123", "356124"));
    r.checks.push_back(check_mobius_example());
    r.checks.push_back(check_labels("position-labels-3212", {"3212", "2212", "2112", "2012", "1012"}, false,
                                    {{1, false}, {2, false}, {2, false}, {1, false}}));
    r.checks.push_back(check_labels("modified-labels-2211", {"2211", "1211", "0211", "0201", "0200"}, true,
                                    {{1, false}, {1, false}, {3, false}, {4, false}}));
    r.checks.push_back(check_figure_5());
    return r;
}

}  // namespace permtopo
