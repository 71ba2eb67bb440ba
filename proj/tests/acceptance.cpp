// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Time limits are wall-clock on the build machine and are part of the check.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "permtopo/permtopo.hpp"

using namespace permtopo;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;  // 0 = untimed
    std::function<Outcome()> run;
};

Permutation P(const char* s) { return Permutation::parse(s); }
Word W(const char* s) { return parse_word(s); }

ScanOptions scan_options(int max_n) {
    ScanOptions o;
    o.max_n = max_n;
    o.jobs = default_jobs();
    return o;
}

std::string join(const std::vector<ChainLabel>& ls) {
    std::string out;
    for (const auto& l : ls) out += (out.empty() ? "" : ",") + l.str();
    return "(" + out + ")";
}

Outcome c1_mobius_values() {
    MobiusCalculator calc;
    const auto a = mobius_brute(P("12"), P("2413"));
    const auto b = mobius_brute(P("1"), P("2413"));
    const auto c = mobius_decomposable(P("12"), P("24136857"), calc);
    std::multiset<Integer> terms;
    for (const auto& t : mobius_decomposable_terms(P("12"), P("24136857"), calc)) terms.insert(t.value);
    const bool ok = a == 3 && b == -3 && c == 12 && mobius_brute(P("12"), P("24136857")) == 12 &&
                    terms == std::multiset<Integer>{9, 0, 3};
    return {ok, "mu(12,2413)=" + a.str() + " mu(1,2413)=" + b.str() + " mu(12,24136857)=" + c.str() + " terms 9,0,3"};
}

Outcome c2_interval_size() {
    const auto I = build_interval(P("12"), P("24136857"));
    return {I.size() == 62 && I.covers().size() == 223,
            std::to_string(I.size()) + " elements, " + std::to_string(I.covers().size()) + " covers"};
}

Outcome c3_fixtures() {
    const auto r = fixtures();
    std::string detail;
    int passed = 0;
    for (const auto& c : r.checks) {
        if (c.ok) ++passed;
        else detail += " " + c.name + "[" + c.detail + "]";
    }
    return {r.ok(), std::to_string(passed) + "/" + std::to_string(r.checks.size()) + " fixture checks" + detail};
}

Outcome c4_mobius_sweep() {
    const auto r = scan_mobius_agreement(scan_options(7));
    const auto& n = r.summary.counts;
    std::ostringstream d;
    d << r.summary.intervals << " pairs, " << n.at("decomposable_checked") << " decomposable, " << n.at("bjjs_checked")
      << " older-recursion, " << r.summary.disagreements << " disagreements";
    return {r.summary.disagreements == 0 && n.at("decomposable_checked") > 0 && n.at("bjjs_checked") > 0, d.str()};
}

Outcome c5_partition_vs_graph() {
    const auto r = scan_disconnected(scan_options(7));
    std::ostringstream d;
    d << r.summary.intervals << " rank>=3 intervals, " << r.summary.findings << " disconnected, "
      << r.summary.disagreements << " disagreements";
    return {r.summary.disagreements == 0 && r.summary.intervals > 0, d.str()};
}

Outcome c6_census() {
    const auto small = scan_disconnected(scan_options(5));
    const auto six = scan_disconnected(scan_options(6));
    std::set<std::pair<std::string, std::string>> found;
    for (const auto& rec : six.records) found.emplace(rec.sigma, rec.tau);
    const bool iso = are_isomorphic(build_interval(P("213"), P("254613")), build_interval(P("1342"), P("1342675")));
    const bool ok = small.records.empty() && found.count({"123", "356124"}) && found.count({"123", "351624"}) &&
                    found.count({"213", "254613"}) && iso;
    return {ok, std::to_string(small.records.size()) + " at |tau|<=5, " + std::to_string(found.size()) +
                    " at |tau|<=6, [213,254613] isomorphic to figure 1: " + (iso ? "yes" : "no")};
}

Outcome c7_subword_table() {
    const auto f = ForestPoset::chain(9);
    const bool a = certify_dual_cl(f, W("141"), W("23141")).certified;
    const bool b = certify_dual_cl(f, W("11"), W("221")).certified;
    const auto r = certify_dual_cl(f, W("121"), W("23141"));
    const bool c = !r.certified && r.refutation && word_str(r.refutation->u_prime) == "131" &&
                   word_str(r.refutation->w_prime) == "1331";
    const auto l1 = position_labels(f, {W("3212"), W("2212"), W("2112"), W("212"), W("112")});
    const auto l2 = modified_position_labels(f, {W("2211"), W("1211"), W("211"), W("21"), W("2")});
    const auto fig5 = check_figure_5();
    const bool ok = a && b && c && join(l1) == "(1,2,2,1)" && join(l2) == "(1,1,3,4)" && fig5.ok;
    return {ok, std::string("certified 141/23141 ") + (a ? "yes" : "no") + ", 11/221 " + (b ? "yes" : "no") +
                    ", 121/23141 refuted by [131,1331] " + (c ? "yes" : "no") + ", labels " + join(l1) + " " +
                    join(l2) + ", figure 5 " + fig5.detail};
}

Outcome c8_certified_are_wedges() {
    const auto f = ForestPoset::chain(7);
    std::vector<Word> tops{{}};
    for (std::size_t k = 0; k < tops.size(); ++k)
        for (int a = 1; a <= 7; ++a) {
            Word w = tops[k];
            w.push_back(a);
            if (rk(f, w) <= 7) tops.push_back(w);
        }
    long certified = 0, bad = 0;
    std::string first_bad;
    for (const auto& w : tops) {
        const auto down = build_word_interval(f, {}, w);
        for (const auto& u : down.elements) {
            if (!certify_dual_cl(f, u, w).certified) continue;
            ++certified;
            const auto rep = wedge_of_spheres_check(build_word_interval(f, u, w));
            if (!rep.wedge && bad++ == 0) first_bad = word_str(u) + " " + word_str(w);
        }
    }
    return {bad == 0 && certified > 0, std::to_string(certified) + " certified intervals with rk(w)<=7, " +
                                           std::to_string(bad) + " not wedges" + (bad ? " first " + first_bad : "")};
}

Outcome c9_not_cohen_macaulay() {
    const auto I = build_interval(P("123"), P("3416725"));
    const auto rep = is_cohen_macaulay(I);
    const auto sub = has_nontrivial_disconnected_subinterval(P("123"), P("3416725"));
    std::string detail = std::string("CM over Q: ") + (rep.cohen_macaulay ? "true" : "false");
    if (rep.failing) {
        detail += ", failing (" + I.elements[static_cast<std::size_t>(rep.failing->first)].str() + "," +
                  I.elements[static_cast<std::size_t>(rep.failing->second)].str() + ") betti";
        for (auto v : rep.failing_betti->values) detail += " " + std::to_string(v);
    }
    detail += std::string(", disconnected subinterval: ") + (sub ? "yes" : "no");
    return {!rep.cohen_macaulay && !sub, detail};
}

Outcome c10_euler() {
    const auto r = scan_euler(scan_options(6));
    std::ostringstream d;
    d << r.summary.intervals << " intervals, " << r.summary.findings << " mismatches, " << r.summary.skipped << " skipped";
    return {r.summary.findings == 0 && r.summary.skipped == 0 && r.summary.intervals > 0, d.str()};
}

Outcome c11_unimodal() {
    const auto r = scan_unimodal(scan_options(7));
    std::ostringstream d;
    d << r.summary.intervals << " intervals, " << r.summary.findings << " violations";
    return {r.summary.findings == 0, d.str()};
}

Outcome c12_monte_carlo() {
    const auto a = monte_carlo_prevalence(P("21"), 20, 2000, 12345);
    const auto b = monte_carlo_prevalence(P("21"), 20, 2000, 12345);
    const double bound = 1 - std::pow(1 - 1.0 / 24, 5);
    std::ostringstream d;
    d << std::setprecision(4) << "frequency " << a.frequency << ", bound " << bound << ", 3 std errors "
      << 3 * a.std_error << ", repeat hits " << a.hits << "/" << b.hits;
    const bool ok = a.hits == b.hits && std::abs(a.bound - bound) < 1e-12 && a.frequency > bound - 3 * a.std_error;
    return {ok, d.str()};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "mobius values", 1, c1_mobius_values},
        {2, "interval [12,24136857] size", 5, c2_interval_size},
        {3, "figure fixtures", 0, c3_fixtures},
        {4, "mobius equivalence sweep |tau|<=7", 600, c4_mobius_sweep},
        {5, "partition test vs graph components |tau|<=7", 0, c5_partition_vs_graph},
        {6, "disconnected census", 0, c6_census},
        {7, "subword certifier table", 0, c7_subword_table},
        {8, "certified word intervals are wedges", 0, c8_certified_are_wedges},
        {9, "[123,3416725] not Cohen-Macaulay", 120, c9_not_cohen_macaulay},
        {10, "euler characteristic equals mu |tau|<=6", 0, c10_euler},
        {11, "rank-unimodality |tau|<=7", 1800, c11_unimodal},
        {12, "monte carlo prevalence", 0, c12_monte_carlo},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
        const bool ok = o.ok && in_time;
        failed += ok ? 0 : 1;
        std::ostringstream t;
        t << std::fixed << std::setprecision(2) << secs << "s";
        if (c.limit_seconds > 0) t << " < " << c.limit_seconds << "s" << (in_time ? "" : " EXCEEDED");
        std::cout << (ok ? "PASS " : "FAIL ") << c.id << " " << c.name << ": " << o.detail << " [" << t.str() << "]\n";
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
