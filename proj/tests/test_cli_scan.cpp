#include <gtest/gtest.h>

#include <set>
#include <string>

#include "permtopo/fixtures.hpp"
#include "permtopo/scan.hpp"

using namespace permtopo;

namespace {

ScanOptions options(int max_n, unsigned jobs = 1) {
    ScanOptions o;
    o.max_n = max_n;
    o.jobs = jobs;
    return o;
}

std::string dump(const ScanResult& r) {
    std::string out;
    for (const auto& rec : r.records) out += rec.to_json().dump() + "\n";
    return out + r.summary.to_json().dump();
}

std::set<std::pair<std::string, std::string>> pairs(const ScanResult& r) {
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& rec : r.records) out.emplace(rec.sigma, rec.tau);
    return out;
}

}  // namespace

TEST(Scan, DisconnectedCensus) {
    EXPECT_TRUE(scan_disconnected(options(5)).records.empty());
    const auto r = scan_disconnected(options(6));
    EXPECT_EQ(r.summary.disagreements, 0);
    const auto found = pairs(r);
    EXPECT_TRUE(found.count({"123", "356124"}));
    EXPECT_TRUE(found.count({"123", "351624"}));
    EXPECT_TRUE(found.count({"213", "254613"}));
    EXPECT_TRUE(are_isomorphic(build_interval(Permutation::parse("213"), Permutation::parse("254613")),
                               build_interval(Permutation::parse("1342"), Permutation::parse("1342675"))));
}

TEST(Scan, ConjectureScansFindNothing) {
    EXPECT_EQ(scan_unimodal(options(6)).summary.findings, 0);
    EXPECT_EQ(scan_mobius_agreement(options(6)).summary.disagreements, 0);
    EXPECT_EQ(scan_sperner(options(6)).summary.findings, 0);
    auto open = options(6);
    open.open = true;
    EXPECT_EQ(scan_sperner(open).summary.findings, 0);
    EXPECT_EQ(scan_euler(options(5)).summary.findings, 0);
}

TEST(Scan, WitnessesReverify) {
    for (const auto& kind : {"disconnected", "noncm"}) {
        const auto r = run_scan(kind, options(6));
        EXPECT_FALSE(r.records.empty()) << kind;
        for (const auto& rec : r.records) EXPECT_TRUE(verify_record(rec)) << rec.to_json().dump();
    }
}

TEST(Scan, OutputIndependentOfWorkerCount) {
    for (const auto& kind : {"disconnected", "mobius", "noncm"})
        EXPECT_EQ(dump(run_scan(kind, options(6, 1))), dump(run_scan(kind, options(6, 3)))) << kind;
}

TEST(Scan, TimingIsOptIn) {
    auto o = options(6);
    EXPECT_FALSE(scan_disconnected(o).records.front().wall_time);
    o.timing = true;
    EXPECT_TRUE(scan_disconnected(o).records.front().wall_time);
}

TEST(Scan, Guards) {
    try {
        run_scan("noncm", options(9));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::bound_exceeded);
    }
    EXPECT_THROW(run_scan("nonsense", options(3)), Error);
    auto o = options(6);
    o.budget = Budget{20};
    const auto r = scan_euler(o);
    EXPECT_GT(r.summary.skipped, 0);
    long skipped = 0;
    for (const auto& rec : r.records) skipped += rec.verdict == "skipped" ? 1 : 0;
    EXPECT_EQ(skipped, r.summary.skipped);
}

TEST(Fixtures, AllMatch) {
    const auto r = fixtures();
    for (const auto& c : r.checks) EXPECT_TRUE(c.ok) << c.name << ": " << c.detail;
}

TEST(Fixtures, DetectsTamperedFigure) {
    auto fig = figure_fixtures().front();
    fig.covers.pop_back();
    EXPECT_FALSE(check_figure(fig).ok);
}
