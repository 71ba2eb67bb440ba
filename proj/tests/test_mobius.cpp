#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "permtopo/mobius.hpp"

using namespace permtopo;

namespace {

Permutation P(const char* s) { return Permutation::parse(s); }

}  // namespace

// Oracles first.

TEST(MobiusOracle, BruteMatchesElementScanRecursion) {
    for (const auto& tau : all_permutations_up_to(5))
        for (const auto& sigma : oracle::down_set(tau))
            ASSERT_EQ(mobius_brute(sigma, tau), oracle::mobius(sigma, tau)) << sigma.str() << " " << tau.str();
}

TEST(MobiusOracle, ColumnSumsVanish) {
    for (const auto& tau : all_permutations_up_to(6)) {
        const auto D = build_down_set(tau);
        const auto t = MobiusTable::build(Permutation{}, tau);
        for (int i = 1; i < D.size(); ++i) {
            Integer s = 0;
            for_each_bit(D.below[static_cast<std::size_t>(i)], [&](int j) { s += t.values[static_cast<std::size_t>(j)]; });
            ASSERT_EQ(s, 0) << D.elements[static_cast<std::size_t>(i)].str();
        }
        ASSERT_EQ(t.values.front(), 1);
    }
}

TEST(MobiusOracle, CalculatorMatchesBrute) {
    MobiusCalculator calc;
    for (const auto& tau : all_permutations_up_to(5))
        for (const auto& sigma : all_permutations_up_to(tau.size()))
            ASSERT_EQ(calc.mu(sigma, tau), contains(sigma, tau) ? mobius_brute(sigma, tau) : Integer(0));
}

TEST(MobiusOracle, RecursionsAgreeWithBrute) {
    MobiusCalculator calc;
    long decomposable = 0, older = 0;
    for (const auto& tau : all_permutations_up_to(6)) {
        const auto D = build_down_set(tau);
        const auto column = mobius_to_top(D);
        for (int s = 0; s < D.size(); ++s) {
            const auto& sigma = D.elements[static_cast<std::size_t>(s)];
            const auto c = compare_mobius(sigma, tau, column[static_cast<std::size_t>(s)], calc);
            ASSERT_TRUE(c.agree()) << sigma.str() << " " << tau.str();
            decomposable += c.decomposable ? 1 : 0;
            older += c.bjjs ? 1 : 0;
        }
    }
    EXPECT_GT(decomposable, 1000);
    EXPECT_GT(older, 1000);
}

TEST(MobiusOracle, ReverseSymmetry) {
    for (const auto& tau : all_permutations_up_to(6)) {
        const auto D = build_down_set(tau);
        const auto R = build_down_set(reverse(tau));
        const auto a = mobius_to_top(D), b = mobius_to_top(R);
        for (int s = 0; s < D.size(); ++s)
            ASSERT_EQ(a[static_cast<std::size_t>(s)],
                      b[static_cast<std::size_t>(R.index_of(reverse(D.elements[static_cast<std::size_t>(s)])))]);
    }
}

// Examples

TEST(Mobius, Brute) {
    EXPECT_EQ(mobius_brute(P("12"), P("2413")), 3);
    EXPECT_EQ(mobius_brute(P("2413"), P("2413")), 1);
    EXPECT_EQ(mobius_brute(P("1"), P("2413")), -3);
    EXPECT_THROW(mobius_brute(P("21"), P("12")), Error);
}

TEST(Mobius, Decomposable) {
    const auto sigma = P("12"), tau = P("24136857");
    MobiusCalculator calc;
    EXPECT_EQ(mobius_decomposable(sigma, tau, calc), 12);
    std::map<std::string, Integer> by_split;
    for (const auto& t : mobius_decomposable_terms(sigma, tau, calc)) {
        std::string key;
        for (const auto& part : t.split) key += "[" + part.str() + "]";
        by_split[key] = t.value;
    }
    // 12 = 9 (1 + 1) + 0 (empty first block) + 3 (empty second block, plus one since the blocks are equal)
    EXPECT_EQ(by_split.at("[1][1]"), 9);
    EXPECT_EQ(by_split.at("[][12]"), 0);
    EXPECT_EQ(by_split.at("[12][]"), 3);
    EXPECT_EQ(mobius_decomposable(Permutation{}, P("12")), 0);
    EXPECT_EQ(mobius_decomposable(Permutation{}, P("1")), -1);
}

TEST(Mobius, OlderRecursions) {
    EXPECT_EQ(mobius_bjjs_one(P("21"), P("1243")), 0);
    EXPECT_EQ(mobius_bjjs_one(P("132"), P("12543")), mobius_brute(P("132"), P("12543")));
    EXPECT_EQ(mobius_bjjs_two(P("12"), P("24136857")), 12);
    EXPECT_EQ(mobius_bjjs_two(P("12"), P("24135")), mobius_brute(P("12"), P("24135")));
    try {
        mobius_bjjs_two(P("1"), P("2413"));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::precondition);
    }
    EXPECT_THROW(mobius_bjjs_one(P("1"), P("2413")), Error);
}

TEST(Mobius, SkewVariants) {
    const auto tau = skew_sum(P("2143"), P("2143"));
    EXPECT_EQ(mobius_skew_variants(P("21"), tau), mobius_brute(P("21"), tau));
    EXPECT_EQ(mobius_skew_variants(P("321"), P("321")), 1);
}
