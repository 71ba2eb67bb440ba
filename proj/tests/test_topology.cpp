#include <gtest/gtest.h>

#include <set>

#include "permtopo/mobius.hpp"
#include "permtopo/disconnect.hpp"
#include "permtopo/subword.hpp"
#include "permtopo/topology.hpp"

using namespace permtopo;

namespace {

Permutation P(const char* s) { return Permutation::parse(s); }

OrderComplex complex_of(const char* s, const char* t) { return order_complex(build_interval(P(s), P(t))); }

/// Chains of the open interval counted directly from the order relation.
std::vector<long> chain_counts(const HasseDiagram& I) {
    std::vector<long> out;
    std::vector<std::vector<int>> level;
    for (int v = 1; v + 1 < I.size(); ++v) level.push_back({v});
    while (!level.empty()) {
        out.push_back(static_cast<long>(level.size()));
        std::vector<std::vector<int>> next;
        for (const auto& c : level)
            for (int v = c.back() + 1; v + 1 < I.size(); ++v)
                if (I.leq(c.back(), v) && I.rank[static_cast<std::size_t>(v)] > I.rank[static_cast<std::size_t>(c.back())]) {
                    auto d = c;
                    d.push_back(v);
                    next.push_back(d);
                }
        level = std::move(next);
    }
    return out;
}

}  // namespace

// Oracles first.

TEST(TopologyOracle, FacesAreChains) {
    for (const auto& tau : all_permutations_up_to(6)) {
        const auto D = build_down_set(tau);
        for (int s = 0; s < D.size(); s += 3) {
            const auto I = subinterval(D, s, D.top_index());
            ASSERT_EQ(order_complex(I).f_vector(), chain_counts(I)) << I.bottom.str() << " " << tau.str();
        }
    }
}

TEST(TopologyOracle, EulerCharacteristicIsMobius) {
    for (const auto& tau : all_permutations_up_to(6)) {
        const auto D = build_down_set(tau);
        const auto mu = mobius_to_top(D);
        for (int s = 0; s < D.top_index(); ++s) {
            const auto K = order_complex(D, s, D.top_index());
            const auto chi = reduced_euler_char(K);
            ASSERT_EQ(chi, mu[static_cast<std::size_t>(s)]);
            ASSERT_EQ(betti_numbers(K).alternating_sum(), chi);
        }
    }
}

TEST(TopologyOracle, EulerCharacteristicIsMobiusOnWords) {
    const auto f = ForestPoset::chain(7);
    std::vector<Word> words{{}};
    for (std::size_t k = 0; k < words.size(); ++k)
        for (int a = 1; a <= 4; ++a) {
            Word w = words[k];
            w.push_back(a);
            if (rk(f, w) <= 7) words.push_back(w);
        }
    for (const auto& w : words) {
        const auto D = build_word_interval(f, {}, w);
        const auto mu = mobius_to_top(D);
        for (int s = 0; s < D.top_index(); ++s) {
            const auto K = order_complex(D, s, D.top_index());
            ASSERT_EQ(reduced_euler_char(K), mu[static_cast<std::size_t>(s)]) << word_str(w);
            ASSERT_EQ(betti_numbers(K, Field::prime(2)).alternating_sum(), mu[static_cast<std::size_t>(s)]);
        }
    }
}

TEST(TopologyOracle, FieldsAgreeOnFigures) {
    for (const auto& [s, t] : std::vector<std::pair<const char*, const char*>>{
             {"1342", "1342675"}, {"123", "356124"}, {"123", "351624"}}) {
        const auto K = complex_of(s, t);
        EXPECT_EQ(betti_numbers(K).values, betti_numbers(K, Field::prime(2)).values);
        EXPECT_EQ(betti_numbers(K).values, betti_numbers(K, Field::prime(3)).values);
    }
}

TEST(TopologyOracle, RationalAndModTwoDifferOnProjectivePlane) {
    // Minimal 6-vertex triangulation of RP^2: H_1 = Z/2.
    OrderComplex K;
    K.vertices = {0, 1, 2, 3, 4, 5};
    K.faces.resize(3);
    const std::vector<std::vector<int>> tris{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                             {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}};
    std::set<std::vector<int>> edges;
    for (const auto& t : tris)
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) edges.insert({t[static_cast<std::size_t>(a)], t[static_cast<std::size_t>(b)]});
    for (int v = 0; v < 6; ++v) K.faces[0].push_back({v});
    K.faces[1].assign(edges.begin(), edges.end());
    K.faces[2] = tris;
    for (auto& level : K.faces) std::sort(level.begin(), level.end());
    EXPECT_EQ(betti_numbers(K).values, (std::vector<long>{0, 0, 0, 0}));
    EXPECT_EQ(betti_numbers(K, Field::prime(2)).values, (std::vector<long>{0, 0, 1, 1}));
}

// Examples

TEST(Topology, OrderComplex) {
    const auto K1 = complex_of("1342", "1342675");
    EXPECT_EQ(K1.f_vector(), (std::vector<long>{8, 7}));
    EXPECT_EQ(K1.dim(), 1);
    EXPECT_EQ(complex_of("12", "2134").dim(), 0);
    const auto K3 = complex_of("123", "351624");
    EXPECT_EQ(K3.f_vector(), (std::vector<long>{12, 12}));
    try {
        order_complex(build_interval(P("1"), P("24136857")), Budget{100});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::too_large);
    }
}

TEST(Topology, EulerCharacteristic) {
    EXPECT_EQ(reduced_euler_char(complex_of("1342", "1342675")), 0);
    EXPECT_EQ(reduced_euler_char(complex_of("123", "351624")), -1);
    EXPECT_EQ(reduced_euler_char(complex_of("12", "123")), -1);
}

TEST(Topology, Betti) {
    const auto b1 = betti_numbers(complex_of("1342", "1342675"));
    EXPECT_EQ(b1.at(0), 1);
    EXPECT_EQ(b1.at(1), 1);
    const auto b3 = betti_numbers(complex_of("123", "351624"));
    EXPECT_EQ(b3.at(0), 1);
    EXPECT_EQ(b3.at(1), 2);
    OrderComplex point;
    point.vertices = {0};
    point.faces = {{{0}}};
    EXPECT_EQ(betti_numbers(point).values, (std::vector<long>{0, 0}));
    EXPECT_EQ(betti_numbers(complex_of("12", "123")).at(-1), 1);
}

TEST(Topology, CohenMacaulay) {
    const auto rep = is_cohen_macaulay(build_interval(P("123"), P("3416725")));
    EXPECT_FALSE(rep.cohen_macaulay);
    ASSERT_TRUE(rep.failing);
    EXPECT_TRUE(is_cohen_macaulay(build_interval(P("21"), P("51234"))).cohen_macaulay);
    EXPECT_TRUE(is_cohen_macaulay(build_interval(P("12"), P("21435"))).cohen_macaulay);
}

TEST(Topology, Wedge) {
    const auto f = ForestPoset::chain(4);
    EXPECT_TRUE(wedge_of_spheres_check(build_word_interval(f, parse_word("141"), parse_word("23141"))).wedge);
    const auto w = wedge_of_spheres_check(build_interval(P("1342"), P("1342675")));
    EXPECT_FALSE(w.wedge);
    // Rank 3: the complex is a graph, a wedge of circles exactly when connected.
    for (const auto& tau : all_permutations_up_to(5))
        for (const auto& sigma : all_permutations_up_to(tau.size())) {
            if (tau.size() - sigma.size() != 3 || !contains(sigma, tau)) continue;
            EXPECT_EQ(wedge_of_spheres_check(build_interval(sigma, tau)).wedge, open_components(sigma, tau).size() == 1);
        }
}

TEST(Topology, Timeout) {
    try {
        const auto budget = Budget::with_timeout(default_max_faces, 1e-9);
        is_cohen_macaulay(build_interval(P("1"), P("24136857")), Field::rational(), budget);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::timeout);
    }
}
