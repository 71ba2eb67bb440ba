#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permtopo/error.hpp"
#include "permtopo/integer.hpp"
#include "permtopo/poset.hpp"

namespace permtopo {

inline constexpr std::size_t default_max_faces = 500000;

/// Limits for one complex: a face cap and an optional wall-clock deadline.
struct Budget {
    std::size_t max_faces = default_max_faces;
    std::optional<std::chrono::steady_clock::time_point> deadline;

    Budget(std::size_t faces = default_max_faces) : max_faces(faces) {}  // NOLINT: implicit on purpose

    static Budget with_timeout(std::size_t faces, double seconds) {
        Budget b(faces);
        if (seconds > 0)
            b.deadline = std::chrono::steady_clock::now() +
                         std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
        return b;
    }
    void check_time() const {
        if (deadline && std::chrono::steady_clock::now() > *deadline) throw Error(ErrorKind::timeout, "time limit reached");
    }
};

/// Order complex of an open interval.  faces[d] lists the d-dimensional
/// faces as increasing sequences of local vertex ids, sorted.
struct OrderComplex {
    std::vector<int> vertices;  // poset indices, local id = position here
    std::vector<std::vector<std::vector<int>>> faces;

    int dim() const noexcept { return static_cast<int>(faces.size()) - 1; }
    /// f_0, f_1, ... (f_{-1} = 1 is implicit).
    std::vector<long> f_vector() const {
        std::vector<long> f;
        for (const auto& level : faces) f.push_back(static_cast<long>(level.size()));
        return f;
    }
    std::size_t face_count() const {
        std::size_t c = 0;
        for (const auto& level : faces) c += level.size();
        return c;
    }
};

/// Chains of the open interval (lo, hi) of P.
inline OrderComplex order_complex(const HasseDiagram& P, int lo, int hi, const Budget& budget = {}) {
    OrderComplex K;
    const Bitset members = open_members(P, lo, hi);
    std::vector<int> local(static_cast<std::size_t>(P.size()), -1);
    for_each_bit(members, [&](int v) {
        local[static_cast<std::size_t>(v)] = static_cast<int>(K.vertices.size());
        K.vertices.push_back(v);
    });
    std::size_t total = 0;
    std::vector<int> chain;
    // Poset indices are rank-sorted, so chains are increasing index sequences.
    auto extend = [&](auto&& self, int v) -> void {
        chain.push_back(local[static_cast<std::size_t>(v)]);
        const auto d = chain.size() - 1;
        if (K.faces.size() <= d) K.faces.resize(d + 1);
        K.faces[d].push_back(chain);
        if (++total > budget.max_faces)
            throw Error(ErrorKind::too_large, "order complex exceeds " + std::to_string(budget.max_faces) + " faces");
        if (total % 4096 == 0) budget.check_time();
        Bitset next = P.above[static_cast<std::size_t>(v)] & members;
        next.reset(static_cast<std::size_t>(v));
        for_each_bit(next, [&](int w) { self(self, w); });
        chain.pop_back();
    };
    for_each_bit(members, [&](int v) { extend(extend, v); });
    for (auto& level : K.faces) std::sort(level.begin(), level.end());
    return K;
}

/// Order complex of the open interval (bottom, top).
inline OrderComplex order_complex(const HasseDiagram& P, const Budget& budget = {}) {
    return order_complex(P, P.bottom_index(), P.top_index(), budget);
}

/// -1 + f_0 - f_1 + ...
inline Integer reduced_euler_char(const OrderComplex& K) {
    Integer chi = -1;
    for (std::size_t d = 0; d < K.faces.size(); ++d) {
        if (d % 2 == 0) chi += static_cast<long>(K.faces[d].size());
        else chi -= static_cast<long>(K.faces[d].size());
    }
    return chi;
}

/// Coefficients: p == 0 means the rationals, otherwise GF(p).
struct Field {
    int p = 0;

    static Field rational() { return {0}; }
    static Field prime(int p) {
        if (p < 2) throw Error(ErrorKind::invalid_input, "field characteristic must be a prime");
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) throw Error(ErrorKind::invalid_input, std::to_string(p) + " is not prime");
        return {p};
    }
    /// "q", "Q", "rational", or a prime.
    static Field parse(const std::string& text) {
        if (text == "q" || text == "Q" || text == "rational") return rational();
        try {
            return prime(std::stoi(text));
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::invalid_input, "unknown field " + text);
        }
    }
    std::string name() const { return p == 0 ? "Q" : "GF(" + std::to_string(p) + ")"; }
    friend bool operator==(const Field&, const Field&) = default;
};

namespace detail {

template <class T>
using SparseRow = std::vector<std::pair<int, T>>;

/// rank of a sparse matrix over Q, by fraction-free row reduction with
/// each stored row divided by its content.
inline std::size_t rank_rational(std::vector<SparseRow<Integer>> rows) {
    std::map<int, SparseRow<Integer>> pivots;
    for (auto& row : rows) {
        while (!row.empty()) {
            const int lead = row.front().first;
            auto it = pivots.find(lead);
            if (it == pivots.end()) {
                Integer g = 0;
                for (const auto& [c, v] : row) g = boost::multiprecision::gcd(g, v);
                if (row.front().second < 0) g = -g;
                if (g != 1)
                    for (auto& e : row) e.second /= g;
                pivots.emplace(lead, std::move(row));
                break;
            }
            const auto& piv = it->second;
            const Integer a = piv.front().second;
            const Integer b = row.front().second;
            // row := a*row - b*piv, which clears the lead.
            SparseRow<Integer> out;
            out.reserve(row.size() + piv.size());
            std::size_t i = 0, j = 0;
            while (i < row.size() || j < piv.size()) {
                if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
                    out.emplace_back(row[i].first, a * row[i].second);
                    ++i;
                } else if (i == row.size() || piv[j].first < row[i].first) {
                    out.emplace_back(piv[j].first, -b * piv[j].second);
                    ++j;
                } else {
                    Integer v = a * row[i].second - b * piv[j].second;
                    if (v != 0) out.emplace_back(row[i].first, std::move(v));
                    ++i;
                    ++j;
                }
            }
            Integer g = 0;
            for (const auto& [c, v] : out) g = boost::multiprecision::gcd(g, v);
            if (g > 1)
                for (auto& e : out) e.second /= g;
            row = std::move(out);
        }
    }
    return pivots.size();
}

inline std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1;
    b %= p;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
    }
    return r;
}

inline std::size_t rank_mod_p(std::vector<SparseRow<std::int64_t>> rows, std::int64_t p) {
    std::map<int, SparseRow<std::int64_t>> pivots;
    for (auto& row : rows) {
        for (auto& e : row) e.second = ((e.second % p) + p) % p;
        row.erase(std::remove_if(row.begin(), row.end(), [](const auto& e) { return e.second == 0; }), row.end());
        while (!row.empty()) {
            const int lead = row.front().first;
            auto it = pivots.find(lead);
            if (it == pivots.end()) {
                const std::int64_t inv = mod_pow(row.front().second, p - 2, p);
                for (auto& e : row) e.second = e.second * inv % p;
                pivots.emplace(lead, std::move(row));
                break;
            }
            const auto& piv = it->second;  // normalized: lead is 1
            const std::int64_t b = row.front().second;
            SparseRow<std::int64_t> out;
            std::size_t i = 0, j = 0;
            while (i < row.size() || j < piv.size()) {
                if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
                    out.push_back(row[i++]);
                } else if (i == row.size() || piv[j].first < row[i].first) {
                    out.emplace_back(piv[j].first, (p - b * piv[j].second % p) % p);
                    ++j;
                } else {
                    const std::int64_t v = ((row[i].second - b * piv[j].second) % p + p) % p;
                    if (v != 0) out.emplace_back(row[i].first, v);
                    ++i;
                    ++j;
                }
            }
            row = std::move(out);
        }
    }
    return pivots.size();
}

/// Boundary of each d-face as (index of facet in faces[d-1], sign).
inline std::vector<SparseRow<int>> boundary_rows(const OrderComplex& K, std::size_t d) {
    std::vector<SparseRow<int>> rows;
    const auto& lower = K.faces[d - 1];
    std::vector<int> facet;
    for (const auto& face : K.faces[d]) {
        SparseRow<int> row;
        for (std::size_t k = 0; k < face.size(); ++k) {
            facet.assign(face.begin(), face.end());
            facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(k));
            const auto it = std::lower_bound(lower.begin(), lower.end(), facet);
            row.emplace_back(static_cast<int>(it - lower.begin()), k % 2 == 0 ? 1 : -1);
        }
        std::sort(row.begin(), row.end());
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

/// Reduced Betti numbers; values[0] is the (-1)-dimensional one.
struct BettiVector {
    Field field;
    std::vector<long> values;

    long at(int i) const {
        const auto k = static_cast<std::size_t>(i + 1);
        return k < values.size() ? values[k] : 0;
    }
    int top_dim() const noexcept { return static_cast<int>(values.size()) - 2; }
    Integer alternating_sum() const {
        Integer s = 0;
        for (std::size_t k = 0; k < values.size(); ++k) {
            // dimension k - 1
            if (k % 2 == 1) s += values[k];
            else s -= values[k];
        }
        return s;
    }
};

/// Ranks of the boundary maps d_0 .. d_dim, with d_0 mapping onto the
/// empty face.
inline std::vector<std::size_t> boundary_ranks(const OrderComplex& K, Field field) {
    std::vector<std::size_t> r(K.faces.size() + 1, 0);
    if (!K.faces.empty()) r[0] = K.faces[0].empty() ? 0 : 1;
    for (std::size_t d = 1; d < K.faces.size(); ++d) {
        auto rows = detail::boundary_rows(K, d);
        if (field.p == 0) {
            std::vector<detail::SparseRow<Integer>> big;
            big.reserve(rows.size());
            for (const auto& row : rows) {
                detail::SparseRow<Integer> b;
                for (const auto& [c, v] : row) b.emplace_back(c, v);
                big.push_back(std::move(b));
            }
            r[d] = detail::rank_rational(std::move(big));
        } else {
            std::vector<detail::SparseRow<std::int64_t>> small;
            small.reserve(rows.size());
            for (const auto& row : rows) {
                detail::SparseRow<std::int64_t> b;
                for (const auto& [c, v] : row) b.emplace_back(c, v);
                small.push_back(std::move(b));
            }
            r[d] = detail::rank_mod_p(std::move(small), field.p);
        }
    }
    return r;
}

inline BettiVector betti_numbers(const OrderComplex& K, Field field = Field::rational()) {
    BettiVector b{field, {}};
    const auto r = boundary_ranks(K, field);
    // dimension -1: the empty face, killed by d_0 when there are vertices.
    b.values.push_back(1 - static_cast<long>(K.faces.empty() ? 0 : r[0]));
    for (std::size_t d = 0; d < K.faces.size(); ++d) {
        const long f = static_cast<long>(K.faces[d].size());
        b.values.push_back(f - static_cast<long>(r[d]) - static_cast<long>(r[d + 1]));
    }
    return b;
}

struct CohenMacaulayReport {
    bool cohen_macaulay = true;
    Field field;
    std::optional<std::pair<int, int>> failing;  // poset indices x < y
    std::optional<BettiVector> failing_betti;
    long pairs_checked = 0;
};

/// Every open subinterval (x, y) has reduced homology only in dimension
/// rank(y) - rank(x) - 2.
inline CohenMacaulayReport is_cohen_macaulay(const HasseDiagram& P, Field field = Field::rational(),
                                             const Budget& budget = {}) {
    CohenMacaulayReport rep;
    rep.field = field;
    for (int x = 0; x < P.size(); ++x)
        for (int y = x + 1; y < P.size(); ++y) {
            const int len = P.rank[static_cast<std::size_t>(y)] - P.rank[static_cast<std::size_t>(x)];
            if (len < 3 || !P.leq(x, y)) continue;
            ++rep.pairs_checked;
            budget.check_time();
            const auto b = betti_numbers(order_complex(P, x, y, budget), field);
            for (int i = -1; i < len - 2; ++i)
                if (b.at(i) != 0) {
                    rep.cohen_macaulay = false;
                    rep.failing = std::make_pair(x, y);
                    rep.failing_betti = b;
                    return rep;
                }
        }
    return rep;
}

struct WedgeReport {
    bool wedge = false;
    BettiVector betti;
    Integer mu;
    int dim = -1;
};

/// Homology of (bottom, top) is free of rank |mu| in the top dimension
/// and vanishes below it.
inline WedgeReport wedge_of_spheres_check(const HasseDiagram& P, Field field = Field::rational(),
                                          const Budget& budget = {}) {
    WedgeReport rep;
    rep.mu = mobius_from_bottom(P).back();
    if (P.size() == 1) {
        rep.wedge = true;
        rep.betti.field = field;
        return rep;
    }
    rep.dim = P.length() - 2;
    rep.betti = betti_numbers(order_complex(P, budget), field);
    rep.wedge = rep.betti.at(rep.dim) == abs(rep.mu);
    for (int i = -1; i < rep.dim; ++i)
        if (rep.betti.at(i) != 0) rep.wedge = false;
    return rep;
}

}  // namespace permtopo
