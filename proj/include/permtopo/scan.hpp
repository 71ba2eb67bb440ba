#pragma once

// Exhaustive scans over all pairs sigma <= tau with |tau| <= max_n.  Work is
// sharded by tau; every shard builds the down-set [empty, tau] once and
// answers questions about each [sigma, tau] from its bitsets.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "permtopo/disconnect.hpp"
#include "permtopo/mobius.hpp"
#include "permtopo/parallel.hpp"
#include "permtopo/pattern_poset.hpp"
#include "permtopo/topology.hpp"

namespace permtopo {

struct ScanRecord {
    std::string kind;
    std::string sigma, tau;
    std::string verdict;
    nlohmann::json witness = nlohmann::json::object();
    std::optional<std::uint64_t> seed;
    std::optional<double> wall_time;

    nlohmann::json to_json() const {
        nlohmann::json j{{"kind", kind}, {"sigma", sigma}, {"tau", tau}, {"verdict", verdict}, {"witness", witness}};
        if (seed) j["seed"] = *seed;
        if (wall_time) j["wall_time"] = *wall_time;
        return j;
    }
};

struct ScanOptions {
    int max_n = 6;
    unsigned jobs = 1;
    Budget budget;
    double timeout_seconds = 0;  // per interval, 0 = none
    bool timing = false;
    bool open = false;  // Sperner on open intervals
    Field field = Field::rational();
    int bound = 0;  // 0 = the scan's own default
};

struct ScanSummary {
    std::string kind;
    int max_n = 0;
    long intervals = 0;
    long findings = 0;
    long skipped = 0;
    long disagreements = 0;
    std::map<std::string, long> counts;

    nlohmann::json to_json() const {
        nlohmann::json j{{"summary", kind},        {"max_n", max_n},       {"intervals", intervals},
                         {"findings", findings},   {"skipped", skipped},   {"disagreements", disagreements}};
        for (const auto& [k, v] : counts) j[k] = v;
        return j;
    }
};

struct ScanResult {
    std::vector<ScanRecord> records;
    ScanSummary summary;
};

/// Largest max_n each scan accepts unless overridden.
inline int default_scan_bound(const std::string& kind) {
    if (kind == "noncm" || kind == "euler") return 7;
    if (kind == "sperner") return 7;
    return 8;
}

namespace detail {

struct Shard {
    std::vector<ScanRecord> records;
    ScanSummary partial;
};

/// Runs `per_top(tau, down_set, worker, shard)` for every tau with
/// |tau| <= max_n and merges shards in enumeration order.
template <class PerTop>
ScanResult run_sharded(const std::string& kind, const ScanOptions& opt, PerTop&& per_top) {
    const int bound = opt.bound > 0 ? opt.bound : default_scan_bound(kind);
    if (opt.max_n > bound)
        throw Error(ErrorKind::bound_exceeded,
                    "max_n " + std::to_string(opt.max_n) + " exceeds the bound " + std::to_string(bound) + " for " + kind);
    const auto tops = all_permutations_up_to(opt.max_n);
    std::vector<Shard> shards(tops.size());
    parallel_for(tops.size(), opt.jobs, [&](std::size_t i, unsigned worker) {
        const auto D = build_down_set(tops[i]);
        per_top(tops[i], D, worker, shards[i]);
    });
    ScanResult out;
    out.summary.kind = kind;
    out.summary.max_n = opt.max_n;
    for (auto& s : shards) {
        for (auto& r : s.records) out.records.push_back(std::move(r));
        out.summary.intervals += s.partial.intervals;
        out.summary.findings += s.partial.findings;
        out.summary.skipped += s.partial.skipped;
        out.summary.disagreements += s.partial.disagreements;
        for (const auto& [k, v] : s.partial.counts) out.summary.counts[k] += v;
    }
    return out;
}

inline nlohmann::json embedding_list(const std::vector<Embedding>& es) {
    auto j = nlohmann::json::array();
    for (const auto& e : es) j.push_back(e.str());
    return j;
}

inline nlohmann::json component_sizes(const std::vector<std::vector<int>>& comps) {
    std::vector<std::size_t> sizes;
    for (const auto& c : comps) sizes.push_back(c.size());
    return sizes;
}

inline std::vector<Bitset> rank_masks(const HasseDiagram& D) {
    std::vector<Bitset> masks(static_cast<std::size_t>(D.length() + 1), Bitset(static_cast<std::size_t>(D.size())));
    for (int i = 0; i < D.size(); ++i) masks[static_cast<std::size_t>(D.rank[static_cast<std::size_t>(i)])].set(static_cast<std::size_t>(i));
    return masks;
}

inline std::vector<long> interval_rank_sizes(const HasseDiagram& D, const std::vector<Bitset>& masks, int lo, int hi) {
    const Bitset members = D.between(lo, hi);
    std::vector<long> sizes;
    for (int r = D.rank[static_cast<std::size_t>(lo)]; r <= D.rank[static_cast<std::size_t>(hi)]; ++r)
        sizes.push_back(static_cast<long>((members & masks[static_cast<std::size_t>(r)]).count()));
    return sizes;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline ScanRecord skipped_record(const std::string& kind, const Permutation& sigma, const Permutation& tau,
                                 const Error& e) {
    return {kind, sigma.str(), tau.str(), "skipped", {{"reason", to_string(e.kind())}, {"detail", e.what()}}, {}, {}};
}

}  // namespace detail

/// Rank >= 3 disconnected open intervals, each decided both by the
/// embedding-partition test and by graph components.
inline ScanResult scan_disconnected(const ScanOptions& opt) {
    return detail::run_sharded("disconnected", opt, [&](const Permutation& tau, const PatternInterval& D, unsigned,
                                                        detail::Shard& shard) {
        const int top = D.top_index();
        for (int s = 0; s < D.size(); ++s) {
            const int rank = D.length() - D.rank[static_cast<std::size_t>(s)];
            if (rank < 2) continue;
            const auto& sigma = D.elements[static_cast<std::size_t>(s)];
            const auto comps = hasse_components(D, open_members(D, s, top));
            if (rank == 2) {
                if (comps.size() > 1) ++shard.partial.counts["rank2_trivially_shellable"];
                continue;
            }
            const auto t0 = std::chrono::steady_clock::now();
            ++shard.partial.intervals;
            const auto rep = is_disconnected(sigma, tau);
            const bool graph = comps.size() > 1;
            if (graph != rep.disconnected || (graph && comps.size() != rep.blocks.size())) {
                ++shard.partial.disagreements;
                shard.records.push_back({"disconnected", sigma.str(), tau.str(), "disagreement",
                                         {{"graph_components", comps.size()}, {"partition_blocks", rep.blocks.size()}},
                                         {}, {}});
                continue;
            }
            if (!graph) continue;
            ++shard.partial.findings;
            ScanRecord rec{"disconnected",
                           sigma.str(),
                           tau.str(),
                           "disconnected",
                           {{"rank", rank},
                            {"components", detail::component_sizes(comps)},
                            {"E1", detail::embedding_list(rep.e1)},
                            {"E2", detail::embedding_list(rep.e2)}},
                           {},
                           {}};
            if (opt.timing) rec.wall_time = detail::seconds_since(t0);
            shard.records.push_back(std::move(rec));
        }
    });
}

/// Intervals whose rank sizes are not unimodal.
inline ScanResult scan_unimodal(const ScanOptions& opt) {
    return detail::run_sharded("unimodality", opt, [&](const Permutation& tau, const PatternInterval& D, unsigned,
                                                       detail::Shard& shard) {
        const auto masks = detail::rank_masks(D);
        for (int s = 0; s < D.size(); ++s) {
            ++shard.partial.intervals;
            const auto sizes = detail::interval_rank_sizes(D, masks, s, D.top_index());
            if (is_rank_unimodal(sizes)) continue;
            ++shard.partial.findings;
            shard.records.push_back({"unimodality", D.elements[static_cast<std::size_t>(s)].str(), tau.str(),
                                     "violation", {{"rank_sizes", sizes}}, {}, {}});
        }
    });
}

/// Brute-force Moebius values against every applicable recursion.
inline ScanResult scan_mobius_agreement(const ScanOptions& opt) {
    std::vector<MobiusCalculator> calcs(std::max(1u, opt.jobs));
    return detail::run_sharded("mobius-agreement", opt, [&](const Permutation& tau, const PatternInterval& D,
                                                            unsigned worker, detail::Shard& shard) {
        const auto column = mobius_to_top(D);
        auto& calc = calcs[worker];
        for (int s = 0; s < D.size(); ++s) {
            const auto& sigma = D.elements[static_cast<std::size_t>(s)];
            ++shard.partial.intervals;
            const auto c = compare_mobius(sigma, tau, column[static_cast<std::size_t>(s)], calc);
            if (c.decomposable) ++shard.partial.counts["decomposable_checked"];
            if (c.skew_decomposable) ++shard.partial.counts["skew_decomposable_checked"];
            if (c.bjjs) ++shard.partial.counts["bjjs_checked"];
            if (c.bjjs_skew) ++shard.partial.counts["bjjs_skew_checked"];
            if (c.agree()) continue;
            ++shard.partial.disagreements;
            ++shard.partial.findings;
            nlohmann::json w{{"brute", c.brute.str()}};
            if (c.decomposable) w["decomposable"] = c.decomposable->str();
            if (c.skew_decomposable) w["skew_decomposable"] = c.skew_decomposable->str();
            if (c.bjjs) w["bjjs"] = c.bjjs->str();
            if (c.bjjs_skew) w["bjjs_skew"] = c.bjjs_skew->str();
            shard.records.push_back({"mobius-agreement", sigma.str(), tau.str(), "disagreement", std::move(w), {}, {}});
        }
    });
}

/// Intervals whose largest antichain exceeds their largest rank level.
inline ScanResult scan_sperner(const ScanOptions& opt) {
    return detail::run_sharded("sperner", opt, [&](const Permutation& tau, const PatternInterval& D, unsigned,
                                                   detail::Shard& shard) {
        const auto masks = detail::rank_masks(D);
        const int top = D.top_index();
        for (int s = 0; s < D.size(); ++s) {
            ++shard.partial.intervals;
            auto sizes = detail::interval_rank_sizes(D, masks, s, top);
            Bitset members = D.between(s, top);
            if (opt.open) {
                if (sizes.size() <= 2) continue;
                members = open_members(D, s, top);
                sizes = std::vector<long>(sizes.begin() + 1, sizes.end() - 1);
            }
            const int antichain = max_antichain_size(D, members);
            const long widest = *std::max_element(sizes.begin(), sizes.end());
            if (antichain == widest) continue;
            ++shard.partial.findings;
            shard.records.push_back({"sperner", D.elements[static_cast<std::size_t>(s)].str(), tau.str(), "not-sperner",
                                     {{"max_antichain", antichain}, {"rank_sizes", sizes}, {"open", opt.open}}, {}, {}});
        }
    });
}

/// Open intervals of rank >= 3 with reduced homology below the top
/// dimension.  Any non-Cohen-Macaulay interval contains one of these.
inline ScanResult scan_noncm(const ScanOptions& opt) {
    return detail::run_sharded("non-CM", opt, [&](const Permutation& tau, const PatternInterval& D, unsigned,
                                                  detail::Shard& shard) {
        const int top = D.top_index();
        for (int s = 0; s < D.size(); ++s) {
            const int rank = D.length() - D.rank[static_cast<std::size_t>(s)];
            if (rank < 3) continue;
            const auto& sigma = D.elements[static_cast<std::size_t>(s)];
            ++shard.partial.intervals;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const auto budget = Budget::with_timeout(opt.budget.max_faces, opt.timeout_seconds);
                const auto b = betti_numbers(order_complex(D, s, top, budget), opt.field);
                bool low = false;
                for (int i = -1; i < rank - 2; ++i) low = low || b.at(i) != 0;
                if (!low) continue;
                ++shard.partial.findings;
                const auto I = subinterval(D, s, top);
                const bool disc = !disconnected_subintervals(I).empty();
                if (!disc) ++shard.partial.counts["without_disconnected_subinterval"];
                ScanRecord rec{"non-CM",
                               sigma.str(),
                               tau.str(),
                               "non-CM",
                               {{"field", opt.field.name()},
                                {"betti", b.values},
                                {"has_disconnected_subinterval", disc}},
                               {},
                               {}};
                if (opt.timing) rec.wall_time = detail::seconds_since(t0);
                shard.records.push_back(std::move(rec));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::too_large && e.kind() != ErrorKind::timeout) throw;
                ++shard.partial.skipped;
                shard.records.push_back(detail::skipped_record("non-CM", sigma, tau, e));
            }
        }
    });
}

/// Reduced Euler characteristic against mu, and Betti alternating sums
/// against the Euler characteristic, for every interval of rank >= 1.
inline ScanResult scan_euler(const ScanOptions& opt) {
    return detail::run_sharded("euler", opt, [&](const Permutation& tau, const PatternInterval& D, unsigned,
                                                 detail::Shard& shard) {
        const auto column = mobius_to_top(D);
        const int top = D.top_index();
        for (int s = 0; s < top; ++s) {
            const auto& sigma = D.elements[static_cast<std::size_t>(s)];
            ++shard.partial.intervals;
            try {
                const auto budget = Budget::with_timeout(opt.budget.max_faces, opt.timeout_seconds);
                const auto K = order_complex(D, s, top, budget);
                const auto chi = reduced_euler_char(K);
                const auto b = betti_numbers(K, opt.field);
                const auto& mu = column[static_cast<std::size_t>(s)];
                if (chi == mu && b.alternating_sum() == chi) continue;
                ++shard.partial.disagreements;
                ++shard.partial.findings;
                shard.records.push_back({"euler", sigma.str(), tau.str(), "mismatch",
                                         {{"mu", mu.str()}, {"euler", chi.str()}, {"betti", b.values}}, {}, {}});
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::too_large && e.kind() != ErrorKind::timeout) throw;
                ++shard.partial.skipped;
                shard.records.push_back(detail::skipped_record("euler", sigma, tau, e));
            }
        }
    });
}

inline const std::vector<std::string>& scan_kinds() {
    static const std::vector<std::string> kinds{"disconnected", "unimodal", "mobius", "sperner", "noncm", "euler"};
    return kinds;
}

inline ScanResult run_scan(const std::string& kind, const ScanOptions& opt) {
    if (kind == "disconnected") return scan_disconnected(opt);
    if (kind == "unimodal") return scan_unimodal(opt);
    if (kind == "mobius") return scan_mobius_agreement(opt);
    if (kind == "sperner") return scan_sperner(opt);
    if (kind == "noncm") return scan_noncm(opt);
    if (kind == "euler") return scan_euler(opt);
    throw Error(ErrorKind::invalid_input, "unknown scan kind " + kind);
}

// ---------------------------------------------------------------------------
// Re-checking records

namespace detail {

inline std::vector<Embedding> embeddings_from_json(const nlohmann::json& j) {
    std::vector<Embedding> out;
    for (const auto& e : j) out.push_back(Embedding{decode_letters(e.get<std::string>())});
    return out;
}

}  // namespace detail

/// Re-derives a record's verdict from its witness with the owning module.
inline bool verify_record(const ScanRecord& rec) {
    const auto sigma = Permutation::parse(rec.sigma);
    const auto tau = Permutation::parse(rec.tau);
    if (rec.verdict == "skipped") return true;
    if (rec.kind == "disconnected" && rec.verdict == "disconnected") {
        const auto e1 = detail::embeddings_from_json(rec.witness.at("E1"));
        const auto e2 = detail::embeddings_from_json(rec.witness.at("E2"));
        return check_partition(sigma, tau, e1, e2).verdict == PartitionVerdict::ok &&
               open_components(sigma, tau).size() == rec.witness.at("components").size();
    }
    if (rec.kind == "unimodality") {
        const auto sizes = rank_sizes(build_interval(sigma, tau));
        return sizes == rec.witness.at("rank_sizes").get<std::vector<long>>() && !is_rank_unimodal(sizes);
    }
    if (rec.kind == "sperner") {
        const auto rep = sperner_report(build_interval(sigma, tau), rec.witness.at("open").get<bool>());
        return !rep.sperner && rep.max_antichain == rec.witness.at("max_antichain").get<int>();
    }
    if (rec.kind == "non-CM") {
        const auto I = build_interval(sigma, tau);
        const auto name = rec.witness.at("field").get<std::string>();
        const auto field = Field::parse(name == "Q" ? name : name.substr(3));  // "GF(p)"
        const auto b = betti_numbers(order_complex(I), field);
        return b.values == rec.witness.at("betti").get<std::vector<long>>() &&
               !is_cohen_macaulay(I, field).cohen_macaulay;
    }
    if (rec.kind == "mobius-agreement") {
        MobiusCalculator calc;
        return !compare_mobius(sigma, tau, mobius_brute(sigma, tau), calc).agree();
    }
    if (rec.kind == "euler") {
        const auto I = build_interval(sigma, tau);
        const auto K = order_complex(I);
        return reduced_euler_char(K) != mobius_brute(sigma, tau);
    }
    return false;
}

}  // namespace permtopo
