// Command-line front end.  Every command prints JSON; scans print one record
// per line.  Exit status: 0 ok, 1 violation or regression, 2 usage error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permtopo/permtopo.hpp"

using nlohmann::json;
using namespace permtopo;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_usage = 2;

/// Accepts any sequence of distinct integers and flattens it.
Permutation perm_arg(const std::string& text) { return flatten(decode_letters(text)); }

json strings(const std::vector<Permutation>& ps) {
    auto j = json::array();
    for (const auto& p : ps) j.push_back(p.str());
    return j;
}

json embedding_strings(const std::vector<Embedding>& es) {
    auto j = json::array();
    for (const auto& e : es) j.push_back(e.str());
    return j;
}

json component_json(const PatternInterval& I, const std::vector<std::vector<int>>& comps) {
    auto j = json::array();
    for (const auto& c : comps) {
        auto members = json::array();
        for (int i : c) members.push_back(I.elements[static_cast<std::size_t>(i)].str());
        j.push_back(members);
    }
    return j;
}

struct Common {
    unsigned jobs = default_jobs();
    std::uint64_t seed = 12345;
    std::size_t max_faces = default_max_faces;
    std::string field = "q";
    bool open = false;
    bool timing = false;
    double timeout = 0;
};

int cmd_interval(const std::string& s, const std::string& t, bool full, const Common& c) {
    const auto sigma = perm_arg(s), tau = perm_arg(t);
    const auto I = build_interval(sigma, tau);
    const auto sizes = rank_sizes(I);
    const auto sp = sperner_report(I, c.open);
    json out{{"sigma", sigma.str()},
             {"tau", tau.str()},
             {"elements", I.size()},
             {"covers", I.covers().size()},
             {"rank", I.length()},
             {"rank_sizes", sizes},
             {"chain", is_chain(sigma, tau)},
             {"unimodal", is_rank_unimodal(sizes)},
             {"max_antichain", sp.max_antichain},
             {"sperner", sp.sperner},
             {"open_components", component_json(I, open_components(I))}};
    if (full) out["poset"] = to_json(I);
    std::cout << out.dump() << "\n";
    return exit_ok;
}

int cmd_mobius(const std::string& s, const std::string& t, const std::string& method) {
    const auto sigma = perm_arg(s), tau = perm_arg(t);
    MobiusCalculator calc;
    json out{{"sigma", sigma.str()}, {"tau", tau.str()}, {"method", method}};
    if (method == "brute") {
        out["mu"] = mobius_brute(sigma, tau).str();
    } else if (method == "decomposable" || method == "skew") {
        const auto kind = method == "skew" ? SumKind::skew : SumKind::direct;
        out["mu"] = mobius_decomposable(sigma, tau, calc, kind).str();
        auto terms = json::array();
        for (const auto& term : mobius_decomposable_terms(sigma, tau, calc, kind))
            terms.push_back({{"split", strings(term.split)}, {"value", term.value.str()}});
        out["terms"] = terms;
    } else if (method == "bjjs") {
        switch (bjjs_case(sigma, tau)) {
            case BjjsCase::one: out["mu"] = mobius_bjjs_one(sigma, tau, calc).str(); break;
            case BjjsCase::two: out["mu"] = mobius_bjjs_two(sigma, tau, calc).str(); break;
            case BjjsCase::none: throw Error(ErrorKind::precondition, "tau is not decomposable or sigma is empty");
        }
    } else {  // all
        if (!contains(sigma, tau))
            throw Error(ErrorKind::not_comparable, sigma.str() + " is not contained in " + tau.str());
        const auto cmp = compare_mobius(sigma, tau, mobius_brute(sigma, tau), calc);
        out["mu"] = cmp.brute.str();
        auto opt = [](const std::optional<Integer>& v) { return v ? json(v->str()) : json(nullptr); };
        out["decomposable"] = opt(cmp.decomposable);
        out["skew_decomposable"] = opt(cmp.skew_decomposable);
        out["bjjs"] = opt(cmp.bjjs);
        out["bjjs_skew"] = opt(cmp.bjjs_skew);
        out["agree"] = cmp.agree();
        std::cout << out.dump() << "\n";
        return cmp.agree() ? exit_ok : exit_violation;
    }
    std::cout << out.dump() << "\n";
    return exit_ok;
}

int cmd_disc_check(const std::string& s, const std::string& t) {
    const auto sigma = perm_arg(s), tau = perm_arg(t);
    const auto rep = is_disconnected(sigma, tau);
    const auto I = build_interval(sigma, tau);
    const auto comps = open_components(I);
    json out{{"sigma", sigma.str()},
             {"tau", tau.str()},
             {"rank", rep.rank},
             {"disconnected", rep.disconnected},
             {"trivially_shellable", rep.trivially_shellable()},
             {"components", component_json(I, comps)}};
    if (rep.rank >= 3) {
        auto blocks = json::array();
        for (const auto& b : rep.blocks) blocks.push_back(embedding_strings(b));
        out["blocks"] = blocks;
        if (rep.disconnected) {
            out["E1"] = embedding_strings(rep.e1);
            out["E2"] = embedding_strings(rep.e2);
        }
    }
    if (const auto w = has_nontrivial_disconnected_subinterval(sigma, tau))
        out["disconnected_subinterval"] = {{"x", w->x.str()}, {"y", w->y.str()}, {"components", w->components}};
    std::cout << out.dump() << "\n";
    const bool agree = (comps.size() > 1) == rep.disconnected;
    return agree ? exit_ok : exit_violation;
}

int cmd_disc_mc(const std::string& s, int n, long trials, const Common& c) {
    const auto est = monte_carlo_prevalence(perm_arg(s), n, trials, c.seed);
    json out{{"sigma", perm_arg(s).str()}, {"pattern", est.pattern.str()}, {"n", est.n},
             {"trials", est.trials},        {"hits", est.hits},               {"seed", est.seed},
             {"frequency", est.frequency}, {"std_error", est.std_error},     {"bound", est.bound},
             {"consistent", est.consistent()}};
    std::cout << out.dump() << "\n";
    return est.consistent() ? exit_ok : exit_violation;
}

int cmd_disc_make(const std::string& s) {
    const auto [lo, hi] = make_disconnected(perm_arg(s));
    const auto rep = is_disconnected(lo, hi);
    std::cout << json{{"sigma", lo.str()}, {"tau", hi.str()}, {"disconnected", rep.disconnected}}.dump() << "\n";
    return rep.disconnected ? exit_ok : exit_violation;
}

ForestPoset forest_for(const std::string& path, const Word& u, const Word& w) {
    if (path.empty()) {
        Word both = u;
        both.insert(both.end(), w.begin(), w.end());
        return chain_for(both);
    }
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::invalid_input, "cannot read " + path);
    return ForestPoset::from_json(json::parse(in));
}

int cmd_subword_certify(const std::string& us, const std::string& ws, const std::string& forest) {
    const auto u = parse_word(us), w = parse_word(ws);
    const auto f = forest_for(forest, u, w);
    f.require_word(u);
    f.require_word(w);
    const auto r = certify_dual_cl(f, u, w);
    json out{{"u", word_str(u)}, {"w", word_str(w)}, {"certified", r.certified}, {"pairs_checked", r.pairs_checked}};
    if (r.refutation) {
        const auto& x = *r.refutation;
        out["refutation"] = {{"u_prime", word_str(x.u_prime)}, {"w_prime", word_str(x.w_prime)},
                             {"eta", word_str(x.eta)},         {"a", x.a},
                             {"i", x.i},                       {"j", x.j}};
    }
    if (r.failing_pair)
        out["failing_pair"] = {word_str(r.failing_pair->first), word_str(r.failing_pair->second)};
    std::cout << out.dump() << "\n";
    // A refutation is an answer, not a violation; a failing pair without a
    // disconnected subinterval would contradict the theory.
    return r.failing_pair ? exit_violation : exit_ok;
}

int cmd_subword_embed(const std::string& us, const std::string& ws, const std::string& forest) {
    const auto u = parse_word(us), w = parse_word(ws);
    const auto f = forest_for(forest, u, w);
    auto all = json::array();
    for (const auto& e : word_embeddings(f, u, w)) all.push_back(word_str(e));
    json out{{"u", word_str(u)}, {"w", word_str(w)}, {"embeddings", all}};
    if (!all.empty()) out["rightmost"] = word_str(rightmost_embedding(f, u, w));
    if (rk(f, w) - rk(f, u) >= 3 && word_leq(f, u, w)) out["disconnected"] = is_disconnected_word(f, u, w);
    std::cout << out.dump() << "\n";
    return exit_ok;
}

int cmd_subword_labels(const std::vector<std::string>& chain, const std::string& forest, bool modified) {
    std::vector<Word> words;
    Word all;
    for (const auto& s : chain) {
        words.push_back(strip_zeros(parse_word(s)));
        all.insert(all.end(), words.back().begin(), words.back().end());
    }
    const auto f = forest_for(forest, all, {});
    const auto labels = modified ? modified_position_labels(f, words) : position_labels(f, words);
    auto j = json::array();
    for (const auto& l : labels) j.push_back(l.str());
    auto emb = json::array();
    for (const auto& e : canonical_embeddings(f, words)) emb.push_back(word_str(e));
    std::cout << json{{"labels", j}, {"embeddings", emb}, {"modified", modified}}.dump() << "\n";
    return exit_ok;
}

json betti_json(const BettiVector& b) {
    return {{"field", b.field.name()}, {"betti", b.values}, {"from_dim", -1}};
}

int cmd_topo_betti(const std::string& s, const std::string& t, const Common& c) {
    const auto sigma = perm_arg(s), tau = perm_arg(t);
    const auto I = build_interval(sigma, tau);
    const auto K = order_complex(I, Budget::with_timeout(c.max_faces, c.timeout));
    const auto b = betti_numbers(K, Field::parse(c.field));
    const auto chi = reduced_euler_char(K);
    const auto mu = mobius_from_bottom(I).back();
    json out{{"sigma", sigma.str()},  {"tau", tau.str()},     {"f_vector", K.f_vector()},
             {"euler", chi.str()},    {"mu", mu.str()},       {"homology", betti_json(b)},
             {"consistent", chi == mu && b.alternating_sum() == chi}};
    std::cout << out.dump() << "\n";
    return chi == mu && b.alternating_sum() == chi ? exit_ok : exit_violation;
}

int cmd_topo_cm(const std::string& s, const std::string& t, const Common& c) {
    const auto sigma = perm_arg(s), tau = perm_arg(t);
    const auto I = build_interval(sigma, tau);
    const auto budget = Budget::with_timeout(c.max_faces, c.timeout);
    const auto field = Field::parse(c.field);
    const auto cm = is_cohen_macaulay(I, field, budget);
    const auto wedge = wedge_of_spheres_check(I, field, budget);
    json out{{"sigma", sigma.str()},
             {"tau", tau.str()},
             {"field", field.name()},
             {"cohen_macaulay", cm.cohen_macaulay},
             {"pairs_checked", cm.pairs_checked},
             {"wedge_of_spheres", wedge.wedge},
             {"mu", wedge.mu.str()},
             {"homology", betti_json(wedge.betti)}};
    if (cm.failing) {
        out["failing"] = {{"x", I.elements[static_cast<std::size_t>(cm.failing->first)].str()},
                          {"y", I.elements[static_cast<std::size_t>(cm.failing->second)].str()},
                          {"homology", betti_json(*cm.failing_betti)}};
    }
    if (const auto w = has_nontrivial_disconnected_subinterval(sigma, tau))
        out["disconnected_subinterval"] = {{"x", w->x.str()}, {"y", w->y.str()}};
    else
        out["disconnected_subinterval"] = nullptr;
    // Flag coefficient dependence: rerun over GF(2) when working over Q.
    if (field == Field::rational()) {
        const auto cm2 = is_cohen_macaulay(I, Field::prime(2), budget);
        out["gf2_agrees"] = cm2.cohen_macaulay == cm.cohen_macaulay;
    }
    std::cout << out.dump() << "\n";
    return exit_ok;
}

int cmd_scan(const std::string& kind, int max_n, bool summary_only, int bound, const Common& c) {
    ScanOptions opt;
    opt.max_n = max_n;
    opt.jobs = c.jobs;
    opt.budget = Budget{c.max_faces};
    opt.timeout_seconds = c.timeout;
    opt.timing = c.timing;
    opt.open = c.open;
    opt.field = Field::parse(c.field);
    opt.bound = bound;
    const auto result = run_scan(kind, opt);
    if (!summary_only)
        for (const auto& r : result.records) std::cout << r.to_json().dump() << "\n";
    std::cout << result.summary.to_json().dump() << "\n";
    const bool conjecture = kind == "unimodal" || kind == "sperner" || kind == "mobius" || kind == "euler";
    const bool violated = result.summary.disagreements > 0 || (conjecture && result.summary.findings > 0);
    return violated ? exit_violation : exit_ok;
}

int cmd_fixtures() {
    const auto r = fixtures();
    std::cout << r.to_json().dump() << "\n";
    return r.ok() ? exit_ok : exit_violation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topology of the permutation pattern poset"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may also follow the subcommand
    Common c;
    app.add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", c.seed, "seed for randomized commands");
    app.add_option("--max-faces", c.max_faces, "face cap per order complex");
    app.add_option("--field", c.field, "coefficients: q, 2 or a prime p");
    app.add_option("--timeout", c.timeout, "seconds per interval, 0 for none");
    app.add_flag("--open", c.open, "Sperner checks on open intervals");
    app.add_flag("--timing", c.timing, "add wall_time to scan records");

    std::string s, t, method = "all", forest;
    bool full = false, modified = true;

    auto* interval = app.add_subcommand("interval", "build [sigma, tau]");
    interval->add_option("sigma", s)->required();
    interval->add_option("tau", t)->required();
    interval->add_flag("--full", full, "include elements and covers");

    auto* mobius = app.add_subcommand("mobius", "mu(sigma, tau)");
    mobius->add_option("sigma", s)->required();
    mobius->add_option("tau", t)->required();
    mobius->add_option("--method", method)->check(CLI::IsMember({"brute", "decomposable", "skew", "bjjs", "all"}));

    auto* disc = app.add_subcommand("disc", "disconnected intervals");
    disc->require_subcommand(1);
    auto* disc_check = disc->add_subcommand("check", "decide (sigma, tau)");
    disc_check->add_option("sigma", s)->required();
    disc_check->add_option("tau", t)->required();
    int mc_n = 20;
    long mc_trials = 2000;
    auto* disc_mc = disc->add_subcommand("mc", "estimate how often sigma+sigma occurs");
    disc_mc->add_option("sigma,--sigma", s)->required();
    disc_mc->add_option("--n", mc_n)->check(CLI::PositiveNumber);
    disc_mc->add_option("--trials", mc_trials)->check(CLI::PositiveNumber);
    auto* disc_make = disc->add_subcommand("make", "a disconnected interval with bottom sigma");
    disc_make->add_option("sigma", s)->required();
    int scan_n = 6, bound = 0;
    bool summary_only = false;
    auto* disc_scan = disc->add_subcommand("scan", "scan disconnected intervals");
    disc_scan->add_option("--max-n", scan_n);
    disc_scan->add_flag("--summary", summary_only);

    auto* subword = app.add_subcommand("subword", "generalized subword order");
    subword->require_subcommand(1);
    auto* certify = subword->add_subcommand("certify", "dual CL certificate for [u, w]");
    certify->add_option("u", s)->required();
    certify->add_option("w", t)->required();
    certify->add_option("--forest", forest, "JSON {\"nodes\": [{\"id\", \"parent\"}]}");
    auto* embed = subword->add_subcommand("embed", "embeddings of u in w");
    embed->add_option("u", s)->required();
    embed->add_option("w", t)->required();
    embed->add_option("--forest", forest);
    std::vector<std::string> chain;
    auto* labels = subword->add_subcommand("labels", "position labels of a maximal chain, top first");
    labels->add_option("chain", chain)->required()->expected(2, -1);
    labels->add_option("--forest", forest);
    labels->add_flag("!--plain", modified, "unmodified position labels");

    auto* topo = app.add_subcommand("topo", "order complex homology");
    topo->require_subcommand(1);
    auto* betti = topo->add_subcommand("betti", "reduced Betti numbers of (sigma, tau)");
    betti->add_option("sigma", s)->required();
    betti->add_option("tau", t)->required();
    auto* cm = topo->add_subcommand("cm", "Cohen-Macaulay and wedge checks");
    cm->add_option("sigma", s)->required();
    cm->add_option("tau", t)->required();

    std::string kind;
    auto* scan = app.add_subcommand("scan", "exhaustive scans, one JSON record per line");
    scan->add_option("kind", kind)->required()->check(CLI::IsMember(scan_kinds()));
    scan->add_option("--max-n", scan_n);
    scan->add_option("--bound", bound, "raise the max-n guard");
    scan->add_flag("--summary", summary_only, "print only the summary");

    auto* fix = app.add_subcommand("fixtures", "rebuild the worked examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*interval) return cmd_interval(s, t, full, c);
        if (*mobius) return cmd_mobius(s, t, method);
        if (*disc_check) return cmd_disc_check(s, t);
        if (*disc_mc) return cmd_disc_mc(s, mc_n, mc_trials, c);
        if (*disc_make) return cmd_disc_make(s);
        if (*disc_scan) return cmd_scan("disconnected", scan_n, summary_only, 0, c);
        if (*certify) return cmd_subword_certify(s, t, forest);
        if (*embed) return cmd_subword_embed(s, t, forest);
        if (*labels) return cmd_subword_labels(chain, forest, modified);
        if (*betti) return cmd_topo_betti(s, t, c);
        if (*cm) return cmd_topo_cm(s, t, c);
        if (*scan) return cmd_scan(kind, scan_n, summary_only, bound, c);
        if (*fix) return cmd_fixtures();
    } catch (const Error& e) {
        std::cerr << json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
