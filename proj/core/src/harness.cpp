#include "hcp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "hcp/oracle.hpp"
#include "hcp/randgen.hpp"
#include "hcp/rng.hpp"
#include "hcp/structure.hpp"

namespace hcp {

using json = nlohmann::json;

const char* to_string(SweepMode m) {
    switch (m) {
        case SweepMode::theorem1: return "theorem1";
        case SweepMode::theorem2: return "theorem2";
        case SweepMode::theorem3: return "theorem3";
        case SweepMode::theorem4: return "theorem4";
        case SweepMode::lemmas: return "lemmas";
    }
    return "?";
}

SweepMode parse_sweep_mode(const std::string& s) {
    for (auto m : {SweepMode::theorem1, SweepMode::theorem2, SweepMode::theorem3, SweepMode::theorem4,
                   SweepMode::lemmas})
        if (s == to_string(m)) return m;
    throw InputError("unknown sweep mode '" + s + "'");
}

double mode_probability(SweepMode mode, int n, int r, const ColorWeights& alpha, double omega) {
    if (mode == SweepMode::theorem2 || mode == SweepMode::theorem4) return p_theorem2(n, alpha.min(), omega);
    return p_theorem1(n, r, omega);
}

ProfileVector sample_profile(int n, int r, double beta, Rng& rng) {
    int lo = beta_floor(n, beta);
    int rest = n - r * lo;
    if (r < 1 || rest < 0) throw InputError("M_beta is empty");
    // r-1 bars among rest + r - 1 slots
    int slots = rest + r - 1;
    std::vector<int> bars;
    while (static_cast<int>(bars.size()) < r - 1) {
        int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(slots)));
        if (std::find(bars.begin(), bars.end(), b) == bars.end()) bars.push_back(b);
    }
    std::sort(bars.begin(), bars.end());
    ProfileVector m;
    int prev = -1;
    for (int b : bars) {
        m.push_back(b - prev - 1 + lo);
        prev = b;
    }
    m.push_back(slots - prev - 1 + lo);
    return m;
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& f) {
    workers = std::max(1, workers);
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex errMu;
    std::vector<std::thread> pool;
    for (int w = 0; w < std::min<int>(workers, static_cast<int>(count)); ++w)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(errMu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

ColorWeights SweepSpec::weights() const {
    return alpha.empty() ? ColorWeights::uniform(r) : ColorWeights(alpha);
}

void SweepSpec::validate() const {
    if (trials < 1) throw InputError("trials must be >= 1");
    if (n_list.empty()) throw InputError("no n values");
    if (r < 1) throw InputError("r must be >= 1");
    if (omegas.empty()) throw InputError("no omega values");
    if (workers < 1) throw InputError("workers must be >= 1");
    if (profile_samples < 1 && profiles.empty()) throw InputError("profile_samples must be >= 1");
    auto w = weights();
    if (w.r() != r) throw InputError("alpha has the wrong number of colors");
    for (int n : n_list) {
        if (n < 3) throw InputError("n must be >= 3");
        for (auto& m : profiles) validate_profile(m, n, r);
    }
}

namespace {

std::string join(const std::vector<double>& xs) {
    std::string s;
    char buf[32];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%g", xs[i]);
        if (i) s += ';';
        s += buf;
    }
    return s;
}

std::string join(const ProfileVector& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(m[i]);
    }
    return s;
}

int fail_slot(Stage s) {
    switch (s) {
        case Stage::stage1: return 0;
        case Stage::stage2: return 1;
        case Stage::stage3: return 2;
        default: return 3;
    }
}

std::vector<ProfileVector> cell_profiles(const SweepSpec& spec, int n, std::uint64_t seed) {
    if (!spec.profiles.empty()) return spec.profiles;
    bool full = spec.mode == SweepMode::theorem2 || spec.mode == SweepMode::theorem4;
    double beta = full ? 0.0 : spec.beta;
    ProfileSpace space(n, spec.r, beta);
    std::vector<ProfileVector> out;
    if (space.size() <= spec.exhaustive_limit) {
        out = space.to_vector();
    } else {
        Rng rng(seed);
        for (int i = 0; i < spec.profile_samples; ++i) out.push_back(sample_profile(n, spec.r, beta, rng));
    }
    if (full && spec.small_cell && spec.r >= 2) {
        ProfileVector m(spec.r, 0);
        m[0] = std::max(1, n / (8 * spec.r));
        int rest = n - m[0];
        for (int i = 1; i < spec.r; ++i) m[i] = rest / (spec.r - 1) + (i <= rest % (spec.r - 1) ? 1 : 0);
        out.push_back(m);
    }
    return out;
}

struct TrialOutcome {
    SolveStatus status = SolveStatus::heuristic_failure;
    Stage stage = Stage::none;
    std::string method;
    double ms = 0;
    bool oracle_bad = false;
};

struct GraphStats {
    int witnesses = 0;
};

SweepResult run_lemma_cells(const SweepSpec& spec) {
    SweepResult res;
    auto alpha = spec.weights();
    for (int n : spec.n_list)
        for (std::size_t oi = 0; oi < spec.omegas.size(); ++oi) {
            LemmaSpec ls;
            ls.n = n;
            ls.r = spec.r;
            ls.alpha = spec.alpha;
            ls.beta = spec.beta;
            ls.omega = spec.omegas[oi];
            if (!spec.profiles.empty()) ls.profile = spec.profiles.front();
            ls.trials = spec.trials;
            ls.seed = derive(spec.seed, static_cast<std::uint64_t>(n), oi);
            ls.workers = spec.workers;
            auto table = run_lemma_suite(ls);
            for (auto& row : table.rows) {
                CellResult c;
                c.mode = SweepMode::lemmas;
                c.n = n;
                c.p = table.p;
                c.omega = spec.omegas[oi];
                c.r = spec.r;
                c.alpha = alpha.values();
                c.beta = spec.beta;
                c.seed = spec.seed;
                c.profile = row.lemma;
                c.trials = row.trials;
                c.success = row.passes;
                c.fail[0] = row.trials - row.passes;
                res.cells.push_back(std::move(c));
            }
        }
    return res;
}

}  // namespace

json CellResult::to_json() const {
    return json{{"mode", to_string(mode)},
                {"n", n},
                {"p", p},
                {"omega", omega},
                {"r", r},
                {"alpha", alpha},
                {"beta", beta},
                {"seed", seed},
                {"profile", profile},
                {"trials", trials},
                {"success", success},
                {"fail_stage1", fail[0]},
                {"fail_stage2", fail[1]},
                {"fail_stage3", fail[2]},
                {"fail_glue", fail[3]},
                {"infeasible", infeasible},
                {"ms_mean", ms_mean},
                {"methods", {{"paper", method_paper}, {"desk", method_desk}, {"direct", method_direct}, {"exact", method_exact}}},
                {"oracle_violations", oracle_violations},
                {"witness_trials", witness_trials},
                {"over_r_trials", over_r_trials},
                {"over_r_not_infeasible", over_r_not_infeasible}};
}

const char* SweepResult::csv_header() {
    return "mode,n,p,omega,r,alpha,beta,seed,profile,trials,success,fail_stage1,fail_stage2,fail_stage3,"
           "fail_glue,infeasible,ms_mean";
}

std::string SweepResult::to_csv(bool timing) const {
    std::ostringstream os;
    os << csv_header() << '\n';
    char buf[64];
    for (auto& c : cells) {
        std::snprintf(buf, sizeof buf, "%.10g", c.p);
        os << to_string(c.mode) << ',' << c.n << ',' << buf << ',';
        std::snprintf(buf, sizeof buf, "%g", c.omega);
        os << buf << ',' << c.r << ',' << join(c.alpha) << ',';
        std::snprintf(buf, sizeof buf, "%g", c.beta);
        os << buf << ',' << c.seed << ',' << c.profile << ',' << c.trials << ',' << c.success << ',' << c.fail[0]
           << ',' << c.fail[1] << ',' << c.fail[2] << ',' << c.fail[3] << ',' << c.infeasible << ',';
        if (timing) {
            std::snprintf(buf, sizeof buf, "%.3f", c.ms_mean);
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

json SweepResult::to_json() const {
    json cs = json::array();
    for (auto& c : cells) cs.push_back(c.to_json());
    return json{{"cells", cs}};
}

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    if (spec.mode == SweepMode::lemmas) return run_lemma_cells(spec);
    const auto alpha = spec.weights();
    const bool directed = spec.mode == SweepMode::theorem3 || spec.mode == SweepMode::theorem4;

    struct Group {
        int n;
        std::size_t oi;
        double p;
        std::uint64_t seed;
        std::vector<ProfileVector> profiles;
    };
    std::vector<Group> groups;
    for (int n : spec.n_list)
        for (std::size_t oi = 0; oi < spec.omegas.size(); ++oi) {
            Group g{n, oi, mode_probability(spec.mode, n, spec.r, alpha, spec.omegas[oi]),
                    derive(spec.seed, static_cast<std::uint64_t>(n), 100 + oi), {}};
            g.profiles = cell_profiles(spec, n, derive(g.seed, 0, 1));
            groups.push_back(std::move(g));
        }

    // one work item per (group, trial): a graph shared by all profiles of the group
    std::vector<std::pair<std::size_t, int>> items;
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
        for (int t = 0; t < spec.trials; ++t) items.push_back({gi, t});
    std::vector<std::vector<TrialOutcome>> outcomes(items.size());
    std::vector<GraphStats> stats(items.size());

    parallel_for(items.size(), spec.workers, [&](std::size_t k) {
        const Group& grp = groups[items[k].first];
        const int t = items[k].second;
        GenSpec gs;
        gs.n = grp.n;
        gs.p = grp.p;
        gs.alpha = alpha;
        gs.seed = derive(grp.seed, static_cast<std::uint64_t>(t), 2);
        ColoredGraph g;
        ColoredDigraph d;
        if (directed) d = gen_colored_dnp(gs);
        else g = gen_colored_gnp(gs);
        if (!directed) stats[k].witnesses = static_cast<int>(obstruction_witnesses(g, spec.r).witnesses.size());
        std::optional<ProfileSet> oracle;
        if (spec.oracle_check && !directed && grp.n <= 12) oracle = exact_hcp(g);
        auto& out = outcomes[k];
        out.resize(grp.profiles.size());
        for (std::size_t pi = 0; pi < grp.profiles.size(); ++pi) {
            SolverConfig cfg = spec.solver;
            cfg.beta = spec.beta;
            cfg.seed = derive(gs.seed, pi, 3);
            auto t0 = std::chrono::steady_clock::now();
            auto r = directed ? solve_digraph(d, grp.profiles[pi], alpha, cfg) : solve(g, grp.profiles[pi], alpha, cfg);
            out[pi].ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            out[pi].status = r.status;
            out[pi].stage = r.failure_stage;
            out[pi].method = r.method;
            if (r.status == SolveStatus::certificate) {
                bool valid = directed ? verify_directed_certificate(d, grp.profiles[pi], *r.certificate).ok
                                      : verify_certificate(g, grp.profiles[pi], *r.certificate).ok;
                if (!valid) out[pi].oracle_bad = true;
                if (oracle && !oracle->contains(grp.profiles[pi])) out[pi].oracle_bad = true;
            }
        }
    });

    SweepResult res;
    std::size_t k = 0;
    for (auto& grp : groups) {
        std::vector<CellResult> cells(grp.profiles.size());
        for (std::size_t pi = 0; pi < grp.profiles.size(); ++pi) {
            auto& c = cells[pi];
            c.mode = spec.mode;
            c.n = grp.n;
            c.p = grp.p;
            c.omega = spec.omegas[grp.oi];
            c.r = spec.r;
            c.alpha = alpha.values();
            c.beta = spec.beta;
            c.seed = spec.seed;
            c.profile = join(grp.profiles[pi]);
        }
        for (int t = 0; t < spec.trials; ++t, ++k) {
            int w = stats[k].witnesses;
            for (std::size_t pi = 0; pi < grp.profiles.size(); ++pi) {
                auto& c = cells[pi];
                auto& o = outcomes[k][pi];
                ++c.trials;
                c.ms_mean += o.ms;
                if (o.status == SolveStatus::certificate) {
                    ++c.success;
                    if (o.method == "paper") ++c.method_paper;
                    else if (o.method == "desk") ++c.method_desk;
                    else if (o.method == "direct") ++c.method_direct;
                    else if (o.method == "exact") ++c.method_exact;
                } else if (o.status == SolveStatus::infeasible) {
                    ++c.infeasible;
                } else {
                    ++c.fail[fail_slot(o.stage)];
                }
                c.oracle_violations += o.oracle_bad;
                c.witness_trials += w > 0;
                c.over_r_trials += w > spec.r;
                c.over_r_not_infeasible += w > spec.r && o.status != SolveStatus::infeasible;
            }
        }
        for (auto& c : cells) {
            if (c.trials) c.ms_mean /= c.trials;
            res.cells.push_back(std::move(c));
        }
    }
    return res;
}

// ---- lemma suite

const std::vector<std::string>& lemma_names() {
    static const std::vector<std::string> names{
        "B1",   "B2",   "B3",   "B4",   "B5",   "L3.1a", "L3.1b", "L3.1c",
        "L3.4a", "L3.4b", "L3.4c", "L6.1", "L6.3", "L4.4a", "L4.4b"};
    return names;
}

const LemmaRow* LemmaTable::find(const std::string& lemma) const {
    for (auto& r : rows)
        if (r.lemma == lemma) return &r;
    return nullptr;
}

std::string LemmaTable::to_csv() const {
    std::ostringstream os;
    os << "lemma,n,p,trials,passes,vacuous,rate\n";
    char buf[64];
    for (auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.10g", p);
        os << r.lemma << ',' << n << ',' << buf << ',' << r.trials << ',' << r.passes << ',' << r.vacuous << ',';
        std::snprintf(buf, sizeof buf, "%.4f", r.rate());
        os << buf << '\n';
    }
    return os.str();
}

json LemmaTable::to_json() const {
    json rs = json::array();
    for (auto& r : rows)
        rs.push_back({{"lemma", r.lemma},
                      {"trials", r.trials},
                      {"passes", r.passes},
                      {"vacuous", r.vacuous},
                      {"rate", r.rate()},
                      {"witnesses", r.witnesses}});
    return json{{"n", n}, {"p", p}, {"rows", rs}};
}

LemmaTable run_lemma_suite(const LemmaSpec& spec) {
    if (spec.trials < 1) throw InputError("trials must be >= 1");
    if (spec.n < 3) throw InputError("n must be >= 3");
    const int n = spec.n, r = spec.r;
    ColorWeights alpha = spec.alpha.empty() ? ColorWeights::uniform(r) : ColorWeights(spec.alpha);
    if (alpha.r() != r) throw InputError("alpha has the wrong number of colors");
    ProfileVector m = spec.profile;
    if (m.empty()) {
        for (int i = 0; i < r; ++i) m.push_back(n / r + (i < n % r ? 1 : 0));
    }
    validate_profile(m, n, r);
    const double p = spec.p_of_n ? spec.p_of_n(n) : p_theorem1(n, r, spec.omega);
    const auto& names = lemma_names();

    struct One {
        std::vector<CheckReport> reports;
    };
    std::vector<One> per(spec.trials);
    parallel_for(static_cast<std::size_t>(spec.trials), spec.workers, [&](std::size_t t) {
        std::uint64_t seed = derive(spec.seed, t, 31);
        ColoredGraph g;
        if (spec.graph_override) {
            g = spec.graph_override(static_cast<int>(t));
        } else {
            GenSpec gs;
            gs.n = n;
            gs.p = p;
            gs.alpha = alpha;
            gs.seed = seed;
            g = gen_colored_gnp(gs);
        }
        double c = density_constant(g);
        if (c <= 0) c = 1e-9;
        auto& out = per[t].reports;
        std::vector<Vertex> all(n);
        std::iota(all.begin(), all.end(), 0);

        auto b1 = small_set(g, all, c);
        CheckReport rb1;
        rb1.check = "B1";
        rb1.pass = b1.within_bound;
        rb1.params = {{"size", b1.members.size()}, {"bound", b1.bound}};
        if (!rb1.pass) rb1.witness = json{{"members", b1.members.size()}};
        out.push_back(rb1);
        out.push_back(check_small_pairs(g, c));
        out.push_back(check_local_small_density(g, all, c, r));
        out.push_back(check_min_degree(g, r));
        out.push_back(check_disjoint_sets_edge(g, static_cast<int>(std::ceil(b5_set_size(n))), derive(seed, 1, 32)));

        auto scheme = partition_for_profile(n, m);
        auto danger = compute_danger_sets(g, scheme, m, alpha, spec.beta, DangerVariant::theorem1);
        out.push_back(danger.lemma_a);
        out.push_back(danger.lemma_b);
        out.push_back(danger.lemma_c);

        CheckReport ea, eb, ec;
        ea.check = "L3.4a";
        eb.check = "L3.4b";
        ec.check = "L3.4c";
        ea.vacuous = eb.vacuous = true;
        double mu_min = scheme.mu_min();
        for (std::size_t b = 0; b < scheme.blocks.size(); ++b) {
            if (scheme.blocks[b].empty()) continue;
            auto e = check_expansion(g, scheme.blocks[b], scheme.color[b], danger.A_m, mu_min, alpha.min(),
                                     derive(seed, 2 + b, 33));
            for (auto [dst, src] : {std::pair{&ea, &e.a}, std::pair{&eb, &e.b}, std::pair{&ec, &e.c}}) {
                if (!src->vacuous) dst->vacuous = false;
                if (!src->pass && dst->pass) {
                    dst->pass = false;
                    dst->witness = src->witness;
                }
            }
        }
        ec.vacuous = false;
        out.push_back(ea);
        out.push_back(eb);
        out.push_back(ec);

        // both parameter pairs: (c=1, gamma=beta/10) and (c=1/alpha_min, gamma=1/80r)
        auto sa = compute_A_star(g, spec.beta / 10, 1.0, alpha);
        auto sb = compute_A_star(g, 1.0 / (80.0 * r), 1.0 / alpha.min(), alpha);
        auto ca = check_containment(danger.A_m, sa);
        auto cb = check_containment(danger.A_m, sb);
        CheckReport l61;
        l61.check = "L6.1";
        l61.pass = ca.pass && cb.pass;
        l61.params = {{"a", ca.params}, {"b", cb.params}};
        if (!ca.pass) l61.witness = ca.witness;
        else if (!cb.pass) l61.witness = cb.witness;
        out.push_back(l61);
        out.push_back(check_density(g, spec.rho, c));

        // chain-block lemma on half the vertices, color 1
        std::vector<Vertex> half(all.begin(), all.begin() + n / 2);
        auto cbk = check_chain_block(g, half, 1, derive(seed, 9, 34));
        out.push_back(cbk.connected);
        out.push_back(cbk.cross_edge);
    });

    LemmaTable table;
    table.n = n;
    table.p = p;
    for (std::size_t i = 0; i < names.size(); ++i) {
        LemmaRow row;
        row.lemma = names[i];
        for (int t = 0; t < spec.trials; ++t) {
            const auto& rep = per[t].reports[i];
            ++row.trials;
            row.passes += rep.pass;
            row.vacuous += rep.vacuous;
            if (!rep.pass && static_cast<int>(row.witnesses.size()) < spec.witnesses_kept) {
                json w = rep.to_json();
                w["trial"] = t;
                row.witnesses.push_back(std::move(w));
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

// ---- threshold estimation

json ThresholdResult::to_json() const {
    json ps = json::array();
    for (auto& p : probes) ps.push_back({{"p", p.p}, {"trials", p.trials}, {"successes", p.successes}});
    return json{{"p_hat", p_hat}, {"ci", {ci_lo, ci_hi}}, {"excess", excess}, {"r_loglog", r_loglog},
                {"alpha_term", alpha_term}, {"probes", ps}};
}

namespace {

// Logistic fit of success against p; returns the p where the fitted rate is 1/2.
std::optional<double> logistic_crossing(const std::vector<std::pair<double, int>>& obs, double scale) {
    double a = 0, b = 0;
    for (int it = 0; it < 50; ++it) {
        double g0 = 0, g1 = 0, h00 = 0, h01 = 0, h11 = 0;
        for (auto& [p, y] : obs) {
            double x = p * scale;
            double z = a + b * x;
            double q = 1.0 / (1.0 + std::exp(-z));
            double w = q * (1 - q);
            g0 += y - q;
            g1 += (y - q) * x;
            h00 += w;
            h01 += w * x;
            h11 += w * x * x;
        }
        // small ridge keeps separable data finite
        h00 += 1e-6;
        h11 += 1e-6;
        g1 -= 1e-6 * b;
        g0 -= 1e-6 * a;
        double det = h00 * h11 - h01 * h01;
        if (std::abs(det) < 1e-300) break;
        double da = (h11 * g0 - h01 * g1) / det;
        double db = (h00 * g1 - h01 * g0) / det;
        a += da;
        b += db;
        if (std::abs(da) + std::abs(db) < 1e-10) break;
    }
    if (!(b > 0) || !std::isfinite(a) || !std::isfinite(b)) return std::nullopt;
    return -a / b / scale;
}

}  // namespace

ThresholdResult estimate_threshold(const ThresholdSpec& spec) {
    const int n = spec.n, r = spec.r;
    if (n < 3) throw InputError("n must be >= 3");
    if (spec.trials_per_probe < 1) throw InputError("trials_per_probe must be >= 1");
    ColorWeights alpha = spec.alpha.empty() ? ColorWeights::uniform(r) : ColorWeights(spec.alpha);
    if (alpha.r() != r) throw InputError("alpha has the wrong number of colors");
    ProfileVector m = spec.profile;
    if (m.empty())
        for (int i = 0; i < r; ++i) m.push_back(n / r + (i < n % r ? 1 : 0));
    validate_profile(m, n, r);

    const double ln = std::log(n), lln = std::log(ln);
    double lo = spec.lo, hi = spec.hi;
    if (lo <= 0 && hi <= 0) {
        lo = (ln + lln) / n;
        hi = std::min(1.0, 2.0 * (ln + lln + default_omega(n)) / (alpha.min() * n));
    }
    if (hi < lo) throw InputError("threshold bracket has hi < lo");
    const double lo0 = lo, hi0 = hi;

    ThresholdResult res;
    res.r_loglog = r * lln;
    res.alpha_term = ln * (1.0 / alpha.min() - 1.0) + lln / alpha.min();
    auto finish = [&](double p) {
        res.p_hat = p;
        res.excess = p * n - ln;
    };
    if (hi == lo) {
        finish(lo);
        res.ci_lo = res.ci_hi = lo;
        return res;
    }

    std::vector<std::pair<double, int>> obs;  // (p, success) per trial
    for (int it = 0; it < spec.iterations; ++it) {
        double mid = 0.5 * (lo + hi);
        std::vector<int> ok(spec.trials_per_probe, 0);
        std::uint64_t probeSeed = derive(spec.seed, static_cast<std::uint64_t>(it), 41);
        parallel_for(ok.size(), spec.workers, [&](std::size_t t) {
            GenSpec gs;
            gs.n = n;
            gs.p = mid;
            gs.alpha = alpha;
            gs.seed = derive(probeSeed, t, 1);
            auto g = gen_colored_gnp(gs);
            SolverConfig cfg = spec.solver;
            cfg.beta = spec.beta;
            cfg.seed = derive(probeSeed, t, 2);
            ok[t] = solve(g, m, alpha, cfg).status == SolveStatus::certificate;
        });
        ThresholdProbe pr{mid, spec.trials_per_probe, std::accumulate(ok.begin(), ok.end(), 0)};
        res.probes.push_back(pr);
        for (int y : ok) obs.push_back({mid, y});
        if (2 * pr.successes >= pr.trials) hi = mid;
        else lo = mid;
    }
    double bis = 0.5 * (lo + hi);
    auto fit = logistic_crossing(obs, n);
    // a fit outside the bracket means the probes carry no slope information
    double est = fit && *fit >= lo0 && *fit <= hi0 ? *fit : bis;
    finish(est);

    // bootstrap over trial outcomes
    Rng rng(derive(spec.seed, 0, 42));
    std::vector<double> boot;
    for (int b = 0; b < spec.bootstrap; ++b) {
        std::vector<std::pair<double, int>> s;
        s.reserve(obs.size());
        for (std::size_t i = 0; i < obs.size(); ++i) s.push_back(obs[rng.below(obs.size())]);
        if (auto f = logistic_crossing(s, n)) boot.push_back(*f);
    }
    if (boot.size() >= 10) {
        std::sort(boot.begin(), boot.end());
        res.ci_lo = boot[static_cast<std::size_t>(0.025 * (boot.size() - 1))];
        res.ci_hi = boot[static_cast<std::size_t>(0.975 * (boot.size() - 1))];
    } else {
        res.ci_lo = lo;
        res.ci_hi = hi;
    }
    return res;
}

}  // namespace hcp
