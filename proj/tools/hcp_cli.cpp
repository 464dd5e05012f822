#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hcp/hamilton.hpp"
#include "hcp/harness.hpp"
#include "hcp/json_io.hpp"
#include "hcp/oracle.hpp"
#include "hcp/randgen.hpp"
#include "hcp/structure.hpp"

using namespace hcp;

namespace {

struct Common {
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--seed", c.seed, "master seed");
    app->add_option("--out", c.out, "output file (stdout when omitted)");
    app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw std::runtime_error("cannot write " + c.out);
    f << text;
}

ColorWeights weights_or_uniform(const std::vector<double>& alpha, int r) {
    return alpha.empty() ? ColorWeights::uniform(r) : ColorWeights(alpha);
}

bool is_digraph(const json& j) { return j.contains("arcs"); }

std::string edges_csv(const ColoredGraph& g) {
    std::ostringstream os;
    os << "u,v,color\n";
    for (auto& e : g.edges()) os << e.u << ',' << e.v << ',' << e.color << '\n';
    return os.str();
}

std::string arcs_csv(const ColoredDigraph& d) {
    std::ostringstream os;
    os << "from,to,color\n";
    for (auto& a : d.arcs()) os << a.from << ',' << a.to << ',' << a.color << '\n';
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamilton cycle color profiles of randomly colored random graphs"};
    app.require_subcommand(1);

    // generate
    Common genC;
    int genN = 100, genR = 2, genTheorem = 0;
    double genP = -1, genOmega = std::nan("");
    std::vector<double> genAlpha;
    bool genDirected = false;
    auto* gen = app.add_subcommand("generate", "sample a randomly colored G(n,p) or D(n,p)");
    add_common(gen, genC);
    gen->add_option("--n", genN, "vertices")->required();
    gen->add_option("--r", genR, "colors");
    gen->add_option("--p", genP, "edge probability");
    gen->add_option("--omega", genOmega, "threshold offset, used with --theorem");
    gen->add_option("--theorem", genTheorem, "1: (log n + r log log n + omega)/n, 2: alpha_min form")
        ->check(CLI::IsMember({1, 2}));
    gen->add_option("--alpha", genAlpha, "color weights")->delimiter(',');
    gen->add_flag("--directed", genDirected, "sample a digraph");

    // solve
    Common solC;
    std::string solGraph, solProfile, solCert, solStrategy = "auto";
    double solBeta = 0.1;
    int solRestarts = 10;
    auto* sol = app.add_subcommand("solve", "find a certificate for one profile");
    add_common(sol, solC);
    sol->add_option("--graph", solGraph, "graph JSON")->required();
    sol->add_option("--profile", solProfile, "m1,m2,...")->required();
    sol->add_option("--beta", solBeta, "beta of M_beta (pipeline dispatch)");
    sol->add_option("--restarts", solRestarts, "restarts");
    sol->add_option("--emit-cert", solCert, "write the certificate JSON here");
    sol->add_option("--strategy", solStrategy, "paper, desk, direct or auto")
        ->check(CLI::IsMember({"paper", "desk", "direct", "auto"}));

    // oracle
    Common orC;
    std::string orGraph, orCert;
    int orLimit = 12;
    bool orOverride = false;
    auto* orc = app.add_subcommand("oracle", "exact color profile set by enumeration (small n)");
    add_common(orc, orC);
    orc->add_option("--graph", orGraph, "graph JSON")->required();
    orc->add_option("--check-cert", orCert, "certificate JSON whose profile is checked for membership");
    orc->add_option("--limit", orLimit, "largest n enumerated");
    orc->add_flag("--override-limit", orOverride, "enumerate above the limit");

    // sweep
    Common swC;
    swC.format = "csv";
    SweepSpec sw;
    std::string swMode = "theorem1";
    std::vector<std::string> swProfiles;
    int swRestarts = 10;
    std::string swStrategy = "auto";
    auto* swp = app.add_subcommand("sweep", "Monte Carlo success rates per (n, omega, profile) cell");
    add_common(swp, swC);
    swp->add_option("--mode", swMode, "theorem1..theorem4 or lemmas")
        ->check(CLI::IsMember({"theorem1", "theorem2", "theorem3", "theorem4", "lemmas"}));
    swp->add_option("--n", sw.n_list, "vertex counts")->delimiter(',')->required();
    swp->add_option("--r", sw.r, "colors");
    swp->add_option("--alpha", sw.alpha, "color weights")->delimiter(',');
    swp->add_option("--beta", sw.beta, "beta");
    swp->add_option("--omega", sw.omegas, "omega values")->delimiter(',');
    swp->add_option("--samples", sw.profile_samples, "sampled profiles per cell group");
    swp->add_option("--exhaustive-limit", sw.exhaustive_limit, "enumerate all profiles up to this many");
    swp->add_option("--profile", swProfiles, "explicit profile m1,m2,... (repeatable)");
    swp->add_flag("--small-cell", sw.small_cell, "add a profile with m_1 < n/4r");
    swp->add_option("--trials", sw.trials, "trials per cell");
    swp->add_option("--workers", sw.workers, "worker threads");
    swp->add_option("--restarts", swRestarts, "solver restarts");
    swp->add_option("--strategy", swStrategy, "paper, desk, direct or auto")
        ->check(CLI::IsMember({"paper", "desk", "direct", "auto"}));
    swp->add_flag("--oracle-check", sw.oracle_check, "cross-check certificates with exact_hcp (n <= 12)");
    bool swNoTiming = false;
    swp->add_flag("--no-timing", swNoTiming, "leave ms_mean empty");

    // lemmas
    Common lmC;
    lmC.format = "csv";
    LemmaSpec lm;
    std::string lmProfile;
    auto* lms = app.add_subcommand("lemmas", "pass rates of the structural checkers");
    add_common(lms, lmC);
    lms->add_option("--n", lm.n, "vertices");
    lms->add_option("--r", lm.r, "colors");
    lms->add_option("--alpha", lm.alpha, "color weights")->delimiter(',');
    lms->add_option("--beta", lm.beta, "beta");
    lms->add_option("--omega", lm.omega, "omega");
    lms->add_option("--profile", lmProfile, "m1,m2,... (default balanced)");
    lms->add_option("--rho", lm.rho, "density check set size factor");
    lms->add_option("--trials", lm.trials, "trials");
    lms->add_option("--workers", lm.workers, "worker threads");

    // threshold
    Common thC;
    ThresholdSpec th;
    std::string thProfile;
    auto* ths = app.add_subcommand("threshold", "bisection for the p where the success rate crosses 1/2");
    add_common(ths, thC);
    ths->add_option("--n", th.n, "vertices");
    ths->add_option("--r", th.r, "colors");
    ths->add_option("--alpha", th.alpha, "color weights")->delimiter(',');
    ths->add_option("--beta", th.beta, "beta");
    ths->add_option("--profile", thProfile, "m1,m2,... (default balanced)");
    ths->add_option("--lo", th.lo, "bracket low end");
    ths->add_option("--hi", th.hi, "bracket high end");
    ths->add_option("--iterations", th.iterations, "bisection steps");
    ths->add_option("--trials", th.trials_per_probe, "trials per probe");
    ths->add_option("--bootstrap", th.bootstrap, "bootstrap resamples");
    ths->add_option("--workers", th.workers, "worker threads");

    // couple
    Common coC;
    int coN = 500, coR = 2;
    double coP = 0.5;
    std::vector<double> coAlpha;
    std::string coGraphOut, coDigraphOut;
    auto* cos = app.add_subcommand("couple", "coupled sample of G_q and the one-orientation digraph");
    add_common(cos, coC);
    cos->add_option("--n", coN, "vertices");
    cos->add_option("--r", coR, "colors");
    cos->add_option("--p", coP, "arc probability");
    cos->add_option("--alpha", coAlpha, "color weights")->delimiter(',');
    cos->add_option("--graph-out", coGraphOut, "write G_q JSON here");
    cos->add_option("--digraph-out", coDigraphOut, "write D_star JSON here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            auto alpha = weights_or_uniform(genAlpha, genR);
            GenSpec spec;
            if (genTheorem) {
                double omega = std::isnan(genOmega) ? default_omega(genN) : genOmega;
                spec = genTheorem == 1 ? GenSpec::theorem1(genN, alpha, omega, genC.seed)
                                       : GenSpec::theorem2(genN, alpha, omega, genC.seed);
            } else {
                if (genP < 0) throw InputError("give --p or --theorem");
                spec.n = genN;
                spec.p = genP;
                spec.alpha = alpha;
                spec.seed = genC.seed;
            }
            if (genDirected) {
                auto d = gen_colored_dnp(spec);
                emit(genC, genC.format == "csv" ? arcs_csv(d) : digraph_to_json(d, alpha).dump());
            } else {
                auto g = gen_colored_gnp(spec);
                emit(genC, genC.format == "csv" ? edges_csv(g) : graph_to_json(g, alpha).dump());
            }
            return 0;
        }

        if (*sol) {
            auto j = read_json_file(solGraph);
            auto m = parse_profile(solProfile);
            SolverConfig cfg;
            cfg.beta = solBeta;
            cfg.seed = solC.seed;
            cfg.restarts = solRestarts;
            cfg.strategy = parse_strategy(solStrategy);
            SolveResult res;
            if (is_digraph(j)) {
                auto d = digraph_from_json(j);
                ColorWeights alpha = j.contains("alpha") && !j["alpha"].empty()
                                         ? ColorWeights(j["alpha"].get<std::vector<double>>())
                                         : ColorWeights::uniform(d.r());
                res = solve_digraph(d, m, alpha, cfg);
            } else {
                auto gf = graph_from_json(j);
                res = solve(gf.graph, m, gf.alpha, cfg);
            }
            json out{{"status", to_string(res.status)},
                     {"pipeline", res.pipeline},
                     {"method", res.method},
                     {"attempts", res.attempts},
                     {"failure_stage", to_string(res.failure_stage)},
                     {"reason", res.reason},
                     {"stage_failures", res.stage_failures},
                     {"reserve_opened", res.reserve_opened}};
            if (res.certificate) {
                out["certificate"] = certificate_to_json(*res.certificate);
                if (!solCert.empty()) write_json_file(solCert, certificate_to_json(*res.certificate));
            }
            if (solC.format == "csv") {
                std::ostringstream os;
                os << "status,pipeline,method,attempts,failure_stage\n"
                   << to_string(res.status) << ',' << res.pipeline << ',' << res.method << ',' << res.attempts << ','
                   << to_string(res.failure_stage) << '\n';
                emit(solC, os.str());
            } else {
                emit(solC, out.dump(2));
            }
            return res.exit_code();
        }

        if (*orc) {
            auto gf = graph_from_json(read_json_file(orGraph));
            OracleOptions opt;
            opt.limit = orLimit;
            opt.override_limit = orOverride;
            auto ps = exact_hcp(gf.graph, opt);
            json out{{"n", ps.n}, {"r", ps.r}, {"graph_hash", ps.graph_hash}, {"profiles", ps.profiles}};
            int code = 0;
            if (!orCert.empty()) {
                auto cert = certificate_from_json(read_json_file(orCert));
                ProfileVector m;
                if (cert.order.size() == static_cast<std::size_t>(gf.graph.n())) {
                    auto word = color_word(gf.graph, cert.order);
                    bool complete = std::find(word.begin(), word.end(), Color{0}) == word.end();
                    auto found = complete ? profiles_of_cycle(word, gf.graph.r()) : std::set<ProfileVector>{};
                    if (!found.empty()) m = *found.begin();
                }
                bool valid = !m.empty() && verify_certificate(gf.graph, m, cert).ok;
                bool member = valid && ps.contains(m);
                out["check"] = {{"profile", m}, {"valid", valid}, {"member", member}};
                code = member ? 0 : 1;
            }
            if (orC.format == "csv") {
                std::ostringstream os;
                os << "profile\n";
                for (auto& m : ps.profiles) os << profile_to_string(m) << '\n';
                emit(orC, os.str());
            } else {
                emit(orC, out.dump(2));
            }
            return code;
        }

        if (*swp) {
            sw.mode = parse_sweep_mode(swMode);
            sw.seed = swC.seed;
            for (auto& s : swProfiles) sw.profiles.push_back(parse_profile(s));
            sw.solver.restarts = swRestarts;
            sw.solver.strategy = parse_strategy(swStrategy);
            auto res = run_sweep(sw);
            emit(swC, swC.format == "csv" ? res.to_csv(!swNoTiming) : res.to_json().dump(2));
            return 0;
        }

        if (*lms) {
            lm.seed = lmC.seed;
            if (!lmProfile.empty()) lm.profile = parse_profile(lmProfile);
            auto t = run_lemma_suite(lm);
            emit(lmC, lmC.format == "csv" ? t.to_csv() : t.to_json().dump(2));
            return 0;
        }

        if (*ths) {
            th.seed = thC.seed;
            if (!thProfile.empty()) th.profile = parse_profile(thProfile);
            auto t = estimate_threshold(th);
            if (thC.format == "csv") {
                std::ostringstream os;
                os << "p_hat,ci_lo,ci_hi,excess,r_loglog,alpha_term\n"
                   << t.p_hat << ',' << t.ci_lo << ',' << t.ci_hi << ',' << t.excess << ',' << t.r_loglog << ','
                   << t.alpha_term << '\n';
                emit(thC, os.str());
            } else {
                emit(thC, t.to_json().dump(2));
            }
            return 0;
        }

        if (*cos) {
            auto alpha = weights_or_uniform(coAlpha, coR);
            auto coloring = sample_pair_coloring(coN, alpha, derive(coC.seed, 0, 1));
            auto s = couple_digraph(coN, coR, coloring, coP, derive(coC.seed, 0, 2));
            if (!coGraphOut.empty()) write_json_file(coGraphOut, graph_to_json(s.g_q, alpha));
            if (!coDigraphOut.empty()) write_json_file(coDigraphOut, digraph_to_json(s.d_star, alpha));
            double pairs = 0.5 * coN * (coN - 1.0);
            double freq = s.g_q.edge_count() / pairs;
            int oneWay = 0;
            for (auto& e : s.g_q.edges()) oneWay += s.d_star.has_arc(e.u, e.v) != s.d_star.has_arc(e.v, e.u);
            json out{{"n", coN},
                     {"p", coP},
                     {"edges", s.g_q.edge_count()},
                     {"arcs", s.d_star.arc_count()},
                     {"edge_frequency", freq},
                     {"q", coP * (1 - coP)},
                     {"one_orientation", oneWay}};
            if (coC.format == "csv") {
                std::ostringstream os;
                os << "n,p,edges,arcs,edge_frequency,q,one_orientation\n"
                   << coN << ',' << coP << ',' << s.g_q.edge_count() << ',' << s.d_star.arc_count() << ',' << freq
                   << ',' << coP * (1 - coP) << ',' << oneWay << '\n';
                emit(coC, os.str());
            } else {
                emit(coC, out.dump(2));
            }
            return 0;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
