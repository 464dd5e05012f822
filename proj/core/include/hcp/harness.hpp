#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcp/hamilton.hpp"
#include "hcp/model.hpp"
#include "hcp/rng.hpp"

namespace hcp {

enum class SweepMode { theorem1, theorem2, theorem3, theorem4, lemmas };

const char* to_string(SweepMode m);
SweepMode parse_sweep_mode(const std::string& s);

// Threshold formula of a mode: theorem1/3 use the r log log n form, theorem2/4
// the alpha_min form. lemmas follows theorem1.
double mode_probability(SweepMode mode, int n, int r, const ColorWeights& alpha, double omega);

// Uniform composition of n into r parts, each at least ceil(beta n).
ProfileVector sample_profile(int n, int r, double beta, Rng& rng);

struct SweepSpec {
    SweepMode mode = SweepMode::theorem1;
    std::vector<int> n_list;
    int r = 2;
    std::vector<double> alpha;  // empty: uniform
    double beta = 0.1;
    std::vector<double> omegas{6.0};
    // Cells per (n, omega): every profile of M_beta (theorem1/3) or M
    // (theorem2/4) when there are at most exhaustive_limit of them, otherwise
    // profile_samples uniform samples.
    int profile_samples = 5;
    std::uint64_t exhaustive_limit = 64;
    // Adds one cell with m_1 < n/4r (theorem2/4).
    bool small_cell = false;
    std::vector<ProfileVector> profiles;  // explicit cells, replaces sampling
    int trials = 10;
    std::uint64_t seed = 0;
    int workers = 1;
    SolverConfig solver;
    bool oracle_check = false;  // profile of each certificate against exact_hcp (n <= 12)

    ColorWeights weights() const;
    void validate() const;  // InputError
};

struct CellResult {
    SweepMode mode = SweepMode::theorem1;
    int n = 0;
    double p = 0;
    double omega = 0;
    int r = 0;
    std::vector<double> alpha;
    double beta = 0;
    std::uint64_t seed = 0;
    std::string profile;  // m_1;m_2;... or the lemma name
    int trials = 0;
    int success = 0;
    std::array<int, 4> fail{};  // stage1, stage2, stage3, glue
    int infeasible = 0;
    double ms_mean = 0;

    int method_paper = 0, method_desk = 0, method_direct = 0, method_exact = 0;
    int oracle_violations = 0;
    int witness_trials = 0;        // graphs with at least one obstruction witness
    int over_r_trials = 0;         // graphs with more than r witnesses
    int over_r_not_infeasible = 0; // ... where the solver did not report infeasibility

    nlohmann::json to_json() const;
};

struct SweepResult {
    std::vector<CellResult> cells;

    static const char* csv_header();
    std::string to_csv(bool timing = true) const;
    nlohmann::json to_json() const;
};

SweepResult run_sweep(const SweepSpec& spec);

struct LemmaSpec {
    int n = 2000;
    int r = 2;
    std::vector<double> alpha;  // empty: uniform
    double beta = 0.1;
    double omega = 6;
    ProfileVector profile;  // empty: balanced
    double rho = 1;         // density check set-size factor
    int trials = 100;
    std::uint64_t seed = 0;
    int workers = 1;
    // p as a function of n; empty: theorem1 threshold with omega.
    std::function<double(int)> p_of_n;
    // Replaces the random graph of trial t (for forced inputs).
    std::function<ColoredGraph(int trial)> graph_override;
    int witnesses_kept = 3;
};

struct LemmaRow {
    std::string lemma;
    int trials = 0;
    int passes = 0;
    int vacuous = 0;
    std::vector<nlohmann::json> witnesses;  // failures, first few

    double rate() const { return trials ? static_cast<double>(passes) / trials : 0.0; }
};

struct LemmaTable {
    int n = 0;
    double p = 0;
    std::vector<LemmaRow> rows;

    const LemmaRow* find(const std::string& lemma) const;
    std::string to_csv() const;
    nlohmann::json to_json() const;
};

// Names, in table order.
const std::vector<std::string>& lemma_names();

LemmaTable run_lemma_suite(const LemmaSpec& spec);

struct ThresholdSpec {
    int n = 1000;
    int r = 1;
    std::vector<double> alpha;  // empty: uniform
    double beta = 0.1;
    ProfileVector profile;  // empty: balanced
    // Bracket; zeros pick the Hamiltonicity threshold and twice the alpha_min threshold.
    double lo = 0, hi = 0;
    int iterations = 10;
    int trials_per_probe = 20;
    int bootstrap = 200;
    std::uint64_t seed = 0;
    int workers = 1;
    SolverConfig solver;
};

struct ThresholdProbe {
    double p = 0;
    int trials = 0;
    int successes = 0;
};

struct ThresholdResult {
    double p_hat = 0;
    double ci_lo = 0, ci_hi = 0;
    double excess = 0;         // p_hat n - log n
    double r_loglog = 0;       // r log log n
    double alpha_term = 0;     // log n (1/alpha_min - 1) + log log n / alpha_min
    std::vector<ThresholdProbe> probes;

    nlohmann::json to_json() const;
};

ThresholdResult estimate_threshold(const ThresholdSpec& spec);

// Runs f(i) for i in [0, count) on `workers` threads.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& f);

}  // namespace hcp
