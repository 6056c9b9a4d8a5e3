#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclecover/graph.hpp"
#include "cyclecover/qubo.hpp"
#include "cyclecover/solver.hpp"

namespace cyclecover {

using Microseconds = std::chrono::duration<double, std::micro>;

enum class SamplerKind { exact, simulated_annealing };

/// Full description of one measured configuration. A trial generates a
/// fresh instance, encodes it, samples it and scores the samples; the
/// experiment repeats trials with seeds split from master_seed.
struct ExperimentConfig {
    GeneratorParams generator;
    SamplerKind sampler = SamplerKind::simulated_annealing;
    /// sweeps/beta_min/beta_max are taken from here; shots and seed are
    /// overridden per trial (shots below, seed derived from master_seed).
    AnnealParams anneal;
    std::uint64_t shots = 100;
    std::uint64_t repetitions = 50;
    double epsilon = 1.0;
    Microseconds t_anneal{200.0};
    Microseconds t_pause{100.0};
    double target_probability = 0.99;
    std::uint64_t master_seed = 0;
    int threads = 1;
};

struct InstanceMeta {
    int n = 0;
    int L = 0;
    int num_vertices = 0;
    int num_edges = 0;
    std::int64_t n_noise = 0;
    double p_noise = 0.0;
};

struct ExperimentResult {
    std::vector<double> per_rep_p_sol;
    double p_sol_mean = 0.0;
    double p_sol_sem = 0.0;
    /// Empty when the mean success probability is zero.
    std::optional<Microseconds> tts;
    InstanceMeta meta;
    std::uint64_t shots = 0;
    std::uint64_t repetitions = 0;
};

/// Fraction of sampled shots whose selected subgraph is a valid cover of
/// `g`. Equivalent to the frequency of the lowest-energy states whenever a
/// solution is sampled at all, because an accepted subgraph always sits at
/// the ground energy -N_V.
double solution_fraction(const DirectedGraph& g, const QuboProblem& q, const SampleSet& samples);

/// One repetition: generates the instance for `rep_index` (seed split from
/// master_seed), encodes it, samples it, and returns the solution fraction.
double run_trial(const ExperimentConfig& config, std::uint64_t rep_index);

/// Runs all repetitions (optionally on config.threads threads; results are
/// identical regardless of thread count) and aggregates mean, standard
/// error and TTS.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Mean and standard error of the mean (sample standard deviation over
/// sqrt(count)); the standard error of a single value is defined as 0.
std::pair<double, double> mean_and_sem(std::span<const double> values);

/// Expected total time to see at least one solution with probability
/// `target`, given single-run time t_anneal + t_pause and single-run
/// success probability p_mean:
///     (t_anneal + t_pause) * log(1 - target) / log(1 - p_mean).
/// Returns empty when p_mean == 0 (no solution reachable); returns the
/// single-run time exactly when p_mean == 1. Throws std::invalid_argument
/// for p_mean outside [0, 1] or target outside (0, 1).
std::optional<Microseconds> time_to_solution(double p_mean, Microseconds t_anneal,
                                             Microseconds t_pause, double target);

enum class FitModel { exponential, power_law };

struct TtsPoint {
    std::int64_t n_noise = 0;
    Microseconds tts{0.0};
};

struct FitResult {
    double intercept = 0.0;      // a
    double slope = 0.0;          // b
    double rms_residual = 0.0;   // in transformed coordinates
    int points_used = 0;
};

/// Least-squares fit of log(TTS / 1 ms) = a + b * N_noise (exponential) or
/// a + b * log(N_noise) (power law), natural logarithms, over the points
/// with n_noise >= min_noise. Throws std::invalid_argument on non-positive
/// TTS (or n_noise for the power law) among the fitted points, and
/// std::runtime_error when fewer than two points qualify.
FitResult fit_tts(const std::vector<TtsPoint>& points, FitModel model, std::int64_t min_noise);

// Results CSV: header
//   n,L,N_V,N_E,p_noise,N_noise,shots,reps,p_sol_mean,p_sol_sem,tts_ms
// one row per configuration; tts_ms is empty when TTS is undefined.
void write_results_csv_header(std::ostream& out);
void append_results_csv_row(std::ostream& out, const ExperimentResult& result);

/// Reads (N_noise, tts_ms) pairs back from a results CSV, skipping rows
/// with an empty tts_ms field; `skipped` (when given) receives how many
/// rows were dropped that way.
std::vector<TtsPoint> read_tts_points_csv(std::istream& in, std::size_t* skipped = nullptr);
std::vector<TtsPoint> read_tts_points_csv_file(const std::string& path,
                                               std::size_t* skipped = nullptr);

}  // namespace cyclecover
