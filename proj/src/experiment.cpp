#include "cyclecover/experiment.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cyclecover/checker.hpp"
#include "cyclecover/errors.hpp"
#include "cyclecover/format.hpp"
#include "cyclecover/rng.hpp"

namespace cyclecover {

namespace {

void validate_config(const ExperimentConfig& config) {
    if (config.shots < 1) throw std::invalid_argument("experiment: shots must be >= 1");
    if (config.repetitions < 1) throw std::invalid_argument("experiment: repetitions must be >= 1");
    if (!(config.epsilon > 0)) throw std::invalid_argument("experiment: epsilon must be > 0");
    if (!(config.target_probability > 0) || !(config.target_probability < 1)) {
        throw std::invalid_argument("experiment: target probability must lie in (0, 1)");
    }
    if (config.threads < 1) throw std::invalid_argument("experiment: threads must be >= 1");
}

InstanceMeta make_meta(const ExperimentConfig& config) {
    InstanceMeta meta;
    meta.n = config.generator.n;
    meta.L = config.generator.L;
    meta.num_vertices = config.generator.n * config.generator.L;
    meta.n_noise = resolve_noise(config.generator, meta.num_vertices);
    meta.num_edges = meta.num_vertices + static_cast<int>(meta.n_noise);
    meta.p_noise = config.generator.p_noise
                           ? *config.generator.p_noise
                           : static_cast<double>(meta.n_noise) /
                                     (static_cast<double>(meta.num_vertices) *
                                      (static_cast<double>(meta.num_vertices) - 2.0));
    return meta;
}

}  // namespace

double solution_fraction(const DirectedGraph& g, const QuboProblem& q, const SampleSet& samples) {
    std::uint64_t accepted = 0;
    for (const auto& record : samples.records) {
        if (is_cycle_cover(g, decode(q, record.bits)).accepted) accepted += record.count;
    }
    return static_cast<double>(accepted) / static_cast<double>(samples.total_shots);
}

double run_trial(const ExperimentConfig& config, std::uint64_t rep_index) {
    validate_config(config);

    // Seed split: repetition -> {0: instance noise, 1: annealing shots}.
    const std::uint64_t rep_seed = derive_seed(config.master_seed, rep_index);

    const DirectedGraph base = generate_cycles(config.generator.n, config.generator.L);
    const std::int64_t n_noise = resolve_noise(config.generator, base.num_vertices());
    const DirectedGraph instance = add_noise(base, n_noise, derive_seed(rep_seed, 0));

    const QuboProblem problem = encode(instance, config.epsilon);

    if (config.sampler == SamplerKind::exact) {
        const ExactResult exact = solve_exact(problem);
        std::uint64_t accepted = 0;
        for (const auto& bits : exact.minimizers) {
            if (is_cycle_cover(instance, decode(problem, bits)).accepted) ++accepted;
        }
        return static_cast<double>(accepted) / static_cast<double>(exact.minimizers.size());
    }

    AnnealParams params = config.anneal;
    params.shots = config.shots;
    params.seed = derive_seed(rep_seed, 1);
    return solution_fraction(instance, problem, sample_sa(problem, params));
}

std::pair<double, double> mean_and_sem(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean_and_sem: no values");
    const auto count = static_cast<double>(values.size());
    double mean = 0.0;
    for (const double v : values) mean += v;
    mean /= count;
    if (values.size() == 1) return {mean, 0.0};

    double squares = 0.0;
    for (const double v : values) squares += (v - mean) * (v - mean);
    const double sample_sd = std::sqrt(squares / (count - 1.0));
    return {mean, sample_sd / std::sqrt(count)};
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    validate_config(config);

    ExperimentResult result;
    result.meta = make_meta(config);
    result.shots = config.shots;
    result.repetitions = config.repetitions;
    result.per_rep_p_sol.resize(config.repetitions);

    const auto worker = [&config, &result](std::uint64_t first, std::uint64_t stride) {
        for (std::uint64_t rep = first; rep < config.repetitions; rep += stride) {
            result.per_rep_p_sol[rep] = run_trial(config, rep);
        }
    };

    const auto num_threads =
            std::min<std::uint64_t>(static_cast<std::uint64_t>(config.threads), config.repetitions);
    if (num_threads <= 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> failures(num_threads);
        pool.reserve(num_threads);
        for (std::uint64_t t = 0; t < num_threads; ++t) {
            pool.emplace_back([&worker, &failures, t, num_threads] {
                try {
                    worker(t, num_threads);
                } catch (...) {
                    failures[t] = std::current_exception();
                }
            });
        }
        for (auto& thread : pool) thread.join();
        for (const auto& failure : failures) {
            if (failure) std::rethrow_exception(failure);
        }
    }

    const auto [mean, sem] = mean_and_sem(result.per_rep_p_sol);
    result.p_sol_mean = mean;
    result.p_sol_sem = sem;
    result.tts = time_to_solution(mean, config.t_anneal, config.t_pause,
                                  config.target_probability);
    return result;
}

std::optional<Microseconds> time_to_solution(double p_mean, Microseconds t_anneal,
                                             Microseconds t_pause, double target) {
    if (!(p_mean >= 0) || !(p_mean <= 1)) {
        throw std::invalid_argument("time_to_solution: probability must lie in [0, 1]");
    }
    if (!(target > 0) || !(target < 1)) {
        throw std::invalid_argument("time_to_solution: target must lie in (0, 1)");
    }
    const Microseconds single_run = t_anneal + t_pause;
    if (p_mean == 0) return std::nullopt;       // no solution reachable
    if (p_mean == 1) return single_run;         // one run always suffices
    return single_run * (std::log1p(-target) / std::log1p(-p_mean));
}

FitResult fit_tts(const std::vector<TtsPoint>& points, FitModel model, std::int64_t min_noise) {
    std::vector<TtsPoint> usable;
    for (const auto& point : points) {
        if (point.n_noise >= min_noise) usable.push_back(point);
    }
    if (usable.size() < 2) {
        throw std::runtime_error("fit_tts: need at least 2 points with n_noise >= " +
                                 std::to_string(min_noise) + ", have " +
                                 std::to_string(usable.size()));
    }

    Eigen::MatrixXd design(usable.size(), 2);
    Eigen::VectorXd response(usable.size());
    for (std::size_t row = 0; row < usable.size(); ++row) {
        const double tts_ms = usable[row].tts.count() / 1000.0;
        if (!(tts_ms > 0) || !std::isfinite(tts_ms)) {
            throw std::invalid_argument("fit_tts: TTS values must be positive and finite");
        }
        double predictor = static_cast<double>(usable[row].n_noise);
        if (model == FitModel::power_law) {
            if (usable[row].n_noise <= 0) {
                throw std::invalid_argument("fit_tts: power-law fit needs n_noise > 0");
            }
            predictor = std::log(predictor);
        }
        design(static_cast<Eigen::Index>(row), 0) = 1.0;
        design(static_cast<Eigen::Index>(row), 1) = predictor;
        response(static_cast<Eigen::Index>(row)) = std::log(tts_ms);
    }

    const Eigen::Vector2d coeffs = design.colPivHouseholderQr().solve(response);
    const Eigen::VectorXd residual = design * coeffs - response;

    FitResult fit;
    fit.intercept = coeffs(0);
    fit.slope = coeffs(1);
    fit.rms_residual = std::sqrt(residual.squaredNorm() / static_cast<double>(usable.size()));
    fit.points_used = static_cast<int>(usable.size());
    return fit;
}

void write_results_csv_header(std::ostream& out) {
    out << "n,L,N_V,N_E,p_noise,N_noise,shots,reps,p_sol_mean,p_sol_sem,tts_ms\n";
}

void append_results_csv_row(std::ostream& out, const ExperimentResult& result) {
    const auto& meta = result.meta;
    out << meta.n << ',' << meta.L << ',' << meta.num_vertices << ',' << meta.num_edges << ','
        << format_double(meta.p_noise) << ',' << meta.n_noise << ',' << result.shots << ','
        << result.repetitions << ',' << format_double(result.p_sol_mean) << ','
        << format_double(result.p_sol_sem) << ',';
    if (result.tts) out << format_double(result.tts->count() / 1000.0);
    out << '\n';
}

std::vector<TtsPoint> read_tts_points_csv(std::istream& in, std::size_t* skipped) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("results csv: missing header");

    const auto split = [](const std::string& text) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream stream(text);
        while (std::getline(stream, cell, ',')) cells.push_back(cell);
        if (!text.empty() && text.back() == ',') cells.push_back("");
        return cells;
    };

    const std::vector<std::string> header = split(line);
    const auto column = [&header](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ParseError("results csv: missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t noise_col = column("N_noise");
    const std::size_t tts_col = column("tts_ms");

    std::vector<TtsPoint> points;
    std::size_t dropped = 0;
    int line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        const std::vector<std::string> cells = split(line);
        if (cells.size() <= std::max(noise_col, tts_col)) {
            throw ParseError("results csv line " + std::to_string(line_number) +
                             ": too few columns");
        }
        if (cells[tts_col].empty()) {
            ++dropped;  // undefined TTS rows do not enter fits
            continue;
        }
        try {
            points.push_back({std::stoll(cells[noise_col]),
                              Microseconds{std::stod(cells[tts_col]) * 1000.0}});
        } catch (const std::exception&) {
            throw ParseError("results csv line " + std::to_string(line_number) +
                             ": malformed N_noise or tts_ms value");
        }
    }
    if (skipped) *skipped = dropped;
    return points;
}

std::vector<TtsPoint> read_tts_points_csv_file(const std::string& path, std::size_t* skipped) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open results csv: " + path);
    return read_tts_points_csv(in, skipped);
}

}  // namespace cyclecover
