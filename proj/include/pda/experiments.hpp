#ifndef PDA_EXPERIMENTS_HPP
#define PDA_EXPERIMENTS_HPP

#include "pda/csv.hpp"
#include "pda/detector.hpp"
#include "pda/grid_field.hpp"
#include "pda/roc.hpp"
#include "pda/streams.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pda {

/// Least-squares slope of log(y) against log(x). Needs at least three points.
[[nodiscard]] double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

/// max over grid nodes of |u(x) - 2 sqrt(x1 x2)|.
[[nodiscard]] double max_error_vs_uniform(const GridField& u);

// --- within-front convergence -------------------------------------------

struct VnWnConfig {
    std::vector<std::size_t> sizes{100, 1000, 10000, 100000, 1000000};
    std::size_t trials = 3;
    std::uint64_t seed = 1;
    /// Sizes above 10^6 are refused unless set.
    bool allow_large = false;
};

struct VnWnRow {
    std::size_t n = 0;
    double l1_v = 0;
    double linf_v = 0;
    double l1_w = 0;
    double linf_w = 0;
};

/// Rates are alpha in err ~ n^-alpha, i.e. minus the fitted log-log slope.
struct VnWnResult {
    std::vector<VnWnRow> rows; // per-size median over trials
    double rate_l1_v = 0;
    double rate_linf_v = 0;
    double rate_l1_w = 0;
    double rate_linf_w = 0;
};

/// Errors of n^-1/2 V_n against v and of W_n against w for n uniform points.
[[nodiscard]] VnWnRow vn_wn_errors(std::size_t n, Rng& rng);
[[nodiscard]] VnWnResult run_convergence_vn_wn(const VnWnConfig& config);

// --- HJE statistical convergence ---------------------------------------

struct HjeConvergenceConfig {
    std::size_t samples = 1000000;
    std::vector<std::size_t> resolutions{25, 50, 100};
    std::uint64_t seed = 1;
};

struct HjeConvergenceRow {
    std::size_t resolution = 0;
    double h = 0;
    double error_estimated = 0; // histogram + precondition + solve
    double error_exact_f = 0;   // f = 1 fed directly
    double n_h5 = 0;
};

struct HjeConvergenceResult {
    std::vector<HjeConvergenceRow> rows;
    /// C minimising sum (e_K - C sqrt(h_K))^2 over the estimated errors.
    double fitted_c = 0;
    /// max over K of |e_K - C sqrt(h_K)| / (C sqrt(h_K)).
    double max_relative_deviation = 0;
};

[[nodiscard]] HjeConvergenceResult run_convergence_hje(const HjeConvergenceConfig& config);

// --- streaming experiment ----------------------------------------------

struct StreamExperimentConfig {
    std::string generator = "uniform";
    StreamConfig stream;
    DetectorConfig detector;
    std::size_t trials = 1;
    /// Detection AUC is measured on held-out test sets every this many steps.
    std::size_t eval_every = 10;
    std::size_t test_nominal = 400;
    std::size_t test_anomalous = 100;
    bool run_pde = true;
    bool run_exact = false;
    /// Quantile of nominal stream scores used as rho when scoring
    /// classification of flagged anomalies.
    double flag_quantile = 0.95;

    /// Generator defaults: k = (6, 7) for "uniform", (10, 10) for "categorical".
    static StreamExperimentConfig defaults_for(const std::string& generator);
    [[nodiscard]] nlohmann::json to_json() const;
    static StreamExperimentConfig from_json(const nlohmann::json& j);
};

struct StreamRecord {
    std::size_t t = 0;
    bool anomalous = false;
    std::optional<CriterionLabel> criterion;
    std::size_t regime = 0;
    std::optional<AnomalyVerdict> pde;
    std::optional<AnomalyVerdict> exact;
};

struct AucPoint {
    std::size_t t = 0;
    std::size_t regime = 0;
    double detect_pde = 0;     // NaN when not run
    double detect_exact = 0;
    double classify_pde = 0;   // AUC of mu for c1 vs c2 test anomalies
    double classify_exact = 0;
};

struct DetectorSummary {
    double mean_auc = 0;
    double pre_change_plateau = 0;
    double min_after_change = 0;
    /// First evaluation step after the post-change minimum whose AUC is back
    /// within 0.05 of the plateau; empty if never.
    std::optional<std::size_t> recovery_step;
    double rho = 0;
    double accuracy_c1 = 0;
    double accuracy_c2 = 0;
    std::size_t flagged_c1 = 0;
    std::size_t flagged_c2 = 0;
    RocCurve roc;
};

struct StreamExperimentResult {
    std::vector<AucPoint> auc_over_time; // mean over trials
    std::vector<std::vector<StreamRecord>> trials;
    std::optional<DetectorSummary> pde;
    std::optional<DetectorSummary> exact;
    /// Pearson correlation of nu_pde and nu_exact over all scored stream samples.
    std::optional<double> score_correlation;
    nlohmann::json metadata;
};

[[nodiscard]] StreamExperimentResult run_stream_experiment(const StreamExperimentConfig& config);

// --- timing ---------------------------------------------------------------

struct TimingConfig {
    std::vector<std::size_t> windows{100, 200, 400, 800};
    std::size_t resolution = 100;
    std::size_t pde_steps = 200;
    std::size_t exact_steps = 20;
    std::uint64_t seed = 1;
};

struct TimingRow {
    std::size_t window = 0;
    double pde_ms_per_step = 0;
    double exact_ms_per_step = 0;
};

[[nodiscard]] std::vector<TimingRow> compare_pde_exact_timing(const TimingConfig& config);

/// Per-step wall times (ms) of the PDE detector over `steps` scored samples
/// of a stationary uniform stream.
[[nodiscard]] std::vector<double> pde_step_times(std::size_t window, std::size_t resolution, std::size_t steps,
                                                 std::uint64_t seed);

// --- CSV emitters ---------------------------------------------------------

/// Metadata line: JSON object with tool, version and the echoed config.
[[nodiscard]] std::string metadata_line(const nlohmann::json& config);

[[nodiscard]] CsvTable to_table(const VnWnResult& result, const nlohmann::json& config);
[[nodiscard]] CsvTable to_table(const HjeConvergenceResult& result, const nlohmann::json& config);
[[nodiscard]] CsvTable auc_table(const StreamExperimentResult& result);
[[nodiscard]] CsvTable roc_table(const RocCurve& curve, const nlohmann::json& config);
[[nodiscard]] CsvTable verdict_table(std::span<const AnomalyVerdict> verdicts, const nlohmann::json& config);
[[nodiscard]] CsvTable to_table(std::span<const TimingRow> rows, const nlohmann::json& config);

} // namespace pda

#endif
