#include "pda/experiments.hpp"

#include "pda/density.hpp"
#include "pda/hje_solver.hpp"
#include "pda/pareto_sort.hpp"
#include "pda/transport_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pda {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

double mean(std::span<const double> v)
{
    return v.empty() ? nan_value : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::vector<Point2> uniform_points(std::size_t n, Rng& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Point2> pts(n);
    for (auto& p : pts) {
        p[0] = u(rng);
        p[1] = u(rng);
    }
    return pts;
}

std::string csv_number(double v) { return std::isnan(v) ? std::string{} : format_double(v); }

} // namespace

double fit_loglog_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit_loglog_slope: x and y differ in length");
    }
    if (x.size() < 3) {
        throw std::invalid_argument("fit_loglog_slope: need at least three points");
    }
    std::vector<double> lx(x.size());
    std::vector<double> ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw std::invalid_argument("fit_loglog_slope: values must be positive");
        }
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    const double mx = mean(lx);
    const double my = mean(ly);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_loglog_slope: x values are all equal");
    }
    return sxy / sxx;
}

double max_error_vs_uniform(const GridField& u)
{
    const std::size_t m = u.nodes_per_side();
    double err = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const Point2 x{u.coordinate(i), u.coordinate(j)};
            err = std::max(err, std::abs(u(i, j) - exact_depth_uniform(x)));
        }
    }
    return err;
}

// --- within-front convergence -------------------------------------------

VnWnRow vn_wn_errors(std::size_t n, Rng& rng)
{
    if (n < 2) {
        throw std::invalid_argument("vn_wn_errors: need at least two points");
    }
    const auto pts = uniform_points(n, rng);
    const PointSet set = PointSet::from_points(pts);
    const SortResult sorted = within_front_indices(set, sort_fast2d(set));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));

    VnWnRow row;
    row.n = n;
    for (std::size_t i = 0; i < n; ++i) {
        const double ev = std::abs(exact_v_uniform(pts[i]) - scale * static_cast<double>(sorted.front_index[i]));
        const double ew = std::abs(exact_w_uniform(pts[i]) - sorted.normalized_index[i]);
        row.l1_v += ev;
        row.l1_w += ew;
        row.linf_v = std::max(row.linf_v, ev);
        row.linf_w = std::max(row.linf_w, ew);
    }
    row.l1_v /= static_cast<double>(n);
    row.l1_w /= static_cast<double>(n);
    return row;
}

VnWnResult run_convergence_vn_wn(const VnWnConfig& config)
{
    if (config.sizes.size() < 3) {
        throw std::invalid_argument("run_convergence_vn_wn: need at least three sample sizes for a slope fit");
    }
    if (config.trials == 0) {
        throw std::invalid_argument("run_convergence_vn_wn: trials must be positive");
    }
    for (auto n : config.sizes) {
        if (n > 1000000 && !config.allow_large) {
            throw std::invalid_argument("run_convergence_vn_wn: sizes above 10^6 need allow_large");
        }
    }

    VnWnResult result;
    for (std::size_t s = 0; s < config.sizes.size(); ++s) {
        std::vector<std::future<VnWnRow>> jobs;
        for (std::size_t trial = 0; trial < config.trials; ++trial) {
            jobs.push_back(std::async(std::launch::async, [&config, s, trial] {
                Rng rng = make_rng(config.seed, trial, 1000 + s);
                return vn_wn_errors(config.sizes[s], rng);
            }));
        }
        std::vector<double> l1v, linfv, l1w, linfw;
        for (auto& job : jobs) {
            const VnWnRow r = job.get();
            l1v.push_back(r.l1_v);
            linfv.push_back(r.linf_v);
            l1w.push_back(r.l1_w);
            linfw.push_back(r.linf_w);
        }
        result.rows.push_back({config.sizes[s], median(l1v), median(linfv), median(l1w), median(linfw)});
    }

    std::vector<double> n, l1v, linfv, l1w, linfw;
    for (const auto& r : result.rows) {
        n.push_back(static_cast<double>(r.n));
        l1v.push_back(r.l1_v);
        linfv.push_back(r.linf_v);
        l1w.push_back(r.l1_w);
        linfw.push_back(r.linf_w);
    }
    result.rate_l1_v = -fit_loglog_slope(n, l1v);
    result.rate_linf_v = -fit_loglog_slope(n, linfv);
    result.rate_l1_w = -fit_loglog_slope(n, l1w);
    result.rate_linf_w = -fit_loglog_slope(n, linfw);
    return result;
}

// --- HJE statistical convergence ---------------------------------------

HjeConvergenceResult run_convergence_hje(const HjeConvergenceConfig& config)
{
    if (config.resolutions.empty() || config.samples == 0) {
        throw std::invalid_argument("run_convergence_hje: need samples and at least one resolution");
    }
    Rng rng = make_rng(config.seed, 0, 2000);
    const auto pts = uniform_points(config.samples, rng);

    HjeConvergenceResult result;
    double num = 0.0;
    double den = 0.0;
    for (auto k : config.resolutions) {
        const StreamingDensity density = StreamingDensity::build(pts, k);
        HjeConvergenceRow row;
        row.resolution = k;
        row.h = 1.0 / static_cast<double>(k);
        row.error_estimated = max_error_vs_uniform(solve_hje(density.preconditioned()).u);
        row.error_exact_f = max_error_vs_uniform(solve_hje(GridField(k, 1.0)).u);
        row.n_h5 = static_cast<double>(config.samples) * std::pow(row.h, 5.0);
        num += row.error_estimated * std::sqrt(row.h);
        den += row.h;
        result.rows.push_back(row);
    }
    result.fitted_c = num / den;
    for (const auto& row : result.rows) {
        const double fit = result.fitted_c * std::sqrt(row.h);
        result.max_relative_deviation = std::max(result.max_relative_deviation, std::abs(row.error_estimated - fit) / fit);
    }
    return result;
}

// --- streaming experiment ----------------------------------------------

StreamExperimentConfig StreamExperimentConfig::defaults_for(const std::string& generator)
{
    StreamExperimentConfig c;
    c.generator = generator;
    if (generator == "uniform") {
        c.detector.k_counts = {6, 7};
    } else if (generator == "categorical") {
        c.detector.k_counts = {10, 10};
    } else {
        throw std::invalid_argument("unknown stream generator '" + generator + "'");
    }
    return c;
}

nlohmann::json StreamExperimentConfig::to_json() const
{
    nlohmann::json j;
    j["generator"] = generator;
    j["length"] = stream.length;
    j["change_step"] = stream.change_step;
    j["anomaly_probability"] = stream.anomaly_probability;
    j["seed"] = stream.seed;
    j["window"] = detector.window;
    j["resolution"] = detector.resolution;
    j["k_counts"] = detector.k_counts;
    j["refresh_period"] = detector.refresh_period;
    j["trials"] = trials;
    j["eval_every"] = eval_every;
    j["test_nominal"] = test_nominal;
    j["test_anomalous"] = test_anomalous;
    j["run_pde"] = run_pde;
    j["run_exact"] = run_exact;
    j["flag_quantile"] = flag_quantile;
    if (generator == "uniform") {
        j["similarity"] = "abs_diff scaled by the side of the current nominal box (1 before the change, 2 after), "
                          "clipped to 1";
    } else if (generator == "categorical") {
        j["similarity"] = "iof per attribute group: 1 - mean per-attribute IOF similarity, frequencies from the "
                          "current window, min-max normalised to [0,1] with reference size = window";
    }
    return j;
}

StreamExperimentConfig StreamExperimentConfig::from_json(const nlohmann::json& j)
{
    StreamExperimentConfig c = defaults_for(j.value("generator", std::string{"uniform"}));
    c.stream.length = j.value("length", c.stream.length);
    c.stream.change_step = j.value("change_step", c.stream.change_step);
    c.stream.anomaly_probability = j.value("anomaly_probability", c.stream.anomaly_probability);
    c.stream.seed = j.value("seed", c.stream.seed);
    c.detector.window = j.value("window", c.detector.window);
    c.detector.resolution = j.value("resolution", c.detector.resolution);
    c.detector.k_counts = j.value("k_counts", c.detector.k_counts);
    c.detector.refresh_period = j.value("refresh_period", c.detector.refresh_period);
    c.trials = j.value("trials", c.trials);
    c.eval_every = j.value("eval_every", c.eval_every);
    c.test_nominal = j.value("test_nominal", c.test_nominal);
    c.test_anomalous = j.value("test_anomalous", c.test_anomalous);
    c.run_pde = j.value("run_pde", c.run_pde);
    c.run_exact = j.value("run_exact", c.run_exact);
    c.flag_quantile = j.value("flag_quantile", c.flag_quantile);
    return c;
}

namespace {

struct TrialOutput {
    std::vector<StreamRecord> records;
    std::vector<AucPoint> auc;
};

struct TestSet {
    std::vector<LabeledSample> samples;
    std::vector<bool> anomalous;
    std::vector<bool> is_c1; // over criterion-labelled anomalies only
};

TestSet make_test_set(const StreamGenerator& gen, const StreamExperimentConfig& cfg, std::uint64_t trial,
                      std::size_t regime)
{
    Rng rng = make_rng(cfg.stream.seed, trial, 100 + regime);
    TestSet ts;
    ts.samples = gen.test_set(regime, cfg.test_nominal, cfg.test_anomalous, rng);
    for (const auto& s : ts.samples) {
        ts.anomalous.push_back(s.anomalous);
        if (s.criterion) {
            ts.is_c1.push_back(*s.criterion == CriterionLabel::c1);
        }
    }
    return ts;
}

bool both_classes(const std::vector<bool>& labels)
{
    const auto pos = std::count(labels.begin(), labels.end(), true);
    return pos > 0 && pos < static_cast<std::ptrdiff_t>(labels.size());
}

/// Detection and classification AUC of `det` on a held-out test set.
std::pair<double, double> test_auc(Detector& det, const TestSet& ts)
{
    std::vector<double> nu;
    std::vector<double> mu;
    nu.reserve(ts.samples.size());
    for (const auto& s : ts.samples) {
        const AnomalyVerdict v = det.evaluate(s.x);
        nu.push_back(v.nu);
        if (s.criterion) {
            mu.push_back(v.mu.value_or(nan_value));
        }
    }
    const double detect = both_classes(ts.anomalous) ? auc(nu, ts.anomalous) : nan_value;
    const double classify = both_classes(ts.is_c1) ? auc(mu, ts.is_c1) : nan_value;
    return {detect, classify};
}

std::uint64_t generator_seed(std::uint64_t seed, std::uint64_t trial) { return seed + 1000003ULL * trial; }

TrialOutput run_trial(const StreamExperimentConfig& cfg, std::uint64_t trial)
{
    const auto gen = make_generator(cfg.generator, generator_seed(cfg.stream.seed, trial));
    const auto stream = gen->generate(cfg.stream, trial);
    if (stream.size() <= cfg.detector.window) {
        throw std::invalid_argument("run_stream_experiment: stream is not longer than the window");
    }

    DetectorConfig dc = cfg.detector;
    dc.classify_all = true;
    std::optional<PdeDetector> pde;
    std::optional<ExactDetector> exact;
    if (cfg.run_pde) {
        pde.emplace(dc, gen->make_measures(dc.window));
    }
    if (cfg.run_exact) {
        exact.emplace(dc, gen->make_measures(dc.window));
    }

    std::vector<TestSet> tests;
    tests.push_back(make_test_set(*gen, cfg, trial, 0));
    tests.push_back(make_test_set(*gen, cfg, trial, 1));

    TrialOutput out;
    std::size_t regime = 0;
    for (std::size_t t = 0; t < stream.size(); ++t) {
        const auto& s = stream[t];
        if (s.regime != regime) {
            regime = s.regime;
            if (pde) {
                gen->enter_regime(regime, *pde);
            }
            if (exact) {
                gen->enter_regime(regime, *exact);
            }
        }
        StreamRecord rec;
        rec.t = t;
        rec.anomalous = s.anomalous;
        rec.criterion = s.criterion;
        rec.regime = s.regime;
        if (pde) {
            rec.pde = pde->step(s.x);
        }
        if (exact) {
            rec.exact = exact->step(s.x);
        }
        const bool scored = t >= dc.window;
        out.records.push_back(std::move(rec));

        if (scored && (t - dc.window) % cfg.eval_every == 0) {
            AucPoint p;
            p.t = t;
            p.regime = regime;
            p.detect_pde = p.detect_exact = p.classify_pde = p.classify_exact = nan_value;
            if (pde) {
                std::tie(p.detect_pde, p.classify_pde) = test_auc(*pde, tests[regime]);
            }
            if (exact) {
                std::tie(p.detect_exact, p.classify_exact) = test_auc(*exact, tests[regime]);
            }
            out.auc.push_back(p);
        }
    }
    return out;
}

DetectorSummary summarise(const StreamExperimentConfig& cfg, const std::vector<AucPoint>& curve,
                          const std::vector<std::vector<StreamRecord>>& trials,
                          std::optional<AnomalyVerdict> StreamRecord::*member, double AucPoint::*metric)
{
    DetectorSummary sum;
    std::vector<double> all;
    std::vector<double> pre;
    for (const auto& p : curve) {
        all.push_back(p.*metric);
        if (p.t < cfg.stream.change_step) {
            pre.push_back(p.*metric);
        }
    }
    sum.mean_auc = mean(all);
    sum.pre_change_plateau = mean(pre);
    sum.min_after_change = nan_value;
    std::size_t argmin = curve.size();
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve[i].t >= cfg.stream.change_step &&
            (argmin == curve.size() || curve[i].*metric < curve[argmin].*metric)) {
            argmin = i;
        }
    }
    if (argmin < curve.size()) {
        sum.min_after_change = curve[argmin].*metric;
        for (std::size_t i = argmin; i < curve.size(); ++i) {
            if (curve[i].*metric >= sum.pre_change_plateau - 0.05) {
                sum.recovery_step = curve[i].t;
                break;
            }
        }
    }

    std::vector<double> nominal_nu;
    std::vector<double> nu;
    std::vector<bool> labels;
    for (const auto& records : trials) {
        for (const auto& r : records) {
            const auto& v = r.*member;
            if (!v) {
                continue;
            }
            nu.push_back(v->nu);
            labels.push_back(r.anomalous);
            if (!r.anomalous) {
                nominal_nu.push_back(v->nu);
            }
        }
    }
    if (!nominal_nu.empty()) {
        sum.rho = quantile(nominal_nu, cfg.flag_quantile);
    }
    std::size_t right_c1 = 0;
    std::size_t right_c2 = 0;
    for (const auto& records : trials) {
        for (const auto& r : records) {
            const auto& v = r.*member;
            if (!v || !r.criterion || !(v->nu > sum.rho) || !v->mu) {
                continue;
            }
            const bool says_c1 = *v->mu > 0.5;
            if (*r.criterion == CriterionLabel::c1) {
                ++sum.flagged_c1;
                right_c1 += says_c1 ? 1 : 0;
            } else {
                ++sum.flagged_c2;
                right_c2 += says_c1 ? 0 : 1;
            }
        }
    }
    sum.accuracy_c1 = sum.flagged_c1 ? static_cast<double>(right_c1) / static_cast<double>(sum.flagged_c1) : nan_value;
    sum.accuracy_c2 = sum.flagged_c2 ? static_cast<double>(right_c2) / static_cast<double>(sum.flagged_c2) : nan_value;
    if (both_classes(labels)) {
        sum.roc = roc_curve(nu, labels);
    }
    return sum;
}

} // namespace

StreamExperimentResult run_stream_experiment(const StreamExperimentConfig& config)
{
    config.stream.validate();
    config.detector.validate();
    if (config.trials == 0 || config.eval_every == 0) {
        throw std::invalid_argument("run_stream_experiment: trials and eval_every must be positive");
    }
    if (!config.run_pde && !config.run_exact) {
        throw std::invalid_argument("run_stream_experiment: enable at least one detector");
    }
    if (config.stream.length <= config.detector.window) {
        throw std::invalid_argument("run_stream_experiment: stream is not longer than the window");
    }
    if (config.test_nominal == 0 || config.test_anomalous == 0) {
        throw std::invalid_argument("run_stream_experiment: test sets need both classes");
    }

    std::vector<std::future<TrialOutput>> jobs;
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
        jobs.push_back(std::async(std::launch::async, [&config, trial] { return run_trial(config, trial); }));
    }
    std::vector<TrialOutput> outputs;
    for (auto& job : jobs) {
        outputs.push_back(job.get());
    }

    StreamExperimentResult result;
    result.metadata = config.to_json();
    result.auc_over_time = outputs.front().auc;
    for (std::size_t i = 0; i < result.auc_over_time.size(); ++i) {
        auto& p = result.auc_over_time[i];
        for (double AucPoint::*m :
             {&AucPoint::detect_pde, &AucPoint::detect_exact, &AucPoint::classify_pde, &AucPoint::classify_exact}) {
            double s = 0.0;
            std::size_t count = 0;
            for (const auto& o : outputs) {
                if (!std::isnan(o.auc[i].*m)) {
                    s += o.auc[i].*m;
                    ++count;
                }
            }
            p.*m = count ? s / static_cast<double>(count) : nan_value;
        }
    }
    for (auto& o : outputs) {
        result.trials.push_back(std::move(o.records));
    }

    if (config.run_pde) {
        result.pde = summarise(config, result.auc_over_time, result.trials, &StreamRecord::pde, &AucPoint::detect_pde);
    }
    if (config.run_exact) {
        result.exact =
            summarise(config, result.auc_over_time, result.trials, &StreamRecord::exact, &AucPoint::detect_exact);
    }
    if (config.run_pde && config.run_exact) {
        std::vector<double> a;
        std::vector<double> b;
        for (const auto& records : result.trials) {
            for (const auto& r : records) {
                if (r.pde && r.exact) {
                    a.push_back(r.pde->nu);
                    b.push_back(r.exact->nu);
                }
            }
        }
        if (a.size() >= 2) {
            result.score_correlation = pearson_correlation(a, b);
        }
    }
    return result;
}

// --- timing ---------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::vector<LabeledSample> stationary_uniform(std::size_t length, std::uint64_t seed, std::uint64_t trial)
{
    StreamConfig sc;
    sc.length = length;
    sc.change_step = length;
    sc.seed = seed;
    return UniformStreamGenerator{}.generate(sc, trial);
}

template <class D>
double ms_per_step(std::size_t window, std::size_t resolution, std::size_t steps, std::uint64_t seed)
{
    const UniformStreamGenerator gen;
    DetectorConfig dc;
    dc.window = window;
    dc.resolution = resolution;
    D det(dc, gen.make_measures(window));
    const auto stream = stationary_uniform(window + steps, seed, window);
    for (std::size_t t = 0; t < window; ++t) {
        (void)det.step(stream[t].x);
    }
    const auto start = Clock::now();
    for (std::size_t t = window; t < stream.size(); ++t) {
        (void)det.step(stream[t].x);
    }
    return elapsed_ms(start) / static_cast<double>(steps);
}

} // namespace

std::vector<TimingRow> compare_pde_exact_timing(const TimingConfig& config)
{
    if (config.pde_steps == 0 || config.exact_steps == 0) {
        throw std::invalid_argument("compare_pde_exact_timing: step counts must be positive");
    }
    std::vector<TimingRow> rows;
    for (auto window : config.windows) {
        TimingRow row;
        row.window = window;
        row.pde_ms_per_step = ms_per_step<PdeDetector>(window, config.resolution, config.pde_steps, config.seed);
        row.exact_ms_per_step = ms_per_step<ExactDetector>(window, config.resolution, config.exact_steps, config.seed);
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> pde_step_times(std::size_t window, std::size_t resolution, std::size_t steps, std::uint64_t seed)
{
    const UniformStreamGenerator gen;
    DetectorConfig dc;
    dc.window = window;
    dc.resolution = resolution;
    PdeDetector det(dc, gen.make_measures(window));
    const auto stream = stationary_uniform(window + steps, seed, 0);
    for (std::size_t t = 0; t < window; ++t) {
        (void)det.step(stream[t].x);
    }
    std::vector<double> times;
    times.reserve(steps);
    for (std::size_t t = window; t < stream.size(); ++t) {
        const auto start = Clock::now();
        (void)det.step(stream[t].x);
        times.push_back(elapsed_ms(start));
    }
    return times;
}

// --- CSV emitters ---------------------------------------------------------

std::string metadata_line(const nlohmann::json& config)
{
    nlohmann::json meta;
    meta["tool"] = "pda";
    meta["version"] = PDA_VERSION;
    meta["config"] = config;
    return meta.dump();
}

CsvTable to_table(const VnWnResult& result, const nlohmann::json& config)
{
    CsvTable t;
    t.metadata.push_back(metadata_line(config));
    nlohmann::json rates{{"rate_l1_v", result.rate_l1_v},
                         {"rate_linf_v", result.rate_linf_v},
                         {"rate_l1_w", result.rate_l1_w},
                         {"rate_linf_w", result.rate_linf_w}};
    t.metadata.push_back(rates.dump());
    t.header = {"n", "err_l1_v", "err_linf_v", "err_l1_w", "err_linf_w"};
    for (const auto& r : result.rows) {
        t.add_row({std::to_string(r.n), format_double(r.l1_v), format_double(r.linf_v), format_double(r.l1_w),
                   format_double(r.linf_w)});
    }
    return t;
}

CsvTable to_table(const HjeConvergenceResult& result, const nlohmann::json& config)
{
    CsvTable t;
    t.metadata.push_back(metadata_line(config));
    t.metadata.push_back(
        nlohmann::json{{"fitted_c", result.fitted_c}, {"max_relative_deviation", result.max_relative_deviation}}.dump());
    t.header = {"K", "h", "err_estimated", "err_exact_f", "n_h5"};
    for (const auto& r : result.rows) {
        t.add_row({std::to_string(r.resolution), format_double(r.h), format_double(r.error_estimated),
                   format_double(r.error_exact_f), format_double(r.n_h5)});
    }
    return t;
}

CsvTable auc_table(const StreamExperimentResult& result)
{
    CsvTable t;
    t.metadata.push_back(metadata_line(result.metadata));
    auto summary_json = [](const DetectorSummary& s) {
        nlohmann::json j{{"mean_auc", s.mean_auc},
                         {"pre_change_plateau", s.pre_change_plateau},
                         {"min_after_change", s.min_after_change},
                         {"rho", s.rho},
                         {"flagged_c1", s.flagged_c1},
                         {"flagged_c2", s.flagged_c2},
                         {"stream_auc", s.roc.auc}};
        j["recovery_step"] = s.recovery_step ? nlohmann::json(*s.recovery_step) : nlohmann::json(nullptr);
        j["accuracy_c1"] = std::isnan(s.accuracy_c1) ? nlohmann::json(nullptr) : nlohmann::json(s.accuracy_c1);
        j["accuracy_c2"] = std::isnan(s.accuracy_c2) ? nlohmann::json(nullptr) : nlohmann::json(s.accuracy_c2);
        if (std::isnan(s.min_after_change)) {
            j["min_after_change"] = nullptr;
        }
        return j;
    };
    nlohmann::json summary;
    if (result.pde) {
        summary["pde"] = summary_json(*result.pde);
    }
    if (result.exact) {
        summary["exact"] = summary_json(*result.exact);
    }
    if (result.score_correlation) {
        summary["score_correlation"] = *result.score_correlation;
    }
    t.metadata.push_back(summary.dump());
    t.header = {"t", "regime", "auc_pde", "auc_exact", "class_auc_pde", "class_auc_exact"};
    for (const auto& p : result.auc_over_time) {
        t.add_row({std::to_string(p.t), std::to_string(p.regime), csv_number(p.detect_pde), csv_number(p.detect_exact),
                   csv_number(p.classify_pde), csv_number(p.classify_exact)});
    }
    return t;
}

CsvTable roc_table(const RocCurve& curve, const nlohmann::json& config)
{
    CsvTable t;
    t.metadata.push_back(metadata_line(config));
    t.metadata.push_back(nlohmann::json{{"auc", curve.auc}}.dump());
    t.header = {"fpr", "tpr"};
    for (const auto& p : curve.points) {
        t.add_row({format_double(p.fpr), format_double(p.tpr)});
    }
    return t;
}

CsvTable verdict_table(std::span<const AnomalyVerdict> verdicts, const nlohmann::json& config)
{
    CsvTable t;
    t.metadata.push_back(metadata_line(config));
    t.header = {"t", "nu", "is_anomaly", "mu", "label", "I_size"};
    for (const auto& v : verdicts) {
        t.add_row({std::to_string(v.t), format_double(v.nu), v.is_anomaly ? "1" : "0",
                   v.mu ? format_double(*v.mu) : std::string{}, v.label ? to_string(*v.label) : std::string{},
                   std::to_string(v.neighbor_set_size)});
    }
    return t;
}

CsvTable to_table(std::span<const TimingRow> rows, const nlohmann::json& config)
{
    CsvTable t;
    t.metadata.push_back(metadata_line(config));
    t.header = {"T", "pde_ms_per_step", "exact_ms_per_step"};
    for (const auto& r : rows) {
        t.add_row({std::to_string(r.window), format_double(r.pde_ms_per_step), format_double(r.exact_ms_per_step)});
    }
    return t;
}

} // namespace pda
