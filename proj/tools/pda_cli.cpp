// pda: command-line front end for sorting, PDE solves, streaming detection and
// the experiment harness. Tables go to --output (default stdout) as CSV with a
// leading `# ` metadata block.

#include "pda/csv.hpp"
#include "pda/density.hpp"
#include "pda/detector.hpp"
#include "pda/experiments.hpp"
#include "pda/hje_solver.hpp"
#include "pda/pareto_sort.hpp"
#include "pda/roc.hpp"
#include "pda/similarity.hpp"
#include "pda/streams.hpp"
#include "pda/transport_solver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

using namespace pda;
using nlohmann::json;

namespace {

bool ends_with(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return in;
}

/// Writes to `path`, or stdout when empty or "-".
void emit(const std::string& path, const std::function<void(std::ostream&)>& body)
{
    if (path.empty() || path == "-") {
        body(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    body(out);
}

void emit_table(const std::string& path, const CsvTable& table)
{
    emit(path, [&](std::ostream& out) { write_csv_table(out, table); });
}

/// CSV grids carry the metadata block inline; binary grids get `<path>.json`.
void emit_grid(const std::string& path, const GridField& grid, const json& config)
{
    if (path.empty() || path == "-" || ends_with(path, ".csv")) {
        emit(path, [&](std::ostream& out) {
            out << "# " << metadata_line(config) << '\n';
            write_csv(out, grid);
        });
        return;
    }
    save_grid(path, grid);
    emit(path + ".json", [&](std::ostream& out) { out << metadata_line(config) << '\n'; });
}

std::vector<std::vector<double>> numeric_rows(const CsvTable& table)
{
    std::vector<std::vector<double>> rows;
    rows.reserve(table.rows.size());
    for (const auto& r : table.rows) {
        std::vector<double> v;
        v.reserve(r.size());
        for (const auto& cell : r) {
            v.push_back(parse_double(cell));
        }
        rows.push_back(std::move(v));
    }
    return rows;
}

// --- sort -----------------------------------------------------------------

struct SortOptions {
    std::string input;
    std::string output;
    std::string method = "auto";
    bool no_header = false;
};

void run_sort(const SortOptions& o)
{
    auto in = open_in(o.input);
    const auto table = read_csv_table(in, !o.no_header);
    const PointSet pts = PointSet::from_rows(numeric_rows(table));
    SortResult r;
    if (o.method == "brute") {
        r = sort_bruteforce(pts);
    } else if (o.method == "fast") {
        r = sort_fast2d(pts);
    } else {
        r = nondominated_sort(pts);
    }
    const bool planar = pts.dim() == 2;
    if (planar) {
        r = within_front_indices(pts, std::move(r));
    }

    CsvTable out;
    out.metadata.push_back(metadata_line({{"command", "sort"}, {"input", o.input}, {"method", o.method},
                                          {"n", pts.size()}, {"dim", pts.dim()}, {"fronts", r.num_fronts()}}));
    out.header = {"index", "depth"};
    if (planar) {
        out.header.insert(out.header.end(), {"front_index", "normalized_index"});
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<std::string> row{std::to_string(i), std::to_string(r.depth[i])};
        if (planar) {
            row.push_back(std::to_string(r.front_index[i]));
            row.push_back(format_double(r.normalized_index[i]));
        }
        out.add_row(std::move(row));
    }
    emit_table(o.output, out);
}

// --- PDE solves -----------------------------------------------------------

struct SolveOptions {
    std::string density; // grid file of f, preconditioned as given
    std::size_t uniform = 0; // f = 1 on a K x K grid instead
    std::string output;
};

std::pair<GridField, json> load_f(const SolveOptions& o, const std::string& command)
{
    json cfg{{"command", command}};
    if (!o.density.empty()) {
        cfg["density"] = o.density;
        return {load_grid(o.density), cfg};
    }
    if (o.uniform >= 2) {
        cfg["uniform"] = o.uniform;
        return {GridField(o.uniform, 1.0), cfg};
    }
    throw std::invalid_argument(command + ": give --density FILE or --uniform K");
}

void run_solve(const SolveOptions& o, const std::string& command)
{
    auto [f, cfg] = load_f(o, command);
    const HjeSolution hje = solve_hje(std::move(f));
    if (command == "solve-hje") {
        emit_grid(o.output, hje.u, cfg);
        return;
    }
    const GridField v = solve_v(hje, hje.f_used);
    if (command == "solve-v") {
        emit_grid(o.output, v, cfg);
        return;
    }
    emit_grid(o.output, solve_w(hje, v, hje.f_used), cfg);
}

// --- density --------------------------------------------------------------

struct DensityOptions {
    std::string input;
    std::string output;
    std::string sidecar;
    std::size_t resolution = 100;
    std::size_t window = 0;
    bool preconditioned = false;
    bool no_header = false;
};

void run_density(const DensityOptions& o)
{
    auto in = open_in(o.input);
    const auto rows = numeric_rows(read_csv_table(in, !o.no_header));
    std::vector<Point2> dyads;
    dyads.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.size() != 2) {
            throw std::invalid_argument("density: every dyad needs exactly two coordinates");
        }
        dyads.push_back({r[0], r[1]});
    }
    const StreamingDensity d = StreamingDensity::build(dyads, o.resolution, o.window);
    if (!o.sidecar.empty()) {
        if (o.output.empty() || o.output == "-") {
            throw std::invalid_argument("density: --sidecar needs a file --output");
        }
        save_density(d, o.output, o.sidecar);
        return;
    }
    const json cfg{{"command", "density"}, {"input", o.input},        {"resolution", o.resolution},
                   {"window", o.window},   {"dyads", dyads.size()},   {"clamped", d.clamped_count()},
                   {"preconditioned", o.preconditioned}};
    emit_grid(o.output, o.preconditioned ? d.preconditioned() : d.node_density(), cfg);
}

// --- stream ---------------------------------------------------------------

struct StreamOptions {
    std::string input;
    std::string output;
    std::string measures_json;
    std::string generator;
    std::size_t window = 500;
    std::size_t resolution = 100;
    std::vector<std::size_t> k{6, 7};
    double rho = std::numeric_limits<double>::infinity();
    std::size_t refresh = 1;
    bool classify_all = false;
    bool exact = false;
    std::uint64_t seed = 1;
};

Sample parse_sample(const std::string& line)
{
    const json j = json::parse(line);
    const json& x = j.is_object() ? j.at("x") : j;
    return x.get<Sample>();
}

MeasureSet stream_measures(const StreamOptions& o)
{
    if (!o.measures_json.empty()) {
        json spec;
        const auto first = o.measures_json.find_first_not_of(" \t\n");
        if (first != std::string::npos && o.measures_json[first] == '[') {
            spec = json::parse(o.measures_json);
        } else {
            std::ifstream in(o.measures_json);
            if (!in) {
                throw std::runtime_error("cannot open " + o.measures_json);
            }
            spec = json::parse(in);
        }
        MeasureSet m;
        for (const auto& s : spec) {
            m.push_back(MeasureRegistry::instance().make(s));
        }
        return m;
    }
    return make_generator(o.generator.empty() ? "uniform" : o.generator, o.seed)->make_measures(o.window);
}

void run_stream(const StreamOptions& o)
{
    DetectorConfig dc;
    dc.window = o.window;
    dc.resolution = o.resolution;
    dc.k_counts = o.k;
    dc.rho = o.rho;
    dc.refresh_period = o.refresh;
    dc.classify_all = o.classify_all;
    MeasureSet measures = stream_measures(o);
    json described = json::array();
    for (const auto& m : measures) {
        described.push_back(m->describe());
    }
    std::unique_ptr<Detector> det;
    if (o.exact) {
        det = std::make_unique<ExactDetector>(dc, std::move(measures));
    } else {
        det = std::make_unique<PdeDetector>(dc, std::move(measures));
    }

    auto in = open_in(o.input);
    std::vector<AnomalyVerdict> verdicts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        if (auto v = det->step(parse_sample(line))) {
            verdicts.push_back(*v);
        }
    }
    if (!det->warmed_up()) {
        throw std::invalid_argument("stream: input is shorter than the window");
    }
    const json cfg{{"command", "stream"},     {"detector", o.exact ? "exact" : "pde"},
                   {"window", o.window},      {"resolution", o.resolution},
                   {"k_counts", o.k},         {"rho", std::isinf(o.rho) ? json("inf") : json(o.rho)},
                   {"refresh_period", o.refresh}, {"classify_all", o.classify_all},
                   {"measures", described},   {"nu_units", o.exact ? "depth" : "sqrt(n) u_h"}};
    emit_table(o.output, verdict_table(verdicts, cfg));
}

// --- generate -------------------------------------------------------------

struct GenerateOptions {
    std::string generator = "uniform";
    std::string output;
    StreamConfig stream;
    std::uint64_t trial = 0;
};

void run_generate(const GenerateOptions& o)
{
    const auto gen = make_generator(o.generator, o.stream.seed);
    const auto samples = gen->generate(o.stream, o.trial);
    emit(o.output, [&](std::ostream& out) {
        for (std::size_t t = 0; t < samples.size(); ++t) {
            const auto& s = samples[t];
            json j{{"t", t}, {"x", s.x}, {"anomalous", s.anomalous}, {"regime", s.regime}};
            j["criterion"] = s.criterion ? json(to_string(*s.criterion)) : json(nullptr);
            out << j.dump() << '\n';
        }
    });
}

// --- roc ------------------------------------------------------------------

struct RocOptions {
    std::string input;
    std::string output;
    std::string score_column = "score";
    std::string label_column = "label";
};

void run_roc(const RocOptions& o)
{
    auto in = open_in(o.input);
    const auto table = read_csv_table(in, true);
    const std::size_t sc = table.column(o.score_column);
    const std::size_t lc = table.column(o.label_column);
    std::vector<double> scores;
    std::vector<bool> labels;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        scores.push_back(table.number(r, sc));
        labels.push_back(table.number(r, lc) != 0.0);
    }
    const json cfg{{"command", "roc"}, {"input", o.input}, {"score", o.score_column}, {"label", o.label_column}};
    emit_table(o.output, roc_table(roc_curve(scores, labels), cfg));
}

// --- experiments ----------------------------------------------------------

json vn_json(const VnWnConfig& c)
{
    return {{"command", "converge-vn"}, {"sizes", c.sizes}, {"trials", c.trials}, {"seed", c.seed},
            {"allow_large", c.allow_large}};
}

json hje_json(const HjeConvergenceConfig& c)
{
    return {{"command", "converge-hje"}, {"samples", c.samples}, {"resolutions", c.resolutions}, {"seed", c.seed}};
}

json timing_json(const TimingConfig& c)
{
    return {{"command", "timing"},       {"windows", c.windows},         {"resolution", c.resolution},
            {"pde_steps", c.pde_steps}, {"exact_steps", c.exact_steps}, {"seed", c.seed}};
}

struct ExperimentOptions {
    std::string config_file;
    std::string generator = "uniform";
    std::string output;
    std::string roc_output;
    std::string verdicts_output;
    std::optional<std::size_t> length, change_step, window, resolution, trials, eval_every, refresh;
    std::optional<double> anomaly_probability;
    std::optional<std::uint64_t> seed;
    std::vector<std::size_t> k;
    bool exact = false;
    bool no_pde = false;
};

void run_experiment(const ExperimentOptions& o)
{
    StreamExperimentConfig c;
    if (!o.config_file.empty()) {
        auto in = open_in(o.config_file);
        c = StreamExperimentConfig::from_json(json::parse(in));
    } else {
        c = StreamExperimentConfig::defaults_for(o.generator);
    }
    if (o.length) c.stream.length = *o.length;
    if (o.change_step) c.stream.change_step = *o.change_step;
    if (o.anomaly_probability) c.stream.anomaly_probability = *o.anomaly_probability;
    if (o.seed) c.stream.seed = *o.seed;
    if (o.window) c.detector.window = *o.window;
    if (o.resolution) c.detector.resolution = *o.resolution;
    if (o.refresh) c.detector.refresh_period = *o.refresh;
    if (o.trials) c.trials = *o.trials;
    if (o.eval_every) c.eval_every = *o.eval_every;
    if (!o.k.empty()) c.detector.k_counts = o.k;
    c.run_exact = c.run_exact || o.exact;
    c.run_pde = !o.no_pde;

    const StreamExperimentResult r = run_stream_experiment(c);
    json cfg = c.to_json();
    cfg["command"] = "experiment";
    emit_table(o.output, auc_table(r));
    if (!o.roc_output.empty()) {
        const DetectorSummary& s = r.pde ? *r.pde : *r.exact;
        emit_table(o.roc_output, roc_table(s.roc, cfg));
    }
    if (!o.verdicts_output.empty()) {
        std::vector<AnomalyVerdict> v;
        for (const auto& rec : r.trials.front()) {
            const auto& verdict = r.pde ? rec.pde : rec.exact;
            if (verdict) {
                v.push_back(*verdict);
            }
        }
        emit_table(o.verdicts_output, verdict_table(v, cfg));
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Pareto depth analysis: sorting, continuum-limit PDE solves and streaming anomaly detection"};
    app.set_version_flag("--version", std::string(PDA_VERSION));
    app.require_subcommand(1);

    SortOptions sort_o;
    auto* sort = app.add_subcommand("sort", "Nondominated sorting of a CSV point set");
    sort->add_option("-i,--input", sort_o.input, "CSV of points, one per row")->required();
    sort->add_option("-o,--output", sort_o.output, "Output CSV (default stdout)");
    sort->add_option("--method", sort_o.method, "auto, fast (2-D) or brute")
        ->check(CLI::IsMember({"auto", "fast", "brute"}));
    sort->add_flag("--no-header", sort_o.no_header, "Input has no header row");

    SolveOptions solve_o;
    std::vector<CLI::App*> solvers;
    for (const char* name : {"solve-hje", "solve-v", "solve-w"}) {
        auto* s = app.add_subcommand(name, std::string("Solve for ") + (name + 6) + " on a grid");
        s->add_option("-d,--density", solve_o.density, "Density grid f (.csv or binary)");
        s->add_option("-u,--uniform", solve_o.uniform, "Use f = 1 on a K x K grid");
        s->add_option("-o,--output", solve_o.output, "Output grid (.csv or binary; default CSV to stdout)");
        solvers.push_back(s);
    }

    DensityOptions dens_o;
    auto* dens = app.add_subcommand("density", "Histogram density of a CSV of dyads");
    dens->add_option("-i,--input", dens_o.input, "CSV of dyads (two columns)")->required();
    dens->add_option("-o,--output", dens_o.output, "Output grid");
    dens->add_option("-K,--resolution", dens_o.resolution, "Bins per side")->check(CLI::Range(2, 100000));
    dens->add_option("-T,--window", dens_o.window, "Window size recorded with the density");
    dens->add_option("--sidecar", dens_o.sidecar, "Write a reloadable density: grid plus JSON sidecar");
    dens->add_flag("--preconditioned", dens_o.preconditioned, "Emit f + h^2");
    dens->add_flag("--no-header", dens_o.no_header, "Input has no header row");

    StreamOptions stream_o;
    auto* stream = app.add_subcommand("stream", "Run the streaming detector over JSON-lines samples");
    stream->add_option("-i,--input", stream_o.input, "JSON lines: [x...] or {\"x\": [x...]}")->required();
    stream->add_option("-o,--output", stream_o.output, "Verdict CSV");
    stream->add_option("--measures", stream_o.measures_json,
                       "JSON array of two measures, inline or as a file, e.g. [{\"id\":\"abs_diff\",\"component\":0}, ...]");
    stream->add_option("--generator", stream_o.generator, "Use the measures paired with a generator")
        ->check(CLI::IsMember({"uniform", "categorical"}));
    stream->add_option("-T,--window", stream_o.window, "Window size");
    stream->add_option("-K,--resolution", stream_o.resolution, "Grid resolution");
    stream->add_option("-k,--k-counts", stream_o.k, "Neighbours per criterion")->expected(2);
    stream->add_option("--rho", stream_o.rho, "Anomaly threshold on nu");
    stream->add_option("--refresh", stream_o.refresh, "Re-solve period in steps");
    stream->add_flag("--classify-all", stream_o.classify_all, "Report mu for every sample");
    stream->add_flag("--exact", stream_o.exact, "Use the exact-sorting detector");
    stream->add_option("--seed", stream_o.seed, "Seed for generator-provided measures");

    GenerateOptions gen_o;
    auto* gen = app.add_subcommand("generate", "Write a labeled synthetic stream as JSON lines");
    gen->add_option("-g,--generator", gen_o.generator)->check(CLI::IsMember({"uniform", "categorical"}));
    gen->add_option("-o,--output", gen_o.output);
    gen->add_option("--length", gen_o.stream.length);
    gen->add_option("--change-step", gen_o.stream.change_step);
    gen->add_option("--anomaly-probability", gen_o.stream.anomaly_probability);
    gen->add_option("--seed", gen_o.stream.seed);
    gen->add_option("--trial", gen_o.trial);

    RocOptions roc_o;
    auto* roc = app.add_subcommand("roc", "ROC curve of a scored, labeled CSV");
    roc->add_option("-i,--input", roc_o.input)->required();
    roc->add_option("-o,--output", roc_o.output);
    roc->add_option("--score", roc_o.score_column, "Score column name");
    roc->add_option("--label", roc_o.label_column, "Label column name (nonzero = positive)");

    VnWnConfig vn_o;
    std::string vn_out;
    auto* vn = app.add_subcommand("converge-vn", "Within-front index convergence rates for uniform samples");
    vn->add_option("--sizes", vn_o.sizes);
    vn->add_option("--trials", vn_o.trials);
    vn->add_option("--seed", vn_o.seed);
    vn->add_flag("--allow-large", vn_o.allow_large, "Permit sizes above 10^6");
    vn->add_option("-o,--output", vn_out);

    HjeConvergenceConfig hc_o;
    std::string hc_out;
    auto* hc = app.add_subcommand("converge-hje", "Estimated-density HJE error against the closed form");
    hc->add_option("-n,--samples", hc_o.samples);
    hc->add_option("--resolutions", hc_o.resolutions);
    hc->add_option("--seed", hc_o.seed);
    hc->add_option("-o,--output", hc_out);

    TimingConfig tm_o;
    std::string tm_out;
    auto* tm = app.add_subcommand("timing", "Per-step time of the PDE and exact detectors");
    tm->add_option("--windows", tm_o.windows);
    tm->add_option("-K,--resolution", tm_o.resolution);
    tm->add_option("--pde-steps", tm_o.pde_steps);
    tm->add_option("--exact-steps", tm_o.exact_steps);
    tm->add_option("--seed", tm_o.seed);
    tm->add_option("-o,--output", tm_out);

    ExperimentOptions ex_o;
    auto* ex = app.add_subcommand("experiment", "Streaming experiment: AUC over time, ROC and verdicts");
    ex->add_option("--config", ex_o.config_file, "JSON experiment config");
    ex->add_option("-g,--generator", ex_o.generator)->check(CLI::IsMember({"uniform", "categorical"}));
    ex->add_option("-o,--output", ex_o.output, "AUC-over-time CSV");
    ex->add_option("--roc-output", ex_o.roc_output, "ROC CSV over pooled stream verdicts");
    ex->add_option("--verdicts-output", ex_o.verdicts_output, "Verdict CSV of the first trial");
    ex->add_option("--length", ex_o.length);
    ex->add_option("--change-step", ex_o.change_step);
    ex->add_option("--anomaly-probability", ex_o.anomaly_probability);
    ex->add_option("--seed", ex_o.seed);
    ex->add_option("-T,--window", ex_o.window);
    ex->add_option("-K,--resolution", ex_o.resolution);
    ex->add_option("-k,--k-counts", ex_o.k)->expected(2);
    ex->add_option("--refresh", ex_o.refresh);
    ex->add_option("--trials", ex_o.trials);
    ex->add_option("--eval-every", ex_o.eval_every);
    ex->add_flag("--exact", ex_o.exact, "Also run the exact-sorting detector");
    ex->add_flag("--no-pde", ex_o.no_pde, "Skip the PDE detector");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sort->parsed()) {
            run_sort(sort_o);
        } else if (dens->parsed()) {
            run_density(dens_o);
        } else if (stream->parsed()) {
            run_stream(stream_o);
        } else if (gen->parsed()) {
            run_generate(gen_o);
        } else if (roc->parsed()) {
            run_roc(roc_o);
        } else if (vn->parsed()) {
            emit_table(vn_out, to_table(run_convergence_vn_wn(vn_o), vn_json(vn_o)));
        } else if (hc->parsed()) {
            emit_table(hc_out, to_table(run_convergence_hje(hc_o), hje_json(hc_o)));
        } else if (tm->parsed()) {
            const auto rows = compare_pde_exact_timing(tm_o);
            emit_table(tm_out, to_table(rows, timing_json(tm_o)));
        } else if (ex->parsed()) {
            run_experiment(ex_o);
        } else {
            for (auto* s : solvers) {
                if (s->parsed()) {
                    run_solve(solve_o, s->get_name());
                }
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "pda: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
