#include "qtm/run.hpp"

#include "qtm/csv.hpp"
#include "qtm/parallel.hpp"
#include "qtm/steady.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

namespace qtm::cli {

namespace {

const std::vector<std::string> record_columns = {
    "model", "E", "g", "rate_c", "rate_h", "T_c", "T_h", "U",
    "concurrence", "purity", "Q_c", "Q_h", "residual", "uniqueness_gap"};

std::vector<std::string> record_fields(const analytics::SweepRecord& r) {
    return {models::to_string(r.model), format_double(r.E), format_double(r.g),
            format_double(r.rate_c), format_double(r.rate_h), format_double(r.T_c),
            format_double(r.T_h), format_double(r.U), format_double(r.concurrence),
            format_double(r.purity), format_double(r.Q_c), format_double(r.Q_h),
            format_double(r.residual), format_double(r.uniqueness_gap)};
}

steady::SolveOptions solve_options(const RunConfig& cfg) {
    steady::SolveOptions opts;
    if (cfg.tolerance) opts.residual_tol = *cfg.tolerance;
    return opts;
}

// Point values for one grid cell: the config's fixed parameters overridden by
// the swept axes.
struct PointParams {
    double g = 0.0, rate_c = 0.0, rate_h = 0.0, T_c = 0.0, T_h = 0.0, U = 0.0;
};

PointParams base_point(const RunConfig& cfg) {
    PointParams p;
    p.g = cfg.g.value_or(0.0);
    p.rate_c = cfg.rate_c.value_or(0.0);
    p.rate_h = cfg.rate_h.value_or(0.0);
    p.T_c = cfg.T_c.value_or(0.0);
    p.T_h = cfg.T_h.value_or(0.0);
    p.U = cfg.U;
    return p;
}

void apply(PointParams& p, const std::string& name, double value) {
    if (name == "g") p.g = value;
    else if (name == "rate_c") p.rate_c = value;
    else if (name == "rate_h") p.rate_h = value;
    else if (name == "T_c") p.T_c = value;
    else if (name == "T_h") p.T_h = value;
    else if (name == "U") p.U = value;
    else throw ConfigError("unknown sweep parameter '" + name + "'");
}

analytics::SweepRecord record_at(const RunConfig& cfg, const PointParams& p,
                                 const steady::SolveOptions& opts) {
    switch (cfg.model) {
        case models::ModelKind::reset:
            return analytics::steady_report(
                models::ResetParams{cfg.E, p.g, p.rate_c, p.rate_h, p.T_c, p.T_h}, opts);
        case models::ModelKind::flux:
            return analytics::steady_report(
                models::FluxParams{cfg.E, p.g, p.rate_c, p.rate_h, p.T_c, p.T_h}, opts);
        case models::ModelKind::dot:
            return analytics::steady_report(
                models::DotParams{cfg.E, p.g, p.rate_c, p.rate_h, p.T_c, p.T_h, p.U}, opts);
    }
    throw ConfigError("unknown model");
}

std::vector<opt::FreeParam> free_params_from(const RunConfig& cfg) {
    auto free = opt::default_free_params(cfg.model);
    for (auto& param : free) {
        const auto it = cfg.bounds.find(param.name);
        if (it != cfg.bounds.end()) {
            param.lo = it->second.first;
            param.hi = it->second.second;
        }
    }
    return free;
}

// Optimizes couplings at the point's temperatures, then evaluates the full
// record at the optimum so every emitted value is re-derivable.
analytics::SweepRecord optimized_record_at(const RunConfig& cfg, const PointParams& p,
                                           const steady::SolveOptions& opts, int workers) {
    opt::OptimizationProblem prob;
    prob.model = cfg.model;
    prob.E = cfg.E;
    prob.T_c = p.T_c;
    prob.T_h = p.T_h;
    prob.U = p.U;
    prob.free_params = free_params_from(cfg);
    prob.grid_points = cfg.grid_points;
    prob.max_evals = cfg.max_evals;
    prob.workers = workers;

    const auto best = opt::maximize_concurrence(prob);
    PointParams at = p;
    for (std::size_t i = 0; i < best.names.size(); ++i) apply(at, best.names[i], best.best_point[i]);
    return record_at(cfg, at, opts);
}

void write_csv(const RunConfig& cfg, const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows, std::ostream& out) {
    auto emit = [&](std::ostream& target) {
        CsvWriter csv(target);
        csv.header(columns);
        for (const auto& row : rows) csv.row(row);
    };
    if (cfg.output.empty()) {
        emit(out);
        return;
    }
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file '" + cfg.output + "'");
    emit(file);
    out << "# wrote " << rows.size() << " rows to " << cfg.output << "\n";
}

}  // namespace

void run_steady(const RunConfig& cfg, std::ostream& out) {
    const auto record = record_at(cfg, base_point(cfg), solve_options(cfg));

    // Rebuild the state for printing; identical inputs give identical output.
    steady::SolveOptions opts = solve_options(cfg);
    const models::Liouvillian l = [&] {
        const PointParams p = base_point(cfg);
        switch (cfg.model) {
            case models::ModelKind::flux:
                return models::flux_liouvillian({cfg.E, p.g, p.rate_c, p.rate_h, p.T_c, p.T_h});
            case models::ModelKind::dot:
                return models::dot_liouvillian({cfg.E, p.g, p.rate_c, p.rate_h, p.T_c, p.T_h, p.U});
            case models::ModelKind::reset:
            default:
                return models::reset_liouvillian({cfg.E, p.g, p.rate_c, p.rate_h, p.T_c, p.T_h});
        }
    }();
    const auto solved = steady::solve_steady(l, opts);

    out << "# steady-state density matrix, real part\n";
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j)
            out << (j ? "," : "") << format_double(solved.state(i, j).real());
        out << "\n";
    }
    out << "# steady-state density matrix, imaginary part\n";
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = 0; j < 4; ++j)
            out << (j ? "," : "") << format_double(solved.state(i, j).imag());
        out << "\n";
    }
    write_csv(cfg, record_columns, {record_fields(record)}, out);
}

std::vector<analytics::SweepRecord> sweep_records(const RunConfig& cfg) {
    if (!cfg.axis1) throw ConfigError("sweep: no axis configured");
    const std::vector<double> outer = cfg.axis1->values();
    const std::vector<double> inner = cfg.axis2 ? cfg.axis2->values() : std::vector<double>{0.0};

    const std::size_t count = outer.size() * inner.size();
    std::vector<analytics::SweepRecord> rows(count);
    const steady::SolveOptions opts = solve_options(cfg);

    std::exception_ptr failure;
    std::mutex failure_mutex;
    parallel_for_index(count, cfg.workers, [&](std::size_t flat) {
        try {
            PointParams p = base_point(cfg);
            apply(p, cfg.axis1->param, outer[flat / inner.size()]);
            if (cfg.axis2) apply(p, cfg.axis2->param, inner[flat % inner.size()]);
            rows[flat] = cfg.optimize_couplings
                             ? optimized_record_at(cfg, p, opts, /*workers=*/1)
                             : record_at(cfg, p, opts);
        } catch (...) {
            std::scoped_lock lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);
    return rows;
}

void run_sweep(const RunConfig& cfg, std::ostream& out) {
    const auto rows = sweep_records(cfg);
    std::vector<std::vector<std::string>> fields;
    fields.reserve(rows.size());
    for (const auto& r : rows) fields.push_back(record_fields(r));
    write_csv(cfg, record_columns, fields, out);
}

std::vector<ThresholdRecord> threshold_records(const RunConfig& cfg) {
    if (!cfg.tc_axis) throw ConfigError("threshold: no T_c grid configured");
    const std::vector<double> tc_values = cfg.tc_axis->values();

    std::vector<ThresholdRecord> rows(tc_values.size());
    std::exception_ptr failure;
    std::mutex failure_mutex;
    parallel_for_index(tc_values.size(), cfg.workers, [&](std::size_t i) {
        try {
            opt::ThresholdOptions opts;
            opts.T_h_cap = cfg.th_cap;
            rows[i].T_c = tc_values[i];
            rows[i].threshold_T_h =
                opt::threshold_hot_temperature(cfg.model, tc_values[i], cfg.U, opts);
        } catch (...) {
            std::scoped_lock lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    });
    if (failure) std::rethrow_exception(failure);
    return rows;
}

void run_threshold(const RunConfig& cfg, std::ostream& out) {
    const auto rows = threshold_records(cfg);
    std::vector<std::vector<std::string>> fields;
    fields.reserve(rows.size());
    for (const auto& r : rows)
        fields.push_back({models::to_string(cfg.model), format_double(r.T_c),
                          r.threshold_T_h ? format_double(*r.threshold_T_h)
                                          : std::string("unreachable")});
    write_csv(cfg, {"model", "T_c", "threshold_T_h"}, fields, out);
}

opt::OptimizationResult optimize_result(const RunConfig& cfg) {
    opt::OptimizationProblem prob;
    prob.model = cfg.model;
    prob.E = cfg.E;
    prob.T_c = cfg.T_c.value_or(0.0);
    prob.T_h = cfg.T_h.value_or(0.0);
    prob.U = cfg.U;
    prob.free_params = free_params_from(cfg);
    if (cfg.optimize_T_h) prob.free_params.push_back({"T_h", cfg.th_min, cfg.th_max, true});
    prob.grid_points = cfg.grid_points;
    prob.max_evals = cfg.max_evals;
    prob.workers = cfg.workers;
    return opt::maximize_concurrence(prob);
}

void run_optimize(const RunConfig& cfg, std::ostream& out) {
    const auto result = optimize_result(cfg);

    std::map<std::string, double> point;
    for (std::size_t i = 0; i < result.names.size(); ++i) point[result.names[i]] = result.best_point[i];
    const double best_T_h = point.contains("T_h") ? point["T_h"] : cfg.T_h.value_or(0.0);

    const std::vector<std::string> columns = {
        "model", "E", "T_c", "T_h", "U", "best_concurrence",
        "g", "rate_c", "rate_h", "evaluations", "all_grid_points_zero"};
    const std::vector<std::string> row = {
        models::to_string(cfg.model), format_double(cfg.E),
        format_double(cfg.T_c.value_or(0.0)), format_double(best_T_h), format_double(cfg.U),
        format_double(result.best_value), format_double(point["g"]),
        format_double(point["rate_c"]), format_double(point["rate_h"]),
        std::to_string(result.evaluations), result.all_grid_points_zero ? "true" : "false"};
    write_csv(cfg, columns, {row}, out);
}

int dispatch(Command cmd, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cmd) {
            case Command::steady: run_steady(cfg, out); break;
            case Command::sweep: run_sweep(cfg, out); break;
            case Command::threshold: run_threshold(cfg, out); break;
            case Command::optimize: run_optimize(cfg, out); break;
            case Command::verify:
                throw ConfigError("verify takes no configuration; use the verify subcommand");
        }
        return exit_success;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::invalid_argument& e) {
        err << "configuration error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return exit_numerical_failure;
    }
}

}  // namespace qtm::cli
