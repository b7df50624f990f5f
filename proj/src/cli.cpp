#include "ulindley/cli.hpp"

#include "ulindley/beta_competitor.hpp"
#include "ulindley/dataset.hpp"
#include "ulindley/errors.hpp"
#include "ulindley/estimation.hpp"
#include "ulindley/format.hpp"
#include "ulindley/gof.hpp"
#include "ulindley/simulation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace ulindley::cli {

int exit_code_for(const std::exception& error) {
    if (dynamic_cast<const DataError*>(&error)) return kDataError;
    if (dynamic_cast<const EstimationError*>(&error)) return kEstimationError;
    if (dynamic_cast<const ConvergenceError*>(&error) || dynamic_cast<const NoSignChangeError*>(&error)) {
        return kNonConvergence;
    }
    if (dynamic_cast<const DomainError*>(&error)) return kUsage;
    return kFailure;
}

namespace {

const std::map<std::string, ModelKind> kModels{{"ulzi", ModelKind::ULZI},
                                               {"uloi", ModelKind::ULOI},
                                               {"ulzoi", ModelKind::ULZOI},
                                               {"zib", ModelKind::ZIB},
                                               {"zoib", ModelKind::ZOIB}};
const std::map<std::string, Method> kMethods{{"mle", Method::MLE}, {"bcmle", Method::BCMLE}, {"cme", Method::CME}};

struct GlobalOptions {
    std::uint64_t seed = 2020;
    std::string format = "text";
    double level = 0.95;

    bool csv() const { return format == "csv"; }
    std::string number(double v) const { return csv() ? format_exact(v) : format_fixed(v); }
};

struct DataOptions {
    std::string path;
    std::string column = "0";
    char delimiter = ',';
    std::string scale = "unit";

    void attach(CLI::App* cmd) {
        cmd->add_option("--data", path, "CSV file with a header row, or - for standard input")->required();
        cmd->add_option("--column", column, "column name or 0-based index")->capture_default_str();
        cmd->add_option("--delimiter", delimiter, "field delimiter")->capture_default_str();
        cmd->add_option("--scale", scale, "unit: values in [0,1]; percent: values in [0,100]")
            ->check(CLI::IsMember({"unit", "percent"}))
            ->capture_default_str();
    }

    Dataset load(std::istream& in) const {
        CsvOptions options;
        options.delimiter = delimiter;
        options.scale = scale == "percent" ? Scale::Percent : Scale::Unit;
        const bool numeric = !column.empty() && std::all_of(column.begin(), column.end(), [](char c) {
            return c >= '0' && c <= '9';
        });
        if (numeric) {
            options.column = static_cast<std::size_t>(std::stoull(column));
        } else {
            options.column = column;
        }
        if (path == "-") return load_csv(in, options, "<stdin>");
        return load_csv(path, options);
    }
};

struct ParamOptions {
    std::optional<double> alpha;
    std::optional<double> theta;
    std::optional<double> p;
    std::optional<double> mu;
    std::optional<double> phi;

    void attach(CLI::App* cmd, bool beta) {
        cmd->add_option("--alpha", alpha, "total inflation probability");
        cmd->add_option("--theta", theta, "unit Lindley shape");
        cmd->add_option("--p", p, "share of the inflation mass at 1 (zero-and-one models)");
        if (beta) {
            cmd->add_option("--mu", mu, "beta mean");
            cmd->add_option("--phi", phi, "beta precision");
        }
    }

    bool any() const { return alpha || theta || p || mu || phi; }

    static double need(const std::optional<double>& v, const char* name) {
        if (!v) throw DomainError(std::string("--") + name + " is required for this model");
        return *v;
    }

    ModelCdf cdf(ModelKind model) const {
        switch (model) {
            case ModelKind::ULZI:
            case ModelKind::ULOI:
                return model_cdf(InflatedParams(need(alpha, "alpha"), need(theta, "theta"),
                                                model == ModelKind::ULZI ? InflationPoint::Zero : InflationPoint::One));
            case ModelKind::ULZOI:
                return model_cdf(ZeroOneInflatedParams(need(alpha, "alpha"), need(p, "p"), need(theta, "theta")));
            case ModelKind::ZIB:
                return model_cdf(InflatedBetaParams(need(alpha, "alpha"), need(mu, "mu"), need(phi, "phi")));
            case ModelKind::ZOIB:
                return model_cdf(InflatedBetaParams(need(alpha, "alpha"), need(mu, "mu"), need(phi, "phi"), need(p, "p")));
        }
        throw DomainError("unknown model");
    }
};

FitReport fit_model(const ProportionSample& sample, ModelKind model, Method method, double level) {
    if (model == ModelKind::ZIB || model == ModelKind::ZOIB) {
        if (method != Method::MLE) throw DomainError("the beta models are fitted by maximum likelihood only");
        return fit_beta_inflated(sample, model, level);
    }
    return fit_unit_lindley(sample, model, method, level);
}

std::string side_name(KsSide side) { return side == KsSide::LeftLimit ? "left limit" : "right value"; }

void write_plot_data(const std::string& path, const ProportionSample& sample, const ModelCdf& model) {
    std::vector<double> xs(sample.sorted().begin(), sample.sorted().end());
    for (int g = 0; g <= 200; ++g) xs.push_back(g / 200.0);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::ofstream file(path);
    if (!file) throw DataError("cannot write '" + path + "'");
    file << "x,F_n,F_fit\n";
    for (const double x : xs) {
        file << format_exact(x) << ',' << format_exact(empirical_cdf(sample, x)) << ','
             << format_exact(model(x)) << '\n';
    }
}

void render_fit(std::ostream& out, const GlobalOptions& global, const FitReport& report, const KsResult& ks) {
    if (global.csv()) {
        out << "model,method,n,param,estimate,std_error,ci_lo,ci_hi,level,log_lik,ks\n";
        for (const auto& param : report.parameters) {
            out << to_string(report.model) << ',' << to_string(report.method) << ',' << report.n << ','
                << param.name << ',' << format_exact(param.estimate) << ','
                << (param.std_error ? format_exact(*param.std_error) : "") << ','
                << (param.ci ? format_exact(param.ci->lo) : "") << ',' << (param.ci ? format_exact(param.ci->hi) : "")
                << ',' << (param.ci ? format_exact(param.ci->level) : "") << ',' << format_exact(report.log_lik)
                << ',' << format_exact(ks.statistic) << '\n';
        }
        return;
    }
    out << to_string(report.model) << " fit by " << to_string(report.method) << " (n = " << report.n << ")\n";
    char line[160];
    std::snprintf(line, sizeof line, "%-8s %12s %12s   %s\n", "param", "estimate", "std.err",
                  (format_exact(100.0 * global.level) + "% CI").c_str());
    out << line;
    bool flagged = false;
    for (const auto& param : report.parameters) {
        const std::string se = param.std_error ? format_fixed(*param.std_error) : "-";
        std::string ci = "-";
        if (param.ci) {
            ci = "[" + format_fixed(param.ci->lo) + ", " + format_fixed(param.ci->hi) + "]";
            if (param.ci->exits_parameter_space) {
                ci += " *";
                flagged = true;
            }
        }
        std::snprintf(line, sizeof line, "%-8s %12s %12s   %s\n", param.name.c_str(),
                      format_fixed(param.estimate).c_str(), se.c_str(), ci.c_str());
        out << line;
    }
    if (flagged) out << "* interval extends outside the parameter space\n";
    out << "log-likelihood " << format_fixed(report.log_lik) << '\n';
    out << "KS " << format_fixed(ks.statistic) << " (at " << format_fixed(ks.at) << ", " << side_name(ks.side)
        << ")\n";
    for (const auto& warning : report.warnings) out << "warning: " << warning << '\n';
}

int cmd_fit(const GlobalOptions& global, const DataOptions& data, const std::string& model_name,
            const std::string& method_name, const std::string& plot_path, std::ostream& out, std::istream& in) {
    const Dataset dataset = data.load(in);
    const FitReport report = fit_model(dataset.values, kModels.at(model_name), kMethods.at(method_name), global.level);
    const ModelCdf fitted = fitted_model_cdf(report);
    render_fit(out, global, report, ks_statistic(dataset.values, fitted));
    if (!plot_path.empty()) write_plot_data(plot_path, dataset.values, fitted);
    return kSuccess;
}

struct CompareRow {
    ModelKind model;
    std::optional<FitReport> report;
    std::optional<KsResult> ks;
    std::string error;
    int code = kSuccess;
};

int cmd_compare(const GlobalOptions& global, const DataOptions& data, std::ostream& out, std::istream& in) {
    const Dataset dataset = data.load(in);
    const ProportionSample& sample = dataset.values;

    std::vector<ModelKind> models;
    if (sample.zeros() > 0 && sample.ones() > 0) {
        models = {ModelKind::ULZOI, ModelKind::ZOIB};
    } else if (sample.ones() > 0) {
        models = {ModelKind::ULOI};
    } else {
        models = {ModelKind::ULZI, ModelKind::ZIB};
    }

    std::vector<CompareRow> rows;
    for (const ModelKind model : models) {
        CompareRow row{model, std::nullopt, std::nullopt, {}, kSuccess};
        try {
            row.report = fit_model(sample, model, Method::MLE, global.level);
            row.ks = ks_statistic(sample, fitted_model_cdf(*row.report));
        } catch (const Error& e) {
            row.error = e.what();
            row.code = exit_code_for(e);
        }
        rows.push_back(std::move(row));
    }
    if (models.size() == 1) {
        rows.push_back({ModelKind::ZOIB, std::nullopt, std::nullopt,
                        "no inflated beta competitor for data with ones but no zeros", kEstimationError});
    }

    const CompareRow* best = nullptr;
    for (const auto& row : rows) {
        if (row.ks && (!best || row.ks->statistic < best->ks->statistic)) best = &row;
    }

    if (global.csv()) {
        out << "model,param,estimate,std_error,log_lik,ks,error\n";
        for (const auto& row : rows) {
            if (!row.report) {
                out << to_string(row.model) << ",,,,,,\"" << row.error << "\"\n";
                continue;
            }
            for (const auto& param : row.report->parameters) {
                out << to_string(row.model) << ',' << param.name << ',' << format_exact(param.estimate) << ','
                    << (param.std_error ? format_exact(*param.std_error) : "") << ','
                    << format_exact(row.report->log_lik) << ',' << format_exact(row.ks->statistic) << ",\n";
            }
        }
    } else {
        out << "model comparison (n = " << sample.n() << ", zeros = " << sample.zeros() << ", ones = " << sample.ones()
            << ")\n";
        std::vector<std::string> estimates(rows.size());
        std::size_t width = 19;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!rows[i].report) continue;
            for (const auto& param : rows[i].report->parameters) {
                if (!estimates[i].empty()) estimates[i] += ' ';
                estimates[i] += param.name + '=' + format_fixed(param.estimate);
                if (param.std_error) estimates[i] += " (" + format_fixed(*param.std_error) + ')';
            }
            width = std::max(width, estimates[i].size());
        }
        const int w = static_cast<int>(width);
        char line[512];
        std::snprintf(line, sizeof line, "%-6s %-*s %12s %8s\n", "model", w, "estimates (std.err)", "log-lik", "KS");
        out << line;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::string name(to_string(rows[i].model));
            if (!rows[i].report) {
                std::snprintf(line, sizeof line, "%-6s not fitted: %s\n", name.c_str(), rows[i].error.c_str());
            } else {
                std::snprintf(line, sizeof line, "%-6s %-*s %12s %8s\n", name.c_str(), w, estimates[i].c_str(),
                              format_fixed(rows[i].report->log_lik).c_str(),
                              format_fixed(rows[i].ks->statistic).c_str());
            }
            out << line;
        }
        if (best) out << "smaller KS: " << to_string(best->model) << '\n';
    }

    for (const auto& row : rows) {
        if (row.code != kSuccess) return row.code;
    }
    return kSuccess;
}

int cmd_sample(const GlobalOptions& global, const std::string& model_name, const ParamOptions& params, std::size_t n,
               const std::string& out_path, std::ostream& out) {
    const ModelKind model = kModels.at(model_name);
    Rng rng(global.seed);
    std::vector<double> draws;
    if (model == ModelKind::ULZOI) {
        const ZeroOneInflatedParams zoi(ParamOptions::need(params.alpha, "alpha"), ParamOptions::need(params.p, "p"),
                                        ParamOptions::need(params.theta, "theta"));
        draws = sample_zoi(zoi, n, rng);
    } else if (model == ModelKind::ULZI || model == ModelKind::ULOI) {
        const InflatedParams inflated(ParamOptions::need(params.alpha, "alpha"), ParamOptions::need(params.theta, "theta"),
                                      model == ModelKind::ULZI ? InflationPoint::Zero : InflationPoint::One);
        draws = sample_inflated(inflated, n, rng);
    } else {
        throw DomainError("sample supports ulzi, uloi and ulzoi");
    }

    std::ofstream file;
    if (!out_path.empty() && out_path != "-") {
        file.open(out_path);
        if (!file) throw DataError("cannot write '" + out_path + "'");
    }
    std::ostream& sink = file.is_open() ? static_cast<std::ostream&>(file) : out;
    sink << "y\n";
    for (const double y : draws) sink << format_exact(y) << '\n';
    return kSuccess;
}

struct SimulateOptions {
    std::string model = "ulzi";
    ParamOptions params;
    std::vector<std::size_t> sizes{25, 30, 50, 100, 500, 1000};
    std::size_t reps = 1000;
    std::vector<double> levels;
    std::string study = "both";
    unsigned threads = 0;
    std::string density_path;
};

int cmd_simulate(const GlobalOptions& global, const SimulateOptions& options, std::ostream& out) {
    const ModelKind model = kModels.at(options.model);
    const double alpha = ParamOptions::need(options.params.alpha, "alpha");
    const double theta = ParamOptions::need(options.params.theta, "theta");
    SimulationSpec spec{model == ModelKind::ULZOI
                            ? TrueParams(ZeroOneInflatedParams(alpha, ParamOptions::need(options.params.p, "p"), theta))
                            : TrueParams(InflatedParams(alpha, theta, InflationPoint::Zero)),
                        options.sizes,
                        options.reps,
                        global.seed,
                        options.levels.empty() ? std::vector<double>{global.level} : options.levels,
                        options.threads};

    SimulationTable table = options.study == "bias"       ? run_bias_study(spec)
                            : options.study == "coverage" ? run_coverage_study(spec)
                                                          : run_study(spec);
    out << emit_table(table, global.csv() ? TableFormat::Csv : TableFormat::Text);
    if (!options.density_path.empty()) {
        std::ofstream file(options.density_path);
        if (!file) throw DataError("cannot write '" + options.density_path + "'");
        file << theta_density_csv(table);
    }
    return kSuccess;
}

int cmd_gof(const GlobalOptions& global, const DataOptions& data, const std::string& model_name,
            const ParamOptions& params, const std::string& plot_path, std::ostream& out, std::istream& in) {
    const Dataset dataset = data.load(in);
    const ModelKind model = kModels.at(model_name);
    const ModelCdf cdf = params.any() ? params.cdf(model)
                                      : fitted_model_cdf(fit_model(dataset.values, model, Method::MLE, global.level));
    const KsResult ks = ks_statistic(dataset.values, cdf);
    if (global.csv()) {
        out << "model,statistic,at,side\n"
            << to_string(model) << ',' << format_exact(ks.statistic) << ',' << format_exact(ks.at) << ','
            << (ks.side == KsSide::LeftLimit ? "left" : "right") << '\n';
    } else {
        out << to_string(model) << (params.any() ? " (given parameters)" : " (fitted by MLE)") << '\n'
            << "KS " << format_fixed(ks.statistic) << " (at " << format_fixed(ks.at) << ", " << side_name(ks.side)
            << ")\n";
    }
    if (!plot_path.empty()) write_plot_data(plot_path, dataset.values, cdf);
    return kSuccess;
}

std::vector<std::string> model_names() {
    std::vector<std::string> names;
    for (const auto& [name, kind] : kModels) names.push_back(name);
    return names;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
    CLI::App app{"Inflated unit Lindley models for proportion data"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--seed", global.seed, "random seed")->capture_default_str();
    app.add_option("--format", global.format, "output format")
        ->check(CLI::IsMember({"text", "csv"}))
        ->capture_default_str();
    app.add_option("--level", global.level, "confidence level of the Wald intervals")
        ->check(CLI::Range(0.5, 1.0))
        ->capture_default_str();

    DataOptions data;
    ParamOptions params;
    std::string model;
    std::string method = "mle";
    std::string plot_path;
    std::string out_path;
    std::size_t count = 0;
    SimulateOptions sim;

    CLI::App* fit = app.add_subcommand("fit", "fit one model and report estimates, intervals and KS");
    data.attach(fit);
    fit->add_option("--model", model, "model")->required()->check(CLI::IsMember(model_names()));
    fit->add_option("--method", method, "estimator")->check(CLI::IsMember({"mle", "bcmle", "cme"}))->capture_default_str();
    fit->add_option("--plot-data", plot_path, "write x, F_n, F_fit as CSV");

    CLI::App* compare = app.add_subcommand("compare", "fit the unit Lindley and beta variants and compare KS");
    data.attach(compare);

    CLI::App* sample = app.add_subcommand("sample", "draw from a model as CSV");
    sample->add_option("--model", model, "model")->required()->check(CLI::IsMember({"ulzi", "uloi", "ulzoi"}));
    params.attach(sample, false);
    sample->add_option("-n", count, "number of draws")->required();
    sample->add_option("--out", out_path, "output file (default standard output)");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo study of the estimators");
    simulate->add_option("--model", sim.model, "model")->check(CLI::IsMember({"ulzi", "ulzoi"}))->capture_default_str();
    sim.params.attach(simulate, false);
    simulate->add_option("--sizes", sim.sizes, "sample sizes")->delimiter(',')->capture_default_str();
    simulate->add_option("--reps", sim.reps, "replications per sample size")->capture_default_str();
    simulate->add_option("--levels", sim.levels, "interval levels (default --level)")->delimiter(',');
    simulate->add_option("--study", sim.study, "which rows to report")
        ->check(CLI::IsMember({"bias", "coverage", "both"}))
        ->capture_default_str();
    simulate->add_option("--threads", sim.threads, "worker threads, 0 for all cores")->capture_default_str();
    simulate->add_option("--density", sim.density_path, "write kernel densities of the theta estimates as CSV");

    CLI::App* gof = app.add_subcommand("gof", "KS distance between data and a given or fitted model");
    data.attach(gof);
    gof->add_option("--model", model, "model")->required()->check(CLI::IsMember(model_names()));
    params.attach(gof, true);
    gof->add_option("--plot-data", plot_path, "write x, F_n, F_fit as CSV");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (*fit) return cmd_fit(global, data, model, method, plot_path, out, in);
        if (*compare) return cmd_compare(global, data, out, in);
        if (*sample) return cmd_sample(global, model, params, count, out_path, out);
        if (*simulate) return cmd_simulate(global, sim, out);
        if (*gof) return cmd_gof(global, data, model, params, plot_path, out, in);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return kUsage;
}

}  // namespace ulindley::cli
