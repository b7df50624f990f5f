#include "ulindley/simulation.hpp"

#include "ulindley/errors.hpp"
#include "ulindley/format.hpp"
#include "ulindley/special_math.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <thread>

namespace ulindley {

ModelKind SimulationSpec::model() const {
    if (std::holds_alternative<ZeroOneInflatedParams>(true_params)) return ModelKind::ULZOI;
    return std::get<InflatedParams>(true_params).point() == InflationPoint::Zero ? ModelKind::ULZI
                                                                                  : ModelKind::ULOI;
}

void SimulationSpec::validate() const {
    if (replications < 1) throw DomainError("simulation: replications must be at least 1");
    if (sample_sizes.empty()) throw DomainError("simulation: no sample sizes given");
    for (const std::size_t n : sample_sizes) {
        if (n < 2) throw DomainError("simulation: sample sizes must be at least 2");
    }
    for (const double level : ci_levels) {
        if (!(level > 0.5 && level < 1.0)) throw DomainError("simulation: levels must lie in (0.5, 1)");
    }
}

std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t n, std::size_t r) {
    const std::uint64_t s = static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(r);
    const std::uint64_t pair = s * (s + 1) / 2 + static_cast<std::uint64_t>(r);
    return splitmix64(base_seed + splitmix64(pair));
}

std::size_t SimulationTable::failed_at(std::size_t n) const {
    for (const auto& f : failures) {
        if (f.n == n) return f.failed;
    }
    return 0;
}

namespace {

struct Truth {
    std::vector<std::string> names;
    std::vector<double> values;
};

Truth truth_of(const TrueParams& params) {
    if (const auto* zoi = std::get_if<ZeroOneInflatedParams>(&params)) {
        return {{"alpha", "p", "theta"}, {zoi->alpha(), zoi->p(), zoi->theta()}};
    }
    const auto& inflated = std::get<InflatedParams>(params);
    return {{"alpha", "theta"}, {inflated.alpha(), inflated.theta()}};
}

struct Replication {
    bool ok = false;
    std::vector<double> mle;
    std::vector<double> std_error;
    double bcmle = 0.0;
    double cme = 0.0;
};

Replication replicate(const SimulationSpec& spec, ModelKind model, std::size_t n, std::size_t r) {
    Rng rng(replication_seed(spec.base_seed, n, r));
    std::vector<double> draws = std::visit(
        [&](const auto& params) {
            if constexpr (std::is_same_v<std::decay_t<decltype(params)>, ZeroOneInflatedParams>) {
                return sample_zoi(params, n, rng);
            } else {
                return sample_inflated(params, n, rng);
            }
        },
        spec.true_params);

    Replication out;
    try {
        const ProportionSample sample(std::move(draws));
        const FitReport mle = fit_unit_lindley(sample, model, Method::MLE);
        for (const auto& param : mle.parameters) {
            out.mle.push_back(param.estimate);
            out.std_error.push_back(*param.std_error);
        }
        out.bcmle = bcmle_theta(sample).value;
        out.cme = cme_theta(sample);
        out.ok = true;
    } catch (const EstimationError&) {
        out.ok = false;
    }
    return out;
}

std::vector<Replication> replicate_all(const SimulationSpec& spec, ModelKind model, std::size_t n) {
    std::vector<Replication> results(spec.replications);
    unsigned workers = spec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : spec.threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, spec.replications));
    if (workers <= 1) {
        for (std::size_t r = 0; r < spec.replications; ++r) results[r] = replicate(spec, model, n, r);
        return results;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t r = w; r < spec.replications; r += workers) {
                results[r] = replicate(spec, model, n, r);
            }
        });
    }
    return results;
}

EstimatorRow summarize(const std::string& param, std::size_t n, Method estimator,
                       const std::vector<double>& values, double truth) {
    const auto k = static_cast<double>(values.size());
    double sum = 0.0;
    double squared_error = 0.0;
    for (const double v : values) {
        sum += v;
        squared_error += (v - truth) * (v - truth);
    }
    const double mean = sum / k;
    double spread = 0.0;
    for (const double v : values) spread += (v - mean) * (v - mean);
    const double mc_se = values.size() > 1 ? std::sqrt(spread / (k - 1.0) / k) : 0.0;
    const double mse = squared_error / k;
    return {param, n, estimator, mean, mean - truth, mse, std::sqrt(mse), mc_se};
}

}  // namespace

SimulationTable run_study(const SimulationSpec& spec) {
    spec.validate();
    const ModelKind model = spec.model();
    const Truth truth = truth_of(spec.true_params);
    const std::size_t theta_index = truth.names.size() - 1;

    SimulationTable table;
    table.model = model;
    table.replications = spec.replications;

    // Rows are collected per parameter and emitted parameter-major.
    std::vector<std::vector<EstimatorRow>> estimator_rows(truth.names.size());
    std::vector<std::vector<CoverageRow>> coverage_rows(truth.names.size());

    for (const std::size_t n : spec.sample_sizes) {
        const std::vector<Replication> reps = replicate_all(spec, model, n);
        std::vector<const Replication*> ok;
        for (const auto& rep : reps) {
            if (rep.ok) ok.push_back(&rep);
        }
        table.failures.push_back({n, reps.size() - ok.size()});
        if (ok.empty()) {
            throw EstimationError(EstimationError::Reason::NoInteriorData,
                                  "simulation: every replication at n = " + std::to_string(n) +
                                      " violated the fit preconditions");
        }

        for (std::size_t j = 0; j < truth.names.size(); ++j) {
            std::vector<double> values;
            values.reserve(ok.size());
            for (const auto* rep : ok) values.push_back(rep->mle[j]);
            estimator_rows[j].push_back(summarize(truth.names[j], n, Method::MLE, values, truth.values[j]));
            if (j == theta_index) {
                table.theta_draws.push_back({n, Method::MLE, values});
                std::vector<double> bc;
                std::vector<double> cm;
                for (const auto* rep : ok) {
                    bc.push_back(rep->bcmle);
                    cm.push_back(rep->cme);
                }
                estimator_rows[j].push_back(summarize(truth.names[j], n, Method::BCMLE, bc, truth.values[j]));
                estimator_rows[j].push_back(summarize(truth.names[j], n, Method::CME, cm, truth.values[j]));
                table.theta_draws.push_back({n, Method::BCMLE, std::move(bc)});
                table.theta_draws.push_back({n, Method::CME, std::move(cm)});
            }

            for (const double level : spec.ci_levels) {
                const double z = wald_z(level);
                std::size_t covered = 0;
                double lo_sum = 0.0;
                double hi_sum = 0.0;
                for (const auto* rep : ok) {
                    const double lo = rep->mle[j] - z * rep->std_error[j];
                    const double hi = rep->mle[j] + z * rep->std_error[j];
                    if (lo <= truth.values[j] && truth.values[j] <= hi) ++covered;
                    lo_sum += lo;
                    hi_sum += hi;
                }
                const auto k = static_cast<double>(ok.size());
                coverage_rows[j].push_back({truth.names[j], n, level, static_cast<double>(covered) / k,
                                            lo_sum / k, hi_sum / k});
            }
        }
    }

    for (std::size_t j = 0; j < truth.names.size(); ++j) {
        table.estimators.insert(table.estimators.end(), estimator_rows[j].begin(), estimator_rows[j].end());
        table.coverage.insert(table.coverage.end(), coverage_rows[j].begin(), coverage_rows[j].end());
    }
    return table;
}

SimulationTable run_bias_study(const SimulationSpec& spec) {
    SimulationTable table = run_study(spec);
    table.coverage.clear();
    return table;
}

SimulationTable run_coverage_study(const SimulationSpec& spec) {
    SimulationTable table = run_study(spec);
    table.estimators.clear();
    table.theta_draws.clear();
    return table;
}

std::vector<TableRecord> table_records(const SimulationTable& table) {
    const std::string model(to_string(table.model));
    std::vector<TableRecord> records;
    for (const auto& row : table.estimators) {
        TableRecord rec;
        rec.model = model;
        rec.param = row.param;
        rec.n = row.n;
        rec.estimator = std::string(to_string(row.estimator));
        rec.mean = row.mean;
        rec.bias = row.bias;
        rec.mse = row.mse;
        rec.rmse = row.rmse;
        rec.failures = table.failed_at(row.n);
        records.push_back(std::move(rec));
    }
    for (const auto& row : table.coverage) {
        TableRecord rec;
        rec.model = model;
        rec.param = row.param;
        rec.n = row.n;
        rec.estimator = "MLE";
        rec.coverage_level = row.level;
        rec.coverage = row.coverage;
        rec.failures = table.failed_at(row.n);
        records.push_back(std::move(rec));
    }
    return records;
}

namespace {

constexpr const char* kCsvHeader = "model,param,n,estimator,mean,bias,mse,rmse,coverage_level,coverage,failures";

std::string optional_cell(const std::optional<double>& v) { return v ? format_exact(*v) : std::string(); }

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string emit_csv(const SimulationTable& table) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& rec : table_records(table)) {
        out << rec.model << ',' << rec.param << ',' << rec.n << ',' << rec.estimator << ','
            << optional_cell(rec.mean) << ',' << optional_cell(rec.bias) << ',' << optional_cell(rec.mse)
            << ',' << optional_cell(rec.rmse) << ',' << optional_cell(rec.coverage_level) << ','
            << optional_cell(rec.coverage) << ',' << rec.failures << '\n';
    }
    return out.str();
}

std::string emit_text(const SimulationTable& table) {
    std::ostringstream out;
    out << to_string(table.model) << " simulation, " << table.replications << " replications\n\n";
    out << pad("param", 8) << pad("n", 7) << pad("estimator", 10) << pad("mean", 11) << pad("bias", 11)
        << pad("mse", 11) << pad("rmse", 11) << "mc_se\n";
    for (const auto& row : table.estimators) {
        out << pad(row.param, 8) << pad(std::to_string(row.n), 7)
            << pad(std::string(to_string(row.estimator)), 10) << pad(format_fixed(row.mean), 11)
            << pad(format_fixed(row.bias), 11) << pad(format_fixed(row.mse), 11)
            << pad(format_fixed(row.rmse), 11) << format_fixed(row.mc_se) << '\n';
    }
    if (!table.coverage.empty()) {
        out << '\n'
            << pad("param", 8) << pad("n", 7) << pad("level", 8) << pad("coverage", 10) << pad("mean_lo", 11)
            << "mean_hi\n";
        for (const auto& row : table.coverage) {
            out << pad(row.param, 8) << pad(std::to_string(row.n), 7) << pad(format_fixed(row.level), 8)
                << pad(format_fixed(row.coverage), 10) << pad(format_fixed(row.mean_lo), 11)
                << format_fixed(row.mean_hi) << '\n';
        }
    }
    if (!table.failures.empty()) {
        out << "\nfailed replications:";
        for (const auto& f : table.failures) out << "  n=" << f.n << ": " << f.failed;
        out << '\n';
    }
    return out.str();
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::optional<double> parse_optional(const std::string& cell, std::size_t line) {
    if (cell.empty()) return std::nullopt;
    double value = 0.0;
    const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || end != cell.data() + cell.size()) {
        throw DataError("table csv: '" + cell + "' is not a number", line);
    }
    return value;
}

std::size_t parse_count(const std::string& cell, std::size_t line) {
    std::size_t value = 0;
    const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc() || end != cell.data() + cell.size()) {
        throw DataError("table csv: '" + cell + "' is not a count", line);
    }
    return value;
}

}  // namespace

std::string emit_table(const SimulationTable& table, TableFormat format) {
    return format == TableFormat::Csv ? emit_csv(table) : emit_text(table);
}

std::vector<TableRecord> read_table_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw DataError("table csv: missing or unexpected header", 1);
    }
    std::vector<TableRecord> records;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != 11) throw DataError("table csv: expected 11 columns", line_number);
        TableRecord rec;
        rec.model = cells[0];
        rec.param = cells[1];
        rec.n = parse_count(cells[2], line_number);
        rec.estimator = cells[3];
        rec.mean = parse_optional(cells[4], line_number);
        rec.bias = parse_optional(cells[5], line_number);
        rec.mse = parse_optional(cells[6], line_number);
        rec.rmse = parse_optional(cells[7], line_number);
        rec.coverage_level = parse_optional(cells[8], line_number);
        rec.coverage = parse_optional(cells[9], line_number);
        rec.failures = parse_count(cells[10], line_number);
        records.push_back(std::move(rec));
    }
    return records;
}

std::string theta_density_csv(const SimulationTable& table, std::size_t grid_points) {
    std::ostringstream out;
    out << "n,estimator,theta,density\n";
    for (const auto& draws : table.theta_draws) {
        std::vector<double> v = draws.values;
        if (v.empty()) continue;
        std::sort(v.begin(), v.end());
        const auto k = static_cast<double>(v.size());
        double mean = 0.0;
        for (const double x : v) mean += x;
        mean /= k;
        double spread = 0.0;
        for (const double x : v) spread += (x - mean) * (x - mean);
        const double sd = v.size() > 1 ? std::sqrt(spread / (k - 1.0)) : 0.0;
        const double iqr = v[static_cast<std::size_t>(0.75 * (k - 1.0))] - v[static_cast<std::size_t>(0.25 * (k - 1.0))];
        double scale = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
        if (!(scale > 0.0)) scale = 1e-3 * std::max(1.0, std::abs(mean));
        const double bandwidth = 0.9 * scale * std::pow(k, -0.2);

        const double lo = v.front() - 3.0 * bandwidth;
        const double hi = v.back() + 3.0 * bandwidth;
        const double norm = 1.0 / (k * bandwidth * std::sqrt(2.0 * M_PI));
        for (std::size_t g = 0; g < grid_points; ++g) {
            const double x = grid_points > 1 ? lo + (hi - lo) * static_cast<double>(g) /
                                                        static_cast<double>(grid_points - 1)
                                             : mean;
            double density = 0.0;
            for (const double d : v) {
                const double z = (x - d) / bandwidth;
                density += std::exp(-0.5 * z * z);
            }
            out << draws.n << ',' << to_string(draws.estimator) << ',' << format_exact(x) << ','
                << format_exact(density * norm) << '\n';
        }
    }
    return out.str();
}

}  // namespace ulindley
