#pragma once

#include "ulindley/estimation.hpp"
#include "ulindley/inflated.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ulindley {

using TrueParams = std::variant<InflatedParams, ZeroOneInflatedParams>;

struct SimulationSpec {
    TrueParams true_params;
    std::vector<std::size_t> sample_sizes;
    std::size_t replications = 1000;
    std::uint64_t base_seed = 0;
    std::vector<double> ci_levels{0.95};
    /// Worker threads; 0 uses the hardware concurrency. Results do not
    /// depend on it.
    unsigned threads = 0;

    ModelKind model() const;
    /// Throws DomainError unless replications >= 1, every n >= 2 and every
    /// level lies in (0.5, 1).
    void validate() const;
};

/// Seed of replication r at sample size n:
///   splitmix64(base_seed + splitmix64(c)),  c = (n+r)(n+r+1)/2 + r.
/// c is the Cantor pairing of (n, r), so seeds are pairwise distinct for a
/// fixed base seed.
std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t n, std::size_t r);

/// Monte Carlo summary of one estimator of one parameter at one n, over the
/// successful replications.
struct EstimatorRow {
    std::string param;
    std::size_t n;
    Method estimator;
    double mean;
    double bias;
    double mse;
    double rmse;
    /// Standard error of `mean` across replications.
    double mc_se;
};

/// Fraction of successful replications whose MLE Wald interval at `level`
/// contains the true value.
struct CoverageRow {
    std::string param;
    std::size_t n;
    double level;
    double coverage;
    double mean_lo;
    double mean_hi;
};

struct FailureCount {
    std::size_t n;
    std::size_t failed;
};

/// Estimates of theta from every successful replication, in replication
/// order.
struct ThetaDraws {
    std::size_t n;
    Method estimator;
    std::vector<double> values;
};

struct SimulationTable {
    ModelKind model = ModelKind::ULZI;
    std::size_t replications = 0;
    std::vector<EstimatorRow> estimators;
    std::vector<CoverageRow> coverage;
    std::vector<FailureCount> failures;
    std::vector<ThetaDraws> theta_draws;

    std::size_t failed_at(std::size_t n) const;
};

/// Draws every replication, fits MLE, BCMLE and CME, and tabulates both the
/// bias rows and the coverage rows. Samples violating the fit
/// preconditions are counted as failures and excluded. Throws
/// EstimationError when every replication at some n fails.
SimulationTable run_study(const SimulationSpec& spec);

/// run_study restricted to the estimator rows.
SimulationTable run_bias_study(const SimulationSpec& spec);

/// run_study restricted to the coverage rows.
SimulationTable run_coverage_study(const SimulationSpec& spec);

enum class TableFormat { Text, Csv };

/// CSV columns: model, param, n, estimator, mean, bias, mse, rmse,
/// coverage_level, coverage, failures. Estimator rows leave the coverage
/// columns empty and coverage rows leave mean..rmse empty.
std::string emit_table(const SimulationTable& table, TableFormat format);

/// One CSV row of emit_table.
struct TableRecord {
    std::string model;
    std::string param;
    std::size_t n = 0;
    std::string estimator;
    std::optional<double> mean;
    std::optional<double> bias;
    std::optional<double> mse;
    std::optional<double> rmse;
    std::optional<double> coverage_level;
    std::optional<double> coverage;
    std::size_t failures = 0;

    bool operator==(const TableRecord&) const = default;
};

std::vector<TableRecord> table_records(const SimulationTable& table);

/// Parses the CSV form of emit_table. Throws DataError on a malformed line.
std::vector<TableRecord> read_table_csv(const std::string& csv);

/// Gaussian kernel density (Silverman bandwidth) of each ThetaDraws set on
/// `grid_points` equally spaced points spanning the draws. CSV columns
/// n, estimator, theta, density.
std::string theta_density_csv(const SimulationTable& table, std::size_t grid_points = 200);

}  // namespace ulindley
