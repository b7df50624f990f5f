#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ulindley {

/// A validated dataset on [0,1] with the statistics every estimator needs.
///
/// Atom membership is exact: a value is a zero iff it equals 0.0 and a one
/// iff it equals 1.0. Everything else is interior.
class ProportionSample {
public:
    /// Validates and caches. Throws DataError (carrying the offending index)
    /// for values outside [0,1] or NaN, and for an empty list.
    explicit ProportionSample(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    /// Values in nondecreasing order.
    std::span<const double> sorted() const noexcept { return sorted_; }

    std::size_t n() const noexcept { return values_.size(); }
    std::size_t zeros() const noexcept { return n0_; }
    std::size_t ones() const noexcept { return n1_; }
    std::size_t interior() const noexcept { return m_; }

    /// S = sum y/(1-y) over interior values.
    double odds_sum() const noexcept { return odds_sum_; }
    /// L = sum log(1-y) over interior values.
    double log_complement_sum() const noexcept { return log1m_sum_; }
    /// sum log y over interior values.
    double log_sum() const noexcept { return log_sum_; }
    /// sum y over interior values.
    double interior_sum() const noexcept { return interior_sum_; }
    /// sum y^2 over interior values.
    double interior_square_sum() const noexcept { return interior_sq_sum_; }

private:
    std::vector<double> values_;
    std::vector<double> sorted_;
    std::size_t n0_ = 0;
    std::size_t n1_ = 0;
    std::size_t m_ = 0;
    double odds_sum_ = 0.0;
    double log1m_sum_ = 0.0;
    double log_sum_ = 0.0;
    double interior_sum_ = 0.0;
    double interior_sq_sum_ = 0.0;
};

inline bool is_interior(double y) noexcept { return y > 0.0 && y < 1.0; }

}  // namespace ulindley
