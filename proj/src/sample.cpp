#include "ulindley/sample.hpp"

#include "ulindley/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ulindley {

ProportionSample::ProportionSample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw DataError("sample is empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double y = values_[i];
        if (!(y >= 0.0 && y <= 1.0)) {
            throw DataError("value " + std::to_string(y) + " at index " + std::to_string(i) +
                                " is outside [0,1]",
                            i);
        }
        if (y == 0.0) {
            ++n0_;
        } else if (y == 1.0) {
            ++n1_;
        } else {
            ++m_;
            const double one_minus = 1.0 - y;
            odds_sum_ += y / one_minus;
            log1m_sum_ += std::log1p(-y);
            log_sum_ += std::log(y);
            interior_sum_ += y;
            interior_sq_sum_ += y * y;
        }
    }
    sorted_ = values_;
    std::sort(sorted_.begin(), sorted_.end());
}

}  // namespace ulindley
