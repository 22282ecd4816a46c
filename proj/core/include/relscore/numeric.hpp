#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace relscore {

/// Neumaier-compensated accumulator. All score/accuracy aggregates go
/// through this so reported means are stable to well past 10 significant
/// digits regardless of accumulation order.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) noexcept {
    CompensatedSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

inline double compensated_mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("compensated_mean: empty sequence");
    return compensated_sum(xs) / static_cast<double>(xs.size());
}

}  // namespace relscore
