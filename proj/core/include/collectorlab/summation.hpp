#pragma once

#include <cmath>

namespace collectorlab {

// Neumaier's variant of Kahan summation. Handles terms larger than the
// running sum, which plain Kahan does not.
template <class Real>
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(Real initial) : sum_(initial) {}

    void add(Real x) noexcept {
        const Real t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            compensation_ += (sum_ - t) + x;
        } else {
            compensation_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(Real x) noexcept {
        add(x);
        return *this;
    }

    Real value() const noexcept { return sum_ + compensation_; }

private:
    Real sum_{0};
    Real compensation_{0};
};

}  // namespace collectorlab
