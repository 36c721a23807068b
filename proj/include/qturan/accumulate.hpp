#pragma once

#include <cmath>
#include <limits>

namespace qturan {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Neumaier (improved Kahan-Babuska) summation.
///
/// The running compensation captures the low-order bits lost in each addition,
/// including the case where the addend is larger than the running sum.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double initial) : sum_(initial) {}

    void add(double value) noexcept
    {
        double const t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value)) {
            comp_ += (sum_ - t) + value;
        } else {
            comp_ += (value - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double value) noexcept
    {
        add(value);
        return *this;
    }

    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Running product kept as an unevaluated sum hi + lo.
///
/// Each multiplication splits hi * f exactly with an fma; the rounding residue is
/// folded into lo, so the product drifts far less than a naive loop.
class CompensatedProduct {
public:
    CompensatedProduct() = default;
    explicit CompensatedProduct(double initial) : hi_(initial) {}

    void multiply(double factor) noexcept
    {
        double const p = hi_ * factor;
        double const err = std::fma(hi_, factor, -p);
        lo_ = lo_ * factor + err;
        hi_ = p;
    }

    CompensatedProduct& operator*=(double factor) noexcept
    {
        multiply(factor);
        return *this;
    }

    [[nodiscard]] double value() const noexcept { return hi_ + lo_; }

private:
    double hi_ = 1.0;
    double lo_ = 0.0;
};

} // namespace qturan
