#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace elastica {

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

using Sample = std::vector<Point>;

/// Ordinary least squares y = intercept + slope * x with diagnostics.
struct RegressionReport {
    double intercept = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;  // 1 - SS_R/SS; 0 when SS == 0
    double se = 0.0;         // sqrt(SS_R / n), no degrees-of-freedom correction
    double s = 0.0;          // sqrt(SS_R / (n - 2)), used for intervals
    double f_stat = 0.0;     // (SS - SS_R) / (SS_R / (n - 2))
    double f_literal = 0.0;  // (SS / (n - 1)) / (SS_R / (n - 2))
    double p_value = 1.0;    // P(F(1, n-2) > f_stat)
    std::optional<double> durbin_watson;  // absent when every residual is zero
    std::vector<double> residuals;        // in sample order
    std::size_t n = 0;
    double x_mean = 0.0;
    double y_mean = 0.0;
    double sxx = 0.0;
    double ss_total = 0.0;
    double ss_resid = 0.0;

    double predict(double x) const noexcept { return intercept + slope * x; }
};

/// Requires n >= 3 and at least two distinct x values (ContractError).
RegressionReport linfit(std::span<const Point> sample);

/// sum (e_t - e_{t-1})^2 / sum e_t^2. Needs length >= 2 (ContractError);
/// throws UndefinedStatistic when all residuals are zero.
double durbin_watson(std::span<const double> residuals);

double pearson_r(std::span<const Point> sample);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

/// Confidence limits for the mean response at x:
/// yhat(x) -/+ t_{(1+level)/2, n-2} * s * sqrt(1/n + (x - xbar)^2 / Sxx).
Interval confidence_band(const RegressionReport& report, double x, double level);

/// slope -/+ t_{(1+level)/2, n-2} * s / sqrt(Sxx).
Interval slope_interval(const RegressionReport& report, double level);

/// z_i = y_i - min over NN(x_i, k) of y_j.
///
/// NN(x_i, k) is the window of the k points ending at i when the sample is
/// ordered by (x, original index): the point itself and the k-1 points just
/// below it. Fewer than k are used near the bottom of the range.
Sample nn_spread_z(std::span<const Point> sample, std::size_t k);

/// w_i = max - min of y over NN(x_i, k), same neighbourhood as nn_spread_z.
Sample nn_spread_w(std::span<const Point> sample, std::size_t k);

/// Linear fit of w^2 on x; the spread model is W(x) = sqrt(max(0, fit(x))).
struct SqrtModel {
    RegressionReport fit;
    double predict(double x) const noexcept;
};

/// Throws ContractError if some w is negative.
SqrtModel sqrt_model_fit(std::span<const Point> sample);

struct HistogramTable {
    double lower = 0.0;
    double width = 1.0;
    std::vector<std::size_t> counts;
};

/// Equal-width bins spanning [min, max]; the maximum lands in the last bin.
HistogramTable histogram(std::span<const double> values, std::size_t bins);

/// Mann-Kendall trend test on a series in index order.
struct TrendTest {
    long long s = 0;                // sum of sign(v_j - v_i) over i < j
    double p_increasing = 1.0;      // one-sided P(S >= s) under no trend
};

/// Exact null distribution of S when there are no ties and n <= 60, normal
/// approximation with continuity and tie corrections otherwise.
TrendTest mann_kendall(std::span<const double> series);

}  // namespace elastica
