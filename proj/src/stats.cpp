#include "elastica/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "elastica/distributions.hpp"
#include "elastica/error.hpp"

namespace elastica {

using detail::require;

RegressionReport linfit(std::span<const Point> sample) {
    const std::size_t n = sample.size();
    require(n >= 3, "regression needs at least three points");

    RegressionReport r;
    r.n = n;
    const double nd = static_cast<double>(n);
    for (const auto& p : sample) {
        r.x_mean += p.x;
        r.y_mean += p.y;
    }
    r.x_mean /= nd;
    r.y_mean /= nd;

    double sxy = 0.0;
    for (const auto& p : sample) {
        const double dx = p.x - r.x_mean;
        const double dy = p.y - r.y_mean;
        r.sxx += dx * dx;
        sxy += dx * dy;
        r.ss_total += dy * dy;
    }
    require(r.sxx > 0.0, "regression needs at least two distinct x values");

    r.slope = sxy / r.sxx;
    r.intercept = r.y_mean - r.slope * r.x_mean;
    r.residuals.reserve(n);
    for (const auto& p : sample) {
        const double e = p.y - r.predict(p.x);
        r.residuals.push_back(e);
        r.ss_resid += e * e;
    }

    const double df_resid = nd - 2.0;
    r.r_squared = r.ss_total > 0.0 ? std::clamp(1.0 - r.ss_resid / r.ss_total, 0.0, 1.0) : 0.0;
    r.se = std::sqrt(r.ss_resid / nd);
    r.s = std::sqrt(r.ss_resid / df_resid);

    const double ss_reg = std::max(0.0, r.ss_total - r.ss_resid);
    if (r.ss_resid > 0.0) {
        const double ms_resid = r.ss_resid / df_resid;
        r.f_stat = ss_reg / ms_resid;
        r.f_literal = (r.ss_total / (nd - 1.0)) / ms_resid;
        r.p_value = f_survival(r.f_stat, 1.0, df_resid);
    } else if (ss_reg > 0.0) {
        r.f_stat = r.f_literal = std::numeric_limits<double>::infinity();
        r.p_value = 0.0;
    } else {
        r.f_stat = r.f_literal = 0.0;
        r.p_value = 1.0;
    }

    const bool all_zero = std::all_of(r.residuals.begin(), r.residuals.end(), [](double e) { return e == 0.0; });
    if (!all_zero) r.durbin_watson = durbin_watson(r.residuals);
    return r;
}

double durbin_watson(std::span<const double> residuals) {
    require(residuals.size() >= 2, "Durbin-Watson needs at least two residuals");
    double num = 0.0;
    double den = residuals[0] * residuals[0];
    for (std::size_t t = 1; t < residuals.size(); ++t) {
        const double d = residuals[t] - residuals[t - 1];
        num += d * d;
        den += residuals[t] * residuals[t];
    }
    if (den == 0.0) throw UndefinedStatistic("Durbin-Watson is undefined for all-zero residuals");
    return num / den;
}

double pearson_r(std::span<const Point> sample) {
    require(sample.size() >= 2, "correlation needs at least two points");
    double mx = 0.0;
    double my = 0.0;
    for (const auto& p : sample) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(sample.size());
    my /= static_cast<double>(sample.size());
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (const auto& p : sample) {
        sxy += (p.x - mx) * (p.y - my);
        sxx += (p.x - mx) * (p.x - mx);
        syy += (p.y - my) * (p.y - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw UndefinedStatistic("correlation is undefined for a constant variable");
    return sxy / std::sqrt(sxx * syy);
}

Interval confidence_band(const RegressionReport& report, double x, double level) {
    require(level > 0.0 && level < 1.0, "confidence level must lie in (0, 1)");
    require(report.n >= 3 && report.sxx > 0.0, "band needs a fitted report");
    const double t = t_quantile((1.0 + level) / 2.0, static_cast<double>(report.n) - 2.0);
    const double dx = x - report.x_mean;
    const double half = t * report.s * std::sqrt(1.0 / static_cast<double>(report.n) + dx * dx / report.sxx);
    const double yhat = report.predict(x);
    return {yhat - half, yhat + half};
}

Interval slope_interval(const RegressionReport& report, double level) {
    require(level > 0.0 && level < 1.0, "confidence level must lie in (0, 1)");
    require(report.n >= 3 && report.sxx > 0.0, "interval needs a fitted report");
    const double t = t_quantile((1.0 + level) / 2.0, static_cast<double>(report.n) - 2.0);
    const double half = t * report.s / std::sqrt(report.sxx);
    return {report.slope - half, report.slope + half};
}

namespace {

/// For each point, (min, max) of y over its one-sided k-window.
std::vector<std::pair<double, double>> window_extrema(std::span<const Point> sample, std::size_t k) {
    require(k >= 1, "neighbourhood size k must be at least 1");
    std::vector<std::size_t> order(sample.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sample[a].x < sample[b].x; });

    std::vector<std::pair<double, double>> out(sample.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        const std::size_t first = r + 1 >= k ? r + 1 - k : 0;
        double lo = sample[order[r]].y;
        double hi = lo;
        for (std::size_t q = first; q < r; ++q) {
            lo = std::min(lo, sample[order[q]].y);
            hi = std::max(hi, sample[order[q]].y);
        }
        out[order[r]] = {lo, hi};
    }
    return out;
}

}  // namespace

Sample nn_spread_z(std::span<const Point> sample, std::size_t k) {
    const auto ext = window_extrema(sample, k);
    Sample out(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) out[i] = {sample[i].x, sample[i].y - ext[i].first};
    return out;
}

Sample nn_spread_w(std::span<const Point> sample, std::size_t k) {
    const auto ext = window_extrema(sample, k);
    Sample out(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) out[i] = {sample[i].x, ext[i].second - ext[i].first};
    return out;
}

double SqrtModel::predict(double x) const noexcept { return std::sqrt(std::max(0.0, fit.predict(x))); }

SqrtModel sqrt_model_fit(std::span<const Point> sample) {
    Sample squared;
    squared.reserve(sample.size());
    for (const auto& p : sample) {
        require(p.y >= 0.0, "spread values must be non-negative");
        squared.push_back({p.x, p.y * p.y});
    }
    return SqrtModel{linfit(squared)};
}

HistogramTable histogram(std::span<const double> values, std::size_t bins) {
    require(bins >= 1, "histogram needs at least one bin");
    require(!values.empty(), "histogram needs at least one value");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    HistogramTable h;
    h.lower = *lo_it;
    const double span = *hi_it - *lo_it;
    h.width = span > 0.0 ? span / static_cast<double>(bins) : 1.0;
    h.counts.assign(bins, 0);
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - h.lower) / h.width);
        ++h.counts[std::min(b, bins - 1)];
    }
    return h;
}

TrendTest mann_kendall(std::span<const double> series) {
    const std::size_t n = series.size();
    require(n >= 2, "trend test needs at least two values");
    TrendTest out;
    bool ties = false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (series[j] > series[i]) ++out.s;
            if (series[j] < series[i]) --out.s;
            if (series[j] == series[i]) ties = true;
        }
    }

    const long long pairs = static_cast<long long>(n * (n - 1) / 2);
    if (!ties && n <= 60) {
        // S = pairs - 2 * inversions; inversion counts follow the Mahonian law.
        std::vector<double> dist{1.0};
        for (std::size_t m = 2; m <= n; ++m) {
            std::vector<double> next(dist.size() + m - 1, 0.0);
            for (std::size_t i = 0; i < dist.size(); ++i) {
                for (std::size_t j = 0; j < m; ++j) next[i + j] += dist[i] / static_cast<double>(m);
            }
            dist = std::move(next);
        }
        const auto max_inv = static_cast<std::size_t>((pairs - out.s) / 2);
        double p = 0.0;
        for (std::size_t i = 0; i <= max_inv && i < dist.size(); ++i) p += dist[i];
        out.p_increasing = std::min(1.0, p);
        return out;
    }

    std::map<double, std::size_t> groups;
    for (double v : series) ++groups[v];
    const double nd = static_cast<double>(n);
    double var = nd * (nd - 1.0) * (2.0 * nd + 5.0);
    for (const auto& [value, count] : groups) {
        const double t = static_cast<double>(count);
        var -= t * (t - 1.0) * (2.0 * t + 5.0);
    }
    var /= 18.0;
    if (var <= 0.0) {
        out.p_increasing = 1.0;
        return out;
    }
    const double sd = static_cast<double>(out.s);
    const double z = sd > 0 ? (sd - 1.0) / std::sqrt(var) : sd < 0 ? (sd + 1.0) / std::sqrt(var) : 0.0;
    out.p_increasing = 0.5 * std::erfc(z / std::sqrt(2.0));
    return out;
}

}  // namespace elastica
