// Regression and distribution code checked against independent oracles:
// a long-double normal-equations solver written here, Boost.Math for the
// special functions, and brute-force enumeration for the trend test.

#include <doctest.h>

#include <algorithm>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>
#include <random>

#include "elastica/distributions.hpp"
#include "elastica/error.hpp"
#include "elastica/rng.hpp"
#include "elastica/stats.hpp"
#include "oracles.hpp"

using namespace elastica;

namespace {

Sample random_sample(Xoshiro256& rng, std::size_t n) {
    std::normal_distribution<double> noise(0.0, 1.0);
    const double a = noise(rng) * 3.0;
    const double b = noise(rng) * 2.0;
    const double scale = 0.1 + rng.uniform() * 5.0;
    Sample s(n);
    for (auto& p : s) {
        p.x = rng.uniform() * 10.0 - 5.0;
        p.y = a + b * p.x + scale * noise(rng);
    }
    return s;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("linfit matches the normal-equations oracle on random samples") {
    Xoshiro256 rng(1);
    for (int i = 0; i < 100; ++i) {
        const Sample s = random_sample(rng, 3 + rng() % 500);
        const auto r = linfit(s);
        const auto o = oracles::normal_equations(s);
        CHECK(rel_close(r.slope, static_cast<double>(o.slope), 1e-10));
        CHECK(rel_close(r.intercept, static_cast<double>(o.intercept), 1e-10));
        CHECK(std::abs(r.r_squared - std::pow(pearson_r(s), 2)) < 1e-12);
        CHECK(std::abs(r.r_squared - (1.0 - r.ss_resid / r.ss_total)) < 1e-12);
        const double sum = std::accumulate(r.residuals.begin(), r.residuals.end(), 0.0);
        CHECK(std::abs(sum) < 1e-9);
    }
}

TEST_CASE("linfit small cases") {
    const auto line = linfit(Sample{{0, 0}, {1, 1}, {2, 2}});
    CHECK(line.slope == doctest::Approx(1.0));
    CHECK(line.intercept == doctest::Approx(0.0));
    CHECK(line.r_squared == 1.0);
    CHECK(line.p_value == 0.0);
    CHECK_FALSE(line.durbin_watson.has_value());

    const auto flat = linfit(Sample{{0, 1}, {1, 1}, {2, 1}});
    CHECK(flat.slope == 0.0);
    CHECK(flat.r_squared == 0.0);
    CHECK(flat.p_value == 1.0);

    CHECK_THROWS_AS(linfit(Sample{{0, 1}, {1, 2}}), ContractError);
    CHECK_THROWS_AS(linfit(Sample{{1, 1}, {1, 2}, {1, 3}}), ContractError);
}

TEST_CASE("diagnostic conventions") {
    Xoshiro256 rng(2);
    const Sample s = random_sample(rng, 60);
    const auto r = linfit(s);
    const double n = 60.0;
    CHECK(r.se == doctest::Approx(std::sqrt(r.ss_resid / n)).epsilon(1e-14));
    CHECK(r.s == doctest::Approx(std::sqrt(r.ss_resid / (n - 2))).epsilon(1e-14));
    CHECK(r.f_stat == doctest::Approx((r.ss_total - r.ss_resid) / (r.ss_resid / (n - 2))).epsilon(1e-12));
    CHECK(r.f_literal == doctest::Approx((r.ss_total / (n - 1)) / (r.ss_resid / (n - 2))).epsilon(1e-12));
    const boost::math::fisher_f f(1.0, n - 2);
    CHECK(std::abs(r.p_value - boost::math::cdf(boost::math::complement(f, r.f_stat))) < 1e-12);
    // With one regressor, F is the squared slope t statistic.
    const double t = r.slope / (r.s / std::sqrt(r.sxx));
    CHECK(r.f_stat == doctest::Approx(t * t).epsilon(1e-10));
}

TEST_CASE("scale and shift behaviour") {
    Xoshiro256 rng(3);
    const Sample s = random_sample(rng, 80);
    const auto base = linfit(s);
    for (double alpha : {-3.0, 0.25, 1e3}) {
        Sample scaled = s;
        for (auto& p : scaled) p.y *= alpha;
        const auto r = linfit(scaled);
        CHECK(rel_close(r.slope, alpha * base.slope, 1e-10));
        CHECK(rel_close(r.intercept, alpha * base.intercept, 1e-10));
        CHECK(rel_close(r.se, std::abs(alpha) * base.se, 1e-10));
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(rel_close(r.residuals[i], alpha * base.residuals[i], 1e-9));
        CHECK(std::abs(r.r_squared - base.r_squared) < 1e-10);
        CHECK(rel_close(r.f_stat, base.f_stat, 1e-10));
        CHECK(std::abs(r.p_value - base.p_value) < 1e-10);
        CHECK(std::abs(*r.durbin_watson - *base.durbin_watson) < 1e-10);
    }
    Sample shifted = s;
    for (auto& p : shifted) p.y += 17.5;
    const auto r = linfit(shifted);
    CHECK(std::abs(r.intercept - (base.intercept + 17.5)) < 1e-10);
    CHECK(std::abs(r.slope - base.slope) < 1e-10);
    CHECK(std::abs(r.r_squared - base.r_squared) < 1e-10);
}

TEST_CASE("Durbin-Watson") {
    CHECK(durbin_watson(std::vector<double>{1, -1, 1, -1}) == 3.0);
    CHECK(durbin_watson(std::vector<double>{1, 1, 1, 1}) == 0.0);
    CHECK_THROWS_AS(durbin_watson(std::vector<double>{0, 0, 0}), UndefinedStatistic);
    CHECK_THROWS_AS(durbin_watson(std::vector<double>{1}), ContractError);

    std::mt19937_64 gen(7);
    std::normal_distribution<double> noise;
    std::vector<double> e(10000);
    for (double& v : e) v = noise(gen);
    CHECK(std::abs(durbin_watson(e) - 2.0) < 0.1);
}

TEST_CASE("special functions against Boost.Math") {
    for (double d1 : {1.0, 2.0, 5.0, 30.0}) {
        for (double d2 : {1.0, 3.0, 10.0, 721.0, 1e5}) {
            const boost::math::fisher_f dist(d1, d2);
            for (double f : {0.0, 0.01, 0.5, 1.0, 2.0, 7.5, 40.0, 250.0}) {
                CAPTURE(d1);
                CAPTURE(d2);
                CAPTURE(f);
                CHECK(std::abs(f_survival(f, d1, d2) - boost::math::cdf(boost::math::complement(dist, f))) < 1e-9);
            }
        }
    }
    for (double df : {1.0, 2.0, 7.0, 28.0, 721.0, 1e6}) {
        const boost::math::students_t dist(df);
        for (double q : {0.001, 0.025, 0.3, 0.5, 0.8, 0.975, 0.9995}) {
            CAPTURE(df);
            CAPTURE(q);
            CHECK(std::abs(t_quantile(q, df) - boost::math::quantile(dist, q)) < 1e-9);
        }
        for (double t : {-30.0, -2.0, -0.1, 0.0, 1.3, 4.0}) {
            CHECK(std::abs(t_cdf(t, df) - boost::math::cdf(dist, t)) < 1e-9);
        }
    }
    for (double a : {0.5, 1.0, 3.5}) {
        for (double b : {0.5, 2.0, 360.0}) {
            for (double x : {0.0, 0.1, 0.5, 0.99, 1.0}) {
                CHECK(std::abs(incomplete_beta(a, b, x) - boost::math::ibeta(a, b, x)) < 1e-12);
            }
        }
    }
}

TEST_CASE("distribution limits and domain") {
    CHECK(std::abs(f_survival(1.0, 1.0, 1e7) - 0.3173105) < 1e-5);
    CHECK(std::abs(t_quantile(0.975, 1e6) - 1.959964) < 1e-4);
    for (double df : {1.0, 4.0, 1000.0}) CHECK(t_quantile(0.5, df) == 0.0);
    CHECK(t_quantile(0.1, 9.0) == doctest::Approx(-t_quantile(0.9, 9.0)).epsilon(1e-14));
    CHECK_THROWS_AS(f_survival(-1.0, 1.0, 2.0), ContractError);
    CHECK_THROWS_AS(t_quantile(1.0, 3.0), ContractError);
    CHECK_THROWS_AS(t_quantile(0.5, 0.0), ContractError);
}

TEST_CASE("confidence band against first principles") {
    Xoshiro256 rng(30);
    const Sample s = random_sample(rng, 30);
    const auto r = linfit(s);
    const boost::math::students_t dist(28.0);
    const double t = boost::math::quantile(dist, 0.975);
    double xbar = 0.0;
    for (const auto& p : s) xbar += p.x;
    xbar /= 30.0;
    double sxx = 0.0, ssr = 0.0;
    for (const auto& p : s) sxx += (p.x - xbar) * (p.x - xbar);
    for (const auto& p : s) ssr += std::pow(p.y - r.predict(p.x), 2);
    const double sd = std::sqrt(ssr / 28.0);

    double narrowest = 1e300;
    for (double x = -6.0; x <= 6.0; x += 0.25) {
        const auto band = confidence_band(r, x, 0.95);
        const double half = t * sd * std::sqrt(1.0 / 30.0 + (x - xbar) * (x - xbar) / sxx);
        CHECK(std::abs(band.lower - (r.predict(x) - half)) < 1e-8);
        CHECK(std::abs(band.upper - (r.predict(x) + half)) < 1e-8);
        narrowest = std::min(narrowest, band.upper - band.lower);
    }
    const auto centre = confidence_band(r, xbar, 0.95);
    CHECK(centre.upper - centre.lower <= narrowest + 1e-12);
    for (double d : {0.5, 2.0, 4.0}) {
        const auto left = confidence_band(r, xbar - d, 0.95);
        const auto right = confidence_band(r, xbar + d, 0.95);
        CHECK(std::abs((left.upper - left.lower) - (right.upper - right.lower)) < 1e-10);
    }

    const auto ci = slope_interval(r, 0.95);
    CHECK(std::abs(ci.lower - (r.slope - t * sd / std::sqrt(sxx))) < 1e-10);
    CHECK(std::abs(ci.upper - (r.slope + t * sd / std::sqrt(sxx))) < 1e-10);
}

TEST_CASE("nearest-neighbour spreads") {
    const Sample a{{1, 5}, {2, 3}, {3, 9}};
    CHECK(nn_spread_z(a, 2)[2].y == 6.0);
    CHECK(nn_spread_z(a, 2)[0].y == 0.0);
    const Sample b{{1, 0.2}, {2, 0.8}, {3, 0.5}};
    CHECK(nn_spread_w(b, 3)[2].y == doctest::Approx(0.6).epsilon(1e-15));

    Xoshiro256 rng(4);
    Sample s(200);
    for (auto& p : s) p = {std::floor(rng.uniform() * 40.0), rng.uniform()};  // many x ties
    for (const auto& p : nn_spread_z(s, 1)) CHECK(p.y == 0.0);
    Sample flat = s;
    for (auto& p : flat) p.y = 0.3;
    for (const auto& p : nn_spread_w(flat, 7)) CHECK(p.y == 0.0);

    const auto z = nn_spread_z(s, 7);
    const auto w = nn_spread_w(s, 7);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(z[i].x == s[i].x);
        CHECK(w[i].y >= z[i].y);
        CHECK(z[i].y >= 0.0);
    }

    // Brute force: the window of a point is itself plus up to k-1 points
    // preceding it in (x, index) order.
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<std::size_t> before;
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (s[j].x < s[i].x || (s[j].x == s[i].x && j < i)) before.push_back(j);
        }
        std::sort(before.begin(), before.end(), [&](std::size_t p, std::size_t q) {
            return s[p].x != s[q].x ? s[p].x > s[q].x : p > q;
        });
        double lo = s[i].y, hi = s[i].y;
        for (std::size_t m = 0; m < before.size() && m < 6; ++m) {
            lo = std::min(lo, s[before[m]].y);
            hi = std::max(hi, s[before[m]].y);
        }
        CHECK(z[i].y == s[i].y - lo);
        CHECK(w[i].y == hi - lo);
    }

    // Permutation covariance: shuffling points with distinct x permutes the output.
    Sample distinct(100);
    for (std::size_t i = 0; i < distinct.size(); ++i) distinct[i] = {rng.uniform(), rng.uniform()};
    std::vector<std::size_t> perm(distinct.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    Sample shuffled(distinct.size());
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled[i] = distinct[perm[i]];
    const auto wd = nn_spread_w(distinct, 7);
    const auto ws = nn_spread_w(shuffled, 7);
    for (std::size_t i = 0; i < perm.size(); ++i) CHECK(ws[i] == wd[perm[i]]);
}

TEST_CASE("square-root spread model") {
    Sample s;
    for (int i = 0; i < 50; ++i) {
        const double x = 0.022 + 0.001 * i;
        s.push_back({x, std::sqrt(-0.023 + 1.083 * x)});
    }
    const auto m = sqrt_model_fit(s);
    CHECK(std::abs(m.fit.intercept + 0.023) < 1e-10);
    CHECK(std::abs(m.fit.slope - 1.083) < 1e-10);
    CHECK(m.predict(0.0) == 0.0);
    CHECK(m.predict(0.05) == doctest::Approx(std::sqrt(1.083 * 0.05 - 0.023)).epsilon(1e-9));

    const auto c = sqrt_model_fit(Sample{{0, 0.3}, {1, 0.3}, {2, 0.3}, {5, 0.3}});
    CHECK(c.fit.intercept == doctest::Approx(0.09).epsilon(1e-14));
    CHECK(std::abs(c.fit.slope) < 1e-15);
    CHECK_THROWS_AS(sqrt_model_fit(Sample{{0, 0.1}, {1, -0.2}, {2, 0.3}}), ContractError);
}

TEST_CASE("histogram") {
    const std::vector<double> v{0.0, 0.1, 0.5, 0.9, 1.0, 1.0};
    const auto h = histogram(v, 4);
    CHECK(h.lower == 0.0);
    CHECK(h.width == 0.25);
    CHECK(h.counts == std::vector<std::size_t>{2, 0, 1, 3});
    const auto one = histogram(std::vector<double>{2.0, 2.0}, 3);
    CHECK(one.counts[0] == 2);
}

TEST_CASE("Mann-Kendall exact null against enumeration") {
    const std::size_t n = 7;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<long long> scores;
    do {
        long long s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) s += (perm[j] > perm[i]) - (perm[j] < perm[i]);
        }
        scores.push_back(s);
    } while (std::next_permutation(perm.begin(), perm.end()));

    const std::vector<double> probe{3, 1, 4, 0, 5, 6, 2};
    const auto test = mann_kendall(probe);
    const double expected = static_cast<double>(std::count_if(scores.begin(), scores.end(),
                                                              [&](long long s) { return s >= test.s; })) /
                            static_cast<double>(scores.size());
    CHECK(test.p_increasing == doctest::Approx(expected).epsilon(1e-12));

    std::vector<double> rising(10);
    std::iota(rising.begin(), rising.end(), 0.0);
    CHECK(mann_kendall(rising).s == 45);
    CHECK(mann_kendall(rising).p_increasing == doctest::Approx(1.0 / 3628800.0).epsilon(1e-9));
    std::reverse(rising.begin(), rising.end());
    CHECK(mann_kendall(rising).p_increasing == doctest::Approx(1.0).epsilon(1e-12));

    const auto tied = mann_kendall(std::vector<double>{1, 1, 2, 2, 3, 3, 4, 4});
    CHECK(tied.s == 24);
    CHECK(tied.p_increasing < 0.01);
    CHECK(mann_kendall(std::vector<double>{5, 5, 5}).p_increasing == 1.0);
}
