#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "elastica/analysis.hpp"
#include "elastica/rng.hpp"

using namespace elastica;

namespace {

std::vector<TrialRecord> synthetic(std::size_t n, bool with_input, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    std::vector<TrialRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
        TrialRecord r;
        r.trial_id = i;
        r.p = 1.0 - rng.uniform();
        r.with_input = with_input;
        r.m_ratio = 0.02 + 0.015 * rng.uniform();
        r.o_ratio = 0.3 - 4.0 * r.m_ratio;
        r.freq_ones = 0.5;
        r.subseq_len = 900;
        r.x_prime = 0.1 + rng.uniform() * 0.05;
        r.entropy_p = entropy(r.p);
        out.push_back(r);
    }
    return out;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("exact line gives a perfect fit") {
    const auto report = analyze(synthetic(50, true, 1));
    REQUIRE(report.y_on_x);
    CHECK(report.y_on_x->fit.slope == doctest::Approx(-4.0).epsilon(1e-9));
    CHECK(report.y_on_x->fit.intercept == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(report.y_on_x->fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.band.size() == 50);
    for (const auto& b : report.band) {
        CHECK(b.lower <= b.fit + 1e-12);
        CHECK(b.upper >= b.fit - 1e-12);
    }
}

TEST_CASE("constant frequency gives a flat spread fit") {
    const auto report = analyze(synthetic(80, true, 2));
    REQUIRE(report.w2_on_x);
    CHECK(std::abs(report.w2_on_x->fit.slope) < 1e-12);
    for (const auto& p : report.w2_on_x->sample) CHECK(p.y == 0.0);
    REQUIRE(report.w2_on_xprime);
    CHECK(std::abs(report.w2_on_xprime->fit.slope) < 1e-12);
    REQUIRE(report.deciles.size() == 10);
    for (const auto& d : report.deciles) {
        CHECK(d.mean_freq == 0.5);
        CHECK(d.spread == 0.0);
    }
}

TEST_CASE("missing no-input data leaves only that section absent") {
    const auto report = analyze(synthetic(40, true, 3));
    CHECK(report.y_on_x);
    CHECK(report.z_on_x);
    CHECK_FALSE(report.no_input);
    CHECK_FALSE(report.no_input_r);
    CHECK(report.no_input_records == 0);

    const auto only_none = analyze(synthetic(40, false, 4));
    CHECK(only_none.no_input);
    CHECK_FALSE(only_none.y_on_x);
    CHECK(only_none.deciles.empty());
    CHECK_FALSE(only_none.decile_trend);

    auto two = synthetic(2, true, 5);
    CHECK_FALSE(analyze(two).y_on_x);
}

TEST_CASE("null frequencies are excluded from the frequency fits") {
    auto records = synthetic(30, true, 6);
    for (std::size_t i = 0; i < 10; ++i) {
        records[i].freq_ones.reset();
        records[i].x_prime.reset();
    }
    const auto report = analyze(records);
    REQUIRE(report.y_on_x);
    CHECK(report.y_on_x->fit.n == 30);
    REQUIRE(report.w2_on_x);
    CHECK(report.w2_on_x->fit.n == 20);
    CHECK(report.w2_on_xprime->fit.n == 20);
}

TEST_CASE("record order does not matter") {
    auto records = synthetic(60, true, 7);
    Xoshiro256 rng(8);
    for (auto& r : records) r.o_ratio += 0.01 * rng.uniform();
    auto none = synthetic(40, false, 9);
    for (auto& r : none) {
        r.trial_id += 1000;
        r.o_ratio = 0.14 + 0.01 * rng.uniform();
    }
    records.insert(records.end(), none.begin(), none.end());
    const auto a = analyze(records);
    std::shuffle(records.begin(), records.end(), rng);
    const auto b = analyze(records);
    CHECK(a.y_on_x->fit.slope == b.y_on_x->fit.slope);
    CHECK(a.no_input->fit.slope == b.no_input->fit.slope);
    CHECK(a.z_on_x->sample == b.z_on_x->sample);
}

TEST_CASE("entropy rows") {
    const auto records = synthetic(20, true, 10);
    const auto report = analyze(records);
    REQUIRE(report.entropy_rows.size() == 20);
    for (std::size_t i = 0; i < 20; ++i) {
        CHECK(report.entropy_rows[i].bits_per_char ==
              doctest::Approx(records[i].m_ratio * 6345 * 8 / 345.0).epsilon(1e-14));
        CHECK(report.entropy_rows[i].entropy == records[i].entropy_p);
    }
}

TEST_CASE("report files") {
    auto records = synthetic(50, true, 11);
    auto none = synthetic(30, false, 12);
    Xoshiro256 rng(13);
    for (auto& r : none) {
        r.trial_id += 100;
        r.o_ratio = 0.14 + 0.01 * rng.uniform();
    }
    records.insert(records.end(), none.begin(), none.end());
    const AnalysisOptions options;
    const auto report = analyze(records, options);
    const auto dir = std::filesystem::temp_directory_path() / "elastica_analysis_test";
    std::filesystem::remove_all(dir);
    write_analysis(report, options, dir);
    write_scatter_plots(records, dir);

    const std::string text = slurp(dir / "report.txt");
    CHECK(text.find("[output_on_system]") != std::string::npos);
    CHECK(text.find("r_squared = 1") != std::string::npos);
    CHECK(text.find("[output_on_system_no_input]") != std::string::npos);
    const std::string csv = slurp(dir / "regressions.csv");
    CHECK(csv.rfind(regression_csv_header() + "\n", 0) == 0);
    for (const char* name : {"output_vs_system.tsv", "output_band.tsv", "output_residuals.tsv", "spread_z.tsv",
                             "spread_w.tsv", "spread_w_xprime.tsv", "freq_deciles.tsv", "entropy_vs_p.tsv",
                             "output_vs_system.svg", "output_band.svg", "spread_z.svg", "spread_w.svg",
                             "scatter_output_vs_system.svg"}) {
        CAPTURE(name);
        CHECK(std::filesystem::exists(dir / name));
    }
    const std::string svg = slurp(dir / "output_band.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("absent sections are marked in the report") {
    const AnalysisOptions options;
    const auto report = analyze(synthetic(30, true, 14), options);
    const auto dir = std::filesystem::temp_directory_path() / "elastica_analysis_partial";
    std::filesystem::remove_all(dir);
    write_analysis(report, options, dir);
    const std::string text = slurp(dir / "report.txt");
    CHECK(text.find("[output_on_system_no_input]\nabsent = insufficient data\n") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("regression text block") {
    const auto fit = linfit(Sample{{0, 1}, {1, 3}, {2, 5.5}, {3, 7}});
    const std::string text = format_regression("demo", fit);
    CHECK(text.rfind("[demo]\n", 0) == 0);
    for (const char* key : {"slope = ", "intercept = ", "r_squared = ", "se = ", "f_stat = ", "p_value = ",
                            "durbin_watson = "}) {
        CHECK(text.find(key) != std::string::npos);
    }
    const std::string row = regression_csv_row("demo", fit);
    const std::string header = regression_csv_header();
    CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
}
