#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elastica/campaign.hpp"
#include "elastica/stats.hpp"

namespace elastica {

struct AnalysisOptions {
    std::size_t k = 7;
    double level = 0.95;
    std::size_t histogram_bins = 20;
    std::size_t band_points = 50;
    std::size_t deciles = 10;
    std::size_t system_bytes = 6345;  // serialized description length behind m_ratio
};

/// A regression together with the sample it was fitted on.
struct FitResult {
    Sample sample;
    RegressionReport fit;
};

struct BandRow {
    double x = 0.0;
    double fit = 0.0;
    double lower = 0.0;
    double upper = 0.0;
};

struct DecileRow {
    std::size_t count = 0;
    double m_low = 0.0;
    double m_high = 0.0;
    double mean_freq = 0.0;
    double spread = 0.0;  // sample standard deviation of freq_ones
};

struct EntropyRow {
    double p = 0.0;
    double m_ratio = 0.0;
    double bits_per_char = 0.0;
    double entropy = 0.0;
};

struct AnalysisReport {
    std::size_t with_input_records = 0;
    std::size_t no_input_records = 0;

    std::optional<FitResult> y_on_x;        // O on M, with input
    std::optional<FitResult> no_input;      // O on M, no input
    std::optional<double> no_input_r;
    std::optional<Interval> no_input_slope_ci;
    std::optional<FitResult> z_on_x;        // sample holds (M, z)
    std::optional<FitResult> w2_on_x;       // sample holds (M, w); fit is on w^2
    std::optional<FitResult> w2_on_xprime;  // sample holds (X', w); fit is on w^2

    std::vector<BandRow> band;              // confidence band around y_on_x
    std::vector<DecileRow> deciles;         // freq_ones by M decile, with input
    std::optional<TrendTest> decile_trend;  // Mann-Kendall on the decile spreads
    std::vector<EntropyRow> entropy_rows;
    double entropy_bound_fraction = 0.0;    // share of rows with bits_per_char >= H(p)
};

/// Splits records by with_input and runs every sub-analysis that has enough
/// data (at least three usable points with two distinct x). Records with a
/// null freq_ones/x_prime are left out of the fits that need those fields.
/// Input order does not matter: records are sorted by trial id first.
AnalysisReport analyze(std::vector<TrialRecord> records, const AnalysisOptions& options = {});

/// "key = value" lines for one regression.
std::string format_regression(const std::string& name, const RegressionReport& report);

std::string regression_csv_header();
std::string regression_csv_row(const std::string& name, const RegressionReport& report);

/// Writes report.txt, regressions.csv, one .tsv per figure table and an .svg
/// rendering of each. Throws IoError on write failure.
void write_analysis(const AnalysisReport& report, const AnalysisOptions& options, const std::filesystem::path& dir);

/// Scatter renderings straight from records, no fitting.
void write_scatter_plots(std::span<const TrialRecord> records, const std::filesystem::path& dir);

}  // namespace elastica
