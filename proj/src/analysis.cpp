#include "elastica/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "elastica/complexity.hpp"
#include "elastica/error.hpp"
#include "elastica/forcing.hpp"
#include "elastica/svg.hpp"

namespace elastica {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

bool fittable(const Sample& s) {
    if (s.size() < 3) return false;
    return std::any_of(s.begin(), s.end(), [&](const Point& p) { return p.x != s.front().x; });
}

std::optional<FitResult> try_fit(Sample sample) {
    if (!fittable(sample)) return std::nullopt;
    RegressionReport fit = linfit(sample);
    return FitResult{std::move(sample), std::move(fit)};
}

std::optional<FitResult> try_sqrt_fit(Sample sample) {
    if (!fittable(sample)) return std::nullopt;
    RegressionReport fit = sqrt_model_fit(sample).fit;
    return FitResult{std::move(sample), std::move(fit)};
}

double sample_sd(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

AnalysisReport analyze(std::vector<TrialRecord> records, const AnalysisOptions& options) {
    detail::require(options.k >= 1, "neighbourhood size k must be at least 1");
    std::stable_sort(records.begin(), records.end(),
                     [](const TrialRecord& a, const TrialRecord& b) { return a.trial_id < b.trial_id; });

    AnalysisReport out;
    Sample y_on_x;
    Sample none;
    Sample freq;
    Sample freq_xprime;
    for (const auto& r : records) {
        if (r.with_input) {
            ++out.with_input_records;
            y_on_x.push_back({r.m_ratio, r.o_ratio});
            if (r.freq_ones) freq.push_back({r.m_ratio, *r.freq_ones});
            if (r.freq_ones && r.x_prime) freq_xprime.push_back({*r.x_prime, *r.freq_ones});
            const double bpc = bits_per_character(ComplexityReport{options.system_bytes, 0, r.m_ratio});
            out.entropy_rows.push_back({r.p, r.m_ratio, bpc, entropy(r.p)});
        } else {
            ++out.no_input_records;
            none.push_back({r.m_ratio, r.o_ratio});
        }
    }

    out.y_on_x = try_fit(y_on_x);
    if (out.y_on_x) {
        const auto [lo, hi] = std::minmax_element(y_on_x.begin(), y_on_x.end(),
                                                  [](const Point& a, const Point& b) { return a.x < b.x; });
        const std::size_t steps = std::max<std::size_t>(options.band_points, 2);
        for (std::size_t i = 0; i < steps; ++i) {
            const double x = lo->x + (hi->x - lo->x) * static_cast<double>(i) / static_cast<double>(steps - 1);
            const Interval band = confidence_band(out.y_on_x->fit, x, options.level);
            out.band.push_back({x, out.y_on_x->fit.predict(x), band.lower, band.upper});
        }
        out.z_on_x = try_fit(nn_spread_z(y_on_x, options.k));
    }

    out.no_input = try_fit(none);
    if (out.no_input) {
        out.no_input_slope_ci = slope_interval(out.no_input->fit, options.level);
        try {
            out.no_input_r = pearson_r(none);
        } catch (const UndefinedStatistic&) {
        }
    }

    out.w2_on_x = try_sqrt_fit(nn_spread_w(freq, options.k));
    out.w2_on_xprime = try_sqrt_fit(nn_spread_w(freq_xprime, options.k));

    if (freq.size() >= options.deciles && options.deciles >= 2) {
        Sample ordered = freq;
        std::stable_sort(ordered.begin(), ordered.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
        std::vector<double> spreads;
        for (std::size_t d = 0; d < options.deciles; ++d) {
            const std::size_t first = ordered.size() * d / options.deciles;
            const std::size_t last = ordered.size() * (d + 1) / options.deciles;
            std::vector<double> ys;
            double mean = 0.0;
            for (std::size_t i = first; i < last; ++i) {
                ys.push_back(ordered[i].y);
                mean += ordered[i].y;
            }
            DecileRow row;
            row.count = ys.size();
            row.m_low = ordered[first].x;
            row.m_high = ordered[last - 1].x;
            row.mean_freq = mean / static_cast<double>(ys.size());
            row.spread = sample_sd(ys);
            spreads.push_back(row.spread);
            out.deciles.push_back(row);
        }
        out.decile_trend = mann_kendall(spreads);
    }

    if (!out.entropy_rows.empty()) {
        const auto above = std::count_if(out.entropy_rows.begin(), out.entropy_rows.end(),
                                         [](const EntropyRow& e) { return e.bits_per_char >= e.entropy; });
        out.entropy_bound_fraction = static_cast<double>(above) / static_cast<double>(out.entropy_rows.size());
    }
    return out;
}

std::string format_regression(const std::string& name, const RegressionReport& r) {
    std::ostringstream o;
    o << "[" << name << "]\n";
    o << "n = " << r.n << "\n";
    o << "intercept = " << fmt(r.intercept) << "\n";
    o << "slope = " << fmt(r.slope) << "\n";
    o << "r_squared = " << fmt(r.r_squared) << "\n";
    o << "se = " << fmt(r.se) << "\n";
    o << "s = " << fmt(r.s) << "\n";
    o << "f_stat = " << fmt(r.f_stat) << "\n";
    o << "f_df = 1," << (r.n - 2) << "\n";
    o << "f_literal = " << fmt(r.f_literal) << "\n";
    o << "p_value = " << fmt(r.p_value) << "\n";
    o << "durbin_watson = " << (r.durbin_watson ? fmt(*r.durbin_watson) : std::string("undefined")) << "\n";
    return o.str();
}

std::string regression_csv_header() {
    return "name,n,intercept,slope,r_squared,se,s,f_stat,f_literal,p_value,durbin_watson";
}

std::string regression_csv_row(const std::string& name, const RegressionReport& r) {
    return name + ',' + std::to_string(r.n) + ',' + fmt(r.intercept) + ',' + fmt(r.slope) + ',' + fmt(r.r_squared) +
           ',' + fmt(r.se) + ',' + fmt(r.s) + ',' + fmt(r.f_stat) + ',' + fmt(r.f_literal) + ',' + fmt(r.p_value) +
           ',' + (r.durbin_watson ? fmt(*r.durbin_watson) : std::string());
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

std::string table(const std::string& header, const std::vector<std::vector<double>>& rows) {
    std::string out = header + "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += '\t';
            out += fmt(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string points_table(const std::string& header, const Sample& s) {
    std::vector<std::vector<double>> rows;
    for (const auto& p : s) rows.push_back({p.x, p.y});
    return table(header, rows);
}

std::vector<Point> fit_line(const Sample& s, const RegressionReport& fit, bool sqrt_scale = false) {
    const auto [lo, hi] =
        std::minmax_element(s.begin(), s.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
    std::vector<Point> line;
    for (int i = 0; i <= 40; ++i) {
        const double x = lo->x + (hi->x - lo->x) * i / 40.0;
        const double y = fit.predict(x);
        line.push_back({x, sqrt_scale ? std::sqrt(std::max(0.0, y)) : y});
    }
    return line;
}

void write_histogram(const std::filesystem::path& dir, const std::string& stem, const std::string& title,
                     const std::vector<double>& residuals, std::size_t bins) {
    if (residuals.empty()) return;
    const HistogramTable h = histogram(residuals, bins);
    std::vector<std::vector<double>> rows;
    svg::Series bars{"", svg::Style::Bars, "#4c72b0", {}, h.width};
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        const double left = h.lower + h.width * static_cast<double>(i);
        rows.push_back({left, left + h.width, static_cast<double>(h.counts[i])});
        bars.points.push_back({left, static_cast<double>(h.counts[i])});
    }
    write_text(dir / (stem + ".tsv"), table("bin_low\tbin_high\tcount", rows));
    write_text(dir / (stem + ".svg"), svg::render({title, "residual", "count", {bars}}));
}

}  // namespace

void write_analysis(const AnalysisReport& report, const AnalysisOptions& options, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create report directory " + dir.string() + ": " + ec.message());

    std::ostringstream text;
    std::string csv = regression_csv_header() + "\n";
    text << "records_with_input = " << report.with_input_records << "\n";
    text << "records_no_input = " << report.no_input_records << "\n";
    text << "k = " << options.k << "\n";
    text << "confidence_level = " << fmt(options.level) << "\n\n";

    const auto section = [&](const char* name, const std::optional<FitResult>& fit) {
        if (fit) {
            text << format_regression(name, fit->fit) << "\n";
            csv += regression_csv_row(name, fit->fit) + "\n";
        } else {
            text << "[" << name << "]\nabsent = insufficient data\n\n";
        }
    };
    section("output_on_system", report.y_on_x);
    section("output_on_system_no_input", report.no_input);
    if (report.no_input_r) text << "no_input_pearson_r = " << fmt(*report.no_input_r) << "\n";
    if (report.no_input_slope_ci) {
        text << "no_input_slope_ci = " << fmt(report.no_input_slope_ci->lower) << ","
             << fmt(report.no_input_slope_ci->upper) << "\n\n";
    }
    section("spread_z_on_system", report.z_on_x);
    section("spread_w2_on_system", report.w2_on_x);
    section("spread_w2_on_xprime", report.w2_on_xprime);
    if (report.w2_on_x) {
        const auto& f = report.w2_on_x->fit;
        text << "w_model = sqrt(" << fmt(f.slope) << " * X + " << fmt(f.intercept) << ")\n";
    }
    if (report.w2_on_xprime) {
        const auto& f = report.w2_on_xprime->fit;
        text << "w_xprime_model = sqrt(" << fmt(f.intercept) << " + " << fmt(f.slope) << " * X')\n";
    }
    if (report.decile_trend) {
        text << "\n[freq_ones_by_system_decile]\n";
        text << "lowest_decile_mean_freq = " << fmt(report.deciles.front().mean_freq) << "\n";
        text << "spread_trend_s = " << report.decile_trend->s << "\n";
        text << "spread_trend_p_increasing = " << fmt(report.decile_trend->p_increasing) << "\n";
    }
    if (!report.entropy_rows.empty()) {
        text << "\nbits_per_char_above_entropy_fraction = " << fmt(report.entropy_bound_fraction) << "\n";
    }
    write_text(dir / "report.txt", text.str());
    write_text(dir / "regressions.csv", csv);

    const std::size_t bins = options.histogram_bins;
    if (report.y_on_x) {
        const auto& r = *report.y_on_x;
        write_text(dir / "output_vs_system.tsv", points_table("m_ratio\to_ratio", r.sample));
        std::vector<std::vector<double>> rows;
        svg::Series fit{"fit", svg::Style::Line, "#d62728", {}};
        svg::Series lower{"95% band", svg::Style::Dashed, "#2ca02c", {}};
        svg::Series upper{"", svg::Style::Dashed, "#2ca02c", {}};
        for (const auto& b : report.band) {
            rows.push_back({b.x, b.fit, b.lower, b.upper});
            fit.points.push_back({b.x, b.fit});
            lower.points.push_back({b.x, b.lower});
            upper.points.push_back({b.x, b.upper});
        }
        write_text(dir / "output_band.tsv", table("m_ratio\tfit\tlower\tupper", rows));
        write_text(dir / "output_vs_system.svg",
                   svg::render({"Output complexity O vs system complexity M (with input)", "M", "O",
                                {{"trials", svg::Style::Points, "#1f77b4", r.sample}, fit}}));
        write_text(dir / "output_band.svg", svg::render({"Fit of O on M with confidence limits", "M", "O",
                                                         {fit, lower, upper}}));
        write_histogram(dir, "output_residuals", "Residuals of O on M", r.fit.residuals, bins);
    }
    if (report.no_input) {
        const auto& r = *report.no_input;
        write_text(dir / "output_vs_system_no_input.tsv", points_table("m_ratio\to_ratio", r.sample));
        write_text(dir / "output_vs_system_no_input.svg",
                   svg::render({"Output complexity O vs M (no input)", "M", "O",
                                {{"trials", svg::Style::Points, "#1f77b4", r.sample},
                                 {"fit", svg::Style::Line, "#d62728", fit_line(r.sample, r.fit)}}}));
    }
    if (report.z_on_x) {
        const auto& r = *report.z_on_x;
        write_text(dir / "spread_z.tsv", points_table("m_ratio\tz", r.sample));
        write_text(dir / "spread_z.svg", svg::render({"Spread Z of output complexity vs M", "M", "Z",
                                                      {{"z", svg::Style::Points, "#1f77b4", r.sample},
                                                       {"fit", svg::Style::Line, "#d62728", fit_line(r.sample, r.fit)}}}));
        write_histogram(dir, "spread_z_residuals", "Residuals of Z on M", r.fit.residuals, bins);
    }
    if (report.w2_on_x) {
        const auto& r = *report.w2_on_x;
        write_text(dir / "spread_w.tsv", points_table("m_ratio\tw", r.sample));
        write_text(dir / "spread_w.svg",
                   svg::render({"Spread W of frequency of ones vs M", "M", "W",
                                {{"w", svg::Style::Points, "#1f77b4", r.sample},
                                 {"sqrt model", svg::Style::Line, "#d62728", fit_line(r.sample, r.fit, true)}}}));
        write_histogram(dir, "spread_w2_residuals", "Residuals of W^2 on M", r.fit.residuals, bins);
    }
    if (report.w2_on_xprime) {
        const auto& r = *report.w2_on_xprime;
        write_text(dir / "spread_w_xprime.tsv", points_table("x_prime\tw", r.sample));
        write_text(dir / "spread_w_xprime.svg",
                   svg::render({"Spread W of frequency of ones vs X'", "X'", "W",
                                {{"w", svg::Style::Points, "#1f77b4", r.sample},
                                 {"sqrt model", svg::Style::Line, "#d62728", fit_line(r.sample, r.fit, true)}}}));
        write_histogram(dir, "spread_w2_xprime_residuals", "Residuals of W^2 on X'", r.fit.residuals, bins);
    }
    if (!report.deciles.empty()) {
        std::vector<std::vector<double>> rows;
        for (const auto& d : report.deciles) {
            rows.push_back({static_cast<double>(d.count), d.m_low, d.m_high, d.mean_freq, d.spread});
        }
        write_text(dir / "freq_deciles.tsv", table("count\tm_low\tm_high\tmean_freq\tspread", rows));
    }
    if (!report.entropy_rows.empty()) {
        std::vector<std::vector<double>> rows;
        svg::Series bpc{"bits per char", svg::Style::Points, "#1f77b4", {}};
        svg::Series h{"H(p)", svg::Style::Line, "#d62728", {}};
        for (const auto& e : report.entropy_rows) {
            rows.push_back({e.p, e.m_ratio, e.bits_per_char, e.entropy});
            bpc.points.push_back({e.p, e.bits_per_char});
        }
        for (int i = 1; i <= 100; ++i) h.points.push_back({i / 100.0, entropy(i / 100.0)});
        write_text(dir / "entropy_vs_p.tsv", table("p\tm_ratio\tbits_per_char\tentropy", rows));
        write_text(dir / "entropy_vs_p.svg", svg::render({"System description rate vs entropy", "p", "bits", {bpc, h}}));
    }
}

void write_scatter_plots(std::span<const TrialRecord> records, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create plot directory " + dir.string() + ": " + ec.message());
    svg::Series with{"with input", svg::Style::Points, "#1f77b4", {}};
    svg::Series without{"no input", svg::Style::Points, "#ff7f0e", {}};
    svg::Series freq{"freq of ones", svg::Style::Points, "#d62728", {}};
    svg::Series m_by_p{"M", svg::Style::Points, "#1f77b4", {}};
    for (const auto& r : records) {
        (r.with_input ? with : without).points.push_back({r.m_ratio, r.o_ratio});
        if (r.freq_ones) freq.points.push_back({r.m_ratio, *r.freq_ones});
        m_by_p.points.push_back({r.p, r.m_ratio});
    }
    std::vector<svg::Series> scatter;
    if (!with.points.empty()) scatter.push_back(with);
    if (!without.points.empty()) scatter.push_back(without);
    write_text(dir / "scatter_output_vs_system.svg", svg::render({"O vs M", "M", "O", scatter}));
    write_text(dir / "scatter_freq_vs_system.svg", svg::render({"Frequency of ones vs M", "M", "freq", {freq}}));
    write_text(dir / "scatter_system_vs_p.svg", svg::render({"M vs p", "p", "M", {m_by_p}}));
}

}  // namespace elastica
