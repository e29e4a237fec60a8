// elastica: command-line driver for single trials, campaigns and analyses.
//
// Exit status: 0 when every requested output was written, 2 for usage and
// input problems (bad flags, unreadable config, CSV schema mismatch), 1 for
// anything that failed while running.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "elastica/analysis.hpp"
#include "elastica/campaign.hpp"
#include "elastica/error.hpp"

namespace fs = std::filesystem;
using namespace elastica;

namespace {

constexpr int kRunFailure = 1;
constexpr int kUsageFailure = 2;

/// Bad invocation or unusable input; reported with exit status 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    bool no_input = false;
    std::string out;
};

CampaignConfig base_config(const CommonFlags& flags) {
    CampaignConfig config;
    if (!flags.config_path.empty()) {
        try {
            config = load_campaign_config(flags.config_path);
        } catch (const IoError& e) {
            throw InputError(e.what());
        } catch (const ContractError& e) {
            throw InputError(flags.config_path + ": " + e.what());
        }
    }
    if (flags.no_input) config.with_input = false;
    return config;
}

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

void write_csv(const fs::path& path, const std::vector<TrialRecord>& records) {
    auto out = open_output(path);
    write_records_csv(out, records);
    finish(out, path);
}

std::vector<TrialRecord> read_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open CSV " + path.string());
    try {
        return read_records_csv(in);
    } catch (const SchemaError& e) {
        throw InputError(path.string() + ": schema mismatch in column '" + e.column() + "': " + e.what());
    }
}

TrialOutcome single_trial(const CommonFlags& flags, std::optional<double> p) {
    const CampaignConfig config = base_config(flags);
    const std::uint64_t seed = flags.seed ? *flags.seed : trial_seed(config.master_seed, config.first_trial);
    try {
        config.validate();
    } catch (const ContractError& e) {
        throw InputError(e.what());
    }
    if (p && !(*p > 0.0 && *p <= 1.0)) throw InputError("--p must lie in (0, 1]");
    return run_seeded_trial(config, seed, p, config.first_trial);
}

void write_force_table(const fs::path& path, const ForceField& force, const BeamConfig& beam) {
    auto out = open_output(path);
    out << "x\tt\tf\n";
    char line[96];
    for (std::size_t n = 0; n < beam.level_count(); ++n) {
        for (std::size_t j = 0; j < beam.node_count(); ++j) {
            std::snprintf(line, sizeof line, "%.9g\t%.9g\t%.9g\n", beam.node_x(j), beam.level_t(n),
                          force.values(j, n));
            out << line;
        }
    }
    finish(out, path);
}

void write_field_table(const fs::path& path, const TrialOutcome& outcome, const BeamConfig& beam) {
    auto out = open_output(path);
    dump_field(out, outcome.field, beam);
    finish(out, path);
}

std::string show(const std::optional<double>& v) {
    if (!v) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", *v);
    return buf;
}

int cmd_simulate(const CommonFlags& flags, std::optional<double> p) {
    const TrialOutcome outcome = single_trial(flags, p);
    const BeamConfig beam = base_config(flags).beam;
    const fs::path field_path = flags.out;
    const fs::path record_path = flags.out + ".record.csv";
    write_field_table(field_path, outcome, beam);
    write_csv(record_path, {outcome.record});
    std::cout << "M = " << show(outcome.record.m_ratio) << "\n"
              << "O = " << show(outcome.record.o_ratio) << "\n"
              << "freq_ones = " << show(outcome.record.freq_ones) << "\n";
    std::cerr << "wrote " << field_path.string() << " and " << record_path.string() << "\n";
    return 0;
}

int cmd_dump_field(const CommonFlags& flags, std::optional<double> p) {
    const TrialOutcome outcome = single_trial(flags, p);
    const BeamConfig beam = base_config(flags).beam;
    const fs::path force_path = flags.out + ".force.tsv";
    write_field_table(flags.out, outcome, beam);
    write_force_table(force_path, outcome.force, beam);
    std::cerr << "wrote " << flags.out << " and " << force_path.string() << "\n";
    return 0;
}

int cmd_campaign(const CommonFlags& flags, std::optional<std::size_t> trials, std::optional<std::size_t> k) {
    CampaignConfig config = base_config(flags);
    if (trials) config.trials = *trials;
    if (flags.seed) config.master_seed = *flags.seed;
    if (k) config.k = *k;
    try {
        config.validate();
    } catch (const ContractError& e) {
        throw InputError(e.what());
    }

    const fs::path csv = flags.out;
    const auto progress = [](std::size_t done, std::size_t total) {
        if (done == total || done % 50 == 0) std::cerr << "\rtrials " << done << "/" << total << std::flush;
        if (done == total) std::cerr << "\n";
    };
    try {
        const auto records = run_campaign(config, progress);
        write_csv(csv, records);
        std::cerr << "wrote " << records.size() << " records to " << csv.string() << "\n";
        return 0;
    } catch (const CampaignAborted& e) {
        std::cerr << "\n";
        write_csv(csv, e.completed());
        const fs::path manifest_path = csv.string() + ".manifest";
        auto manifest = open_output(manifest_path);
        manifest << "# campaign aborted at trial " << e.failed_id() << ": " << e.what() << "\n";
        for (const auto& r : e.completed()) manifest << r.trial_id << "\n";
        finish(manifest, manifest_path);
        std::cerr << "error: " << e.what() << "\n"
                  << "partial results (" << e.completed().size() << " trials) in " << csv.string()
                  << ", completed ids in " << manifest_path.string() << "\n";
        return kRunFailure;
    }
}

int cmd_analyze(const std::vector<std::string>& csvs, std::size_t k, const std::string& report_dir) {
    std::vector<TrialRecord> records;
    for (const auto& path : csvs) {
        auto part = read_csv(path);
        records.insert(records.end(), part.begin(), part.end());
    }
    AnalysisOptions options;
    if (k == 0) throw InputError("--k must be at least 1");
    options.k = k;
    const AnalysisReport report = analyze(records, options);
    write_analysis(report, options, report_dir);
    write_scatter_plots(records, report_dir);
    std::cerr << "analysis of " << records.size() << " records written to " << report_dir << "\n";
    if (!report.y_on_x) std::cerr << "note: with-input fit absent (insufficient data)\n";
    if (!report.no_input) std::cerr << "note: no-input fit absent (insufficient data)\n";
    return 0;
}

int cmd_plot(const std::vector<std::string>& csvs, const std::string& report_dir) {
    std::vector<TrialRecord> records;
    for (const auto& path : csvs) {
        auto part = read_csv(path);
        records.insert(records.end(), part.begin(), part.end());
    }
    write_scatter_plots(records, report_dir);
    std::cerr << "plots written to " << report_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vibrating-beam complexity experiments"};
    app.require_subcommand(1);

    CommonFlags sim_flags;
    std::optional<double> sim_p;
    auto* simulate = app.add_subcommand("simulate", "Run one trial; write the field table and its record row");
    simulate->add_option("--config", sim_flags.config_path, "key=value config file");
    simulate->add_option("--seed", sim_flags.seed, "trial seed (default: derived from the config's master seed)");
    simulate->add_option("--p", sim_p, "system force probability in (0, 1] (default: drawn from the seed)");
    simulate->add_flag("--no-input", sim_flags.no_input, "omit the external input force");
    simulate->add_option("--out", sim_flags.out, "field table path; the record goes to <out>.record.csv")->required();

    CommonFlags dump_flags;
    std::optional<double> dump_p;
    auto* dump = app.add_subcommand("dump-field", "Write the displacement and force grids of one trial");
    dump->add_option("--config", dump_flags.config_path, "key=value config file");
    dump->add_option("--seed", dump_flags.seed, "trial seed");
    dump->add_option("--p", dump_p, "system force probability in (0, 1]");
    dump->add_flag("--no-input", dump_flags.no_input, "omit the external input force");
    dump->add_option("--out", dump_flags.out, "field table path; forces go to <out>.force.tsv")->required();

    CommonFlags camp_flags;
    std::optional<std::size_t> camp_trials;
    std::optional<std::size_t> camp_k;
    auto* campaign = app.add_subcommand("campaign", "Run seeded trials in parallel and write a CSV");
    campaign->add_option("--config", camp_flags.config_path, "key=value config file");
    campaign->add_option("--trials", camp_trials, "number of trials (default 723)");
    campaign->add_option("--seed", camp_flags.seed, "master seed (default 2011)");
    campaign->add_option("--k", camp_k, "neighbourhood size recorded in the config");
    campaign->add_flag("--no-input", camp_flags.no_input, "omit the external input force");
    campaign->add_option("--out", camp_flags.out, "CSV path")->required();

    std::vector<std::string> analyze_csvs;
    std::size_t analyze_k = 7;
    std::string analyze_report;
    auto* analyze_cmd = app.add_subcommand("analyze", "Fit and tabulate a campaign; write report, tables and SVGs");
    analyze_cmd->add_option("csv", analyze_csvs, "with-input CSV, then optionally the no-input CSV")
        ->required()
        ->expected(1, 2);
    analyze_cmd->add_option("--k", analyze_k, "nearest-neighbour window size");
    analyze_cmd->add_option("--report", analyze_report, "output directory")->required();

    std::vector<std::string> plot_csvs;
    std::string plot_report;
    auto* plot = app.add_subcommand("plot", "Render scatter SVGs straight from campaign CSVs");
    plot->add_option("csv", plot_csvs, "campaign CSVs")->required()->expected(1, -1);
    plot->add_option("--report", plot_report, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageFailure;
    }

    try {
        if (*simulate) return cmd_simulate(sim_flags, sim_p);
        if (*dump) return cmd_dump_field(dump_flags, dump_p);
        if (*campaign) return cmd_campaign(camp_flags, camp_trials, camp_k);
        if (*analyze_cmd) return cmd_analyze(analyze_csvs, analyze_k, analyze_report);
        if (*plot) return cmd_plot(plot_csvs, plot_report);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRunFailure;
    }
    return kUsageFailure;
}
