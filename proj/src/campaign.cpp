#include "elastica/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "elastica/error.hpp"
#include "elastica/rng.hpp"

namespace elastica {

using detail::require;

void CampaignConfig::validate() const {
    beam.validate();
    require(trials >= 1, "campaign needs at least one trial");
    require(k >= 1, "neighbourhood size k must be at least 1");
    require(tau >= 0.0, "threshold tau must be non-negative");
    require(system_amplitude > 0.0 && input_amplitude > 0.0, "force amplitudes must be positive");
    require(system_node >= 1 && system_node <= beam.interior, "system node must be interior");
    require(input_node >= 1 && input_node <= beam.interior, "input node must be interior");
}

TrialError::TrialError(std::size_t trial_id, const std::string& what)
    : std::runtime_error("trial " + std::to_string(trial_id) + ": " + what), trial_id_(trial_id) {}

CampaignAborted::CampaignAborted(std::vector<TrialRecord> completed, std::size_t failed_id, const std::string& what)
    : std::runtime_error(what), completed_(std::move(completed)), failed_id_(failed_id) {}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial_id) {
    return derive_seed(master_seed, static_cast<std::uint64_t>(trial_id));
}

TrialOutcome run_seeded_trial(const CampaignConfig& config, std::uint64_t seed, std::optional<double> p,
                              std::size_t trial_id) {
    try {
        config.validate();
        const BeamConfig& beam = config.beam;
        if (!p) {
            Xoshiro256 gen(derive_seed(seed, 0));
            p = 1.0 - gen.uniform();
        }

        TernaryForceSpec system{*p, config.system_amplitude, beam.steps, config.system_node, derive_seed(seed, 1)};
        std::optional<BinaryForceSpec> input;
        if (config.with_input) {
            input = BinaryForceSpec{config.input_amplitude, beam.steps, config.input_node, derive_seed(seed, 2)};
        }

        TrialOutcome out;
        out.force = assemble_force_field(beam, system, input);
        out.field = simulate(beam, out.force.values);
        out.system = serialize_system(out.force, beam);
        out.system_report = system_complexity(out.system);
        out.output = output_sequence(out.field, beam, config.tau);
        out.subsequence = nonzero_subsequence(out.output);

        TrialRecord& r = out.record;
        r.trial_id = trial_id;
        r.seed = seed;
        r.p = *p;
        r.with_input = config.with_input;
        r.m_ratio = out.system_report.ratio;
        r.o_ratio = output_complexity(out.output).ratio;
        r.subseq_len = out.subsequence.size();
        if (!out.subsequence.empty()) {
            r.freq_ones = frequency_ones(out.subsequence);
            r.x_prime = x_prime(out.system_report.comp_len, out.subsequence);
        }
        r.entropy_p = entropy(*p);
        return out;
    } catch (const TrialError&) {
        throw;
    } catch (const std::exception& e) {
        throw TrialError(trial_id, e.what());
    }
}

TrialRecord run_trial(const CampaignConfig& config, std::size_t trial_id) {
    return run_seeded_trial(config, trial_seed(config.master_seed, trial_id), std::nullopt, trial_id).record;
}

std::size_t campaign_threads() {
    std::size_t requested = 0;
    if (const char* env = std::getenv("ELASTICA_THREADS")) {
        const std::string_view text(env);
        std::from_chars(text.data(), text.data() + text.size(), requested);
    }
    if (requested == 0) requested = std::max(1U, std::thread::hardware_concurrency());
    return requested;
}

std::vector<TrialRecord> run_campaign(const CampaignConfig& config, const ProgressFn& progress, const TrialFn& trial) {
    config.validate();
    const TrialFn run = trial ? trial : TrialFn(run_trial);
    const std::size_t total = config.trials;

    std::vector<std::optional<TrialRecord>> slots(total);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::atomic<bool> failed{false};
    std::mutex mutex;
    std::optional<std::size_t> failed_id;
    std::string failure;

    const auto worker = [&] {
        while (!failed.load()) {
            const std::size_t slot = next.fetch_add(1);
            if (slot >= total) return;
            const std::size_t id = config.first_trial + slot;
            try {
                slots[slot] = run(config, id);
            } catch (const std::exception& e) {
                std::lock_guard lock(mutex);
                if (!failed_id || id < *failed_id) {
                    failed_id = id;
                    failure = e.what();
                }
                failed.store(true);
                return;
            }
            const std::size_t finished = done.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard lock(mutex);
                progress(finished, total);
            }
        }
    };

    const std::size_t workers = std::min(campaign_threads(), total);
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    pool.clear();

    std::vector<TrialRecord> records;
    records.reserve(total);
    for (auto& slot : slots) {
        if (slot) records.push_back(std::move(*slot));
    }
    if (failed_id) throw CampaignAborted(std::move(records), *failed_id, failure);
    return records;
}

// CSV ----------------------------------------------------------------------

SchemaError::SchemaError(std::string column, const std::string& what)
    : std::runtime_error(what), column_(std::move(column)) {}

namespace {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = split_csv(kCsvHeader);
    return cols;
}

double parse_double(const std::string& text, const std::string& column) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw SchemaError(column, "column '" + column + "': cannot parse number '" + text + "'");
    }
    return v;
}

template <typename Int>
Int parse_int(const std::string& text, const std::string& column) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw SchemaError(column, "column '" + column + "': cannot parse integer '" + text + "'");
    }
    return v;
}

std::optional<double> parse_optional(const std::string& text, const std::string& column) {
    if (text.empty()) return std::nullopt;
    return parse_double(text, column);
}

bool parse_bool(const std::string& text, const std::string& column) {
    if (text == "true") return true;
    if (text == "false") return false;
    throw SchemaError(column, "column '" + column + "': expected true or false, got '" + text + "'");
}

}  // namespace

std::string format_record(const TrialRecord& r) {
    std::string line = std::to_string(r.trial_id) + ',' + std::to_string(r.seed) + ',' + fmt9(r.p) + ',' +
                       (r.with_input ? "true" : "false") + ',' + fmt9(r.m_ratio) + ',' + fmt9(r.o_ratio) + ',';
    if (r.freq_ones) line += fmt9(*r.freq_ones);
    line += ',' + std::to_string(r.subseq_len) + ',';
    if (r.x_prime) line += fmt9(*r.x_prime);
    line += ',' + fmt9(r.entropy_p);
    return line;
}

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) out << format_record(r) << '\n';
    if (!out) throw IoError("failed writing trial records");
}

std::vector<TrialRecord> read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("trial_id", "empty CSV: missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv(line);
    const auto& expected = csv_columns();
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i >= header.size() || header[i] != expected[i]) {
            throw SchemaError(expected[i], "CSV header mismatch at column '" + expected[i] + "'");
        }
    }
    if (header.size() > expected.size()) {
        throw SchemaError(header[expected.size()], "unexpected CSV column '" + header[expected.size()] + "'");
    }

    std::vector<TrialRecord> records;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_csv(line);
        if (f.size() != expected.size()) {
            const std::string& col = expected[std::min(f.size(), expected.size() - 1)];
            throw SchemaError(col, "row has " + std::to_string(f.size()) + " fields, expected " +
                                       std::to_string(expected.size()) + " (near column '" + col + "')");
        }
        TrialRecord r;
        r.trial_id = parse_int<std::size_t>(f[0], expected[0]);
        r.seed = parse_int<std::uint64_t>(f[1], expected[1]);
        r.p = parse_double(f[2], expected[2]);
        r.with_input = parse_bool(f[3], expected[3]);
        r.m_ratio = parse_double(f[4], expected[4]);
        r.o_ratio = parse_double(f[5], expected[5]);
        r.freq_ones = parse_optional(f[6], expected[6]);
        r.subseq_len = parse_int<std::size_t>(f[7], expected[7]);
        r.x_prime = parse_optional(f[8], expected[8]);
        r.entropy_p = parse_double(f[9], expected[9]);
        records.push_back(r);
    }
    return records;
}

void save_records_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_records_csv(out, records);
}

std::vector<TrialRecord> load_records_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return read_records_csv(in);
}

// Config files -------------------------------------------------------------

namespace {

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

double config_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    require(!value.empty() && end == value.c_str() + value.size(), "config key '" + key + "': bad number '" + value + "'");
    return v;
}

template <typename Int>
Int config_int(const std::string& key, const std::string& value) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    require(!value.empty() && ec == std::errc() && ptr == value.data() + value.size(),
            "config key '" + key + "': bad integer '" + value + "'");
    return v;
}

}  // namespace

CampaignConfig parse_campaign_config(std::istream& in, CampaignConfig c) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        require(eq != std::string::npos, "config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "L") c.beam.length = config_double(key, value);
        else if (key == "T") c.beam.horizon = config_double(key, value);
        else if (key == "E") c.beam.youngs = config_double(key, value);
        else if (key == "rho") c.beam.density = config_double(key, value);
        else if (key == "N") c.beam.interior = config_int<std::size_t>(key, value);
        else if (key == "M") c.beam.steps = config_int<std::size_t>(key, value);
        else if (key == "tau") c.tau = config_double(key, value);
        else if (key == "k") c.k = config_int<std::size_t>(key, value);
        else if (key == "trials") c.trials = config_int<std::size_t>(key, value);
        else if (key == "first_trial") c.first_trial = config_int<std::size_t>(key, value);
        else if (key == "seed") c.master_seed = config_int<std::uint64_t>(key, value);
        else if (key == "system_amplitude") c.system_amplitude = config_double(key, value);
        else if (key == "input_amplitude") c.input_amplitude = config_double(key, value);
        else if (key == "system_node") c.system_node = config_int<std::size_t>(key, value);
        else if (key == "input_node") c.input_node = config_int<std::size_t>(key, value);
        else if (key == "with_input") {
            require(value == "true" || value == "false", "config key 'with_input': expected true or false");
            c.with_input = value == "true";
        } else {
            throw ContractError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    return c;
}

CampaignConfig load_campaign_config(const std::filesystem::path& path, CampaignConfig base) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    return parse_campaign_config(in, std::move(base));
}

}  // namespace elastica
