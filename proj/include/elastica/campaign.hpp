#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "elastica/beam.hpp"
#include "elastica/complexity.hpp"
#include "elastica/forcing.hpp"
#include "elastica/symbols.hpp"

namespace elastica {

struct CampaignConfig {
    std::size_t trials = 723;
    std::size_t first_trial = 0;  // ids run first_trial .. first_trial + trials - 1
    std::uint64_t master_seed = 2011;
    bool with_input = true;
    BeamConfig beam{};
    double tau = 0.1;
    std::size_t k = 7;
    double system_amplitude = 30.0;
    double input_amplitude = 10.0;
    std::size_t system_node = 15;
    std::size_t input_node = 1;

    void validate() const;
};

struct TrialRecord {
    std::size_t trial_id = 0;
    std::uint64_t seed = 0;
    double p = 0.0;
    bool with_input = true;
    double m_ratio = 0.0;
    double o_ratio = 0.0;
    std::optional<double> freq_ones;  // absent when the output has no nonzero symbol
    std::size_t subseq_len = 0;
    std::optional<double> x_prime;    // absent for the same reason
    double entropy_p = 0.0;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Everything one trial produces, for inspection and dumps.
struct TrialOutcome {
    TrialRecord record;
    ForceField force;
    DisplacementField field;
    SystemDescription system;
    ComplexityReport system_report;
    SymbolSeq output;
    SymbolSeq subsequence;
};

/// A trial failed; carries the id.
class TrialError : public std::runtime_error {
public:
    TrialError(std::size_t trial_id, const std::string& what);
    std::size_t trial_id() const noexcept { return trial_id_; }

private:
    std::size_t trial_id_;
};

/// A campaign stopped on a trial error. `completed` holds the records that
/// did finish, ordered by id.
class CampaignAborted : public std::runtime_error {
public:
    CampaignAborted(std::vector<TrialRecord> completed, std::size_t failed_id, const std::string& what);
    const std::vector<TrialRecord>& completed() const noexcept { return completed_; }
    std::size_t failed_id() const noexcept { return failed_id_; }

private:
    std::vector<TrialRecord> completed_;
    std::size_t failed_id_;
};

/// Per-trial seed: derive_seed(master_seed, trial_id).
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial_id);

/// One trial from an explicit seed. Streams derived from `seed`:
/// 0 draws p = 1 - uniform() (so p is in (0, 1]) unless `p` is given,
/// 1 seeds the system force, 2 seeds the input force. Starts from rest.
TrialOutcome run_seeded_trial(const CampaignConfig& config, std::uint64_t seed, std::optional<double> p = std::nullopt,
                              std::size_t trial_id = 0);

TrialRecord run_trial(const CampaignConfig& config, std::size_t trial_id);

using TrialFn = std::function<TrialRecord(const CampaignConfig&, std::size_t)>;
using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Worker count from ELASTICA_THREADS (unset or 0 means hardware concurrency).
std::size_t campaign_threads();

/// Runs every trial id, in parallel, and returns records ordered by id.
/// Throws CampaignAborted on the first trial error. `trial` defaults to
/// run_trial; the hook exists so failure handling can be exercised.
std::vector<TrialRecord> run_campaign(const CampaignConfig& config, const ProgressFn& progress = {},
                                      const TrialFn& trial = {});

// CSV ----------------------------------------------------------------------

inline constexpr const char* kCsvHeader = "trial_id,seed,p,with_input,m_ratio,o_ratio,freq_ones,subseq_len,x_prime,entropy_p";

/// Raised when a CSV does not match the record schema; names the column.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string column, const std::string& what);
    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

std::string format_record(const TrialRecord& record);
void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_records_csv(std::istream& in);

void save_records_csv(const std::filesystem::path& path, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> load_records_csv(const std::filesystem::path& path);

// Config files -------------------------------------------------------------

/// Flat "key = value" lines; '#' starts a comment. Keys: L T E rho N M tau k
/// trials first_trial seed with_input system_amplitude input_amplitude
/// system_node input_node. Unknown keys and unparsable values throw
/// ContractError; a missing file throws IoError naming the path.
CampaignConfig parse_campaign_config(std::istream& in, CampaignConfig base = {});
CampaignConfig load_campaign_config(const std::filesystem::path& path, CampaignConfig base = {});

}  // namespace elastica
