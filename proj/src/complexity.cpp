#include "elastica/complexity.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "elastica/deflate.hpp"
#include "elastica/error.hpp"

namespace elastica {

using detail::require;

namespace {

constexpr double kInformationBytes = 345.0;

std::string format_header(const BeamConfig& config, const TernaryForceSpec& system) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "ELASTICA v1; L=%.9g; T=%.9g; E=%.9g; rho=%.9g; N=%zu; M=%zu; p=%.9g; seed=%llu;",
                  config.length, config.horizon, config.youngs, config.density, config.interior, config.steps,
                  system.p, static_cast<unsigned long long>(system.seed));
    std::string header(buf);
    header.resize(SystemDescription::kHeaderBytes, ' ');
    return header;
}

}  // namespace

SystemDescription SystemDescription::parse(std::string_view text) {
    require(text.size() >= kHeaderBytes, "system description shorter than its header");
    SystemDescription desc{std::string(text.substr(0, kHeaderBytes)), std::string(text.substr(kHeaderBytes))};
    for (char c : desc.body) require(c == '+' || c == '0' || c == '-', "system body holds a non-symbol byte");
    return desc;
}

SystemDescription serialize_system(const ForceField& force, const BeamConfig& config) {
    require(force.values.nodes() == config.node_count() && force.values.steps() == config.level_count(),
            "force grid shape does not match beam config");
    const auto& sys = force.meta.system_symbols;
    const std::size_t sys_node = force.meta.system.node;
    require(sys.size() == config.steps, "system force symbols must have length M");

    std::string body;
    body.reserve((config.interior + 1) * config.steps);
    for (std::size_t j = 0; j <= config.interior; ++j) {
        if (j == sys_node) {
            body += sys.serialize();
        } else {
            body.append(config.steps, '0');
        }
    }
    return {format_header(config, force.meta.system), std::move(body)};
}

std::size_t compress_len(std::span<const std::uint8_t> data) {
    require(!data.empty(), "cannot measure compressed length of empty input");
    return deflate::zlib_compress(data).size();
}

std::size_t compress_len(std::string_view data) {
    return compress_len(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

ComplexityReport system_complexity(const SystemDescription& desc) {
    const std::string text = desc.serialized();
    const std::size_t comp = compress_len(text);
    return {text.size(), comp, static_cast<double>(comp) / static_cast<double>(text.size())};
}

ComplexityReport output_complexity(const SymbolSeq& seq) {
    const std::string text = seq.serialize();
    const std::size_t comp = compress_len(text);
    return {text.size(), comp, static_cast<double>(comp) / static_cast<double>(text.size())};
}

double deficiency_estimate(const SymbolSeq& seq) {
    require(!seq.empty(), "deficiency needs a nonempty sequence");
    const double capacity = static_cast<double>(seq.size()) * std::log2(static_cast<double>(seq.alphabet_size()));
    const double used = 8.0 * static_cast<double>(compress_len(seq.serialize()));
    return std::max(0.0, capacity - used);
}

double x_prime(std::size_t system_comp_len, const SymbolSeq& subseq) {
    if (subseq.empty()) throw UndefinedStatistic("X' is undefined for an empty output subsequence");
    return static_cast<double>(system_comp_len) / static_cast<double>(subseq.size());
}

double x_prime(const SystemDescription& desc, const SymbolSeq& subseq) {
    if (subseq.empty()) throw UndefinedStatistic("X' is undefined for an empty output subsequence");
    return x_prime(compress_len(desc.serialized()), subseq);
}

double bits_per_character(const ComplexityReport& desc_report) {
    return desc_report.ratio * static_cast<double>(desc_report.raw_len) * 8.0 / kInformationBytes;
}

}  // namespace elastica
