#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "elastica/beam.hpp"
#include "elastica/forcing.hpp"
#include "elastica/symbols.hpp"

namespace elastica {

/// Serialized system: a fixed-width textual header followed by the system's
/// force symbols at nodes 0..N over levels 1..M, node-major.
struct SystemDescription {
    static constexpr std::size_t kHeaderBytes = 145;

    std::string header;  // exactly kHeaderBytes
    std::string body;    // (N+1)*M bytes over '+', '0', '-'

    std::size_t total_bytes() const noexcept { return header.size() + body.size(); }
    std::string serialized() const { return header + body; }

    /// Splits header + body back apart. Throws ContractError when the text is
    /// shorter than the header or the body has a non-symbol byte.
    static SystemDescription parse(std::string_view text);

    friend bool operator==(const SystemDescription&, const SystemDescription&) = default;
};

struct ComplexityReport {
    std::size_t raw_len = 0;
    std::size_t comp_len = 0;
    double ratio = 0.0;  // comp_len / raw_len
};

/// Header is "ELASTICA v1; L=..; T=..; E=..; rho=..; N=..; M=..; p=..; seed=..;"
/// space-padded (or truncated) to 145 bytes. The body carries only the
/// system's own vibrating force; the external input is not part of the
/// system. Throws ContractError if the grid shape does not match `config`.
SystemDescription serialize_system(const ForceField& force, const BeamConfig& config);

/// Byte length of the pinned zlib-framed DEFLATE encoding of `data`.
/// Throws ContractError on empty input.
std::size_t compress_len(std::span<const std::uint8_t> data);
std::size_t compress_len(std::string_view data);

/// The statistic M: compressed over uncompressed length of the description.
ComplexityReport system_complexity(const SystemDescription& desc);

/// The statistic O: compressed over uncompressed length of the serialized
/// output sequence.
ComplexityReport output_complexity(const SymbolSeq& seq);

/// n*log2|alphabet| - 8*compress_len(seq), floored at 0. Compressed length
/// stands in for the (uncomputable) Kolmogorov complexity.
double deficiency_estimate(const SymbolSeq& seq);

/// X' = compressed system length / length of the binary output subsequence.
/// Throws UndefinedStatistic if the subsequence is empty.
double x_prime(std::size_t system_comp_len, const SymbolSeq& subseq);
double x_prime(const SystemDescription& desc, const SymbolSeq& subseq);

/// ratio * total_bytes * 8 / 345: bits per information-bearing character
/// (145 header bytes plus the 200 symbols of the active force series).
double bits_per_character(const ComplexityReport& desc_report);

}  // namespace elastica
