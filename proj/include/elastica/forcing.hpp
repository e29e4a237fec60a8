#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "elastica/beam.hpp"
#include "elastica/grid.hpp"
#include "elastica/symbols.hpp"

namespace elastica {

/// The system's vibrating force: i.i.d. symbols, 0 with probability 1-p and
/// +1/-1 with probability p/2 each, scaled by `amplitude`.
struct TernaryForceSpec {
    double p = 0.5;
    double amplitude = 30.0;
    std::size_t length = 200;
    std::size_t node = 15;
    std::uint64_t seed = 0;
};

/// The external input force: fair +1/-1 symbols scaled by `amplitude`.
struct BinaryForceSpec {
    double amplitude = 10.0;
    std::size_t length = 200;
    std::size_t node = 1;
    std::uint64_t seed = 0;
};

struct ForceSeries {
    SymbolSeq symbols;
    std::vector<double> values;  // amplitude * symbol
};

/// Draw procedure, one generator seeded from spec.seed: per symbol take
/// u = uniform(); u < 1-p gives 0, otherwise the next output's top bit picks
/// the sign (0 -> +1, 1 -> -1).
ForceSeries draw_ternary(const TernaryForceSpec& spec);

/// Per symbol, the top bit of one generator output picks the sign
/// (0 -> +1, 1 -> -1).
ForceSeries draw_binary(const BinaryForceSpec& spec);

/// Entropy in bits of the ternary force distribution,
/// H(p) = -(1-p) log2(1-p) - p log2(p/2), with the first term 0 at p = 1.
double entropy(double p);

struct ForceMeta {
    TernaryForceSpec system;
    SymbolSeq system_symbols;
    std::optional<BinaryForceSpec> input;
    SymbolSeq input_symbols;  // empty when input is absent
};

/// Per-node, per-level applied force. Series of length M occupy levels 1..M.
struct ForceField {
    Grid values;  // (N+2) x (M+1)
    ForceMeta meta;
};

/// Zero grid except the system series at its node and, when given, the input
/// series at its node. Throws ContractError if a series length differs from M
/// or a node is not interior.
ForceField assemble_force_field(const BeamConfig& config, const TernaryForceSpec& system,
                                const std::optional<BinaryForceSpec>& input);

}  // namespace elastica
