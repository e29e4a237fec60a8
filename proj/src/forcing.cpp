#include "elastica/forcing.hpp"

#include <cmath>

#include "elastica/error.hpp"
#include "elastica/rng.hpp"

namespace elastica {

using detail::require;

ForceSeries draw_ternary(const TernaryForceSpec& spec) {
    require(spec.p > 0.0 && spec.p <= 1.0, "ternary force probability p must lie in (0, 1]");
    require(spec.amplitude > 0.0, "force amplitude must be positive");
    require(spec.length >= 1, "force length must be at least 1");

    Xoshiro256 gen(spec.seed);
    const double zero_mass = 1.0 - spec.p;
    std::vector<Symbol> symbols(spec.length);
    std::vector<double> values(spec.length);
    for (std::size_t i = 0; i < spec.length; ++i) {
        Symbol s = 0;
        if (gen.uniform() >= zero_mass) s = gen.bit() ? Symbol{-1} : Symbol{1};
        symbols[i] = s;
        values[i] = spec.amplitude * s;
    }
    return {SymbolSeq(std::move(symbols), Alphabet::Ternary, "system force"), std::move(values)};
}

ForceSeries draw_binary(const BinaryForceSpec& spec) {
    require(spec.amplitude > 0.0, "force amplitude must be positive");
    require(spec.length >= 1, "force length must be at least 1");

    Xoshiro256 gen(spec.seed);
    std::vector<Symbol> symbols(spec.length);
    std::vector<double> values(spec.length);
    for (std::size_t i = 0; i < spec.length; ++i) {
        const Symbol s = gen.bit() ? Symbol{-1} : Symbol{1};
        symbols[i] = s;
        values[i] = spec.amplitude * s;
    }
    return {SymbolSeq(std::move(symbols), Alphabet::Binary, "input force"), std::move(values)};
}

double entropy(double p) {
    require(p > 0.0 && p <= 1.0, "entropy requires p in (0, 1]");
    const double q = 1.0 - p;
    const double zero_term = q > 0.0 ? -q * std::log2(q) : 0.0;
    return zero_term - p * std::log2(p / 2.0);
}

ForceField assemble_force_field(const BeamConfig& config, const TernaryForceSpec& system,
                                const std::optional<BinaryForceSpec>& input) {
    config.validate();
    const auto interior_node = [&](std::size_t node) { return node >= 1 && node <= config.interior; };
    require(interior_node(system.node), "system force node must be interior");
    require(system.length == config.steps, "system force length must equal M");
    if (input) {
        require(interior_node(input->node), "input force node must be interior");
        require(input->length == config.steps, "input force length must equal M");
    }

    ForceField field{Grid(config.node_count(), config.level_count()), ForceMeta{system, {}, input, {}}};

    ForceSeries sys = draw_ternary(system);
    for (std::size_t n = 1; n <= config.steps; ++n) field.values(system.node, n) += sys.values[n - 1];
    field.meta.system_symbols = std::move(sys.symbols);

    if (input) {
        ForceSeries in = draw_binary(*input);
        for (std::size_t n = 1; n <= config.steps; ++n) field.values(input->node, n) += in.values[n - 1];
        field.meta.input_symbols = std::move(in.symbols);
    }
    return field;
}

}  // namespace elastica
