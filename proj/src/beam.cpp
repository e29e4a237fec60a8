#include "elastica/beam.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "elastica/error.hpp"

namespace elastica {

using detail::require;

void BeamConfig::validate() const {
    require(length > 0.0 && std::isfinite(length), "beam length must be positive");
    require(horizon > 0.0 && std::isfinite(horizon), "time horizon must be positive");
    require(youngs > 0.0 && std::isfinite(youngs), "Young's modulus must be positive");
    require(density > 0.0 && std::isfinite(density), "density must be positive");
    require(interior >= 1, "need at least one interior node");
    require(steps >= 2, "need at least two time steps");
}

BeamConfig reference_beam() { return BeamConfig{}; }

double cfl_number(const BeamConfig& config) {
    return std::sqrt(config.youngs / config.density) * config.dt() / config.dx();
}

DisplacementField simulate(const BeamConfig& config, const Grid& force, const NodeProfile& u0,
                           const NodeProfile& u1) {
    config.validate();
    const double cfl = cfl_number(config);
    if (!(cfl <= 1.0)) {
        throw ConfigRejected("CFL number " + std::to_string(cfl) + " exceeds 1; explicit scheme is unstable");
    }
    const std::size_t nodes = config.node_count();
    const std::size_t levels = config.level_count();
    require(force.nodes() == nodes && force.steps() == levels, "force grid shape does not match beam config");
    require(u0(0) == 0.0 && u0(nodes - 1) == 0.0, "initial displacement must vanish at both clamped ends");

    const double dt = config.dt();
    const double dt2 = dt * dt;
    const double dx = config.dx();
    const double coupling = (dt / dx) * (dt / dx) * (config.youngs / config.density);

    Grid u(nodes, levels);
    for (std::size_t j = 1; j + 1 < nodes; ++j) {
        const double start = u0(j);
        u(j, 0) = start;
        u(j, 1) = start + dt * u1(j);
    }
    for (std::size_t n = 1; n + 1 < levels; ++n) {
        for (std::size_t j = 1; j + 1 < nodes; ++j) {
            const double centre = u(j, n);
            u(j, n + 1) = 2.0 * centre - u(j, n - 1) + dt2 * force(j, n) +
                          coupling * (u(j + 1, n) - 2.0 * centre + u(j - 1, n));
        }
    }
    return DisplacementField{std::move(u)};
}

DisplacementField simulate(const BeamConfig& config, const Grid& force) {
    const auto rest = [](std::size_t) { return 0.0; };
    return simulate(config, force, rest, rest);
}

void dump_field(std::ostream& out, const DisplacementField& field, const BeamConfig& config) {
    require(field.values.nodes() == config.node_count() && field.values.steps() == config.level_count(),
            "field shape does not match beam config");
    out << "x\tt\tu\n";
    char line[96];
    for (std::size_t n = 0; n < config.level_count(); ++n) {
        const double t = config.level_t(n);
        for (std::size_t j = 0; j < config.node_count(); ++j) {
            std::snprintf(line, sizeof line, "%.9g\t%.9g\t%.9g\n", config.node_x(j), t, field.values(j, n));
            out << line;
        }
    }
    if (!out) throw IoError("failed writing displacement table");
}

}  // namespace elastica
