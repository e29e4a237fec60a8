#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>

#include "elastica/grid.hpp"

namespace elastica {

/// Physical and mesh parameters of the clamped beam.
///
/// The mesh has nodes 0..N+1 (x_0 = 0, x_{N+1} = L) and time levels 0..M.
/// dx and dt are computed from the stored fields on every call, so they can
/// never disagree with them.
struct BeamConfig {
    double length = 20.0;       // L
    double horizon = 70.0;      // T
    double youngs = 0.7;        // E
    double density = 0.4;       // rho
    std::size_t interior = 30;  // N
    std::size_t steps = 200;    // M

    double dx() const noexcept { return length / static_cast<double>(interior + 1); }
    double dt() const noexcept { return horizon / static_cast<double>(steps); }
    std::size_t node_count() const noexcept { return interior + 2; }
    std::size_t level_count() const noexcept { return steps + 1; }
    double node_x(std::size_t j) const noexcept { return static_cast<double>(j) * dx(); }
    double level_t(std::size_t n) const noexcept { return static_cast<double>(n) * dt(); }

    /// Throws ContractError when a field is out of range.
    void validate() const;

    friend bool operator==(const BeamConfig&, const BeamConfig&) = default;
};

/// L=20, T=70, E=0.7, rho=0.4, N=30, M=200.
BeamConfig reference_beam();

/// sqrt(E/rho) * dt/dx. The explicit scheme is stable iff this is <= 1.
double cfl_number(const BeamConfig& config);

struct DisplacementField {
    Grid values;  // (N+2) x (M+1)
};

using NodeProfile = std::function<double(std::size_t)>;

/// Explicit leapfrog solve of u_tt - (E/rho) u_xx = f with clamped ends.
///
/// Level 0 is u0, level 1 is u0 + dt*u1 (first-order start), and each later
/// level follows the three-point stencil. Boundary rows stay exactly zero and
/// force entries on them are ignored.
///
/// Throws ConfigRejected when cfl_number(config) > 1 and ContractError on a
/// shape mismatch or nonzero u0 at either end.
DisplacementField simulate(const BeamConfig& config, const Grid& force, const NodeProfile& u0,
                           const NodeProfile& u1);

/// Same as above, starting from rest.
DisplacementField simulate(const BeamConfig& config, const Grid& force);

/// Tab-separated "x\tt\tu" table, one row per grid point, time-major,
/// numbers at 9 significant digits.
void dump_field(std::ostream& out, const DisplacementField& field, const BeamConfig& config);

}  // namespace elastica
