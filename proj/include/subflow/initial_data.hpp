// Initial data generation. Random data is produced by quotient-respecting
// operators acting on node noise (generic t-dependent closed forms are not
// well-defined under the twist identification), then affinely scaled about
// its mean until Ep matches the requested energy.
#pragma once

#include "subflow/config.hpp"
#include "subflow/map_state.hpp"

namespace subflow {

MapState generate_initial(const RunConfig& cfg);

// pieces, exposed for tests
MapState constant_map(const GridSpec& spec, const TargetChart& chart);
MapState eigenmode_map(const GridSpec& spec, const TargetChart& chart, double amplitude);
MapState random_map(const GridSpec& spec, const TargetChart& chart, double p,
                    double target_energy, int mollify_steps, std::uint64_t seed);

}  // namespace subflow
