#pragma once

#include <vector>

#include "etiquette/events/types.hpp"

namespace etiquette::estimation {

// Th_i = R_i / v_i per episode sample (extraction guarantees v > 10 m/s).
std::vector<double> time_headway_series(const events::CarFollowingEpisode& episode);

// TTC at each rising edge of the brake flag while closing (Rdot < 0):
// R / |Rdot| at the edge sample. Edges with a non-negative rate emit nothing.
std::vector<double> start_to_brake_ttc(const events::CarFollowingEpisode& episode);

}  // namespace etiquette::estimation
