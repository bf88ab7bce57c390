#pragma once

#include <cstdint>
#include <vector>

#include "arnav/geometry.hpp"

namespace arnav {

/// One tracker acquisition: every marker the system saw at this instant.
struct Frame {
    std::int64_t frame_id = 0;
    double time_s = 0.0;
    LabeledPointSet observations;
};

/// Timestamped labeled marker positions from the external tracker.
/// frame_id is strictly increasing; labels are unique within a frame.
struct MarkerFrameStream {
    std::vector<Frame> frames;

    std::size_t size() const { return frames.size(); }
    bool empty() const { return frames.empty(); }
};

}  // namespace arnav
