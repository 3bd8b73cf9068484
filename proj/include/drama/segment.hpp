#pragma once

// Script segmentation: merge consecutive same-speaker lines, split runs
// that exceed the maximum segment duration at line boundaries.

#include <string>
#include <vector>

namespace drama::segment {

struct ScriptLine {
    std::string speaker_id;
    std::string text;
    double start = 0.0;  // seconds
    double end = 0.0;
};

struct Segment {
    std::string speaker_id;
    size_t first_line = 0;  // inclusive
    size_t last_line = 0;   // inclusive
    double start = 0.0;
    double end = 0.0;
};

/// Greedy merge of same-speaker runs; a run longer than max_dur is split at
/// line boundaries into the fewest segments that all fit, choosing among
/// those the split minimizing the maximum segment duration (ties resolved
/// toward longer leading segments, matching the greedy fill order).
/// Throws std::invalid_argument on unordered or overlapping lines.
std::vector<Segment> segment_script(const std::vector<ScriptLine>& lines,
                                    double max_dur = 16.0);

}  // namespace drama::segment
