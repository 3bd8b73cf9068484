#include "drama/segment.hpp"

#include <algorithm>
#include <stdexcept>

namespace drama::segment {

namespace {

// Duration of a group covering lines [i, j] within a run (absolute indices).
double group_dur(const std::vector<ScriptLine>& lines, size_t i, size_t j) {
    return lines[j].end - lines[i].start;
}

// Greedy max-fill group count for run [lo, hi] under cap; single lines that
// alone exceed the cap still form their own group.
size_t min_groups(const std::vector<ScriptLine>& lines, size_t lo, size_t hi, double cap) {
    size_t count = 0;
    size_t i = lo;
    while (i <= hi) {
        size_t j = i;
        while (j < hi && group_dur(lines, i, j + 1) <= cap) ++j;
        ++count;
        i = j + 1;
    }
    return count;
}

void emit_run(const std::vector<ScriptLine>& lines, size_t lo, size_t hi, double max_dur,
              std::vector<Segment>& out) {
    const size_t k = min_groups(lines, lo, hi, max_dur);

    // Smallest cap that still allows k groups, over all candidate durations.
    double best_cap = group_dur(lines, lo, hi);
    for (size_t i = lo; i <= hi; ++i)
        for (size_t j = i; j <= hi; ++j) {
            const double d = group_dur(lines, i, j);
            if (d <= max_dur && d < best_cap && min_groups(lines, lo, hi, d) == k)
                best_cap = d;
        }

    size_t i = lo;
    while (i <= hi) {
        size_t j = i;
        while (j < hi && group_dur(lines, i, j + 1) <= best_cap) ++j;
        out.push_back({lines[i].speaker_id, i, j, lines[i].start, lines[j].end});
        i = j + 1;
    }
}

}  // namespace

std::vector<Segment> segment_script(const std::vector<ScriptLine>& lines, double max_dur) {
    if (!(max_dur > 0.0)) throw std::invalid_argument("segment_script: max_dur must be > 0");
    for (size_t i = 0; i < lines.size(); ++i) {
        if (!(lines[i].end > lines[i].start))
            throw std::invalid_argument("segment_script: line " + std::to_string(i) +
                                        " has end <= start");
        if (i > 0 && lines[i].start < lines[i - 1].end)
            throw std::invalid_argument("segment_script: line " + std::to_string(i) +
                                        " overlaps the previous line");
    }

    std::vector<Segment> out;
    size_t run_start = 0;
    for (size_t i = 0; i <= lines.size(); ++i) {
        const bool boundary =
            i == lines.size() || lines[i].speaker_id != lines[run_start].speaker_id;
        if (boundary && i > run_start) {
            emit_run(lines, run_start, i - 1, max_dur, out);
            run_start = i;
        }
    }
    return out;
}

}  // namespace drama::segment
