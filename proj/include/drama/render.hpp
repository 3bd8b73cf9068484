#pragma once

// Geometric binaural renderer. Mono source + trajectory -> two-channel
// output with propagation delay (ITD + Doppler via the time-varying,
// emission-time delay), 1/r attenuation, and a cosine head-shadow model.

#include <cstdint>
#include <vector>

#include "drama/dsp.hpp"
#include "drama/geom.hpp"

namespace drama::render {

struct RenderConfig {
    double c = geom::kSpeedOfSound;   // m/s
    double reference_distance = 1.0;  // meters; gain = ref / r
    double head_shadow_strength = 6.0;  // dB at 180 deg incidence (theta = pi)
    size_t block_size = 1024;
};

struct RenderStats {
    double min_distance_l = 0.0, max_distance_l = 0.0;
    double min_distance_r = 0.0, max_distance_r = 0.0;
    double max_abs_v_rad = 0.0;
    uint64_t out_of_support_reads = 0;
};

struct RenderResult {
    dsp::BinauralSignal signal;
    RenderStats stats;
};

/// Linear interpolation read at a fractional sample index.
/// Out-of-range positions read as 0 (signal silent outside support).
double fractional_delay_read(const std::vector<double>& signal, double position);

/// Per output sample t: y_e(t) = a_e(t) * mono((t - d_e(t)) * sr), with the
/// delay d_e solving d = r_e(t - d)/c (distance at emission time), so a
/// moving source produces the physical Doppler shift.
/// Throws std::domain_error when the source comes within 1 mm of an ear,
/// std::invalid_argument when the trajectory does not cover the signal.
RenderResult render_binaural(const std::vector<double>& mono, double sample_rate,
                             const geom::Trajectory& traj, const RenderConfig& cfg = {});

}  // namespace drama::render
