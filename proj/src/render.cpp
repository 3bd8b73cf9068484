#include "drama/render.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drama::render {

double fractional_delay_read(const std::vector<double>& signal, double position) {
    if (position < 0.0 || position > static_cast<double>(signal.size() - 1)) return 0.0;
    const double fl = std::floor(position);
    const size_t i = static_cast<size_t>(fl);
    const double frac = position - fl;
    if (frac == 0.0) return signal[i];
    return signal[i] * (1.0 - frac) + signal[i + 1] * frac;
}

namespace {

struct EarContext {
    geom::Vec3 position;
    geom::Vec3 outward;  // unit axis away from the head through this ear
};

double shadow_gain(const EarContext& ear, const geom::Vec3& source, double strength_db) {
    const geom::Vec3 dir = source - ear.position;
    const double r = geom::norm(dir);
    const double cos_theta = geom::dot(ear.outward, dir) / r;
    return std::pow(10.0, -strength_db * (1.0 - cos_theta) / 2.0 / 20.0);
}

}  // namespace

RenderResult render_binaural(const std::vector<double>& mono, double sample_rate,
                             const geom::Trajectory& traj, const RenderConfig& cfg) {
    traj.validate();
    if (mono.empty()) {
        RenderResult r;
        r.signal.sample_rate = sample_rate;
        return r;
    }
    const double duration = static_cast<double>(mono.size() - 1) / sample_rate;
    if (traj.t_end() + 1e-9 < duration)
        throw std::invalid_argument("render_binaural: trajectory shorter than signal");

    const auto [ear_l_pos, ear_r_pos] = geom::ear_positions(traj.listener);
    const geom::Vec3 left_axis = traj.listener.head_orientation.rotate({0.0, 1.0, 0.0});
    const EarContext ears[2] = {{ear_l_pos, left_axis}, {ear_r_pos, left_axis * -1.0}};

    RenderResult out;
    out.signal.sample_rate = sample_rate;
    out.signal.left.resize(mono.size());
    out.signal.right.resize(mono.size());
    out.stats.min_distance_l = out.stats.min_distance_r = 1e300;

    for (int e = 0; e < 2; ++e) {
        const EarContext& ear = ears[e];
        auto& channel = (e == 0) ? out.signal.left : out.signal.right;
        double& min_d = (e == 0) ? out.stats.min_distance_l : out.stats.min_distance_r;
        double& max_d = (e == 0) ? out.stats.max_distance_l : out.stats.max_distance_r;

        for (size_t n = 0; n < mono.size(); ++n) {
            const double t = static_cast<double>(n) / sample_rate;

            // Emission-time delay: d = r(t - d)/c, solved by fixed point.
            // Converges geometrically since |v_rad| < c.
            double d = geom::norm(traj.position_at(t) - ear.position) / cfg.c;
            for (int it = 0; it < 16; ++it) {
                const double next = geom::norm(traj.position_at(t - d) - ear.position) / cfg.c;
                if (std::abs(next - d) < 1e-12) { d = next; break; }
                d = next;
            }
            const double t_emit = t - d;
            const geom::Vec3 src = traj.position_at(t_emit);
            const double r = geom::norm(src - ear.position);
            if (r < 1e-3)
                throw std::domain_error("render_binaural: source within 1 mm of an ear");
            min_d = std::min(min_d, r);
            max_d = std::max(max_d, r);

            const double read_pos = t_emit * sample_rate;
            if (read_pos < 0.0 || read_pos > static_cast<double>(mono.size() - 1))
                ++out.stats.out_of_support_reads;
            const double gain = (cfg.reference_distance / r) *
                                shadow_gain(ear, src, cfg.head_shadow_strength);
            channel[n] = gain * fractional_delay_read(mono, read_pos);
        }
    }

    // Radial-velocity statistic on a block grid (plus the endpoints).
    const double step = static_cast<double>(cfg.block_size) / sample_rate;
    for (double t = traj.t_begin();; t += step) {
        t = std::min(t, traj.t_end());
        const geom::Vec3 v = geom::finite_difference_velocity(traj, t);
        const geom::Vec3 src = traj.position_at(t);
        for (const auto& ear : ears) {
            const geom::Vec3 rel = src - ear.position;
            if (geom::norm(rel) > 0.0)
                out.stats.max_abs_v_rad =
                    std::max(out.stats.max_abs_v_rad, std::abs(geom::radial_velocity(rel, v)));
        }
        if (t >= traj.t_end()) break;
    }
    return out;
}

}  // namespace drama::render
