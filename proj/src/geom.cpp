#include "drama/geom.hpp"

#include <algorithm>
#include <cmath>

namespace drama::geom {

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Quat::Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    if (!(n > 0.0) || !std::isfinite(n))
        throw std::invalid_argument("quaternion must be nonzero and finite");
    w /= n; x /= n; y /= n; z /= n;
}

Vec3 Quat::rotate(const Vec3& v) const {
    // q * (0,v) * q^-1 expanded.
    const Vec3 u{x, y, z};
    const Vec3 t{2.0 * (u.y * v.z - u.z * v.y),
                 2.0 * (u.z * v.x - u.x * v.z),
                 2.0 * (u.x * v.y - u.y * v.x)};
    return {v.x + w * t.x + (u.y * t.z - u.z * t.y),
            v.y + w * t.y + (u.z * t.x - u.x * t.z),
            v.z + w * t.z + (u.x * t.y - u.y * t.x)};
}

Quat Quat::from_axis_angle(const Vec3& axis, double angle) {
    const double n = norm(axis);
    if (!(n > 0.0)) throw std::invalid_argument("axis must be nonzero");
    const double s = std::sin(angle / 2.0) / n;
    return Quat(std::cos(angle / 2.0), axis.x * s, axis.y * s, axis.z * s);
}

PoseSample::PoseSample(double t_, const Vec3& pos, const Quat& ori)
    : t(t_), position(pos), orientation(ori) {
    if (!std::isfinite(t) || t < 0.0)
        throw std::invalid_argument("pose timestamp must be finite and non-negative");
}

std::pair<Vec3, Vec3> ear_positions(const ListenerFrame& listener) {
    // Interaural axis is head-frame +y (toward the left ear).
    const Vec3 axis = listener.head_orientation.rotate({0.0, 1.0, 0.0});
    const Vec3 offset = axis * listener.ear_half_spacing;
    return {listener.head_position + offset, listener.head_position - offset};
}

void Trajectory::validate() const {
    if (samples.size() < 2)
        throw std::invalid_argument("trajectory needs at least 2 samples");
    for (size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].t > samples[i - 1].t))
            throw std::invalid_argument("trajectory timestamps must be strictly increasing");
    if (!(listener.ear_half_spacing >= 0.0))
        throw std::invalid_argument("ear_half_spacing must be non-negative");
}

namespace {

// Index of the last sample with samples[i].t <= t (clamped to [0, n-2]).
size_t segment_index(const std::vector<PoseSample>& samples, double t) {
    auto it = std::upper_bound(samples.begin(), samples.end(), t,
                               [](double v, const PoseSample& s) { return v < s.t; });
    size_t i = (it == samples.begin()) ? 0 : static_cast<size_t>(it - samples.begin()) - 1;
    return std::min(i, samples.size() - 2);
}

}  // namespace

Vec3 Trajectory::position_at(double t) const {
    if (t <= samples.front().t) return samples.front().position;
    if (t >= samples.back().t) return samples.back().position;
    const size_t i = segment_index(samples, t);
    const auto& a = samples[i];
    const auto& b = samples[i + 1];
    const double u = (t - a.t) / (b.t - a.t);
    return a.position + (b.position - a.position) * u;
}

Quat Trajectory::orientation_at(double t) const {
    // Nearest-sample orientation; slerp is not needed for the feature path.
    const size_t i = segment_index(samples, t);
    const auto& a = samples[i];
    const auto& b = samples[i + 1];
    return (t - a.t < b.t - t) ? a.orientation : b.orientation;
}

Vec3 finite_difference_velocity(const Trajectory& traj, double t) {
    traj.validate();
    const auto& s = traj.samples;
    if (t < s.front().t || t > s.back().t)
        throw std::out_of_range("velocity query outside trajectory time range");

    // Locate the nearest sample; central difference at interior samples,
    // one-sided at the ends. Off-grid query times use the bracketing segment
    // slope (exact under the piecewise-linear position assumption).
    size_t i = segment_index(s, t);
    const double mid_tol = 1e-12;
    if (std::abs(t - s[i].t) > mid_tol && std::abs(t - s[i + 1].t) > mid_tol)
        return (s[i + 1].position - s[i].position) / (s[i + 1].t - s[i].t);
    if (std::abs(t - s[i + 1].t) <= mid_tol) ++i;

    if (i == 0)
        return (s[1].position - s[0].position) / (s[1].t - s[0].t);
    if (i == s.size() - 1)
        return (s[i].position - s[i - 1].position) / (s[i].t - s[i - 1].t);
    return (s[i + 1].position - s[i - 1].position) / (s[i + 1].t - s[i - 1].t);
}

double radial_velocity(const Vec3& pos_rel, const Vec3& v) {
    const double r = norm(pos_rel);
    if (!(r > 0.0)) throw std::domain_error("radial_velocity: zero-length pos_rel");
    return dot(pos_rel, v) / r;
}

double doppler_shift(double f_s, double v_rad, double c) {
    if (!(f_s > 0.0)) throw std::domain_error("doppler_shift: source frequency must be > 0");
    if (!(std::abs(v_rad) < c)) throw std::domain_error("doppler_shift: |v_rad| must be < c");
    return f_s * c / (c + v_rad);
}

GeoPoseFeature geo_pose_feature(const Trajectory& traj, double t) {
    traj.validate();
    const auto [ear_l, ear_r] = ear_positions(traj.listener);
    const Vec3 src = traj.position_at(t);
    const Vec3 v = finite_difference_velocity(traj, t);

    GeoPoseFeature f;
    f.pos_l = src - ear_l;
    f.pos_r = src - ear_r;
    f.ori = traj.orientation_at(t);
    f.v_rad_l = radial_velocity(f.pos_l, v);
    f.v_rad_r = radial_velocity(f.pos_r, v);
    return f;
}

SphericalCoords angle_distance(const Vec3& pos_rel) {
    const double r = norm(pos_rel);
    if (!(r > 0.0)) throw std::domain_error("angle_distance: zero vector");
    SphericalCoords out;
    out.distance = r;
    out.azimuth = std::atan2(pos_rel.y, pos_rel.x);
    out.elevation = std::asin(std::clamp(pos_rel.z / r, -1.0, 1.0));
    return out;
}

}  // namespace drama::geom
