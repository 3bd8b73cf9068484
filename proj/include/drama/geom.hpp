#pragma once

// Head-relative pose geometry: ear positions, trajectory velocities,
// Doppler radial velocity, and the concatenated geometric pose feature.
//
// Frame convention (used everywhere in this project):
//   right-handed, +x forward from the face, +y toward the left ear, +z up.
// Orientation quaternions are world-to-head rotations stored (w,x,y,z).

#include <array>
#include <stdexcept>
#include <vector>

namespace drama::geom {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(const Vec3& v);

/// Unit quaternion (w,x,y,z); normalized on construction.
struct Quat {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    Quat() = default;
    Quat(double w_, double x_, double y_, double z_);

    /// Rotate a vector by this quaternion.
    Vec3 rotate(const Vec3& v) const;
    Quat conjugate() const { return raw(w, -x, -y, -z); }

    static Quat raw(double w, double x, double y, double z) {
        Quat q;
        q.w = w; q.x = x; q.y = y; q.z = z;
        return q;
    }
    /// Axis-angle constructor; axis need not be unit length.
    static Quat from_axis_angle(const Vec3& axis, double angle);
};

struct PoseSample {
    double t = 0.0;           // seconds, finite and non-negative
    Vec3 position;            // meters, world frame
    Quat orientation;         // world-to-head

    PoseSample() = default;
    PoseSample(double t_, const Vec3& pos, const Quat& ori);
};

struct ListenerFrame {
    Vec3 head_position;
    Quat head_orientation;
    double ear_half_spacing = 0.09;  // meters
};

/// World-frame ear positions: head_position ± spacing along the head +y axis.
std::pair<Vec3, Vec3> ear_positions(const ListenerFrame& listener);

struct Trajectory {
    std::vector<PoseSample> samples;   // strictly increasing timestamps
    ListenerFrame listener;

    /// Throws std::invalid_argument on unordered timestamps.
    void validate() const;
    double t_begin() const { return samples.front().t; }
    double t_end() const { return samples.back().t; }

    /// Piecewise-linear position at time t (clamped to the sampled range).
    Vec3 position_at(double t) const;
    Quat orientation_at(double t) const;
};

/// The 5-tuple fed downstream: per-ear relative positions, orientation,
/// per-ear radial velocities.
struct GeoPoseFeature {
    Vec3 pos_l, pos_r;        // source position relative to each ear
    Quat ori;
    double v_rad_l = 0.0, v_rad_r = 0.0;  // m/s, positive = receding
};

/// Central difference on the sample grid; one-sided at the endpoints.
/// Throws std::out_of_range when t is outside the sampled interval.
Vec3 finite_difference_velocity(const Trajectory& traj, double t);

/// Scalar projection of v onto the ear-to-source direction.
/// Positive = receding. Throws std::domain_error on zero pos_rel.
double radial_velocity(const Vec3& pos_rel, const Vec3& v);

/// f_o = f_s * c / (c + v_rad), receding-positive convention.
/// Throws std::domain_error when |v_rad| >= c or f_s <= 0.
double doppler_shift(double f_s, double v_rad, double c);

GeoPoseFeature geo_pose_feature(const Trajectory& traj, double t);

struct SphericalCoords {
    double azimuth = 0.0;    // radians in (-pi, pi], positive toward +y (left)
    double elevation = 0.0;  // radians in [-pi/2, pi/2]
    double distance = 0.0;   // meters
};

/// Spherical coordinates of a head-frame relative position.
/// Throws std::domain_error on the zero vector.
SphericalCoords angle_distance(const Vec3& pos_rel);

constexpr double kSpeedOfSound = 343.0;  // m/s, default; overridable in config

}  // namespace drama::geom
