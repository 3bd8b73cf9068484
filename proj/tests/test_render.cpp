#include <cmath>
#include <numbers>

#include <doctest.h>

#include "drama/dsp.hpp"
#include "drama/geom.hpp"
#include "drama/render.hpp"
#include "drama/tensor.hpp"

using namespace drama;
using namespace drama::render;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSr = 48000.0;

std::vector<double> sine(double hz, double seconds, double sr = kSr) {
    std::vector<double> x(static_cast<size_t>(seconds * sr));
    for (size_t i = 0; i < x.size(); ++i)
        x[i] = std::sin(2.0 * kPi * hz * static_cast<double>(i) / sr);
    return x;
}

geom::Trajectory stationary(const geom::Vec3& pos, double duration) {
    geom::Trajectory t;
    t.samples.emplace_back(0.0, pos, geom::Quat());
    t.samples.emplace_back(duration, pos, geom::Quat());
    return t;
}

double rms(const std::vector<double>& x, size_t from = 0) {
    double s = 0.0;
    for (size_t i = from; i < x.size(); ++i) s += x[i] * x[i];
    return std::sqrt(s / static_cast<double>(x.size() - from));
}

// Dominant frequency via a long power-of-two DFT window with parabolic
// refinement around the peak bin.
double dominant_frequency(const std::vector<double>& x, size_t from, size_t window) {
    std::vector<double> seg(x.begin() + from, x.begin() + from + window);
    const auto spec = dsp::stft(seg, window, window, kSr, dsp::WindowType::Hann);
    size_t peak = 1;
    for (size_t f = 1; f + 1 < spec.bins; ++f)
        if (std::abs(spec.at(0, f)) > std::abs(spec.at(0, peak))) peak = f;
    const double a = std::abs(spec.at(0, peak - 1));
    const double b = std::abs(spec.at(0, peak));
    const double c = std::abs(spec.at(0, peak + 1));
    const double denom = a - 2.0 * b + c;
    const double delta = (std::abs(denom) > 1e-30) ? 0.5 * (a - c) / denom : 0.0;
    return (static_cast<double>(peak) + delta) * kSr / static_cast<double>(window);
}

}  // namespace

TEST_CASE("fractional delay read") {
    std::vector<double> s{0.0, 1.0, 2.0, 3.0, 4.0};
    CHECK(fractional_delay_read(s, 2.0) == doctest::Approx(2.0));
    CHECK(fractional_delay_read({0.0, 1.0}, 0.5) == doctest::Approx(0.5));
    CHECK(fractional_delay_read(s, 3.25) == doctest::Approx(3.25));  // exact on ramps
    CHECK(fractional_delay_read(s, -0.1) == 0.0);
    CHECK(fractional_delay_read(s, 4.5) == 0.0);
}

TEST_CASE("median-plane source renders symmetrically") {
    const auto mono = sine(500.0, 0.5);
    const auto traj = stationary({1.0, 0.0, 0.0}, 1.0);
    const auto r = render_binaural(mono, kSr, traj);

    const size_t skip = 2000;  // past the leading propagation silence
    const double db = 20.0 * std::log10(rms(r.signal.left, skip) / rms(r.signal.right, skip));
    CHECK(std::abs(db) < 0.01);

    const auto maps = dsp::interaural_maps(
        dsp::stft(r.signal.left, 1024, 256, kSr), dsp::stft(r.signal.right, 1024, 256, kSr));
    // Mean IPD over voiced bins (bin of 500 Hz).
    const size_t bin = static_cast<size_t>(500.0 * 1024.0 / kSr + 0.5);
    double mean_ipd = 0.0;
    for (size_t t = 2; t < maps.frames; ++t) mean_ipd += maps.ipd[t * maps.bins + bin];
    mean_ipd /= static_cast<double>(maps.frames - 2);
    CHECK(std::abs(mean_ipd) < 0.01);
}

TEST_CASE("inverse distance law: 2 m vs 1 m drops about 6 dB") {
    const auto mono = sine(500.0, 0.4);
    RenderConfig cfg;
    cfg.head_shadow_strength = 0.0;  // isolate the 1/r law
    const auto near = render_binaural(mono, kSr, stationary({1.0, 0.0, 0.0}, 1.0), cfg);
    const auto far = render_binaural(mono, kSr, stationary({2.0, 0.0, 0.0}, 1.0), cfg);
    const size_t skip = 2000;
    const double drop =
        20.0 * std::log10(rms(near.signal.left, skip) / rms(far.signal.left, skip));
    // Ear-to-source distances: sqrt(1 + 0.09^2) vs sqrt(4 + 0.09^2).
    const double expected =
        20.0 * std::log10(std::sqrt(4.0 + 0.09 * 0.09) / std::sqrt(1.0 + 0.09 * 0.09));
    CHECK(drop == doctest::Approx(expected).epsilon(0.1 / expected));
}

TEST_CASE("approaching source is Doppler shifted to the closed-form frequency") {
    // 1 kHz tone, source approaching the head center at 34.3 m/s.
    const double duration = 1.0;
    const auto mono = sine(1000.0, duration);
    geom::Trajectory traj;
    traj.samples.emplace_back(0.0, geom::Vec3{40.0, 0.0, 0.0}, geom::Quat());
    traj.samples.emplace_back(1.1, geom::Vec3{40.0 - 34.3 * 1.1, 0.0, 0.0}, geom::Quat());
    const auto r = render_binaural(mono, kSr, traj);

    const double measured = dominant_frequency(r.signal.left, 24000, 16384);
    const double expected = geom::doppler_shift(1000.0, -34.3, 343.0);  // 1111.11 Hz
    CHECK(measured == doctest::Approx(expected).epsilon(0.01));
}

TEST_CASE("ITD: cross-correlation lag matches (r_l - r_r) / c") {
    drama::num::Rng rng(17);
    std::vector<double> mono(static_cast<size_t>(0.3 * kSr));
    for (auto& v : mono) v = rng.normal();
    const geom::Vec3 src{0.0, 3.0, 0.0};  // far left
    const auto traj = stationary(src, 1.0);
    const auto r = render_binaural(mono, kSr, traj);

    // The right ear is farther: its channel lags by (r_r - r_l) / c.
    const auto [ear_l, ear_r] = geom::ear_positions(traj.listener);
    const double expected_lag = (geom::norm(src - ear_r) - geom::norm(src - ear_l)) / 343.0 * kSr;

    // Brute-force integer-lag cross-correlation.
    int best_lag = 0;
    double best = -1e300;
    for (int lag = -64; lag <= 64; ++lag) {
        double acc = 0.0;
        for (size_t i = 1000; i + 1000 < r.signal.left.size(); ++i) {
            const long j = static_cast<long>(i) + lag;
            if (j < 0 || j >= static_cast<long>(r.signal.right.size())) continue;
            acc += r.signal.left[i] * r.signal.right[j];
        }
        if (acc > best) {
            best = acc;
            best_lag = lag;
        }
    }
    CHECK(std::abs(static_cast<double>(best_lag) - expected_lag) <= 0.5);
}

TEST_CASE("energy monotonicity in distance") {
    const auto mono = sine(500.0, 0.3);
    const size_t skip = 4000;
    double prev_l = 1e300, prev_r = 1e300;
    for (double d : {1.0, 1.5, 2.5, 4.0}) {
        const auto r = render_binaural(mono, kSr, stationary({d, 0.3, 0.0}, 1.0));
        const double rl = rms(r.signal.left, skip);
        const double rr = rms(r.signal.right, skip);
        CHECK(rl <= prev_l);
        CHECK(rr <= prev_r);
        prev_l = rl;
        prev_r = rr;
    }
}

TEST_CASE("render stats") {
    SUBCASE("stationary source distance bounds") {
        const auto mono = sine(500.0, 0.2);
        const auto r = render_binaural(mono, kSr, stationary({1.0, 0.0, 0.0}, 1.0));
        CHECK(r.stats.min_distance_l == doctest::Approx(r.stats.max_distance_l));
        CHECK(r.stats.min_distance_l ==
              doctest::Approx(std::sqrt(1.0 + 0.09 * 0.09)).epsilon(1e-9));
        CHECK(r.stats.max_abs_v_rad == doctest::Approx(0.0));
    }
    SUBCASE("silent input renders silence with no out-of-support reads") {
        std::vector<double> mono(4800, 0.0);
        const auto r = render_binaural(mono, kSr, stationary({1.0, 0.0, 0.0}, 1.0));
        for (double v : r.signal.left) CHECK(v == 0.0);
        for (double v : r.signal.right) CHECK(v == 0.0);
    }
    SUBCASE("linear fly-by: max radial speed approaches source speed") {
        geom::Trajectory traj;
        const double speed = 5.0;
        traj.samples.emplace_back(0.0, geom::Vec3{-50.0, 2.0, 0.0}, geom::Quat());
        traj.samples.emplace_back(20.0, geom::Vec3{-50.0 + speed * 20.0, 2.0, 0.0}, geom::Quat());
        const auto mono = sine(200.0, 0.1);
        const auto r = render_binaural(mono, kSr, traj);
        // Far-field limit attained at the trajectory endpoints.
        CHECK(r.stats.max_abs_v_rad <= speed + 1e-9);
        CHECK(r.stats.max_abs_v_rad == doctest::Approx(speed).epsilon(2e-3));
    }
}

TEST_CASE("renderer ties to the analytic Doppler factor on constant-velocity segments") {
    const double v_rad = 20.0;  // receding
    const auto mono = sine(2000.0, 1.0);
    geom::Trajectory traj;
    traj.samples.emplace_back(0.0, geom::Vec3{5.0, 0.0, 0.0}, geom::Quat());
    traj.samples.emplace_back(2.0, geom::Vec3{5.0 + v_rad * 2.0, 0.0, 0.0}, geom::Quat());
    const auto r = render_binaural(mono, kSr, traj);
    const double measured = dominant_frequency(r.signal.left, 16000, 16384);
    CHECK(measured ==
          doctest::Approx(geom::doppler_shift(2000.0, v_rad, 343.0)).epsilon(0.01));
}

TEST_CASE("render errors and determinism") {
    const auto mono = sine(500.0, 0.1);
    SUBCASE("source at the ear") {
        geom::Trajectory traj = stationary({0.0, 0.09, 0.0}, 1.0);
        CHECK_THROWS_AS(render_binaural(mono, kSr, traj), std::domain_error);
    }
    SUBCASE("trajectory shorter than signal") {
        geom::Trajectory traj = stationary({1.0, 0.0, 0.0}, 0.01);
        CHECK_THROWS_AS(render_binaural(mono, kSr, traj), std::invalid_argument);
    }
    SUBCASE("bit-identical repeat") {
        const auto traj = stationary({1.2, 0.4, 0.1}, 1.0);
        const auto a = render_binaural(mono, kSr, traj);
        const auto b = render_binaural(mono, kSr, traj);
        CHECK(a.signal.left == b.signal.left);
        CHECK(a.signal.right == b.signal.right);
    }
}
