#include <cmath>
#include <numbers>

#include <doctest.h>

#include "drama/fan.hpp"
#include "drama/nn.hpp"

using namespace drama::fan;
using drama::num::grad_check;

TEST_CASE("fan layer shape and block layout") {
    drama::num::Rng rng(31);
    auto p = FanParams::init(3, 4, 5, rng);
    CHECK(p.output_dim() == 13);
    auto x = rng.normal_tensor({2, 3});
    auto y = fan_layer(x, p);
    CHECK(y.rows() == 2);
    CHECK(y.cols() == 13);

    // cos/sin blocks obey the Pythagorean identity per coordinate.
    for (size_t r = 0; r < 2; ++r)
        for (size_t j = 0; j < 4; ++j) {
            const double c = y.data()[r * 13 + j];
            const double s = y.data()[r * 13 + 4 + j];
            CHECK(c * c + s * s == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("fan at zero input: cos block is one, sin block is zero") {
    drama::num::Rng rng(32);
    auto p = FanParams::init(2, 3, 2, rng);
    auto y = fan_layer(Tensor::zeros({1, 2}), p);
    for (size_t j = 0; j < 3; ++j) {
        CHECK(y.data()[j] == doctest::Approx(1.0));
        CHECK(y.data()[3 + j] == doctest::Approx(0.0));
    }
    // The gated block reduces to GELU(b_pbar).
    for (size_t j = 0; j < 2; ++j) {
        const double b = p.b_pbar.data()[j];
        auto g = gelu(Tensor::from({1}, {b}));
        CHECK(y.data()[6 + j] == doctest::Approx(g.data()[0]).epsilon(1e-12));
    }
}

TEST_CASE("fan periodicity in the projected coordinate") {
    // With W_p = I, shifting x by 2*pi in a coordinate leaves cos/sin blocks
    // unchanged (the GELU block moves, which is the point of the split).
    drama::num::Rng rng(33);
    auto p = FanParams::init(2, 2, 3, rng);
    p.w_p = Tensor::from({2, 2}, {1, 0, 0, 1});
    auto x = rng.normal_tensor({4, 2});
    auto shifted = add_scalar(x, 2.0 * std::numbers::pi);
    auto a = fan_layer(x, p);
    auto b = fan_layer(shifted, p);
    for (size_t r = 0; r < 4; ++r)
        for (size_t j = 0; j < 4; ++j)  // the 2*d_p periodic columns
            CHECK(b.data()[r * 7 + j] == doctest::Approx(a.data()[r * 7 + j]).epsilon(1e-9));
}

TEST_CASE("fan layer extrapolates a pure sinusoid beyond the fit range") {
    // Fit y = sin(3x) on [0, 4] with a frozen frequency dictionary in the
    // periodic branch and a trained linear readout (convex), then probe
    // x in [8, 10]; the periodic basis keeps the error small out of range.
    drama::num::Rng rng(34);
    auto p = FanParams::init(1, 6, 4, rng);
    p.w_p = Tensor::from({1, 6}, {0.5, 1.0, 2.0, 3.0, 4.0, 5.0});
    auto w_out = rng.normal_tensor({p.output_dim(), 1}, 0.1, true);

    const size_t n = 64;
    auto x = Tensor::zeros({n, 1});
    auto y = Tensor::zeros({n, 1});
    for (size_t i = 0; i < n; ++i) {
        x.data()[i] = 4.0 * static_cast<double>(i) / (n - 1);
        y.data()[i] = std::sin(3.0 * x.data()[i]);
    }

    drama::nn::Adam opt({w_out}, 0.05);
    double fit = 1e300;
    for (int it = 0; it < 2000; ++it) {
        opt.zero_grad();
        auto err = sub(matmul(fan_layer(x, p), w_out), y);
        // Small ridge term keeps the readout on the parsimonious periodic
        // columns, which solve the problem exactly.
        auto loss = add(mean(mul(err, err)), scale(mean(mul(w_out, w_out)), 1e-3));
        loss.backward();
        opt.step();
        fit = loss.item();
    }
    CHECK(fit < 1e-2);

    auto xt = Tensor::zeros({32, 1});
    for (size_t i = 0; i < 32; ++i) xt.data()[i] = 8.0 + 2.0 * static_cast<double>(i) / 31.0;
    auto pred = matmul(fan_layer(xt, p), w_out);
    double mse = 0.0;
    for (size_t i = 0; i < 32; ++i) mse += std::pow(pred.data()[i] - std::sin(3.0 * xt.data()[i]), 2);
    mse /= 32.0;
    CHECK(mse < 0.05);
}

TEST_CASE("fan layer gradients") {
    drama::num::Rng rng(35);
    auto p = FanParams::init(3, 2, 2, rng);
    p.w_p.set_requires_grad(true);
    p.w_pbar.set_requires_grad(true);
    p.b_pbar.set_requires_grad(true);
    auto x = rng.normal_tensor({2, 3}, 1.0, true);
    auto probe = rng.normal_tensor({2, 6});

    auto loss = [&](const Tensor& xx, const FanParams& pp) {
        return sum(mul(fan_layer(xx, pp), probe));
    };
    CHECK(grad_check([&](const Tensor& t) { return loss(t, p); }, x) < 1e-6);
    CHECK(grad_check([&](const Tensor& t) {
              FanParams q{t, p.w_pbar, p.b_pbar};
              return loss(x, q);
          }, p.w_p) < 1e-6);
    CHECK(grad_check([&](const Tensor& t) {
              FanParams q{p.w_p, p.w_pbar, t};
              return loss(x, q);
          }, p.b_pbar) < 1e-6);
}
