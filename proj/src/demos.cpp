#include "drama/demos.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "drama/contrastive.hpp"
#include "drama/flow.hpp"
#include "drama/geom.hpp"
#include "drama/nn.hpp"

namespace drama::demos {

using namespace drama::num;
using nn::Linear;

namespace {

// Two-component mixture: N((-1.5, 0.6), 0.3^2 I) and N((1.2, -0.8), 0.3^2 I).
void sample_mixture(Rng& rng, double& x, double& y) {
    if (rng.uniform() < 0.5) {
        x = -1.5 + 0.3 * rng.normal();
        y = 0.6 + 0.3 * rng.normal();
    } else {
        x = 1.2 + 0.3 * rng.normal();
        y = -0.8 + 0.3 * rng.normal();
    }
}

struct FieldNet {
    Linear l1, l2, l3;

    static FieldNet init(size_t hidden, Rng& rng) {
        FieldNet n;
        n.l1 = Linear::init(3, hidden, rng);
        n.l2 = Linear::init(hidden, hidden, rng);
        n.l3 = Linear::init(hidden, 2, rng);
        return n;
    }
    Tensor forward(const Tensor& xt) const {
        return l3.forward(gelu(l2.forward(gelu(l1.forward(xt)))));
    }
    std::vector<Tensor> params() const {
        std::vector<Tensor> out;
        for (const auto& l : {l1, l2, l3})
            for (const auto& t : l.params()) out.push_back(t);
        return out;
    }
};

Tensor with_time_column(const Tensor& x, double t) {
    Tensor tt = Tensor::zeros({x.rows(), 1});
    for (auto& v : tt.data()) v = t;
    return concat_cols(x, tt);
}

struct Mlp {
    Linear l1, l2;

    static Mlp init(size_t d_in, size_t hidden, size_t d_out, Rng& rng) {
        return {Linear::init(d_in, hidden, rng), Linear::init(hidden, d_out, rng)};
    }
    Tensor forward(const Tensor& x) const { return l2.forward(gelu(l1.forward(x))); }
    std::vector<Tensor> params() const {
        std::vector<Tensor> out;
        for (const auto& l : {l1, l2})
            for (const auto& t : l.params()) out.push_back(t);
        return out;
    }
};

// A synthetic pose item covering the three contrast families: positional
// (distance/angle), postural (orientation), dynamic (speed/direction).
std::vector<double> random_pose_feature(Rng& rng) {
    geom::Trajectory traj;
    traj.listener.head_position = {0, 0, 0};
    traj.listener.ear_half_spacing = 0.09;

    const double dist = rng.uniform(0.5, 4.0);                   // positional
    const double az = rng.uniform(-3.1, 3.1);
    const double el = rng.uniform(-0.6, 0.6);
    geom::Vec3 pos{dist * std::cos(el) * std::cos(az), dist * std::cos(el) * std::sin(az),
                   dist * std::sin(el)};

    const bool moving = rng.uniform() < 0.7;                     // dynamic
    const double speed = moving ? rng.uniform(0.2, 3.0) : 0.0;
    geom::Vec3 dir{rng.normal(), rng.normal(), rng.normal()};
    const double dn = geom::norm(dir);
    geom::Vec3 vel = (dn > 0.0) ? dir * (speed / dn) : geom::Vec3{};

    geom::Quat ori = geom::Quat::from_axis_angle({0, 0, 1}, rng.uniform(-3.1, 3.1));  // postural

    traj.samples.emplace_back(0.0, pos, ori);
    traj.samples.emplace_back(1.0, pos + vel, ori);
    const auto f = geom::geo_pose_feature(traj, 0.5);

    return {f.pos_l.x, f.pos_l.y, f.pos_l.z, f.pos_r.x, f.pos_r.y, f.pos_r.z,
            f.ori.w, f.ori.x, f.ori.y, f.ori.z, f.v_rad_l, f.v_rad_r};
}

Tensor gather_rows(const std::vector<std::vector<double>>& items,
                   const std::vector<size_t>& idx) {
    const size_t d = items[0].size();
    Tensor out = Tensor::zeros({idx.size(), d});
    for (size_t r = 0; r < idx.size(); ++r)
        for (size_t c = 0; c < d; ++c) out.data()[r * d + c] = items[idx[r]][c];
    return out;
}

// Retrieval@1 between row-normalized embedding batches.
double retrieval_at_1(const Tensor& query, const Tensor& key) {
    const size_t N = query.rows();
    Tensor qn = contrastive::normalize_rows(query);
    Tensor kn = contrastive::normalize_rows(key);
    Tensor sim = matmul(qn, transpose(kn));
    size_t hits = 0;
    for (size_t r = 0; r < N; ++r) {
        size_t best = 0;
        for (size_t c = 1; c < N; ++c)
            if (sim.data()[r * N + c] > sim.data()[r * N + best]) best = c;
        if (best == r) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(N);
}

}  // namespace

double energy_distance(const std::vector<std::vector<double>>& a,
                       const std::vector<std::vector<double>>& b) {
    auto pair_mean = [](const std::vector<std::vector<double>>& u,
                        const std::vector<std::vector<double>>& v) {
        double s = 0.0;
        for (const auto& x : u)
            for (const auto& y : v) {
                double d2 = 0.0;
                for (size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
                s += std::sqrt(d2);
            }
        return s / (static_cast<double>(u.size()) * static_cast<double>(v.size()));
    };
    return 2.0 * pair_mean(a, b) - pair_mean(a, a) - pair_mean(b, b);
}

FlowDemoReport demo_toy_flow(uint64_t seed, const DemoConfig& cfg) {
    Rng rng(seed);
    FieldNet net = FieldNet::init(cfg.hidden_dim, rng);
    nn::Adam opt(net.params(), cfg.learning_rate);

    FlowDemoReport report;
    report.seed = seed;

    for (size_t step = 0; step < cfg.train_steps; ++step) {
        Tensor x0 = rng.normal_tensor({cfg.batch, 2});
        Tensor x1 = Tensor::zeros({cfg.batch, 2});
        for (size_t r = 0; r < cfg.batch; ++r)
            sample_mixture(rng, x1.data()[r * 2], x1.data()[r * 2 + 1]);
        const double t = rng.uniform();
        Tensor xt = flow::flow_interpolate(x0, x1, t);

        Tensor v = net.forward(with_time_column(xt, t));
        Tensor loss = flow::rfm_loss(v, x0, x1);
        if (!std::isfinite(loss.item()))
            throw std::runtime_error("demo_toy_flow: non-finite loss at step " +
                                     std::to_string(step));

        opt.zero_grad();
        loss.backward();
        opt.step();

        if (step % 50 == 0) report.loss_curve.push_back(loss.item());
        report.final_loss = loss.item();
    }

    // Sample the learned field and compare against fresh target draws.
    Tensor x = rng.normal_tensor({cfg.sample_count, 2});
    auto field = [&net](const Tensor& state, double t) {
        return net.forward(with_time_column(state, t));
    };
    Tensor gen = flow::euler_solve(field, x, cfg.euler_steps);

    std::vector<std::vector<double>> gen_pts(cfg.sample_count, std::vector<double>(2));
    std::vector<std::vector<double>> tgt_pts(cfg.sample_count, std::vector<double>(2));
    double mx = 0.0, my = 0.0;
    for (size_t r = 0; r < cfg.sample_count; ++r) {
        gen_pts[r][0] = gen.data()[r * 2];
        gen_pts[r][1] = gen.data()[r * 2 + 1];
        mx += gen_pts[r][0];
        my += gen_pts[r][1];
        sample_mixture(rng, tgt_pts[r][0], tgt_pts[r][1]);
    }
    report.mean_x = mx / static_cast<double>(cfg.sample_count);
    report.mean_y = my / static_cast<double>(cfg.sample_count);
    report.energy_distance = energy_distance(gen_pts, tgt_pts);
    return report;
}

PoseDemoReport demo_pose_alignment(uint64_t seed, const DemoConfig& cfg) {
    Rng rng(seed);
    constexpr size_t kFeatureDim = 12;
    const size_t view_dim = 2 * kFeatureDim;

    // Fixed random linear maps produce the "video-like" / "text-like" views.
    Tensor vid_map = rng.normal_tensor({kFeatureDim, view_dim},
                                       1.0 / std::sqrt(static_cast<double>(kFeatureDim)));
    Tensor txt_map = rng.normal_tensor({kFeatureDim, view_dim},
                                       1.0 / std::sqrt(static_cast<double>(kFeatureDim)));

    std::vector<std::vector<double>> items(cfg.dataset_size);
    for (auto& it : items) it = random_pose_feature(rng);
    const size_t train_count = cfg.dataset_size - cfg.holdout;

    Mlp enc_geo = Mlp::init(kFeatureDim, cfg.hidden_dim, cfg.embed_dim, rng);
    Mlp enc_vid = Mlp::init(view_dim, cfg.hidden_dim, cfg.embed_dim, rng);
    Mlp enc_txt = Mlp::init(view_dim, cfg.hidden_dim, cfg.embed_dim, rng);

    std::vector<Tensor> params = enc_geo.params();
    for (const auto& t : enc_vid.params()) params.push_back(t);
    for (const auto& t : enc_txt.params()) params.push_back(t);
    nn::Adam opt(params, cfg.learning_rate);

    auto make_view = [&](const Tensor& geo_batch, const Tensor& map) {
        Tensor v = matmul(geo_batch, map);
        Tensor noise = Tensor::zeros({v.rows(), v.cols()});
        for (auto& n : noise.data()) n = cfg.noise_sigma * rng.normal();
        return add(v, noise);
    };

    PoseDemoReport report;
    report.seed = seed;

    for (size_t step = 0; step < cfg.train_steps; ++step) {
        std::vector<size_t> idx(cfg.batch);
        for (auto& i : idx) i = rng.index(train_count);
        Tensor geo_raw = gather_rows(items, idx);

        Tensor z_geo = enc_geo.forward(geo_raw);
        Tensor z_vid = enc_vid.forward(make_view(geo_raw, vid_map));
        Tensor z_txt = enc_txt.forward(make_view(geo_raw, txt_map));
        Tensor loss = contrastive::total_contrastive(z_geo, z_vid, z_txt, cfg.tau);
        if (!std::isfinite(loss.item()))
            throw std::runtime_error("demo_pose_alignment: non-finite loss at step " +
                                     std::to_string(step));

        opt.zero_grad();
        loss.backward();
        opt.step();

        if (step % 50 == 0) report.loss_curve.push_back(loss.item());
        report.final_loss = loss.item();
    }

    // Held-out retrieval.
    std::vector<size_t> held(cfg.holdout);
    for (size_t i = 0; i < cfg.holdout; ++i) held[i] = train_count + i;
    Tensor geo_raw = gather_rows(items, held);
    Tensor z_geo = enc_geo.forward(geo_raw);
    Tensor z_vid = enc_vid.forward(make_view(geo_raw, vid_map));
    Tensor z_txt = enc_txt.forward(make_view(geo_raw, txt_map));
    report.retrieval_at_1 =
        0.5 * (retrieval_at_1(z_geo, z_vid) + retrieval_at_1(z_geo, z_txt));
    return report;
}

}  // namespace drama::demos
