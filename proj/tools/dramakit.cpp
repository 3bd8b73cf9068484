// dramakit: render, score, inspect, segment, and run the toy demos.
//
// Exit codes: 0 success, 2 input error, 3 numeric error.

#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "drama/contrastive.hpp"
#include "drama/demos.hpp"
#include "drama/dsp.hpp"
#include "drama/flow.hpp"
#include "drama/geom.hpp"
#include "drama/io.hpp"
#include "drama/render.hpp"
#include "drama/segment.hpp"
#include "drama/ssm.hpp"
#include "drama/wav.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct GlobalOpts {
    std::string config_path;
    uint64_t seed = 0;
    bool lax = false;
};

drama::io::Config load_global_config(const GlobalOpts& g) {
    if (g.config_path.empty()) return {};
    return drama::io::load_config(g.config_path);
}

int run_render(const GlobalOpts& g, const std::string& mono_path, const std::string& traj_path,
               const std::string& out_path, const std::string& stats_path) {
    drama::render::RenderConfig cfg;
    drama::geom::Trajectory traj;
    drama::wav::WavData mono;
    try {
        const auto conf = load_global_config(g);
        cfg.c = conf.get("c", cfg.c);
        cfg.reference_distance = conf.get("reference_distance", cfg.reference_distance);
        cfg.head_shadow_strength = conf.get("head_shadow_strength", cfg.head_shadow_strength);
        traj = drama::io::load_trajectory(traj_path, g.lax);
        if (conf.values.count("ear_half_spacing"))
            traj.listener.ear_half_spacing = conf.get("ear_half_spacing", 0.09);
        mono = drama::wav::read_wav(mono_path);
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    try {
        const auto result =
            drama::render::render_binaural(mono.channels[0], mono.sample_rate, traj, cfg);
        drama::wav::write_binaural(out_path, result.signal);
        if (!stats_path.empty())
            drama::io::write_file(stats_path, drama::io::render_stats_to_json(result.stats));
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}

int run_metrics(const GlobalOpts& g, const std::string& gt_path, const std::string& pred_path,
                const std::string& out_path) {
    drama::dsp::BinauralSignal gt, pred;
    size_t window = drama::dsp::kDefaultWindowSize, hop = drama::dsp::kDefaultHop;
    try {
        const auto conf = load_global_config(g);
        window = static_cast<size_t>(conf.get("window_size", static_cast<double>(window)));
        hop = static_cast<size_t>(conf.get("hop_size", static_cast<double>(hop)));
        gt = drama::wav::read_binaural(gt_path);
        pred = drama::wav::read_binaural(pred_path);
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    try {
        auto maps = [&](const drama::dsp::BinauralSignal& s) {
            return drama::dsp::interaural_maps(
                drama::dsp::stft(s.left, window, hop, s.sample_rate),
                drama::dsp::stft(s.right, window, hop, s.sample_rate));
        };
        const auto [ipd, ild] = drama::dsp::interaural_mae(maps(gt), maps(pred));
        drama::io::MetricReport report;
        report.ipd_mae = ipd;
        report.ild_mae = ild;
        const std::string json_text = drama::io::metric_report_to_json(report);
        if (out_path.empty())
            std::cout << json_text << "\n";
        else
            drama::io::write_file(out_path, json_text);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}

int run_doppler(const GlobalOpts& g, const std::string& traj_path, const std::string& out_path) {
    drama::geom::Trajectory traj;
    double c = drama::geom::kSpeedOfSound;
    try {
        const auto conf = load_global_config(g);
        c = conf.get("c", c);
        traj = drama::io::load_trajectory(traj_path, g.lax);
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    try {
        std::ostringstream csv;
        csv << "t,v_rad_l,v_rad_r,factor_l,factor_r\n";
        for (const auto& s : traj.samples) {
            const auto f = drama::geom::geo_pose_feature(traj, s.t);
            csv << s.t << "," << f.v_rad_l << "," << f.v_rad_r << ","
                << c / (c + f.v_rad_l) << "," << c / (c + f.v_rad_r) << "\n";
        }
        if (out_path.empty())
            std::cout << csv.str();
        else
            drama::io::write_file(out_path, csv.str());
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}

int run_segment(const GlobalOpts& g, const std::string& script_path, const std::string& out_path) {
    try {
        const auto conf = load_global_config(g);
        const double max_dur = conf.get("max_segment_duration", 16.0);
        const auto lines = drama::io::load_script(script_path, g.lax);
        const auto segs = drama::segment::segment_script(lines, max_dur);
        const std::string json_text = drama::io::segments_to_json(segs);
        if (out_path.empty())
            std::cout << json_text << "\n";
        else
            drama::io::write_file(out_path, json_text);
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}

int run_demo(const GlobalOpts& g, const std::string& which, const std::string& out_path) {
    drama::demos::DemoConfig cfg;
    try {
        const auto conf = load_global_config(g);
        cfg.embed_dim = static_cast<size_t>(conf.get("embed_dim", 32));
        cfg.hidden_dim = static_cast<size_t>(conf.get("hidden_dim", 64));
        cfg.batch = static_cast<size_t>(conf.get("batch", 64));
        cfg.train_steps = static_cast<size_t>(conf.get("train_steps", 2000));
        cfg.learning_rate = conf.get("learning_rate", 1e-3);
        cfg.noise_sigma = conf.get("noise_sigma", 0.1);
        cfg.tau = conf.get("tau", 0.1);
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }
    try {
        nlohmann::json j;
        if (which == "flow") {
            const auto r = drama::demos::demo_toy_flow(g.seed, cfg);
            j = {{"seed", r.seed},
                 {"loss_curve", r.loss_curve},
                 {"final_loss", r.final_loss},
                 {"energy_distance", r.energy_distance},
                 {"mean", {r.mean_x, r.mean_y}}};
        } else if (which == "pose") {
            const auto r = drama::demos::demo_pose_alignment(g.seed, cfg);
            j = {{"seed", r.seed},
                 {"loss_curve", r.loss_curve},
                 {"final_loss", r.final_loss},
                 {"retrieval_at_1", r.retrieval_at_1}};
        } else {
            std::cerr << "input error: unknown demo \"" << which << "\" (flow|pose)\n";
            return kExitInput;
        }
        if (out_path.empty())
            std::cout << j.dump(2) << "\n";
        else
            drama::io::write_file(out_path, j.dump(2));
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}

// Quick in-process invariant sweeps, one per suite.
bool check_kernels(uint64_t seed) {
    using namespace drama;
    num::Rng rng(seed ? seed : 7);
    bool ok = true;

    for (int trial = 0; trial < 20; ++trial) {
        const size_t n = 1 + rng.index(8);
        const size_t m = 1 + rng.index(64);
        ssm::SsmParams p;
        p.A = ssm::Mat(n, n);
        for (auto& v : p.A.data) v = rng.uniform(-1.0, 1.0);
        for (size_t i = 0; i < n; ++i) p.A.at(i, i) -= 1.5;
        p.B.resize(n);
        p.C.resize(n);
        for (auto& v : p.B) v = rng.uniform(-1.0, 1.0);
        for (auto& v : p.C) v = rng.uniform(-1.0, 1.0);
        p.delta = rng.uniform(0.05, 0.5);
        const auto d = ssm::zoh_discretize(p);
        std::vector<double> x(m);
        for (auto& v : x) v = rng.uniform(-1.0, 1.0);
        const auto y1 = ssm::ssm_scan(d, p.C, x);
        const auto y2 = ssm::conv_apply(ssm::ssm_kernel(d, p.C, m), x);
        for (size_t i = 0; i < m; ++i)
            if (std::abs(y1[i] - y2[i]) > 1e-10) ok = false;
    }

    // CFG fixed point.
    flow::CfgWeights w{2.7, 0.31};
    num::Tensor v = rng.normal_tensor({4});
    num::Tensor out = flow::cfg_field(v, v, v, w);
    for (size_t i = 0; i < v.size(); ++i)
        if (std::abs(out.data()[i] - v.data()[i]) > 1e-12) ok = false;
    return ok;
}

int run_check(uint64_t seed, const std::string& suite) {
    bool ok = true;
    if (suite == "kernels" || suite == "all") ok = check_kernels(seed) && ok;
    if (suite != "kernels" && suite != "all") {
        std::cerr << "input error: unknown suite \"" << suite << "\" (kernels|all)\n";
        return kExitInput;
    }
    std::cout << (ok ? "check passed" : "check FAILED") << "\n";
    return ok ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binaural drama toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "key=value config file");
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_flag("--lax", g.lax, "accept unknown JSON keys");

    std::string mono_path, traj_path, out_path, stats_path, gt_path, pred_path, script_path,
        demo_kind, suite = "all";

    auto* render = app.add_subcommand("render", "render mono WAV + trajectory to binaural");
    render->add_option("mono", mono_path, "mono input WAV")->required();
    render->add_option("trajectory", traj_path, "trajectory JSON")->required();
    render->add_option("output", out_path, "stereo output WAV")->required();
    render->add_option("--stats", stats_path, "stats JSON path");

    auto* metrics = app.add_subcommand("metrics", "IPD/ILD MAE between two binaural WAVs");
    metrics->add_option("gt", gt_path, "ground-truth WAV")->required();
    metrics->add_option("pred", pred_path, "predicted WAV")->required();
    metrics->add_option("--out", out_path, "report JSON path (default stdout)");

    auto* doppler = app.add_subcommand("doppler", "per-sample radial velocities and factors");
    doppler->add_option("trajectory", traj_path, "trajectory JSON")->required();
    doppler->add_option("--out", out_path, "CSV path (default stdout)");

    auto* seg = app.add_subcommand("segment", "segment a script by speaker and duration cap");
    seg->add_option("script", script_path, "script JSON")->required();
    seg->add_option("--out", out_path, "segments JSON path (default stdout)");

    auto* demo = app.add_subcommand("demo", "run a training demo (flow|pose)");
    demo->add_option("kind", demo_kind, "flow or pose")->required();
    demo->add_option("--out", out_path, "report JSON path (default stdout)");

    auto* check = app.add_subcommand("check", "run an invariant suite");
    check->add_option("suite", suite, "suite name (kernels|all)");

    CLI11_PARSE(app, argc, argv);

    if (render->parsed()) return run_render(g, mono_path, traj_path, out_path, stats_path);
    if (metrics->parsed()) return run_metrics(g, gt_path, pred_path, out_path);
    if (doppler->parsed()) return run_doppler(g, traj_path, out_path);
    if (seg->parsed()) return run_segment(g, script_path, out_path);
    if (demo->parsed()) return run_demo(g, demo_kind, out_path);
    if (check->parsed()) return run_check(g.seed, suite);
    return kExitInput;
}
