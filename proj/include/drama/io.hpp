#pragma once

// JSON schemas (trajectory, script, metric reports) and the key=value
// config file feeding render/DSP parameters.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "drama/geom.hpp"
#include "drama/render.hpp"
#include "drama/segment.hpp"

namespace drama::io {

/// Parse a trajectory JSON document:
/// { "listener": {"position":[x,y,z], "orientation":[w,x,y,z],
///   "ear_half_spacing": s},
///   "samples": [{"t":sec, "position":[...], "orientation":[...]}, ...] }
/// Strict mode rejects unknown keys. Throws std::runtime_error with the
/// offending field name on malformed input.
geom::Trajectory parse_trajectory(const std::string& json_text, bool lax = false);
geom::Trajectory load_trajectory(const std::string& path, bool lax = false);

std::vector<segment::ScriptLine> parse_script(const std::string& json_text, bool lax = false);
std::vector<segment::ScriptLine> load_script(const std::string& path, bool lax = false);

std::string segments_to_json(const std::vector<segment::Segment>& segments);

struct MetricReport {
    double ipd_mae = 0.0;
    double ild_mae = 0.0;
    std::optional<double> angle_cos;
    std::optional<double> dis_cos;
};

std::string metric_report_to_json(const MetricReport& r);
std::string render_stats_to_json(const render::RenderStats& s);

/// key = value lines; '#' starts a comment. Unknown keys are an error
/// (the CLI surfaces them as input errors).
struct Config {
    std::map<std::string, double> values;

    double get(const std::string& key, double fallback) const;
};

Config parse_config(const std::string& text);
Config load_config(const std::string& path);

/// Known config keys: c, reference_distance, head_shadow_strength,
/// ear_half_spacing, window_size, hop_size, mel_bins, max_segment_duration,
/// and the demo knobs (embed_dim, hidden_dim, batch, train_steps,
/// learning_rate, noise_sigma, tau).
bool is_known_config_key(const std::string& key);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace drama::io
