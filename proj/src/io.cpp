#include "drama/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace drama::io {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where,
                bool lax) {
    if (lax) return;
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key))
            throw std::runtime_error("unknown key \"" + key + "\" in " + where +
                                     " (use --lax to ignore)");
}

geom::Vec3 parse_vec3(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3)
        throw std::runtime_error(where + " must be a 3-element array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

geom::Quat parse_quat(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 4)
        throw std::runtime_error(where + " must be a 4-element array [w,x,y,z]");
    try {
        return geom::Quat(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
                          j[3].get<double>());
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(where + ": " + e.what());
    }
}

json parse_or_throw(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::runtime_error("malformed JSON document");
    return j;
}

}  // namespace

geom::Trajectory parse_trajectory(const std::string& json_text, bool lax) {
    const json root = parse_or_throw(json_text);
    if (!root.is_object()) throw std::runtime_error("trajectory root must be an object");
    check_keys(root, {"listener", "samples"}, "trajectory", lax);

    geom::Trajectory traj;
    if (!root.contains("listener")) throw std::runtime_error("missing field \"listener\"");
    const json& lst = root["listener"];
    check_keys(lst, {"position", "orientation", "ear_half_spacing"}, "listener", lax);
    if (lst.contains("position"))
        traj.listener.head_position = parse_vec3(lst["position"], "listener.position");
    if (lst.contains("orientation"))
        traj.listener.head_orientation = parse_quat(lst["orientation"], "listener.orientation");
    if (lst.contains("ear_half_spacing")) {
        traj.listener.ear_half_spacing = lst["ear_half_spacing"].get<double>();
        if (!(traj.listener.ear_half_spacing >= 0.0))
            throw std::runtime_error("listener.ear_half_spacing must be >= 0");
    }

    if (!root.contains("samples") || !root["samples"].is_array())
        throw std::runtime_error("missing or non-array field \"samples\"");
    size_t i = 0;
    for (const json& s : root["samples"]) {
        const std::string where = "samples[" + std::to_string(i) + "]";
        check_keys(s, {"t", "position", "orientation"}, where, lax);
        if (!s.contains("t") || !s.contains("position"))
            throw std::runtime_error(where + " needs \"t\" and \"position\"");
        geom::Quat ori = s.contains("orientation")
                             ? parse_quat(s["orientation"], where + ".orientation")
                             : geom::Quat();
        try {
            traj.samples.emplace_back(s["t"].get<double>(),
                                      parse_vec3(s["position"], where + ".position"), ori);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(where + ": " + e.what());
        }
        ++i;
    }
    try {
        traj.validate();
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("samples: ") + e.what());
    }
    return traj;
}

geom::Trajectory load_trajectory(const std::string& path, bool lax) {
    return parse_trajectory(read_file(path), lax);
}

std::vector<segment::ScriptLine> parse_script(const std::string& json_text, bool lax) {
    const json root = parse_or_throw(json_text);
    const json* lines = &root;
    if (root.is_object()) {
        check_keys(root, {"lines"}, "script", lax);
        if (!root.contains("lines")) throw std::runtime_error("missing field \"lines\"");
        lines = &root["lines"];
    }
    if (!lines->is_array()) throw std::runtime_error("script lines must be an array");

    std::vector<segment::ScriptLine> out;
    size_t i = 0;
    for (const json& l : *lines) {
        const std::string where = "lines[" + std::to_string(i) + "]";
        check_keys(l, {"speaker_id", "text", "start", "end"}, where, lax);
        for (const char* field : {"speaker_id", "start", "end"})
            if (!l.contains(field))
                throw std::runtime_error(where + " missing field \"" + field + "\"");
        segment::ScriptLine line;
        line.speaker_id = l["speaker_id"].get<std::string>();
        line.text = l.value("text", "");
        line.start = l["start"].get<double>();
        line.end = l["end"].get<double>();
        out.push_back(std::move(line));
        ++i;
    }
    return out;
}

std::vector<segment::ScriptLine> load_script(const std::string& path, bool lax) {
    return parse_script(read_file(path), lax);
}

std::string segments_to_json(const std::vector<segment::Segment>& segments) {
    json arr = json::array();
    for (const auto& s : segments)
        arr.push_back({{"speaker_id", s.speaker_id},
                       {"first_line", s.first_line},
                       {"last_line", s.last_line},
                       {"start", s.start},
                       {"end", s.end}});
    return json{{"segments", arr}}.dump(2);
}

std::string metric_report_to_json(const MetricReport& r) {
    json j{{"ipd_mae", r.ipd_mae}, {"ild_mae", r.ild_mae}};
    if (r.angle_cos) j["angle_cos"] = *r.angle_cos;
    if (r.dis_cos) j["dis_cos"] = *r.dis_cos;
    return j.dump(2);
}

std::string render_stats_to_json(const render::RenderStats& s) {
    return json{{"min_distance_l", s.min_distance_l},
                {"max_distance_l", s.max_distance_l},
                {"min_distance_r", s.min_distance_r},
                {"max_distance_r", s.max_distance_r},
                {"max_abs_v_rad", s.max_abs_v_rad},
                {"out_of_support_reads", s.out_of_support_reads}}
        .dump(2);
}

double Config::get(const std::string& key, double fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

bool is_known_config_key(const std::string& key) {
    static const std::set<std::string> known = {
        "c", "reference_distance", "head_shadow_strength", "ear_half_spacing",
        "window_size", "hop_size", "mel_bins", "max_segment_duration",
        "embed_dim", "hidden_dim", "batch", "train_steps", "learning_rate",
        "noise_sigma", "tau"};
    return known.count(key) > 0;
}

Config parse_config(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
        };
        if (eq == std::string::npos) {
            if (!trim(line).empty())
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!is_known_config_key(key))
            throw std::runtime_error("config: unknown key \"" + key + "\"");
        try {
            cfg.values[key] = std::stod(val);
        } catch (const std::exception&) {
            throw std::runtime_error("config: non-numeric value for \"" + key + "\"");
        }
    }
    return cfg;
}

Config load_config(const std::string& path) { return parse_config(read_file(path)); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

}  // namespace drama::io
