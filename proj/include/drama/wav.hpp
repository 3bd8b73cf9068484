#pragma once

// Minimal RIFF/WAVE reader and writer.
// Reads 16-bit PCM and 32-bit float, 1 or 2 channels; writes 32-bit float.

#include <string>
#include <vector>

#include "drama/dsp.hpp"

namespace drama::wav {

struct WavData {
    double sample_rate = 0.0;
    std::vector<std::vector<double>> channels;  // 1 or 2

    size_t length() const { return channels.empty() ? 0 : channels[0].size(); }
};

/// Throws std::runtime_error on malformed or unsupported files.
WavData read_wav(const std::string& path);

/// Writes 32-bit float WAV. Samples written verbatim (no clipping).
void write_wav(const std::string& path, const std::vector<std::vector<double>>& channels,
               double sample_rate);

dsp::BinauralSignal read_binaural(const std::string& path);
void write_binaural(const std::string& path, const dsp::BinauralSignal& sig);

}  // namespace drama::wav
