#include "drama/wav.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace drama::wav {

namespace {

uint32_t read_u32(const uint8_t* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}
uint16_t read_u16(const uint8_t* p) {
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(v & 0xff);
    out.push_back((v >> 8) & 0xff);
    out.push_back((v >> 16) & 0xff);
    out.push_back((v >> 24) & 0xff);
}
void put_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(v & 0xff);
    out.push_back((v >> 8) & 0xff);
}

}  // namespace

WavData read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open WAV file: " + path);
    std::vector<uint8_t> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (buf.size() < 44 || std::memcmp(buf.data(), "RIFF", 4) != 0 ||
        std::memcmp(buf.data() + 8, "WAVE", 4) != 0)
        throw std::runtime_error("not a RIFF/WAVE file: " + path);

    uint16_t format = 0, channels = 0, bits = 0;
    uint32_t sample_rate = 0;
    const uint8_t* data = nullptr;
    size_t data_size = 0;

    size_t pos = 12;
    while (pos + 8 <= buf.size()) {
        const uint32_t chunk_size = read_u32(buf.data() + pos + 4);
        const uint8_t* body = buf.data() + pos + 8;
        if (pos + 8 + chunk_size > buf.size())
            throw std::runtime_error("truncated WAV chunk in " + path);
        if (std::memcmp(buf.data() + pos, "fmt ", 4) == 0) {
            if (chunk_size < 16) throw std::runtime_error("malformed fmt chunk in " + path);
            format = read_u16(body);
            channels = read_u16(body + 2);
            sample_rate = read_u32(body + 4);
            bits = read_u16(body + 14);
        } else if (std::memcmp(buf.data() + pos, "data", 4) == 0) {
            data = body;
            data_size = chunk_size;
        }
        pos += 8 + chunk_size + (chunk_size & 1);
    }

    if (!data || channels == 0) throw std::runtime_error("missing data/fmt chunk in " + path);
    if (channels > 2) throw std::runtime_error("unsupported channel count in " + path);
    const bool pcm16 = (format == 1 && bits == 16);
    const bool f32 = (format == 3 && bits == 32);
    if (!pcm16 && !f32)
        throw std::runtime_error("unsupported WAV format (need 16-bit PCM or 32-bit float): " + path);

    const size_t bytes_per_sample = bits / 8;
    const size_t frames = data_size / (bytes_per_sample * channels);

    WavData out;
    out.sample_rate = sample_rate;
    out.channels.assign(channels, std::vector<double>(frames));
    for (size_t i = 0; i < frames; ++i) {
        for (size_t ch = 0; ch < channels; ++ch) {
            const uint8_t* p = data + (i * channels + ch) * bytes_per_sample;
            if (pcm16) {
                int16_t v;
                std::memcpy(&v, p, 2);
                out.channels[ch][i] = static_cast<double>(v) / 32768.0;
            } else {
                float v;
                std::memcpy(&v, p, 4);
                out.channels[ch][i] = v;
            }
        }
    }
    return out;
}

void write_wav(const std::string& path, const std::vector<std::vector<double>>& channels,
               double sample_rate) {
    if (channels.empty() || channels.size() > 2)
        throw std::runtime_error("write_wav: need 1 or 2 channels");
    const size_t frames = channels[0].size();
    for (const auto& ch : channels)
        if (ch.size() != frames) throw std::runtime_error("write_wav: channel lengths differ");

    const uint16_t nch = static_cast<uint16_t>(channels.size());
    const uint32_t sr = static_cast<uint32_t>(sample_rate);
    const uint32_t data_size = static_cast<uint32_t>(frames * nch * 4);

    std::vector<uint8_t> out;
    out.reserve(44 + data_size);
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    put_u32(out, 36 + data_size);
    out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
    put_u32(out, 16);
    put_u16(out, 3);  // IEEE float
    put_u16(out, nch);
    put_u32(out, sr);
    put_u32(out, sr * nch * 4);
    put_u16(out, nch * 4);
    put_u16(out, 32);
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    put_u32(out, data_size);

    for (size_t i = 0; i < frames; ++i) {
        for (size_t ch = 0; ch < nch; ++ch) {
            const float v = static_cast<float>(channels[ch][i]);
            uint8_t b[4];
            std::memcpy(b, &v, 4);
            out.insert(out.end(), b, b + 4);
        }
    }

    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
}

dsp::BinauralSignal read_binaural(const std::string& path) {
    const WavData w = read_wav(path);
    dsp::BinauralSignal sig;
    sig.sample_rate = w.sample_rate;
    sig.left = w.channels[0];
    sig.right = (w.channels.size() > 1) ? w.channels[1] : w.channels[0];
    return sig;
}

void write_binaural(const std::string& path, const dsp::BinauralSignal& sig) {
    write_wav(path, {sig.left, sig.right}, sig.sample_rate);
}

}  // namespace drama::wav
