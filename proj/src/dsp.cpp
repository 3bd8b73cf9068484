#include "drama/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace drama::dsp {

namespace {
constexpr double kPi = std::numbers::pi;

bool is_power_of_two(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
double mel_to_hz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }
}  // namespace

void BinauralSignal::validate() const {
    if (left.size() != right.size())
        throw std::invalid_argument("binaural channels must have equal length");
    if (!(sample_rate > 0.0))
        throw std::invalid_argument("sample_rate must be positive");
}

std::vector<double> make_window(WindowType type, size_t n) {
    std::vector<double> w(n, 1.0);
    if (type == WindowType::Hann) {
        for (size_t i = 0; i < n; ++i)
            w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
    }
    return w;
}

void fft(std::vector<std::complex<double>>& x, bool inverse) {
    const size_t n = x.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("fft size must be a power of two");

    // Bit-reversal permutation.
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }

    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t k = 0; k < len / 2; ++k) {
                const auto u = x[i + k];
                const auto v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse)
        for (auto& v : x) v /= static_cast<double>(n);
}

ComplexSpectrogram stft(const std::vector<double>& signal, size_t window_size, size_t hop,
                        double sample_rate, WindowType window) {
    if (!is_power_of_two(window_size))
        throw std::invalid_argument("stft: window size must be a power of two");
    if (hop == 0 || hop > window_size)
        throw std::invalid_argument("stft: hop must be in (0, N]");
    if (signal.size() < window_size)
        throw std::invalid_argument("stft: signal shorter than one window");

    ComplexSpectrogram out;
    out.window_size = window_size;
    out.hop = hop;
    out.sample_rate = sample_rate;
    out.bins = window_size / 2 + 1;
    out.frames = 1 + (signal.size() - window_size) / hop;
    out.data.resize(out.frames * out.bins);

    const auto w = make_window(window, window_size);
    std::vector<std::complex<double>> frame(window_size);
    for (size_t t = 0; t < out.frames; ++t) {
        const size_t start = t * hop;
        for (size_t i = 0; i < window_size; ++i)
            frame[i] = signal[start + i] * w[i];
        fft(frame);
        for (size_t f = 0; f < out.bins; ++f) out.at(t, f) = frame[f];
    }
    return out;
}

MelFilterBank mel_filterbank(double sample_rate, size_t window_size, size_t mel_bins) {
    if (mel_bins < 1) throw std::invalid_argument("mel_filterbank: M must be >= 1");
    const size_t bins = window_size / 2 + 1;
    const double nyquist = sample_rate / 2.0;

    // M+2 equally spaced mel points from 0 to Nyquist.
    std::vector<double> hz(mel_bins + 2);
    const double mel_max = hz_to_mel(nyquist);
    for (size_t i = 0; i < hz.size(); ++i)
        hz[i] = mel_to_hz(mel_max * static_cast<double>(i) / static_cast<double>(mel_bins + 1));

    MelFilterBank bank;
    bank.bins = bins;
    bank.mel_bins = mel_bins;
    bank.weights.assign(bins * mel_bins, 0.0);

    const double bin_hz = sample_rate / static_cast<double>(window_size);
    for (size_t m = 0; m < mel_bins; ++m) {
        const double lo = hz[m], center = hz[m + 1], hi = hz[m + 2];
        bool nonzero = false;
        for (size_t f = 0; f < bins; ++f) {
            const double fh = static_cast<double>(f) * bin_hz;
            double w = 0.0;
            if (fh > lo && fh < hi)
                w = (fh <= center) ? (fh - lo) / (center - lo) : (hi - fh) / (hi - center);
            if (w > 0.0) nonzero = true;
            bank.weights[f * mel_bins + m] = w;
        }
        if (!nonzero)
            throw std::invalid_argument("mel_filterbank: filter " + std::to_string(m) +
                                        " has empty support; reduce M or increase N");
    }
    return bank;
}

MelSpectrogram mel_spectrogram(const ComplexSpectrogram& spec, const MelFilterBank& bank) {
    if (bank.bins != spec.bins)
        throw std::invalid_argument("mel_spectrogram: filter bank does not match spectrogram bins");

    MelSpectrogram out;
    out.frames = spec.frames;
    out.mel_bins = bank.mel_bins;
    out.data.resize(out.frames * out.mel_bins);

    std::vector<double> power(spec.bins);
    for (size_t t = 0; t < spec.frames; ++t) {
        for (size_t f = 0; f < spec.bins; ++f) power[f] = std::norm(spec.at(t, f));
        for (size_t m = 0; m < bank.mel_bins; ++m) {
            double e = 0.0;
            for (size_t f = 0; f < spec.bins; ++f) e += power[f] * bank.at(f, m);
            out.data[t * out.mel_bins + m] = std::log(std::max(e, 1e-10));
        }
    }
    return out;
}

double wrap_phase(double phi) {
    phi = std::fmod(phi + kPi, 2.0 * kPi);
    if (phi <= 0.0) phi += 2.0 * kPi;
    return phi - kPi;
}

InterauralMaps interaural_maps(const ComplexSpectrogram& left, const ComplexSpectrogram& right) {
    if (left.frames != right.frames || left.bins != right.bins)
        throw std::invalid_argument("interaural_maps: spectrogram dimensions differ");

    InterauralMaps out;
    out.frames = left.frames;
    out.bins = left.bins;
    out.ipd.resize(out.frames * out.bins);
    out.ild.resize(out.frames * out.bins);

    for (size_t i = 0; i < out.ipd.size(); ++i) {
        const auto l = left.data[i];
        const auto r = right.data[i];
        out.ipd[i] = wrap_phase(std::arg(r * std::conj(l)));
        out.ild[i] = 20.0 * std::log10((std::abs(r) + kIldEpsilon) / (std::abs(l) + kIldEpsilon));
    }
    return out;
}

std::pair<double, double> interaural_mae(const InterauralMaps& gt, const InterauralMaps& pred) {
    if (gt.frames != pred.frames || gt.bins != pred.bins)
        throw std::invalid_argument("interaural_mae: grid shapes differ");

    double ipd_sum = 0.0, ild_sum = 0.0;
    const size_t n = gt.ipd.size();
    for (size_t i = 0; i < n; ++i) {
        ipd_sum += std::abs(wrap_phase(pred.ipd[i] - gt.ipd[i]));
        ild_sum += std::abs(pred.ild[i] - gt.ild[i]);
    }
    const double scale = 100.0 / static_cast<double>(n);
    return {ipd_sum * scale, ild_sum * scale};
}

}  // namespace drama::dsp
