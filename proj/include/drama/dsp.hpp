#pragma once

// STFT, mel filter bank, and the binaural metric stack (IPD / ILD / MAE).

#include <complex>
#include <stdexcept>
#include <vector>

namespace drama::dsp {

struct BinauralSignal {
    double sample_rate = 48000.0;
    std::vector<double> left, right;  // equal length

    void validate() const;
    size_t length() const { return left.size(); }
};

enum class WindowType { Hann, Rectangular };

/// Periodic Hann or rectangular window of length n.
std::vector<double> make_window(WindowType type, size_t n);

struct ComplexSpectrogram {
    size_t frames = 0;       // T
    size_t bins = 0;         // F = N/2 + 1
    size_t window_size = 0;  // N
    size_t hop = 0;          // H
    double sample_rate = 0.0;
    std::vector<std::complex<double>> data;  // row-major T x F

    std::complex<double>& at(size_t t, size_t f) { return data[t * bins + f]; }
    const std::complex<double>& at(size_t t, size_t f) const { return data[t * bins + f]; }
};

/// In-place radix-2 complex FFT; n must be a power of two.
void fft(std::vector<std::complex<double>>& x, bool inverse = false);

/// One-sided STFT, no center padding: frame t covers samples [t*H, t*H + N).
/// T = 1 + floor((len - N) / H). Throws std::invalid_argument when the
/// signal is shorter than one window, N is not a power of two, or H is
/// outside (0, N].
ComplexSpectrogram stft(const std::vector<double>& signal, size_t window_size, size_t hop,
                        double sample_rate, WindowType window = WindowType::Hann);

/// Triangular mel filters (HTK scale, peak-normalized to 1), F x M row-major.
/// Throws std::invalid_argument when a filter would have empty support.
struct MelFilterBank {
    size_t bins = 0;      // F
    size_t mel_bins = 0;  // M
    std::vector<double> weights;  // F x M

    double at(size_t f, size_t m) const { return weights[f * mel_bins + m]; }
};

MelFilterBank mel_filterbank(double sample_rate, size_t window_size, size_t mel_bins);

struct MelSpectrogram {
    size_t frames = 0;
    size_t mel_bins = 0;
    std::vector<double> data;  // T x M, log power

    double at(size_t t, size_t m) const { return data[t * mel_bins + m]; }
};

/// S(t,m) = log(sum_f |X(t,f)|^2 * melW(f,m)), floored at 1e-10 before log.
MelSpectrogram mel_spectrogram(const ComplexSpectrogram& spec, const MelFilterBank& bank);

struct InterauralMaps {
    size_t frames = 0;
    size_t bins = 0;
    std::vector<double> ipd;  // radians, wrapped into (-pi, pi]
    std::vector<double> ild;  // dB
};

/// Wrap an angle into (-pi, pi].
double wrap_phase(double phi);

/// IPD = angle(X_right * conj(X_left)); ILD = 20 log10((|X_r|+eps)/(|X_l|+eps)).
/// Channel 1 = left, channel 2 = right, matching the metric definitions.
InterauralMaps interaural_maps(const ComplexSpectrogram& left, const ComplexSpectrogram& right);

/// MAE over the full T x F grid, x100; IPD differences wrapped before |.|.
std::pair<double, double> interaural_mae(const InterauralMaps& gt, const InterauralMaps& pred);

constexpr double kIldEpsilon = 1e-10;
constexpr size_t kDefaultWindowSize = 1024;
constexpr size_t kDefaultHop = 256;
constexpr size_t kDefaultMelBins = 80;

}  // namespace drama::dsp
