#include "difflab/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace difflab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// In-place forward DFT (e^{-2 pi i n j / N} kernel) of a complex buffer.
void dft_forward(std::vector<std::complex<double>>& buf) {
    const int n = static_cast<int>(buf.size());
    fftw_complex* raw = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_plan plan = fftw_plan_dft_1d(n, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

void check_budget(std::size_t n, const char* what) {
    if (n > fft_budget())
        throw std::runtime_error(std::string(what) + ": FFT budget exceeded (size " +
                                 std::to_string(n) + " > DIFFLAB_MAX_FFT " +
                                 std::to_string(fft_budget()) + ")");
}

}  // namespace

std::size_t fft_budget() {
    static const std::size_t budget = [] {
        if (const char* env = std::getenv("DIFFLAB_MAX_FFT")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(1) << 24;
    }();
    return budget;
}

double exponential_sum(const std::vector<int>& seq, double theta) {
    if (seq.empty()) throw std::invalid_argument("exponential_sum: empty sequence");
    double sum_re = 0, err_re = 0, sum_im = 0, err_im = 0;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        const double nd = static_cast<double>(n);
        double prod = nd * theta;
        const double prod_err = std::fma(nd, theta, -prod);  // exact low part of n*theta
        const double phase = kTwoPi * (prod - std::floor(prod) + prod_err);
        const double s = static_cast<double>(seq[n]);
        const double term_re = s * std::cos(phase);
        const double term_im = s * std::sin(phase);
        // Kahan summation on both components.
        double y = term_re - err_re, t = sum_re + y;
        err_re = (t - sum_re) - y;
        sum_re = t;
        y = term_im - err_im;
        t = sum_im + y;
        err_im = (t - sum_im) - y;
        sum_im = t;
    }
    return std::hypot(sum_re, sum_im);
}

SupNormResult sup_norm_estimate(const std::vector<int>& seq, int oversample) {
    if (seq.empty()) throw std::invalid_argument("sup_norm_estimate: empty sequence");
    if (oversample < 4) throw std::invalid_argument("sup_norm_estimate: oversample must be >= 4");
    const std::size_t n = seq.size();
    const std::size_t m = n * static_cast<std::size_t>(oversample);
    check_budget(m, "sup_norm_estimate");

    std::vector<std::complex<double>> buf(m);
    for (std::size_t i = 0; i < n; ++i) buf[i] = static_cast<double>(seq[i]);
    dft_forward(buf);

    double best = 0;
    for (const auto& z : buf) best = std::max(best, std::abs(z));

    SupNormResult out;
    out.n = n;
    out.oversample = oversample;
    out.sup_estimate = best;
    out.ratio = best / std::sqrt(static_cast<double>(n));
    const double excess = static_cast<double>(m) - std::numbers::pi * static_cast<double>(n);
    out.gap_factor = excess > 0 ? static_cast<double>(m) / excess
                                : std::numeric_limits<double>::infinity();
    return out;
}

double parallelogram_max_rel_error(const SignSequence& signs, int k, int samples) {
    if (k < 0 || k > 20) throw std::invalid_argument("parallelogram check supports levels 0..20");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    check_budget(static_cast<std::size_t>(samples), "parallelogram_max_rel_error");

    PolyPair pair = PolyPair::base();
    for (int step = 0; step < k; ++step) pair = recursion_step(pair, signs.at(step));

    // Evaluating at the sample grid j/samples only needs the coefficients
    // folded modulo the grid size (a global phase drops out of the modulus).
    auto folded_dft = [&](const std::vector<int>& coeffs) {
        std::vector<std::complex<double>> buf(static_cast<std::size_t>(samples));
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            buf[i % static_cast<std::size_t>(samples)] += static_cast<double>(coeffs[i]);
        dft_forward(buf);
        return buf;
    };
    auto p_vals = folded_dft(pair.p);
    auto q_vals = folded_dft(pair.q);

    const double target = std::pow(2.0, k + 1);
    double worst = 0;
    for (int j = 0; j < samples; ++j) {
        const double v = std::norm(p_vals[static_cast<std::size_t>(j)]) +
                         std::norm(q_vals[static_cast<std::size_t>(j)]);
        worst = std::max(worst, std::abs(v - target) / target);
    }
    return worst;
}

std::vector<double> periodogram(const std::vector<int>& seq) {
    if (seq.empty()) throw std::invalid_argument("periodogram: empty sequence");
    const std::size_t n = seq.size();
    check_budget(n, "periodogram");
    std::vector<std::complex<double>> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = static_cast<double>(seq[i]);
    dft_forward(buf);
    std::vector<double> intensity(n);
    for (std::size_t j = 0; j < n; ++j) intensity[j] = std::norm(buf[j]) / static_cast<double>(n);
    return intensity;
}

std::vector<double> bin_means(const std::vector<double>& values, int bins) {
    if (bins < 1 || static_cast<std::size_t>(bins) > values.size())
        throw std::invalid_argument("bin_means: bad bin count");
    std::vector<double> means(static_cast<std::size_t>(bins));
    const std::size_t base = values.size() / static_cast<std::size_t>(bins);
    const std::size_t extra = values.size() % static_cast<std::size_t>(bins);
    std::size_t pos = 0;
    for (int b = 0; b < bins; ++b) {
        const std::size_t len = base + (static_cast<std::size_t>(b) < extra ? 1 : 0);
        double acc = 0;
        for (std::size_t i = 0; i < len; ++i) acc += values[pos + i];
        means[static_cast<std::size_t>(b)] = acc / static_cast<double>(len);
        pos += len;
    }
    return means;
}

double empirical_autocorrelation(const std::vector<int>& seq, std::int64_t k) {
    const std::int64_t n = static_cast<std::int64_t>(seq.size());
    if (k < 0 || k >= n) throw std::invalid_argument("empirical_autocorrelation: distance out of range");
    std::int64_t acc = 0;
    for (std::int64_t i = 0; i + k < n; ++i)
        acc += seq[static_cast<std::size_t>(i)] * seq[static_cast<std::size_t>(i + k)];
    return static_cast<double>(acc) / static_cast<double>(n - k);
}

}  // namespace difflab
