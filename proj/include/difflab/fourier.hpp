// Floating-point verification layer: exponential-sum suprema on oversampled
// grids (root-N checks), the parallelogram-law invariant of the recursion
// polynomials, and periodogram/flatness statistics.
#pragma once

#include "difflab/rudin.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace difflab {

// |sum_{n<N} eps_n e^{2 pi i n theta}| by compensated direct summation.
// Phases use an fma-corrected product, so the absolute error stays near
// 1e-10 * N even at N = 2^20.
double exponential_sum(const std::vector<int>& seq, double theta);

struct SupNormResult {
    std::size_t n = 0;
    int oversample = 0;
    double sup_estimate = 0;  // max |DFT| over the zero-padded grid; a lower bound on the sup
    double ratio = 0;         // sup_estimate / sqrt(n)
    // Bernstein factor: true sup <= gap_factor * sup_estimate whenever the
    // grid has more than pi*N points (see README); infinity otherwise.
    double gap_factor = 0;
};

// Maximum modulus over oversample*N equispaced theta values, via FFT.
SupNormResult sup_norm_estimate(const std::vector<int>& seq, int oversample);

// Max relative deviation of |P_k|^2 + |Q_k|^2 from its exact value 2^{k+1}
// over `samples` equispaced points on the unit circle.
double parallelogram_max_rel_error(const SignSequence& signs, int k, int samples);

// I_N(j) = |sum_n eps_n e^{-2 pi i n j / N}|^2 / N for j = 0..N-1.
std::vector<double> periodogram(const std::vector<int>& seq);

// Means over `bins` contiguous index ranges (sizes differing by at most one).
std::vector<double> bin_means(const std::vector<double>& values, int bins);

// (1/(N-k)) sum_n eps_n eps_{n+k}; exact integer arithmetic before the divide.
double empirical_autocorrelation(const std::vector<int>& seq, std::int64_t k);

// FFT size cap, from DIFFLAB_MAX_FFT (default 2^24).
std::size_t fft_budget();

}  // namespace difflab
