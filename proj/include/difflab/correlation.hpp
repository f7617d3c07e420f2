// Exact pair-correlation renormalization and spectral classification for
// primitive constant-length substitutions: sigma-hat vectors, the
// bi-substitution and its ergodic decomposition, absorption-weighted class
// matrices with their semipositive parameter range and extreme rays, ray
// Fourier coefficients, and the resulting diffraction verdicts.
#pragma once

#include "difflab/linalg.hpp"
#include "difflab/rational.hpp"
#include "difflab/rudin.hpp"
#include "difflab/substitution.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace difflab {

// Exact pair frequencies at one distance, indexed lexicographically by
// ordered letter pairs (AA, AB, ..., DD): entry(alpha,beta) at alpha*d+beta.
struct CorrVector {
    std::int64_t k = 0;
    RatVec entries;
};

// Memoizing engine for the pair-correlation vectors of one rule.
//
// Renormalization: writing a position at distance k as n = L*c' + i, the pair
// (u_n, u_{n+k}) descends to a pair at distance c = floor((i+k)/L) one level
// up, read through instruction positions i and (i+k) mod L. Collecting terms
// by r = k mod L gives
//
//   sigma_hat(k) = A_r * sigma_hat(floor(k/L)) + B_r * sigma_hat(floor(k/L)+1)
//
// with fixed rational transfer matrices A_r (no digit carry) and B_r (carry).
// Distance 0 is the Perron diagonal; distance 1 is the unique solution of the
// self-referential base system (I - B_1) x = A_1 * sigma_hat(0), which also
// resolves the coupled system for all distances below L.
class PairCorrelations {
  public:
    explicit PairCorrelations(SubstitutionRule rule);

    const SubstitutionRule& rule() const { return rule_; }
    const RatVec& letter_frequencies() const { return perron_.frequencies; }
    const PerronData& perron() const { return perron_; }

    const RatVec& sigma_hat(std::int64_t k);

    int pair_count() const { return dd_; }
    std::string pair_name(int pair_index) const;

  private:
    struct Transfer {
        RatMat no_carry;  // A_r
        RatMat carry;     // B_r
    };
    const Transfer& transfer(int r);

    SubstitutionRule rule_;
    int d_;
    int dd_;
    int len_;
    PerronData perron_;
    std::unordered_map<int, Transfer> transfers_;
    std::map<std::int64_t, RatVec> memo_;
};

// Convenience wrapper constructing a fresh engine.
CorrVector sigma_hat(const SubstitutionRule& rule, std::int64_t k);

// Brute-force oracle: empirical pair counts at distance k over the length-N
// fixed-point prefix, divided by N-k. Independent of the renormalization.
std::vector<double> sigma_hat_oracle(const SubstitutionRule& rule, std::int64_t k,
                                     std::int64_t n_prefix);

// Rule on the d^2 pair letters acting positionwise: (sigma x sigma)(ab) =
// (sigma(a)_0 sigma(b)_0) ... (sigma(a)_{L-1} sigma(b)_{L-1}).
SubstitutionRule bisubstitution(const SubstitutionRule& rule);

struct BisubstDecomposition {
    int d = 0;                             // letter alphabet size
    std::vector<std::vector<int>> classes; // closed SCCs of the pair digraph, by smallest member
    std::vector<int> transient;            // remaining pair indices, ascending
};

BisubstDecomposition ergodic_decomposition(const SubstitutionRule& rule);

// For every pair, its exact absorption probabilities into each ergodic class
// under the chain that picks an instruction position uniformly. Class pairs
// carry a unit vector; transient rows solve (I - Q) a = r exactly.
struct AbsorptionTable {
    std::vector<int> pair_class;        // class index, or -1 for transient pairs
    std::vector<RatVec> coefficients;   // per pair: one coefficient per class, summing to 1
};

AbsorptionTable absorption_coefficients(const SubstitutionRule& rule,
                                        const BisubstDecomposition& decomp);

// d x d matrix over letter pairs: class pairs carry their class weight,
// transient pairs the absorption-weighted average of the class weights.
RatMat build_v(const SubstitutionRule& rule, const BisubstDecomposition& decomp,
               const RatVec& class_weights);

// Exact eigenvalues (with multiplicity, ascending) from the characteristic
// polynomial; throws if any eigenvalue is irrational.
std::vector<Rational> eigenvalues_exact(const RatMat& m);

struct ExtremeRay {
    std::string name;
    RatVec weights;  // per-class parameters at this extreme point
    RatVec vec;      // flattened d x d matrix, lexicographic pair order
};

// With the weight of the diagonal class normalized to 1, the exact closed
// interval of the second class weight keeping v positive semidefinite, plus
// the rays at its endpoints (upper endpoint first). One ergodic class yields
// the single all-ones ray. More than two classes are unsupported.
struct SemipositivityResult {
    Rational lo;
    Rational hi;
    std::vector<ExtremeRay> rays;
};

SemipositivityResult semipositivity_interval(const SubstitutionRule& rule,
                                             const BisubstDecomposition& decomp);

// c(k) = <ray, sigma_hat(k)>.
Rational ray_fourier_coeff(const ExtremeRay& ray, PairCorrelations& corr, std::int64_t k);

// eta(k) = sum_{ab} w_a w_b sigma_hat(k)_{ab}.
Rational autocorrelation(PairCorrelations& corr, const WeightMap& weights, std::int64_t k);
Rational autocorrelation(const SubstitutionRule& rule, const WeightMap& weights, std::int64_t k);

// Exact eventual-periodicity certificate: the smallest period P <= max_period
// with sigma_hat(k+P) = sigma_hat(k) for all 1 <= k <= window - P, compared
// exactly. `certified` is false if no such period exists in range.
struct PeriodicityCertificate {
    bool certified = false;
    std::int64_t period = 0;
    std::int64_t window = 0;
};

PeriodicityCertificate find_periodicity(PairCorrelations& corr, std::int64_t max_period,
                                        std::int64_t window);

// The set of values {sigma_hat(k) : k >= 1}, computed by closing the
// consecutive-triple dynamics (S(c), S(c+1), S(c+2)) -> children at
// distances L*c .. L*c+L-1 under the transfer maps. When the closure is
// finite, a claim checked against every value in it holds for every k >= 1.
struct ValueClosure {
    bool closed = false;
    std::vector<RatVec> values;
    std::size_t states = 0;
};

ValueClosure sigma_hat_value_closure(PairCorrelations& corr, std::size_t max_states = 4096);

enum class RayVerdict { PurePointDeltaComb, AbsolutelyContinuous, Inconclusive };
enum class DiffractionVerdict { PurelyAbsolutelyContinuous, PurePoint, MixedPurePointAndAC, Inconclusive };

const char* to_string(RayVerdict v);
const char* to_string(DiffractionVerdict v);

struct RuleSummary {
    std::vector<std::string> letters;
    int length = 0;
    std::vector<std::string> images;
};

struct RayReport {
    ExtremeRay ray;
    Rational c0;
    std::vector<Rational> coeffs;  // c(1..K)
    RayVerdict verdict = RayVerdict::Inconclusive;
    bool holds_for_all_k = false;  // verdict extended to every k >= 1 via certificate/closure
};

struct SpectralReport {
    RuleSummary rule;
    std::int64_t horizon = 0;  // K
    PerronData perron;
    BisubstDecomposition decomposition;
    std::vector<std::string> pair_names;       // lexicographic order
    std::vector<CorrVector> sigma_hat_table;   // k = 0..K
    PeriodicityCertificate periodicity;
    bool closure_finite = false;
    std::size_t closure_value_count = 0;
    Rational semipos_lo;
    Rational semipos_hi;
    std::vector<RayReport> rays;
    bool has_balanced = false;  // balanced section applies to 4-letter alphabets
    Rational mean_weight;
    std::vector<Rational> eta;  // eta(0..K)
    DiffractionVerdict balanced_verdict = DiffractionVerdict::Inconclusive;
};

// Full classification pipeline at test horizon K. Requires a primitive,
// Pansiot-aperiodic rule; throws "unsupported class count" past two ergodic
// classes. Inconclusive verdicts are a valid outcome, never an error.
SpectralReport classify_spectrum(const SubstitutionRule& rule, std::int64_t horizon);

}  // namespace difflab
