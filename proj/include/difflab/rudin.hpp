// Rudin-Shapiro-type generators: the +-1 polynomial coefficient recursion
// driven by a periodic sign pattern, the associated four-letter substitution
// for any sign period, and the letter-to-weight reduction.
#pragma once

#include "difflab/substitution.hpp"

#include <string>
#include <vector>

namespace difflab {

// Finite +-1 pattern applied periodically; entry j of the period drives
// recursion step j (mod p).
struct SignSequence {
    std::vector<int> period;  // entries +1 / -1, size >= 1

    static SignSequence from_string(const std::string& s);  // over {+,-}
    std::string to_string() const;
    int at(int step) const { return period[static_cast<std::size_t>(step) % period.size()]; }
    int length() const { return static_cast<int>(period.size()); }
};

// Coefficient arrays of the level-k pair (P_k, Q_k); position n holds the
// coefficient of x^{n+1} (the polynomials start at x), so both arrays have
// length 2^k with entries +-1.
struct PolyPair {
    int level = 0;
    std::vector<int> p;
    std::vector<int> q;

    static PolyPair base() { return {0, {1}, {1}}; }
};

// One recursion step: p' = p ++ sign*q, q' = p ++ (-sign)*q.
PolyPair recursion_step(const PolyPair& pair, int sign);

// The first 2^k coefficients of P_k under the periodic sign pattern. For
// signs "+" this is the classic Rudin-Shapiro sequence.
std::vector<int> coefficients(const SignSequence& signs, int k);

// Length-2 rule over {A,B,C,D} encoding one recursion step with the given
// sign; +1 yields the standard four-letter Rudin-Shapiro substitution.
SubstitutionRule single_step_substitution(int sign);

// Constant-length rule of length 2^p for a period-p sign pattern: the
// composition of the single-step rules, first sign outermost.
SubstitutionRule derive_substitution(const SignSequence& signs);

// Letter -> +-1 weights, indexed by alphabet position.
struct WeightMap {
    std::vector<int> weights;

    // A,B -> +1 and C,D -> -1 on a four-letter alphabet.
    static WeightMap standard() { return {{1, 1, -1, -1}}; }
    static WeightMap from_string(const std::string& s);  // over {+,-}, by alphabet position
    int at(int letter) const;
};

std::vector<int> binary_reduce(const Word& word, const WeightMap& weights);

// Balanced-weight sequence prefix: reduce the fixed point of the derived
// substitution (equivalently, extend the coefficient recursion) to n terms.
std::vector<int> sequence_prefix(const SignSequence& signs, std::int64_t n);

}  // namespace difflab
