// Constant-length substitutions and their combinatorial/algebraic data:
// instruction matrices, substitution matrix, primitivity, the Pansiot
// left-neighbourhood aperiodicity test, and exact Perron-Frobenius
// letter frequencies.
#pragma once

#include "difflab/rational.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace difflab {

// Ordered alphabet of distinct symbols. Order fixes all matrix/vector
// indexing. Symbols are single characters for user-facing alphabets and
// two-character pair names for the bi-substitution.
class Alphabet {
  public:
    explicit Alphabet(std::vector<std::string> symbols);
    static Alphabet from_letters(const std::string& letters);  // one symbol per char

    int size() const { return static_cast<int>(symbols_.size()); }
    const std::string& symbol(int i) const { return symbols_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& symbols() const { return symbols_; }
    int index_of(const std::string& symbol) const;  // -1 if absent
    bool single_char() const;

    bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

  private:
    std::vector<std::string> symbols_;
};

// Letters are alphabet indices.
using Word = std::vector<int>;

struct IntMatrix {
    int n = 0;
    std::vector<std::int64_t> a;  // row-major

    IntMatrix() = default;
    explicit IntMatrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim, 0) {}

    std::int64_t& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
    std::int64_t at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }

    static IntMatrix identity(int dim);
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const { return n == o.n && a == o.a; }
    bool all_positive() const;
    std::vector<std::int64_t> column_sums() const;
};

class SubstitutionRule {
  public:
    // images[i] is the image of letter i; all images must have equal length
    // >= 1 and contain only valid letters.
    SubstitutionRule(Alphabet alphabet, std::vector<Word> images);

    // Convenience for single-char alphabets: images as strings, e.g.
    // from_strings("ABCD", {"ABDB", "ABAC", "DCDB", "DCAC"}).
    static SubstitutionRule from_strings(const std::string& letters,
                                         const std::vector<std::string>& images);

    const Alphabet& alphabet() const { return alphabet_; }
    int length() const { return length_; }
    const Word& image(int letter) const { return images_[static_cast<std::size_t>(letter)]; }
    const std::vector<Word>& images() const { return images_; }

    Word apply(const Word& w) const;  // letterwise substitution
    std::string word_string(const Word& w) const;
    Word parse_word(const std::string& s) const;  // single-char alphabets only

    bool operator==(const SubstitutionRule& o) const;

  private:
    Alphabet alphabet_;
    int length_;
    std::vector<Word> images_;
};

// (R_i)_{alpha,beta} = 1 iff image(beta)[i] == alpha. One matrix per position.
std::vector<IntMatrix> instruction_matrices(const SubstitutionRule& rule);

// M_{alpha,beta} = number of occurrences of alpha in image(beta). Columns sum
// to the substitution length.
IntMatrix substitution_matrix(const SubstitutionRule& rule);

struct PrimitivityResult {
    bool primitive = false;
    int witness = 0;  // least n with M^n > 0 entrywise, when primitive
};

// Tests M^n > 0 for n up to (d-1)*d via boolean powers.
PrimitivityResult is_primitive(const SubstitutionRule& rule);

// First n letters of the one-sided fixed point grown from `seed`. Requires
// image(seed) to start with seed ("non-prolongable seed" otherwise) and n >= 1.
Word fixed_point_prefix(const SubstitutionRule& rule, int seed, std::int64_t n);

// Length-ell factors of the fixed-point language, computed by scanning a
// prefix and closing under the substitution. Primitive rules only: there the
// factor set is seed-independent (single minimal subshift).
std::set<Word> legal_factors(const SubstitutionRule& rule, int ell);

struct AperiodicityResult {
    bool aperiodic = false;   // false means "test inconclusive", not "periodic"
    int witness_letter = -1;  // letter with two distinct left neighbours
};

// Sufficient test: some letter occurs with two distinct left neighbours among
// legal 2-factors. Requires a primitive rule.
AperiodicityResult is_aperiodic_pansiot(const SubstitutionRule& rule);

struct PerronData {
    std::int64_t eigenvalue = 0;  // equals the substitution length
    RatVec frequencies;           // exact letter frequencies, summing to 1
};

// Exact rational kernel solve of (M - L*I); requires a primitive rule.
PerronData perron_data(const SubstitutionRule& rule);

}  // namespace difflab
