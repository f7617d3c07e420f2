#include "difflab/substitution.hpp"

#include "difflab/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace difflab {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.size() < 2) throw std::invalid_argument("alphabet needs at least 2 letters");
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
        if (s.empty()) throw std::invalid_argument("empty alphabet symbol");
        if (!seen.insert(s).second)
            throw std::invalid_argument("duplicate alphabet symbol '" + s + "'");
    }
}

Alphabet Alphabet::from_letters(const std::string& letters) {
    std::vector<std::string> symbols;
    for (char c : letters) symbols.emplace_back(1, c);
    return Alphabet(std::move(symbols));
}

int Alphabet::index_of(const std::string& symbol) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i] == symbol) return static_cast<int>(i);
    return -1;
}

bool Alphabet::single_char() const {
    return std::all_of(symbols_.begin(), symbols_.end(),
                       [](const std::string& s) { return s.size() == 1; });
}

IntMatrix IntMatrix::identity(int dim) {
    IntMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (n != o.n) throw std::invalid_argument("IntMatrix: size mismatch");
    IntMatrix r(n);
    for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
    return r;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (n != o.n) throw std::invalid_argument("IntMatrix: size mismatch");
    IntMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            std::int64_t v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < n; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

bool IntMatrix::all_positive() const {
    return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v > 0; });
}

std::vector<std::int64_t> IntMatrix::column_sums() const {
    std::vector<std::int64_t> s(static_cast<std::size_t>(n), 0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) s[static_cast<std::size_t>(c)] += at(r, c);
    return s;
}

SubstitutionRule::SubstitutionRule(Alphabet alphabet, std::vector<Word> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
    const int d = alphabet_.size();
    if (static_cast<int>(images_.size()) != d)
        throw std::invalid_argument("substitution needs one image per letter");
    if (images_[0].empty()) throw std::invalid_argument("empty image");
    length_ = static_cast<int>(images_[0].size());
    for (const auto& img : images_) {
        if (static_cast<int>(img.size()) != length_)
            throw std::invalid_argument("substitution is not constant-length");
        for (int letter : img)
            if (letter < 0 || letter >= d)
                throw std::invalid_argument("image letter outside alphabet");
    }
}

SubstitutionRule SubstitutionRule::from_strings(const std::string& letters,
                                                const std::vector<std::string>& images) {
    Alphabet alpha = Alphabet::from_letters(letters);
    std::vector<Word> imgs;
    for (const auto& s : images) {
        Word w;
        for (char c : s) {
            int idx = alpha.index_of(std::string(1, c));
            if (idx < 0)
                throw std::invalid_argument(std::string("image letter '") + c + "' outside alphabet");
            w.push_back(idx);
        }
        imgs.push_back(std::move(w));
    }
    return SubstitutionRule(std::move(alpha), std::move(imgs));
}

Word SubstitutionRule::apply(const Word& w) const {
    Word out;
    out.reserve(w.size() * static_cast<std::size_t>(length_));
    for (int letter : w) {
        const Word& img = image(letter);
        out.insert(out.end(), img.begin(), img.end());
    }
    return out;
}

std::string SubstitutionRule::word_string(const Word& w) const {
    std::string s;
    const bool plain = alphabet_.single_char();
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!plain && i) s += '.';
        s += alphabet_.symbol(w[i]);
    }
    return s;
}

Word SubstitutionRule::parse_word(const std::string& s) const {
    if (!alphabet_.single_char())
        throw std::invalid_argument("parse_word requires a single-character alphabet");
    Word w;
    for (char c : s) {
        int idx = alphabet_.index_of(std::string(1, c));
        if (idx < 0) throw std::invalid_argument(std::string("unknown letter '") + c + "'");
        w.push_back(idx);
    }
    return w;
}

bool SubstitutionRule::operator==(const SubstitutionRule& o) const {
    return alphabet_ == o.alphabet_ && images_ == o.images_;
}

std::vector<IntMatrix> instruction_matrices(const SubstitutionRule& rule) {
    const int d = rule.alphabet().size();
    std::vector<IntMatrix> rs(static_cast<std::size_t>(rule.length()), IntMatrix(d));
    for (int beta = 0; beta < d; ++beta) {
        const Word& img = rule.image(beta);
        for (int i = 0; i < rule.length(); ++i)
            rs[static_cast<std::size_t>(i)].at(img[static_cast<std::size_t>(i)], beta) = 1;
    }
    return rs;
}

IntMatrix substitution_matrix(const SubstitutionRule& rule) {
    const int d = rule.alphabet().size();
    IntMatrix m(d);
    for (int beta = 0; beta < d; ++beta)
        for (int alpha : rule.image(beta)) ++m.at(alpha, beta);
    return m;
}

PrimitivityResult is_primitive(const SubstitutionRule& rule) {
    const int d = rule.alphabet().size();
    const int bound = (d - 1) * d;
    // Positivity pattern of M^n follows boolean matrix powers; avoids overflow.
    std::vector<bool> base(static_cast<std::size_t>(d) * d, false);
    IntMatrix m = substitution_matrix(rule);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) base[static_cast<std::size_t>(r) * d + c] = m.at(r, c) > 0;
    std::vector<bool> pw = base;
    for (int n = 1; n <= bound; ++n) {
        if (n > 1) {
            std::vector<bool> next(static_cast<std::size_t>(d) * d, false);
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k) {
                    if (!pw[static_cast<std::size_t>(i) * d + k]) continue;
                    for (int j = 0; j < d; ++j)
                        if (base[static_cast<std::size_t>(k) * d + j])
                            next[static_cast<std::size_t>(i) * d + j] = true;
                }
            pw = std::move(next);
        }
        if (std::all_of(pw.begin(), pw.end(), [](bool b) { return b; })) return {true, n};
    }
    return {false, 0};
}

Word fixed_point_prefix(const SubstitutionRule& rule, int seed, std::int64_t n) {
    if (seed < 0 || seed >= rule.alphabet().size())
        throw std::invalid_argument("seed letter outside alphabet");
    if (n < 1) throw std::invalid_argument("prefix length must be >= 1");
    if (rule.image(seed)[0] != seed) throw std::invalid_argument("non-prolongable seed");
    Word w{seed};
    while (static_cast<std::int64_t>(w.size()) < n) w = rule.apply(w);
    w.resize(static_cast<std::size_t>(n));
    return w;
}

namespace {

void collect_factors(const Word& w, int ell, std::set<Word>& out) {
    if (static_cast<int>(w.size()) < ell) return;
    for (std::size_t i = 0; i + static_cast<std::size_t>(ell) <= w.size(); ++i)
        out.insert(Word(w.begin() + static_cast<std::ptrdiff_t>(i),
                        w.begin() + static_cast<std::ptrdiff_t>(i) + ell));
}

// Least t <= 2d such that some letter is prolongable under rule^t, together
// with that letter. The first-letter map is a function on a finite set, so a
// cycle letter exists and t stays small.
std::pair<int, int> prolongable_power(const SubstitutionRule& rule) {
    const int d = rule.alphabet().size();
    SubstitutionRule pw = rule;
    for (int t = 1; t <= 2 * d; ++t) {
        for (int a = 0; a < d; ++a)
            if (pw.image(a)[0] == a) return {t, a};
        std::vector<Word> imgs;
        for (int a = 0; a < d; ++a) imgs.push_back(rule.apply(pw.image(a)));
        pw = SubstitutionRule(rule.alphabet(), std::move(imgs));
    }
    throw std::runtime_error("no prolongable letter found in any small power");
}

}  // namespace

std::set<Word> legal_factors(const SubstitutionRule& rule, int ell) {
    if (ell < 1) throw std::invalid_argument("factor length must be >= 1");
    if (!is_primitive(rule).primitive)
        throw std::invalid_argument("legal_factors requires a primitive rule");

    auto [t, seed] = prolongable_power(rule);
    SubstitutionRule pw = rule;
    for (int i = 1; i < t; ++i) {
        std::vector<Word> imgs;
        for (int a = 0; a < rule.alphabet().size(); ++a) imgs.push_back(rule.apply(pw.image(a)));
        pw = SubstitutionRule(rule.alphabet(), std::move(imgs));
    }

    // Seed set: factors of a prefix comfortably longer than ell, then close
    // under the substitution's factor action until stable.
    std::int64_t want = std::max<std::int64_t>(static_cast<std::int64_t>(ell) + rule.length(), 16);
    Word prefix{seed};
    while (static_cast<std::int64_t>(prefix.size()) < want) prefix = pw.apply(prefix);
    std::set<Word> factors;
    collect_factors(prefix, ell, factors);

    bool grew = true;
    while (grew) {
        grew = false;
        std::set<Word> next = factors;
        for (const auto& w : factors) {
            Word img = rule.apply(w);
            std::set<Word> sub;
            collect_factors(img, ell, sub);
            for (auto& f : sub)
                if (next.insert(f).second) grew = true;
        }
        factors = std::move(next);
    }
    return factors;
}

AperiodicityResult is_aperiodic_pansiot(const SubstitutionRule& rule) {
    if (!is_primitive(rule).primitive)
        throw std::invalid_argument("is_aperiodic_pansiot requires a primitive rule");
    const int d = rule.alphabet().size();
    std::vector<std::set<int>> left(static_cast<std::size_t>(d));
    for (const Word& pair : legal_factors(rule, 2))
        left[static_cast<std::size_t>(pair[1])].insert(pair[0]);
    for (int a = 0; a < d; ++a)
        if (left[static_cast<std::size_t>(a)].size() >= 2) return {true, a};
    return {false, -1};
}

PerronData perron_data(const SubstitutionRule& rule) {
    if (!is_primitive(rule).primitive)
        throw std::invalid_argument("perron_data requires a primitive rule");
    const int d = rule.alphabet().size();
    const std::int64_t L = rule.length();
    IntMatrix m = substitution_matrix(rule);
    RatMat shifted(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            shifted.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                Rational(m.at(r, c) - (r == c ? L : 0));
    auto basis = kernel_basis(shifted);
    if (basis.size() != 1) throw std::runtime_error("non-simple PF eigenvalue");
    RatVec u = basis[0];
    Rational sum = 0;
    for (const auto& x : u) sum += x;
    if (sum == 0) throw std::runtime_error("degenerate PF eigenvector");
    for (auto& x : u) x /= sum;
    for (const auto& x : u)
        if (x < 0) throw std::runtime_error("PF eigenvector not nonnegative");
    return {L, std::move(u)};
}

}  // namespace difflab
