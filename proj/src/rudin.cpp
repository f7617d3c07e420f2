#include "difflab/rudin.hpp"

#include <stdexcept>

namespace difflab {

SignSequence SignSequence::from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("sign sequence must be nonempty");
    SignSequence out;
    for (char c : s) {
        if (c == '+')
            out.period.push_back(1);
        else if (c == '-')
            out.period.push_back(-1);
        else
            throw std::invalid_argument(std::string("sign sequence may only contain '+' and '-', got '") + c + "'");
    }
    return out;
}

std::string SignSequence::to_string() const {
    std::string s;
    for (int v : period) s += v > 0 ? '+' : '-';
    return s;
}

PolyPair recursion_step(const PolyPair& pair, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    PolyPair next;
    next.level = pair.level + 1;
    next.p.reserve(pair.p.size() * 2);
    next.q.reserve(pair.q.size() * 2);
    next.p = pair.p;
    next.q = pair.p;
    for (int v : pair.q) next.p.push_back(sign * v);
    for (int v : pair.q) next.q.push_back(-sign * v);
    return next;
}

std::vector<int> coefficients(const SignSequence& signs, int k) {
    if (k < 0) throw std::invalid_argument("level must be >= 0");
    PolyPair pair = PolyPair::base();
    for (int step = 0; step < k; ++step) pair = recursion_step(pair, signs.at(step));
    return pair.p;
}

SubstitutionRule single_step_substitution(int sign) {
    if (sign == 1) return SubstitutionRule::from_strings("ABCD", {"AB", "AC", "DB", "DC"});
    if (sign == -1) return SubstitutionRule::from_strings("ABCD", {"AC", "AB", "DC", "DB"});
    throw std::invalid_argument("sign must be +1 or -1");
}

SubstitutionRule derive_substitution(const SignSequence& signs) {
    // Composition with the first sign outermost: rule(a) = sigma_{s_0}(...(sigma_{s_{p-1}}(a))).
    SubstitutionRule rule = single_step_substitution(signs.period.back());
    for (int j = static_cast<int>(signs.period.size()) - 2; j >= 0; --j) {
        SubstitutionRule outer = single_step_substitution(signs.period[static_cast<std::size_t>(j)]);
        std::vector<Word> imgs;
        for (int a = 0; a < rule.alphabet().size(); ++a) imgs.push_back(outer.apply(rule.image(a)));
        rule = SubstitutionRule(rule.alphabet(), std::move(imgs));
    }
    return rule;
}

WeightMap WeightMap::from_string(const std::string& s) {
    WeightMap w;
    for (char c : s) {
        if (c == '+')
            w.weights.push_back(1);
        else if (c == '-')
            w.weights.push_back(-1);
        else
            throw std::invalid_argument("weights may only contain '+' and '-'");
    }
    if (w.weights.empty()) throw std::invalid_argument("weight map must be nonempty");
    return w;
}

int WeightMap::at(int letter) const {
    if (letter < 0 || letter >= static_cast<int>(weights.size()))
        throw std::invalid_argument("letter outside the weight map's domain");
    return weights[static_cast<std::size_t>(letter)];
}

std::vector<int> binary_reduce(const Word& word, const WeightMap& weights) {
    std::vector<int> out;
    out.reserve(word.size());
    for (int letter : word) out.push_back(weights.at(letter));
    return out;
}

std::vector<int> sequence_prefix(const SignSequence& signs, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("prefix length must be >= 1");
    SubstitutionRule rule = derive_substitution(signs);
    return binary_reduce(fixed_point_prefix(rule, 0, n), WeightMap::standard());
}

}  // namespace difflab
