#include "difflab/rudin.hpp"

#include <doctest.h>

#include <random>

using namespace difflab;

TEST_CASE("sign sequence parsing") {
    auto s = SignSequence::from_string("+-");
    CHECK(s.period == std::vector<int>{1, -1});
    CHECK(s.at(0) == 1);
    CHECK(s.at(1) == -1);
    CHECK(s.at(2) == 1);
    CHECK(s.to_string() == "+-");
    CHECK_THROWS_AS(SignSequence::from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(SignSequence::from_string("+x"), std::invalid_argument);
}

TEST_CASE("recursion step") {
    PolyPair base = PolyPair::base();
    PolyPair level1 = recursion_step(base, 1);
    CHECK(level1.p == std::vector<int>{1, 1});
    CHECK(level1.q == std::vector<int>{1, -1});

    PolyPair p3 = recursion_step(recursion_step(level1, 1), 1);
    CHECK(p3.p == std::vector<int>{1, 1, 1, -1, 1, 1, -1, 1});
}

TEST_CASE("coefficients") {
    CHECK(coefficients(SignSequence::from_string("+"), 3) ==
          std::vector<int>{1, 1, 1, -1, 1, 1, -1, 1});
    CHECK(coefficients(SignSequence::from_string("+-"), 4) ==
          std::vector<int>{1, 1, -1, 1, 1, 1, 1, -1, -1, -1, 1, -1, 1, 1, 1, -1});
    CHECK(coefficients(SignSequence::from_string("-+-"), 0) == std::vector<int>{1});
}

TEST_CASE("single-step substitutions") {
    SubstitutionRule plus = single_step_substitution(1);
    CHECK(plus == SubstitutionRule::from_strings("ABCD", {"AB", "AC", "DB", "DC"}));
    SubstitutionRule minus = single_step_substitution(-1);
    CHECK(minus == SubstitutionRule::from_strings("ABCD", {"AC", "AB", "DC", "DB"}));
    CHECK(plus.length() == 2);
    CHECK(minus.length() == 2);
}

TEST_CASE("derived substitutions") {
    CHECK(derive_substitution(SignSequence::from_string("+-")) ==
          SubstitutionRule::from_strings("ABCD", {"ABDB", "ABAC", "DCDB", "DCAC"}));
    CHECK(derive_substitution(SignSequence::from_string("+")) == single_step_substitution(1));

    SubstitutionRule twice = derive_substitution(SignSequence::from_string("++"));
    CHECK(twice.length() == 4);
    CHECK(twice.word_string(twice.image(0)) == "ABAC");

    for (const char* s : {"-", "--+", "+-+-"}) {
        SubstitutionRule rule = derive_substitution(SignSequence::from_string(s));
        CHECK(rule.length() == 1 << std::string(s).size());
        CHECK(rule.alphabet().size() == 4);
        CHECK(rule.image(0)[0] == 0);  // always prolongable from A
    }
}

TEST_CASE("binary reduction") {
    SubstitutionRule sigma = derive_substitution(SignSequence::from_string("+-"));
    WeightMap std_weights = WeightMap::standard();
    CHECK(binary_reduce(sigma.parse_word("ABDBABACDCACABAC"), std_weights) ==
          std::vector<int>{1, 1, -1, 1, 1, 1, 1, -1, -1, -1, 1, -1, 1, 1, 1, -1});
    CHECK(binary_reduce(sigma.parse_word("ABACABDB"), std_weights) ==
          std::vector<int>{1, 1, 1, -1, 1, 1, -1, 1});
    CHECK(binary_reduce(Word{}, std_weights).empty());
    CHECK_THROWS_AS(binary_reduce(Word{4}, std_weights), std::invalid_argument);
}

TEST_CASE("pair structure properties") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        int p = 1 + trial % 4;
        std::string s;
        for (int i = 0; i < p; ++i) s += coin(rng) ? '+' : '-';
        SignSequence signs = SignSequence::from_string(s);

        SUBCASE("") {}  // keep trial loop flat; assertions below run every trial

        // half agreement: p and q of a level-(k+1) pair agree on the first
        // half and are negatives on the second half
        PolyPair pair = PolyPair::base();
        for (int step = 0; step < 6; ++step) {
            PolyPair next = recursion_step(pair, signs.at(step));
            const std::size_t half = pair.p.size();
            for (std::size_t i = 0; i < half; ++i) {
                CHECK(next.p[i] == next.q[i]);
                CHECK(next.p[half + i] == -next.q[half + i]);
            }
            pair = next;
        }

        // prefix stability
        for (int k = 0; k < 6; ++k) {
            auto shorter = coefficients(signs, k);
            auto longer = coefficients(signs, k + 1);
            CHECK(std::equal(shorter.begin(), shorter.end(), longer.begin()));
        }
    }
}

TEST_CASE("generator and substitution agree") {
    // coefficients(signs, m*p) must equal the reduced fixed point of the
    // derived substitution, for every period p and multiple m.
    for (const char* s : {"+", "-", "+-", "--", "++-", "-+-"}) {
        SignSequence signs = SignSequence::from_string(s);
        const int p = signs.length();
        SubstitutionRule rule = derive_substitution(signs);
        for (int m = 1; m * p <= 10; ++m) {
            const std::int64_t n = 1LL << (m * p);
            CHECK(coefficients(signs, m * p) ==
                  binary_reduce(fixed_point_prefix(rule, 0, n), WeightMap::standard()));
        }
    }
}
