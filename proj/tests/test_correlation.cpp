#include "difflab/correlation.hpp"

#include <doctest.h>

#include <cmath>

using namespace difflab;

namespace {

const SubstitutionRule kSigma =
    SubstitutionRule::from_strings("ABCD", {"ABDB", "ABAC", "DCDB", "DCAC"});
const SubstitutionRule kRho = SubstitutionRule::from_strings("ABCD", {"AB", "AC", "DB", "DC"});

RatVec eighth(std::initializer_list<int> nums) {
    RatVec v;
    for (int n : nums) v.emplace_back(n, 8);
    return v;
}

int pidx(const char* pair) { return 4 * (pair[0] - 'A') + (pair[1] - 'A'); }

}  // namespace

TEST_CASE("sigma_hat reproduces the published correlation vectors") {
    PairCorrelations corr(kSigma);

    RatVec diag(16);
    for (int a = 0; a < 4; ++a) diag[static_cast<std::size_t>(5 * a)] = Rational(1, 4);
    CHECK(corr.sigma_hat(0) == diag);

    RatVec s1 = eighth({0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0});
    RatVec s2 = eighth({1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1});
    CHECK(corr.sigma_hat(1) == s1);
    CHECK(corr.sigma_hat(2) == s2);
    CHECK(corr.sigma_hat(3) == s1);
    CHECK(corr.sigma_hat(4) == s2);
    CHECK(corr.sigma_hat(7) == corr.sigma_hat(3));

    SUBCASE("periodicity of distances for n <= 64") {
        for (std::int64_t n = 1; n <= 64; ++n) {
            CHECK(corr.sigma_hat(4 * n) == corr.sigma_hat(4));
            for (std::int64_t r = 1; r <= 3; ++r) CHECK(corr.sigma_hat(4 * n + r) == corr.sigma_hat(r));
        }
    }

    SUBCASE("free-function wrapper") {
        CorrVector cv = sigma_hat(kSigma, 2);
        CHECK(cv.k == 2);
        CHECK(cv.entries == s2);
    }

    SUBCASE("non-primitive rules are rejected") {
        SubstitutionRule ident = SubstitutionRule::from_strings("ab", {"a", "b"});
        CHECK_THROWS_AS(PairCorrelations{ident}, std::invalid_argument);
    }
}

TEST_CASE("sigma_hat marginals, positivity and mass") {
    PairCorrelations corr(kSigma);
    const RatVec& u = corr.letter_frequencies();
    for (std::int64_t k = 0; k <= 64; ++k) {
        const RatVec& s = corr.sigma_hat(k);
        Rational mass = 0;
        for (const auto& e : s) {
            CHECK(e >= 0);
            mass += e;
        }
        CHECK(mass == 1);
        for (int a = 0; a < 4; ++a) {
            Rational row = 0, col = 0;
            for (int b = 0; b < 4; ++b) {
                row += s[static_cast<std::size_t>(4 * a + b)];
                col += s[static_cast<std::size_t>(4 * b + a)];
            }
            CHECK(row == u[static_cast<std::size_t>(a)]);
            CHECK(col == u[static_cast<std::size_t>(a)]);
        }
    }
}

TEST_CASE("brute-force oracle agrees with the renormalization") {
    // Finite-size deviations at this prefix length sit near 1e-3 (the letter
    // counts drift like sqrt(N)), so that is the tolerance that can hold.
    const std::int64_t n = 1LL << 18;  // 4^9
    PairCorrelations corr(kSigma);
    for (std::int64_t k : {0, 1}) {
        auto emp = sigma_hat_oracle(kSigma, k, n);
        const RatVec& exact = corr.sigma_hat(k);
        for (std::size_t i = 0; i < emp.size(); ++i)
            CHECK(std::abs(emp[i] - to_double(exact[i])) <= 1e-3);
    }

    SUBCASE("prefix must exceed the distance") {
        CHECK_THROWS_AS(sigma_hat_oracle(kSigma, 16, 16), std::invalid_argument);
    }

    SUBCASE("hand-countable window") {
        // distance-2 pairs of ABDBABACDCACABAC (14 windows):
        // AD BB DA BB AA BC AD CC DA CC AA CB AA BC
        auto emp = sigma_hat_oracle(kSigma, 2, 16);
        CHECK(emp[static_cast<std::size_t>(pidx("AA"))] == doctest::Approx(3.0 / 14));
        CHECK(emp[static_cast<std::size_t>(pidx("AD"))] == doctest::Approx(2.0 / 14));
        CHECK(emp[static_cast<std::size_t>(pidx("BB"))] == doctest::Approx(2.0 / 14));
        CHECK(emp[static_cast<std::size_t>(pidx("DA"))] == doctest::Approx(2.0 / 14));
        CHECK(emp[static_cast<std::size_t>(pidx("BC"))] == doctest::Approx(2.0 / 14));
        CHECK(emp[static_cast<std::size_t>(pidx("CC"))] == doctest::Approx(2.0 / 14));
        CHECK(emp[static_cast<std::size_t>(pidx("CB"))] == doctest::Approx(1.0 / 14));
        CHECK(emp[static_cast<std::size_t>(pidx("AB"))] == 0.0);
        CHECK(emp[static_cast<std::size_t>(pidx("AC"))] == 0.0);
    }
}

TEST_CASE("bisubstitution") {
    SubstitutionRule bi = bisubstitution(kSigma);
    CHECK(bi.alphabet().size() == 16);
    CHECK(bi.length() == 4);
    CHECK(bi.word_string(bi.image(pidx("AA"))) == "AA.BB.DD.BB");
    CHECK(bi.word_string(bi.image(pidx("AB"))) == "AA.BB.DA.BC");
}

TEST_CASE("ergodic decomposition") {
    BisubstDecomposition dec = ergodic_decomposition(kSigma);
    REQUIRE(dec.classes.size() == 2);
    CHECK(dec.classes[0] == std::vector<int>{pidx("AA"), pidx("BB"), pidx("CC"), pidx("DD")});
    CHECK(dec.classes[1] == std::vector<int>{pidx("AD"), pidx("BC"), pidx("CB"), pidx("DA")});
    CHECK(dec.transient == std::vector<int>{pidx("AB"), pidx("AC"), pidx("BA"), pidx("BD"),
                                            pidx("CA"), pidx("CD"), pidx("DB"), pidx("DC")});

    SUBCASE("classic rule has the same class structure") {
        BisubstDecomposition rho_dec = ergodic_decomposition(kRho);
        CHECK(rho_dec.classes == dec.classes);
        CHECK(rho_dec.transient == dec.transient);
    }

    SUBCASE("classes are closed under every instruction map") {
        for (const auto& cls : dec.classes) {
            std::set<int> members(cls.begin(), cls.end());
            for (int p : cls) {
                int a = p / 4, b = p % 4;
                for (int i = 0; i < kSigma.length(); ++i) {
                    int target = 4 * kSigma.image(a)[static_cast<std::size_t>(i)] +
                                 kSigma.image(b)[static_cast<std::size_t>(i)];
                    CHECK(members.count(target) == 1);
                }
            }
        }
    }

    SUBCASE("diagonal pairs always land in one closed class") {
        for (const SubstitutionRule& rule :
             {kSigma, kRho, SubstitutionRule::from_strings("ab", {"ab", "ab"})}) {
            BisubstDecomposition d = ergodic_decomposition(rule);
            const int n = rule.alphabet().size();
            int diag_class = -1;
            for (std::size_t c = 0; c < d.classes.size(); ++c)
                for (int p : d.classes[c])
                    if (p == 0) diag_class = static_cast<int>(c);
            REQUIRE(diag_class >= 0);
            std::set<int> members(d.classes[static_cast<std::size_t>(diag_class)].begin(),
                                  d.classes[static_cast<std::size_t>(diag_class)].end());
            for (int a = 0; a < n; ++a) CHECK(members.count(a * n + a) == 1);
        }
    }
}

TEST_CASE("absorption coefficients and the weight matrix") {
    BisubstDecomposition dec = ergodic_decomposition(kSigma);
    AbsorptionTable table = absorption_coefficients(kSigma, dec);
    for (int p : dec.transient)
        CHECK(table.coefficients[static_cast<std::size_t>(p)] ==
              RatVec{Rational(1, 2), Rational(1, 2)});
    for (int p : dec.classes[0])
        CHECK(table.coefficients[static_cast<std::size_t>(p)] == RatVec{Rational(1), Rational(0)});

    SUBCASE("all-ones matrix at equal weights") {
        RatMat v = build_v(kSigma, dec, RatVec{Rational(1), Rational(1)});
        CHECK(v.a == RatVec(16, Rational(1)));
    }
    SUBCASE("published second ray at weights (1,-1)") {
        RatMat v = build_v(kSigma, dec, RatVec{Rational(1), Rational(-1)});
        CHECK(v.a == RatVec{1, 0, 0, -1, 0, 1, -1, 0, 0, -1, 1, 0, -1, 0, 0, 1});
    }
    SUBCASE("transient entries at weights (1,0) are 1/2") {
        RatMat v = build_v(kSigma, dec, RatVec{Rational(1), Rational(0)});
        for (int p : dec.transient) CHECK(v.a[static_cast<std::size_t>(p)] == Rational(1, 2));
    }
    SUBCASE("weight count must match class count") {
        CHECK_THROWS_AS(build_v(kSigma, dec, RatVec{Rational(1)}), std::invalid_argument);
    }
}

TEST_CASE("exact eigenvalues of the weight matrix") {
    BisubstDecomposition dec = ergodic_decomposition(kSigma);
    for (const Rational& w2 : {Rational(1), Rational(-1), Rational(0), Rational(1, 3), Rational(-2, 5)}) {
        auto eigs = eigenvalues_exact(build_v(kSigma, dec, RatVec{Rational(1), w2}));
        RatVec want{Rational(0), Rational(2) * (1 + w2), Rational(1) - w2, Rational(1) - w2};
        std::sort(want.begin(), want.end());
        CHECK(eigs == want);
    }
    SUBCASE("irrational spectra are refused") {
        RatMat m(2, 2);
        m.at(0, 0) = 0;
        m.at(0, 1) = 1;
        m.at(1, 0) = 1;
        m.at(1, 1) = 1;  // eigenvalues (1 +- sqrt5)/2
        CHECK_THROWS_AS(eigenvalues_exact(m), std::runtime_error);
    }
}

TEST_CASE("semipositivity interval and extreme rays") {
    BisubstDecomposition dec = ergodic_decomposition(kSigma);
    SemipositivityResult semi = semipositivity_interval(kSigma, dec);
    CHECK(semi.lo == -1);
    CHECK(semi.hi == 1);
    REQUIRE(semi.rays.size() == 2);
    CHECK(semi.rays[0].name == "v1");
    CHECK(semi.rays[0].vec == RatVec(16, Rational(1)));
    CHECK(semi.rays[1].name == "v2");
    CHECK(semi.rays[1].vec == RatVec{1, 0, 0, -1, 0, 1, -1, 0, 0, -1, 1, 0, -1, 0, 0, 1});

    SUBCASE("minimum eigenvalue is exactly zero at both endpoints") {
        for (const Rational& w2 : {semi.lo, semi.hi}) {
            auto eigs = eigenvalues_exact(build_v(kSigma, dec, RatVec{Rational(1), w2}));
            CHECK(eigs.front() == 0);
            CHECK(eigs.back() > 0);
        }
    }
    SUBCASE("negative eigenvalue just outside the interval") {
        auto above = eigenvalues_exact(build_v(kSigma, dec, RatVec{Rational(1), Rational(3, 2)}));
        CHECK(above.front() < 0);
        auto below = eigenvalues_exact(build_v(kSigma, dec, RatVec{Rational(1), Rational(-3, 2)}));
        CHECK(below.front() < 0);
    }
    SUBCASE("single ergodic class yields the all-ones ray") {
        SubstitutionRule tiny = SubstitutionRule::from_strings("ab", {"ab", "ab"});
        BisubstDecomposition tiny_dec = ergodic_decomposition(tiny);
        REQUIRE(tiny_dec.classes.size() == 1);
        SemipositivityResult s = semipositivity_interval(tiny, tiny_dec);
        REQUIRE(s.rays.size() == 1);
        CHECK(s.rays[0].vec == RatVec(4, Rational(1)));
    }
}

TEST_CASE("ray Fourier coefficients and autocorrelation") {
    BisubstDecomposition dec = ergodic_decomposition(kSigma);
    SemipositivityResult semi = semipositivity_interval(kSigma, dec);
    PairCorrelations corr(kSigma);

    for (std::int64_t k = 0; k <= 256; ++k)
        CHECK(ray_fourier_coeff(semi.rays[0], corr, k) == 1);
    CHECK(ray_fourier_coeff(semi.rays[1], corr, 0) == 1);
    for (std::int64_t k = 1; k <= 256; ++k)
        CHECK(ray_fourier_coeff(semi.rays[1], corr, k) == 0);

    WeightMap w = WeightMap::standard();
    CHECK(autocorrelation(corr, w, 0) == 1);
    for (std::int64_t k = 1; k <= 256; ++k) CHECK(autocorrelation(corr, w, k) == 0);
}

TEST_CASE("periodicity certificate and value closure") {
    PairCorrelations corr(kSigma);
    PeriodicityCertificate cert = find_periodicity(corr, 16, 64);
    CHECK(cert.certified);
    CHECK(cert.period == 2);

    ValueClosure closure = sigma_hat_value_closure(corr);
    CHECK(closure.closed);
    CHECK(closure.values.size() == 2);
    // every distance >= 1 takes one of the two published vectors
    RatVec s1 = eighth({0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0});
    RatVec s2 = eighth({1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1});
    CHECK(((closure.values[0] == s1 && closure.values[1] == s2) ||
           (closure.values[0] == s2 && closure.values[1] == s1)));

    SUBCASE("classic rule also closes finitely") {
        PairCorrelations rho_corr(kRho);
        ValueClosure rho_closure = sigma_hat_value_closure(rho_corr);
        CHECK(rho_closure.closed);
        PeriodicityCertificate rho_cert = find_periodicity(rho_corr, 16, 64);
        CHECK(rho_cert.certified);
    }
}

TEST_CASE("spectral classification") {
    SpectralReport rep = classify_spectrum(kSigma, 64);
    REQUIRE(rep.rays.size() == 2);
    CHECK(rep.rays[0].verdict == RayVerdict::PurePointDeltaComb);
    CHECK(rep.rays[0].holds_for_all_k);
    CHECK(rep.rays[1].verdict == RayVerdict::AbsolutelyContinuous);
    CHECK(rep.rays[1].holds_for_all_k);
    CHECK(rep.has_balanced);
    CHECK(rep.mean_weight == 0);
    CHECK(rep.balanced_verdict == DiffractionVerdict::PurelyAbsolutelyContinuous);
    CHECK(rep.periodicity.certified);
    CHECK(rep.closure_finite);

    SUBCASE("classic Rudin-Shapiro regression") {
        SpectralReport rho_rep = classify_spectrum(kRho, 64);
        REQUIRE(rho_rep.rays.size() == 2);
        CHECK(rho_rep.rays[0].verdict == RayVerdict::PurePointDeltaComb);
        CHECK(rho_rep.rays[1].verdict == RayVerdict::AbsolutelyContinuous);
        CHECK(rho_rep.balanced_verdict == DiffractionVerdict::PurelyAbsolutelyContinuous);
    }

    SUBCASE("preconditions gate the pipeline") {
        // not primitive
        SubstitutionRule upper = SubstitutionRule::from_strings("ab", {"aa", "ba"});
        CHECK_THROWS_AS(classify_spectrum(upper, 8), std::invalid_argument);
        // primitive but Pansiot-inconclusive (periodic fixed point)
        SubstitutionRule periodic = SubstitutionRule::from_strings("ab", {"ab", "ab"});
        CHECK_THROWS_AS(classify_spectrum(periodic, 8), std::invalid_argument);
    }

    SUBCASE("corrupted rule drifts off the published correlations") {
        SubstitutionRule corrupt =
            SubstitutionRule::from_strings("ABCD", {"ABDC", "ABAC", "DCDB", "DCAC"});
        REQUIRE(is_primitive(corrupt).primitive);
        PairCorrelations corr(corrupt);
        CHECK(corr.sigma_hat(1) != eighth({0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0}));
    }
}

TEST_CASE("Thue-Morse stays honest") {
    // Singular continuous spectrum: the machinery must refuse to certify
    // either pure-point or absolutely continuous behaviour for the second
    // ray, and the known autocorrelation values must come out exactly.
    SubstitutionRule tm = SubstitutionRule::from_strings("ab", {"ab", "ba"});
    PairCorrelations corr(tm);
    auto eta = [&](std::int64_t k) {
        const RatVec& s = corr.sigma_hat(k);
        return Rational(s[0] + s[3] - s[1] - s[2]);
    };
    CHECK(eta(0) == 1);
    CHECK(eta(1) == Rational(-1, 3));
    CHECK(eta(2) == Rational(-1, 3));
    CHECK(eta(3) == Rational(1, 3));
    CHECK(eta(5) == 0);

    SpectralReport rep = classify_spectrum(tm, 32);
    CHECK_FALSE(rep.periodicity.certified);
    CHECK_FALSE(rep.closure_finite);
    REQUIRE(rep.rays.size() == 2);
    CHECK(rep.rays[0].verdict == RayVerdict::PurePointDeltaComb);
    CHECK(rep.rays[1].verdict == RayVerdict::Inconclusive);
}

TEST_CASE("three ergodic classes are rejected") {
    SubstitutionRule cyc = SubstitutionRule::from_strings("abc", {"abc", "bca", "cab"});
    BisubstDecomposition dec = ergodic_decomposition(cyc);
    CHECK(dec.classes.size() == 3);
    CHECK_THROWS_WITH_AS(semipositivity_interval(cyc, dec), "unsupported class count",
                         std::runtime_error);
    CHECK_THROWS_AS(classify_spectrum(cyc, 16), std::runtime_error);
}

TEST_CASE("longer sign periods run the full pipeline") {
    for (const char* s : {"++", "+--"}) {
        SubstitutionRule rule = derive_substitution(SignSequence::from_string(s));
        SpectralReport rep = classify_spectrum(rule, 32);
        CHECK(rep.balanced_verdict == DiffractionVerdict::PurelyAbsolutelyContinuous);
        for (std::size_t k = 1; k < rep.eta.size(); ++k) CHECK(rep.eta[k] == 0);
    }
}
