#include "difflab/verify.hpp"

#include "difflab/correlation.hpp"
#include "difflab/fourier.hpp"
#include "difflab/rudin.hpp"
#include "difflab/substitution.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace difflab {

namespace {

RatVec eighth(std::initializer_list<int> nums) {
    RatVec v;
    for (int n : nums) v.emplace_back(n, 8);
    return v;
}

std::vector<int> seq_from(const std::string& s) {
    // "1,1,-1,..." helper for expected sequences
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

struct Runner {
    std::vector<Check>& out;
    void add(const std::string& name, const std::function<std::string()>& body) {
        Check c{name, false, ""};
        try {
            c.detail = body();  // empty string means pass
            c.pass = c.detail.empty();
        } catch (const std::exception& e) {
            c.detail = std::string("exception: ") + e.what();
        }
        out.push_back(std::move(c));
    }
};

std::string expect(bool cond, const std::string& msg) { return cond ? "" : msg; }

}  // namespace

std::vector<Check> run_paper_checks(bool quick) {
    std::vector<Check> checks;
    Runner run{checks};

    const SubstitutionRule rho = single_step_substitution(1);
    const SubstitutionRule sigma = derive_substitution(SignSequence::from_string("+-"));

    run.add("rho images A->AB B->AC C->DB D->DC", [&] {
        return expect(rho == SubstitutionRule::from_strings("ABCD", {"AB", "AC", "DB", "DC"}),
                      "single-step +1 rule mismatch");
    });
    run.add("sigma images A->ABDB B->ABAC C->DCDB D->DCAC", [&] {
        return expect(sigma == SubstitutionRule::from_strings("ABCD", {"ABDB", "ABAC", "DCDB", "DCAC"}),
                      "derived rule for signs +- mismatch");
    });
    run.add("classic sequence first 8 terms 1,1,1,-1,1,1,-1,1", [&] {
        return expect(coefficients(SignSequence::from_string("+"), 3) ==
                          seq_from("1,1,1,-1,1,1,-1,1"),
                      "level-3 coefficients mismatch");
    });
    run.add("new sequence first 16 terms 1,1,-1,1,1,1,1,-1,...", [&] {
        return expect(coefficients(SignSequence::from_string("+-"), 4) ==
                          seq_from("1,1,-1,1,1,1,1,-1,-1,-1,1,-1,1,1,1,-1"),
                      "level-4 coefficients mismatch");
    });
    run.add("fixed points: sigma^2(A) = ABDBABACDCACABAC, rho^3(A) = ABACABDB", [&] {
        if (sigma.word_string(fixed_point_prefix(sigma, 0, 16)) != "ABDBABACDCACABAC")
            return std::string("sigma fixed-point prefix mismatch");
        if (rho.word_string(fixed_point_prefix(rho, 0, 8)) != "ABACABDB")
            return std::string("rho fixed-point prefix mismatch");
        return std::string();
    });
    run.add("instruction matrices R_0..R_3 of sigma", [&] {
        auto rs = instruction_matrices(sigma);
        auto from_rows = [](std::initializer_list<std::initializer_list<int>> rows) {
            IntMatrix m(4);
            int r = 0;
            for (const auto& row : rows) {
                int c = 0;
                for (int v : row) m.at(r, c++) = v;
                ++r;
            }
            return m;
        };
        IntMatrix r0 = from_rows({{1, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 1}});
        IntMatrix r1 = from_rows({{0, 0, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 0}});
        IntMatrix r2 = from_rows({{0, 1, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 1, 0}});
        IntMatrix r3 = from_rows({{0, 0, 0, 0}, {1, 0, 1, 0}, {0, 1, 0, 1}, {0, 0, 0, 0}});
        if (!(rs[0] == r0 && rs[1] == r1 && rs[2] == r2 && rs[3] == r3))
            return std::string("instruction matrices differ from the published ones");
        return std::string();
    });
    run.add("M = R_0+R_1+R_2+R_3 with columns summing to 4", [&] {
        auto rs = instruction_matrices(sigma);
        IntMatrix sum = rs[0] + rs[1] + rs[2] + rs[3];
        IntMatrix m = substitution_matrix(sigma);
        if (!(sum == m)) return std::string("M != sum of instruction matrices");
        for (auto s : m.column_sums())
            if (s != 4) return std::string("column sum != 4");
        return std::string();
    });
    run.add("M^2 positive: sigma primitive with witness 2", [&] {
        auto pr = is_primitive(sigma);
        return expect(pr.primitive && pr.witness == 2, "expected primitivity witness 2");
    });
    run.add("A preceded by both B and C (Pansiot aperiodicity)", [&] {
        auto factors = legal_factors(sigma, 2);
        bool ba = factors.count(sigma.parse_word("BA")) > 0;
        bool ca = factors.count(sigma.parse_word("CA")) > 0;
        auto ap = is_aperiodic_pansiot(sigma);
        return expect(ba && ca && ap.aperiodic && ap.witness_letter == 0,
                      "left neighbours of A not {B, C}");
    });
    run.add("PF eigenvalue 4 with u = (1/4,1/4,1/4,1/4)", [&] {
        auto pd = perron_data(sigma);
        return expect(pd.eigenvalue == 4 && pd.frequencies == RatVec(4, Rational(1, 4)),
                      "Perron data mismatch");
    });

    PairCorrelations corr(sigma);
    run.add("sigma_hat(0) = diag/4", [&] {
        RatVec want(16);
        for (int a = 0; a < 4; ++a) want[static_cast<std::size_t>(5 * a)] = Rational(1, 4);
        return expect(corr.sigma_hat(0) == want, "sigma_hat(0) mismatch");
    });
    run.add("sigma_hat(1) = (0,1,1,0,1,0,0,1,1,0,0,1,0,1,1,0)/8 = sigma_hat(3)", [&] {
        RatVec want = eighth({0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0});
        return expect(corr.sigma_hat(1) == want && corr.sigma_hat(3) == want,
                      "sigma_hat(1)/sigma_hat(3) mismatch");
    });
    run.add("sigma_hat(2) = (1,0,0,1,0,1,1,0,0,1,1,0,1,0,0,1)/8 = sigma_hat(4)", [&] {
        RatVec want = eighth({1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1});
        return expect(corr.sigma_hat(2) == want && corr.sigma_hat(4) == want,
                      "sigma_hat(2)/sigma_hat(4) mismatch");
    });
    run.add("sigma_hat(4n+r) periodicity for n <= 64", [&] {
        for (std::int64_t n = 1; n <= 64; ++n) {
            for (std::int64_t r = 1; r <= 3; ++r)
                if (corr.sigma_hat(4 * n + r) != corr.sigma_hat(r))
                    return "failure at distance " + std::to_string(4 * n + r);
            if (corr.sigma_hat(4 * n) != corr.sigma_hat(4))
                return "failure at distance " + std::to_string(4 * n);
        }
        return std::string();
    });

    const BisubstDecomposition dec = ergodic_decomposition(sigma);
    run.add("ergodic classes E1={AA,BB,CC,DD}, E2={AD,DA,BC,CB}, 8 transient pairs", [&] {
        auto pidx = [&](const char* s) {
            return 4 * sigma.alphabet().index_of(std::string(1, s[0])) +
                   sigma.alphabet().index_of(std::string(1, s[1]));
        };
        std::vector<int> e1{pidx("AA"), pidx("BB"), pidx("CC"), pidx("DD")};
        std::vector<int> e2{pidx("AD"), pidx("BC"), pidx("CB"), pidx("DA")};
        std::vector<int> tr{pidx("AB"), pidx("AC"), pidx("BA"), pidx("BD"),
                            pidx("CA"), pidx("CD"), pidx("DB"), pidx("DC")};
        return expect(dec.classes.size() == 2 && dec.classes[0] == e1 && dec.classes[1] == e2 &&
                          dec.transient == tr,
                      "decomposition mismatch");
    });
    run.add("transient entries of v equal (w1+w2)/2", [&] {
        auto table = absorption_coefficients(sigma, dec);
        for (int p : dec.transient)
            if (table.coefficients[static_cast<std::size_t>(p)] != RatVec{Rational(1, 2), Rational(1, 2)})
                return std::string("absorption coefficients differ from (1/2, 1/2)");
        return std::string();
    });

    const SemipositivityResult semi = semipositivity_interval(sigma, dec);
    run.add("semipositivity: w1=1 forces -1 <= w2 <= 1; v_d eigenvalues", [&] {
        if (semi.lo != -1 || semi.hi != 1) return std::string("interval != [-1, 1]");
        for (const Rational& w2 : {Rational(1), Rational(-1), Rational(1, 2)}) {
            auto eigs = eigenvalues_exact(build_v(sigma, dec, RatVec{Rational(1), w2}));
            RatVec want{Rational(0), Rational(2) * (1 + w2), Rational(1) - w2, Rational(1) - w2};
            std::sort(want.begin(), want.end());
            if (eigs != want) return "eigenvalues mismatch at w2 = " + rat_string(w2);
        }
        return std::string();
    });
    run.add("extreme rays v1 = (1,...,1), v2 = (1,0,0,-1,0,1,-1,0,0,-1,1,0,-1,0,0,1)", [&] {
        RatVec v2{1, 0, 0, -1, 0, 1, -1, 0, 0, -1, 1, 0, -1, 0, 0, 1};
        return expect(semi.rays.size() == 2 && semi.rays[0].vec == RatVec(16, Rational(1)) &&
                          semi.rays[1].vec == v2,
                      "extreme rays mismatch");
    });
    run.add("c_{v1}(k) = 1 for k <= 64 (delta comb)", [&] {
        for (std::int64_t k = 0; k <= 64; ++k)
            if (ray_fourier_coeff(semi.rays[0], corr, k) != 1)
                return "c_v1 != 1 at k = " + std::to_string(k);
        return std::string();
    });
    run.add("c_{v2}(k) = 0 for 1 <= k <= 64", [&] {
        for (std::int64_t k = 1; k <= 64; ++k)
            if (ray_fourier_coeff(semi.rays[1], corr, k) != 0)
                return "c_v2 != 0 at k = " + std::to_string(k);
        return std::string();
    });
    run.add("balanced eta(k) = 0 for 1 <= k <= 64; verdict purely AC", [&] {
        for (std::int64_t k = 1; k <= 64; ++k)
            if (autocorrelation(corr, WeightMap::standard(), k) != 0)
                return "eta != 0 at k = " + std::to_string(k);
        auto rep = classify_spectrum(sigma, 64);
        return expect(rep.balanced_verdict == DiffractionVerdict::PurelyAbsolutelyContinuous,
                      "balanced verdict not purely AC");
    });

    if (!quick) {
        run.add("sigma_hat vs brute-force counts on the 4^9 prefix (k <= 8)", [&] {
            const std::int64_t n = 1LL << 18;  // 4^9
            for (std::int64_t k = 0; k <= 8; ++k) {
                auto emp = sigma_hat_oracle(sigma, k, n);
                const RatVec& exact = corr.sigma_hat(k);
                for (std::size_t i = 0; i < emp.size(); ++i)
                    if (std::abs(emp[i] - to_double(exact[i])) > 1e-3)
                        return "entry " + std::to_string(i) + " off at k = " + std::to_string(k);
            }
            return std::string();
        });
        run.add("empirical autocorrelation vs exact eta (k <= 16)", [&] {
            auto seq = sequence_prefix(SignSequence::from_string("+-"), 1LL << 18);
            for (std::int64_t k = 0; k <= 16; ++k) {
                double emp = empirical_autocorrelation(seq, k);
                double exact = to_double(autocorrelation(corr, WeightMap::standard(), k));
                if (std::abs(emp - exact) > 1e-3) return "mismatch at k = " + std::to_string(k);
            }
            return std::string();
        });
    }

    return checks;
}

}  // namespace difflab
