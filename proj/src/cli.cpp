#include "difflab/cli.hpp"

#include "difflab/correlation.hpp"
#include "difflab/fourier.hpp"
#include "difflab/rudin.hpp"
#include "difflab/spectral_report.hpp"
#include "difflab/subst_text.hpp"
#include "difflab/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace difflab {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitUsage = 64;
constexpr int kExitFailure = 70;
constexpr int kExitInconclusive = 2;
constexpr int kExitUnsupportedClasses = 3;

std::string float17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Inputs {
    std::string signs;
    std::string file;
    std::string weights;
    std::string format = "text";
    std::string out_path;
};

void add_source_flags(CLI::App* cmd, Inputs& in, bool file_allowed = true) {
    auto* s = cmd->add_option("--signs", in.signs, "periodic sign pattern over {+,-}, e.g. \"+-\"");
    if (file_allowed) {
        auto* f = cmd->add_option("--file", in.file, "substitution definition file");
        s->excludes(f);
        f->excludes(s);
    } else {
        s->required();
    }
}

SubstitutionRule rule_from(const Inputs& in) {
    if (!in.signs.empty() && !in.file.empty())
        throw std::invalid_argument("provide exactly one of --signs and --file");
    if (!in.signs.empty()) return derive_substitution(SignSequence::from_string(in.signs));
    if (!in.file.empty()) return load_rule_file(in.file);
    throw std::invalid_argument("one of --signs or --file is required");
}

WeightMap weights_for(const Inputs& in, const SubstitutionRule& rule) {
    if (!in.weights.empty()) {
        WeightMap w = WeightMap::from_string(in.weights);
        if (static_cast<int>(w.weights.size()) != rule.alphabet().size())
            throw std::invalid_argument("--weights needs one sign per alphabet letter");
        return w;
    }
    bool standard_applies = rule.alphabet().size() == 4 && rule.alphabet().single_char() &&
                            rule.alphabet().symbols() == std::vector<std::string>{"A", "B", "C", "D"};
    if (!standard_applies)
        throw std::invalid_argument("no default weights for this alphabet; pass --weights");
    return WeightMap::standard();
}

int first_prolongable(const SubstitutionRule& rule) {
    for (int a = 0; a < rule.alphabet().size(); ++a)
        if (rule.image(a)[0] == a) return a;
    throw std::invalid_argument("rule has no prolongable seed letter");
}

void emit(const Inputs& in, std::ostream& fallback, const std::string& payload) {
    if (in.out_path.empty()) {
        fallback << payload;
        return;
    }
    std::ofstream f(in.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file '" + in.out_path + "'");
    f << payload;
}

std::string sequence_csv(const std::vector<int>& seq) {
    std::string s;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(seq[i]);
    }
    s += '\n';
    return s;
}

int cmd_generate(const Inputs& in, std::int64_t n, std::ostream& out) {
    std::vector<int> seq;
    if (!in.signs.empty() && in.weights.empty()) {
        seq = sequence_prefix(SignSequence::from_string(in.signs), n);
    } else {
        SubstitutionRule rule = rule_from(in);
        WeightMap w = weights_for(in, rule);
        seq = binary_reduce(fixed_point_prefix(rule, first_prolongable(rule), n), w);
    }
    emit(in, out, sequence_csv(seq));
    return 0;
}

int cmd_derive(const Inputs& in, std::ostream& out) {
    SubstitutionRule rule = derive_substitution(SignSequence::from_string(in.signs));
    emit(in, out, rule_text(rule));
    return 0;
}

int cmd_analyze(const Inputs& in, std::ostream& out) {
    SubstitutionRule rule = rule_from(in);
    auto prim = is_primitive(rule);
    std::optional<AperiodicityResult> aper;
    std::optional<PerronData> pf;
    std::vector<std::string> two_factors;
    if (prim.primitive) {
        aper = is_aperiodic_pansiot(rule);
        pf = perron_data(rule);
        for (const Word& w : legal_factors(rule, 2)) two_factors.push_back(rule.word_string(w));
    }
    IntMatrix m = substitution_matrix(rule);

    if (in.format == "json") {
        ordered_json j;
        std::vector<std::string> letters, images;
        for (int a = 0; a < rule.alphabet().size(); ++a) {
            letters.push_back(rule.alphabet().symbol(a));
            images.push_back(rule.word_string(rule.image(a)));
        }
        j["rule"] = {{"letters", letters}, {"length", rule.length()}, {"images", images}};
        j["primitive"] = prim.primitive;
        if (prim.primitive) {
            j["primitivity_witness"] = prim.witness;
            j["aperiodic"] = aper->aperiodic;
            if (aper->aperiodic)
                j["aperiodicity_witness"] = rule.alphabet().symbol(aper->witness_letter);
            std::vector<std::string> u;
            for (const auto& r : pf->frequencies) u.push_back(rat_string(r));
            j["perron"] = {{"eigenvalue", pf->eigenvalue}, {"frequencies", u}};
            j["legal_2_factors"] = two_factors;
        }
        {
            std::vector<std::vector<std::int64_t>> rows;
            for (int r = 0; r < m.n; ++r) {
                std::vector<std::int64_t> row;
                for (int c = 0; c < m.n; ++c) row.push_back(m.at(r, c));
                rows.push_back(row);
            }
            j["substitution_matrix"] = rows;
        }
        emit(in, out, j.dump(2) + "\n");
        return 0;
    }

    std::ostringstream text;
    text << "substitution (length " << rule.length() << ")\n";
    for (int a = 0; a < rule.alphabet().size(); ++a)
        text << "  " << rule.alphabet().symbol(a) << " -> " << rule.word_string(rule.image(a)) << "\n";
    text << "substitution matrix M (rows/cols in alphabet order):\n";
    for (int r = 0; r < m.n; ++r) {
        text << " ";
        for (int c = 0; c < m.n; ++c) text << " " << m.at(r, c);
        text << "\n";
    }
    if (prim.primitive) {
        text << "primitive: yes (M^" << prim.witness << " > 0)\n";
        text << "aperiodic (Pansiot left-neighbour test): ";
        if (aper->aperiodic)
            text << "yes (letter " << rule.alphabet().symbol(aper->witness_letter)
                 << " has two left neighbours)\n";
        else
            text << "inconclusive\n";
        text << "PF eigenvalue " << pf->eigenvalue << ", frequencies ("
             << rat_vec_string(pf->frequencies, ", ") << ")\n";
        text << "legal 2-factors:";
        for (const auto& f : two_factors) text << " " << f;
        text << "\n";
    } else {
        text << "primitive: no\n";
    }
    emit(in, out, text.str());
    return 0;
}

int cmd_spectra(const Inputs& in, std::int64_t horizon, std::ostream& out) {
    SubstitutionRule rule = rule_from(in);
    SpectralReport rep = classify_spectrum(rule, horizon);
    std::string payload;
    if (in.format == "json") {
        payload = report_json(rep);
    } else {
        std::ostringstream text;
        write_report_text(text, rep);
        payload = text.str();
    }
    emit(in, out, payload);
    bool inconclusive = rep.has_balanced && rep.balanced_verdict == DiffractionVerdict::Inconclusive;
    for (const auto& rr : rep.rays) inconclusive |= rr.verdict == RayVerdict::Inconclusive;
    return inconclusive ? kExitInconclusive : 0;
}

int cmd_autocorr(const Inputs& in, std::int64_t horizon, std::ostream& out) {
    SubstitutionRule rule = rule_from(in);
    WeightMap w = weights_for(in, rule);
    PairCorrelations corr(rule);
    std::vector<Rational> eta;
    for (std::int64_t k = 0; k <= horizon; ++k) eta.push_back(autocorrelation(corr, w, k));

    std::string payload;
    if (in.format == "json") {
        ordered_json j;
        std::vector<std::string> vals;
        for (const auto& r : eta) vals.push_back(rat_string(r));
        j["eta"] = vals;
        payload = j.dump(2) + "\n";
    } else if (in.format == "csv") {
        std::string s = "k,eta\n";
        for (std::size_t k = 0; k < eta.size(); ++k)
            s += std::to_string(k) + "," + rat_string(eta[k]) + "\n";
        payload = s;
    } else {
        std::ostringstream text;
        for (std::size_t k = 0; k < eta.size(); ++k)
            text << "eta(" << k << ") = " << rat_string(eta[k]) << "\n";
        payload = text.str();
    }
    emit(in, out, payload);
    return 0;
}

int cmd_diffract(const Inputs& in, std::int64_t n, int bins, int oversample, bool sup_scan,
                 std::ostream& out) {
    std::vector<int> seq;
    if (!in.signs.empty() && in.weights.empty()) {
        seq = sequence_prefix(SignSequence::from_string(in.signs), n);
    } else {
        SubstitutionRule rule = rule_from(in);
        WeightMap w = weights_for(in, rule);
        seq = binary_reduce(fixed_point_prefix(rule, first_prolongable(rule), n), w);
    }

    std::string payload;
    if (sup_scan) {
        const std::size_t m = seq.size() * static_cast<std::size_t>(oversample);
        if (in.format == "csv") {
            // The oversampled grid is the periodogram of the zero-padded
            // sequence; magnitudes are reported per grid point.
            std::vector<int> padded(m, 0);
            std::copy(seq.begin(), seq.end(), padded.begin());
            std::vector<double> inten = periodogram(padded);
            std::string s = "theta,magnitude\n";
            for (std::size_t j = 0; j < inten.size(); ++j) {
                double mag = std::sqrt(inten[j] * static_cast<double>(m));
                s += float17(static_cast<double>(j) / static_cast<double>(m)) + "," + float17(mag) + "\n";
            }
            payload = s;
        } else {
            SupNormResult res = sup_norm_estimate(seq, oversample);
            if (in.format == "json") {
                ordered_json j;
                j["n"] = res.n;
                j["oversample"] = res.oversample;
                j["sup_estimate"] = res.sup_estimate;
                j["ratio"] = res.ratio;
                j["gap_factor"] = res.gap_factor;
                payload = j.dump(2) + "\n";
            } else {
                std::ostringstream text;
                text << "N = " << res.n << ", oversample = " << res.oversample << "\n"
                     << "grid sup |sum| = " << float17(res.sup_estimate) << "\n"
                     << "ratio sup/sqrt(N) = " << float17(res.ratio) << "\n"
                     << "Bernstein gap factor = " << float17(res.gap_factor) << "\n";
                payload = text.str();
            }
        }
    } else {
        std::vector<double> inten = periodogram(seq);
        if (in.format == "csv") {
            std::string s = "freq_index,intensity\n";
            for (std::size_t j = 0; j < inten.size(); ++j)
                s += std::to_string(j) + "," + float17(inten[j]) + "\n";
            payload = s;
        } else {
            double mean = 0;
            for (double v : inten) mean += v;
            mean /= static_cast<double>(inten.size());
            std::vector<double> means = bin_means(inten, bins);
            if (in.format == "json") {
                ordered_json j;
                j["n"] = seq.size();
                j["parseval_mean"] = mean;
                j["bins"] = bins;
                j["bin_means"] = means;
                payload = j.dump(2) + "\n";
            } else {
                std::ostringstream text;
                text << "N = " << seq.size() << ", Parseval mean = " << float17(mean) << "\n";
                auto [lo, hi] = std::minmax_element(means.begin(), means.end());
                text << bins << " bin means in [" << float17(*lo) << ", " << float17(*hi) << "]\n";
                payload = text.str();
            }
        }
    }
    emit(in, out, payload);
    return 0;
}

int cmd_verify(bool quick, std::ostream& out) {
    auto checks = run_paper_checks(quick);
    std::size_t width = 0;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    bool all = true;
    for (const auto& c : checks) {
        out << (c.pass ? "PASS  " : "FAIL  ") << c.name;
        if (!c.pass) {
            out << std::string(width - c.name.size() + 2, ' ') << c.detail;
            all = false;
        }
        out << "\n";
    }
    out << (all ? "all checks passed" : "CHECKS FAILED") << " (" << checks.size() << " run)\n";
    return all ? 0 : 1;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rudin-Shapiro-type sequences: generation, substitution derivation, and exact diffraction analysis"};
    app.require_subcommand(1);

    Inputs in;
    std::int64_t n = 16;
    std::int64_t horizon = 64;
    int bins = 64;
    int oversample = 8;
    bool sup_scan = false;
    bool quick = false;

    auto* generate = app.add_subcommand("generate", "emit a +-1 sequence prefix");
    add_source_flags(generate, in);
    generate->add_option("-N,--length", n, "number of terms")->required();
    generate->add_option("--weights", in.weights, "letter weights over {+,-}, by alphabet position");
    generate->add_option("--out", in.out_path, "output file (default stdout)");

    auto* derive = app.add_subcommand("derive", "derive the substitution rule for a sign pattern");
    derive->add_option("--signs", in.signs, "periodic sign pattern over {+,-}")->required();
    derive->add_option("--out", in.out_path, "output file (default stdout)");

    auto* analyze = app.add_subcommand("analyze", "primitivity, aperiodicity and Perron-Frobenius data");
    add_source_flags(analyze, in);
    analyze->add_option("--format", in.format, "text|json")->check(CLI::IsMember({"text", "json"}));
    analyze->add_option("--out", in.out_path, "output file (default stdout)");

    auto* spectra = app.add_subcommand("spectra", "full spectral classification report");
    add_source_flags(spectra, in);
    spectra->add_option("-K,--horizon", horizon, "test horizon for exact checks");
    spectra->add_option("--format", in.format, "text|json")->check(CLI::IsMember({"text", "json"}));
    spectra->add_option("--out", in.out_path, "output file (default stdout)");

    auto* autocorr = app.add_subcommand("autocorr", "exact weighted autocorrelation table");
    add_source_flags(autocorr, in);
    autocorr->add_option("-K,--horizon", horizon, "largest distance");
    autocorr->add_option("--weights", in.weights, "letter weights over {+,-}");
    autocorr->add_option("--format", in.format, "text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    autocorr->add_option("--out", in.out_path, "output file (default stdout)");

    auto* diffract = app.add_subcommand("diffract", "periodogram or sup-norm scan of a sequence prefix");
    add_source_flags(diffract, in);
    diffract->add_option("-N,--length", n, "prefix length")->required();
    diffract->add_option("--bins", bins, "frequency bins for the flatness summary");
    diffract->add_option("--oversample", oversample, "grid oversampling factor for --sup");
    diffract->add_flag("--sup", sup_scan, "scan |sum eps e^{2 pi i n theta}| instead of the periodogram");
    diffract->add_option("--format", in.format, "csv|text|json")
        ->check(CLI::IsMember({"csv", "text", "json"}));
    diffract->add_option("--out", in.out_path, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "run the built-in exact regression table");
    verify->add_flag("--quick", quick, "skip the large brute-force prefix counts");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return e.get_exit_code();
    }

    try {
        if (generate->parsed()) return cmd_generate(in, n, out);
        if (derive->parsed()) return cmd_derive(in, out);
        if (analyze->parsed()) return cmd_analyze(in, out);
        if (spectra->parsed()) return cmd_spectra(in, horizon, out);
        if (autocorr->parsed()) return cmd_autocorr(in, horizon, out);
        if (diffract->parsed()) return cmd_diffract(in, n, bins, oversample, sup_scan, out);
        if (verify->parsed()) return cmd_verify(quick, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return std::string(e.what()).find("unsupported class count") != std::string::npos
                   ? kExitUnsupportedClasses
                   : kExitFailure;
    }
    return kExitFailure;
}

}  // namespace difflab
