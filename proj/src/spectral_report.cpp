#include "difflab/spectral_report.hpp"

#include <json.hpp>

#include <ostream>
#include <sstream>

namespace difflab {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string pair_set_string(const SpectralReport& rep, const std::vector<int>& pairs) {
    std::string s = "{";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i) s += ", ";
        s += rep.pair_names[static_cast<std::size_t>(pairs[i])];
    }
    return s + "}";
}

}  // namespace

void write_report_text(std::ostream& out, const SpectralReport& rep) {
    out << "substitution (length " << rep.rule.length << ")\n";
    for (std::size_t a = 0; a < rep.rule.letters.size(); ++a)
        out << "  " << rep.rule.letters[a] << " -> " << rep.rule.images[a] << "\n";

    out << "letter frequencies u: (" << rat_vec_string(rep.perron.frequencies, ", ")
        << "), PF eigenvalue " << rep.perron.eigenvalue << "\n";

    out << "ergodic classes of the bi-substitution:\n";
    for (std::size_t c = 0; c < rep.decomposition.classes.size(); ++c)
        out << "  E" << c + 1 << " = " << pair_set_string(rep, rep.decomposition.classes[c]) << "\n";
    out << "  transient = " << pair_set_string(rep, rep.decomposition.transient) << "\n";

    out << "pair correlations (lexicographic pair order";
    for (const auto& name : rep.pair_names) out << " " << name;
    out << "):\n";
    for (const auto& cv : rep.sigma_hat_table) {
        if (cv.k > 8 && cv.k < rep.horizon - 1) continue;  // keep the text form short
        out << "  sigma_hat(" << cv.k << ") = (" << rat_vec_string(cv.entries, ", ") << ")\n";
    }
    out << "  (" << rep.sigma_hat_table.size() << " distances computed; full table in JSON output)\n";

    if (rep.periodicity.certified)
        out << "periodicity: sigma_hat(k+" << rep.periodicity.period << ") = sigma_hat(k) verified exactly for 1 <= k <= "
            << rep.periodicity.window - rep.periodicity.period << "\n";
    else
        out << "periodicity: no period up to the search bound (window " << rep.periodicity.window << ")\n";
    if (rep.closure_finite)
        out << "value closure: sigma_hat takes exactly " << rep.closure_value_count
            << " distinct values over all k >= 1 (finite closure; claims below hold for every k)\n";

    if (rep.rays.size() > 1)
        out << "semipositive weight range (diagonal class at 1): [" << rat_string(rep.semipos_lo)
            << ", " << rat_string(rep.semipos_hi) << "]\n";
    for (const auto& rr : rep.rays) {
        out << "ray " << rr.ray.name << " = (" << rat_vec_string(rr.ray.vec, ", ") << ")\n";
        out << "  c(0) = " << rat_string(rr.c0) << "; c(k) for k = 1.." << rep.horizon << ": ";
        bool all_zero = true, all_const = true;
        for (const auto& c : rr.coeffs) {
            all_zero = all_zero && c == 0;
            all_const = all_const && c == rr.c0;
        }
        if (all_zero)
            out << "all 0";
        else if (all_const)
            out << "all " << rat_string(rr.c0);
        else {
            for (std::size_t i = 0; i < rr.coeffs.size() && i < 8; ++i)
                out << (i ? ", " : "") << rat_string(rr.coeffs[i]);
            out << ", ...";
        }
        out << "\n  verdict: " << to_string(rr.verdict)
            << (rr.holds_for_all_k ? " (certified for every k >= 1)" : " (tested horizon only)") << "\n";
    }

    if (rep.has_balanced) {
        out << "balanced weights (A,B -> +1; C,D -> -1): mean = " << rat_string(rep.mean_weight) << "\n";
        bool eta_zero = true;
        for (std::size_t k = 1; k < rep.eta.size(); ++k) eta_zero = eta_zero && rep.eta[k] == 0;
        out << "  eta(0) = " << rat_string(rep.eta[0]);
        if (eta_zero)
            out << ", eta(k) = 0 exactly for 1 <= k <= " << rep.horizon << "\n";
        else {
            out << ", eta(1..8) =";
            for (std::size_t k = 1; k < rep.eta.size() && k <= 8; ++k) out << " " << rat_string(rep.eta[k]);
            out << "\n";
        }
        out << "  diffraction verdict: " << to_string(rep.balanced_verdict) << "\n";
    }
}

std::string report_json(const SpectralReport& rep) {
    ordered_json j;
    j["rule"] = {{"letters", rep.rule.letters}, {"length", rep.rule.length}, {"images", rep.rule.images}};
    j["horizon"] = rep.horizon;
    j["perron"] = {{"eigenvalue", rep.perron.eigenvalue}};
    {
        std::vector<std::string> u;
        for (const auto& r : rep.perron.frequencies) u.push_back(rat_string(r));
        j["perron"]["frequencies"] = u;
    }
    j["pair_order"] = rep.pair_names;
    {
        ordered_json classes = ordered_json::array();
        for (const auto& cls : rep.decomposition.classes) {
            std::vector<std::string> names;
            for (int p : cls) names.push_back(rep.pair_names[static_cast<std::size_t>(p)]);
            classes.push_back(names);
        }
        std::vector<std::string> transient;
        for (int p : rep.decomposition.transient)
            transient.push_back(rep.pair_names[static_cast<std::size_t>(p)]);
        j["ergodic_classes"] = classes;
        j["transient"] = transient;
    }
    {
        ordered_json table = ordered_json::object();
        for (const auto& cv : rep.sigma_hat_table) {
            std::vector<std::string> entries;
            for (const auto& r : cv.entries) entries.push_back(rat_string(r));
            table[std::to_string(cv.k)] = entries;
        }
        j["sigma_hat"] = table;
    }
    j["periodicity"] = {{"certified", rep.periodicity.certified},
                        {"period", rep.periodicity.period},
                        {"window", rep.periodicity.window}};
    j["value_closure"] = {{"finite", rep.closure_finite}, {"distinct_values", rep.closure_value_count}};
    if (rep.rays.size() > 1)
        j["semipositive_interval"] = {rat_string(rep.semipos_lo), rat_string(rep.semipos_hi)};
    {
        ordered_json rays = ordered_json::array();
        for (const auto& rr : rep.rays) {
            ordered_json rj;
            rj["name"] = rr.ray.name;
            std::vector<std::string> weights, vec, coeffs;
            for (const auto& r : rr.ray.weights) weights.push_back(rat_string(r));
            for (const auto& r : rr.ray.vec) vec.push_back(rat_string(r));
            for (const auto& r : rr.coeffs) coeffs.push_back(rat_string(r));
            rj["class_weights"] = weights;
            rj["vector"] = vec;
            rj["c0"] = rat_string(rr.c0);
            rj["fourier_coefficients"] = coeffs;
            rj["verdict"] = to_string(rr.verdict);
            rj["holds_for_all_k"] = rr.holds_for_all_k;
            rays.push_back(rj);
        }
        j["rays"] = rays;
    }
    if (rep.has_balanced) {
        std::vector<std::string> eta;
        for (const auto& r : rep.eta) eta.push_back(rat_string(r));
        j["balanced"] = {{"weights", "A,B -> +1; C,D -> -1"},
                         {"mean_weight", rat_string(rep.mean_weight)},
                         {"eta", eta},
                         {"verdict", to_string(rep.balanced_verdict)}};
    }
    return j.dump(2) + "\n";
}

}  // namespace difflab
