#include "difflab/correlation.hpp"

#include "difflab/poly.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace difflab {

namespace {

int pair_index(int d, int alpha, int beta) { return alpha * d + beta; }

}  // namespace

PairCorrelations::PairCorrelations(SubstitutionRule rule)
    : rule_(std::move(rule)),
      d_(rule_.alphabet().size()),
      dd_(d_ * d_),
      len_(rule_.length()),
      perron_(perron_data(rule_)) {
    RatVec s0(static_cast<std::size_t>(dd_));
    for (int a = 0; a < d_; ++a)
        s0[static_cast<std::size_t>(pair_index(d_, a, a))] = perron_.frequencies[static_cast<std::size_t>(a)];
    memo_[0] = std::move(s0);

    // Base system for distance 1; distances 2..L-1 then follow directly.
    const Transfer& t1 = transfer(1 % len_);
    RatVec rhs = matvec(t1.no_carry, memo_[0]);
    RatMat lhs = RatMat::identity(static_cast<std::size_t>(dd_));
    for (std::size_t i = 0; i < lhs.a.size(); ++i) lhs.a[i] -= t1.carry.a[i];
    auto s1 = solve(lhs, rhs);
    if (!s1) throw std::runtime_error("renormalization base system is singular");
    memo_[1] = std::move(*s1);
}

const PairCorrelations::Transfer& PairCorrelations::transfer(int r) {
    auto it = transfers_.find(r);
    if (it != transfers_.end()) return it->second;
    Transfer t{RatMat(static_cast<std::size_t>(dd_), static_cast<std::size_t>(dd_)),
               RatMat(static_cast<std::size_t>(dd_), static_cast<std::size_t>(dd_))};
    const Rational unit(1, len_);
    for (int g = 0; g < d_; ++g) {
        const Word& img_g = rule_.image(g);
        for (int h = 0; h < d_; ++h) {
            const Word& img_h = rule_.image(h);
            const std::size_t src = static_cast<std::size_t>(pair_index(d_, g, h));
            for (int i = 0; i < len_; ++i) {
                const int j = i + r;
                const int a = img_g[static_cast<std::size_t>(i)];
                const int b = img_h[static_cast<std::size_t>(j % len_)];
                RatMat& dst = j < len_ ? t.no_carry : t.carry;
                dst.at(static_cast<std::size_t>(pair_index(d_, a, b)), src) += unit;
            }
        }
    }
    return transfers_.emplace(r, std::move(t)).first->second;
}

const RatVec& PairCorrelations::sigma_hat(std::int64_t k) {
    if (k < 0) throw std::invalid_argument("sigma_hat: distance must be >= 0");
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    const int r = static_cast<int>(k % len_);
    const std::int64_t c = k / len_;
    const Transfer& t = transfer(r);
    RatVec out = matvec(t.no_carry, sigma_hat(c));
    if (r != 0) {
        RatVec carry_part = matvec(t.carry, sigma_hat(c + 1));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += carry_part[i];
    }
    return memo_.emplace(k, std::move(out)).first->second;
}

std::string PairCorrelations::pair_name(int pair_idx) const {
    return rule_.alphabet().symbol(pair_idx / d_) + rule_.alphabet().symbol(pair_idx % d_);
}

CorrVector sigma_hat(const SubstitutionRule& rule, std::int64_t k) {
    PairCorrelations corr(rule);
    return CorrVector{k, corr.sigma_hat(k)};
}

std::vector<double> sigma_hat_oracle(const SubstitutionRule& rule, std::int64_t k,
                                     std::int64_t n_prefix) {
    if (n_prefix < k + 1) throw std::invalid_argument("oracle prefix must be longer than the distance");
    const int d = rule.alphabet().size();
    int seed = -1;
    for (int a = 0; a < d; ++a)
        if (rule.image(a)[0] == a) {
            seed = a;
            break;
        }
    if (seed < 0) throw std::invalid_argument("oracle needs a prolongable letter");
    Word w = fixed_point_prefix(rule, seed, n_prefix);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(d) * d, 0);
    for (std::int64_t n = 0; n + k < n_prefix; ++n)
        ++counts[static_cast<std::size_t>(pair_index(d, w[static_cast<std::size_t>(n)],
                                                     w[static_cast<std::size_t>(n + k)]))];
    std::vector<double> freq(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        freq[i] = static_cast<double>(counts[i]) / static_cast<double>(n_prefix - k);
    return freq;
}

SubstitutionRule bisubstitution(const SubstitutionRule& rule) {
    const int d = rule.alphabet().size();
    std::vector<std::string> symbols;
    symbols.reserve(static_cast<std::size_t>(d) * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            symbols.push_back(rule.alphabet().symbol(a) + rule.alphabet().symbol(b));
    std::vector<Word> images;
    images.reserve(symbols.size());
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            Word img;
            img.reserve(static_cast<std::size_t>(rule.length()));
            for (int i = 0; i < rule.length(); ++i)
                img.push_back(pair_index(d, rule.image(a)[static_cast<std::size_t>(i)],
                                         rule.image(b)[static_cast<std::size_t>(i)]));
            images.push_back(std::move(img));
        }
    return SubstitutionRule(Alphabet(std::move(symbols)), std::move(images));
}

namespace {

// Pair digraph: edges p -> instruction images of p.
std::vector<std::vector<int>> pair_digraph(const SubstitutionRule& rule) {
    const int d = rule.alphabet().size();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(d) * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            std::set<int> targets;
            for (int i = 0; i < rule.length(); ++i)
                targets.insert(pair_index(d, rule.image(a)[static_cast<std::size_t>(i)],
                                          rule.image(b)[static_cast<std::size_t>(i)]));
            adj[static_cast<std::size_t>(pair_index(d, a, b))].assign(targets.begin(), targets.end());
        }
    return adj;
}

std::vector<int> scc_ids(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> order;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::function<void(int)> dfs1 = [&](int v) {
        seen[static_cast<std::size_t>(v)] = true;
        for (int w : adj[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) dfs1(w);
        order.push_back(v);
    };
    for (int v = 0; v < n; ++v)
        if (!seen[static_cast<std::size_t>(v)]) dfs1(v);

    std::vector<std::vector<int>> radj(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        for (int w : adj[static_cast<std::size_t>(v)]) radj[static_cast<std::size_t>(w)].push_back(v);

    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int ncomp = 0;
    std::function<void(int)> dfs2 = [&](int v) {
        comp[static_cast<std::size_t>(v)] = ncomp;
        for (int w : radj[static_cast<std::size_t>(v)])
            if (comp[static_cast<std::size_t>(w)] < 0) dfs2(w);
    };
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (comp[static_cast<std::size_t>(*it)] < 0) {
            dfs2(*it);
            ++ncomp;
        }
    return comp;
}

}  // namespace

BisubstDecomposition ergodic_decomposition(const SubstitutionRule& rule) {
    if (!is_primitive(rule).primitive)
        throw std::invalid_argument("ergodic_decomposition requires a primitive rule");
    const int d = rule.alphabet().size();
    auto adj = pair_digraph(rule);
    auto comp = scc_ids(adj);
    const int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;

    std::vector<bool> closed(static_cast<std::size_t>(ncomp), true);
    for (std::size_t v = 0; v < adj.size(); ++v)
        for (int w : adj[v])
            if (comp[v] != comp[static_cast<std::size_t>(w)]) closed[static_cast<std::size_t>(comp[v])] = false;

    std::vector<std::vector<int>> members(static_cast<std::size_t>(ncomp));
    for (std::size_t v = 0; v < adj.size(); ++v)
        members[static_cast<std::size_t>(comp[v])].push_back(static_cast<int>(v));

    BisubstDecomposition out;
    out.d = d;
    for (int c = 0; c < ncomp; ++c)
        if (closed[static_cast<std::size_t>(c)])
            out.classes.push_back(members[static_cast<std::size_t>(c)]);
        else
            out.transient.insert(out.transient.end(), members[static_cast<std::size_t>(c)].begin(),
                                 members[static_cast<std::size_t>(c)].end());
    std::sort(out.classes.begin(), out.classes.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    std::sort(out.transient.begin(), out.transient.end());
    return out;
}

AbsorptionTable absorption_coefficients(const SubstitutionRule& rule,
                                        const BisubstDecomposition& decomp) {
    const int d = decomp.d;
    const int dd = d * d;
    const int ncls = static_cast<int>(decomp.classes.size());
    const int len = rule.length();

    AbsorptionTable table;
    table.pair_class.assign(static_cast<std::size_t>(dd), -1);
    for (int c = 0; c < ncls; ++c)
        for (int p : decomp.classes[static_cast<std::size_t>(c)])
            table.pair_class[static_cast<std::size_t>(p)] = c;

    table.coefficients.assign(static_cast<std::size_t>(dd), RatVec(static_cast<std::size_t>(ncls)));
    for (int p = 0; p < dd; ++p)
        if (table.pair_class[static_cast<std::size_t>(p)] >= 0)
            table.coefficients[static_cast<std::size_t>(p)]
                              [static_cast<std::size_t>(table.pair_class[static_cast<std::size_t>(p)])] = 1;

    const auto& tr = decomp.transient;
    if (tr.empty()) return table;

    std::vector<int> tr_pos(static_cast<std::size_t>(dd), -1);
    for (std::size_t i = 0; i < tr.size(); ++i) tr_pos[static_cast<std::size_t>(tr[i])] = static_cast<int>(i);

    // One-step pair chain with the instruction position picked uniformly.
    RatMat lhs(tr.size(), tr.size());  // I - Q
    for (std::size_t i = 0; i < tr.size(); ++i) lhs.at(i, i) = 1;
    std::vector<RatVec> rhs(static_cast<std::size_t>(ncls), RatVec(tr.size()));
    const Rational step(1, len);
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const int a = tr[i] / d, b = tr[i] % d;
        for (int pos = 0; pos < len; ++pos) {
            const int target = pair_index(d, rule.image(a)[static_cast<std::size_t>(pos)],
                                          rule.image(b)[static_cast<std::size_t>(pos)]);
            const int cls = table.pair_class[static_cast<std::size_t>(target)];
            if (cls >= 0)
                rhs[static_cast<std::size_t>(cls)][i] += step;
            else
                lhs.at(i, static_cast<std::size_t>(tr_pos[static_cast<std::size_t>(target)])) -= step;
        }
    }
    for (int c = 0; c < ncls; ++c) {
        auto sol = solve(lhs, rhs[static_cast<std::size_t>(c)]);
        if (!sol) throw std::runtime_error("absorption system is singular");
        for (std::size_t i = 0; i < tr.size(); ++i)
            table.coefficients[static_cast<std::size_t>(tr[i])][static_cast<std::size_t>(c)] = (*sol)[i];
    }
    return table;
}

RatMat build_v(const SubstitutionRule& rule, const BisubstDecomposition& decomp,
               const RatVec& class_weights) {
    if (class_weights.size() != decomp.classes.size())
        throw std::invalid_argument("build_v: one weight per ergodic class required");
    AbsorptionTable table = absorption_coefficients(rule, decomp);
    const int d = decomp.d;
    RatMat v(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const auto& coeff = table.coefficients[static_cast<std::size_t>(pair_index(d, a, b))];
            Rational entry = 0;
            for (std::size_t c = 0; c < coeff.size(); ++c) entry += coeff[c] * class_weights[c];
            v.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = entry;
        }
    return v;
}

std::vector<Rational> eigenvalues_exact(const RatMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("eigenvalues_exact: square matrix required");
    const std::size_t n = m.rows;
    std::vector<Poly> entries(n * n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            RatVec coeffs{-m.at(r, c)};
            if (r == c) coeffs.push_back(1);  // lambda on the diagonal
            entries[r * n + c] = Poly(std::move(coeffs));
        }
    Poly charpoly = poly_det(entries, n);
    Poly cofactor;
    auto roots = rational_roots(charpoly, &cofactor);
    std::vector<Rational> eigs;
    for (const auto& [root, mult] : roots)
        for (int i = 0; i < mult; ++i) eigs.push_back(root);
    if (eigs.size() != n) throw std::runtime_error("matrix has irrational eigenvalues");
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

namespace {

RatVec flatten(const RatMat& v) {
    return v.a;
}

// Sums of j x j principal minors of C + w*D as polynomials in w.
std::vector<Poly> principal_minor_sums(const RatMat& c_mat, const RatMat& d_mat) {
    const int d = static_cast<int>(c_mat.rows);
    std::vector<Poly> sums(static_cast<std::size_t>(d) + 1);
    for (int mask = 1; mask < (1 << d); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < d; ++i)
            if (mask & (1 << i)) idx.push_back(i);
        const std::size_t j = idx.size();
        std::vector<Poly> sub(j * j);
        for (std::size_t r = 0; r < j; ++r)
            for (std::size_t cc = 0; cc < j; ++cc) {
                RatVec coeffs{c_mat.at(static_cast<std::size_t>(idx[r]), static_cast<std::size_t>(idx[cc])),
                              d_mat.at(static_cast<std::size_t>(idx[r]), static_cast<std::size_t>(idx[cc]))};
                sub[r * j + cc] = Poly(std::move(coeffs));
            }
        sums[j] = sums[j] + poly_det(sub, j);
    }
    return sums;
}

// v(w) is symmetric, so its characteristic polynomial is real-rooted and
// positive semidefiniteness is equivalent to all principal-minor sums E_j(w)
// being nonnegative.
bool feasible_at(const std::vector<Poly>& minor_sums, const Rational& w) {
    for (std::size_t j = 1; j < minor_sums.size(); ++j)
        if (!minor_sums[j].is_zero() && minor_sums[j].eval(w) < 0) return false;
    return true;
}

}  // namespace

SemipositivityResult semipositivity_interval(const SubstitutionRule& rule,
                                             const BisubstDecomposition& decomp) {
    const std::size_t ncls = decomp.classes.size();
    if (ncls == 0 || ncls > 2) throw std::runtime_error("unsupported class count");

    SemipositivityResult out;
    if (ncls == 1) {
        RatMat v = build_v(rule, decomp, RatVec{Rational(1)});
        out.lo = out.hi = 1;
        out.rays.push_back(ExtremeRay{"v1", RatVec{Rational(1)}, flatten(v)});
        return out;
    }

    // v(w) = C + w*D with the diagonal class fixed at weight 1.
    RatMat c_mat = build_v(rule, decomp, RatVec{Rational(1), Rational(0)});
    RatMat d_mat = build_v(rule, decomp, RatVec{Rational(0), Rational(1)});
    const int d = decomp.d;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            if (c_mat.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) !=
                    c_mat.at(static_cast<std::size_t>(b), static_cast<std::size_t>(a)) ||
                d_mat.at(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) !=
                    d_mat.at(static_cast<std::size_t>(b), static_cast<std::size_t>(a)))
                throw std::runtime_error("weight matrix is not symmetric");

    auto minor_sums = principal_minor_sums(c_mat, d_mat);

    // All real roots of every constraint must be rational for the endpoints
    // to be exact; verify via Sturm counts before trusting the root lists.
    std::vector<Rational> candidates;
    for (std::size_t j = 1; j < minor_sums.size(); ++j) {
        const Poly& e = minor_sums[j];
        if (e.degree() < 1) continue;
        auto roots = rational_roots(e);
        Rational bound = root_bound(e);
        int real_count = count_real_roots(sturm_chain(e), -bound, bound);
        if (real_count != static_cast<int>(roots.size()))
            throw std::runtime_error("semipositivity endpoint is not rational (unsupported)");
        for (const auto& [root, mult] : roots) candidates.push_back(root);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const Rational one(1);
    if (!feasible_at(minor_sums, one))
        throw std::runtime_error("weight matrix not semipositive at equal weights");

    // Every constraint polynomial keeps a constant sign on the open gaps
    // between consecutive roots, so feasibility is decided per gap by one
    // probe, and a feasible gap forces feasibility of its endpoints (the
    // constraints extend continuously). Walk gap-by-gap outward from w = 1.
    auto feasible = [&](const Rational& w) { return feasible_at(minor_sums, w); };
    const std::size_t n_cand = candidates.size();
    std::size_t j_up = std::lower_bound(candidates.begin(), candidates.end(), one) -
                       candidates.begin();  // first candidate >= 1
    Rational hi, lo;
    {
        std::size_t j = j_up;
        if (j < n_cand && candidates[j] == one) {
            hi = one;
        } else {
            if (j == n_cand) throw std::runtime_error("semipositivity interval is unbounded above");
            hi = candidates[j];  // 1 sits inside a feasible gap reaching this root
            if (!feasible(hi)) throw std::logic_error("infeasible endpoint above a feasible gap");
        }
        while (true) {
            Rational probe = (j + 1 < n_cand) ? Rational((candidates[j] + candidates[j + 1]) / 2)
                                              : Rational(candidates[j] + 1);
            if (!feasible(probe)) break;
            if (j + 1 == n_cand) throw std::runtime_error("semipositivity interval is unbounded above");
            ++j;
            hi = candidates[j];
            if (!feasible(hi)) throw std::logic_error("infeasible endpoint above a feasible gap");
        }
    }
    {
        std::size_t j;
        if (j_up < n_cand && candidates[j_up] == one) {
            j = j_up;
            lo = one;
        } else {
            if (j_up == 0) throw std::runtime_error("semipositivity interval is unbounded below");
            j = j_up - 1;
            lo = candidates[j];
            if (!feasible(lo)) throw std::logic_error("infeasible endpoint below a feasible gap");
        }
        while (true) {
            Rational probe = (j > 0) ? Rational((candidates[j - 1] + candidates[j]) / 2)
                                     : Rational(candidates[j] - 1);
            if (!feasible(probe)) break;
            if (j == 0) throw std::runtime_error("semipositivity interval is unbounded below");
            --j;
            lo = candidates[j];
            if (!feasible(lo)) throw std::logic_error("infeasible endpoint below a feasible gap");
        }
    }

    out.lo = lo;
    out.hi = hi;
    RatMat v_hi = build_v(rule, decomp, RatVec{Rational(1), hi});
    RatMat v_lo = build_v(rule, decomp, RatVec{Rational(1), lo});
    out.rays.push_back(ExtremeRay{"v1", RatVec{Rational(1), hi}, flatten(v_hi)});
    out.rays.push_back(ExtremeRay{"v2", RatVec{Rational(1), lo}, flatten(v_lo)});
    return out;
}

Rational ray_fourier_coeff(const ExtremeRay& ray, PairCorrelations& corr, std::int64_t k) {
    return dot(ray.vec, corr.sigma_hat(k));
}

Rational autocorrelation(PairCorrelations& corr, const WeightMap& weights, std::int64_t k) {
    const int d = corr.rule().alphabet().size();
    if (static_cast<int>(weights.weights.size()) != d)
        throw std::invalid_argument("weight map does not cover the alphabet");
    const RatVec& s = corr.sigma_hat(k);
    Rational acc = 0;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const Rational& entry = s[static_cast<std::size_t>(a * d + b)];
            if (entry != 0) acc += Rational(weights.at(a) * weights.at(b)) * entry;
        }
    return acc;
}

Rational autocorrelation(const SubstitutionRule& rule, const WeightMap& weights, std::int64_t k) {
    PairCorrelations corr(rule);
    return autocorrelation(corr, weights, k);
}

PeriodicityCertificate find_periodicity(PairCorrelations& corr, std::int64_t max_period,
                                        std::int64_t window) {
    for (std::int64_t p = 1; p <= max_period; ++p) {
        bool ok = window - p >= p;  // demand at least two full period blocks
        for (std::int64_t k = 1; ok && k + p <= window; ++k)
            ok = corr.sigma_hat(k) == corr.sigma_hat(k + p);
        if (ok) return {true, p, window};
    }
    return {false, 0, window};
}

ValueClosure sigma_hat_value_closure(PairCorrelations& corr, std::size_t max_states) {
    const int len = corr.rule().length();
    using Triple = std::array<RatVec, 3>;

    auto vec_key = [](const RatVec& v) {
        std::string s;
        for (const auto& r : v) {
            s += rat_string(r);
            s += ',';
        }
        return s;
    };
    auto triple_key = [&](const Triple& t) { return vec_key(t[0]) + "|" + vec_key(t[1]) + "|" + vec_key(t[2]); };

    // Child distances L*c .. L*c+L-1 need S at L*c .. L*c+L+1, all of which
    // are transfer images of the triple (S(c), S(c+1), S(c+2)). The engine
    // does not expose its transfer matrices, so build them again here.
    struct LocalTransfer {
        RatMat no_carry;
        RatMat carry;
    };
    const SubstitutionRule& rule = corr.rule();
    const int d = rule.alphabet().size();
    const int dd = d * d;
    std::vector<LocalTransfer> transfers(static_cast<std::size_t>(len),
                                         {RatMat(static_cast<std::size_t>(dd), static_cast<std::size_t>(dd)),
                                          RatMat(static_cast<std::size_t>(dd), static_cast<std::size_t>(dd))});
    const Rational unit(1, len);
    for (int g = 0; g < d; ++g)
        for (int h = 0; h < d; ++h) {
            const std::size_t src = static_cast<std::size_t>(g * d + h);
            for (int r = 0; r < len; ++r)
                for (int i = 0; i < len; ++i) {
                    const int j = i + r;
                    const int a = rule.image(g)[static_cast<std::size_t>(i)];
                    const int b = rule.image(h)[static_cast<std::size_t>(j % len)];
                    RatMat& dst = j < len ? transfers[static_cast<std::size_t>(r)].no_carry
                                          : transfers[static_cast<std::size_t>(r)].carry;
                    dst.at(static_cast<std::size_t>(a * d + b), src) += unit;
                }
        }
    auto apply_transfer = [&](int r, const RatVec& x, const RatVec& y) {
        RatVec out = matvec(transfers[static_cast<std::size_t>(r)].no_carry, x);
        if (r != 0) {
            RatVec cy = matvec(transfers[static_cast<std::size_t>(r)].carry, y);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += cy[i];
        }
        return out;
    };

    ValueClosure result;
    std::set<std::string> value_keys;
    std::unordered_set<std::string> seen;
    std::deque<std::pair<Triple, bool>> queue;  // flag: is the distance-0 root

    Triple root{corr.sigma_hat(0), corr.sigma_hat(1), corr.sigma_hat(2)};
    seen.insert(triple_key(root));
    queue.emplace_back(root, true);

    while (!queue.empty()) {
        auto [t, is_root] = queue.front();
        queue.pop_front();
        // S values at offsets 0..L+1 below this triple.
        std::vector<RatVec> vals(static_cast<std::size_t>(len) + 2);
        for (int j = 0; j < len; ++j) vals[static_cast<std::size_t>(j)] = apply_transfer(j, t[0], t[1]);
        vals[static_cast<std::size_t>(len)] = apply_transfer(0, t[1], t[2]);
        vals[static_cast<std::size_t>(len) + 1] = apply_transfer(1, t[1], t[2]);
        for (std::size_t j = 0; j < vals.size(); ++j) {
            if (is_root && j == 0) continue;  // that value sits at distance 0 only
            if (value_keys.insert(vec_key(vals[j])).second) result.values.push_back(vals[j]);
        }
        for (int r = 0; r < len; ++r) {
            Triple child{vals[static_cast<std::size_t>(r)], vals[static_cast<std::size_t>(r) + 1],
                         vals[static_cast<std::size_t>(r) + 2]};
            if (seen.size() >= max_states) {  // closure too large; not certified
                result.states = seen.size();
                return result;
            }
            if (seen.insert(triple_key(child)).second) queue.emplace_back(child, false);
        }
    }
    result.closed = true;
    result.states = seen.size();
    return result;
}

const char* to_string(RayVerdict v) {
    switch (v) {
        case RayVerdict::PurePointDeltaComb: return "pure-point delta comb";
        case RayVerdict::AbsolutelyContinuous: return "absolutely continuous";
        case RayVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(DiffractionVerdict v) {
    switch (v) {
        case DiffractionVerdict::PurelyAbsolutelyContinuous: return "purely absolutely continuous";
        case DiffractionVerdict::PurePoint: return "pure point";
        case DiffractionVerdict::MixedPurePointAndAC: return "mixed pure point + absolutely continuous";
        case DiffractionVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

SpectralReport classify_spectrum(const SubstitutionRule& rule, std::int64_t horizon) {
    if (horizon < 1) throw std::invalid_argument("classification horizon must be >= 1");
    if (!is_primitive(rule).primitive)
        throw std::invalid_argument("classify_spectrum requires a primitive rule");
    if (!is_aperiodic_pansiot(rule).aperiodic)
        throw std::invalid_argument("classify_spectrum requires a Pansiot-aperiodic rule");

    SpectralReport rep;
    const auto& alpha = rule.alphabet();
    rep.rule.length = rule.length();
    for (int a = 0; a < alpha.size(); ++a) {
        rep.rule.letters.push_back(alpha.symbol(a));
        rep.rule.images.push_back(rule.word_string(rule.image(a)));
    }
    rep.horizon = horizon;

    PairCorrelations corr(rule);
    rep.perron = corr.perron();
    for (int p = 0; p < corr.pair_count(); ++p) rep.pair_names.push_back(corr.pair_name(p));
    rep.decomposition = ergodic_decomposition(rule);

    for (std::int64_t k = 0; k <= horizon; ++k)
        rep.sigma_hat_table.push_back(CorrVector{k, corr.sigma_hat(k)});

    const std::int64_t max_period = std::max<std::int64_t>(16, 2 * rule.length());
    const std::int64_t window = std::max<std::int64_t>({horizon, 4 * max_period, 64});
    rep.periodicity = find_periodicity(corr, max_period, window);

    ValueClosure closure = sigma_hat_value_closure(corr);
    rep.closure_finite = closure.closed;
    rep.closure_value_count = closure.values.size();

    auto semi = semipositivity_interval(rule, rep.decomposition);
    rep.semipos_lo = semi.lo;
    rep.semipos_hi = semi.hi;

    for (const auto& ray : semi.rays) {
        RayReport rr;
        rr.ray = ray;
        rr.c0 = dot(ray.vec, corr.sigma_hat(0));
        bool all_zero = true, all_const = true;
        for (std::int64_t k = 1; k <= horizon; ++k) {
            Rational c = dot(ray.vec, corr.sigma_hat(k));
            rr.coeffs.push_back(c);
            all_zero = all_zero && c == 0;
            all_const = all_const && c == rr.c0;
        }
        bool closure_zero = closure.closed, closure_const = closure.closed;
        if (closure.closed)
            for (const auto& val : closure.values) {
                Rational c = dot(ray.vec, val);
                closure_zero = closure_zero && c == 0;
                closure_const = closure_const && c == rr.c0;
            }
        if (rep.periodicity.certified && all_zero) {
            rr.verdict = RayVerdict::AbsolutelyContinuous;
            rr.holds_for_all_k = true;
        } else if (all_const) {
            rr.verdict = RayVerdict::PurePointDeltaComb;
            rr.holds_for_all_k = closure.closed && closure_const;
        } else {
            rr.verdict = RayVerdict::Inconclusive;
        }
        // The closure, when finite, settles the claims for every k >= 1.
        if (closure.closed && rr.verdict == RayVerdict::AbsolutelyContinuous && !closure_zero)
            rr.verdict = RayVerdict::Inconclusive;
        rep.rays.push_back(std::move(rr));
    }

    rep.has_balanced = alpha.size() == 4;
    if (rep.has_balanced) {
        const WeightMap weights = WeightMap::standard();
        rep.mean_weight = 0;
        for (int a = 0; a < 4; ++a)
            rep.mean_weight += Rational(weights.at(a)) * corr.letter_frequencies()[static_cast<std::size_t>(a)];
        bool eta_zero = true;
        Rational eta1;
        bool eta_const = true;
        for (std::int64_t k = 0; k <= horizon; ++k) {
            Rational e = autocorrelation(corr, weights, k);
            if (k >= 1) {
                eta_zero = eta_zero && e == 0;
                if (k == 1) eta1 = e;
                eta_const = eta_const && e == eta1;
            }
            rep.eta.push_back(std::move(e));
        }
        const Rational& eta0 = rep.eta[0];
        if (rep.periodicity.certified && eta_zero)
            rep.balanced_verdict = DiffractionVerdict::PurelyAbsolutelyContinuous;
        else if (rep.periodicity.certified && eta_const && eta1 == eta0)
            rep.balanced_verdict = DiffractionVerdict::PurePoint;
        else if (rep.periodicity.certified && eta_const && eta1 > 0 && eta1 < eta0)
            rep.balanced_verdict = DiffractionVerdict::MixedPurePointAndAC;
        else
            rep.balanced_verdict = DiffractionVerdict::Inconclusive;
    }
    return rep;
}

}  // namespace difflab
