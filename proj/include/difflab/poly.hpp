// Univariate polynomials over exact rationals, plus the root machinery the
// semipositivity analysis needs: Sturm sequences for real-root counting and
// exact rational-root extraction. Degrees here never exceed the alphabet
// size (4), so none of this needs to be clever.
#pragma once

#include "difflab/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace difflab {

// Coefficients ascending: p[i] is the coefficient of x^i. Always trimmed.
struct Poly {
    RatVec c;

    Poly() = default;
    explicit Poly(RatVec coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(Rational v) { return Poly(RatVec{std::move(v)}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero poly
    const Rational& leading() const { return c.back(); }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    bool operator==(const Poly& o) const { return c == o.c; }
};

inline Poly operator+(const Poly& a, const Poly& b) {
    RatVec r(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.c.size()) r[i] += a.c[i];
        if (i < b.c.size()) r[i] += b.c[i];
    }
    return Poly(std::move(r));
}

inline Poly operator-(const Poly& a, const Poly& b) {
    RatVec r(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.c.size()) r[i] += a.c[i];
        if (i < b.c.size()) r[i] -= b.c[i];
    }
    return Poly(std::move(r));
}

inline Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    RatVec r(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return Poly(std::move(r));
}

inline Poly operator*(const Rational& s, const Poly& p) {
    RatVec r = p.c;
    for (auto& x : r) x *= s;
    return Poly(std::move(r));
}

inline Poly derivative(const Poly& p) {
    if (p.degree() < 1) return Poly{};
    RatVec r(p.c.size() - 1);
    for (std::size_t i = 1; i < p.c.size(); ++i) r[i - 1] = Rational(i) * p.c[i];
    return Poly(std::move(r));
}

// Polynomial remainder of a by b (b nonzero).
inline Poly poly_rem(Poly a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("poly_rem: division by zero polynomial");
    while (!a.is_zero() && a.degree() >= b.degree()) {
        Rational f = a.leading() / b.leading();
        int shift = a.degree() - b.degree();
        for (int i = 0; i <= b.degree(); ++i)
            a.c[static_cast<std::size_t>(i + shift)] -= f * b.c[static_cast<std::size_t>(i)];
        a.trim();
    }
    return a;
}

// Exact quotient for known-exact division (used to split off linear factors).
inline Poly poly_div_exact(Poly a, const Poly& b) {
    RatVec q(a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0);
    while (!a.is_zero() && a.degree() >= b.degree()) {
        Rational f = a.leading() / b.leading();
        int shift = a.degree() - b.degree();
        q[static_cast<std::size_t>(shift)] = f;
        for (int i = 0; i <= b.degree(); ++i)
            a.c[static_cast<std::size_t>(i + shift)] -= f * b.c[static_cast<std::size_t>(i)];
        a.trim();
    }
    if (!a.is_zero()) throw std::logic_error("poly_div_exact: nonzero remainder");
    return Poly(std::move(q));
}

namespace detail {

inline int sgn(const Rational& r) { return r == 0 ? 0 : (r < 0 ? -1 : 1); }

inline int sign_variations(const std::vector<int>& signs) {
    int var = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

}  // namespace detail

// Sturm chain of p (p nonzero).
inline std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain{p, derivative(p)};
    while (!chain.back().is_zero() && chain.back().degree() >= 0) {
        Poly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(Rational(-1) * r);
    }
    return chain;
}

// Number of distinct real roots of p in the half-open interval (a, b], a < b.
inline int count_real_roots(const std::vector<Poly>& chain, const Rational& a,
                            const Rational& b) {
    std::vector<int> sa, sb;
    for (const auto& q : chain) {
        sa.push_back(detail::sgn(q.eval(a)));
        sb.push_back(detail::sgn(q.eval(b)));
    }
    return detail::sign_variations(sa) - detail::sign_variations(sb);
}

// Cauchy bound: all real roots of p lie in [-B, B].
inline Rational root_bound(const Poly& p) {
    if (p.degree() < 1) return 1;
    Rational maxr = 0;
    for (int i = 0; i < p.degree(); ++i) {
        Rational r = abs(p.c[static_cast<std::size_t>(i)] / p.leading());
        if (r > maxr) maxr = r;
    }
    return maxr + 1;
}

namespace detail {

inline std::vector<BigInt> divisors(BigInt n) {
    n = abs(n);
    std::vector<BigInt> ds;
    if (n == 0) return ds;
    for (BigInt d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            ds.push_back(d);
            if (d * d != n) ds.push_back(n / d);
        }
    }
    return ds;
}

}  // namespace detail

// All rational roots of p with multiplicities, ascending. Also returns the
// (rational-root-free) cofactor via out-param. Throws if the integerized
// coefficients are too large for divisor enumeration; the matrices this is
// used on keep them tiny.
inline std::vector<std::pair<Rational, int>> rational_roots(const Poly& p, Poly* cofactor = nullptr) {
    std::vector<std::pair<Rational, int>> roots;
    if (p.degree() < 1) {
        if (cofactor) *cofactor = p;
        return roots;
    }
    Poly work = p;
    // Factor out x^m first.
    int zero_mult = 0;
    while (!work.is_zero() && work.c[0] == 0) {
        work.c.erase(work.c.begin());
        ++zero_mult;
    }
    if (zero_mult > 0) roots.emplace_back(Rational(0), zero_mult);

    while (work.degree() >= 1) {
        // Integerize: candidates num/den with num | a0, den | an.
        BigInt lcm_den = 1;
        for (const auto& coef : work.c) lcm_den = lcm(lcm_den, denominator(coef));
        std::vector<BigInt> ic;
        for (const auto& coef : work.c) ic.push_back(numerator(Rational(coef * lcm_den)));
        BigInt g = 0;
        for (const auto& x : ic) g = gcd(g, x);
        if (g > 1)
            for (auto& x : ic) x /= g;
        const BigInt& a0 = ic.front();
        const BigInt& an = ic.back();
        if (abs(a0) > BigInt("1000000000000") || abs(an) > BigInt("1000000000000"))
            throw std::runtime_error("rational_roots: coefficients too large for divisor enumeration");
        bool found = false;
        for (const auto& num : detail::divisors(a0)) {
            for (const auto& den : detail::divisors(an)) {
                for (int s : {1, -1}) {
                    Rational cand(s * num, den);
                    if (work.eval(cand) == 0) {
                        int mult = 0;
                        Poly lin(RatVec{-cand, 1});
                        while (work.degree() >= 1 && work.eval(cand) == 0) {
                            work = poly_div_exact(work, lin);
                            ++mult;
                        }
                        roots.emplace_back(cand, mult);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    std::sort(roots.begin(), roots.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    if (cofactor) *cofactor = work;
    return roots;
}

// Determinant of an n x n matrix with polynomial entries (row-major), by
// cofactor expansion; n <= 4 in all uses.
inline Poly poly_det(const std::vector<Poly>& m, std::size_t n) {
    if (m.size() != n * n) throw std::invalid_argument("poly_det: bad size");
    if (n == 0) return Poly::constant(1);
    if (n == 1) return m[0];
    Poly det;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[j].is_zero()) continue;
        std::vector<Poly> minor;
        minor.reserve((n - 1) * (n - 1));
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) minor.push_back(m[r * n + c]);
        Poly term = m[j] * poly_det(minor, n - 1);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

}  // namespace difflab
