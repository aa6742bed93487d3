// Hand-rolled random generators for property checks.
#ifndef POLYAUT_GEN_HPP
#define POLYAUT_GEN_HPP

#include <random>
#include <string>
#include <vector>

#include <polyaut/endo.hpp>
#include <polyaut/poly.hpp>
#include <polyaut/tameword.hpp>

namespace gen
{

using Rng = std::mt19937_64;

inline long uniform(Rng &rng, long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// Small integer or small fraction (fractions only over Q).
inline polyaut::Scalar scalar(Rng &rng, const polyaut::FieldSpec &f, bool nonzero = false)
{
    while (true) {
        long num = uniform(rng, -5, 5);
        long den = f.is_rational() && uniform(rng, 0, 3) == 0 ? uniform(rng, 2, 4) : 1;
        polyaut::Scalar s(f, mpq_class(num, den));
        if (!nonzero || !s.is_zero()) {
            return s;
        }
    }
}

inline polyaut::Monomial monomial(Rng &rng, const polyaut::Ring &ring, std::size_t deg,
                                  std::size_t nvars_used = 0)
{
    const std::size_t n = nvars_used ? nvars_used : ring.nvars;
    std::string s;
    for (std::size_t i = 0; i < deg; ++i) {
        s += static_cast<char>(uniform(rng, 0, static_cast<long>(n) - 1));
    }
    return polyaut::Monomial::from_letters(s, ring.flavor);
}

/// Random polynomial with degrees in [min_deg, max_deg].
inline polyaut::Poly poly(Rng &rng, const polyaut::Ring &ring, int min_deg, int max_deg, int max_terms,
                          std::size_t nvars_used = 0)
{
    std::vector<polyaut::Poly::Term> terms;
    const int count = static_cast<int>(uniform(rng, 1, max_terms));
    for (int i = 0; i < count; ++i) {
        const auto d = static_cast<std::size_t>(uniform(rng, min_deg, max_deg));
        terms.emplace_back(monomial(rng, ring, d, nvars_used), scalar(rng, ring.field, true));
    }
    return polyaut::Poly::from_terms(ring, std::move(terms));
}

inline polyaut::Matrix invertible_matrix(Rng &rng, const polyaut::FieldSpec &f, std::size_t n)
{
    while (true) {
        polyaut::Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = polyaut::Scalar(f, uniform(rng, -2, 2));
            }
        }
        if (!m.determinant().is_zero()) {
            return m;
        }
    }
}

/// Elementary generator x_i -> x_i + P with P of degree in [min_deg, max_deg].
inline polyaut::Generator elementary(Rng &rng, const polyaut::Ring &ring, int min_deg, int max_deg,
                                     int max_terms = 3)
{
    const auto target = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(ring.nvars) - 1));
    std::vector<polyaut::Poly::Term> terms;
    const int count = static_cast<int>(uniform(rng, 1, max_terms));
    for (int i = 0; i < count || polyaut::Poly::from_terms(ring, terms).is_zero(); ++i) {
        std::string s;
        const auto d = uniform(rng, min_deg, max_deg);
        for (long k = 0; k < d; ++k) {
            long v = uniform(rng, 0, static_cast<long>(ring.nvars) - 2);
            if (v >= static_cast<long>(target)) {
                ++v;
            }
            s += static_cast<char>(v);
        }
        terms.emplace_back(polyaut::Monomial::from_letters(s, ring.flavor), scalar(rng, ring.field, true));
    }
    return polyaut::Generator::elementary(target, polyaut::Poly::from_terms(ring, std::move(terms)),
                                          uniform(rng, 0, 1) == 1);
}

/// Random word of linear and elementary letters; at most max_nonlinear
/// elementary letters have addends of degree above one.
inline polyaut::GenWord word(Rng &rng, const polyaut::Ring &ring, int max_len, int max_deg = 3,
                             int max_nonlinear = 1 << 20)
{
    polyaut::GenWord w(ring);
    const long len = uniform(rng, 0, max_len);
    int nonlinear = 0;
    for (long i = 0; i < len; ++i) {
        if (uniform(rng, 0, 2) == 0) {
            w.append(polyaut::Generator::linear(invertible_matrix(rng, ring.field, ring.nvars),
                                                uniform(rng, 0, 1) == 1));
        } else if (nonlinear < max_nonlinear) {
            auto g = elementary(rng, ring, 1, max_deg);
            nonlinear += g.addend.degree() > 1;
            w.append(g);
        } else {
            w.append(elementary(rng, ring, 1, 1));
        }
    }
    return w;
}

/// Tame map in H_level: product of elementaries whose addends start in
/// degree >= level, conjugated by a random linear map. A finite cap returns
/// the jet below that degree.
inline polyaut::Endo tame_in_h(Rng &rng, const polyaut::Ring &ring, int level, int letters = 2,
                               int cap = polyaut::kNoCap)
{
    polyaut::GenWord w(ring);
    for (int i = 0; i < letters; ++i) {
        w.append(elementary(rng, ring, level, level + 1, 2));
    }
    const auto m = invertible_matrix(rng, ring.field, ring.nvars);
    const auto conj = polyaut::conjugate_by_linear(w, m);
    return cap == polyaut::kNoCap ? polyaut::expand(conj) : polyaut::expand_jet(conj, cap);
}

} // namespace gen

#endif
