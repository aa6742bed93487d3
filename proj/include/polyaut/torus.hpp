#ifndef POLYAUT_TORUS_HPP
#define POLYAUT_TORUS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <polyaut/endo.hpp>

namespace polyaut
{

class TorusError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// x_i -> weights[i] * x_i.
template <class C>
BasicEndo<C> diagonal_action(const Ring &ring, const std::vector<C> &weights)
{
    if (weights.size() != ring.nvars) {
        throw TorusError("diagonal action needs " + std::to_string(ring.nvars) + " weights");
    }
    std::vector<BasicPoly<C>> imgs;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i].is_zero()) {
            throw TorusError("weight " + std::to_string(i + 1) + " is zero");
        }
        imgs.push_back(BasicPoly<C>::term(ring, Monomial::variable(i), weights[i]));
    }
    return BasicEndo<C>(ring, std::move(imgs));
}

/// Coefficient transform a_{iJ} -> alpha_i * a_{iJ} * beta^J.  Equals
/// compose(compose(B, f), A) for the diagonal maps A, B with these weights.
template <class C>
BasicEndo<C> torus_conjugate(const std::vector<C> &alpha, const BasicEndo<C> &f, const std::vector<C> &beta)
{
    const Ring &ring = f.ring();
    if (alpha.size() != ring.nvars || beta.size() != ring.nvars) {
        throw TorusError("torus weights do not match the number of variables");
    }
    for (std::size_t i = 0; i < ring.nvars; ++i) {
        if (alpha[i].is_zero() || beta[i].is_zero()) {
            throw TorusError("torus weight " + std::to_string(i + 1) + " is zero");
        }
    }
    std::vector<BasicPoly<C>> imgs;
    for (std::size_t i = 0; i < ring.nvars; ++i) {
        std::vector<typename BasicPoly<C>::Term> terms;
        for (const auto &[m, c] : f.image(i).terms()) {
            C k = alpha[i] * c;
            for (std::size_t pos = 0; pos < m.degree(); ++pos) {
                k *= beta[m.letter(pos)];
            }
            terms.emplace_back(m, std::move(k));
        }
        imgs.push_back(BasicPoly<C>::from_terms(ring, std::move(terms)));
    }
    return BasicEndo<C>(ring, std::move(imgs), f.affine());
}

/// Same endomorphism over Laurent coefficients.
LaurentEndo lift(const Endo &f);
/// Value at t = 0; throws when some coefficient has a pole there.
Endo limit_at_zero(const LaurentEndo &f);

/// t^w_i as Laurent scalars.
std::vector<LaurentScalar> weight_vector(const FieldSpec &field, const std::vector<int> &w);

/// D(t) o f o D(t)^-1 with D(t) = diag(t^w_i), by direct composition.  The
/// coefficient of x^J in image i picks up t^(w.J - w_i).
LaurentEndo parameterized_conjugate(const std::vector<int> &w, const Endo &f);

struct SingularityReport {
    int valuation = 0;
    std::size_t image = 0;
    Monomial monomial;
    LaurentEndo conjugated;
};

/// Minimum t-valuation over all coefficients of D(t) o f o D(t)^-1; negative
/// means the curve has a pole at t = 0.  The witness is a term attaining it.
SingularityReport singularity(const std::vector<int> &w, const Endo &f);
int singularity_valuation(const std::vector<int> &w, const Endo &f);

// ------------------------------------------------------------ centralizers

enum class TorusFamily {
    scalar,    // x_i -> l x_i
    t2,        // x1 -> l d x1, x2 -> l x2, x3 -> d x3, rest fixed
    squared,   // x1 -> l^2 x1, x2 -> l x2, rest fixed
};

TorusFamily parse_family(const std::string &name);
std::string family_name(TorusFamily family);

/// Integer weights of the one-parameter subgroups generating the action.
std::vector<std::vector<int>> family_weights(TorusFamily family, std::size_t nvars);

struct CentralizerReport {
    bool commutes = true;
    std::size_t subgroup = 0;  // index into family_weights
    std::size_t image = 0;
    Monomial monomial;
    int shift = 0;  // w.J - w_i of the offending term
};

/// Whether f commutes with the whole action; otherwise a term of f that
/// the action rescales.
CentralizerReport centralizer_check(TorusFamily family, const Endo &f);

/// Member of the family's asserted centralizer: the family's elementary
/// x1 -> x1 + beta * (x2 x3 | x2^2) composed with x_i -> eps_i x_i for the
/// variables the elementary does not use.
Endo centralizer_member(TorusFamily family, const Ring &ring, const Scalar &beta, const std::vector<Scalar> &eps);

} // namespace polyaut

#endif
