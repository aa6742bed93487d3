#ifndef POLYAUT_TAMEWORD_HPP
#define POLYAUT_TAMEWORD_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <polyaut/endo.hpp>
#include <polyaut/linalg.hpp>
#include <polyaut/poly.hpp>

namespace polyaut
{

class SynthesisError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Linear map or elementary map, possibly inverted.
struct Generator {
    enum class Kind { linear, elementary };

    Kind kind = Kind::linear;
    Matrix matrix;           // linear: x_i -> sum_j matrix(i, j) x_j
    std::size_t target = 0;  // elementary: x_target -> x_target + addend
    Poly addend;
    bool inverted = false;

    /// Throws when the matrix is singular.
    static Generator linear(const Matrix &m, bool inverted = false);
    /// Throws when the addend involves the target.
    static Generator elementary(std::size_t target, const Poly &addend, bool inverted = false);

    Generator inverse() const;
    /// Matrix of the generator with the inversion applied.
    Matrix effective_matrix() const;
    /// Addend with the inversion applied (negated when inverted).
    Poly effective_addend() const;
    Endo to_endo(const Ring &ring) const;

    friend bool operator==(const Generator &a, const Generator &b);
};

/// Product g_1 o g_2 o ... o g_r of generators.
struct GenWord {
    Ring ring;
    std::vector<Generator> gens;

    GenWord() = default;
    explicit GenWord(const Ring &r) : ring(r) {}
    GenWord(const Ring &r, std::vector<Generator> g) : ring(r), gens(std::move(g)) {}

    std::size_t size() const { return gens.size(); }
    bool empty() const { return gens.empty(); }
    GenWord &append(const Generator &g);
    GenWord &append(const GenWord &w);

    /// Number of elementary letters.
    std::size_t elementary_count() const;

    friend bool operator==(const GenWord &a, const GenWord &b) { return a.ring == b.ring && a.gens == b.gens; }
};

GenWord operator+(GenWord a, const GenWord &b);

/// Exact expansion (never truncated).  Results are cached by word text.
Endo expand(const GenWord &w);
/// Expansion modulo I^cap.
Endo expand_jet(const GenWord &w, int cap);
/// Reversed word with flipped inversion flags.
GenWord invert_word(const GenWord &w);
/// Merges adjacent linear letters, drops identities, cancels g g^-1.
GenWord simplify(const GenWord &w);

/// [P] + w + [P^-1] for P: x_i -> x_{perm[i]}; it expands to
/// E(perm(i), Q(x_perm)) when w expands to E(i, Q).
GenWord relabel(const GenWord &w, const std::vector<std::size_t> &perm);
/// D o w o D^-1 for D: x_i -> d_i x_i.
GenWord conjugate_by_diagonal(const GenWord &w, const std::vector<Scalar> &d);
/// L o w o L^-1 for an arbitrary invertible matrix.
GenWord conjugate_by_linear(const GenWord &w, const Matrix &m);

void clear_expand_cache();

// ------------------------------------------------------------ synthesis
//
// Synthesized words use only linear letters and the fixed quadratic
// elementary x3 -> x3 + x1*x2 (possibly inverted).

/// The fixed elementary z -> z + x*y in the given ring (n >= 3).
Generator quadratic_generator(const Ring &ring);
/// True iff every elementary letter is the fixed quadratic one.
bool uses_only_fixed_generator(const GenWord &w);

/// z -> z + b*x^k (n >= 3, either flavor).
GenWord synth_power(const Ring &ring, const Scalar &b, unsigned k);
/// z -> z + b*y*x^k (commutative, n = 3, char != 2).
GenWord synth_edge(const Ring &ring, const Scalar &b, unsigned k);

/// Pairs (c_j, l_j) with sum c_j l_j^d = target for a form of degree d in
/// x, y, using l in {x, y, x + s*y : s = 1..d-1}.
std::vector<std::pair<Scalar, Poly>> express_in_power_basis(const Poly &target);

/// z -> z + P(x, y) (commutative, n = 3, char != 2).
GenWord synth_elementary(const Poly &p);
/// Reason synth_elementary would refuse P, or nullopt if it is supported.
std::optional<std::string> synth_elementary_obstruction(const Poly &p);

/// Number of maximal runs of one variable, e.g. H(x^2 y^3) = 2.
std::size_t height(const Monomial &m);

/// target -> target + c*M for a word M in x, y (noncommutative, n >= 4,
/// target is x3 or x4).  Recursion deeper than max_height throws.
GenWord synth_nc_elementary(const Ring &ring, const Monomial &m, const Scalar &c, std::size_t target,
                            std::size_t max_height = 8);

// ------------------------------------------------------ torus normalization

/// Exponent solution of beta_i * alpha_i / (alpha_{i+1} alpha_{i+2}) = 1,
/// i = 1..n-1 (indices mod n): alpha_i = prod_j beta_j^exponents[i][j].
struct TorusNormalization {
    std::vector<std::vector<mpq_class>> exponents;
    /// Basis of the homogeneous solutions (one vector of alpha-exponents each).
    std::vector<std::vector<mpq_class>> kernel;
    bool integral = false;
    /// The alphas in the betas' field, when every fractional exponent sits on
    /// a beta equal to 1.
    std::optional<std::vector<Scalar>> alphas;
};

TorusNormalization torus_normalize(const std::vector<Scalar> &betas);

} // namespace polyaut

#endif
