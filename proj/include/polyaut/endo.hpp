#ifndef POLYAUT_ENDO_HPP
#define POLYAUT_ENDO_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <polyaut/linalg.hpp>
#include <polyaut/poly.hpp>

namespace polyaut
{

class EndoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Endomorphism given by the images of the variables.
template <class C>
class BasicEndo
{
public:
    using PolyT = BasicPoly<C>;

    BasicEndo() = default;
    /// Rejects images with constant terms unless `affine` is set.
    BasicEndo(const Ring &ring, std::vector<PolyT> images, bool affine = false)
        : ring_(ring), images_(std::move(images)), affine_(affine)
    {
        if (images_.size() != ring_.nvars) {
            throw EndoError("endomorphism needs " + std::to_string(ring_.nvars) + " images, got " +
                            std::to_string(images_.size()));
        }
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (images_[i].ring() != ring_) {
                throw EndoError("image of x" + std::to_string(i + 1) + " lives in a different ring");
            }
            if (!affine_ && !images_[i].constant_term().is_zero()) {
                throw EndoError("image of x" + std::to_string(i + 1) +
                                " has a constant term (use an affine endomorphism)");
            }
        }
    }

    static BasicEndo identity(const Ring &ring)
    {
        std::vector<PolyT> imgs;
        for (std::size_t i = 0; i < ring.nvars; ++i) {
            imgs.push_back(PolyT::variable(ring, i));
        }
        return BasicEndo(ring, std::move(imgs));
    }

    const Ring &ring() const { return ring_; }
    const std::vector<PolyT> &images() const { return images_; }
    const PolyT &image(std::size_t i) const { return images_.at(i); }
    std::size_t size() const { return images_.size(); }
    bool affine() const { return affine_; }

    bool is_identity() const
    {
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (images_[i] != PolyT::variable(ring_, i)) {
                return false;
            }
        }
        return true;
    }

    int degree() const
    {
        int d = -1;
        for (const auto &p : images_) {
            d = std::max(d, p.degree());
        }
        return d;
    }

    BasicEndo truncated(int m) const
    {
        std::vector<PolyT> imgs;
        for (const auto &p : images_) {
            imgs.push_back(p.truncated(m));
        }
        return BasicEndo(ring_, std::move(imgs), affine_);
    }

    BasicEndo with_image(std::size_t i, PolyT p) const
    {
        auto imgs = images_;
        imgs.at(i) = std::move(p);
        return BasicEndo(ring_, std::move(imgs), affine_);
    }

    friend bool operator==(const BasicEndo &a, const BasicEndo &b)
    {
        return a.ring_ == b.ring_ && a.images_ == b.images_;
    }
    friend bool operator!=(const BasicEndo &a, const BasicEndo &b) { return !(a == b); }

    std::string to_string() const
    {
        std::string s;
        for (std::size_t i = 0; i < images_.size(); ++i) {
            s += (i ? "; " : "") + std::string("x") + std::to_string(i + 1) + " -> " + images_[i].to_string();
        }
        return s;
    }

private:
    Ring ring_;
    std::vector<PolyT> images_;
    bool affine_ = false;
};

/// (f o g)(x_i) = g_i(f_1, ..., f_n): apply g's formula, then replace its
/// variables by f's images.  Monomials of degree >= cap are dropped.
template <class C>
BasicEndo<C> compose(const BasicEndo<C> &f, const BasicEndo<C> &g, int cap = kNoCap)
{
    if (f.ring() != g.ring()) {
        throw EndoError("composition of endomorphisms over different rings");
    }
    std::vector<BasicPoly<C>> imgs;
    imgs.reserve(g.size());
    for (const auto &gi : g.images()) {
        imgs.push_back(substitute(gi, f.images(), cap));
    }
    return BasicEndo<C>(f.ring(), std::move(imgs), f.affine() || g.affine());
}

using Endo = BasicEndo<Scalar>;
using LaurentEndo = BasicEndo<LaurentScalar>;

// ------------------------------------------------------------ constructors

/// x_i -> sum_j a(i, j) x_j.  Composition reads L_A o L_B = L_{BA}.
Endo linear_endo(const Ring &ring, const Matrix &a);
/// x_i -> d_i x_i.
Endo diagonal_endo(const Ring &ring, const std::vector<Scalar> &d);
/// x_i -> x_{perm[i]}.
Endo permutation_endo(const Ring &ring, const std::vector<std::size_t> &perm);
/// x_target -> x_target + addend; the addend must not involve x_target.
Endo elementary_endo(const Ring &ring, std::size_t target, const Poly &addend);

// --------------------------------------------------------------- analysis

/// Coefficient matrix of the degree-1 part (same convention as linear_endo).
Matrix linear_part(const Endo &f);

struct FiltrationWitness {
    std::size_t image;
    Monomial monomial;
    Scalar coefficient; // coefficient of the deviation f_i - x_i
    int degree;
};

struct FiltrationReport {
    /// Largest n <= cap with f(x_i) = x_i mod I^n; 0 when the linear part
    /// is not the identity (or constant terms are present).
    int level = 0;
    /// Linear part is lambda * id.
    bool scalar_flag = false;
    std::optional<Scalar> scalar;
    /// Largest n <= cap with f(x_i) = lambda x_i mod I^n (0 if not scalar).
    int scalar_level = 0;
    std::optional<FiltrationWitness> witness;
    int cap = 0;
};

FiltrationReport filtration(const Endo &f, int cap);

/// g with f o g = g o f = id mod I^m.  Throws on a singular linear part.
Endo jet_invert(const Endo &f, int m);

/// Polynomial inverse, found by jet inversion to growing degree and
/// verified by exact composition both ways.  The default degree bound is
/// deg(f)^(n-1) (the commutative bound, also used for free algebras).
Endo exact_inverse(const Endo &f, std::optional<int> degree_bound = std::nullopt);

/// f^-1 o g^-1 o f o g, exact.
Endo group_commutator(const Endo &f, const Endo &g);
/// Same modulo I^cap.
Endo group_commutator_jet(const Endo &f, const Endo &g, int cap);

/// Product of point maps written left to right, the rightmost acting
/// first: point_product({a, b, c}) = compose(compose(c, b), a).
Endo point_product(const std::vector<Endo> &maps, int cap = kNoCap);

/// a^-1 o m o a, exact.
Endo conjugate(const Endo &a, const Endo &m);
Endo conjugate_jet(const Endo &a, const Endo &m, int cap);

/// Target index if f is elementary (exactly one image moved, by a
/// polynomial free of that variable); nullopt otherwise.  The identity
/// is not elementary.
std::optional<std::size_t> elementary_target(const Endo &f);

/// One elementary factor per monomial of the addend; empty for identity.
std::vector<Endo> elementary_split(const Endo &f);

/// det(d f_i / d x_j) truncated below degree m.  Commutative only.
Poly jacobian_det(const Endo &f, int m = kNoCap);

} // namespace polyaut

#endif
