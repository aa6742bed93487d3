#ifndef POLYAUT_POLYOPS_HPP
#define POLYAUT_POLYOPS_HPP

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include <polyaut/poly.hpp>

namespace polyaut
{

/// x*y = a*xy + b*yx on the free algebra.
struct StarProduct {
    Scalar a;
    Scalar b;
};

/// ab - ba.  Noncommutative only.
Poly commutator(const Poly &a, const Poly &b);

/// a*f*g + b*g*f.  Noncommutative only.
Poly star(const Poly &f, const Poly &g, const StarProduct &s);

/// (f*g)*h - f*(g*h).
Poly associator(const Poly &f, const Poly &g, const Poly &h, const StarProduct &s);

/// Derivation with D(x_i) = images[i], extended by the Leibniz rule
/// (order-preserving, so it is valid in both flavors).
Poly nc_derivation(const std::vector<Poly> &images, const Poly &f);

/// (terms containing some variable of vars, remaining terms).
std::pair<Poly, Poly> split_by_support(const Poly &f, const std::set<std::size_t> &vars);

/// Minimal monomial of the top homogeneous component, comparing letters by
/// their position in `precedence` (earlier = smaller).  Throws on zero.
std::pair<Monomial, Scalar> lex_min_term(const Poly &f, const std::vector<std::size_t> &precedence);

/// d f / d x_var.  Commutative only.
Poly partial_derivative(const Poly &f, std::size_t var);

/// Substitution of linear forms given by a matrix row convention:
/// x_i -> sum_j m[i][j] x_j.
std::vector<Poly> linear_images(const Ring &ring, const std::vector<std::vector<Scalar>> &rows);

} // namespace polyaut

#endif
