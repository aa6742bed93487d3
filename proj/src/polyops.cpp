#include <polyaut/polyops.hpp>

#include <algorithm>

namespace polyaut
{

namespace
{

void require_nc(const Poly &f, const char *what)
{
    if (f.ring().commutative()) {
        throw PolyError(std::string(what) + " needs the noncommutative flavor");
    }
}

} // namespace

Poly commutator(const Poly &a, const Poly &b)
{
    require_nc(a, "commutator");
    return a * b - b * a;
}

Poly star(const Poly &f, const Poly &g, const StarProduct &s)
{
    require_nc(f, "star product");
    return (f * g).scaled(s.a) + (g * f).scaled(s.b);
}

Poly associator(const Poly &f, const Poly &g, const Poly &h, const StarProduct &s)
{
    return star(star(f, g, s), h, s) - star(f, star(g, h, s), s);
}

Poly nc_derivation(const std::vector<Poly> &images, const Poly &f)
{
    const Ring &ring = f.ring();
    if (images.size() != ring.nvars) {
        throw PolyError("derivation needs one image per variable");
    }
    for (const auto &img : images) {
        if (img.ring() != ring) {
            throw PolyError("derivation image in a different ring");
        }
    }
    Poly res(ring);
    for (const auto &[m, c] : f.terms()) {
        const std::string &w = m.letters();
        for (std::size_t p = 0; p < w.size(); ++p) {
            const auto &d = images[m.letter(p)];
            if (d.is_zero()) {
                continue;
            }
            auto left = Poly::term(ring, Monomial::from_letters(w.substr(0, p), ring.flavor), c);
            auto right = Poly::term(ring, Monomial::from_letters(w.substr(p + 1), ring.flavor), Scalar::one(ring.field));
            res += left * d * right;
        }
    }
    return res;
}

std::pair<Poly, Poly> split_by_support(const Poly &f, const std::set<std::size_t> &vars)
{
    auto touches = [&vars](const Poly::Term &t) {
        return std::any_of(vars.begin(), vars.end(), [&t](std::size_t v) { return t.first.contains(v); });
    };
    return {f.filtered(touches), f.filtered([&](const Poly::Term &t) { return !touches(t); })};
}

std::pair<Monomial, Scalar> lex_min_term(const Poly &f, const std::vector<std::size_t> &precedence)
{
    if (f.is_zero()) {
        throw PolyError("lex_min_term of the zero polynomial");
    }
    std::vector<std::size_t> rank(f.ring().nvars, f.ring().nvars);
    for (std::size_t i = 0; i < precedence.size(); ++i) {
        if (precedence[i] >= rank.size()) {
            throw PolyError("precedence names an unknown variable");
        }
        rank[precedence[i]] = i;
    }
    auto key = [&](const Monomial &m) {
        std::vector<std::size_t> k;
        for (std::size_t p = 0; p < m.degree(); ++p) {
            k.push_back(rank[m.letter(p)]);
        }
        if (f.ring().commutative()) {
            std::sort(k.begin(), k.end());
        }
        return k;
    };
    const auto top = f.homogeneous(f.degree());
    const Poly::Term *best = nullptr;
    std::vector<std::size_t> best_key;
    for (const auto &t : top.terms()) {
        auto k = key(t.first);
        if (best == nullptr || k < best_key) {
            best = &t;
            best_key = std::move(k);
        }
    }
    return {best->first, best->second};
}

Poly partial_derivative(const Poly &f, std::size_t var)
{
    if (!f.ring().commutative()) {
        throw PolyError("partial derivatives need the commutative flavor");
    }
    std::vector<Poly::Term> out;
    for (const auto &[m, c] : f.terms()) {
        const auto e = m.count(var);
        if (e == 0) {
            continue;
        }
        std::string s = m.letters();
        s.erase(s.find(static_cast<char>(var)), 1);
        out.emplace_back(Monomial(std::move(s)), c * Scalar(f.ring().field, static_cast<long>(e)));
    }
    return Poly::from_terms(f.ring(), std::move(out));
}

std::vector<Poly> linear_images(const Ring &ring, const std::vector<std::vector<Scalar>> &rows)
{
    std::vector<Poly> res;
    for (const auto &row : rows) {
        std::vector<Poly::Term> t;
        for (std::size_t j = 0; j < row.size(); ++j) {
            t.emplace_back(Monomial::variable(j), row[j]);
        }
        res.push_back(Poly::from_terms(ring, std::move(t)));
    }
    return res;
}

} // namespace polyaut
