#include <polyaut/endo.hpp>

#include <polyaut/polyops.hpp>

namespace polyaut
{

Endo linear_endo(const Ring &ring, const Matrix &a)
{
    if (a.rows() != ring.nvars || a.cols() != ring.nvars || a.field() != ring.field) {
        throw EndoError("matrix does not fit the ring");
    }
    std::vector<Poly> imgs;
    for (std::size_t i = 0; i < ring.nvars; ++i) {
        std::vector<Poly::Term> t;
        for (std::size_t j = 0; j < ring.nvars; ++j) {
            t.emplace_back(Monomial::variable(j), a(i, j));
        }
        imgs.push_back(Poly::from_terms(ring, std::move(t)));
    }
    return Endo(ring, std::move(imgs));
}

Endo diagonal_endo(const Ring &ring, const std::vector<Scalar> &d)
{
    if (d.size() != ring.nvars) {
        throw EndoError("diagonal needs one entry per variable");
    }
    Matrix a(ring.field, ring.nvars, ring.nvars);
    for (std::size_t i = 0; i < d.size(); ++i) {
        a(i, i) = d[i];
    }
    return linear_endo(ring, a);
}

Endo permutation_endo(const Ring &ring, const std::vector<std::size_t> &perm)
{
    if (perm.size() != ring.nvars) {
        throw EndoError("permutation needs one entry per variable");
    }
    std::vector<Poly> imgs;
    for (auto p : perm) {
        imgs.push_back(Poly::variable(ring, p));
    }
    return Endo(ring, std::move(imgs));
}

Endo elementary_endo(const Ring &ring, std::size_t target, const Poly &addend)
{
    if (target >= ring.nvars) {
        throw EndoError("elementary target out of range");
    }
    if (addend.involves(target)) {
        throw EndoError("elementary addend involves its target x" + std::to_string(target + 1));
    }
    auto id = Endo::identity(ring);
    return id.with_image(target, id.image(target) + addend);
}

Matrix linear_part(const Endo &f)
{
    const Ring &ring = f.ring();
    Matrix a(ring.field, ring.nvars, ring.nvars);
    for (std::size_t i = 0; i < ring.nvars; ++i) {
        for (const auto &[m, c] : f.image(i).terms()) {
            if (m.degree() == 1) {
                a(i, m.letter(0)) = c;
            }
        }
    }
    return a;
}

namespace
{

// Lowest-degree term of f_i - lambda x_i over all i, ignoring degrees < from.
std::optional<FiltrationWitness> lowest_deviation(const Endo &f, const Scalar &lambda, int from)
{
    std::optional<FiltrationWitness> best;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Poly dev = f.image(i) - Poly::variable(f.ring(), i).scaled(lambda);
        for (const auto &[m, c] : dev.terms()) {
            const int d = static_cast<int>(m.degree());
            if (d < from) {
                continue;
            }
            if (!best || d < best->degree) {
                best = FiltrationWitness{i, m, c, d};
            }
            break;
        }
    }
    return best;
}

} // namespace

FiltrationReport filtration(const Endo &f, int cap)
{
    if (cap < 1) {
        throw EndoError("filtration cap must be positive");
    }
    FiltrationReport rep;
    rep.cap = cap;
    const FieldSpec &field = f.ring().field;
    const Matrix lin = linear_part(f);
    bool constants = false;
    for (const auto &img : f.images()) {
        constants = constants || !img.constant_term().is_zero();
    }

    if (!constants && lin.is_diagonal() && f.size() > 0) {
        const Scalar lambda = lin(0, 0);
        bool scalar = !lambda.is_zero();
        for (std::size_t i = 1; i < f.size(); ++i) {
            scalar = scalar && lin(i, i) == lambda;
        }
        if (scalar) {
            rep.scalar_flag = true;
            rep.scalar = lambda;
            const auto w = lowest_deviation(f, lambda, 2);
            rep.scalar_level = w ? std::min(w->degree, cap) : cap;
        }
    }

    const auto w = lowest_deviation(f, Scalar::one(field), 0);
    if (!w) {
        rep.level = cap;
        return rep;
    }
    rep.level = w->degree <= 1 ? 0 : std::min(w->degree, cap);
    if (w->degree < cap || rep.level == 0) {
        rep.witness = w;
    }
    return rep;
}

Endo jet_invert(const Endo &f, int m)
{
    const Ring &ring = f.ring();
    for (const auto &img : f.images()) {
        if (!img.constant_term().is_zero()) {
            throw EndoError("jet inversion needs images without constant terms");
        }
    }
    Matrix ainv;
    try {
        ainv = linear_part(f).inverse();
    } catch (const ArithmeticError &) {
        throw EndoError("linear part is singular");
    }
    const Endo linv = linear_endo(ring, ainv);
    if (m <= 2) {
        return linv.truncated(m);
    }
    Endo g = linv;
    for (int d = 2; d < m; ++d) {
        const Endo fg = compose(f, g, d + 1);
        std::vector<Poly> imgs = g.images();
        bool changed = false;
        for (std::size_t i = 0; i < ring.nvars; ++i) {
            const Poly err = (Poly::variable(ring, i) - fg.image(i)).homogeneous(d);
            if (err.is_zero()) {
                continue;
            }
            imgs[i] += substitute(err, linv.images());
            changed = true;
        }
        if (changed) {
            g = Endo(ring, std::move(imgs));
        }
    }
    return g;
}

Endo exact_inverse(const Endo &f, std::optional<int> degree_bound)
{
    const int d = std::max(f.degree(), 1);
    int bound = 1;
    if (degree_bound) {
        bound = *degree_bound;
    } else {
        for (std::size_t i = 1; i < f.size(); ++i) {
            bound = bound > (1 << 20) / d ? (1 << 20) : bound * d;
        }
    }
    const Endo id = Endo::identity(f.ring());
    int m = std::min(d, bound) + 1;
    while (true) {
        const Endo g = jet_invert(f, m);
        if (compose(f, g) == id && compose(g, f) == id) {
            return g;
        }
        if (m > bound) {
            throw EndoError("no polynomial inverse of degree <= " + std::to_string(bound));
        }
        m = std::min(2 * m, bound + 1);
    }
}

Endo group_commutator(const Endo &f, const Endo &g)
{
    const Endo fi = exact_inverse(f);
    const Endo gi = exact_inverse(g);
    return compose(compose(compose(fi, gi), f), g);
}

Endo group_commutator_jet(const Endo &f, const Endo &g, int cap)
{
    const Endo fi = jet_invert(f, cap);
    const Endo gi = jet_invert(g, cap);
    return compose(compose(compose(fi, gi, cap), f, cap), g, cap);
}

Endo point_product(const std::vector<Endo> &maps, int cap)
{
    if (maps.empty()) {
        throw EndoError("point product of an empty list");
    }
    Endo out = cap == kNoCap ? maps.back() : maps.back().truncated(cap);
    for (std::size_t i = maps.size() - 1; i-- > 0;) {
        out = compose(out, maps[i], cap);
    }
    return out;
}

Endo conjugate(const Endo &a, const Endo &m)
{
    return compose(compose(exact_inverse(a), m), a);
}

Endo conjugate_jet(const Endo &a, const Endo &m, int cap)
{
    return compose(compose(jet_invert(a, cap), m, cap), a, cap);
}

std::optional<std::size_t> elementary_target(const Endo &f)
{
    std::optional<std::size_t> target;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.image(i) == Poly::variable(f.ring(), i)) {
            continue;
        }
        if (target) {
            return std::nullopt;
        }
        target = i;
    }
    if (target && (f.image(*target) - Poly::variable(f.ring(), *target)).involves(*target)) {
        return std::nullopt;
    }
    return target;
}

std::vector<Endo> elementary_split(const Endo &f)
{
    if (f.is_identity()) {
        return {};
    }
    const auto target = elementary_target(f);
    if (!target) {
        throw EndoError("endomorphism is not elementary");
    }
    const Poly addend = f.image(*target) - Poly::variable(f.ring(), *target);
    std::vector<Endo> res;
    for (const auto &[m, c] : addend.terms()) {
        res.push_back(elementary_endo(f.ring(), *target, Poly::term(f.ring(), m, c)));
    }
    return res;
}

namespace
{

Poly det_rec(const std::vector<std::vector<Poly>> &a, std::vector<std::size_t> &cols, std::size_t row, int cap,
             const Ring &ring)
{
    if (row == a.size()) {
        return Poly::one(ring).truncated(cap);
    }
    Poly res(ring);
    int sign = 1;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const std::size_t c = cols[k];
        if (!a[row][c].is_zero()) {
            cols.erase(cols.begin() + static_cast<long>(k));
            Poly minor = det_rec(a, cols, row + 1, cap, ring);
            cols.insert(cols.begin() + static_cast<long>(k), c);
            Poly t = Poly::multiply(a[row][c], minor, cap);
            res = sign > 0 ? res + t : res - t;
        }
        sign = -sign;
    }
    return res;
}

} // namespace

Poly jacobian_det(const Endo &f, int m)
{
    if (!f.ring().commutative()) {
        throw EndoError("Jacobian determinant needs the commutative flavor");
    }
    const std::size_t n = f.size();
    std::vector<std::vector<Poly>> jac(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            jac[i].push_back(partial_derivative(f.image(i), j).truncated(m));
        }
    }
    std::vector<std::size_t> cols(n);
    for (std::size_t j = 0; j < n; ++j) {
        cols[j] = j;
    }
    return det_rec(jac, cols, 0, m, f.ring());
}

} // namespace polyaut
