#include <map>

#include <polyaut/tameword.hpp>

namespace polyaut
{

namespace
{

constexpr std::size_t X = 0, Y = 1, Z = 2, T = 3;

Poly var(const Ring &ring, std::size_t i)
{
    return Poly::variable(ring, i);
}

std::vector<std::size_t> swap_perm(const Ring &ring, std::size_t a, std::size_t b)
{
    std::vector<std::size_t> p(ring.nvars);
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = i;
    }
    std::swap(p[a], p[b]);
    return p;
}

// Identity plus c in position (i, j): x_i -> x_i + c x_j.
Matrix shear(const Ring &ring, std::size_t i, std::size_t j, const Scalar &c)
{
    Matrix m = Matrix::identity(ring.field, ring.nvars);
    m(i, j) += c;
    return m;
}

GenWord single(const Ring &ring, const Generator &g)
{
    GenWord w(ring);
    w.append(g);
    return w;
}

// a o b o a^-1 o b^-1
GenWord group_commutator_word(const GenWord &a, const GenWord &b)
{
    return a + b + invert_word(a) + invert_word(b);
}

void require_three(const Ring &ring)
{
    if (ring.nvars < 3) {
        throw SynthesisError("synthesis needs at least three variables");
    }
}

std::string field_name(const Ring &ring)
{
    return ring.field.to_string();
}

Scalar binomial(const FieldSpec &f, unsigned n, unsigned k)
{
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Scalar(f, b);
}

// Coefficient of x^a y^b in a polynomial of the ring.
Scalar coeff_xy(const Poly &p, unsigned a, unsigned b)
{
    std::vector<unsigned> e(p.ring().nvars, 0);
    e[X] = a;
    e[Y] = b;
    return p.coefficient(Monomial::from_exponents(e));
}

// Coefficients c_s (s = 0..d-1) with sum_s c_s y (x + s y)^(d-1) = target,
// where target has no pure x^d term.
std::optional<std::vector<Scalar>> edge_coefficients(const Poly &target, unsigned d)
{
    const FieldSpec &f = target.ring().field;
    Matrix m(f, d, d);
    std::vector<Scalar> rhs;
    for (unsigned i = 0; i < d; ++i) {
        const Scalar bin = binomial(f, d - 1, i);
        for (unsigned s = 0; s < d; ++s) {
            m(i, s) = bin * Scalar(f, static_cast<long>(s)).pow(i);
        }
        rhs.push_back(coeff_xy(target, d - 1 - i, i + 1));
    }
    auto sol = solve(m, rhs);
    if (!sol) {
        return std::nullopt;
    }
    Poly check(target.ring());
    for (unsigned s = 0; s < d; ++s) {
        const Poly l = var(target.ring(), X) + var(target.ring(), Y).scaled(Scalar(f, static_cast<long>(s)));
        check += (var(target.ring(), Y) * l.pow(d - 1)).scaled((*sol)[s]);
    }
    if (check != target) {
        return std::nullopt;
    }
    return sol;
}

enum class Route { power, edge };

struct DegreePlan {
    unsigned degree;
    Route route;
    std::vector<std::pair<Scalar, Poly>> power_pairs;
    Scalar pure_x;
    std::vector<Scalar> edge_coeffs;
};

struct ElementaryPlan {
    Poly linear;
    std::vector<DegreePlan> degrees;
};

ElementaryPlan plan_elementary(const Poly &p)
{
    const Ring &ring = p.ring();
    if (!ring.commutative()) {
        throw SynthesisError("commutative synthesis needs the commutative flavor");
    }
    require_three(ring);
    if (!ring.field.is_rational() && ring.field.characteristic() == 2) {
        throw SynthesisError("synthesis is not attempted in characteristic 2");
    }
    for (std::size_t v = Z; v < ring.nvars; ++v) {
        if (p.involves(v)) {
            throw SynthesisError("P involves x" + std::to_string(v + 1) + "; only P(x, y) is supported");
        }
    }
    if (!p.constant_term().is_zero()) {
        throw SynthesisError("P has a constant term");
    }
    const std::uint64_t chr = ring.field.is_rational() ? 0 : ring.field.characteristic();

    ElementaryPlan plan;
    plan.linear = p.homogeneous(1);
    for (int d = 2; d <= p.degree(); ++d) {
        const Poly part = p.homogeneous(d);
        if (part.is_zero()) {
            continue;
        }
        DegreePlan dp;
        dp.degree = static_cast<unsigned>(d);
        const bool p_divides = chr != 0 && d % chr == 0;
        std::string power_failure;
        if (!p_divides) {
            try {
                dp.power_pairs = express_in_power_basis(part);
                dp.route = Route::power;
                plan.degrees.push_back(std::move(dp));
                continue;
            } catch (const SynthesisError &e) {
                power_failure = e.what();
            }
        }
        dp.pure_x = coeff_xy(part, static_cast<unsigned>(d), 0);
        const Poly rest = part.filtered([](const Poly::Term &t) { return t.first.contains(Y); });
        auto coeffs = edge_coefficients(rest, static_cast<unsigned>(d));
        if (!coeffs) {
            throw SynthesisError("degree-" + std::to_string(d) + " part " + part.to_string() +
                                 " cannot be synthesized over " + field_name(ring) +
                                 " (needs a prime p > " + std::to_string(d) + " or p = " + std::to_string(d) + ")" +
                                 (power_failure.empty() ? "" : "; " + power_failure));
        }
        dp.route = Route::edge;
        dp.edge_coeffs = std::move(*coeffs);
        plan.degrees.push_back(std::move(dp));
    }
    return plan;
}

} // namespace

Generator quadratic_generator(const Ring &ring)
{
    require_three(ring);
    return Generator::elementary(Z, var(ring, X) * var(ring, Y));
}

bool uses_only_fixed_generator(const GenWord &w)
{
    if (w.ring.nvars < 3) {
        return w.elementary_count() == 0;
    }
    const Poly xy = var(w.ring, X) * var(w.ring, Y);
    for (const auto &g : w.gens) {
        if (g.kind == Generator::Kind::elementary && (g.target != Z || g.addend != xy)) {
            return false;
        }
    }
    return true;
}

GenWord synth_power(const Ring &ring, const Scalar &b, unsigned k)
{
    require_three(ring);
    if (k == 0) {
        throw SynthesisError("power exponent must be positive");
    }
    if (b.is_zero()) {
        return GenWord(ring);
    }
    if (k == 1) {
        return single(ring, Generator::linear(shear(ring, Z, X, b)));
    }
    // E(y, b x^(k-1)) o psi o E(y, b x^(k-1))^-1 = E(z, xy + b x^k).
    const GenWord a = relabel(synth_power(ring, b, k - 1), swap_perm(ring, Y, Z));
    const Generator psi = quadratic_generator(ring);
    GenWord w(ring);
    w.append(psi.inverse());
    w.append(a);
    w.append(psi);
    w.append(invert_word(a));
    return simplify(w);
}

GenWord synth_edge(const Ring &ring, const Scalar &b, unsigned k)
{
    require_three(ring);
    if (!ring.commutative()) {
        throw SynthesisError("edge synthesis needs the commutative flavor");
    }
    if (!ring.field.is_rational() && ring.field.characteristic() == 2) {
        throw SynthesisError("edge synthesis needs characteristic != 2");
    }
    if (b.is_zero()) {
        return GenWord(ring);
    }
    if (k == 0) {
        return single(ring, Generator::linear(shear(ring, Z, Y, b)));
    }
    const Generator psi = quadratic_generator(ring);
    if (k == 1) {
        std::vector<Scalar> d(ring.nvars, Scalar::one(ring.field));
        d[Z] = b.inverse();
        return simplify(conjugate_by_diagonal(single(ring, psi), d));
    }
    const Scalar c = b / Scalar(ring.field, 2L);
    // A = E(y, c x^k) o (x -> x + y):
    // A o psi o A^-1 = E(z, xy + y^2 + 2c y x^k + c x^(k+1) + c^2 x^(2k)).
    GenWord a = relabel(synth_power(ring, c, k), swap_perm(ring, Y, Z));
    a.append(Generator::linear(shear(ring, X, Y, Scalar::one(ring.field))));

    GenWord w = a;
    w.append(psi);
    w.append(invert_word(a));
    w.append(psi.inverse());
    w.append(relabel(synth_power(ring, Scalar(ring.field, -1L), 2), swap_perm(ring, X, Y)));
    w.append(synth_power(ring, -c, k + 1));
    w.append(synth_power(ring, -(c * c), 2 * k));
    return simplify(w);
}

std::vector<std::pair<Scalar, Poly>> express_in_power_basis(const Poly &target)
{
    const Ring &ring = target.ring();
    if (!ring.commutative() || ring.nvars < 2) {
        throw SynthesisError("power basis needs a commutative ring with x and y");
    }
    if (target.is_zero()) {
        return {};
    }
    const int deg = target.degree();
    if (target.order() != deg) {
        throw SynthesisError("power basis target must be homogeneous");
    }
    for (std::size_t v = Z; v < ring.nvars; ++v) {
        if (target.involves(v)) {
            throw SynthesisError("power basis target must be a form in x and y");
        }
    }
    const auto d = static_cast<unsigned>(deg);
    const FieldSpec &f = ring.field;

    std::vector<Poly> forms{var(ring, X), var(ring, Y)};
    for (unsigned s = 1; s < d; ++s) {
        forms.push_back(var(ring, X) + var(ring, Y).scaled(Scalar(f, static_cast<long>(s))));
    }
    Matrix m(f, d + 1, forms.size());
    std::vector<Scalar> rhs;
    for (unsigned j = 0; j <= d; ++j) {
        m(j, 0) = Scalar(f, j == 0 ? 1L : 0L);
        m(j, 1) = Scalar(f, j == d ? 1L : 0L);
        for (unsigned s = 1; s < d; ++s) {
            m(j, s + 1) = binomial(f, d, j) * Scalar(f, static_cast<long>(s)).pow(j);
        }
        rhs.push_back(coeff_xy(target, d - j, j));
    }
    const auto sol = solve(m, rhs);
    if (!sol) {
        throw SynthesisError("form is not a combination of " + std::to_string(d) + "-th powers over " +
                             f.to_string() + " (prime " + std::to_string(f.characteristic()) +
                             " divides a needed binomial coefficient or is <= the degree)");
    }
    std::vector<std::pair<Scalar, Poly>> res;
    Poly check(ring);
    for (std::size_t i = 0; i < forms.size(); ++i) {
        if (!(*sol)[i].is_zero()) {
            res.emplace_back((*sol)[i], forms[i]);
            check += forms[i].pow(d).scaled((*sol)[i]);
        }
    }
    if (check != target) {
        throw SynthesisError("power basis solution failed verification");
    }
    return res;
}

std::optional<std::string> synth_elementary_obstruction(const Poly &p)
{
    try {
        plan_elementary(p);
    } catch (const SynthesisError &e) {
        return std::string(e.what());
    }
    return std::nullopt;
}

GenWord synth_elementary(const Poly &p)
{
    const ElementaryPlan plan = plan_elementary(p);
    const Ring &ring = p.ring();
    const FieldSpec &f = ring.field;
    GenWord w(ring);
    if (!plan.linear.is_zero()) {
        Matrix m = Matrix::identity(f, ring.nvars);
        m(Z, X) = coeff_xy(plan.linear, 1, 0);
        m(Z, Y) = coeff_xy(plan.linear, 0, 1);
        w.append(Generator::linear(m));
    }
    for (const auto &dp : plan.degrees) {
        const unsigned d = dp.degree;
        if (dp.route == Route::power) {
            for (const auto &[c, form] : dp.power_pairs) {
                const GenWord pw = synth_power(ring, c, d);
                const Scalar sx = coeff_xy(form, 1, 0);
                const Scalar sy = coeff_xy(form, 0, 1);
                if (sx.is_zero()) {
                    w.append(relabel(pw, swap_perm(ring, X, Y)));
                } else if (sy.is_zero()) {
                    w.append(pw);
                } else {
                    w.append(conjugate_by_linear(pw, shear(ring, X, Y, sy)));
                }
            }
            continue;
        }
        w.append(synth_power(ring, dp.pure_x, d));
        for (unsigned s = 0; s < d; ++s) {
            const Scalar &c = dp.edge_coeffs[s];
            if (c.is_zero()) {
                continue;
            }
            const GenWord ew = synth_edge(ring, c, d - 1);
            if (s == 0) {
                w.append(ew);
            } else {
                w.append(conjugate_by_linear(ew, shear(ring, X, Y, Scalar(f, static_cast<long>(s)))));
            }
        }
    }
    return simplify(w);
}

std::size_t height(const Monomial &m)
{
    return m.blocks().size();
}

namespace
{

class NcSynthesizer
{
public:
    explicit NcSynthesizer(const Ring &ring) : ring_(ring) {}

    // z -> z + M
    GenWord build(const Monomial &m)
    {
        auto it = memo_.find(m.letters());
        if (it != memo_.end()) {
            return it->second;
        }
        GenWord w = build_uncached(m);
        memo_.emplace(m.letters(), w);
        return w;
    }

private:
    GenWord build_uncached(const Monomial &m)
    {
        const auto blocks = m.blocks();
        const Scalar one = Scalar::one(ring_.field);
        if (m.degree() == 1) {
            return single(ring_, Generator::linear(shear(ring_, Z, m.letter(0), one)));
        }
        if (blocks.size() == 1) {
            const GenWord pw = synth_power(ring_, one, static_cast<unsigned>(blocks[0].second));
            return blocks[0].first == X ? pw : relabel(pw, swap_perm(ring_, X, Y));
        }
        if (blocks.size() == 2 && blocks[0].second == 1) {
            const GenWord base = y_times_x_power(static_cast<unsigned>(blocks[1].second));
            return blocks[0].first == Y ? base : relabel(base, swap_perm(ring_, X, Y));
        }
        // M = M' B with B the last block: [E(z, M'), E(t, z B)] = E(t, M' B).
        const auto [v, k] = blocks.back();
        const Monomial prefix(m.letters().substr(0, m.degree() - k));
        const GenWord phi = build(prefix);
        GenWord alpha(ring_);
        if (v == X) {
            // E(z, y x^k) with y -> z, z -> t, t -> y.
            alpha = relabel(build(Monomial(std::string(1, char(Y)) + std::string(k, char(X)))), perm(X, Z, T, Y));
        } else {
            // E(z, x y^k) with x -> z, z -> t, t -> x.
            alpha = relabel(build(Monomial(std::string(1, char(X)) + std::string(k, char(Y)))), perm(Z, Y, T, X));
        }
        const GenWord beta = group_commutator_word(phi, alpha);
        return simplify(relabel(beta, swap_perm(ring_, Z, T)));
    }

    // z -> z + y x^k
    GenWord y_times_x_power(unsigned k)
    {
        // alpha = E(y, x^k), beta = E(t, z y); [alpha, beta] = E(t, z x^k).
        const GenWord alpha = relabel(synth_power(ring_, Scalar::one(ring_.field), k), swap_perm(ring_, Y, Z));
        const GenWord beta = relabel(single(ring_, quadratic_generator(ring_)), perm(Z, Y, T, X));
        const GenWord gamma = group_commutator_word(alpha, beta);
        // t -> z, z -> y, y -> t.
        return simplify(relabel(gamma, perm(X, T, Y, Z)));
    }

    // Permutation with x -> a, y -> b, z -> c, t -> d, rest fixed.
    std::vector<std::size_t> perm(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const
    {
        std::vector<std::size_t> p(ring_.nvars);
        for (std::size_t i = 0; i < p.size(); ++i) {
            p[i] = i;
        }
        p[X] = a;
        p[Y] = b;
        p[Z] = c;
        p[T] = d;
        return p;
    }

    Ring ring_;
    std::map<std::string, GenWord> memo_;
};

} // namespace

GenWord synth_nc_elementary(const Ring &ring, const Monomial &m, const Scalar &c, std::size_t target,
                            std::size_t max_height)
{
    if (ring.commutative() || ring.nvars < 4) {
        throw SynthesisError("noncommutative synthesis needs the free algebra on at least 4 variables");
    }
    if (target != Z && target != T) {
        throw SynthesisError("target must be x3 or x4");
    }
    if (m.is_unit()) {
        throw SynthesisError("monomial must have positive degree");
    }
    for (std::size_t p = 0; p < m.degree(); ++p) {
        if (m.letter(p) != X && m.letter(p) != Y) {
            throw SynthesisError("monomial must be a word in x1, x2");
        }
    }
    if (height(m) > max_height) {
        throw SynthesisError("height " + std::to_string(height(m)) + " exceeds the configured maximum " +
                             std::to_string(max_height));
    }
    if (c.is_zero()) {
        return GenWord(ring);
    }
    NcSynthesizer synth(ring);
    GenWord w = synth.build(m);
    if (!c.is_one()) {
        std::vector<Scalar> d(ring.nvars, Scalar::one(ring.field));
        d[Z] = c.inverse();
        w = conjugate_by_diagonal(w, d);
    }
    if (target == T) {
        w = relabel(w, swap_perm(ring, Z, T));
    }
    return simplify(w);
}

} // namespace polyaut
