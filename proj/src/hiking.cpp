#include <polyaut/hiking.hpp>

#include <algorithm>
#include <set>

#include <polyaut/linalg.hpp>
#include <polyaut/polyops.hpp>

namespace polyaut
{

namespace
{

std::vector<int> normalize_targets(const std::vector<int> &targets)
{
    std::set<int> s;
    for (int n : targets) {
        if (n < 1) {
            throw HikingError("hiking targets must be positive exponents, got " + std::to_string(n));
        }
        s.insert(n);
    }
    return {s.begin(), s.end()};
}

long binomial(long n, long r)
{
    long c = 1;
    for (long i = 1; i <= r; ++i) {
        c = c * (n - r + i) / i;
    }
    return c;
}

HikingPlan binomial_plan(const std::vector<int> &targets, const FieldSpec &field)
{
    HikingPlan plan;
    plan.field = field;
    plan.targets = targets;
    const long n = targets.back() + 1;
    for (long j = 1; j <= n; ++j) {
        plan.k.push_back((j % 2 ? 1 : -1) * binomial(n, j));
        plan.lambda.push_back(Scalar(field, j));
    }
    return plan;
}

long symmetric_residue(const Scalar &s)
{
    const auto p = static_cast<long>(s.field().modulus());
    const auto r = static_cast<long>(s.residue());
    return r > p / 2 ? r - p : r;
}

std::optional<HikingPlan> search_plan(const std::vector<int> &targets, const FieldSpec &field, std::size_t max_size)
{
    const std::uint64_t p = field.modulus();
    const std::size_t rows = targets.size() + 1;
    std::vector<Scalar> rhs(rows, Scalar::zero(field));
    rhs[0] = Scalar::one(field);
    std::size_t budget = 200000;
    for (std::size_t s = 1; s <= max_size && s < p; ++s) {
        std::vector<std::uint64_t> pick(s);
        for (std::size_t i = 0; i < s; ++i) {
            pick[i] = i + 1;
        }
        while (budget-- > 0) {
            Matrix a(field, rows, s);
            for (std::size_t c = 0; c < s; ++c) {
                const Scalar l(field, static_cast<long>(pick[c]));
                a(0, c) = Scalar::one(field);
                for (std::size_t t = 0; t < targets.size(); ++t) {
                    a(t + 1, c) = l.pow(targets[t]);
                }
            }
            if (const auto k = solve(a, rhs)) {
                HikingPlan plan;
                plan.field = field;
                plan.targets = targets;
                for (std::size_t c = 0; c < s; ++c) {
                    if (!(*k)[c].is_zero()) {
                        plan.k.push_back(symmetric_residue((*k)[c]));
                        plan.lambda.push_back(Scalar(field, static_cast<long>(pick[c])));
                    }
                }
                return plan;
            }
            // next s-subset of {1..p-1}
            std::size_t i = s;
            while (i > 0 && pick[i - 1] == p - 1 - (s - i)) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++pick[i - 1];
            for (std::size_t j = i; j < s; ++j) {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    return std::nullopt;
}

// Terms of p with z-degree j, for each j.
std::vector<Poly> split_by_z(const Poly &p, std::size_t z)
{
    std::vector<Poly> out;
    for (const auto &[m, c] : p.terms()) {
        const std::size_t j = m.count(z);
        while (out.size() <= j) {
            out.emplace_back(p.ring());
        }
        out[j] += Poly::term(p.ring(), m, c);
    }
    return out;
}

Poly deviation(const Endo &f, std::size_t i)
{
    return f.image(i) - Poly::variable(f.ring(), i);
}

Endo power(const Endo &f, long e, int cap)
{
    const Endo base = e < 0 ? jet_invert(f, cap) : f.truncated(cap);
    Endo out = Endo::identity(f.ring());
    for (long i = 0; i < (e < 0 ? -e : e); ++i) {
        out = compose(out, base, cap);
    }
    return out;
}

} // namespace

PlanCheck verify_plan(const HikingPlan &plan)
{
    PlanCheck chk;
    const FieldSpec &f = plan.field;
    chk.weight_sum = Scalar::zero(f);
    if (plan.k.size() != plan.lambda.size() || plan.k.empty()) {
        chk.problem = "plan needs as many scales as multiplicities, and at least one";
        return chk;
    }
    for (std::size_t i = 0; i < plan.k.size(); ++i) {
        if (plan.lambda[i].field() != f) {
            chk.problem = "scale " + std::to_string(i + 1) + " is over a different field";
            return chk;
        }
        if (plan.lambda[i].is_zero()) {
            chk.problem = "scale " + std::to_string(i + 1) + " is zero";
            return chk;
        }
        chk.weight_sum += Scalar(f, plan.k[i]);
    }
    bool ok = chk.weight_sum.is_one();
    if (!ok) {
        chk.problem = "multiplicities sum to " + chk.weight_sum.to_string();
    }
    for (int n : plan.targets) {
        Scalar s = Scalar::zero(f), t = Scalar::zero(f);
        for (std::size_t i = 0; i < plan.k.size(); ++i) {
            s += Scalar(f, plan.k[i]) * plan.lambda[i].pow(n);
            t += Scalar(f, plan.k[i]).pow(n) * plan.lambda[i];
        }
        if (!s.is_zero() && ok) {
            ok = false;
            chk.problem = "exponent " + std::to_string(n) + " is not killed: sum is " + s.to_string();
        }
        chk.slice_sums.push_back(s);
        chk.printed_sums.push_back(t);
    }
    chk.ok = ok;
    return chk;
}

HikingPlan hiking_solve(const std::vector<int> &targets, const FieldSpec &field, std::size_t max_size)
{
    const auto ts = normalize_targets(targets);
    HikingPlan plan;
    if (ts.empty()) {
        plan.field = field;
        plan.k = {1};
        plan.lambda = {Scalar::one(field)};
    } else if (field.is_rational() || static_cast<std::uint64_t>(ts.back()) + 1 < field.modulus()) {
        plan = binomial_plan(ts, field);
    } else {
        auto found = search_plan(ts, field, max_size);
        if (!found) {
            throw HikingError("no hiking plan with at most " + std::to_string(max_size) + " scales over " +
                              field.to_string());
        }
        plan = std::move(*found);
    }
    const auto chk = verify_plan(plan);
    if (!chk.ok) {
        throw HikingError("internal: solved plan fails verification: " + chk.problem);
    }
    return plan;
}

std::vector<Scalar> slice_weights(const HikingPlan &plan, int max_j)
{
    std::vector<Scalar> out;
    for (int j = 0; j <= max_j; ++j) {
        Scalar c = Scalar::zero(plan.field);
        for (std::size_t i = 0; i < plan.k.size(); ++i) {
            c += Scalar(plan.field, plan.k[i]) * plan.lambda[i].pow(j);
        }
        out.push_back(c);
    }
    return out;
}

Endo z_scaling(const Ring &ring, std::size_t z_slot, const Scalar &lambda)
{
    std::vector<Scalar> d(ring.nvars, Scalar::one(ring.field));
    d.at(z_slot) = lambda;
    return diagonal_endo(ring, d);
}

Endo scaled_conjugate(const Endo &f, const Scalar &lambda, std::size_t z_slot, int cap)
{
    if (lambda.is_zero()) {
        throw HikingError("scale must be nonzero");
    }
    const Ring &ring = f.ring();
    return point_product({z_scaling(ring, z_slot, lambda.inverse()), f, z_scaling(ring, z_slot, lambda)}, cap);
}

HikingShape hiking_shape(const Endo &f, std::size_t z_slot, int cap)
{
    const Ring &ring = f.ring();
    if (ring.nvars != 3) {
        throw HikingError("hiking works in 3 variables");
    }
    if (z_slot >= 3) {
        throw HikingError("z slot out of range");
    }
    if (f.affine()) {
        throw HikingError("hiking input must not be affine");
    }
    const Endo g = f.truncated(cap);
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < 3; ++i) {
        if (i != z_slot) {
            others.push_back(i);
        }
    }
    HikingShape sh;
    sh.z_slot = z_slot;
    if (deviation(g, others[0]).is_zero()) {
        sh.fixed_slot = others[0];
        sh.moved_slot = others[1];
    } else if (deviation(g, others[1]).is_zero()) {
        sh.fixed_slot = others[1];
        sh.moved_slot = others[0];
    } else {
        throw HikingError("no variable besides z is fixed");
    }
    const Poly dy = deviation(g, sh.moved_slot);
    if (dy.is_zero()) {
        throw HikingError("x" + std::to_string(sh.moved_slot + 1) + " is fixed below degree " + std::to_string(cap) +
                          "; nothing to hike");
    }
    sh.degree = dy.order();
    const Poly dz = deviation(g, z_slot);
    if (!dz.is_zero() && dz.order() < sh.degree) {
        throw HikingError("z deviation has degree " + std::to_string(dz.order()) + " below the leading degree " +
                          std::to_string(sh.degree));
    }
    sh.slices = split_by_z(dy.homogeneous(sh.degree), z_slot);
    return sh;
}

Endo hiking_product(const Endo &f, const HikingPlan &plan, std::size_t z_slot, int cap)
{
    const auto chk = verify_plan(plan);
    if (!chk.ok) {
        throw HikingError("invalid plan: " + chk.problem);
    }
    if (plan.field != f.ring().field) {
        throw HikingError("plan and map are over different fields");
    }
    const HikingShape sh = hiking_shape(f, z_slot, cap);
    if (sh.degree >= cap) {
        throw HikingError("leading degree " + std::to_string(sh.degree) + " is not below the cap");
    }
    const Ring &ring = f.ring();
    const int top = static_cast<int>(sh.slices.size()) - 1;

    std::vector<Endo> factors;
    for (std::size_t i = 0; i < plan.k.size(); ++i) {
        const Endo c = scaled_conjugate(f, plan.lambda[i], z_slot, cap);
        Poly expect(ring);
        for (int j = 0; j <= top; ++j) {
            expect += sh.slices[j].scaled(plan.lambda[i].pow(j));
        }
        const HikingShape csh = hiking_shape(c, z_slot, cap);
        if (csh.fixed_slot != sh.fixed_slot || deviation(c, sh.moved_slot).homogeneous(sh.degree) != expect) {
            throw HikingError("internal: scaled conjugate by " + plan.lambda[i].to_string() +
                              " breaks the slice scaling");
        }
        factors.push_back(power(c, plan.k[i], cap));
    }
    const Endo out = point_product(factors, cap);

    const auto w = slice_weights(plan, top);
    Poly expect(ring);
    for (int j = 0; j <= top; ++j) {
        expect += sh.slices[j].scaled(w[j]);
    }
    const Poly dy = deviation(out, sh.moved_slot);
    const Poly dz = deviation(out, z_slot);
    if (!deviation(out, sh.fixed_slot).is_zero() || (!dy.is_zero() && dy.order() < sh.degree) ||
        dy.homogeneous(sh.degree) != expect || (!dz.is_zero() && dz.order() < sh.degree)) {
        throw HikingError("internal: hiking product does not have the predicted leading slice");
    }
    return out;
}

// ------------------------------------------------------- final-type pipeline

Monomial alternating_monomial(const std::vector<unsigned> &ks)
{
    std::string s;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        s.append(ks[i], static_cast<char>(i % 2));
    }
    return Monomial::from_letters(s, Flavor::noncommutative);
}

FinalTypeReport final_type_pipeline(const Ring &ring, const std::vector<unsigned> &ks, int cap)
{
    if (ring.commutative() || ring.nvars != 3) {
        throw HikingError("the final-type pipeline needs the free algebra in 3 variables");
    }
    if (ks.size() < 2) {
        throw HikingError("the final-type pipeline needs at least two blocks");
    }
    FinalTypeReport rep;
    rep.ks = ks;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (ks[i] == 0) {
            throw HikingError("block exponents must be positive");
        }
        rep.degree += static_cast<int>(ks[i]);
    }
    const std::vector<unsigned> head(ks.begin(), ks.end() - 1);
    rep.prefix = alternating_monomial(head);
    rep.full = alternating_monomial(ks);
    if (rep.prefix.degree() < 2) {
        throw HikingError("the prefix monomial must have degree at least 2");
    }
    if (cap <= rep.degree) {
        throw HikingError("cap must exceed the total degree " + std::to_string(rep.degree));
    }
    rep.cap = cap;

    const std::size_t z = 2;
    const std::size_t last = (ks.size() - 1) % 2;
    const std::size_t moved = 1 - last;
    rep.moved_slot = moved;
    const Scalar one = Scalar::one(ring.field);
    const Poly zlast = Poly::variable(ring, z) *
                       Poly::term(ring, Monomial::from_letters(std::string(ks.back(), static_cast<char>(last)),
                                                               Flavor::noncommutative),
                                  one);

    const Endo phi = elementary_endo(ring, moved, zlast);
    const Endo phi_m = elementary_endo(ring, z, Poly::term(ring, rep.prefix, one));
    const Endo psi = elementary_endo(ring, z, Poly::term(ring, rep.full, one));
    const Endo alpha = elementary_endo(ring, moved, -Poly::variable(ring, z));

    rep.u = point_product({jet_invert(phi, cap), jet_invert(phi_m, cap), phi, phi_m}, cap);
    rep.v = point_product({jet_invert(psi, cap), alpha, psi, rep.u, jet_invert(alpha, cap)}, cap);

    std::vector<Poly> dimgs(3, Poly(ring));
    dimgs[moved] = zlast;
    rep.prefix_derivative = nc_derivation(dimgs, Poly::term(ring, rep.prefix, one));

    const int k = rep.degree;
    const auto low_free = [&](const Poly &p, const Poly &expect) {
        return p.degree_range(0, k).is_zero() && p.homogeneous(k) == expect;
    };
    const auto z_positive = [&](const Poly &p) {
        for (const auto &[m, c] : p.terms()) {
            if (!m.contains(z)) {
                return false;
            }
        }
        return true;
    };

    const Poly u_moved = deviation(rep.u, moved), u_z = deviation(rep.u, z);
    rep.u_moved_ok = deviation(rep.u, last).is_zero() && low_free(u_moved, Poly::term(ring, rep.full, one));
    rep.u_z_ok = low_free(u_z, -rep.prefix_derivative);

    const Poly v_moved = deviation(rep.v, moved), v_z = deviation(rep.v, z);
    const bool v_fixed = deviation(rep.v, last).is_zero();
    const bool v_moved_ok = v_moved.degree_range(0, k).is_zero() && z_positive(v_moved.homogeneous(k));
    const bool v_z_ok = v_z.degree_range(0, k).is_zero() && z_positive(v_z.homogeneous(k));
    rep.v_shape_ok = v_fixed && v_moved_ok && v_z_ok;

    if (!rep.u_moved_ok) {
        rep.detail += "u moves x" + std::to_string(moved + 1) + " by " + u_moved.to_string() + ". ";
    }
    if (!rep.u_z_ok) {
        rep.detail += "u moves z by " + u_z.to_string() + ". ";
    }
    if (!v_fixed) {
        rep.detail += "v moves x" + std::to_string(last + 1) + ". ";
    }
    if (!v_moved_ok) {
        rep.detail += "v moves x" + std::to_string(moved + 1) + " by " + v_moved.to_string() + ". ";
    }
    if (!v_z_ok) {
        rep.detail += "v moves z by " + v_z.to_string() + ". ";
    }
    return rep;
}

} // namespace polyaut
