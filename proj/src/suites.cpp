#include <polyaut/suites.hpp>

#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <random>

#include <polyaut/approx.hpp>
#include <polyaut/gen.hpp>
#include <polyaut/hiking.hpp>
#include <polyaut/tameword.hpp>
#include <polyaut/text.hpp>
#include <polyaut/torus.hpp>

namespace polyaut
{

std::string status_name(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::fail:
        return "fail";
    case CheckStatus::inconclusive:
        return "inconclusive";
    }
    return "?";
}

CheckStatus SuiteResult::status() const
{
    CheckStatus out = CheckStatus::pass;
    for (const auto &c : checks) {
        if (c.status == CheckStatus::fail) {
            return CheckStatus::fail;
        }
        if (c.status == CheckStatus::inconclusive) {
            out = CheckStatus::inconclusive;
        }
    }
    return out;
}

int SuiteResult::exit_code() const
{
    switch (status()) {
    case CheckStatus::pass:
        return 0;
    case CheckStatus::fail:
        return 1;
    case CheckStatus::inconclusive:
        return 3;
    }
    return 1;
}

// ------------------------------------------------ degree-4 identities

namespace
{

struct XYZ {
    Ring ring;
    Poly x, y, z;

    explicit XYZ(const FieldSpec &f)
        : ring(nc_ring(3, f)), x(Poly::variable(ring, 0)), y(Poly::variable(ring, 1)), z(Poly::variable(ring, 2))
    {
    }
};

} // namespace

Endo xyyz_commutator(const StarProduct &s)
{
    const XYZ v(s.a.field());
    const Endo phi1 = elementary_endo(v.ring, 0, star(v.y, v.z, s));
    const Endo phi2 = elementary_endo(v.ring, 2, star(v.y, v.x, s));
    return point_product({jet_invert(phi2, 4), jet_invert(phi1, 4), phi2, phi1}, 4);
}

Endo square_pipeline(const StarProduct &s)
{
    const XYZ v(s.a.field());
    const Endo psi1 = elementary_endo(v.ring, 0, star(v.y, v.y, s));
    const Endo psi2 = elementary_endo(v.ring, 2, star(v.x, v.x, s));
    const Endo phil = elementary_endo(v.ring, 2, star(v.y, star(v.y, v.x, s), s));
    const Endo phir = elementary_endo(v.ring, 2, star(star(v.x, v.y, s), v.y, s));
    return point_product({jet_invert(phil, 4), jet_invert(phir, 4), jet_invert(psi2, 4), jet_invert(psi1, 4), psi2,
                          psi1},
                         4);
}

Poly square_expression(const StarProduct &s)
{
    const XYZ v(s.a.field());
    const Poly yy = star(v.y, v.y, s);
    return star(yy, v.x, s) + star(v.x, yy, s) - star(star(v.x, v.y, s), v.y, s) - star(v.y, star(v.y, v.x, s), s);
}

// ------------------------------------------------------------- suites

namespace
{

// Accumulates one check; keeps the first failure as the witness.
class Probe
{
public:
    explicit Probe(std::string name) { r_.name = std::move(name); }

    bool expect(bool ok, const std::function<std::string()> &witness)
    {
        ++cases_;
        if (!ok) {
            ++failures_;
            if (r_.status != CheckStatus::fail) {
                r_.status = CheckStatus::fail;
                r_.witness = witness();
            }
        }
        return ok;
    }

    void inconclusive(const std::string &why)
    {
        ++cases_;
        if (r_.status == CheckStatus::pass) {
            r_.status = CheckStatus::inconclusive;
            r_.witness = why;
        }
    }

    void skip() { ++skipped_; }

    CheckResult done()
    {
        r_.note = std::to_string(cases_) + " cases";
        if (failures_ > 1) {
            r_.note += ", " + std::to_string(failures_) + " failed";
        }
        if (skipped_) {
            r_.note += ", " + std::to_string(skipped_) + " outside preconditions";
        }
        return r_;
    }

private:
    CheckResult r_;
    std::size_t cases_ = 0, failures_ = 0, skipped_ = 0;
};

using Check = std::function<CheckResult(gen::Rng &)>;

struct Builder {
    std::vector<Check> checks;

    void add(Check c) { checks.push_back(std::move(c)); }
};

std::vector<FieldSpec> fields(const SuiteOptions &opt, std::vector<FieldSpec> defaults)
{
    return opt.field ? std::vector<FieldSpec>{*opt.field} : defaults;
}

std::string tag(const std::string &name, const FieldSpec &f)
{
    return name + " [" + f.to_string() + "]";
}

Poly var(const Ring &r, std::size_t i)
{
    return Poly::variable(r, i);
}

Poly P(const Ring &r, const std::string &s)
{
    return parse_poly(r, s);
}

Endo E(const Ring &r, std::initializer_list<std::string> imgs)
{
    std::vector<Poly> v;
    for (const auto &s : imgs) {
        v.push_back(P(r, s));
    }
    return Endo(r, std::move(v));
}

std::string show(const Endo &f)
{
    return f.to_string();
}

std::string pw(const std::string &base, int e)
{
    return "(" + base + ")^" + std::to_string(e);
}

const FieldSpec Q = FieldSpec::rational();

// ---------------------------------------------------------- filtration

void filtration_suite(Builder &b, const SuiteOptions &opt)
{
    for (const auto &f : fields(opt, {Q})) {
        b.add([f](gen::Rng &) {
            Probe p(tag("commutator pairs land in H_{n+k-1} minus H_{n+k}", f));
            const Ring r = comm_ring(2, f);
            for (int n = 2; n <= 4; ++n) {
                for (int k = 2; k <= 4; ++k) {
                    const Endo psi1 = elementary_endo(r, 0, var(r, 1).pow(static_cast<unsigned>(k)));
                    const Endo psi2 = elementary_endo(r, 1, var(r, 0).pow(static_cast<unsigned>(n)));
                    const int cap = n + k + 1;
                    const int level = filtration(group_commutator_jet(psi1, psi2, cap), cap).level;
                    p.expect(level == n + k - 1, [&] {
                        return "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": level " +
                               std::to_string(level);
                    });
                }
            }
            return p.done();
        });
        b.add([f](gen::Rng &rng) {
            Probe p(tag("[H_n, H_k] inside H_{n+k-1}", f));
            const Ring r = comm_ring(3, f);
            for (int i = 0; i < 100; ++i) {
                const int n = static_cast<int>(gen::uniform(rng, 2, 4));
                const int k = static_cast<int>(gen::uniform(rng, 2, 4));
                const int cap = n + k + 1;
                const Endo g = gen::tame_in_h(rng, r, n, 2, cap);
                const Endo h = gen::tame_in_h(rng, r, k, 2, cap);
                const int level = filtration(group_commutator_jet(g, h, cap), cap).level;
                p.expect(filtration(g, cap).level >= n && filtration(h, cap).level >= k && level >= n + k - 1, [&] {
                    return "n=" + std::to_string(n) + " k=" + std::to_string(k) + " level " + std::to_string(level) +
                           ": f = " + show(g) + "; g = " + show(h);
                });
            }
            return p.done();
        });
        b.add([f](gen::Rng &rng) {
            Probe p(tag("H_n and H_k commute mod I^{n+k-1}", f));
            const Ring r = comm_ring(3, f);
            for (int i = 0; i < 40; ++i) {
                const int n = static_cast<int>(gen::uniform(rng, 2, 4));
                const int k = static_cast<int>(gen::uniform(rng, 2, 4));
                const int cap = n + k - 1;
                const Endo g = gen::tame_in_h(rng, r, n, 2, cap + 1);
                const Endo h = gen::tame_in_h(rng, r, k, 2, cap + 1);
                p.expect(compose(g, h, cap) == compose(h, g, cap),
                         [&] { return "f = " + show(g) + "; g = " + show(h); });
            }
            return p.done();
        });
        b.add([f](gen::Rng &rng) {
            Probe p(tag("[G_n, G_n] inside H_n", f));
            const Ring r = comm_ring(3, f);
            for (int i = 0; i < 30; ++i) {
                const int n = static_cast<int>(gen::uniform(rng, 3, 4));
                const Scalar l1 = gen::scalar(rng, f, true), l2 = gen::scalar(rng, f, true);
                const Endo g = compose(diagonal_endo(r, {l1, l1, l1}), gen::tame_in_h(rng, r, n, 2, n + 3));
                const Endo h = compose(diagonal_endo(r, {l2, l2, l2}), gen::tame_in_h(rng, r, n, 2, n + 3));
                const int level = filtration(group_commutator_jet(g, h, n + 2), n + 2).level;
                p.expect(level >= n, [&] { return "n=" + std::to_string(n) + " level " + std::to_string(level); });
            }
            return p.done();
        });
    }
}

// --------------------------------------------------------- commutators

void commutators_suite(Builder &b, const SuiteOptions &opt)
{
    for (const auto &f : fields(opt, {Q})) {
        b.add([f](gen::Rng &) {
            Probe p(tag("two-variable commutator matches its expansion", f));
            const Ring r = comm_ring(2, f);
            for (int n = 2; n <= 3; ++n) {
                for (int k = 2; k <= 3; ++k) {
                    const Endo psi1 = E(r, {"x + y^" + std::to_string(k), "y"});
                    const Endo psi2 = E(r, {"x", "y + x^" + std::to_string(n)});
                    const std::string yx = "y + x^" + std::to_string(n);
                    const std::string inner = "x + " + pw(yx, k);
                    const Endo formula =
                        E(r, {"x + " + pw(yx, k) + " - " + pw(yx + " - " + pw(inner, n), k), yx + " - " + pw(inner, n)});
                    const Endo c = point_product({exact_inverse(psi1), exact_inverse(psi2), psi1, psi2});
                    p.expect(c == formula, [&] { return "n=" + std::to_string(n) + " k=" + std::to_string(k); });
                }
            }
            return p.done();
        });
        b.add([f](gen::Rng &rng) {
            Probe p(tag("group commutator is the reversed point product", f));
            const Ring r = comm_ring(3, f);
            for (int i = 0; i < 20; ++i) {
                const Endo g = gen::tame_in_h(rng, r, 2, 1, 6);
                const Endo h = gen::tame_in_h(rng, r, 2, 1, 6);
                const Endo gi = jet_invert(g, 6), hi = jet_invert(h, 6);
                p.expect(group_commutator_jet(g, h, 6) == point_product({h, g, hi, gi}, 6),
                         [&] { return "f = " + show(g) + "; g = " + show(h); });
            }
            return p.done();
        });
        b.add([f](gen::Rng &) {
            Probe p(tag("three-variable square commutators", f));
            const Ring c3 = comm_ring(3, f);
            const Endo c = group_commutator(E(c3, {"x + y^2", "y", "z"}), E(c3, {"x", "y", "z + x^2"}));
            p.expect(c == E(c3, {"x", "y", "z + 2*x*y^2 - y^4"}), [&] { return show(c); });

            const Ring n3 = nc_ring(3, f);
            const Endo psi1 = E(n3, {"x + y^2", "y", "z"}), psi2 = E(n3, {"x", "y", "z + x^2"});
            const Endo sq = point_product({jet_invert(psi2, 4), jet_invert(psi1, 4), psi2, psi1}, 4);
            p.expect(sq == E(n3, {"x", "y", "z + y^2*x + x*y^2"}), [&] { return show(sq); });
            const Endo triv = square_pipeline({Scalar::one(f), Scalar::zero(f)});
            p.expect(triv.is_identity(), [&] { return show(triv); });
            return p.done();
        });
        b.add([f](gen::Rng &) {
            Probe p(tag("x -> x - y^2 x, z -> z + y^2 z mod I^4", f));
            const Endo c = xyyz_commutator({Scalar::one(f), Scalar::zero(f)});
            p.expect(c == E(nc_ring(3, f), {"x - y^2*x", "y", "z + y^2*z"}), [&] { return show(c); });
            return p.done();
        });
        b.add([f](gen::Rng &) {
            Probe p(tag("four-variable steps reach t -> t + x^2 y", f));
            const Ring r = nc_ring(4, f);
            const Endo target = E(r, {"x", "y", "z", "t + x^2*y"});
            const Endo al = E(r, {"x", "y", "z + x*y", "t"}), be = E(r, {"x", "y", "z", "t + x*z"}),
                       h = E(r, {"x", "y", "z", "t - x*z"});
            const Endo gamma = point_product({h, exact_inverse(al), be, al});
            p.expect(gamma == target, [&] { return show(gamma); });
            const Endo de = E(r, {"x", "y", "z + x^2", "t"}), ep = E(r, {"x", "y", "z", "t + z*y"});
            const Endo c = point_product({exact_inverse(ep), exact_inverse(de), ep, de});
            p.expect(c == target, [&] { return show(c); });
            return p.done();
        });
    }
}

// --------------------------------------------------------------- torus

template <class C>
BasicEndo<C> torus_by_composition(const std::vector<C> &alpha, const BasicEndo<C> &f, const std::vector<C> &beta)
{
    return compose(compose(diagonal_action(f.ring(), beta), f), diagonal_action(f.ring(), alpha));
}

void torus_suite(Builder &b, const SuiteOptions &opt)
{
    for (const auto &f : fields(opt, {Q, FieldSpec::prime(101)})) {
        b.add([f](gen::Rng &rng) {
            Probe p(tag("coefficient transform equals composition", f));
            for (const auto &r : {comm_ring(3, f), nc_ring(3, f)}) {
                for (int i = 0; i < 100; ++i) {
                    std::vector<Scalar> a, c;
                    for (std::size_t k = 0; k < 3; ++k) {
                        a.push_back(gen::scalar(rng, f, true));
                        c.push_back(gen::scalar(rng, f, true));
                    }
                    const Endo g = expand(gen::word(rng, r, 4, 3, 2));
                    p.expect(torus_conjugate(a, g, c) == torus_by_composition(a, g, c), [&] { return show(g); });
                }
            }
            return p.done();
        });
        b.add([f](gen::Rng &rng) {
            Probe p(tag("centralizer members commute with their torus", f));
            for (int i = 0; i < 20; ++i) {
                const Ring r = comm_ring(3, f);
                const Endo t2 = centralizer_member(TorusFamily::t2, r, gen::scalar(rng, f, true),
                                                   {gen::scalar(rng, f, true), gen::scalar(rng, f, true)});
                p.expect(centralizer_check(TorusFamily::t2, t2).commutes, [&] { return show(t2); });
                const Endo sq =
                    centralizer_member(TorusFamily::squared, r, gen::scalar(rng, f, true), {gen::scalar(rng, f, true)});
                p.expect(centralizer_check(TorusFamily::squared, sq).commutes, [&] { return show(sq); });
            }
            return p.done();
        });
    }
    b.add([](gen::Rng &) {
        Probe p("off-diagonal entry gives valuation n_i - n_j");
        const Ring r = comm_ring(3);
        for (int ni = 1; ni <= 5; ++ni) {
            for (int nj = ni + 1; nj < 2 * ni; ++nj) {
                for (std::size_t i = 0; i < 3; ++i) {
                    const std::size_t j = (i + 1) % 3;
                    std::vector<Poly> imgs{var(r, 0), var(r, 1), var(r, 2)};
                    imgs[j] += var(r, i).scaled(Scalar(Q, 7L)) + var(r, i).pow(2);
                    std::vector<int> w(3, ni);
                    w[j] = nj;
                    const auto rep = singularity(w, Endo(r, imgs));
                    p.expect(rep.valuation == ni - nj && rep.image == j, [&] {
                        return "n_i=" + std::to_string(ni) + " n_j=" + std::to_string(nj) + ": valuation " +
                               std::to_string(rep.valuation);
                    });
                }
            }
        }
        return p.done();
    });
    b.add([](gen::Rng &) {
        Probe p("leading nonlinear term gives valuation k n2 - n1");
        const Ring r = comm_ring(3);
        for (int k = 2; k <= 4; ++k) {
            for (int n2 = 1; n2 <= 6; ++n2) {
                for (int n1 = k * n2 + 1; n1 < (k + 1) * n2; ++n1) {
                    const auto uk = static_cast<unsigned>(k);
                    const Poly x1 = P(r, "3*x") + P(r, "y").pow(uk).scaled(Scalar(Q, -2L)) + P(r, "x*y").pow(uk) +
                                    P(r, "y").pow(uk + 1);
                    const auto rep = singularity({n1, n2, n1}, Endo(r, {x1, P(r, "3*y"), P(r, "3*z")}));
                    p.expect(rep.valuation == k * n2 - n1, [&] {
                        return "k=" + std::to_string(k) + " n1=" + std::to_string(n1) + " n2=" + std::to_string(n2) +
                               ": valuation " + std::to_string(rep.valuation);
                    });
                }
            }
        }
        return p.done();
    });
}

// ----------------------------------------------------------- synthesis

void synthesis_comm_suite(Builder &b, const SuiteOptions &opt)
{
    for (const auto &f : fields(opt, {Q, FieldSpec::prime(5), FieldSpec::prime(7), FieldSpec::prime(101)})) {
        b.add([f](gen::Rng &rng) {
            Probe p(tag("synthesized words expand to z -> z + c x^k y^l", f));
            const Ring r = comm_ring(3, f);
            for (unsigned d = 1; d <= 6; ++d) {
                for (unsigned k = 0; k <= d; ++k) {
                    const Monomial m = Monomial::from_exponents({k, d - k, 0});
                    for (int i = 0; i < 5; ++i) {
                        const Poly target = Poly::term(r, m, gen::scalar(rng, f, true));
                        if (synth_elementary_obstruction(target)) {
                            p.skip();
                            continue;
                        }
                        const GenWord w = synth_elementary(target);
                        p.expect(uses_only_fixed_generator(w) && expand(w) == elementary_endo(r, 2, target),
                                 [&] { return target.to_string(); });
                    }
                }
            }
            return p.done();
        });
    }
}

std::vector<Monomial> xy_words(std::size_t degree)
{
    std::vector<Monomial> out;
    for (std::size_t bits = 0; bits < (std::size_t{1} << degree); ++bits) {
        std::string s;
        for (std::size_t i = 0; i < degree; ++i) {
            s += static_cast<char>((bits >> (degree - 1 - i)) & 1u);
        }
        out.push_back(Monomial::from_letters(s, Flavor::noncommutative));
    }
    return out;
}

void synthesis_nc_suite(Builder &b, const SuiteOptions &opt)
{
    for (const auto &f : fields(opt, {Q})) {
        for (std::size_t d = 1; d <= 6; ++d) {
            b.add([f, d](gen::Rng &rng) {
                Probe p(tag("t -> t + c M for words of degree " + std::to_string(d) + ", height <= 4", f));
                const Ring r = nc_ring(4, f);
                for (const auto &m : xy_words(d)) {
                    if (height(m) > 4) {
                        continue;
                    }
                    const Scalar c = gen::scalar(rng, f, true);
                    const GenWord w = synth_nc_elementary(r, m, c, 3);
                    const Poly target = Poly::term(r, m, c);
                    p.expect(uses_only_fixed_generator(w) && expand(w) == elementary_endo(r, 3, target),
                             [&] { return target.to_string(); });
                }
                return p.done();
            });
        }
    }
}

// ---------------------------------------------------------------- star

void star_suite(Builder &b, const SuiteOptions &opt)
{
    for (const auto &f : fields(opt, {Q, FieldSpec::prime(101)})) {
        b.add([f](gen::Rng &rng) {
            Probe p(tag("associator equals lambda [g, [f, h]]", f));
            const Ring r = nc_ring(3, f);
            for (int i = 0; i < 200; ++i) {
                const Poly a = gen::poly(rng, r, 0, 3, 4), c = gen::poly(rng, r, 0, 3, 4),
                           d = gen::poly(rng, r, 0, 3, 4);
                const Scalar l = gen::scalar(rng, f);
                p.expect(associator(a, c, d, {Scalar::one(f), l}) == commutator(c, commutator(a, d)).scaled(l),
                         [&] { return "lambda=" + l.to_string() + " f=" + a.to_string(); });
            }
            return p.done();
        });
        b.add([f](gen::Rng &rng) {
            Probe p(tag("star product is associative iff a b = 0", f));
            const Ring r = nc_ring(3, f);
            const Poly x = var(r, 0), y = var(r, 1), z = var(r, 2);
            for (long a = -2; a <= 2; ++a) {
                for (long c = -2; c <= 2; ++c) {
                    const StarProduct s{Scalar(f, a), Scalar(f, c)};
                    const bool zero = (s.a * s.b).is_zero();
                    bool assoc = associator(x, y, z, s).is_zero();
                    for (int i = 0; i < 5 && assoc; ++i) {
                        assoc = associator(gen::poly(rng, r, 1, 2, 3), gen::poly(rng, r, 1, 2, 3),
                                           gen::poly(rng, r, 1, 2, 3), s)
                                    .is_zero();
                    }
                    p.expect(assoc == zero, [&] { return "a=" + std::to_string(a) + " b=" + std::to_string(c); });
                }
            }
            return p.done();
        });
        b.add([f](gen::Rng &) {
            Probe p(tag("star image of the xyyz commutator", f));
            const XYZ v(f);
            for (long l : {1L, 2L, 3L, -1L, -5L}) {
                const StarProduct s{Scalar::one(f), Scalar(f, l)};
                const Endo c = xyyz_commutator(s);
                const Endo want(v.ring,
                                {v.x - star(v.y, star(v.y, v.x, s), s), v.y, v.z + star(v.y, star(v.y, v.z, s), s)});
                p.expect(c == want, [&] { return "lambda=" + std::to_string(l) + ": " + show(c); });
            }
            return p.done();
        });
        b.add([f](gen::Rng &) {
            Probe p(tag("square pipeline leaves z + 2 lambda [y, [y, x]]", f));
            const XYZ v(f);
            for (long l : {1L, 2L, 3L, -1L, -5L}) {
                const StarProduct s{Scalar::one(f), Scalar(f, l)};
                const Endo c = square_pipeline(s);
                const Poly expr = square_expression(s);
                const Poly want = commutator(v.y, commutator(v.y, v.x)).scaled(Scalar(f, 2 * l));
                p.expect(c == Endo(v.ring, {v.x, v.y, v.z + expr}) && expr == want,
                         [&] { return "lambda=" + std::to_string(l) + ": " + show(c); });
            }
            return p.done();
        });
    }
}

// -------------------------------------------------------------- hiking

void hiking_suite(Builder &b, const SuiteOptions &opt)
{
    for (const auto &f : fields(opt, {Q})) {
        b.add([f](gen::Rng &) {
            Probe p(tag("solved plans re-verify by substitution", f));
            for (const auto &t : std::vector<std::vector<int>>{{1}, {1, 2}, {1, 2, 3}}) {
                std::string label;
                for (int n : t) {
                    label += (label.empty() ? "" : ",") + std::to_string(n);
                }
                try {
                    const auto chk = verify_plan(hiking_solve(t, f));
                    p.expect(chk.ok, [&] { return "{" + label + "}: " + chk.problem; });
                } catch (const HikingError &e) {
                    p.inconclusive("{" + label + "}: " + e.what());
                }
            }
            return p.done();
        });
        b.add([f](gen::Rng &) {
            Probe p(tag("hiking products keep only the z-free leading slice", f));
            const Ring r = nc_ring(3, f);
            const auto shaped = [&](const std::string &rr, const std::string &qq) {
                return compose(E(r, {"x", "y + " + rr, "z"}), E(r, {"x", "y", "z + " + qq}));
            };
            const std::vector<Endo> inputs{
                shaped("x^3 + z*x^2 + x*z*x + z*x*z", "x*y*x"),
                shaped("x^2*z + z*x^2 + z^2*x + x^4 + z*x^3", "y^3 + x*z*y"),
                final_type_pipeline(r, {2, 3}, 8).v,
            };
            HikingPlan plan;
            try {
                plan = hiking_solve({1, 2}, f);
            } catch (const HikingError &e) {
                p.inconclusive(e.what());
                return p.done();
            }
            for (std::size_t i = 0; i < inputs.size(); ++i) {
                const auto sh = hiking_shape(inputs[i], 2, 6);
                const Endo h = hiking_product(inputs[i], plan, 2, 6);
                const bool ok = h.image(sh.fixed_slot) == var(r, sh.fixed_slot) &&
                                (h.image(2) - var(r, 2)).order() >= sh.degree &&
                                h.image(sh.moved_slot).homogeneous(sh.degree) == sh.slices[0];
                p.expect(ok, [&] { return "input " + std::to_string(i + 1) + ": " + show(h); });
            }
            return p.done();
        });
        b.add([f](gen::Rng &) {
            Probe p(tag("final-type maps have the stated leading shapes", f));
            const Ring r = nc_ring(3, f);
            for (const auto &ks : std::vector<std::vector<unsigned>>{{2, 3}, {2, 1}, {1, 2, 2}, {1, 1, 1}, {3, 1, 2},
                                                                     {1, 1, 1, 2}}) {
                unsigned k = 0;
                std::string label;
                for (unsigned e : ks) {
                    k += e;
                    label += (label.empty() ? "" : ",") + std::to_string(e);
                }
                const auto rep = final_type_pipeline(r, ks, static_cast<int>(k) + 2);
                p.expect(rep.u_moved_ok && rep.u_z_ok && rep.v_shape_ok,
                         [&] { return "(" + label + "): " + rep.detail; });
            }
            return p.done();
        });
    }
}

// -------------------------------------------------------------- nagata

void nagata_suite(Builder &b, const SuiteOptions &opt)
{
    for (const auto &f : fields(opt, {Q})) {
        b.add([f](gen::Rng &) {
            Probe p(tag("Nagata map: Jacobian, inverse, invariant", f));
            const Ring r = comm_ring(3, f);
            const Endo n = nagata(r);
            p.expect(jacobian_det(n) == Poly::one(r), [&] { return jacobian_det(n).to_string(); });
            const Endo inv = nagata_inverse(r);
            p.expect(compose(n, inv).is_identity() && compose(inv, n).is_identity(), [&] { return show(inv); });
            const Poly s = P(r, "y^2 + x*z");
            p.expect(substitute(s, n.images()) == s, [] { return std::string("y^2 + xz not invariant"); });
            return p.done();
        });
        b.add([f](gen::Rng &rng) {
            Probe p(tag("Nagata map is nice to level 6", f));
            PeelOptions o;
            o.seed = rng();
            const auto v = classify_nice(nagata(comm_ring(3, f)), 6, o);
            if (v.kind == NiceKind::nice) {
                p.expect(v.level == 6 && v.trace && v.trace->recomposes(nagata(comm_ring(3, f))),
                         [&] { return v.note; });
            } else {
                p.inconclusive(nice_kind_name(v.kind) + " at level " + std::to_string(v.level) + ": " + v.note);
            }
            return p.done();
        });
        b.add([f](gen::Rng &rng) {
            Probe p(tag("expanded tame words are nice", f));
            const Ring r = comm_ring(3, f);
            for (int i = 0; i < 6; ++i) {
                const Endo t = expand_jet(gen::word(rng, r, 4, 3, 2), 6);
                PeelOptions o;
                o.seed = rng();
                const auto v = classify_nice(t, 6, o);
                if (v.kind == NiceKind::nice) {
                    p.expect(v.trace && v.trace->recomposes(t), [&] { return show(t); });
                } else {
                    p.inconclusive(nice_kind_name(v.kind) + ": " + v.note);
                }
            }
            return p.done();
        });
    }
}

// ------------------------------------------------------------- inclexcl

long factorial(int n)
{
    return n <= 1 ? 1 : n * factorial(n - 1);
}

void inclexcl_suite(Builder &b, const SuiteOptions &opt)
{
    for (const auto &f : fields(opt, {Q})) {
        b.add([f](gen::Rng &) {
            Probe p(tag("alternating power sums give n! x_1...x_n or 0", f));
            for (int n = 1; n <= 5; ++n) {
                const Ring r = comm_ring(static_cast<std::size_t>(n), f);
                for (int m = 1; m <= n; ++m) {
                    const Poly got = inclusion_exclusion_check(n, m, f);
                    const Poly want = m < n ? Poly(r)
                                            : Poly::term(r, Monomial::from_exponents(std::vector<unsigned>(
                                                                static_cast<std::size_t>(n), 1)),
                                                         Scalar(f, factorial(n)));
                    p.expect(got == want, [&] {
                        return "n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " + got.to_string();
                    });
                }
            }
            return p.done();
        });
    }
}

using SuiteFn = void (*)(Builder &, const SuiteOptions &);

const std::vector<std::pair<std::string, SuiteFn>> &registry()
{
    static const std::vector<std::pair<std::string, SuiteFn>> r{
        {"filtration", filtration_suite},
        {"commutators", commutators_suite},
        {"torus", torus_suite},
        {"synthesis-comm", synthesis_comm_suite},
        {"synthesis-nc", synthesis_nc_suite},
        {"star", star_suite},
        {"hiking", hiking_suite},
        {"nagata", nagata_suite},
        {"inclexcl", inclexcl_suite},
    };
    return r;
}

CheckResult run_check(const Check &c, std::uint64_t seed, std::size_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    gen::Rng rng(seq);
    try {
        return c(rng);
    } catch (const std::exception &e) {
        CheckResult r;
        r.name = "check " + std::to_string(index + 1);
        r.status = CheckStatus::fail;
        r.witness = std::string("exception: ") + e.what();
        return r;
    }
}

} // namespace

const std::vector<std::string> &suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto &[n, fn] : registry()) {
            out.push_back(n);
        }
        return out;
    }();
    return names;
}

SuiteResult run_suite(const std::string &name, std::uint64_t seed, const SuiteOptions &options)
{
    SuiteFn fn = nullptr;
    for (const auto &[n, f] : registry()) {
        if (n == name) {
            fn = f;
        }
    }
    if (!fn) {
        throw SuiteError("unknown suite '" + name + "'");
    }
    const auto start = std::chrono::steady_clock::now();
    Builder b;
    fn(b, options);

    SuiteResult out;
    out.name = name;
    out.seed = seed;
    if (options.parallel) {
        std::vector<std::future<CheckResult>> jobs;
        for (std::size_t i = 0; i < b.checks.size(); ++i) {
            jobs.push_back(std::async(std::launch::async, run_check, std::cref(b.checks[i]), seed, i));
        }
        for (auto &j : jobs) {
            out.checks.push_back(j.get());
        }
    } else {
        for (std::size_t i = 0; i < b.checks.size(); ++i) {
            out.checks.push_back(run_check(b.checks[i], seed, i));
        }
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace polyaut
