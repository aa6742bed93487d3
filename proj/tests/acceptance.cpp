// Acceptance criteria: one line per criterion, exact checks, wall-time bounds.
//
//   acceptance [--known-red 9,...] [--seed s]
//
// Exit status 0 iff the set of failing criteria equals the --known-red set.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <polyaut/approx.hpp>
#include <polyaut/gen.hpp>
#include <polyaut/hiking.hpp>
#include <polyaut/polyops.hpp>
#include <polyaut/suites.hpp>
#include <polyaut/tameword.hpp>
#include <polyaut/text.hpp>
#include <polyaut/torus.hpp>

using namespace polyaut;

namespace
{

const FieldSpec Q = FieldSpec::rational();
const FieldSpec F101 = FieldSpec::prime(101);

struct Outcome {
    bool ok = true;
    std::string detail;
    std::string first_failure;

    void expect(bool cond, const std::function<std::string()> &what)
    {
        if (!cond && ok) {
            ok = false;
            first_failure = what();
        }
    }
};

struct Criterion {
    int id;
    std::string title;
    double bound; // seconds; 0 = no bound
    std::function<Outcome(gen::Rng &)> run;
};

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

Outcome star_calculus(gen::Rng &rng)
{
    Outcome o;
    int triples = 0;
    for (const auto &f : {Q, F101}) {
        const Ring r = nc_ring(3, f);
        for (int i = 0; i < 200; ++i, ++triples) {
            const Poly a = gen::poly(rng, r, 0, 3, 4), b = gen::poly(rng, r, 0, 3, 4), c = gen::poly(rng, r, 0, 3, 4);
            const Scalar l = gen::scalar(rng, f);
            o.expect(associator(a, b, c, {Scalar::one(f), l}) == commutator(b, commutator(a, c)).scaled(l),
                     [&] { return "associator at lambda=" + l.to_string(); });
        }
    }
    const Ring r = nc_ring(3);
    const Poly x = P(r, "x"), y = P(r, "y"), z = P(r, "z");
    int grid = 0;
    for (long a = -2; a <= 2; ++a) {
        for (long b = -2; b <= 2; ++b, ++grid) {
            o.expect(associator(x, y, z, {Scalar(Q, a), Scalar(Q, b)}).is_zero() == (a * b == 0),
                     [&] { return "associativity at a=" + std::to_string(a) + " b=" + std::to_string(b); });
        }
    }
    o.detail = std::to_string(triples) + " triples over q and fp:101, " + std::to_string(grid) + "-point (a,b) grid";
    return o;
}

Outcome commutator_filtration(gen::Rng &rng)
{
    Outcome o;
    const Ring c2 = comm_ring(2);
    for (int n = 2; n <= 4; ++n) {
        for (int k = 2; k <= 4; ++k) {
            const Endo psi1 = elementary_endo(c2, 0, Poly::variable(c2, 1).pow(static_cast<unsigned>(k)));
            const Endo psi2 = elementary_endo(c2, 1, Poly::variable(c2, 0).pow(static_cast<unsigned>(n)));
            const int cap = n + k + 1;
            const int level = filtration(group_commutator_jet(psi1, psi2, cap), cap).level;
            o.expect(level == n + k - 1, [&] {
                return "pair n=" + std::to_string(n) + " k=" + std::to_string(k) + " at level " + std::to_string(level);
            });
        }
    }
    const Ring c3 = comm_ring(3);
    for (int i = 0; i < 100; ++i) {
        const int n = static_cast<int>(gen::uniform(rng, 2, 4)), k = static_cast<int>(gen::uniform(rng, 2, 4));
        const int cap = n + k + 1;
        const Endo f = gen::tame_in_h(rng, c3, n, 2, cap), g = gen::tame_in_h(rng, c3, k, 2, cap);
        o.expect(filtration(group_commutator_jet(f, g, cap), cap).level >= n + k - 1,
                 [&] { return "random pair " + std::to_string(i); });
    }
    o.detail = "9 pairs at level exactly n+k-1, 100 random pairs";
    return o;
}

Outcome commutative_synthesis(gen::Rng &rng)
{
    Outcome o;
    int done = 0, outside = 0;
    for (const auto &f : {Q, FieldSpec::prime(5), FieldSpec::prime(7), F101}) {
        const Ring r = comm_ring(3, f);
        for (unsigned d = 1; d <= 6; ++d) {
            for (unsigned k = 0; k <= d; ++k) {
                for (int i = 0; i < 5; ++i) {
                    const Poly p = Poly::term(r, Monomial::from_exponents({k, d - k, 0}), gen::scalar(rng, f, true));
                    if (synth_elementary_obstruction(p)) {
                        o.expect(!f.is_rational(), [&] { return "refused over q: " + p.to_string(); });
                        ++outside;
                        continue;
                    }
                    const GenWord w = synth_elementary(p);
                    o.expect(uses_only_fixed_generator(w) && expand(w) == elementary_endo(r, 2, p),
                             [&] { return f.to_string() + ": " + p.to_string(); });
                    ++done;
                }
            }
        }
    }
    o.detail = std::to_string(done) + " targets expanded, " + std::to_string(outside) + " outside preconditions";
    return o;
}

Outcome nc_synthesis(gen::Rng &rng)
{
    Outcome o;
    const Ring r = nc_ring(4);
    int done = 0;
    for (std::size_t d = 1; d <= 6; ++d) {
        for (std::size_t bits = 0; bits < (std::size_t{1} << d); ++bits) {
            std::string s;
            for (std::size_t i = 0; i < d; ++i) {
                s += static_cast<char>((bits >> (d - 1 - i)) & 1u);
            }
            const Monomial m = Monomial::from_letters(s, Flavor::noncommutative);
            if (height(m) > 4) {
                continue;
            }
            const Scalar c = gen::scalar(rng, Q, true);
            const GenWord w = synth_nc_elementary(r, m, c, 3);
            const Poly target = Poly::term(r, m, c);
            o.expect(uses_only_fixed_generator(w) && expand(w) == elementary_endo(r, 3, target),
                     [&] { return target.to_string(); });
            ++done;
        }
    }
    o.detail = std::to_string(done) + " words";
    return o;
}

Outcome torus(gen::Rng &rng)
{
    Outcome o;
    const Ring c3 = comm_ring(3);
    for (int i = 0; i < 100; ++i) {
        std::vector<Scalar> a, b;
        for (int k = 0; k < 3; ++k) {
            a.push_back(gen::scalar(rng, Q, true));
            b.push_back(gen::scalar(rng, Q, true));
        }
        const Endo f = expand(gen::word(rng, c3, 4, 3, 2));
        const Endo direct = compose(compose(diagonal_action(c3, b), f), diagonal_action(c3, a));
        o.expect(torus_conjugate(a, f, b) == direct, [&] { return "conjugation " + std::to_string(i); });
    }
    // Off-diagonal entry: valuation n_i - n_j.
    int first = 0;
    for (int ni = 1; ni <= 5 && first < 10; ++ni) {
        for (int nj = ni + 1; nj < 2 * ni && first < 10; ++nj, ++first) {
            std::vector<Poly> imgs{P(c3, "x"), P(c3, "y"), P(c3, "z")};
            imgs[1] += P(c3, "7*x + x^2");
            const int v = singularity_valuation({ni, nj, ni}, Endo(c3, imgs));
            o.expect(v == ni - nj, [&] { return "off-diagonal grid point gives " + std::to_string(v); });
        }
    }
    // Leading nonlinear term: valuation k n2 - n1 when (k+1) n2 > n1 > k n2.
    int second = 0;
    for (int k = 2; k <= 4 && second < 10; ++k) {
        for (int n2 = 2; n2 <= 6 && second < 10; ++n2) {
            for (int n1 = k * n2 + 1; n1 < (k + 1) * n2 && second < 10; ++n1, ++second) {
                const auto uk = static_cast<unsigned>(k);
                const Poly x1 =
                    P(c3, "3*x") + P(c3, "y").pow(uk).scaled(Scalar(Q, -2L)) + P(c3, "x*y").pow(uk);
                const int v = singularity_valuation({n1, n2, n1}, Endo(c3, {x1, P(c3, "3*y"), P(c3, "3*z")}));
                o.expect(v == k * n2 - n1, [&] { return "nonlinear grid point gives " + std::to_string(v); });
            }
        }
    }
    o.detail = "100 conjugations, " + std::to_string(first) + " + " + std::to_string(second) + " grid points";
    return o;
}

long factorial(int n)
{
    return n <= 1 ? 1 : n * factorial(n - 1);
}

Outcome inclusion_exclusion(gen::Rng &)
{
    Outcome o;
    for (int n = 1; n <= 5; ++n) {
        const Ring r = comm_ring(static_cast<std::size_t>(n));
        for (int m = 1; m <= n; ++m) {
            const Poly want =
                m < n ? Poly(r)
                      : Poly::term(r, Monomial::from_exponents(std::vector<unsigned>(static_cast<std::size_t>(n), 1)),
                                   Scalar(Q, factorial(n)));
            o.expect(inclusion_exclusion_check(n, m) == want,
                     [&] { return "n=" + std::to_string(n) + " m=" + std::to_string(m); });
        }
    }
    o.detail = "15 pairs";
    return o;
}

// Substitution into sum k = 1 and sum k lambda^n = 0, independent of the solver.
bool plan_substitutes(const HikingPlan &p)
{
    mpq_class total = 0;
    for (long k : p.k) {
        total += k;
    }
    if (total != 1) {
        return false;
    }
    for (int n : p.targets) {
        mpq_class s = 0;
        for (std::size_t i = 0; i < p.k.size(); ++i) {
            mpq_class term = p.k[i];
            for (int e = 0; e < n; ++e) {
                term *= p.lambda[i].rational();
            }
            s += term;
        }
        if (s != 0) {
            return false;
        }
    }
    return true;
}

Outcome hiking(gen::Rng &)
{
    Outcome o;
    for (const auto &t : std::vector<std::vector<int>>{{1}, {1, 2}, {1, 2, 3}}) {
        const HikingPlan p = hiking_solve(t, Q);
        o.expect(plan_substitutes(p) && verify_plan(p).ok,
                 [&] { return "plan for " + std::to_string(t.size()) + " targets"; });
    }
    const Ring r = nc_ring(3);
    const auto shaped = [&](const std::string &rr, const std::string &qq) {
        return compose(E(r, {"x", "y + " + rr, "z"}), E(r, {"x", "y", "z + " + qq}));
    };
    const std::vector<Endo> inputs{
        shaped("x^3 + z*x^2 + x*z*x + z*x*z", "x*y*x"),
        shaped("x^2*z + z*x^2 + z^2*x + x^4 + z*x^3", "y^3 + x*z*y"),
        shaped("x*z*x*x + z*z*x*x + x*x*x*x + z*x*z*z", "x*x*y*x"),
    };
    const HikingPlan plan = hiking_solve({1, 2, 3}, Q);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const auto sh = hiking_shape(inputs[i], 2, 6);
        const Endo h = hiking_product(inputs[i], plan, 2, 6);
        // The z-positive part of the leading slice is gone.
        const Poly lead = h.image(1).homogeneous(sh.degree);
        o.expect(h.image(0) == P(r, "x") && lead == sh.slices[0],
                 [&] { return "input " + std::to_string(i + 1) + ": " + h.to_string(); });
    }
    o.detail = "plans {1} {1,2} {1,2,3}; 3 inputs modulo I^6";
    return o;
}

Outcome nagata_check(gen::Rng &)
{
    Outcome o;
    const Ring c3 = comm_ring(3);
    const Endo n = nagata(c3);
    o.expect(jacobian_det(n) == Poly::one(c3), [] { return std::string("Jacobian"); });
    const Endo inv = nagata_inverse(c3);
    o.expect(compose(n, inv).is_identity() && compose(inv, n).is_identity(), [] { return std::string("inverse"); });
    try {
        const ApproxTrace tr = tame_approximate(n, 6);
        o.expect(filtration(tr.residual, 6).level == 6 && tr.recomposes(n),
                 [] { return std::string("trace does not reach H_6 or recompose"); });
        std::size_t letters = 0;
        for (const auto &s : tr.stages) {
            letters += s.word.size();
        }
        o.detail = "trace of " + std::to_string(tr.stages.size()) + " stages, " + std::to_string(letters) +
                   " letters, seed " + std::to_string(tr.seed);
    } catch (const SpanDeficiency &e) {
        o.expect(false, [&] { return std::string("span deficiency: ") + e.what(); });
    }
    return o;
}

Outcome degree_four(gen::Rng &)
{
    Outcome o;
    const Ring r = nc_ring(3);
    const StarProduct plain{Scalar::one(Q), Scalar::zero(Q)};
    const Endo c = xyyz_commutator(plain);
    o.expect(c == E(r, {"x - y^2*x", "y", "z + y^2*z"}), [&] { return "commutator " + c.to_string(); });

    const Poly x = P(r, "x"), y = P(r, "y"), z = P(r, "z");
    std::string corrected = "holds";
    for (long l : {1L, 2L, 3L, -1L, 5L}) {
        const Scalar lam(Q, l);
        const Endo got = square_pipeline({Scalar::one(Q), lam});
        const Endo stated(r, {x, y, z + commutator(x, commutator(x, y)).scaled(Scalar(Q, 4 * l))});
        const Endo derived(r, {x, y, z + commutator(y, commutator(y, x)).scaled(Scalar(Q, 2 * l))});
        if (got != derived) {
            corrected = "FAILS at lambda=" + std::to_string(l);
        }
        o.expect(got == stated, [&] {
            return "lambda=" + std::to_string(l) + ": z -> " + got.image(2).to_string() + ", stated z + " +
                   std::to_string(4 * l) + "[x,[x,y]]";
        });
    }
    o.detail = "5 lambda values; z + 2 lambda [y,[y,x]] " + corrected;
    return o;
}

Outcome round_trip(gen::Rng &rng)
{
    Outcome o;
    int endos = 0, words = 0;
    for (const auto &f : {Q, F101}) {
        for (const auto &r : {comm_ring(3, f), nc_ring(3, f)}) {
            for (int i = 0; i < 500; ++i, ++endos) {
                std::vector<Poly> imgs;
                for (std::size_t v = 0; v < 3; ++v) {
                    imgs.push_back(gen::poly(rng, r, 1, 4, 5));
                }
                const Endo e(r, imgs);
                o.expect(parse_endo(format_endo(e)) == e, [&] { return format_endo(e); });
            }
            for (int i = 0; i < 200; ++i, ++words) {
                const GenWord w = gen::word(rng, r, 6, 3);
                o.expect(parse_word(format_word(w)) == w, [&] { return format_word(w); });
            }
        }
    }
    o.detail = std::to_string(endos) + " endos, " + std::to_string(words) + " words";
    return o;
}

std::set<int> parse_ids(const std::string &text)
{
    std::set<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.insert(std::stoi(item));
        }
    }
    return out;
}

} // namespace

int main(int argc, char **argv)
{
    std::set<int> known_red;
    std::uint64_t seed = 20240601;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--known-red" && i + 1 < argc) {
            known_red = parse_ids(argv[++i]);
        } else if (a == "--seed" && i + 1 < argc) {
            seed = std::stoull(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--known-red 9,...] [--seed s]\n";
            return 2;
        }
    }

    const std::vector<Criterion> criteria{
        {1, "star calculus", 10, star_calculus},
        {2, "commutator filtration", 30, commutator_filtration},
        {3, "commutative synthesis", 20, commutative_synthesis},
        {4, "noncommutative synthesis", 60, nc_synthesis},
        {5, "torus conjugation and valuations", 0, torus},
        {6, "inclusion-exclusion", 5, inclusion_exclusion},
        {7, "hiking", 0, hiking},
        {8, "Nagata map", 60, nagata_check},
        {9, "degree-4 free-algebra identities", 0, degree_four},
        {10, "parse/format round trip", 0, round_trip},
    };

    std::set<int> failing;
    std::cout << std::fixed << std::setprecision(2);
    for (const auto &c : criteria) {
        gen::Rng rng(seed + static_cast<std::uint64_t>(c.id));
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run(rng);
        } catch (const std::exception &e) {
            o.ok = false;
            o.first_failure = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.bound <= 0 || secs < c.bound;
        const bool pass = o.ok && in_time;
        if (!pass) {
            failing.insert(c.id);
        }
        std::cout << (pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << "  " << c.title << ": " << o.detail
                  << " (" << secs << " s";
        if (c.bound > 0) {
            std::cout << ", bound " << c.bound << " s";
        }
        std::cout << ")";
        if (!o.ok) {
            std::cout << "\n        first failure: " << o.first_failure;
        }
        if (!in_time) {
            std::cout << "\n        over the time bound";
        }
        if (known_red.count(c.id)) {
            std::cout << "\n        documented as known red";
        }
        std::cout << std::endl;
    }
    std::cout << criteria.size() - failing.size() << "/" << criteria.size() << " criteria pass";
    if (!known_red.empty()) {
        std::cout << (failing == known_red ? "; failures match the known-red list" : "; failures differ from the known-red list");
    }
    std::cout << std::endl;
    return failing == known_red ? 0 : 1;
}
