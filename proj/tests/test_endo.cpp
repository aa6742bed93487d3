#include <doctest.h>

#include <polyaut/endo.hpp>
#include <polyaut/polyops.hpp>
#include <polyaut/text.hpp>

#include <polyaut/gen.hpp>

using namespace polyaut;

namespace
{

const FieldSpec Q = FieldSpec::rational();
const Ring C2 = comm_ring(2), C3 = comm_ring(3);

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

Endo nagata_map()
{
    return E(C3, {"x - 2*y*(y^2 + x*z) - (y^2 + x*z)^2*z", "y + (y^2 + x*z)*z", "z"});
}

std::string pw(const std::string &base, int e)
{
    return "(" + base + ")^" + std::to_string(e);
}

} // namespace

TEST_CASE("composition convention")
{
    const Endo f = E(C2, {"x + y^2", "y"});
    const Endo g = E(C2, {"x", "y + x^2"});
    CHECK(compose(f, g) == E(C2, {"x + y^2", "y + (x + y^2)^2"}));
    const Endo id = Endo::identity(C2);
    CHECK(compose(id, f) == f);
    CHECK(compose(f, id) == f);
    CHECK_THROWS_AS(compose(f, Endo::identity(C3)), EndoError);
}

TEST_CASE("linear maps compose as transposed matrix products")
{
    gen::Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        const auto a = gen::invertible_matrix(rng, Q, 3), b = gen::invertible_matrix(rng, Q, 3);
        CHECK(compose(linear_endo(C3, a), linear_endo(C3, b)) == linear_endo(C3, b * a));
        CHECK(linear_part(linear_endo(C3, a)) == a);
    }
}

TEST_CASE("two-variable commutator against the explicit expansion")
{
    for (int n = 2; n <= 3; ++n) {
        for (int k = 2; k <= 3; ++k) {
            const Endo psi1 = E(C2, {"x + y^" + std::to_string(k), "y"});
            const Endo psi2 = E(C2, {"x", "y + x^" + std::to_string(n)});
            const std::string yx = "y + x^" + std::to_string(n);
            const std::string inner = "x + " + pw(yx, k);
            const Endo formula = E(C2, {"x + " + pw(yx, k) + " - " + pw(yx + " - " + pw(inner, n), k),
                                        yx + " - " + pw(inner, n)});
            // The printed product psi1^-1 psi2^-1 psi1 psi2 reads right to left
            // in the composition convention used here.
            const Endo reversed = compose(compose(compose(psi2, psi1), exact_inverse(psi2)), exact_inverse(psi1));
            CHECK(reversed == formula);
            const Endo ours = group_commutator(psi1, psi2);
            CHECK(filtration(ours, 20).level == n + k - 1);
            CHECK(filtration(formula, 20).level == n + k - 1);
        }
    }
    // n = k = 2: x-image begins x + 2 y x^2 in the printed order, and with
    // the opposite sign in f^-1 o g^-1 o f o g.
    const Endo psi1 = E(C2, {"x + y^2", "y"});
    const Endo psi2 = E(C2, {"x", "y + x^2"});
    const Endo reversed = compose(compose(compose(psi2, psi1), exact_inverse(psi2)), exact_inverse(psi1));
    CHECK(reversed.image(0).truncated(4) == P(C2, "x + 2*y*x^2"));
    CHECK(group_commutator(psi1, psi2).image(0).truncated(4) == P(C2, "x - 2*y*x^2"));
    CHECK(group_commutator_jet(psi1, psi2, 4) == group_commutator(psi1, psi2).truncated(4));
    const auto rep = filtration(group_commutator(psi1, psi2), 10);
    CHECK(rep.level == 3);
}

TEST_CASE("point products")
{
    const Endo psi1 = E(C2, {"x + y^2", "y"});
    const Endo psi2 = E(C2, {"x", "y + x^3"});
    const Endo i1 = exact_inverse(psi1), i2 = exact_inverse(psi2);
    CHECK(point_product({i1, i2, psi1, psi2}) == compose(compose(compose(psi2, psi1), i2), i1));
    CHECK(point_product({psi1}) == psi1);
    CHECK(point_product({psi1, i1}).is_identity());
    CHECK(point_product({i1, i2, psi1, psi2}, 5) == point_product({i1, i2, psi1, psi2}).truncated(5));
    CHECK_THROWS_AS(point_product({}), EndoError);
    // As point maps the rightmost factor acts first: p -> psi2(psi1(p)).
    const Endo pq = point_product({psi2, psi1});
    CHECK(pq.image(0) == P(C2, "x + y^2"));
    CHECK(pq.image(1) == P(C2, "y + (x + y^2)^3"));
}

TEST_CASE("commutator of elementaries in three variables")
{
    const Endo psi1 = E(C3, {"x + y^2", "y", "z"});
    const Endo psi2 = E(C3, {"x", "y", "z + x^2"});
    const Endo c = group_commutator(psi1, psi2);
    // Independent expansion: psi1^-1 psi2^-1 psi1 psi2 applied to z.
    CHECK(c.image(2) == P(C3, "z + 2*x*y^2 - y^4"));
    CHECK(c.image(0) == P(C3, "x"));
    CHECK(group_commutator(psi1, Endo::identity(C3)).is_identity());
}

TEST_CASE("filtration reports")
{
    const auto id = filtration(Endo::identity(C3), 10);
    CHECK(id.level == 10);
    CHECK(!id.witness);
    CHECK(id.scalar_flag);

    const auto r = filtration(E(C3, {"x + y^3", "y", "z"}), 10);
    CHECK(r.level == 3);
    REQUIRE(r.witness);
    CHECK(r.witness->image == 0);
    CHECK(r.witness->degree == 3);
    CHECK(r.witness->monomial == Monomial::from_exponents({0, 3, 0}));

    const auto nag = filtration(nagata_map(), 10);
    CHECK(nag.level == 3);
    CHECK(nag.scalar_flag);
    REQUIRE(nag.witness);
    CHECK(nag.witness->degree == 3);

    const auto capped = filtration(E(C3, {"x + y^5", "y", "z"}), 4);
    CHECK(capped.level == 4);
    CHECK(!capped.witness);

    const auto lin = filtration(E(C3, {"x + y", "y", "z"}), 10);
    CHECK(lin.level == 0);
    CHECK(!lin.scalar_flag);
    REQUIRE(lin.witness);
    CHECK(lin.witness->degree == 1);

    const auto hom = filtration(E(C3, {"2*x + y^2", "2*y", "2*z"}), 10);
    CHECK(hom.level == 0);
    CHECK(hom.scalar_flag);
    CHECK(hom.scalar_level == 2);
    CHECK(*hom.scalar == Scalar(Q, 2L));
}

TEST_CASE("jet inversion")
{
    CHECK(jet_invert(E(C2, {"x + y^2", "y"}), 5) == E(C2, {"x - y^2", "y"}));
    const auto a = Matrix::from_rows(Q, {{Scalar(Q, 2L), Scalar(Q, 1L)}, {Scalar(Q, 1L), Scalar(Q, 1L)}});
    CHECK(jet_invert(linear_endo(C2, a), 6) == linear_endo(C2, a.inverse()));
    CHECK_THROWS_AS(jet_invert(E(C2, {"x + y", "x + y"}), 4), EndoError);

    const Endo g = jet_invert(nagata_map(), 8);
    CHECK(filtration(compose(nagata_map(), g, 8), 8).level == 8);
    CHECK(filtration(compose(g, nagata_map(), 8), 8).level == 8);
    CHECK(compose(nagata_map(), g) == Endo::identity(C3));
    CHECK(exact_inverse(nagata_map()) == g);
}

TEST_CASE("jet inversion on random tame maps")
{
    gen::Rng rng(17);
    for (const auto &r : {comm_ring(3), nc_ring(3), comm_ring(3, FieldSpec::prime(7))}) {
        for (int i = 0; i < 15; ++i) {
            const int m = static_cast<int>(gen::uniform(rng, 2, 7));
            const Endo f = gen::tame_in_h(rng, r, 2, 2, m);
            CHECK(filtration(compose(f, jet_invert(f, m), m), m).level == m);
        }
    }
}

TEST_CASE("conjugation")
{
    const Endo psi = E(C3, {"x", "y", "z + x*y"});
    CHECK(conjugate(Endo::identity(C3), psi) == psi);

    // alpha: x_i -> x_i + x1 on the middle variables, M = a x1^k1 x2^k2 x3^k3.
    const Ring r = comm_ring(4);
    const Endo alpha = E(r, {"x1", "x2 + x1", "x3 + x1", "x4"});
    const Endo alpha_inv = exact_inverse(alpha);
    const Endo psi_m = E(r, {"x1", "x2", "x3", "x4 + 3*x1*x2^2*x3"});
    const Poly full = P(r, "3*x1*(x2 + x1)^2*(x3 + x1)");
    const Poly pure = P(r, "3*x1^4");
    const Endo psi_q = E(r, {"x1", "x2", "x3", "x4"}).with_image(3, P(r, "x4") + full - pure);
    const Endo psi_pure = E(r, {"x1", "x2", "x3", "x4 + 3*x1^4"});
    CHECK(conjugate(alpha_inv, psi_m) == compose(psi_q, psi_pure));
    // No monomial of Q is a pure power of x1.
    const Poly q_part = full - pure;
    for (const auto &[m, c] : q_part.terms()) {
        CHECK(m.count(0) < m.degree());
    }
    // With alpha itself the shift goes the other way.
    CHECK(conjugate(alpha, psi_m).image(3) == P(r, "x4 + 3*x1*(x2 - x1)^2*(x3 - x1)"));
    CHECK(conjugate_jet(alpha, psi_m, 4) == conjugate(alpha, psi_m).truncated(4));
}

TEST_CASE("elementary splitting")
{
    const Endo f = E(C3, {"x", "y", "z + x*y + x^2"});
    const auto parts = elementary_split(f);
    REQUIRE(parts.size() == 2);
    CHECK(compose(parts[1], parts[0]) == f);
    CHECK(compose(parts[0], parts[1]) == f);
    const Endo g = E(C3, {"x", "y", "z + x^2"});
    REQUIRE(elementary_split(g).size() == 1);
    CHECK(elementary_split(g)[0] == g);
    CHECK(elementary_split(Endo::identity(C3)).empty());
    CHECK_THROWS_AS(elementary_split(E(C3, {"x + y^2", "y", "z + x^2"})), EndoError);
    CHECK_THROWS_AS(elementary_split(E(C3, {"x", "y", "z + z^2"})), EndoError);
}

TEST_CASE("Jacobian determinants")
{
    CHECK(jacobian_det(E(C3, {"x", "y", "z + x^3*y"})) == P(C3, "1"));
    CHECK(jacobian_det(E(C3, {"2*x + y", "x + y", "3*z"})) == P(C3, "3"));
    CHECK(jacobian_det(nagata_map()) == P(C3, "1"));
    CHECK(jacobian_det(E(C3, {"x + x^2", "y", "z"})) == P(C3, "1 + 2*x"));
    CHECK(jacobian_det(E(C3, {"x + x^2", "y", "z"}), 1) == P(C3, "1"));
    CHECK_THROWS_AS(jacobian_det(Endo::identity(nc_ring(2))), EndoError);
}

TEST_CASE("constant terms need the affine flag")
{
    CHECK_THROWS_AS(E(C2, {"x + 1", "y"}), EndoError);
    CHECK_NOTHROW(Endo(C2, {P(C2, "x + 1"), P(C2, "y")}, true));
}

TEST_CASE("filtration properties on random tame maps")
{
    gen::Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = static_cast<int>(gen::uniform(rng, 2, 4));
        const int k = static_cast<int>(gen::uniform(rng, 2, 4));
        const int cap = n + k + 1;
        const Endo f = gen::tame_in_h(rng, C3, n, 2, 12);
        const Endo g = gen::tame_in_h(rng, C3, k, 2, 12);
        CHECK(filtration(group_commutator_jet(f, g, cap), cap).level >= n + k - 1);
        CHECK(compose(f, g, n + k - 1) == compose(g, f, n + k - 1));
        CHECK(filtration(compose(f, g, 12), 12).level >= std::min(filtration(f, 12).level, filtration(g, 12).level));
    }
}

TEST_CASE("scalar-linear commutators land in H_n")
{
    gen::Rng rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = static_cast<int>(gen::uniform(rng, 3, 4));
        const Scalar l1(Q, gen::uniform(rng, 2, 3)), l2(Q, gen::uniform(rng, -3, -2));
        const Endo f = compose(diagonal_endo(C3, {l1, l1, l1}), gen::tame_in_h(rng, C3, n, 2, n + 3));
        const Endo g = compose(diagonal_endo(C3, {l2, l2, l2}), gen::tame_in_h(rng, C3, n, 2, n + 3));
        CHECK(filtration(f, 12).scalar_level >= n);
        CHECK(filtration(group_commutator_jet(f, g, n + 2), n + 2).level >= n);
    }
}

TEST_CASE("composition is associative on random tame triples")
{
    gen::Rng rng(34);
    for (const auto &r : {C3, nc_ring(3), comm_ring(3, FieldSpec::prime(7))}) {
        for (int i = 0; i < 15; ++i) {
            const Endo a = expand(gen::word(rng, r, 3, 2, 1));
            const Endo b = expand(gen::word(rng, r, 3, 2, 1));
            const Endo c = expand(gen::word(rng, r, 3, 2, 1));
            CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
        }
    }
}

TEST_CASE("tame words have constant Jacobian")
{
    gen::Rng rng(35);
    for (const auto &r : {C3, comm_ring(3, FieldSpec::prime(5))}) {
        for (int i = 0; i < 30; ++i) {
            const GenWord w = gen::word(rng, r, 5, 3, 2);
            const Poly j = jacobian_det(expand(w));
            REQUIRE(j.degree() <= 0);
            CHECK(!j.is_zero());
            Scalar det = Scalar::one(r.field);
            for (const auto &g : w.gens) {
                if (g.kind == Generator::Kind::linear) {
                    det *= g.effective_matrix().determinant();
                }
            }
            CHECK(j.constant_term() == det);
        }
    }
}
