#include <doctest.h>

#include <algorithm>
#include <chrono>

#include <polyaut/tameword.hpp>
#include <polyaut/text.hpp>

#include <polyaut/gen.hpp>

using namespace polyaut;

namespace
{

const FieldSpec Q = FieldSpec::rational();
const Ring C3 = comm_ring(3), N4 = nc_ring(4);

Poly P(const Ring &r, const std::string &s)
{
    return parse_poly(r, s);
}

Scalar q(long a, long b = 1)
{
    return Scalar(Q, mpq_class(mpz_class(a), mpz_class(b)));
}

Endo elem(const Ring &r, std::size_t target, const Poly &addend)
{
    return elementary_endo(r, target, addend);
}

// Every monomial word in x, y (letters 0, 1) of the given degree.
std::vector<Monomial> nc_words(std::size_t degree)
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

} // namespace

TEST_CASE("expansion basics")
{
    CHECK(expand(GenWord(C3)).is_identity());
    const Generator psi = quadratic_generator(C3);
    CHECK(expand(GenWord(C3, {psi})) == elem(C3, 2, P(C3, "x*y")));
    CHECK(invert_word(GenWord(C3, {psi})) == GenWord(C3, {psi.inverse()}));
    CHECK(expand(invert_word(GenWord(C3, {psi}))) == elem(C3, 2, P(C3, "-x*y")));
    const auto a = Generator::linear(Matrix::from_rows(Q, {{q(1), q(1), q(0)}, {q(0), q(1), q(0)}, {q(0), q(0), q(1)}}));
    CHECK(invert_word(GenWord(C3, {a, psi})) == GenWord(C3, {psi.inverse(), a.inverse()}));
    CHECK_THROWS_AS(Generator::elementary(2, P(C3, "z*x")), SynthesisError);
    CHECK_THROWS_AS(Generator::linear(Matrix(Q, 3, 3)), SynthesisError);
}

TEST_CASE("word inversion on random words")
{
    gen::Rng rng(40);
    for (const auto &r : {comm_ring(3), nc_ring(3)}) {
        for (int i = 0; i < 100; ++i) {
            const GenWord w = gen::word(rng, r, 8, 2, 2);
            CHECK(compose(expand(invert_word(w)), expand(w)).is_identity());
            CHECK(expand(w + invert_word(w)).is_identity());
            CHECK(simplify(w + invert_word(w)).empty());
            CHECK(expand(simplify(w)) == expand(w));
        }
    }
}

TEST_CASE("expansion agrees with direct composition")
{
    gen::Rng rng(41);
    for (const auto &r : {comm_ring(3), nc_ring(3), comm_ring(3, FieldSpec::prime(5))}) {
        for (int i = 0; i < 40; ++i) {
            const GenWord w = gen::word(rng, r, 5, 2);
            Endo direct = Endo::identity(r);
            for (const auto &g : w.gens) {
                direct = compose(direct, g.to_endo(r));
            }
            CHECK(expand(w) == direct);
            CHECK(expand_jet(w, 4) == direct.truncated(4));
        }
    }
}

TEST_CASE("elementaries with one target commute")
{
    gen::Rng rng(42);
    for (int i = 0; i < 30; ++i) {
        const Poly m1 = gen::poly(rng, C3, 1, 3, 3, 2), m2 = gen::poly(rng, C3, 1, 3, 3, 2);
        const GenWord a(C3, {Generator::elementary(2, m1), Generator::elementary(2, m2)});
        const GenWord b(C3, {Generator::elementary(2, m2), Generator::elementary(2, m1)});
        CHECK(expand(a) == expand(b));
        CHECK(expand(a) == elem(C3, 2, m1 + m2));
    }
}

TEST_CASE("relabeling and diagonal conjugation")
{
    const GenWord w(C3, {Generator::elementary(2, P(C3, "x^2*y"))});
    // x <-> z applied to E(z, x^2 y) gives E(x, z^2 y).
    CHECK(expand(relabel(w, {2, 1, 0})) == elem(C3, 0, P(C3, "z^2*y")));
    CHECK(expand(conjugate_by_diagonal(w, {q(2), q(3), q(5)})) == elem(C3, 2, P(C3, "12/5*x^2*y")));
    gen::Rng rng(43);
    for (int i = 0; i < 20; ++i) {
        const GenWord v = gen::word(rng, C3, 4, 2);
        const Matrix m = gen::invertible_matrix(rng, Q, 3);
        const Endo l = linear_endo(C3, m);
        CHECK(expand(conjugate_by_linear(v, m)) == compose(compose(l, expand(v)), exact_inverse(l)));
    }
}

TEST_CASE("power synthesis")
{
    for (unsigned k = 1; k <= 6; ++k) {
        for (const Scalar &b : {q(1), q(3, 2), q(-2)}) {
            const GenWord w = synth_power(C3, b, k);
            CHECK(uses_only_fixed_generator(w));
            Poly target = Poly::term(C3, Monomial::from_exponents({k, 0, 0}), b);
            CHECK(expand(w) == elem(C3, 2, target));
        }
    }
    CHECK(synth_power(C3, q(1), 1).elementary_count() == 0);
    // Characteristic free.
    const Ring f2 = comm_ring(3, FieldSpec::prime(2));
    CHECK(expand(synth_power(f2, Scalar(f2.field, 1L), 3)) == elem(f2, 2, P(f2, "x^3")));
    // Also in the free algebra.
    const Ring n3 = nc_ring(3);
    CHECK(expand(synth_power(n3, q(2), 4)) == elem(n3, 2, P(n3, "2*x^4")));
}

TEST_CASE("edge synthesis")
{
    for (unsigned k = 0; k <= 5; ++k) {
        for (const Scalar &b : {q(1), q(-5, 3)}) {
            const GenWord w = synth_edge(C3, b, k);
            CHECK(uses_only_fixed_generator(w));
            Poly target = Poly::term(C3, Monomial::from_exponents({k, 1, 0}), b);
            CHECK(expand(w) == elem(C3, 2, target));
        }
    }
    CHECK(synth_edge(C3, q(1), 1).elementary_count() == 1);
    const Ring f2 = comm_ring(3, FieldSpec::prime(2));
    CHECK_THROWS_AS(synth_edge(f2, Scalar(f2.field, 1L), 2), SynthesisError);
    const Ring f5 = comm_ring(3, FieldSpec::prime(5));
    CHECK(expand(synth_edge(f5, Scalar(f5.field, 3L), 4)) == elem(f5, 2, P(f5, "3*y*x^4")));
}

TEST_CASE("power basis")
{
    const auto check_sum = [](const Poly &target) {
        const auto pairs = express_in_power_basis(target);
        Poly sum(target.ring());
        for (const auto &[c, l] : pairs) {
            CHECK(!c.is_zero());
            CHECK(l.degree() == 1);
            sum += l.pow(static_cast<unsigned>(target.degree())).scaled(c);
        }
        CHECK(sum == target);
        return pairs;
    };
    const Ring c2 = comm_ring(2);
    const auto xy = check_sum(P(c2, "x*y"));
    REQUIRE(xy.size() == 3);
    const std::vector<std::pair<Scalar, Poly>> expected{
        {q(1, 2), P(c2, "x + y")}, {q(-1, 2), P(c2, "x")}, {q(-1, 2), P(c2, "y")}};
    for (const auto &e : expected) {
        CHECK(std::find(xy.begin(), xy.end(), e) != xy.end());
    }
    const auto sq = check_sum(P(c2, "x^2"));
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].second == P(c2, "x"));
    check_sum(P(c2, "x^3 - 2*x*y^2 + 7*y^3"));
    check_sum(P(c2, "x^2*y^4"));
    const Ring f3 = comm_ring(2, FieldSpec::prime(3));
    CHECK_THROWS_AS(express_in_power_basis(P(f3, "x^2*y")), SynthesisError);
    CHECK_THROWS_AS(express_in_power_basis(P(c2, "x^2 + y")), SynthesisError);
}

TEST_CASE("polynomial synthesis")
{
    const auto check = [](const Poly &p) {
        const GenWord w = synth_elementary(p);
        CHECK(uses_only_fixed_generator(w));
        CHECK(expand(w) == elem(p.ring(), 2, p));
    };
    check(P(C3, "x^2 + x*y"));
    check(P(C3, "x - 2*y"));
    CHECK_THROWS_AS(synth_elementary(P(C3, "3 + x")), SynthesisError);
    check(P(C3, "x^3*y^2 - 1/3*y^4 + x*y"));
    CHECK(synth_elementary(Poly(C3)).empty());
    CHECK_THROWS_AS(synth_elementary(P(C3, "x - 2*y*(y^2 + x*z)")), SynthesisError);
    CHECK(synth_elementary_obstruction(P(C3, "x*z")));
    CHECK(!synth_elementary_obstruction(P(C3, "x*y")));

    for (std::uint64_t p : {5u, 7u}) {
        const Ring r = comm_ring(3, FieldSpec::prime(p));
        check(P(r, "x^2*y + 2*y^3"));
        check(P(r, "x^" + std::to_string(p)));
        check(P(r, "y*x^" + std::to_string(p - 1)));
    }
    const Ring f2 = comm_ring(3, FieldSpec::prime(2));
    CHECK_THROWS_AS(synth_elementary(P(f2, "x*y")), SynthesisError);
}

TEST_CASE("synthesized word length stays polynomial")
{
    std::vector<std::size_t> lengths;
    for (unsigned d = 1; d <= 8; ++d) {
        Poly p(C3);
        for (unsigned k = 0; k <= d; ++k) {
            p += Poly::term(C3, Monomial::from_exponents({k, d - k, 0}), q(static_cast<long>(k) + 1));
        }
        lengths.push_back(synth_elementary(p).size());
    }
    for (unsigned d = 1; d <= 8; ++d) {
        CHECK(lengths[d - 1] <= 400 * d * d * d);
    }
}

TEST_CASE("height")
{
    CHECK(height(Monomial::from_exponents({2, 3})) == 2);
    CHECK(height(Monomial::from_letters(std::string("\x00\x00\x01\x01\x01", 5), Flavor::noncommutative)) == 2);
    CHECK(height(Monomial::from_letters(std::string("\x00\x01\x00", 3), Flavor::noncommutative)) == 3);
    CHECK(height(Monomial()) == 0);
}

TEST_CASE("noncommutative synthesis examples")
{
    const auto m_xy = Monomial::from_letters(std::string("\x00\x01", 2), Flavor::noncommutative);
    const GenWord w = synth_nc_elementary(N4, m_xy, q(1), 3);
    CHECK(uses_only_fixed_generator(w));
    CHECK(expand(w) == elem(N4, 3, P(N4, "x*y")));

    const Ring f5 = nc_ring(4, FieldSpec::prime(5));
    const auto m = Monomial::from_letters(std::string("\x00\x00\x01\x00", 4), Flavor::noncommutative);
    CHECK(expand(synth_nc_elementary(f5, m, Scalar(f5.field, 1L), 3)) == elem(f5, 3, P(f5, "x^2*y*x")));
    CHECK(expand(synth_nc_elementary(N4, m, q(-2, 7), 2)) == elem(N4, 2, P(N4, "-2/7*x^2*y*x")));

    const auto deep = Monomial::from_letters(std::string("\x00\x01\x00\x01\x00", 5), Flavor::noncommutative);
    CHECK_THROWS_AS(synth_nc_elementary(N4, deep, q(1), 3, 3), SynthesisError);
    CHECK_THROWS_AS(synth_nc_elementary(nc_ring(3), m_xy, q(1), 2), SynthesisError);
}

TEST_CASE("noncommutative synthesis for short words")
{
    for (std::size_t d = 1; d <= 4; ++d) {
        for (const auto &m : nc_words(d)) {
            const GenWord w = synth_nc_elementary(N4, m, q(3), 3);
            CHECK(uses_only_fixed_generator(w));
            CHECK(expand(w) == elem(N4, 3, Poly::term(N4, m, q(3))));
        }
    }
}

TEST_CASE("word text round trip")
{
    gen::Rng rng(44);
    for (const auto &r : {comm_ring(3), nc_ring(3), comm_ring(3, FieldSpec::prime(7))}) {
        for (int i = 0; i < 30; ++i) {
            const GenWord w = gen::word(rng, r, 6, 3);
            CHECK(parse_word(format_word(w)) == w);
        }
    }
}

TEST_CASE("torus normalization")
{
    const auto ones = torus_normalize({q(1), q(1), q(1)});
    REQUIRE(ones.alphas);
    for (const auto &a : *ones.alphas) {
        CHECK(a == q(1));
    }

    // Plug back: for each equation i, the exponent of beta_j in
    // beta_i * alpha_i / (alpha_{i+1} alpha_{i+2}) must vanish.
    for (std::size_t n : {3u, 4u, 5u}) {
        std::vector<Scalar> betas;
        for (std::size_t i = 0; i < n; ++i) {
            betas.push_back(q(static_cast<long>(i) + 2));
        }
        const auto t = torus_normalize(betas);
        REQUIRE(t.exponents.size() == n);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                mpq_class e = (i == j ? 1 : 0) + t.exponents[i][j] - t.exponents[(i + 1) % n][j] -
                              t.exponents[(i + 2) % n][j];
                CHECK(e == 0);
            }
        }
        for (const auto &k : t.kernel) {
            for (std::size_t i = 0; i + 1 < n; ++i) {
                CHECK(k[i] - k[(i + 1) % n] - k[(i + 2) % n] == 0);
            }
        }
        if (t.alphas) {
            const auto &a = *t.alphas;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                CHECK(betas[i] * a[i] / (a[(i + 1) % n] * a[(i + 2) % n]) == q(1));
            }
        }
    }
    CHECK_THROWS_AS(torus_normalize({q(1), q(0), q(2)}), SynthesisError);
}
