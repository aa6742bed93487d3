#include <doctest.h>

#include <algorithm>

#include <polyaut/polyops.hpp>
#include <polyaut/text.hpp>

#include <polyaut/gen.hpp>

using namespace polyaut;

namespace
{

const FieldSpec Q = FieldSpec::rational();
const Ring C2 = comm_ring(2), C3 = comm_ring(3), N2 = nc_ring(2), N3 = nc_ring(3);

Poly P(const Ring &r, const char *s)
{
    return parse_poly(r, s);
}

Scalar q(long a, long b = 1)
{
    return Scalar(Q, mpq_class(mpz_class(a), mpz_class(b)));
}

} // namespace

TEST_CASE("arithmetic in both flavors")
{
    CHECK((P(C2, "x+y") * P(C2, "x-y")) == P(C2, "x^2 - y^2"));
    CHECK((P(N2, "x+y") * P(N2, "x-y")) == P(N2, "x*x - x*y + y*x - y*y"));
    CHECK((P(N2, "x+y") * P(N2, "x-y")).size() == 4);
    CHECK(P(C2, "(x1+x2)^2 - x1^2 - x2^2") == P(C2, "2*x1*x2"));
    CHECK_THROWS_AS(P(C2, "x") + P(N2, "x"), PolyError);
}

TEST_CASE("canonical printing")
{
    CHECK(P(C2, "x^3 + y*x").to_string() == "x1*x2 + x1^3");
    CHECK(P(N2, "y*x*x - 1/2*x").to_string() == "-1/2*x1 + x2*x1^2");
    CHECK(P(comm_ring(2, FieldSpec::prime(7)), "-1").to_string() == "6");
    CHECK(Poly(C2).to_string() == "0");
}

TEST_CASE("substitution")
{
    CHECK(substitute(P(C2, "x*y"), {P(C2, "x"), P(C2, "y+x^2")}) == P(C2, "x*y + x^3"));
    CHECK(substitute(P(N2, "x*y"), {P(N2, "y"), P(N2, "x")}) == P(N2, "y*x"));
    // P = x3 x1 with x3 -> x3 + Q3(x1, x2), Q3 = x1 x2.
    const Ring r = nc_ring(3);
    CHECK(substitute(P(r, "x3*x1"), {P(r, "x1"), P(r, "x2"), P(r, "x3 + x1*x2")}) == P(r, "x3*x1 + x1*x2*x1"));
}

TEST_CASE("truncation")
{
    CHECK(P(C2, "x + x^3").truncated(3) == P(C2, "x"));
    CHECK(P(C2, "x + x^3").truncated(0).is_zero());
    CHECK(P(N2, "(x+y^2)^2").truncated(4) == P(N2, "x^2 + x*y^2 + y^2*x"));
}

TEST_CASE("commutators, star products, associators")
{
    const StarProduct s{q(1), q(3)};
    CHECK(commutator(P(N3, "x"), P(N3, "y")) == P(N3, "x*y - y*x"));
    CHECK(commutator(P(N3, "x"), P(N3, "x^2")).is_zero());
    CHECK(commutator(P(N3, "y"), commutator(P(N3, "x"), P(N3, "z"))) ==
          P(N3, "y*x*z - y*z*x - x*z*y + z*x*y"));
    CHECK_THROWS_AS(commutator(P(C3, "x"), P(C3, "y")), PolyError);

    CHECK(star(P(N3, "x"), P(N3, "y"), s) == P(N3, "x*y + 3*y*x"));
    CHECK(star(P(N3, "x"), P(N3, "y"), {q(1), q(0)}) == P(N3, "x*y"));
    const Poly xxy = star(star(P(N3, "x"), P(N3, "x"), s), P(N3, "y"), s) -
                     star(P(N3, "x"), star(P(N3, "x"), P(N3, "y"), s), s);
    CHECK(xxy == P(N3, "3*(x*x*y - 2*x*y*x + y*x*x)"));
    CHECK(xxy == commutator(P(N3, "x"), commutator(P(N3, "x"), P(N3, "y"))).scaled(q(3)));

    CHECK(associator(P(N3, "x"), P(N3, "y"), P(N3, "x"), s).is_zero());
    CHECK(associator(P(N3, "x"), P(N3, "y"), P(N3, "z"), {q(1), q(0)}).is_zero());
    CHECK(associator(P(N3, "x"), P(N3, "y"), P(N3, "z"), {q(1), q(1)}) ==
          commutator(P(N3, "y"), commutator(P(N3, "x"), P(N3, "z"))));
}

TEST_CASE("associator identity on random triples")
{
    gen::Rng rng(21);
    for (const auto &f : {Q, FieldSpec::prime(101)}) {
        const Ring r = nc_ring(3, f);
        for (int i = 0; i < 40; ++i) {
            const auto a = gen::poly(rng, r, 0, 3, 4), b = gen::poly(rng, r, 0, 3, 4), c = gen::poly(rng, r, 0, 3, 4);
            const Scalar lambda = gen::scalar(rng, f);
            CHECK(associator(a, b, c, {Scalar::one(f), lambda}) == commutator(b, commutator(a, c)).scaled(lambda));
        }
    }
}

TEST_CASE("ring axioms on random triples")
{
    gen::Rng rng(2);
    for (const auto &r : {C3, N3}) {
        for (int i = 0; i < 100; ++i) {
            const auto a = gen::poly(rng, r, 0, 3, 4), b = gen::poly(rng, r, 0, 3, 4), c = gen::poly(rng, r, 0, 3, 4);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a + b) * c == a * c + b * c);
            CHECK(Poly::from_terms(r, (a * b).terms()) == a * b);
            const int m = static_cast<int>(gen::uniform(rng, 0, 6));
            CHECK((a * b).truncated(m) == (a.truncated(m) * b.truncated(m)).truncated(m));
            CHECK(Poly::multiply(a, b, m) == (a * b).truncated(m));
        }
    }
}

TEST_CASE("substitution is a ring homomorphism")
{
    gen::Rng rng(4);
    for (const auto &r : {C3, N3}) {
        for (int i = 0; i < 50; ++i) {
            const auto a = gen::poly(rng, r, 0, 3, 4), b = gen::poly(rng, r, 0, 3, 4);
            std::vector<Poly> imgs;
            for (std::size_t v = 0; v < r.nvars; ++v) {
                imgs.push_back(gen::poly(rng, r, 1, 2, 3));
            }
            CHECK(substitute(a * b, imgs) == substitute(a, imgs) * substitute(b, imgs));
            CHECK(substitute(a + b, imgs) == substitute(a, imgs) + substitute(b, imgs));
            CHECK(substitute(a * b, imgs, 5) == (substitute(a, imgs) * substitute(b, imgs)).truncated(5));
        }
    }
}

TEST_CASE("derivations")
{
    std::vector<Poly> d{Poly(N3), P(N3, "z*x^2"), Poly(N3)};
    CHECK(nc_derivation(d, P(N3, "y")) == P(N3, "z*x^2"));
    CHECK(nc_derivation(d, P(N3, "x*y")) == P(N3, "x*z*x^2"));
    CHECK(nc_derivation(d, P(N3, "y*y")) == P(N3, "z*x^2*y + y*z*x^2"));

    gen::Rng rng(9);
    for (int i = 0; i < 50; ++i) {
        std::vector<Poly> imgs;
        for (std::size_t v = 0; v < 3; ++v) {
            imgs.push_back(gen::poly(rng, N3, 0, 2, 3));
        }
        const auto a = gen::poly(rng, N3, 0, 3, 4), b = gen::poly(rng, N3, 0, 3, 4);
        CHECK(nc_derivation(imgs, a * b) == nc_derivation(imgs, a) * b + a * nc_derivation(imgs, b));
    }
}

TEST_CASE("support splitting and lex-minimal terms")
{
    const auto [in, out] = split_by_support(P(C3, "x1*x3 + x1*x2"), {2});
    CHECK(in == P(C3, "x1*x3"));
    CHECK(out == P(C3, "x1*x2"));
    const auto [in2, out2] = split_by_support(P(C3, "x1*x2"), {2});
    CHECK(in2.is_zero());
    CHECK(out2 == P(C3, "x1*x2"));

    const Ring r = nc_ring(3);
    const Poly pq = substitute(P(r, "x3*x1"), {P(r, "x1"), P(r, "x2"), P(r, "x3 + x1*x2")});
    const auto [a, b] = split_by_support(pq, {2});
    CHECK(a == P(r, "x3*x1"));
    CHECK(b == P(r, "x1*x2*x1"));

    const auto t1 = lex_min_term(P(N2, "x1*x2 + x2*x1"), {0, 1});
    CHECK(t1.first.letters() == std::string("\x00\x01", 2));
    const auto t2 = lex_min_term(P(C2, "x1 + x2^2"), {0, 1});
    CHECK(t2.first == Monomial::from_exponents({0, 2}));
    const auto t3 = lex_min_term(P(C2, "3*x1^2"), {0, 1});
    CHECK(t3.second == q(3));
    CHECK_THROWS_AS(lex_min_term(Poly(C2), {0, 1}), PolyError);
}

TEST_CASE("parser errors")
{
    CHECK_THROWS_AS(P(C3, "x*w"), ParseError);
    CHECK_THROWS_AS(P(C3, "x y"), ParseError);
    CHECK_THROWS_AS(P(C3, "2x"), ParseError);
    CHECK_THROWS_AS(P(C3, "(x+y"), ParseError);
    CHECK_THROWS_AS(P(C3, "x^-1"), ParseError);
    CHECK_THROWS_AS(P(C3, "t"), ParseError);
    CHECK_THROWS_AS(P(C3, "1/0"), ParseError);
    try {
        P(C3, "x + w");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.column() == 5);
    }
    CHECK(P(comm_ring(5), "x5 - t") == Poly::variable(comm_ring(5), 4) - Poly::variable(comm_ring(5), 3));
}

TEST_CASE("printer round trip")
{
    gen::Rng rng(12);
    for (const auto &f : {Q, FieldSpec::prime(7)}) {
        for (const auto &r : {comm_ring(4, f), nc_ring(4, f)}) {
            for (int i = 0; i < 100; ++i) {
                const auto a = gen::poly(rng, r, 0, 5, 6);
                CHECK(parse_poly(r, a.to_string()) == a);
            }
        }
    }
}

TEST_CASE("partial derivatives")
{
    CHECK(partial_derivative(P(C3, "x^3*y + z"), 0) == P(C3, "3*x^2*y"));
    CHECK(partial_derivative(P(C3, "x^3*y + z"), 2) == P(C3, "1"));
    CHECK_THROWS_AS(partial_derivative(P(N3, "x"), 0), PolyError);
}

TEST_CASE("star product is associative exactly when a*b = 0")
{
    const Ring r = nc_ring(3);
    const Poly x = P(r, "x"), y = P(r, "y"), z = P(r, "z");
    for (long a = -2; a <= 2; ++a) {
        for (long b = -2; b <= 2; ++b) {
            const Poly assoc = associator(x, y, z, {q(a), q(b)});
            CHECK(assoc.is_zero() == (a * b == 0));
        }
    }
}

TEST_CASE("substituting separating powers keeps the two-variable part nonzero")
{
    // n = 5: P in x1, x2, x3; x3 -> x3 + Q3, x4 -> x4 + Q4 with
    // Q_i = x1^(2^(i+1) m) x2^(2^(i+1) m), m = deg P.
    const Ring r = nc_ring(5);
    gen::Rng rng(30);
    for (int i = 0; i < 50; ++i) {
        const Poly p = gen::poly(rng, r, 1, 3, 3, 3);
        if (p.is_zero()) {
            continue;
        }
        const unsigned m = static_cast<unsigned>(p.degree());
        std::vector<Poly> imgs;
        for (std::size_t v = 0; v < 5; ++v) {
            Poly img = Poly::variable(r, v);
            if (v == 2 || v == 3) {
                const unsigned e = (1u << (v + 2)) * m;
                std::string s(e, '\0');
                s += std::string(e, '\1');
                img += Poly::term(r, Monomial::from_letters(s, Flavor::noncommutative), Scalar::one(Q));
            }
            imgs.push_back(img);
        }
        const auto [with_q_vars, two_var] = split_by_support(substitute(p, imgs), {2, 3});
        CHECK(!two_var.is_zero());
        // Every letter x3 becomes a word of degree 32m, and the leading words
        // cannot cancel, so the degree is the largest weighted length.
        int top = 0;
        for (const auto &[mono, c] : p.terms()) {
            top = std::max(top, static_cast<int>(mono.degree() + mono.count(2) * (32 * m - 1)));
        }
        CHECK(two_var.degree() == top);
    }
}

TEST_CASE("canonical form is idempotent")
{
    gen::Rng rng(31);
    for (const auto &r : {C3, N3, comm_ring(3, FieldSpec::prime(7))}) {
        for (int i = 0; i < 50; ++i) {
            const Poly a = gen::poly(rng, r, 0, 4, 6), b = gen::poly(rng, r, 0, 3, 4);
            for (const Poly &p : {a, a * b, a - b, substitute(a, {b, b, b})}) {
                const Poly again = Poly::from_terms(r, p.terms());
                CHECK(again == p);
                CHECK(again.to_string() == p.to_string());
                CHECK(parse_poly(r, format_poly(p)) == p);
            }
        }
    }
}
