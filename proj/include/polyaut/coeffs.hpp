#ifndef POLYAUT_COEFFS_HPP
#define POLYAUT_COEFFS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace polyaut
{

// Raised for any violation of an arithmetic precondition: mismatched fields,
// division by zero, poles, malformed moduli.
class ArithmeticError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class FieldKind { rational, prime };

/// Ground field: either the rationals or a prime field F_p.
class FieldSpec
{
public:
    FieldSpec() = default;

    static FieldSpec rational() { return FieldSpec{}; }
    /// Throws ArithmeticError unless p is prime (trial division up to sqrt(p)).
    static FieldSpec prime(std::uint64_t p);

    FieldKind kind() const { return kind_; }
    bool is_rational() const { return kind_ == FieldKind::rational; }
    std::uint64_t modulus() const { return p_; }
    std::uint64_t characteristic() const { return p_; }

    friend bool operator==(const FieldSpec &a, const FieldSpec &b) { return a.kind_ == b.kind_ && a.p_ == b.p_; }
    friend bool operator!=(const FieldSpec &a, const FieldSpec &b) { return !(a == b); }

    /// `q` or `fp:<p>`.
    std::string to_string() const;
    static FieldSpec parse(std::string_view text);

private:
    FieldKind kind_ = FieldKind::rational;
    std::uint64_t p_ = 0;
};

bool is_prime(std::uint64_t n);

/// Exact element of a FieldSpec. Rationals are kept reduced with positive
/// denominator (mpq canonical form); residues live in [0, p).
class Scalar
{
public:
    Scalar() = default;
    Scalar(const FieldSpec &field, long value);
    Scalar(const FieldSpec &field, const mpz_class &value);
    Scalar(const FieldSpec &field, const mpq_class &value);

    static Scalar zero(const FieldSpec &field) { return Scalar(field, 0L); }
    static Scalar one(const FieldSpec &field) { return Scalar(field, 1L); }

    const FieldSpec &field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    /// Rational value; only valid over Q.
    const mpq_class &rational() const;
    /// Residue; only valid over F_p.
    std::uint64_t residue() const;

    Scalar inverse() const;

    Scalar &operator+=(const Scalar &o);
    Scalar &operator-=(const Scalar &o);
    Scalar &operator*=(const Scalar &o);
    Scalar &operator/=(const Scalar &o);

    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
    Scalar operator-() const;

    friend bool operator==(const Scalar &a, const Scalar &b);
    friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }

    Scalar pow(long e) const;

    std::string to_string() const;
    /// Integer or `a/b`, optionally signed. Fractions are reduced on entry.
    static Scalar parse(const FieldSpec &field, std::string_view text);

private:
    void check_same_field(const Scalar &o) const;

    FieldSpec field_;
    mpq_class q_;
    std::uint64_t r_ = 0;
};

std::ostream &operator<<(std::ostream &os, const Scalar &s);

enum class ScalarOp { add, sub, mul, div };
Scalar scalar_arith(const Scalar &a, const Scalar &b, ScalarOp op);

/// Finitely supported Laurent polynomial in a central parameter t.
/// Zero coefficients are never stored.
class LaurentScalar
{
public:
    LaurentScalar() = default;
    explicit LaurentScalar(const FieldSpec &field) : field_(field) {}
    explicit LaurentScalar(const Scalar &c, int exponent = 0);

    static LaurentScalar zero(const FieldSpec &field) { return LaurentScalar(field); }
    static LaurentScalar one(const FieldSpec &field) { return LaurentScalar(Scalar::one(field)); }
    /// c * t^k
    static LaurentScalar monomial(const Scalar &c, int k) { return LaurentScalar(c, k); }

    const FieldSpec &field() const { return field_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    const std::map<int, Scalar> &terms() const { return terms_; }

    /// Smallest exponent with a nonzero coefficient. Throws on zero.
    int valuation() const;
    /// Coefficient of t^0. Throws if there is a pole at t = 0.
    Scalar at_zero() const;
    Scalar coefficient(int k) const;

    /// Only monomials c*t^k are units in the Laurent ring.
    bool is_unit() const;
    LaurentScalar inverse() const;

    LaurentScalar &operator+=(const LaurentScalar &o);
    LaurentScalar &operator-=(const LaurentScalar &o);
    LaurentScalar &operator*=(const LaurentScalar &o);

    friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar &b) { return a += b; }
    friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar &b) { return a -= b; }
    friend LaurentScalar operator*(LaurentScalar a, const LaurentScalar &b) { return a *= b; }
    LaurentScalar operator-() const;

    friend bool operator==(const LaurentScalar &a, const LaurentScalar &b)
    {
        return a.field_ == b.field_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentScalar &a, const LaurentScalar &b) { return !(a == b); }

    /// e.g. `t^-1 + 3 + 2*t^2`; zero prints as `0`.
    std::string to_string() const;
    static LaurentScalar parse(const FieldSpec &field, std::string_view text);

private:
    void check_same_field(const LaurentScalar &o) const;
    void add_term(int k, const Scalar &c);

    FieldSpec field_;
    std::map<int, Scalar> terms_;
};

std::ostream &operator<<(std::ostream &os, const LaurentScalar &s);

int laurent_valuation(const LaurentScalar &x);
Scalar laurent_at_zero(const LaurentScalar &x);

} // namespace polyaut

#endif
