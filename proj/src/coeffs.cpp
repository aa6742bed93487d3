#include <polyaut/coeffs.hpp>

#include <cctype>
#include <ostream>
#include <sstream>
#include <tuple>

namespace polyaut
{

namespace
{

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t reduce(const mpz_class &v, std::uint64_t p)
{
    mpz_class m = v % mpz_class(std::to_string(p));
    if (m < 0) {
        m += mpz_class(std::to_string(p));
    }
    return std::stoull(m.get_str());
}

// Extended Euclid on (a, p); returns a^{-1} mod p.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p)
{
    __int128 old_r = a, r = p, old_s = 1, s = 0;
    while (r != 0) {
        const __int128 q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    if (old_r != 1) {
        throw ArithmeticError("element is not invertible modulo " + std::to_string(p));
    }
    __int128 res = old_s % static_cast<__int128>(p);
    if (res < 0) {
        res += p;
    }
    return static_cast<std::uint64_t>(res);
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p)
{
    if (!is_prime(p)) {
        throw ArithmeticError("modulus " + std::to_string(p) + " is not prime");
    }
    if (p >= (std::uint64_t(1) << 62)) {
        throw ArithmeticError("modulus too large");
    }
    FieldSpec f;
    f.kind_ = FieldKind::prime;
    f.p_ = p;
    return f;
}

std::string FieldSpec::to_string() const
{
    return is_rational() ? std::string("q") : "fp:" + std::to_string(p_);
}

FieldSpec FieldSpec::parse(std::string_view text)
{
    text = trim(text);
    if (text == "q" || text == "Q") {
        return rational();
    }
    if (text.substr(0, 3) == "fp:" && all_digits(text.substr(3))) {
        return prime(std::stoull(std::string(text.substr(3))));
    }
    throw ArithmeticError("bad field spec '" + std::string(text) + "' (expected q or fp:<p>)");
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const FieldSpec &field, long value) : field_(field)
{
    if (field_.is_rational()) {
        q_ = value;
    } else {
        const auto p = static_cast<long long>(field_.modulus());
        long long m = static_cast<long long>(value) % p;
        if (m < 0) {
            m += p;
        }
        r_ = static_cast<std::uint64_t>(m);
    }
}

Scalar::Scalar(const FieldSpec &field, const mpz_class &value) : field_(field)
{
    if (field_.is_rational()) {
        q_ = value;
    } else {
        r_ = reduce(value, field_.modulus());
    }
}

Scalar::Scalar(const FieldSpec &field, const mpq_class &value) : field_(field)
{
    if (value.get_den() == 0) {
        throw ArithmeticError("zero denominator");
    }
    if (field_.is_rational()) {
        // Copy numerator and denominator separately: a non-canonical value
        // (negative denominator) cannot be assigned as a whole.
        q_.get_num() = value.get_num();
        q_.get_den() = value.get_den();
        q_.canonicalize();
    } else {
        const auto p = field_.modulus();
        const auto den = reduce(value.get_den(), p);
        if (den == 0) {
            throw ArithmeticError("denominator vanishes in " + field_.to_string());
        }
        r_ = mulmod(reduce(value.get_num(), p), inverse_mod(den, p), p);
    }
}

bool Scalar::is_zero() const
{
    return field_.is_rational() ? sgn(q_) == 0 : r_ == 0;
}

bool Scalar::is_one() const
{
    return field_.is_rational() ? q_ == 1 : r_ == 1;
}

const mpq_class &Scalar::rational() const
{
    if (!field_.is_rational()) {
        throw ArithmeticError("rational() requested for a residue");
    }
    return q_;
}

std::uint64_t Scalar::residue() const
{
    if (field_.is_rational()) {
        throw ArithmeticError("residue() requested for a rational");
    }
    return r_;
}

void Scalar::check_same_field(const Scalar &o) const
{
    if (field_ != o.field_) {
        throw ArithmeticError("field mismatch: " + field_.to_string() + " vs " + o.field_.to_string());
    }
}

Scalar Scalar::inverse() const
{
    if (is_zero()) {
        throw ArithmeticError("division by zero");
    }
    Scalar res = *this;
    if (field_.is_rational()) {
        res.q_ = 1 / q_;
    } else {
        res.r_ = inverse_mod(r_, field_.modulus());
    }
    return res;
}

Scalar &Scalar::operator+=(const Scalar &o)
{
    check_same_field(o);
    if (field_.is_rational()) {
        q_ += o.q_;
    } else {
        r_ += o.r_;
        if (r_ >= field_.modulus()) {
            r_ -= field_.modulus();
        }
    }
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &o)
{
    check_same_field(o);
    if (field_.is_rational()) {
        q_ -= o.q_;
    } else {
        r_ = r_ >= o.r_ ? r_ - o.r_ : r_ + field_.modulus() - o.r_;
    }
    return *this;
}

Scalar &Scalar::operator*=(const Scalar &o)
{
    check_same_field(o);
    if (field_.is_rational()) {
        q_ *= o.q_;
    } else {
        r_ = mulmod(r_, o.r_, field_.modulus());
    }
    return *this;
}

Scalar &Scalar::operator/=(const Scalar &o)
{
    check_same_field(o);
    return *this *= o.inverse();
}

Scalar Scalar::operator-() const
{
    Scalar res = *this;
    if (field_.is_rational()) {
        res.q_ = -q_;
    } else if (r_ != 0) {
        res.r_ = field_.modulus() - r_;
    }
    return res;
}

bool operator==(const Scalar &a, const Scalar &b)
{
    if (a.field_ != b.field_) {
        return false;
    }
    return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
}

Scalar Scalar::pow(long e) const
{
    if (e < 0) {
        return inverse().pow(-e);
    }
    Scalar base = *this;
    Scalar res = one(field_);
    while (e > 0) {
        if (e & 1) {
            res *= base;
        }
        base *= base;
        e >>= 1;
    }
    return res;
}

std::string Scalar::to_string() const
{
    return field_.is_rational() ? q_.get_str() : std::to_string(r_);
}

Scalar Scalar::parse(const FieldSpec &field, std::string_view text)
{
    text = trim(text);
    bool neg = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        neg = text.front() == '-';
        text = trim(text.substr(1));
    }
    const auto slash = text.find('/');
    const auto num = trim(text.substr(0, slash));
    const auto den = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
    if (!all_digits(num) || !all_digits(den)) {
        throw ArithmeticError("bad scalar literal '" + std::string(text) + "'");
    }
    const mpz_class d{std::string(den)};
    if (d == 0) {
        throw ArithmeticError("division by zero in literal");
    }
    mpq_class q{mpz_class{std::string(num)}, d};
    q.canonicalize();
    if (neg) {
        q = -q;
    }
    return Scalar(field, q);
}

std::ostream &operator<<(std::ostream &os, const Scalar &s)
{
    return os << s.to_string();
}

Scalar scalar_arith(const Scalar &a, const Scalar &b, ScalarOp op)
{
    switch (op) {
        case ScalarOp::add:
            return a + b;
        case ScalarOp::sub:
            return a - b;
        case ScalarOp::mul:
            return a * b;
        case ScalarOp::div:
            return a / b;
    }
    throw ArithmeticError("unknown scalar op");
}

// ---------------------------------------------------------------- LaurentScalar

LaurentScalar::LaurentScalar(const Scalar &c, int exponent) : field_(c.field())
{
    if (!c.is_zero()) {
        terms_.emplace(exponent, c);
    }
}

void LaurentScalar::check_same_field(const LaurentScalar &o) const
{
    if (field_ != o.field_) {
        throw ArithmeticError("field mismatch: " + field_.to_string() + " vs " + o.field_.to_string());
    }
}

void LaurentScalar::add_term(int k, const Scalar &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

bool LaurentScalar::is_one() const
{
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_one();
}

int LaurentScalar::valuation() const
{
    if (terms_.empty()) {
        throw ArithmeticError("valuation of zero is undefined");
    }
    return terms_.begin()->first;
}

Scalar LaurentScalar::at_zero() const
{
    if (!terms_.empty() && terms_.begin()->first < 0) {
        throw ArithmeticError("pole at t = 0 (valuation " + std::to_string(terms_.begin()->first) + ")");
    }
    return coefficient(0);
}

Scalar LaurentScalar::coefficient(int k) const
{
    const auto it = terms_.find(k);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

bool LaurentScalar::is_unit() const
{
    return terms_.size() == 1;
}

LaurentScalar LaurentScalar::inverse() const
{
    if (!is_unit()) {
        throw ArithmeticError("only monomials c*t^k are invertible in the Laurent ring");
    }
    const auto &[k, c] = *terms_.begin();
    return LaurentScalar(c.inverse(), -k);
}

LaurentScalar &LaurentScalar::operator+=(const LaurentScalar &o)
{
    check_same_field(o);
    for (const auto &[k, c] : o.terms_) {
        add_term(k, c);
    }
    return *this;
}

LaurentScalar &LaurentScalar::operator-=(const LaurentScalar &o)
{
    check_same_field(o);
    for (const auto &[k, c] : o.terms_) {
        add_term(k, -c);
    }
    return *this;
}

LaurentScalar &LaurentScalar::operator*=(const LaurentScalar &o)
{
    check_same_field(o);
    LaurentScalar res(field_);
    for (const auto &[k1, c1] : terms_) {
        for (const auto &[k2, c2] : o.terms_) {
            res.add_term(k1 + k2, c1 * c2);
        }
    }
    return *this = std::move(res);
}

LaurentScalar LaurentScalar::operator-() const
{
    LaurentScalar res(field_);
    for (const auto &[k, c] : terms_) {
        res.terms_.emplace(k, -c);
    }
    return res;
}

std::string LaurentScalar::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[k, c] : terms_) {
        std::string coeff = c.to_string();
        bool neg = !coeff.empty() && coeff.front() == '-';
        if (neg) {
            coeff.erase(0, 1);
        }
        if (first) {
            os << (neg ? "-" : "");
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        if (k == 0) {
            os << coeff;
            continue;
        }
        if (coeff != "1") {
            os << coeff << "*";
        }
        os << "t";
        if (k != 1) {
            os << "^" << k;
        }
    }
    return os.str();
}

LaurentScalar LaurentScalar::parse(const FieldSpec &field, std::string_view text)
{
    LaurentScalar res(field);
    text = trim(text);
    if (text.empty()) {
        throw ArithmeticError("empty Laurent literal");
    }
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        while (pos < text.size() && text[pos] == ' ') {
            ++pos;
        }
        bool neg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            neg = text[pos] == '-';
            ++pos;
        } else if (!first) {
            throw ArithmeticError("expected + or - in Laurent literal '" + std::string(text) + "'");
        }
        first = false;
        // term ends at the next top-level +/- that is not an exponent sign
        std::size_t end = pos;
        while (end < text.size()) {
            const char ch = text[end];
            if ((ch == '+' || ch == '-') && end > pos && text[end - 1] != '^') {
                break;
            }
            ++end;
        }
        auto term = trim(text.substr(pos, end - pos));
        pos = end;
        Scalar c = Scalar::one(field);
        int k = 0;
        const auto tpos = term.find('t');
        if (tpos == std::string_view::npos) {
            c = Scalar::parse(field, term);
        } else {
            auto coeff = trim(term.substr(0, tpos));
            if (!coeff.empty()) {
                if (coeff.back() != '*') {
                    throw ArithmeticError("bad Laurent term '" + std::string(term) + "'");
                }
                c = Scalar::parse(field, coeff.substr(0, coeff.size() - 1));
            }
            auto rest = trim(term.substr(tpos + 1));
            k = 1;
            if (!rest.empty()) {
                if (rest.front() != '^') {
                    throw ArithmeticError("bad Laurent term '" + std::string(term) + "'");
                }
                rest = trim(rest.substr(1));
                bool eneg = !rest.empty() && rest.front() == '-';
                if (eneg) {
                    rest.remove_prefix(1);
                }
                if (!all_digits(rest)) {
                    throw ArithmeticError("bad exponent in '" + std::string(term) + "'");
                }
                k = std::stoi(std::string(rest)) * (eneg ? -1 : 1);
            }
        }
        res.add_term(k, neg ? -c : c);
    }
    return res;
}

std::ostream &operator<<(std::ostream &os, const LaurentScalar &s)
{
    return os << s.to_string();
}

int laurent_valuation(const LaurentScalar &x)
{
    return x.valuation();
}

Scalar laurent_at_zero(const LaurentScalar &x)
{
    return x.at_zero();
}

} // namespace polyaut
