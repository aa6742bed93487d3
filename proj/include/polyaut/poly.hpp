#ifndef POLYAUT_POLY_HPP
#define POLYAUT_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <polyaut/coeffs.hpp>
#include <polyaut/monomial.hpp>

namespace polyaut
{

/// "No truncation" sentinel for degree caps.
inline constexpr int kNoCap = std::numeric_limits<int>::max();

/// Polynomial context: flavor, number of variables, ground field.
struct Ring {
    Flavor flavor = Flavor::commutative;
    std::size_t nvars = 0;
    FieldSpec field;

    bool commutative() const { return flavor == Flavor::commutative; }

    friend bool operator==(const Ring &a, const Ring &b)
    {
        return a.flavor == b.flavor && a.nvars == b.nvars && a.field == b.field;
    }
    friend bool operator!=(const Ring &a, const Ring &b) { return !(a == b); }
};

inline Ring comm_ring(std::size_t n, const FieldSpec &f = FieldSpec::rational())
{
    return Ring{Flavor::commutative, n, f};
}
inline Ring nc_ring(std::size_t n, const FieldSpec &f = FieldSpec::rational())
{
    return Ring{Flavor::noncommutative, n, f};
}

class PolyError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline std::string coeff_text(const Scalar &c) { return c.to_string(); }
inline std::string coeff_text(const LaurentScalar &c)
{
    return c.terms().size() > 1 ? "(" + c.to_string() + ")" : c.to_string();
}

// Canonical variable names x1..xn.
inline std::string monomial_text(const Monomial &m)
{
    std::string s;
    for (const auto &[v, e] : m.blocks()) {
        if (!s.empty()) {
            s += '*';
        }
        s += 'x' + std::to_string(v + 1);
        if (e > 1) {
            s += '^' + std::to_string(e);
        }
    }
    return s;
}

/// Sparse polynomial with coefficients C (Scalar or LaurentScalar).  Terms
/// are kept sorted by the monomial order, with no zero coefficients.
template <class C>
class BasicPoly
{
public:
    using Coeff = C;
    using Term = std::pair<Monomial, C>;

    BasicPoly() = default;
    explicit BasicPoly(const Ring &ring) : ring_(ring) {}

    static BasicPoly constant(const Ring &ring, const C &c) { return term(ring, Monomial(), c); }
    static BasicPoly one(const Ring &ring) { return constant(ring, C::one(ring.field)); }
    static BasicPoly variable(const Ring &ring, std::size_t i)
    {
        if (i >= ring.nvars) {
            throw PolyError("variable index out of range");
        }
        return term(ring, Monomial::variable(i), C::one(ring.field));
    }
    static BasicPoly term(const Ring &ring, Monomial m, const C &c)
    {
        BasicPoly p(ring);
        if (!c.is_zero()) {
            p.terms_.emplace_back(std::move(m), c);
        }
        return p;
    }
    /// Sorts, merges duplicates, drops zeros.  Monomials must already be
    /// normalized for the flavor.
    static BasicPoly from_terms(const Ring &ring, std::vector<Term> terms)
    {
        BasicPoly p(ring);
        std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return a.first < b.first; });
        for (auto &t : terms) {
            if (!p.terms_.empty() && p.terms_.back().first == t.first) {
                p.terms_.back().second += t.second;
            } else {
                if (!p.terms_.empty() && p.terms_.back().second.is_zero()) {
                    p.terms_.pop_back();
                }
                p.terms_.push_back(std::move(t));
            }
        }
        if (!p.terms_.empty() && p.terms_.back().second.is_zero()) {
            p.terms_.pop_back();
        }
        return p;
    }

    const Ring &ring() const { return ring_; }
    const std::vector<Term> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    /// -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.back().first.degree()); }
    /// Lowest degree present; -1 for zero.
    int order() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.degree()); }

    C coefficient(const Monomial &m) const
    {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                                   [](const Term &t, const Monomial &key) { return t.first < key; });
        return it != terms_.end() && it->first == m ? it->second : C::zero(ring_.field);
    }
    C constant_term() const { return coefficient(Monomial()); }

    bool involves(std::size_t var) const
    {
        return std::any_of(terms_.begin(), terms_.end(), [var](const Term &t) { return t.first.contains(var); });
    }

    /// Terms of degree in [lo, hi).
    BasicPoly degree_range(int lo, int hi) const
    {
        BasicPoly p(ring_);
        for (const auto &t : terms_) {
            const int d = static_cast<int>(t.first.degree());
            if (d >= lo && d < hi) {
                p.terms_.push_back(t);
            }
        }
        return p;
    }
    /// Drops every monomial of degree >= m (computation in A/I^m).
    BasicPoly truncated(int m) const { return degree_range(0, m); }
    BasicPoly homogeneous(int d) const { return degree_range(d, d + 1); }

    template <class F>
    BasicPoly filtered(F keep) const
    {
        BasicPoly p(ring_);
        for (const auto &t : terms_) {
            if (keep(t)) {
                p.terms_.push_back(t);
            }
        }
        return p;
    }

    BasicPoly &operator+=(const BasicPoly &o) { return *this = combine(*this, o, false); }
    BasicPoly &operator-=(const BasicPoly &o) { return *this = combine(*this, o, true); }
    friend BasicPoly operator+(const BasicPoly &a, const BasicPoly &b) { return combine(a, b, false); }
    friend BasicPoly operator-(const BasicPoly &a, const BasicPoly &b) { return combine(a, b, true); }
    friend BasicPoly operator*(const BasicPoly &a, const BasicPoly &b) { return multiply(a, b, kNoCap); }
    BasicPoly &operator*=(const BasicPoly &o) { return *this = multiply(*this, o, kNoCap); }

    BasicPoly operator-() const
    {
        BasicPoly p = *this;
        for (auto &t : p.terms_) {
            t.second = -t.second;
        }
        return p;
    }

    BasicPoly scaled(const C &c) const
    {
        if (c.is_zero()) {
            return BasicPoly(ring_);
        }
        BasicPoly p = *this;
        for (auto &t : p.terms_) {
            t.second *= c;
        }
        // Over a field this never creates zeros; Laurent products of nonzero
        // elements are nonzero too.
        return p;
    }

    friend bool operator==(const BasicPoly &a, const BasicPoly &b)
    {
        return a.ring_ == b.ring_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const BasicPoly &a, const BasicPoly &b) { return !(a == b); }

    /// Product with every monomial of degree >= cap discarded.
    static BasicPoly multiply(const BasicPoly &a, const BasicPoly &b, int cap)
    {
        check_same(a, b);
        BasicPoly res(a.ring_);
        if (a.is_zero() || b.is_zero()) {
            return res;
        }
        std::unordered_map<Monomial, C, MonomialHash> acc;
        acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 20));
        for (const auto &[ma, ca] : a.terms_) {
            const auto da = static_cast<long>(ma.degree());
            for (const auto &[mb, cb] : b.terms_) {
                if (da + static_cast<long>(mb.degree()) >= cap) {
                    break;
                }
                auto m = Monomial::product(ma, mb, a.ring_.flavor);
                auto it = acc.find(m);
                if (it == acc.end()) {
                    acc.emplace(std::move(m), ca * cb);
                } else {
                    it->second += ca * cb;
                }
            }
        }
        res.terms_.reserve(acc.size());
        for (auto &[m, c] : acc) {
            if (!c.is_zero()) {
                res.terms_.emplace_back(m, std::move(c));
            }
        }
        std::sort(res.terms_.begin(), res.terms_.end(),
                  [](const Term &x, const Term &y) { return x.first < y.first; });
        return res;
    }

    BasicPoly pow(unsigned e, int cap = kNoCap) const
    {
        BasicPoly res = one(ring_).truncated(cap);
        BasicPoly base = truncated(cap);
        while (e > 0) {
            if (e & 1u) {
                res = multiply(res, base, cap);
            }
            e >>= 1;
            if (e > 0) {
                base = multiply(base, base, cap);
            }
        }
        return res;
    }

    /// Canonical text: ascending monomial order, names x1..xn.
    std::string to_string() const
    {
        if (terms_.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (const auto &[m, c] : terms_) {
            std::string ct = coeff_text(c);
            bool neg = !ct.empty() && ct.front() == '-';
            if (neg) {
                ct.erase(0, 1);
            }
            if (first) {
                os << (neg ? "-" : "");
            } else {
                os << (neg ? " - " : " + ");
            }
            first = false;
            if (m.is_unit()) {
                os << ct;
            } else if (ct == "1") {
                os << monomial_text(m);
            } else {
                os << ct << '*' << monomial_text(m);
            }
        }
        return os.str();
    }

private:
    static void check_same(const BasicPoly &a, const BasicPoly &b)
    {
        if (a.ring_ != b.ring_) {
            throw PolyError("polynomial context mismatch");
        }
    }

    static BasicPoly combine(const BasicPoly &a, const BasicPoly &b, bool subtract)
    {
        check_same(a, b);
        BasicPoly res(a.ring_);
        res.terms_.reserve(a.size() + b.size());
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
                res.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->first < i->first) {
                res.terms_.emplace_back(j->first, subtract ? -j->second : j->second);
                ++j;
            } else {
                C c = subtract ? i->second - j->second : i->second + j->second;
                if (!c.is_zero()) {
                    res.terms_.emplace_back(i->first, std::move(c));
                }
                ++i;
                ++j;
            }
        }
        return res;
    }

    Ring ring_;
    std::vector<Term> terms_;
};

namespace detail
{

// Horner evaluation over the trie of lexicographically sorted words:
// sum_w c_w w = c_e + sum_L L * (sum over words starting with L of the rest).
template <class C>
BasicPoly<C> substitute_range(const std::vector<const std::pair<Monomial, C> *> &terms, std::size_t lo,
                              std::size_t hi, std::size_t depth, const std::vector<BasicPoly<C>> &images,
                              const Ring &target, int cap, int min_order)
{
    // Everything built at this depth is later multiplied by depth images of
    // order >= min_order.
    const int local = cap == kNoCap ? cap : cap - static_cast<int>(depth) * min_order;
    BasicPoly<C> res(target);
    if (local <= 0) {
        return res;
    }
    std::size_t i = lo;
    if (i < hi && terms[i]->first.degree() == depth) {
        res = BasicPoly<C>::constant(target, terms[i]->second);
        ++i;
    }
    while (i < hi) {
        const std::size_t letter = terms[i]->first.letter(depth);
        std::size_t j = i;
        while (j < hi && terms[j]->first.letter(depth) == letter) {
            ++j;
        }
        auto rest = substitute_range(terms, i, j, depth + 1, images, target, cap, min_order);
        res += BasicPoly<C>::multiply(images[letter], rest, local);
        i = j;
    }
    return res;
}

} // namespace detail

/// f with x_i replaced by images[i], expanded; monomials of degree >= cap
/// dropped (exact when cap = kNoCap).
template <class C>
BasicPoly<C> substitute(const BasicPoly<C> &f, const std::vector<BasicPoly<C>> &images, int cap = kNoCap)
{
    if (images.size() != f.ring().nvars) {
        throw PolyError("substitution needs one image per variable");
    }
    if (images.empty()) {
        throw PolyError("substitution into a ring without variables");
    }
    const Ring &target = images.front().ring();
    for (const auto &img : images) {
        if (img.ring() != target) {
            throw PolyError("substitution images live in different rings");
        }
    }
    if (target.flavor != f.ring().flavor || target.field != f.ring().field) {
        throw PolyError("substitution changes flavor or field");
    }
    std::vector<const std::pair<Monomial, C> *> order;
    order.reserve(f.size());
    for (const auto &t : f.terms()) {
        order.push_back(&t);
    }
    std::sort(order.begin(), order.end(),
              [](const auto *a, const auto *b) { return a->first.letters() < b->first.letters(); });
    int min_order = std::numeric_limits<int>::max();
    for (const auto &img : images) {
        min_order = std::min(min_order, img.is_zero() ? min_order : img.order());
    }
    if (min_order == std::numeric_limits<int>::max()) {
        min_order = 0;
    }
    return detail::substitute_range(order, 0, order.size(), 0, images, target, cap, min_order);
}

using Poly = BasicPoly<Scalar>;
using LaurentPoly = BasicPoly<LaurentScalar>;

} // namespace polyaut

#endif
