#ifndef POLYAUT_MONOMIAL_HPP
#define POLYAUT_MONOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

namespace polyaut
{

enum class Flavor { commutative, noncommutative };

// A monomial is a string of variable indices (0-based, one byte each).
// Commutative monomials keep their letters sorted, so x^J is stored as
// x1..x1 x2..x2 ...; words of the free algebra keep their order.  Both orders
// compare by length first and then lexicographically, which gives the
// degree-lexicographic order for commutative monomials for free.
class Monomial
{
public:
    Monomial() = default;
    explicit Monomial(std::string letters) : letters_(std::move(letters)) {}

    static Monomial variable(std::size_t i) { return Monomial(std::string(1, static_cast<char>(i))); }

    /// Commutative monomial from an exponent vector.
    static Monomial from_exponents(const std::vector<unsigned> &exps)
    {
        std::string s;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            s.append(exps[i], static_cast<char>(i));
        }
        return Monomial(std::move(s));
    }

    /// Normalizes letters for the given flavor (sorts when commutative).
    static Monomial from_letters(std::string letters, Flavor flavor)
    {
        if (flavor == Flavor::commutative) {
            std::sort(letters.begin(), letters.end());
        }
        return Monomial(std::move(letters));
    }

    const std::string &letters() const { return letters_; }
    std::size_t degree() const { return letters_.size(); }
    bool is_unit() const { return letters_.empty(); }
    std::size_t letter(std::size_t pos) const { return static_cast<unsigned char>(letters_[pos]); }

    bool contains(std::size_t var) const { return letters_.find(static_cast<char>(var)) != std::string::npos; }
    std::size_t count(std::size_t var) const
    {
        return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), static_cast<char>(var)));
    }

    std::vector<unsigned> exponents(std::size_t nvars) const
    {
        std::vector<unsigned> e(nvars, 0);
        for (char c : letters_) {
            ++e[static_cast<unsigned char>(c)];
        }
        return e;
    }

    /// Maximal runs of a repeated letter, e.g. x x y x -> (x,2)(y,1)(x,1).
    std::vector<std::pair<std::size_t, std::size_t>> blocks() const
    {
        std::vector<std::pair<std::size_t, std::size_t>> res;
        for (std::size_t i = 0; i < letters_.size();) {
            std::size_t j = i;
            while (j < letters_.size() && letters_[j] == letters_[i]) {
                ++j;
            }
            res.emplace_back(letter(i), j - i);
            i = j;
        }
        return res;
    }

    static Monomial product(const Monomial &a, const Monomial &b, Flavor flavor)
    {
        std::string s;
        s.reserve(a.letters_.size() + b.letters_.size());
        if (flavor == Flavor::commutative) {
            std::merge(a.letters_.begin(), a.letters_.end(), b.letters_.begin(), b.letters_.end(),
                       std::back_inserter(s));
        } else {
            s = a.letters_;
            s += b.letters_;
        }
        return Monomial(std::move(s));
    }

    friend bool operator==(const Monomial &a, const Monomial &b) { return a.letters_ == b.letters_; }
    friend bool operator!=(const Monomial &a, const Monomial &b) { return a.letters_ != b.letters_; }
    friend bool operator<(const Monomial &a, const Monomial &b)
    {
        if (a.letters_.size() != b.letters_.size()) {
            return a.letters_.size() < b.letters_.size();
        }
        return a.letters_ < b.letters_;
    }

private:
    std::string letters_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial &m) const { return std::hash<std::string>{}(m.letters()); }
};

} // namespace polyaut

#endif
