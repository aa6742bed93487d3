#include <polyaut/torus.hpp>

#include <limits>

namespace polyaut
{

LaurentEndo lift(const Endo &f)
{
    std::vector<LaurentPoly> imgs;
    for (const auto &p : f.images()) {
        std::vector<LaurentPoly::Term> terms;
        for (const auto &[m, c] : p.terms()) {
            terms.emplace_back(m, LaurentScalar(c));
        }
        imgs.push_back(LaurentPoly::from_terms(f.ring(), std::move(terms)));
    }
    return LaurentEndo(f.ring(), std::move(imgs), f.affine());
}

Endo limit_at_zero(const LaurentEndo &f)
{
    std::vector<Poly> imgs;
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::vector<Poly::Term> terms;
        for (const auto &[m, c] : f.image(i).terms()) {
            if (c.valuation() < 0) {
                throw TorusError("image of x" + std::to_string(i + 1) + " has a pole at t = 0 in " +
                                 monomial_text(m));
            }
            terms.emplace_back(m, c.at_zero());
        }
        imgs.push_back(Poly::from_terms(f.ring(), std::move(terms)));
    }
    return Endo(f.ring(), std::move(imgs), f.affine());
}

std::vector<LaurentScalar> weight_vector(const FieldSpec &field, const std::vector<int> &w)
{
    std::vector<LaurentScalar> out;
    for (int e : w) {
        out.push_back(LaurentScalar::monomial(Scalar::one(field), e));
    }
    return out;
}

LaurentEndo parameterized_conjugate(const std::vector<int> &w, const Endo &f)
{
    const Ring &ring = f.ring();
    if (w.size() != ring.nvars) {
        throw TorusError("weight vector needs " + std::to_string(ring.nvars) + " entries");
    }
    std::vector<int> neg;
    for (int e : w) {
        neg.push_back(-e);
    }
    const auto d = diagonal_action(ring, weight_vector(ring.field, w));
    const auto dinv = diagonal_action(ring, weight_vector(ring.field, neg));
    return compose(compose(d, lift(f)), dinv);
}

SingularityReport singularity(const std::vector<int> &w, const Endo &f)
{
    SingularityReport rep;
    rep.conjugated = parameterized_conjugate(w, f);
    rep.valuation = std::numeric_limits<int>::max();
    for (std::size_t i = 0; i < rep.conjugated.size(); ++i) {
        for (const auto &[m, c] : rep.conjugated.image(i).terms()) {
            const int v = c.valuation();
            if (v < rep.valuation) {
                rep.valuation = v;
                rep.image = i;
                rep.monomial = m;
            }
        }
    }
    if (rep.valuation == std::numeric_limits<int>::max()) {
        throw TorusError("singularity valuation of the zero map");
    }
    return rep;
}

int singularity_valuation(const std::vector<int> &w, const Endo &f)
{
    return singularity(w, f).valuation;
}

TorusFamily parse_family(const std::string &name)
{
    if (name == "scalar-torus") {
        return TorusFamily::scalar;
    }
    if (name == "T2-weighted") {
        return TorusFamily::t2;
    }
    if (name == "T1-squared") {
        return TorusFamily::squared;
    }
    throw TorusError("unknown torus family '" + name + "' (expected scalar-torus, T2-weighted or T1-squared)");
}

std::string family_name(TorusFamily family)
{
    switch (family) {
    case TorusFamily::scalar:
        return "scalar-torus";
    case TorusFamily::t2:
        return "T2-weighted";
    case TorusFamily::squared:
        return "T1-squared";
    }
    return "";
}

std::vector<std::vector<int>> family_weights(TorusFamily family, std::size_t nvars)
{
    const std::size_t need = family == TorusFamily::scalar ? 1 : family == TorusFamily::t2 ? 3 : 2;
    if (nvars < need) {
        throw TorusError(family_name(family) + " needs at least " + std::to_string(need) + " variables");
    }
    switch (family) {
    case TorusFamily::scalar:
        return {std::vector<int>(nvars, 1)};
    case TorusFamily::t2: {
        std::vector<int> l(nvars, 0), d(nvars, 0);
        l[0] = l[1] = 1;
        d[0] = d[2] = 1;
        return {l, d};
    }
    case TorusFamily::squared: {
        std::vector<int> l(nvars, 0);
        l[0] = 2;
        l[1] = 1;
        return {l};
    }
    }
    return {};
}

CentralizerReport centralizer_check(TorusFamily family, const Endo &f)
{
    const auto subgroups = family_weights(family, f.ring().nvars);
    CentralizerReport rep;
    for (std::size_t s = 0; s < subgroups.size(); ++s) {
        const auto &w = subgroups[s];
        for (std::size_t i = 0; i < f.size(); ++i) {
            for (const auto &[m, c] : f.image(i).terms()) {
                int shift = -w[i];
                for (std::size_t pos = 0; pos < m.degree(); ++pos) {
                    shift += w[m.letter(pos)];
                }
                if (shift != 0) {
                    rep.commutes = false;
                    rep.subgroup = s;
                    rep.image = i;
                    rep.monomial = m;
                    rep.shift = shift;
                    return rep;
                }
            }
        }
    }
    return rep;
}

Endo centralizer_member(TorusFamily family, const Ring &ring, const Scalar &beta, const std::vector<Scalar> &eps)
{
    if (family == TorusFamily::scalar) {
        throw TorusError("the scalar torus centralizer is the linear group; use a linear map");
    }
    family_weights(family, ring.nvars);
    const std::size_t first_free = family == TorusFamily::t2 ? 1 : 2;
    if (eps.size() != ring.nvars - first_free) {
        throw TorusError("centralizer member needs " + std::to_string(ring.nvars - first_free) + " scalings");
    }
    std::vector<Scalar> d(ring.nvars, Scalar::one(ring.field));
    for (std::size_t i = first_free; i < ring.nvars; ++i) {
        d[i] = eps[i - first_free];
    }
    const Monomial m = family == TorusFamily::t2 ? Monomial::from_letters(std::string("\x01\x02", 2), ring.flavor)
                                                 : Monomial::from_letters(std::string("\x01\x01", 2), ring.flavor);
    const Endo e = elementary_endo(ring, 0, Poly::term(ring, m, beta));
    return compose(diagonal_endo(ring, d), e);
}

} // namespace polyaut
