#include <polyaut/approx.hpp>

#include <map>
#include <random>

#include <polyaut/linalg.hpp>
#include <polyaut/polyops.hpp>

namespace polyaut
{

namespace
{

void require_char0_comm(const Ring &ring, const char *what)
{
    if (!ring.commutative()) {
        throw ApproxError(std::string(what) + " needs a commutative ring");
    }
    if (!ring.field.is_rational()) {
        throw ApproxError(std::string(what) + " needs characteristic 0");
    }
}

void require_level(const Endo &f, int k)
{
    if (k < 1) {
        throw ApproxError("filtration degree must be positive");
    }
    if (k >= 2 && filtration(f, k).level < k) {
        throw ApproxError("map is not in H_" + std::to_string(k));
    }
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree)
{
    std::vector<Monomial> out;
    std::vector<unsigned> e(nvars, 0);
    const auto rec = [&](auto &self, std::size_t var, unsigned left) -> void {
        if (var + 1 == nvars) {
            e[var] = left;
            out.push_back(Monomial::from_exponents(e));
            return;
        }
        for (unsigned a = 0; a <= left; ++a) {
            e[var] = a;
            self(self, var + 1, left - a);
        }
    };
    if (nvars > 0) {
        rec(rec, 0, degree);
    }
    return out;
}

// Coordinates of a vector of degree-k homogeneous polynomials.
class Coordinates
{
public:
    Coordinates(const Ring &ring, int k) : ring_(ring), monos_(monomials_of_degree(ring.nvars, k))
    {
        for (std::size_t j = 0; j < monos_.size(); ++j) {
            index_[monos_[j]] = j;
        }
    }

    std::size_t dim() const { return ring_.nvars * monos_.size(); }

    std::vector<Scalar> encode(const std::vector<Poly> &v) const
    {
        std::vector<Scalar> out(dim(), Scalar::zero(ring_.field));
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (const auto &[m, c] : v[i].terms()) {
                out[i * monos_.size() + index_.at(m)] = c;
            }
        }
        return out;
    }

    std::vector<Poly> decode(const std::vector<Scalar> &x) const
    {
        std::vector<Poly> out;
        for (std::size_t i = 0; i < ring_.nvars; ++i) {
            std::vector<Poly::Term> terms;
            for (std::size_t j = 0; j < monos_.size(); ++j) {
                terms.emplace_back(monos_[j], x[i * monos_.size() + j]);
            }
            out.push_back(Poly::from_terms(ring_, std::move(terms)));
        }
        return out;
    }

private:
    Ring ring_;
    std::vector<Monomial> monos_;
    std::map<Monomial, std::size_t> index_;
};

std::vector<Poly> leading_deviation(const Endo &f, int k)
{
    std::vector<Poly> out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        Poly p = f.image(i).homogeneous(k);
        if (k == 1) {
            p -= Poly::variable(f.ring(), i);
        }
        out.push_back(std::move(p));
    }
    return out;
}

Matrix random_invertible(std::mt19937_64 &rng, const FieldSpec &field, std::size_t n)
{
    std::uniform_int_distribution<long> dist(-2, 2);
    while (true) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = Scalar(field, dist(rng));
            }
        }
        if (!m.determinant().is_zero()) {
            return m;
        }
    }
}

// Remainder of v after reduction by the span of the columns.
std::vector<Scalar> reduce_by_span(const std::vector<std::vector<Scalar>> &cols, std::vector<Scalar> v)
{
    std::vector<std::pair<std::size_t, std::vector<Scalar>>> basis;
    const auto reduce = [&](std::vector<Scalar> &w) {
        for (const auto &[p, b] : basis) {
            if (w[p].is_zero()) {
                continue;
            }
            const Scalar c = w[p];
            for (std::size_t t = 0; t < w.size(); ++t) {
                w[t] -= c * b[t];
            }
        }
    };
    for (auto c : cols) {
        reduce(c);
        std::size_t p = 0;
        while (p < c.size() && c[p].is_zero()) {
            ++p;
        }
        if (p == c.size()) {
            continue;
        }
        const Scalar inv = c[p].inverse();
        for (auto &s : c) {
            s *= inv;
        }
        for (auto &[q, b] : basis) {
            if (!b[p].is_zero()) {
                const Scalar d = b[p];
                for (std::size_t t = 0; t < b.size(); ++t) {
                    b[t] -= d * c[t];
                }
            }
        }
        basis.emplace_back(p, std::move(c));
    }
    reduce(v);
    return v;
}

std::string vector_text(const std::vector<Poly> &v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_zero()) {
            s += (s.empty() ? "" : "; ") + std::string("x") + std::to_string(i + 1) + ": " + v[i].to_string();
        }
    }
    return s;
}

struct Candidate {
    std::size_t matrix;
    std::size_t target;
    Monomial monomial;
};

void approximate_into(const Endo &f, int m, const PeelOptions &opt, ApproxTrace &trace)
{
    const Ring &ring = f.ring();
    require_char0_comm(ring, "tame approximation");
    if (f.affine()) {
        throw ApproxError("tame approximation of an affine map");
    }
    if (m < 1) {
        throw ApproxError("approximation level must be positive");
    }
    trace.ring = ring;
    trace.target = m;
    trace.seed = opt.seed;
    trace.residual = f.truncated(m);

    const Matrix a = linear_part(f);
    if (a.determinant().is_zero()) {
        throw ApproxError("linear part is singular");
    }
    if (!a.is_identity()) {
        ApproxStage st;
        st.degree = 1;
        st.word = GenWord(ring, {Generator::linear(a)});
        trace.residual = compose(trace.residual, linear_endo(ring, a.inverse()), m);
        st.residual_level = filtration(trace.residual, m).level;
        trace.stages.push_back(std::move(st));
    }
    PeelOptions local = opt;
    local.cap = m;
    for (int k = 2; k < m; ++k) {
        if (filtration(trace.residual, m).level > k) {
            continue;
        }
        PeelResult r = peel_step(trace.residual, k, local);
        ApproxStage st;
        st.degree = k;
        st.word = std::move(r.word);
        st.residual_level = filtration(r.residual, m).level;
        trace.residual = std::move(r.residual);
        trace.stages.push_back(std::move(st));
    }
    if (filtration(trace.residual, m).level < m) {
        throw ApproxError("internal: residual did not reach H_" + std::to_string(m));
    }
    if (!trace.recomposes(f)) {
        throw ApproxError("internal: trace does not recompose to the input");
    }
}

} // namespace

Poly divergence(const Endo &f, int k)
{
    if (!f.ring().commutative()) {
        throw ApproxError("divergence needs a commutative ring");
    }
    require_level(f, k);
    Poly d(f.ring());
    const auto dev = leading_deviation(f, k);
    for (std::size_t i = 0; i < dev.size(); ++i) {
        d += partial_derivative(dev[i], i);
    }
    return d;
}

PeelResult peel_step(const Endo &f, int k, const PeelOptions &opt)
{
    const Ring &ring = f.ring();
    require_char0_comm(ring, "peeling");
    if (k < 2) {
        throw ApproxError("peeling starts at degree 2 (peel the linear part first)");
    }
    if (k >= opt.cap) {
        throw ApproxError("peeling degree " + std::to_string(k) + " is not below the cap " + std::to_string(opt.cap));
    }
    if (opt.basis_budget < 1) {
        throw ApproxError("basis budget must be positive");
    }
    require_level(f, k);
    const Endo fj = f.truncated(opt.cap);
    if (filtration(fj, k + 1).level > k) {
        return {GenWord(ring), fj};
    }

    const Coordinates coords(ring, k);
    const auto target = coords.encode(leading_deviation(fj, k));
    const auto monos = monomials_of_degree(ring.nvars, static_cast<unsigned>(k));

    std::mt19937_64 rng(opt.seed);
    std::vector<Matrix> mats;
    std::vector<Candidate> cands;
    std::vector<std::vector<Scalar>> cols;
    std::optional<std::vector<Scalar>> coeffs;
    for (int r = 0; r < opt.basis_budget && !coeffs; ++r) {
        mats.push_back(r == 0 ? Matrix::identity(ring.field, ring.nvars)
                              : random_invertible(rng, ring.field, ring.nvars));
        const Endo l = linear_endo(ring, mats.back());
        const Endo linv = linear_endo(ring, mats.back().inverse());
        for (std::size_t i = 0; i < ring.nvars; ++i) {
            for (const auto &mono : monos) {
                if (mono.contains(i)) {
                    continue;
                }
                const Endo e = elementary_endo(ring, i, Poly::term(ring, mono, Scalar::one(ring.field)));
                const Endo c = compose(compose(l, e, k + 1), linv, k + 1);
                cands.push_back({mats.size() - 1, i, mono});
                cols.push_back(coords.encode(leading_deviation(c, k)));
            }
        }
        Matrix a(ring.field, coords.dim(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            for (std::size_t t = 0; t < coords.dim(); ++t) {
                a(t, j) = cols[j][t];
            }
        }
        coeffs = solve(a, target);
    }
    if (!coeffs) {
        const auto rest = coords.decode(reduce_by_span(cols, target));
        std::string msg = "degree-" + std::to_string(k) + " deviation is outside the span of " +
                          std::to_string(cols.size()) + " sampled leading terms (" + std::to_string(mats.size()) +
                          " linear conjugates); unmatched component " + vector_text(rest);
        const Poly div = divergence(fj, k);
        if (!div.is_zero()) {
            msg += "; divergence " + div.to_string();
        }
        throw SpanDeficiency(msg, k, rest);
    }

    GenWord word(ring);
    for (std::size_t j = 0; j < cands.size(); ++j) {
        const Scalar &c = (*coeffs)[j];
        if (c.is_zero()) {
            continue;
        }
        const auto &cand = cands[j];
        const Generator g = Generator::elementary(cand.target, Poly::term(ring, cand.monomial, c));
        if (mats[cand.matrix].is_identity()) {
            word.append(g);
        } else {
            word.append(conjugate_by_linear(GenWord(ring, {g}), mats[cand.matrix]));
        }
    }
    PeelResult res{word, compose(fj, expand_jet(invert_word(word), opt.cap), opt.cap)};
    if (filtration(res.residual, k + 1).level <= k) {
        throw ApproxError("internal: peeled residual is not in H_" + std::to_string(k + 1));
    }
    return res;
}

GenWord ApproxTrace::tame_word() const
{
    GenWord w(ring);
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
        w.append(it->word);
    }
    return w;
}

bool ApproxTrace::recomposes(const Endo &f) const
{
    return compose(residual, expand_jet(tame_word(), target), target) == f.truncated(target);
}

ApproxTrace tame_approximate(const Endo &f, int m, const PeelOptions &opt)
{
    ApproxTrace trace;
    approximate_into(f, m, opt, trace);
    return trace;
}

Endo nagata(const Ring &ring)
{
    if (!ring.commutative() || ring.nvars != 3) {
        throw ApproxError("the Nagata map lives in a commutative ring in 3 variables");
    }
    if (ring.field.characteristic() == 2) {
        throw ApproxError("the Nagata map needs characteristic != 2");
    }
    const Poly x = Poly::variable(ring, 0), y = Poly::variable(ring, 1), z = Poly::variable(ring, 2);
    const Poly s = y * y + x * z;
    const Poly two = Poly::constant(ring, Scalar(ring.field, 2L));
    return Endo(ring, {x - two * y * s - s * s * z, y + s * z, z});
}

Endo nagata_inverse(const Ring &ring)
{
    return exact_inverse(nagata(ring), 5);
}

std::string nice_kind_name(NiceKind k)
{
    switch (k) {
    case NiceKind::nice:
        return "nice";
    case NiceKind::inconclusive:
        return "inconclusive";
    case NiceKind::unknown:
        return "unknown";
    }
    return "";
}

NiceVerdict classify_nice(const Endo &f, int m, const PeelOptions &opt)
{
    if (!f.ring().commutative()) {
        throw ApproxError("classification needs a commutative ring");
    }
    NiceVerdict v;
    if (!f.ring().field.is_rational()) {
        v.kind = NiceKind::unknown;
        v.note = "positive characteristic: approximation by tame maps is not decided";
        return v;
    }
    ApproxTrace trace;
    try {
        approximate_into(f, m, opt, trace);
    } catch (const SpanDeficiency &e) {
        v.kind = NiceKind::inconclusive;
        v.level = filtration(trace.residual, m).level;
        v.note = e.what();
        v.trace = std::move(trace);
        return v;
    }
    v.kind = NiceKind::nice;
    v.nice = true;
    v.level = m;
    const Endo tame = expand_jet(trace.tame_word(), m);
    const Endo psi = compose(f.truncated(m), jet_invert(tame, m), m);
    v.good = filtration(psi, m).level >= m;
    v.trace = std::move(trace);
    return v;
}

Poly inclusion_exclusion_check(int n, int m, const FieldSpec &field)
{
    if (n < 1 || m < 1 || n > 20) {
        throw ApproxError("inclusion-exclusion needs 1 <= n <= 20 and m >= 1");
    }
    const Ring ring = comm_ring(static_cast<std::size_t>(n), field);
    Poly total(ring);
    for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        Poly s(ring);
        int size = 0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1ul << i)) {
                s += Poly::variable(ring, static_cast<std::size_t>(i));
                ++size;
            }
        }
        const Poly p = s.pow(static_cast<unsigned>(m));
        total += (n - size) % 2 ? -p : p;
    }
    return total;
}

} // namespace polyaut
