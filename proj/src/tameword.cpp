#include <polyaut/tameword.hpp>

#include <mutex>
#include <unordered_map>

#include <polyaut/text.hpp>

namespace polyaut
{

Generator Generator::linear(const Matrix &m, bool inverted)
{
    if (m.rows() != m.cols() || m.determinant().is_zero()) {
        throw SynthesisError("linear generator needs an invertible square matrix");
    }
    Generator g;
    g.kind = Kind::linear;
    g.matrix = m;
    g.inverted = inverted;
    return g;
}

Generator Generator::elementary(std::size_t target, const Poly &addend, bool inverted)
{
    if (target >= addend.ring().nvars) {
        throw SynthesisError("elementary target out of range");
    }
    if (addend.involves(target)) {
        throw SynthesisError("elementary addend involves its target x" + std::to_string(target + 1));
    }
    Generator g;
    g.kind = Kind::elementary;
    g.target = target;
    g.addend = addend;
    g.inverted = inverted;
    return g;
}

Generator Generator::inverse() const
{
    Generator g = *this;
    g.inverted = !inverted;
    return g;
}

Matrix Generator::effective_matrix() const
{
    return inverted ? matrix.inverse() : matrix;
}

Poly Generator::effective_addend() const
{
    return inverted ? -addend : addend;
}

Endo Generator::to_endo(const Ring &ring) const
{
    if (kind == Kind::linear) {
        return linear_endo(ring, effective_matrix());
    }
    return elementary_endo(ring, target, effective_addend());
}

bool operator==(const Generator &a, const Generator &b)
{
    if (a.kind != b.kind || a.inverted != b.inverted) {
        return false;
    }
    if (a.kind == Generator::Kind::linear) {
        return a.matrix == b.matrix;
    }
    return a.target == b.target && a.addend == b.addend;
}

GenWord &GenWord::append(const Generator &g)
{
    gens.push_back(g);
    return *this;
}

GenWord &GenWord::append(const GenWord &w)
{
    if (w.ring != ring) {
        throw SynthesisError("concatenating words over different rings");
    }
    gens.insert(gens.end(), w.gens.begin(), w.gens.end());
    return *this;
}

std::size_t GenWord::elementary_count() const
{
    std::size_t c = 0;
    for (const auto &g : gens) {
        c += g.kind == Generator::Kind::elementary ? 1 : 0;
    }
    return c;
}

GenWord operator+(GenWord a, const GenWord &b)
{
    return a.append(b);
}

namespace
{

void check_generator(const Ring &ring, const Generator &g)
{
    if (g.kind == Generator::Kind::linear) {
        if (g.matrix.rows() != ring.nvars || g.matrix.field() != ring.field) {
            throw SynthesisError("linear generator does not fit the word's ring");
        }
    } else if (g.addend.ring() != ring) {
        throw SynthesisError("elementary addend lives in a different ring");
    }
}

// acc o g, using the shape of g instead of a general substitution.
Endo apply_generator(const Endo &acc, const Generator &g, int cap)
{
    const Ring &ring = acc.ring();
    check_generator(ring, g);
    if (g.kind == Generator::Kind::linear) {
        const Matrix m = g.effective_matrix();
        std::vector<Poly> imgs;
        for (std::size_t i = 0; i < ring.nvars; ++i) {
            Poly p(ring);
            for (std::size_t j = 0; j < ring.nvars; ++j) {
                if (!m(i, j).is_zero()) {
                    p += acc.image(j).scaled(m(i, j));
                }
            }
            imgs.push_back(std::move(p));
        }
        return Endo(ring, std::move(imgs), acc.affine());
    }
    const Poly q = substitute(g.effective_addend(), acc.images(), cap);
    return acc.with_image(g.target, acc.image(g.target) + q);
}

std::mutex cache_mutex;
std::unordered_map<std::string, Endo> expand_cache;
constexpr std::size_t kCacheLimit = 512;

} // namespace

Endo expand_jet(const GenWord &w, int cap)
{
    Endo acc = Endo::identity(w.ring).truncated(cap);
    for (const auto &g : w.gens) {
        acc = apply_generator(acc, g, cap);
    }
    return acc;
}

Endo expand(const GenWord &w)
{
    const std::string key = format_word(w);
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = expand_cache.find(key);
        if (it != expand_cache.end()) {
            return it->second;
        }
    }
    Endo res = expand_jet(w, kNoCap);
    std::lock_guard<std::mutex> lock(cache_mutex);
    if (expand_cache.size() >= kCacheLimit) {
        expand_cache.clear();
    }
    expand_cache.emplace(key, res);
    return res;
}

void clear_expand_cache()
{
    std::lock_guard<std::mutex> lock(cache_mutex);
    expand_cache.clear();
}

GenWord invert_word(const GenWord &w)
{
    GenWord res(w.ring);
    for (auto it = w.gens.rbegin(); it != w.gens.rend(); ++it) {
        res.gens.push_back(it->inverse());
    }
    return res;
}

GenWord simplify(const GenWord &w)
{
    GenWord res(w.ring);
    for (const auto &g : w.gens) {
        if (g.kind == Generator::Kind::linear && g.matrix.is_identity()) {
            continue;
        }
        if (g.kind == Generator::Kind::elementary && g.addend.is_zero()) {
            continue;
        }
        if (!res.gens.empty()) {
            const Generator &top = res.gens.back();
            if (top.kind == Generator::Kind::linear && g.kind == Generator::Kind::linear) {
                // L_A o L_B = L_{BA}
                const Matrix merged = g.effective_matrix() * top.effective_matrix();
                res.gens.pop_back();
                if (!merged.is_identity()) {
                    res.gens.push_back(Generator::linear(merged));
                }
                continue;
            }
            if (top.kind == Generator::Kind::elementary && g.kind == Generator::Kind::elementary &&
                top.target == g.target && (top.effective_addend() + g.effective_addend()).is_zero()) {
                res.gens.pop_back();
                continue;
            }
        }
        res.gens.push_back(g);
    }
    return res;
}

GenWord conjugate_by_linear(const GenWord &w, const Matrix &m)
{
    GenWord res(w.ring);
    res.append(Generator::linear(m));
    res.append(w);
    res.append(Generator::linear(m, true));
    return res;
}

GenWord relabel(const GenWord &w, const std::vector<std::size_t> &perm)
{
    Matrix p(w.ring.field, w.ring.nvars, w.ring.nvars);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        p(i, perm.at(i)) = Scalar::one(w.ring.field);
    }
    if (!p.is_permutation()) {
        throw SynthesisError("relabel needs a permutation");
    }
    return conjugate_by_linear(w, p);
}

GenWord conjugate_by_diagonal(const GenWord &w, const std::vector<Scalar> &d)
{
    Matrix m(w.ring.field, w.ring.nvars, w.ring.nvars);
    for (std::size_t i = 0; i < d.size(); ++i) {
        m(i, i) = d[i];
    }
    return conjugate_by_linear(w, m);
}

TorusNormalization torus_normalize(const std::vector<Scalar> &betas)
{
    const std::size_t n = betas.size();
    if (n == 0) {
        throw SynthesisError("torus normalization needs at least one beta");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (betas[i].is_zero()) {
            throw SynthesisError("beta_" + std::to_string(i + 1) + " is zero");
        }
    }
    const FieldSpec q = FieldSpec::rational();
    Matrix m(q, n - 1, n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        m(i, i) += Scalar::one(q);
        m(i, (i + 1) % n) -= Scalar::one(q);
        m(i, (i + 2) % n) -= Scalar::one(q);
    }

    TorusNormalization res;
    res.exponents.assign(n, std::vector<mpq_class>(n, 0));
    for (const auto &v : kernel_basis(m)) {
        std::vector<mpq_class> k;
        for (const auto &s : v) {
            k.push_back(s.rational());
        }
        res.kernel.push_back(std::move(k));
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Scalar> b(n - 1, Scalar::zero(q));
        if (j + 1 < n) {
            b[j] = Scalar(q, -1L);
        }
        const auto x = solve(m, b);
        if (!x) {
            std::string msg = "exponent system is inconsistent; kernel basis:";
            for (const auto &k : res.kernel) {
                msg += " [";
                for (std::size_t t = 0; t < k.size(); ++t) {
                    msg += (t ? "," : "") + k[t].get_str();
                }
                msg += "]";
            }
            throw SynthesisError(msg);
        }
        for (std::size_t i = 0; i < n; ++i) {
            res.exponents[i][j] = (*x)[i].rational();
        }
    }

    res.integral = true;
    for (const auto &row : res.exponents) {
        for (const auto &e : row) {
            res.integral = res.integral && e.get_den() == 1;
        }
    }
    // A fractional power of beta_j = 1 is still 1.
    bool materializable = true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            materializable = materializable && (res.exponents[i][j].get_den() == 1 || betas[j].is_one());
        }
    }
    if (materializable) {
        std::vector<Scalar> alphas;
        for (std::size_t i = 0; i < n; ++i) {
            Scalar a = Scalar::one(betas[0].field());
            for (std::size_t j = 0; j < n; ++j) {
                if (!betas[j].is_one()) {
                    a *= betas[j].pow(res.exponents[i][j].get_num().get_si());
                }
            }
            alphas.push_back(a);
        }
        res.alphas = std::move(alphas);
    }
    return res;
}

} // namespace polyaut
