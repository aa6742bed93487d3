// polyaut: command-line front end for the automorphism engine.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <polyaut/approx.hpp>
#include <polyaut/hiking.hpp>
#include <polyaut/suites.hpp>
#include <polyaut/tameword.hpp>
#include <polyaut/text.hpp>
#include <polyaut/torus.hpp>

using namespace polyaut;
using json = nlohmann::json;

namespace
{

constexpr int kPass = 0, kFail = 1, kUsage = 2, kInconclusive = 3;

struct Globals {
    std::string field = "q";
    bool nc = false;
    std::size_t vars = 3;
    std::uint64_t seed = 1;
    bool json = false;
    bool timing = false;

    FieldSpec field_spec() const { return FieldSpec::parse(field); }
    Ring ring(std::size_t min_vars = 0) const
    {
        const std::size_t n = std::max(vars, min_vars);
        return nc ? nc_ring(n, field_spec()) : comm_ring(n, field_spec());
    }
};

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string &path)
{
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string &path, const std::string &text)
{
    std::ofstream out(path);
    if (!out) {
        throw UsageError("cannot write " + path);
    }
    out << text;
}

Endo read_endo(const std::string &path)
{
    return parse_endo(slurp(path));
}

// Word files hold LIN/ELEM lines after the header.
bool looks_like_word(const std::string &text)
{
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        const auto p = line.find_first_not_of(" \t");
        if (p == std::string::npos) {
            continue;
        }
        return line.compare(p, 3, "LIN") == 0 || line.compare(p, 4, "ELEM") == 0;
    }
    return false;
}

std::vector<long> parse_longs(const std::string &text)
{
    std::vector<long> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto a = item.find_first_not_of(" []"), b = item.find_last_not_of(" []");
        if (a == std::string::npos) {
            continue;
        }
        try {
            out.push_back(std::stol(item.substr(a, b - a + 1)));
        } catch (const std::exception &) {
            throw UsageError("not an integer: '" + item + "'");
        }
    }
    return out;
}

void emit(const Globals &g, const json &record, const std::string &text)
{
    if (g.json) {
        std::cout << record.dump() << '\n';
    } else {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
    }
}

json endo_record(const std::string &kind, const Endo &f)
{
    return {{"kind", kind}, {"text", format_endo(f)}};
}

// ------------------------------------------------------------------- verbs

int cmd_parse(const Globals &g, const std::string &path)
{
    const std::string text = slurp(path);
    if (looks_like_word(text)) {
        const GenWord w = parse_word(text);
        emit(g, {{"kind", "word"}, {"letters", w.size()}, {"text", format_word(w)}}, format_word(w));
    } else {
        const Endo f = parse_endo(text);
        emit(g, endo_record("endo", f), format_endo(f));
    }
    return kPass;
}

int cmd_expand(const Globals &g, const std::string &path, int to)
{
    const GenWord w = parse_word(slurp(path));
    const Endo f = to > 0 ? expand_jet(w, to) : expand(w);
    emit(g, endo_record("endo", f), format_endo(f));
    return kPass;
}

int cmd_compose(const Globals &g, const std::string &a, const std::string &b, int cap)
{
    const Endo f = compose(read_endo(a), read_endo(b), cap > 0 ? cap : kNoCap);
    emit(g, endo_record("endo", f), format_endo(f));
    return kPass;
}

int cmd_invert(const Globals &g, const std::string &path, int to)
{
    const Endo f = read_endo(path);
    const Endo inv = to > 0 ? jet_invert(f, to) : exact_inverse(f);
    emit(g, endo_record("endo", inv), format_endo(inv));
    return kPass;
}

int cmd_conjugate(const Globals &g, const std::string &a, const std::string &m, int cap)
{
    const Endo ea = read_endo(a), em = read_endo(m);
    const Endo c = cap > 0 ? conjugate_jet(ea, em, cap) : conjugate(ea, em);
    emit(g, endo_record("endo", c), format_endo(c));
    return kPass;
}

int cmd_truncate(const Globals &g, const std::string &path, int to)
{
    const Endo f = read_endo(path).truncated(to);
    emit(g, endo_record("endo", f), format_endo(f));
    return kPass;
}

int cmd_filtration(const Globals &g, const std::string &path, int cap)
{
    const Endo f = read_endo(path);
    const auto rep = filtration(f, cap);
    json j{{"kind", "filtration"}, {"level", rep.level}, {"cap", rep.cap}, {"scalar", rep.scalar_flag},
           {"scalar_level", rep.scalar_level}};
    std::ostringstream out;
    out << "level " << rep.level << " (cap " << rep.cap << ")\n";
    if (rep.scalar) {
        j["lambda"] = rep.scalar->to_string();
        out << "linear part " << rep.scalar->to_string() << " * id, scalar level " << rep.scalar_level << "\n";
    }
    if (rep.witness) {
        const auto &w = *rep.witness;
        const std::string mono = Poly::term(f.ring(), w.monomial, w.coefficient).to_string();
        j["witness"] = {{"image", w.image + 1}, {"degree", w.degree}, {"term", mono}};
        out << "witness: image x" << w.image + 1 << ", degree " << w.degree << " term " << mono << "\n";
    }
    emit(g, j, out.str());
    return kPass;
}

int report_word(const Globals &g, const GenWord &w, const Endo &expected)
{
    const bool ok = expand(w) == expected;
    emit(g,
         {{"kind", "word"},
          {"letters", w.size()},
          {"verified", ok},
          {"target", format_endo(expected)},
          {"text", format_word(w)}},
         format_word(w));
    if (!ok) {
        std::cerr << "expansion does not match the target\n";
    }
    return ok ? kPass : kFail;
}

int cmd_synth_power(const Globals &g, const std::string &coeff, unsigned k)
{
    const Ring r = g.ring(3);
    const Scalar b = Scalar::parse(r.field, coeff);
    return report_word(g, synth_power(r, b, k),
                       elementary_endo(r, 2, Poly::variable(r, 0).pow(k).scaled(b)));
}

int cmd_synth_edge(const Globals &g, const std::string &coeff, unsigned k)
{
    const Ring r = comm_ring(3, g.field_spec());
    const Scalar b = Scalar::parse(r.field, coeff);
    const Poly addend = parse_poly(r, "y*x^" + std::to_string(k)).scaled(b);
    return report_word(g, synth_edge(r, b, k), elementary_endo(r, 2, addend));
}

int cmd_synth_poly(const Globals &g, const std::string &expr)
{
    const Ring r = comm_ring(3, g.field_spec());
    const Poly p = parse_poly(r, expr);
    if (const auto why = synth_elementary_obstruction(p)) {
        throw UsageError(*why);
    }
    return report_word(g, synth_elementary(p), elementary_endo(r, 2, p));
}

int cmd_synth_nc(const Globals &g, const std::string &expr, std::size_t target)
{
    const Ring r = nc_ring(std::max<std::size_t>(g.vars, 4), g.field_spec());
    const Poly p = parse_poly(r, expr);
    if (target < 3 || target > 4) {
        throw UsageError("target must be 3 or 4");
    }
    GenWord w(r);
    for (const auto &[m, c] : p.terms()) {
        w.append(synth_nc_elementary(r, m, c, target - 1));
    }
    return report_word(g, w, elementary_endo(r, target - 1, p));
}

std::vector<int> weights_arg(const std::string &text, std::size_t n)
{
    std::vector<int> w;
    for (long v : parse_longs(text)) {
        w.push_back(static_cast<int>(v));
    }
    if (w.size() != n) {
        throw UsageError("need " + std::to_string(n) + " weights");
    }
    return w;
}

int cmd_torus_conjugate(const Globals &g, const std::string &path, const std::string &weights)
{
    const Endo f = read_endo(path);
    const LaurentEndo c = parameterized_conjugate(weights_arg(weights, f.ring().nvars), f);
    emit(g, {{"kind", "laurent-endo"}, {"text", c.to_string()}}, c.to_string());
    return kPass;
}

int cmd_torus_valuation(const Globals &g, const std::string &path, const std::string &weights)
{
    const Endo f = read_endo(path);
    const auto rep = singularity(weights_arg(weights, f.ring().nvars), f);
    const std::string mono = Poly::term(f.ring(), rep.monomial, Scalar::one(f.ring().field)).to_string();
    std::ostringstream out;
    out << "valuation " << rep.valuation << (rep.valuation < 0 ? " (pole at t = 0)" : "") << "\n"
        << "attained in image x" << rep.image + 1 << " at " << mono << "\n";
    emit(g,
         {{"kind", "valuation"}, {"valuation", rep.valuation}, {"image", rep.image + 1}, {"monomial", mono},
          {"singular", rep.valuation < 0}},
         out.str());
    return kPass;
}

int cmd_approximate(const Globals &g, const std::string &path, int to, const std::string &prefix, std::size_t budget)
{
    const Endo f = read_endo(path);
    PeelOptions opt;
    opt.seed = g.seed;
    opt.basis_budget = budget;
    opt.cap = std::max(to, kDefaultCap);
    try {
        const ApproxTrace tr = tame_approximate(f, to, opt);
        const GenWord w = tr.tame_word();
        const bool ok = tr.recomposes(f);
        if (!prefix.empty()) {
            spit(prefix + ".word", format_word(w));
            spit(prefix + ".residual.endo", format_endo(tr.residual));
            for (const auto &s : tr.stages) {
                spit(prefix + ".stage" + std::to_string(s.degree) + ".word", format_word(s.word));
            }
        }
        json j{{"kind", "approximation"}, {"target", to},      {"seed", g.seed},
               {"recomposes", ok},       {"word", format_word(w)}, {"residual", format_endo(tr.residual)}};
        std::ostringstream out;
        for (const auto &s : tr.stages) {
            j["stages"].push_back({{"degree", s.degree}, {"letters", s.word.size()}, {"level", s.residual_level}});
            out << "# degree " << s.degree << ": " << s.word.size() << " letters, residual in H_" << s.residual_level
                << "\n";
        }
        out << "# seed " << g.seed << (ok ? ", trace recomposes" : ", TRACE DOES NOT RECOMPOSE") << "\n"
            << format_word(w) << "\n"
            << format_endo(tr.residual);
        emit(g, j, out.str());
        return ok ? kPass : kFail;
    } catch (const SpanDeficiency &e) {
        emit(g, {{"kind", "approximation"}, {"target", to}, {"seed", g.seed}, {"status", "inconclusive"},
                 {"degree", e.degree}, {"reason", e.what()}},
             std::string("inconclusive at degree ") + std::to_string(e.degree) + ": " + e.what());
        return kInconclusive;
    }
}

int cmd_hike(const Globals &g, const std::string &path, const std::string &targets, std::size_t z, int cap)
{
    const Endo f = read_endo(path);
    const std::size_t zs = z == 0 ? f.ring().nvars - 1 : z - 1;
    std::vector<int> t;
    for (long v : parse_longs(targets)) {
        t.push_back(static_cast<int>(v));
    }
    const HikingPlan plan = hiking_solve(t, f.ring().field);
    const auto check = verify_plan(plan);
    const Endo h = hiking_product(f, plan, zs, cap);
    json j{{"kind", "hiking"}, {"plan_ok", check.ok}, {"result", format_endo(h)}};
    std::ostringstream out;
    out << "# k =";
    for (std::size_t i = 0; i < plan.k.size(); ++i) {
        j["k"].push_back(plan.k[i]);
        j["lambda"].push_back(plan.lambda[i].to_string());
        out << ' ' << plan.k[i];
    }
    out << "\n# lambda =";
    for (const auto &l : plan.lambda) {
        out << ' ' << l.to_string();
    }
    out << "\n" << format_endo(h);
    emit(g, j, out.str());
    return check.ok ? kPass : kFail;
}

int cmd_verify(const Globals &g, const std::string &name, const SuiteOptions &opt)
{
    const SuiteResult r = run_suite(name, g.seed, opt);
    for (const auto &c : r.checks) {
        emit(g,
             {{"suite", r.name},
              {"seed", r.seed},
              {"check", c.name},
              {"status", status_name(c.status)},
              {"note", c.note},
              {"witness", c.witness}},
             status_name(c.status) + "  " + c.name + " (" + c.note + ")" +
                 (c.witness.empty() ? "" : "\n      witness: " + c.witness));
    }
    // Wall time only with --timing.
    json summary{{"suite", r.name}, {"seed", r.seed}, {"status", status_name(r.status())}};
    if (g.timing) {
        summary["seconds"] = r.seconds;
    }
    std::ostringstream out;
    out << r.name << ": " << status_name(r.status()) << ", seed " << r.seed << ", " << r.seconds << " s";
    emit(g, summary, out.str());
    return r.exit_code();
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact automorphisms of polynomial and free associative algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    bool field_given = false;
    app.add_option("--field", g.field, "q or fp:<p>")->each([&](const std::string &) { field_given = true; });
    app.add_flag("--nc", g.nc, "free associative algebra");
    app.add_option("--vars", g.vars, "number of variables")->check(CLI::Range(1, 64));
    app.add_option("--seed", g.seed, "seed for randomized steps");
    app.add_flag("--json", g.json, "line-delimited JSON records");
    app.add_flag("--timing", g.timing, "include wall time in JSON records");

    std::string a, b;
    int cap = 0, to = 0;
    std::function<int()> action;

    auto *parse = app.add_subcommand("parse", "parse and print an endomorphism or word in canonical form");
    parse->add_option("file", a, "input file, - for stdin")->required();
    parse->callback([&] { action = [&] { return cmd_parse(g, a); }; });

    auto *expandc = app.add_subcommand("expand", "expand a word file");
    expandc->add_option("file", a)->required();
    expandc->add_option("--to", to, "work modulo I^m");
    expandc->callback([&] { action = [&] { return cmd_expand(g, a, to); }; });

    auto *compose_c = app.add_subcommand("compose", "f o g: g's formulas evaluated at f's images");
    compose_c->add_option("f", a)->required();
    compose_c->add_option("g", b)->required();
    compose_c->add_option("--cap", cap, "drop monomials of degree >= cap");
    compose_c->callback([&] { action = [&] { return cmd_compose(g, a, b, cap); }; });

    auto *invert = app.add_subcommand("invert", "exact inverse, or jet inverse with --to");
    invert->add_option("file", a)->required();
    invert->add_option("--to", to, "invert modulo I^m");
    invert->callback([&] { action = [&] { return cmd_invert(g, a, to); }; });

    auto *conj = app.add_subcommand("conjugate", "a^-1 o m o a");
    conj->add_option("a", a)->required();
    conj->add_option("m", b)->required();
    conj->add_option("--cap", cap, "work modulo I^cap");
    conj->callback([&] { action = [&] { return cmd_conjugate(g, a, b, cap); }; });

    auto *filt = app.add_subcommand("filtration", "largest n with f in H_n");
    filt->add_option("file", a)->required();
    filt->add_option("--cap", cap, "highest level examined")->required();
    filt->callback([&] { action = [&] { return cmd_filtration(g, a, cap); }; });

    auto *trunc = app.add_subcommand("truncate", "drop monomials of degree >= m");
    trunc->add_option("file", a)->required();
    trunc->add_option("--to", to)->required();
    trunc->callback([&] { action = [&] { return cmd_truncate(g, a, to); }; });

    auto *synth = app.add_subcommand("synthesize", "words in linear maps and z -> z + xy");
    synth->require_subcommand(1);
    std::string coeff = "1", expr;
    unsigned k = 1;
    std::size_t target = 4;
    auto *spow = synth->add_subcommand("power", "z -> z + b x^k");
    spow->add_option("--coeff", coeff);
    spow->add_option("--k", k)->required();
    spow->callback([&] { action = [&] { return cmd_synth_power(g, coeff, k); }; });
    auto *sedge = synth->add_subcommand("edge", "z -> z + b y x^k (commutative)");
    sedge->add_option("--coeff", coeff);
    sedge->add_option("--k", k)->required();
    sedge->callback([&] { action = [&] { return cmd_synth_edge(g, coeff, k); }; });
    auto *spoly = synth->add_subcommand("poly", "z -> z + P(x, y) (commutative)");
    spoly->add_option("expr", expr)->required();
    spoly->callback([&] { action = [&] { return cmd_synth_poly(g, expr); }; });
    auto *snc = synth->add_subcommand("nc", "x_target -> x_target + P(x, y) in the free algebra");
    snc->add_option("expr", expr)->required();
    snc->add_option("--target", target, "3 or 4");
    snc->callback([&] { action = [&] { return cmd_synth_nc(g, expr, target); }; });

    auto *torus = app.add_subcommand("torus", "one-parameter torus conjugation D(t) f D(t)^-1");
    torus->require_subcommand(1);
    std::string weights;
    auto *tconj = torus->add_subcommand("conjugate", "print the conjugate over Laurent coefficients");
    tconj->add_option("file", a)->required();
    tconj->add_option("--weights", weights, "integer weights, e.g. 1,2,1")->required();
    tconj->callback([&] { action = [&] { return cmd_torus_conjugate(g, a, weights); }; });
    auto *tval = torus->add_subcommand("valuation", "minimum t-valuation and a term attaining it");
    tval->add_option("file", a)->required();
    tval->add_option("--weights", weights)->required();
    tval->callback([&] { action = [&] { return cmd_torus_valuation(g, a, weights); }; });

    auto *approx = app.add_subcommand("approximate", "peel a tame word until the residual is in H_m");
    std::string prefix;
    std::size_t budget = 16;
    approx->add_option("file", a)->required();
    approx->add_option("--to", to)->required();
    approx->add_option("--out", prefix, "write <out>.word, <out>.residual.endo and per-stage words");
    approx->add_option("--budget", budget, "random linear conjugations per round");
    approx->callback([&] { action = [&] { return cmd_approximate(g, a, to, prefix, budget); }; });

    auto *hike = app.add_subcommand("hike", "product of torus conjugates killing leading z-slices");
    std::string targets;
    std::size_t zvar = 0;
    hike->add_option("file", a)->required();
    hike->add_option("--targets", targets, "z-degrees to kill, e.g. 1,2")->required();
    hike->add_option("--z", zvar, "1-based index of z (default: last variable)");
    hike->add_option("--cap", cap, "work modulo I^cap")->default_val(6);
    hike->callback([&] { action = [&] { return cmd_hike(g, a, targets, zvar, cap); }; });

    auto *verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    verify->add_option("suite", suite)->required();
    verify->callback([&] {
        action = [&] {
            SuiteOptions opt;
            if (field_given) {
                opt.field = g.field_spec();
            }
            return cmd_verify(g, suite, opt);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        return action();
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SuiteError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
