#include <polyaut/text.hpp>

#include <cctype>
#include <sstream>

namespace polyaut
{

namespace
{

constexpr unsigned kMaxExponent = 100000;

class ExprParser
{
public:
    ExprParser(const Ring &ring, std::string_view text, std::size_t line, std::size_t column_offset)
        : ring_(ring), text_(text), line_(line), offset_(column_offset)
    {
    }

    Poly parse_all()
    {
        skip_ws();
        if (at_end()) {
            fail("empty expression");
        }
        Poly p = expr();
        skip_ws();
        if (!at_end()) {
            if (peek() == ')') {
                fail("unbalanced ')'");
            }
            fail("expected an operator before '" + std::string(1, peek()) + "'");
        }
        return p;
    }

private:
    [[noreturn]] void fail(const std::string &msg) const { throw ParseError(msg, line_, offset_ + pos_ + 1); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    Poly expr()
    {
        skip_ws();
        Poly acc(ring_);
        bool neg = false;
        if (peek() == '+' || peek() == '-') {
            neg = peek() == '-';
            ++pos_;
        }
        Poly t = term();
        acc = neg ? -t : t;
        while (true) {
            skip_ws();
            const char c = peek();
            if (c != '+' && c != '-') {
                break;
            }
            ++pos_;
            Poly u = term();
            acc = c == '+' ? acc + u : acc - u;
        }
        return acc;
    }

    Poly term()
    {
        Poly acc = unary();
        while (true) {
            skip_ws();
            if (peek() != '*') {
                break;
            }
            ++pos_;
            acc = acc * unary();
        }
        skip_ws();
        const char c = peek();
        if (!at_end() && c != '+' && c != '-' && c != ')' && c != '*') {
            fail("expected an operator before '" + std::string(1, c) + "' (juxtaposition is not allowed)");
        }
        return acc;
    }

    Poly unary()
    {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return -unary();
        }
        Poly base = primary();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                fail("exponent must be a nonnegative integer");
            }
            const std::string digits = take_digits();
            if (digits.size() > 6 || std::stoul(digits) > kMaxExponent) {
                fail("exponent too large");
            }
            base = base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    std::string take_digits()
    {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    Poly primary()
    {
        skip_ws();
        const std::size_t start = pos_;
        const char c = peek();
        if (at_end()) {
            fail("unexpected end of expression");
        }
        if (c == '(') {
            ++pos_;
            Poly inner = expr();
            skip_ws();
            if (peek() != ')') {
                fail("expected ')'");
            }
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = take_digits();
            std::string den = "1";
            if (peek() == '/') {
                ++pos_;
                if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                    fail("expected a denominator after '/'");
                }
                den = take_digits();
            }
            try {
                const mpz_class d(den);
                if (d == 0) {
                    throw ArithmeticError("zero denominator");
                }
                return Poly::constant(ring_, Scalar(ring_.field, mpq_class(mpz_class(num), d)));
            } catch (const ArithmeticError &e) {
                pos_ = start;
                fail(e.what());
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (!at_end() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            const std::string name(text_.substr(start, pos_ - start));
            const auto idx = variable_index(name);
            if (!idx) {
                pos_ = start;
                fail("undeclared variable '" + name + "'");
            }
            return Poly::variable(ring_, *idx);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::optional<std::size_t> variable_index(const std::string &name) const
    {
        std::size_t idx = 0;
        if (name == "x" || name == "y" || name == "z" || name == "t") {
            idx = name == "x" ? 0 : name == "y" ? 1 : name == "z" ? 2 : 3;
        } else if (name.size() >= 2 && name[0] == 'x' && name[1] != '0' && name.size() <= 5 &&
                   std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            idx = std::stoul(name.substr(1)) - 1;
        } else {
            return std::nullopt;
        }
        if (idx >= ring_.nvars) {
            return std::nullopt;
        }
        return idx;
    }

    const Ring &ring_;
    std::string_view text_;
    std::size_t line_, offset_;
    std::size_t pos_ = 0;
};

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

struct Line {
    std::string_view text;
    std::size_t number;
};

// Non-blank, non-comment lines.
std::vector<Line> content_lines(std::string_view text)
{
    std::vector<Line> res;
    std::size_t number = 0;
    while (!text.empty() || number == 0) {
        ++number;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        const auto t = trim(line);
        if (!t.empty() && t.front() != '#') {
            res.push_back({line, number});
        }
        if (nl == std::string_view::npos) {
            break;
        }
    }
    return res;
}

std::size_t column_of(std::string_view line, std::string_view part)
{
    return static_cast<std::size_t>(part.data() - line.data());
}

Ring header_or_throw(const std::vector<Line> &lines, bool *affine)
{
    if (lines.empty()) {
        throw ParseError("missing header line", 1, 1);
    }
    try {
        return parse_header(lines.front().text, affine);
    } catch (const ParseError &e) {
        throw ParseError(e.detail(), lines.front().number, e.column());
    }
}

Matrix parse_matrix(const FieldSpec &field, std::string_view text, std::size_t line, std::size_t col)
{
    std::vector<std::vector<Scalar>> rows;
    std::size_t pos = 0;
    auto fail = [&](const std::string &msg) { throw ParseError(msg, line, col + pos + 1); };
    auto ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
    };
    auto expect = [&](char c) {
        ws();
        if (pos >= text.size() || text[pos] != c) {
            fail(std::string("expected '") + c + "' in matrix");
        }
        ++pos;
    };
    expect('[');
    while (true) {
        expect('[');
        std::vector<Scalar> row;
        while (true) {
            ws();
            const std::size_t start = pos;
            while (pos < text.size() && text[pos] != ',' && text[pos] != ']') {
                ++pos;
            }
            try {
                row.push_back(Scalar::parse(field, text.substr(start, pos - start)));
            } catch (const ArithmeticError &e) {
                pos = start;
                fail(e.what());
            }
            ws();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            expect(']');
            break;
        }
        rows.push_back(std::move(row));
        ws();
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        expect(']');
        break;
    }
    ws();
    if (pos != text.size()) {
        fail("trailing characters after matrix");
    }
    try {
        return Matrix::from_rows(field, rows);
    } catch (const ArithmeticError &e) {
        throw ParseError(e.what(), line, col + 1);
    }
}

} // namespace

Poly parse_poly(const Ring &ring, std::string_view text, std::size_t line)
{
    return ExprParser(ring, text, line, 0).parse_all();
}

std::string format_poly(const Poly &p)
{
    return p.to_string();
}

std::string format_header(const Ring &ring, bool affine)
{
    std::string s = ring.commutative() ? "[comm]" : "[nc]";
    s += " n=" + std::to_string(ring.nvars) + " field=" + ring.field.to_string();
    if (affine) {
        s += " affine";
    }
    return s;
}

Ring parse_header(std::string_view line, bool *affine)
{
    const std::string_view full = line;
    std::istringstream in{std::string(line)};
    std::string word;
    Ring ring;
    bool have_flavor = false, have_n = false, have_field = false, aff = false;
    while (in >> word) {
        const auto at = std::string(full).find(word);
        const std::size_t col = at == std::string::npos ? 1 : at + 1;
        if (word == "[comm]" || word == "[nc]") {
            ring.flavor = word == "[comm]" ? Flavor::commutative : Flavor::noncommutative;
            have_flavor = true;
        } else if (word.rfind("n=", 0) == 0) {
            const std::string v = word.substr(2);
            if (v.empty() || v.size() > 3 || !std::all_of(v.begin(), v.end(), ::isdigit) || std::stoul(v) == 0 ||
                std::stoul(v) > 200) {
                throw ParseError("bad variable count '" + v + "'", 1, col);
            }
            ring.nvars = std::stoul(v);
            have_n = true;
        } else if (word.rfind("field=", 0) == 0) {
            try {
                ring.field = FieldSpec::parse(word.substr(6));
            } catch (const ArithmeticError &e) {
                throw ParseError(e.what(), 1, col);
            }
            have_field = true;
        } else if (word == "affine") {
            aff = true;
        } else {
            throw ParseError("unexpected header token '" + word + "'", 1, col);
        }
    }
    if (!have_flavor || !have_n || !have_field) {
        throw ParseError("header must read `[comm|nc] n=<k> field=<q|fp:p>`", 1, 1);
    }
    if (affine) {
        *affine = aff;
    }
    return ring;
}

Endo parse_endo(std::string_view text)
{
    const auto lines = content_lines(text);
    bool affine = false;
    const Ring ring = header_or_throw(lines, &affine);
    std::vector<std::optional<Poly>> images(ring.nvars);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line &ln = lines[li];
        std::string_view body = trim(ln.text);
        if (body.back() == ';') {
            body.remove_suffix(1);
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected `xi = <expr>;`", ln.number, column_of(ln.text, body) + 1);
        }
        const std::string_view lhs = trim(body.substr(0, eq));
        const std::string_view rhs = body.substr(eq + 1);
        Poly v(ring);
        try {
            v = parse_poly(ring, lhs, ln.number);
        } catch (const ParseError &e) {
            throw ParseError(e.detail(), ln.number, column_of(ln.text, lhs) + e.column());
        }
        if (v.size() != 1 || v.degree() != 1 || !v.terms().front().second.is_one()) {
            throw ParseError("left-hand side must be a single variable", ln.number, column_of(ln.text, lhs) + 1);
        }
        const std::size_t idx = v.terms().front().first.letter(0);
        if (images[idx]) {
            throw ParseError("x" + std::to_string(idx + 1) + " assigned twice", ln.number, column_of(ln.text, lhs) + 1);
        }
        try {
            images[idx] = ExprParser(ring, rhs, ln.number, column_of(ln.text, rhs)).parse_all();
        } catch (const PolyError &e) {
            throw ParseError(e.what(), ln.number, column_of(ln.text, rhs) + 1);
        }
    }
    std::vector<Poly> imgs;
    for (std::size_t i = 0; i < ring.nvars; ++i) {
        if (!images[i]) {
            throw ParseError("missing image for x" + std::to_string(i + 1), lines.back().number, 1);
        }
        imgs.push_back(std::move(*images[i]));
    }
    try {
        return Endo(ring, std::move(imgs), affine);
    } catch (const EndoError &e) {
        throw ParseError(e.what(), lines.front().number, 1);
    }
}

std::string format_endo(const Endo &f)
{
    std::string s = format_header(f.ring(), f.affine()) + "\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        s += "x" + std::to_string(i + 1) + " = " + f.image(i).to_string() + ";\n";
    }
    return s;
}

GenWord parse_word(std::string_view text)
{
    const auto lines = content_lines(text);
    const Ring ring = header_or_throw(lines, nullptr);
    GenWord w(ring);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line &ln = lines[li];
        std::string_view body = trim(ln.text);
        bool inverted = false;
        if (body.size() >= 3 && body.substr(body.size() - 3) == "^-1") {
            inverted = true;
            body = trim(body.substr(0, body.size() - 3));
        }
        const std::size_t col = column_of(ln.text, body);
        if (body.rfind("LIN", 0) == 0) {
            const auto rest = trim(body.substr(3));
            const Matrix m = parse_matrix(ring.field, rest, ln.number, column_of(ln.text, rest));
            if (m.rows() != ring.nvars || m.cols() != ring.nvars) {
                throw ParseError("matrix must be " + std::to_string(ring.nvars) + "x" + std::to_string(ring.nvars),
                                 ln.number, col + 1);
            }
            try {
                w.append(Generator::linear(m, inverted));
            } catch (const SynthesisError &e) {
                throw ParseError(e.what(), ln.number, col + 1);
            }
        } else if (body.rfind("ELEM", 0) == 0) {
            auto rest = trim(body.substr(4));
            const auto sp = rest.find_first_of(" \t");
            if (sp == std::string_view::npos) {
                throw ParseError("expected `ELEM xi <expr>`", ln.number, col + 1);
            }
            const auto name = rest.substr(0, sp);
            const auto expr = rest.substr(sp + 1);
            const Poly v = ExprParser(ring, name, ln.number, column_of(ln.text, name)).parse_all();
            if (v.size() != 1 || v.degree() != 1 || !v.terms().front().second.is_one()) {
                throw ParseError("elementary target must be a variable", ln.number, column_of(ln.text, name) + 1);
            }
            const Poly addend = ExprParser(ring, expr, ln.number, column_of(ln.text, expr)).parse_all();
            try {
                w.append(Generator::elementary(v.terms().front().first.letter(0), addend, inverted));
            } catch (const SynthesisError &e) {
                throw ParseError(e.what(), ln.number, column_of(ln.text, expr) + 1);
            }
        } else {
            throw ParseError("expected LIN or ELEM", ln.number, col + 1);
        }
    }
    return w;
}

std::string format_word(const GenWord &w)
{
    std::string s = format_header(w.ring) + "\n";
    for (const auto &g : w.gens) {
        if (g.kind == Generator::Kind::linear) {
            s += "LIN " + g.matrix.to_string();
        } else {
            s += "ELEM x" + std::to_string(g.target + 1) + " " + g.addend.to_string();
        }
        s += g.inverted ? " ^-1\n" : "\n";
    }
    return s;
}

} // namespace polyaut
