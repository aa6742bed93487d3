#ifndef POLYAUT_TEXT_HPP
#define POLYAUT_TEXT_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <polyaut/endo.hpp>
#include <polyaut/poly.hpp>
#include <polyaut/tameword.hpp>

namespace polyaut
{

class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string &msg, std::size_t line, std::size_t column)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          detail_(msg), line_(line), column_(column)
    {
    }
    /// Message without the position prefix.
    const std::string &detail() const { return detail_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::string detail_;
    std::size_t line_, column_;
};

/// Expression grammar: x1..xn or the aliases x,y,z,t; + - * ^; integer and
/// a/b literals; parentheses.  `line` is only used for error positions.
Poly parse_poly(const Ring &ring, std::string_view text, std::size_t line = 1);
std::string format_poly(const Poly &p);

/// Header `[comm|nc] n=<k> field=<q|fp:p> [affine]`, then `xi = <expr>;`
/// for every variable.
Endo parse_endo(std::string_view text);
std::string format_endo(const Endo &f);
std::string format_header(const Ring &ring, bool affine = false);
Ring parse_header(std::string_view line, bool *affine = nullptr);

/// Same header, then one generator per line: `LIN [[..],..]` or
/// `ELEM xi <expr>`, either optionally followed by `^-1`.
GenWord parse_word(std::string_view text);
std::string format_word(const GenWord &w);

} // namespace polyaut

#endif
