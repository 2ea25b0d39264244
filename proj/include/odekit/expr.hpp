#ifndef ODEKIT_EXPR_HPP
#define ODEKIT_EXPR_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "odekit/rational.hpp"

namespace odekit {

/// Parse failure carrying the byte offset of the offending token and the set
/// of tokens that would have been accepted there.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string &found);
    ParseError(std::size_t offset, const std::string &message);

    std::size_t offset() const { return offset_; }
    const std::vector<std::string> &expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Expression tree as written by the user, before expansion.
struct SourceExpr {
    enum class Kind { Number, Symbol, Derivative, Neg, Sum, Product, Power };

    Kind kind = Kind::Number;
    Rational value;                ///< Number
    std::string name;              ///< Symbol, Derivative
    unsigned order = 0;            ///< Derivative
    long exponent = 0;             ///< Power (may be negative here; rejected on expansion)
    std::vector<SourceExpr> args;  ///< Neg: 1, Sum/Product: >= 2, Power: 1 (base)
    std::size_t offset = 0;        ///< byte offset in the source, for diagnostics

    static SourceExpr number(const Rational &v, std::size_t at = 0);
    static SourceExpr symbol(std::string n, std::size_t at = 0);
    static SourceExpr derivative(std::string n, unsigned k, std::size_t at = 0);

    /// Structural equality, ignoring source offsets.
    friend bool operator==(const SourceExpr &a, const SourceExpr &b);
};

/// Parses the infix equation grammar (see docs/grammar.md). "lhs = rhs" is
/// returned as lhs - rhs.
SourceExpr parse(std::string_view text);

} // namespace odekit

#endif
