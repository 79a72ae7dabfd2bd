#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>

#include "sgm/recipe.hpp"

namespace sgm {

/// Half-open character range in the source text.
struct Span {
    size_t begin = 0;
    size_t end = 0;
};

/// Parse error with the offending span.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(Span span, const std::string& msg) : std::runtime_error(msg), span_(span) {}
    Span span() const { return span_; }

private:
    Span span_;
};

/// Well-formed but meaningless input: mismatched connected-sum dimensions,
/// out-of-range parameters.
class SemanticError : public std::runtime_error {
public:
    SemanticError(Span span, const std::string& msg) : std::runtime_error(msg), span_(span) {}
    Span span() const { return span_; }

private:
    Span span_;
};

/// Abstract syntax tree for the manifold DSL, mirroring Recipe plus source
/// spans for error messages.
///
/// Grammar: expr = csum ; csum = prod { "#" prod } ; prod = atom { "x" atom } ;
/// atom = "S(" nat ")" | "T(" nat ")" | "RP(" nat ")" | "CP(" nat ")" | "(" expr ")".
/// Whitespace is insignificant; "x" binds tighter than "#".
struct Expression {
    Recipe::Kind kind = Recipe::Kind::Sphere;
    int param = 0;
    std::unique_ptr<Expression> left, right;
    Span span;
};

bool operator==(const Expression& a, const Expression& b);  // structural; spans ignored

/// Parses and semantically checks an expression. Throws SyntaxError or
/// SemanticError.
Expression parse_expression(const std::string& text);

/// Canonical text; parse(print(e)) reproduces e structurally.
std::string print_expression(const Expression& e);

RecipePtr to_recipe(const Expression& e);

long long expression_dimension(const Expression& e);

}  // namespace sgm
