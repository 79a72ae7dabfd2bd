#include "sgm/parser.hpp"

#include <cctype>

#include "sgm/errors.hpp"

namespace sgm {

namespace {

constexpr long long kMaxParam = 1'000'000;  // sanity cap; the CLI's --max-dim guard is far below

struct Token {
    enum class Kind { Name, Number, LParen, RParen, Times, Hash, End };
    Kind kind;
    std::string text;
    Span span;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& current() const { return current_; }

    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        size_t start = pos_;
        if (pos_ >= text_.size()) {
            current_ = {Token::Kind::End, "", {start, start}};
            return;
        }
        char c = text_[pos_];
        if (c == '(') { current_ = {Token::Kind::LParen, "(", {start, ++pos_}}; return; }
        if (c == ')') { current_ = {Token::Kind::RParen, ")", {start, ++pos_}}; return; }
        if (c == '#') { current_ = {Token::Kind::Hash, "#", {start, ++pos_}}; return; }
        if (c == 'x') { current_ = {Token::Kind::Times, "x", {start, ++pos_}}; return; }
        if (std::isupper(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isupper(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            current_ = {Token::Kind::Name, text_.substr(start, pos_ - start), {start, pos_}};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            current_ = {Token::Kind::Number, text_.substr(start, pos_ - start), {start, pos_}};
            return;
        }
        throw SyntaxError({start, start + 1}, std::string("unexpected character '") + c + "'");
    }

private:
    const std::string& text_;
    size_t pos_ = 0;
    Token current_;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lexer_(text) {}

    std::unique_ptr<Expression> parse() {
        auto e = parse_csum();
        expect(Token::Kind::End, "end of input");
        return e;
    }

private:
    std::unique_ptr<Expression> parse_csum() {
        auto lhs = parse_prod();
        while (lexer_.current().kind == Token::Kind::Hash) {
            lexer_.advance();
            auto rhs = parse_prod();
            lhs = binary(Recipe::Kind::ConnectedSum, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    std::unique_ptr<Expression> parse_prod() {
        auto lhs = parse_atom();
        while (lexer_.current().kind == Token::Kind::Times) {
            lexer_.advance();
            auto rhs = parse_atom();
            lhs = binary(Recipe::Kind::Product, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    std::unique_ptr<Expression> parse_atom() {
        const Token tok = lexer_.current();
        if (tok.kind == Token::Kind::LParen) {
            lexer_.advance();
            auto e = parse_csum();
            Span close = expect(Token::Kind::RParen, "')'");
            e->span = {tok.span.begin, close.end};
            return e;
        }
        if (tok.kind != Token::Kind::Name)
            throw SyntaxError(tok.span, "expected a builder name or '('");
        Recipe::Kind kind;
        if (tok.text == "S") kind = Recipe::Kind::Sphere;
        else if (tok.text == "T") kind = Recipe::Kind::Torus;
        else if (tok.text == "RP") kind = Recipe::Kind::RealProjective;
        else if (tok.text == "CP") kind = Recipe::Kind::ComplexProjective;
        else throw SyntaxError(tok.span, "unknown builder '" + tok.text + "' (expected S, T, RP or CP)");
        lexer_.advance();
        expect(Token::Kind::LParen, "'('");
        const Token num = lexer_.current();
        if (num.kind != Token::Kind::Number) throw SyntaxError(num.span, "expected a number");
        lexer_.advance();
        Span close = expect(Token::Kind::RParen, "')'");

        long long value = 0;
        for (char c : num.text) {
            value = value * 10 + (c - '0');
            if (value > kMaxParam)
                throw SemanticError(num.span, "parameter " + num.text + " is out of range");
        }
        if (value < 1) throw SemanticError(num.span, "parameter must be at least 1");

        auto e = std::make_unique<Expression>();
        e->kind = kind;
        e->param = static_cast<int>(value);
        e->span = {tok.span.begin, close.end};
        return e;
    }

    std::unique_ptr<Expression> binary(Recipe::Kind kind, std::unique_ptr<Expression> lhs,
                                       std::unique_ptr<Expression> rhs) {
        auto e = std::make_unique<Expression>();
        e->kind = kind;
        e->span = {lhs->span.begin, rhs->span.end};
        e->left = std::move(lhs);
        e->right = std::move(rhs);
        return e;
    }

    Span expect(Token::Kind kind, const std::string& what) {
        const Token tok = lexer_.current();
        if (tok.kind != kind)
            throw SyntaxError(tok.span, "expected " + what + (tok.text.empty() ? "" : ", got '" + tok.text + "'"));
        lexer_.advance();
        return tok.span;
    }

    Lexer lexer_;
};

void check_semantics(const Expression& e) {
    if (e.left) check_semantics(*e.left);
    if (e.right) check_semantics(*e.right);
    if (e.kind == Recipe::Kind::ConnectedSum) {
        long long dl = expression_dimension(*e.left);
        long long dr = expression_dimension(*e.right);
        if (dl != dr)
            throw SemanticError(e.span, "connected sum of different dimensions " + std::to_string(dl) +
                                            " and " + std::to_string(dr));
        if (dl < 2) throw SemanticError(e.span, "connected sum requires dimension at least 2");
    }
}

}  // namespace

bool operator==(const Expression& a, const Expression& b) {
    if (a.kind != b.kind || a.param != b.param) return false;
    if (static_cast<bool>(a.left) != static_cast<bool>(b.left)) return false;
    if (a.left && !(*a.left == *b.left)) return false;
    if (static_cast<bool>(a.right) != static_cast<bool>(b.right)) return false;
    if (a.right && !(*a.right == *b.right)) return false;
    return true;
}

Expression parse_expression(const std::string& text) {
    Parser parser(text);
    auto e = parser.parse();
    check_semantics(*e);
    return std::move(*e);
}

std::string print_expression(const Expression& e) { return recipe_text(*to_recipe(e)); }

RecipePtr to_recipe(const Expression& e) {
    switch (e.kind) {
        case Recipe::Kind::Sphere: return sphere_recipe(e.param);
        case Recipe::Kind::Torus: return torus_recipe(e.param);
        case Recipe::Kind::RealProjective: return real_projective_recipe(e.param);
        case Recipe::Kind::ComplexProjective: return complex_projective_recipe(e.param);
        case Recipe::Kind::Product: return product_recipe(to_recipe(*e.left), to_recipe(*e.right));
        case Recipe::Kind::ConnectedSum:
            return connected_sum_recipe(to_recipe(*e.left), to_recipe(*e.right));
    }
    throw Error(errc::invalid_argument, "malformed expression node");
}

long long expression_dimension(const Expression& e) {
    switch (e.kind) {
        case Recipe::Kind::Sphere:
        case Recipe::Kind::Torus:
        case Recipe::Kind::RealProjective: return e.param;
        case Recipe::Kind::ComplexProjective: return 2LL * e.param;
        case Recipe::Kind::Product: return expression_dimension(*e.left) + expression_dimension(*e.right);
        case Recipe::Kind::ConnectedSum: return expression_dimension(*e.left);
    }
    return 0;
}

}  // namespace sgm
