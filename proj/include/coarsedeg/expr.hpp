#ifndef COARSEDEG_EXPR_HPP
#define COARSEDEG_EXPR_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "coarsedeg/util.hpp"

namespace coarsedeg {

// ---------------------------------------------------------------------------
// Arithmetic expression trees over x1..xn with +, -, *, /, abs, min, max,
// sqrt, floor. Grammar:
//   map    := "(" expr { "," expr } ")"
//   expr   := term { ("+"|"-") term }
//   term   := factor { ("*"|"/") factor }
//   factor := number | var | func "(" expr { "," expr } ")" | "(" expr ")"
//           | "-" factor
// The U+2212 minus sign is accepted as a synonym for "-".
// ---------------------------------------------------------------------------

enum class ExprOp { Number, Var, Neg, Add, Sub, Mul, Div, Abs, Min, Max, Sqrt, Floor };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprOp op = ExprOp::Number;
    double value = 0.0; // Number payload
    int var_index = 0;  // Var payload, 0-based
    std::vector<ExprPtr> args;
};

inline ExprPtr make_number(double v) {
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::Number;
    n->value = v;
    return n;
}

inline ExprPtr make_var(int index0) {
    auto n = std::make_shared<ExprNode>();
    n->op = ExprOp::Var;
    n->var_index = index0;
    return n;
}

inline ExprPtr make_node(ExprOp op, std::vector<ExprPtr> args) {
    auto n = std::make_shared<ExprNode>();
    n->op = op;
    n->args = std::move(args);
    return n;
}

inline double eval_expr(const ExprNode& e, const WorldPoint& p) {
    switch (e.op) {
        case ExprOp::Number: return e.value;
        case ExprOp::Var: return p[static_cast<std::size_t>(e.var_index)];
        case ExprOp::Neg: return -eval_expr(*e.args[0], p);
        case ExprOp::Add: return eval_expr(*e.args[0], p) + eval_expr(*e.args[1], p);
        case ExprOp::Sub: return eval_expr(*e.args[0], p) - eval_expr(*e.args[1], p);
        case ExprOp::Mul: return eval_expr(*e.args[0], p) * eval_expr(*e.args[1], p);
        case ExprOp::Div: {
            const double num = eval_expr(*e.args[0], p);
            const double den = eval_expr(*e.args[1], p);
            if (den == 0.0) throw EvalError("division by zero");
            return num / den;
        }
        case ExprOp::Abs: return std::fabs(eval_expr(*e.args[0], p));
        case ExprOp::Sqrt: {
            const double v = eval_expr(*e.args[0], p);
            if (v < 0.0) throw EvalError("sqrt of negative value");
            return std::sqrt(v);
        }
        case ExprOp::Floor: return std::floor(eval_expr(*e.args[0], p));
        case ExprOp::Min: {
            double best = eval_expr(*e.args[0], p);
            for (std::size_t i = 1; i < e.args.size(); ++i)
                best = std::min(best, eval_expr(*e.args[i], p));
            return best;
        }
        case ExprOp::Max: {
            double best = eval_expr(*e.args[0], p);
            for (std::size_t i = 1; i < e.args.size(); ++i)
                best = std::max(best, eval_expr(*e.args[i], p));
            return best;
        }
    }
    throw EvalError("corrupt expression node");
}

/// Largest 1-based variable index appearing in the tree (0 if none).
inline int max_var_index(const ExprNode& e) {
    int m = (e.op == ExprOp::Var) ? e.var_index + 1 : 0;
    for (const auto& a : e.args) m = std::max(m, max_var_index(*a));
    return m;
}

struct ParsedMap {
    std::vector<ExprPtr> components;
    int max_var = 0; // highest x-index referenced, 1-based
};

namespace detail {

enum class TokKind { LParen, RParen, Comma, Plus, Minus, Star, Slash, Number, Ident, End };

struct Token {
    TokKind kind = TokKind::End;
    double number = 0.0;
    std::string ident;
    int line = 1;
    int column = 0; // 0-based byte offset within the line
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg, const Token& at) const {
        throw ParseError(msg, at.line, at.column);
    }

private:
    void advance() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
                ++col_;
            } else if (c == '\n') {
                ++pos_;
                ++line_;
                col_ = 0;
            } else {
                break;
            }
        }
        tok_ = Token{};
        tok_.line = line_;
        tok_.column = col_;
        if (pos_ >= text_.size()) {
            tok_.kind = TokKind::End;
            return;
        }
        const char c = text_[pos_];
        switch (c) {
            case '(': tok_.kind = TokKind::LParen; consume(1); return;
            case ')': tok_.kind = TokKind::RParen; consume(1); return;
            case ',': tok_.kind = TokKind::Comma; consume(1); return;
            case '+': tok_.kind = TokKind::Plus; consume(1); return;
            case '-': tok_.kind = TokKind::Minus; consume(1); return;
            case '*': tok_.kind = TokKind::Star; consume(1); return;
            case '/': tok_.kind = TokKind::Slash; consume(1); return;
            default: break;
        }
        // U+2212 minus sign (UTF-8 e2 88 92)
        if (static_cast<unsigned char>(c) == 0xe2 && pos_ + 2 < text_.size() &&
            static_cast<unsigned char>(text_[pos_ + 1]) == 0x88 &&
            static_cast<unsigned char>(text_[pos_ + 2]) == 0x92) {
            tok_.kind = TokKind::Minus;
            consume(3);
            return;
        }
        if ((c >= '0' && c <= '9') || c == '.') {
            std::size_t end = pos_;
            while (end < text_.size() && text_[end] >= '0' && text_[end] <= '9') ++end;
            if (end < text_.size() && text_[end] == '.') {
                ++end;
                while (end < text_.size() && text_[end] >= '0' && text_[end] <= '9') ++end;
            }
            if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
                std::size_t ex = end + 1;
                if (ex < text_.size() && (text_[ex] == '+' || text_[ex] == '-')) ++ex;
                std::size_t digits = ex;
                while (digits < text_.size() && text_[digits] >= '0' && text_[digits] <= '9')
                    ++digits;
                if (digits > ex) end = digits; // only a well-formed exponent belongs
            }
            if (end == pos_ + 1 && c == '.')
                throw ParseError("malformed number", line_, col_);
            double value = 0.0;
            const auto res = std::from_chars(text_.data() + pos_, text_.data() + end, value);
            if (res.ec != std::errc())
                throw ParseError("malformed number", line_, col_);
            tok_.kind = TokKind::Number;
            tok_.number = value;
            consume(end - pos_);
            return;
        }
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   ((text_[end] >= 'a' && text_[end] <= 'z') ||
                    (text_[end] >= 'A' && text_[end] <= 'Z') ||
                    (text_[end] >= '0' && text_[end] <= '9') || text_[end] == '_'))
                ++end;
            tok_.kind = TokKind::Ident;
            tok_.ident = text_.substr(pos_, end - pos_);
            consume(end - pos_);
            return;
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", line_, col_);
    }

    void consume(std::size_t n) {
        pos_ += n;
        col_ += static_cast<int>(n);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 0;
    Token tok_;
};

class ExprParser {
public:
    explicit ExprParser(const std::string& text) : lex_(text) {}

    ParsedMap parse_map() {
        expect(TokKind::LParen, "expected '('");
        ParsedMap out;
        out.components.push_back(parse_expr());
        while (lex_.peek().kind == TokKind::Comma) {
            lex_.take();
            out.components.push_back(parse_expr());
        }
        expect(TokKind::RParen, "expected ')' or ','");
        if (lex_.peek().kind != TokKind::End)
            lex_.fail("trailing input after map expression", lex_.peek());
        for (const auto& c : out.components)
            out.max_var = std::max(out.max_var, max_var_index(*c));
        return out;
    }

private:
    Token expect(TokKind kind, const std::string& msg) {
        if (lex_.peek().kind != kind) lex_.fail(msg, lex_.peek());
        return lex_.take();
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (true) {
            const TokKind k = lex_.peek().kind;
            if (k == TokKind::Plus || k == TokKind::Minus) {
                lex_.take();
                ExprPtr rhs = parse_term();
                lhs = make_node(k == TokKind::Plus ? ExprOp::Add : ExprOp::Sub,
                                {std::move(lhs), std::move(rhs)});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        while (true) {
            const TokKind k = lex_.peek().kind;
            if (k == TokKind::Star || k == TokKind::Slash) {
                lex_.take();
                ExprPtr rhs = parse_factor();
                lhs = make_node(k == TokKind::Star ? ExprOp::Mul : ExprOp::Div,
                                {std::move(lhs), std::move(rhs)});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr parse_factor() {
        const Token t = lex_.peek();
        switch (t.kind) {
            case TokKind::Number:
                lex_.take();
                return make_number(t.number);
            case TokKind::Minus:
                lex_.take();
                return make_node(ExprOp::Neg, {parse_factor()});
            case TokKind::LParen: {
                lex_.take();
                ExprPtr inner = parse_expr();
                expect(TokKind::RParen, "expected ')'");
                return inner;
            }
            case TokKind::Ident:
                lex_.take();
                return finish_ident(t);
            default:
                lex_.fail("expected a number, variable, function, or '('", t);
        }
    }

    ExprPtr finish_ident(const Token& t) {
        const std::string& name = t.ident;
        if (name.size() >= 2 && name[0] == 'x') {
            bool digits = true;
            for (std::size_t i = 1; i < name.size(); ++i)
                if (name[i] < '0' || name[i] > '9') { digits = false; break; }
            if (digits) {
                int idx = 0;
                const auto res =
                    std::from_chars(name.data() + 1, name.data() + name.size(), idx);
                if (res.ec != std::errc() || idx < 1)
                    lex_.fail("variable index must be a positive integer", t);
                return make_var(idx - 1);
            }
        }
        ExprOp op;
        std::size_t min_arity = 1, max_arity = 1;
        if (name == "abs") op = ExprOp::Abs;
        else if (name == "sqrt") op = ExprOp::Sqrt;
        else if (name == "floor") op = ExprOp::Floor;
        else if (name == "min") { op = ExprOp::Min; min_arity = 2; max_arity = 64; }
        else if (name == "max") { op = ExprOp::Max; min_arity = 2; max_arity = 64; }
        else lex_.fail("unknown identifier '" + name + "'", t);

        expect(TokKind::LParen, "expected '(' after function name");
        std::vector<ExprPtr> args;
        args.push_back(parse_expr());
        while (lex_.peek().kind == TokKind::Comma) {
            lex_.take();
            args.push_back(parse_expr());
        }
        expect(TokKind::RParen, "expected ')' or ','");
        if (args.size() < min_arity || args.size() > max_arity)
            lex_.fail("function '" + name + "' called with wrong arity", t);
        return make_node(op, std::move(args));
    }

    Lexer lex_;
};

} // namespace detail

/// Parse "(e1, ..., em)" into per-component expression trees. Errors carry
/// the 1-based line and the 0-based byte column of the offending token.
inline ParsedMap parse_map_expr(const std::string& text) {
    if (text.empty()) throw ParseError("empty map expression", 1, 0);
    detail::ExprParser p(text);
    return p.parse_map();
}

} // namespace coarsedeg

#endif // COARSEDEG_EXPR_HPP
