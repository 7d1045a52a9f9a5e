#include "adjoints/parse.hpp"

#include <cctype>

#include "adjoints/errors.hpp"

namespace adjoints {

namespace {

struct Token {
    enum Kind { Num, Sym, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back(Token{Token::Num, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back(Token{Token::Sym, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        Token::Kind k;
        switch (c) {
            case '+': k = Token::Plus; break;
            case '-': k = Token::Minus; break;
            case '*': k = Token::Star; break;
            case '/': k = Token::Slash; break;
            case '^': k = Token::Caret; break;
            case '(': k = Token::LParen; break;
            case ')': k = Token::RParen; break;
            default:
                throw SyntaxError(i, std::string("unexpected character '") + c + "'");
        }
        out.push_back(Token{k, std::string(1, c), i});
        ++i;
    }
    out.push_back(Token{Token::End, "", s.size()});
    return out;
}

struct Node {
    enum Kind { Num, Sym, Add, Sub, Mul, Div, Neg, Pow, BigO } kind;
    std::string text;
    long expnt = 0;
    std::vector<Node> kids;
    std::size_t pos = 0;
};

class Parser {
public:
    Parser(const std::string& text, bool allow_bigo)
        : toks_(tokenize(text)), allow_bigo_(allow_bigo) {}

    Node parse() {
        Node n = expr();
        expect(Token::End, "end of input");
        return n;
    }

private:
    const Token& peek() const { return toks_[i_]; }
    Token take() { return toks_[i_++]; }
    void expect(Token::Kind k, const std::string& what) {
        if (peek().kind != k)
            throw SyntaxError(peek().pos, "expected " + what + ", found '" + peek().text + "'");
        ++i_;
    }

    Node expr() {
        Node acc = term();
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            Token op = take();
            Node rhs = term();
            Node n;
            n.kind = op.kind == Token::Plus ? Node::Add : Node::Sub;
            n.pos = op.pos;
            n.kids.push_back(std::move(acc));
            n.kids.push_back(std::move(rhs));
            acc = std::move(n);
        }
        return acc;
    }

    Node term() {
        Node acc = unary();
        while (peek().kind == Token::Star || peek().kind == Token::Slash) {
            Token op = take();
            Node rhs = unary();
            Node n;
            n.kind = op.kind == Token::Star ? Node::Mul : Node::Div;
            n.pos = op.pos;
            n.kids.push_back(std::move(acc));
            n.kids.push_back(std::move(rhs));
            acc = std::move(n);
        }
        return acc;
    }

    Node unary() {
        if (peek().kind == Token::Minus) {
            Token op = take();
            Node n;
            n.kind = Node::Neg;
            n.pos = op.pos;
            n.kids.push_back(unary());
            return n;
        }
        if (peek().kind == Token::Plus) {
            take();
            return unary();
        }
        return postfix();
    }

    Node postfix() {
        Node base = primary();
        if (peek().kind == Token::Caret) {
            Token op = take();
            Node n;
            n.kind = Node::Pow;
            n.pos = op.pos;
            n.expnt = signed_integer();
            n.kids.push_back(std::move(base));
            return n;
        }
        return base;
    }

    long signed_integer() {
        bool neg = false;
        if (peek().kind == Token::Minus) {
            take();
            neg = true;
        }
        if (peek().kind != Token::Num)
            throw SyntaxError(peek().pos, "expected an integer exponent");
        Token t = take();
        long v = 0;
        for (char c : t.text) {
            if (v > (1L << 40))
                throw SyntaxError(t.pos, "exponent too large");
            v = v * 10 + (c - '0');
        }
        return neg ? -v : v;
    }

    Node primary() {
        const Token& t = peek();
        if (t.kind == Token::Num) {
            Node n;
            n.kind = Node::Num;
            n.text = t.text;
            n.pos = t.pos;
            take();
            return n;
        }
        if (t.kind == Token::Sym) {
            if (allow_bigo_ && t.text == "O" && toks_[i_ + 1].kind == Token::LParen) {
                Token o = take();
                take();  // '('
                Node n;
                n.kind = Node::BigO;
                n.pos = o.pos;
                n.expnt = bigo_exponent();
                expect(Token::RParen, "')'");
                return n;
            }
            Node n;
            n.kind = Node::Sym;
            n.text = t.text;
            n.pos = t.pos;
            take();
            return n;
        }
        if (t.kind == Token::LParen) {
            take();
            Node n = expr();
            expect(Token::RParen, "')'");
            return n;
        }
        throw SyntaxError(t.pos, "expected a value, found '" + t.text + "'");
    }

    long bigo_exponent() {
        // accepted forms: 1, t, t^k
        if (peek().kind == Token::Num) {
            Token t = take();
            if (t.text != "1") throw SyntaxError(t.pos, "O(...) accepts 1, t or t^k");
            return 0;
        }
        if (peek().kind == Token::Sym && peek().text == "t") {
            take();
            if (peek().kind == Token::Caret) {
                take();
                return signed_integer();
            }
            return 1;
        }
        throw SyntaxError(peek().pos, "O(...) accepts 1, t or t^k");
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    bool allow_bigo_;
};

// ------------------------------------------------------------- evaluators

MultiPoly eval_poly(const Node& n, const std::vector<std::string>& vars) {
    switch (n.kind) {
        case Node::Num:
            return MultiPoly::constant(vars, rat_from_string(n.text));
        case Node::Sym: {
            MultiPoly p{vars};
            if (p.var_index(n.text) < 0)
                throw UnknownVariable("unknown variable '" + n.text + "'");
            return MultiPoly::variable(vars, n.text);
        }
        case Node::Add:
            return eval_poly(n.kids[0], vars) + eval_poly(n.kids[1], vars);
        case Node::Sub:
            return eval_poly(n.kids[0], vars) - eval_poly(n.kids[1], vars);
        case Node::Neg:
            return -eval_poly(n.kids[0], vars);
        case Node::Mul:
            return eval_poly(n.kids[0], vars) * eval_poly(n.kids[1], vars);
        case Node::Div: {
            MultiPoly num = eval_poly(n.kids[0], vars);
            MultiPoly den = eval_poly(n.kids[1], vars);
            if (!den.is_constant())
                throw SyntaxError(n.pos, "polynomial division requires a constant divisor");
            Rat d = den.constant_value();
            if (d == 0) throw DivisionByZero("division by zero");
            return num * (Rat(1) / d);
        }
        case Node::Pow: {
            MultiPoly base = eval_poly(n.kids[0], vars);
            if (n.expnt < 0) {
                if (!base.is_constant())
                    throw SyntaxError(n.pos, "negative exponents require a constant base");
                return MultiPoly::constant(vars, rat_pow(base.constant_value(), n.expnt));
            }
            return base.pow(n.expnt);
        }
        case Node::BigO:
            throw SyntaxError(n.pos, "O(...) is only meaningful in series");
    }
    throw SyntaxError(n.pos, "malformed expression");
}

TowerElem eval_tower(const Node& n, const TowerPtr& t) {
    switch (n.kind) {
        case Node::Num:
            return TowerElem::from_rational(t, rat_from_string(n.text));
        case Node::Sym:
            return TowerElem::symbol(t, n.text);
        case Node::Add:
            return eval_tower(n.kids[0], t) + eval_tower(n.kids[1], t);
        case Node::Sub:
            return eval_tower(n.kids[0], t) - eval_tower(n.kids[1], t);
        case Node::Neg:
            return -eval_tower(n.kids[0], t);
        case Node::Mul:
            return eval_tower(n.kids[0], t) * eval_tower(n.kids[1], t);
        case Node::Div:
            return eval_tower(n.kids[0], t) / eval_tower(n.kids[1], t);
        case Node::Pow:
            return eval_tower(n.kids[0], t).pow(n.expnt);
        case Node::BigO:
            throw SyntaxError(n.pos, "O(...) is only meaningful in series");
    }
    throw SyntaxError(n.pos, "malformed expression");
}

TruncLaurent eval_series(const Node& n, const TowerPtr& t) {
    switch (n.kind) {
        case Node::Num:
            return TruncLaurent::constant(
                TowerElem::from_rational(t, rat_from_string(n.text)));
        case Node::Sym:
            if (n.text == "t") return TruncLaurent::t_power(t, 1);
            return TruncLaurent::constant(TowerElem::symbol(t, n.text));
        case Node::Add:
            return eval_series(n.kids[0], t) + eval_series(n.kids[1], t);
        case Node::Sub:
            return eval_series(n.kids[0], t) - eval_series(n.kids[1], t);
        case Node::Neg:
            return -eval_series(n.kids[0], t);
        case Node::Mul:
            return eval_series(n.kids[0], t) * eval_series(n.kids[1], t);
        case Node::Div:
            return eval_series(n.kids[0], t) / eval_series(n.kids[1], t);
        case Node::Pow: {
            TruncLaurent base = eval_series(n.kids[0], t);
            if (n.expnt >= 0) return base.pow(n.expnt);
            TruncLaurent one = TruncLaurent::constant(TowerElem::one(t));
            return one / base.pow(-n.expnt);
        }
        case Node::BigO:
            return TruncLaurent::zero(t, n.expnt);
    }
    throw SyntaxError(n.pos, "malformed expression");
}

TPoly eval_upoly(const Node& n, const TowerPtr& t, const std::string& gen) {
    auto constant = [&](const TowerElem& c) { return TPoly{c}; };
    switch (n.kind) {
        case Node::Num:
            return constant(TowerElem::from_rational(t, rat_from_string(n.text)));
        case Node::Sym:
            if (n.text == gen) return TPoly{TowerElem::zero(t), TowerElem::one(t)};
            return constant(TowerElem::symbol(t, n.text));
        case Node::Add:
            return tp_add(eval_upoly(n.kids[0], t, gen), eval_upoly(n.kids[1], t, gen));
        case Node::Sub:
            return tp_sub(eval_upoly(n.kids[0], t, gen), eval_upoly(n.kids[1], t, gen));
        case Node::Neg:
            return tp_sub(TPoly{}, eval_upoly(n.kids[0], t, gen));
        case Node::Mul:
            return tp_mul(eval_upoly(n.kids[0], t, gen), eval_upoly(n.kids[1], t, gen));
        case Node::Div: {
            TPoly num = eval_upoly(n.kids[0], t, gen);
            TPoly den = eval_upoly(n.kids[1], t, gen);
            if (tp_degree(den) > 0)
                throw SyntaxError(n.pos, "cannot divide by the generator in a minimal polynomial");
            if (tp_degree(den) < 0) throw DivisionByZero("division by zero");
            return tp_scale(num, den[0].inv());
        }
        case Node::Pow: {
            TPoly base = eval_upoly(n.kids[0], t, gen);
            if (n.expnt < 0) {
                if (tp_degree(base) > 0)
                    throw SyntaxError(n.pos, "negative power of the generator");
                if (tp_degree(base) < 0) throw DivisionByZero("division by zero");
                return TPoly{base[0].pow(n.expnt)};
            }
            TPoly acc{TowerElem::one(t)};
            for (long k = 0; k < n.expnt; ++k) acc = tp_mul(acc, base);
            return acc;
        }
        case Node::BigO:
            throw SyntaxError(n.pos, "O(...) is only meaningful in series");
    }
    throw SyntaxError(n.pos, "malformed expression");
}

}  // namespace

MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& variables) {
    Parser p(text, /*allow_bigo=*/false);
    return eval_poly(p.parse(), variables);
}

TowerElem parse_tower_elem(const std::string& text, const TowerPtr& tower) {
    Parser p(text, /*allow_bigo=*/false);
    return eval_tower(p.parse(), tower);
}

TruncLaurent parse_series(const std::string& text, const TowerPtr& tower) {
    Parser p(text, /*allow_bigo=*/true);
    return eval_series(p.parse(), tower);
}

std::vector<TowerElem> parse_minpoly(const std::string& text, const TowerPtr& tower,
                                     const std::string& gen) {
    Parser p(text, /*allow_bigo=*/false);
    return eval_upoly(p.parse(), tower, gen);
}

}  // namespace adjoints
