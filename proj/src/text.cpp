#include "vkernel/text.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace vk {

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
    enum class Type { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Semi, End };
    Type type = Type::End;
    std::string text;
    size_t pos = 0;
};

[[noreturn]] void syntax_error(const std::string& message, size_t pos) {
    fail(Errc::syntax_error, message + " at position " + std::to_string(pos + 1));
}

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        t.pos = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.type = Token::Type::Int;
            t.text = s.substr(i, j - i);
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            t.type = Token::Type::Ident;
            t.text = s.substr(i, j - i);
            i = j;
        } else {
            switch (c) {
                case '+': t.type = Token::Type::Plus; break;
                case '-': t.type = Token::Type::Minus; break;
                case '*': t.type = Token::Type::Star; break;
                case '/': t.type = Token::Type::Slash; break;
                case '^': t.type = Token::Type::Caret; break;
                case '(': t.type = Token::Type::LParen; break;
                case ')': t.type = Token::Type::RParen; break;
                case ';': t.type = Token::Type::Semi; break;
                default:
                    syntax_error(std::string("unexpected character '") + c + "'", i);
            }
            t.text = std::string(1, c);
            ++i;
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.type = Token::Type::End;
    end.pos = s.size();
    out.push_back(end);
    return out;
}

// ---------------------------------------------------------------------------
// Identifier classification

struct IdentInfo {
    enum class What { Coord, Cov, Func };
    What what;
    CoordId coord{};
    Covector cov{};
    FuncName func = FuncName::Sin;
};

std::optional<std::vector<int>> split_indices(const std::string& body) {
    std::vector<int> idx;
    size_t i = 0;
    while (i < body.size()) {
        if (!std::isdigit(static_cast<unsigned char>(body[i]))) return std::nullopt;
        size_t j = i;
        long v = 0;
        while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) {
            v = v * 10 + (body[j] - '0');
            if (v > 0xFFFF) return std::nullopt;
            ++j;
        }
        idx.push_back(static_cast<int>(v));
        i = j;
        if (i < body.size()) {
            if (body[i] != '_') return std::nullopt;
            ++i;
            if (i == body.size()) return std::nullopt;
        }
    }
    return idx.empty() ? std::nullopt : std::make_optional(idx);
}

void check_range(const std::string& name, const char* which, int value, int bound, size_t pos) {
    if (value < 1 || value > bound)
        fail(Errc::index_out_of_range, "coordinate " + name + ": " + which + " index " +
                                           std::to_string(value) + " outside 1.." +
                                           std::to_string(bound) + " at position " +
                                           std::to_string(pos + 1));
}

std::optional<CoordId> classify_coord(const std::string& name, char head, const std::string& body,
                                      const Dims& dims, size_t pos) {
    auto idx = split_indices(body);
    if (!idx) return std::nullopt;
    switch (head) {
        case 'x':
            if (idx->size() != 1) return std::nullopt;
            check_range(name, "base", (*idx)[0], dims.n, pos);
            return CoordId::x((*idx)[0]);
        case 'y':
            if (idx->size() != 1) return std::nullopt;
            check_range(name, "fibre", (*idx)[0], dims.m, pos);
            return CoordId::y((*idx)[0]);
        case 'z':
            if (idx->size() == 2) {
                check_range(name, "base", (*idx)[0], dims.n, pos);
                check_range(name, "fibre", (*idx)[1], dims.m, pos);
                return CoordId::z((*idx)[0], (*idx)[1]);
            }
            if (idx->size() == 3) {
                check_range(name, "base", (*idx)[0], dims.n, pos);
                check_range(name, "base", (*idx)[1], dims.n, pos);
                check_range(name, "fibre", (*idx)[2], dims.m, pos);
                return CoordId::z2((*idx)[0], (*idx)[1], (*idx)[2]);
            }
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

IdentInfo classify_ident(const std::string& name, const Dims& dims, size_t pos) {
    IdentInfo info;
    if (name == "sin") return {IdentInfo::What::Func, {}, {}, FuncName::Sin};
    if (name == "cos") return {IdentInfo::What::Func, {}, {}, FuncName::Cos};
    if (name == "exp") return {IdentInfo::What::Func, {}, {}, FuncName::Exp};
    if (name == "log") return {IdentInfo::What::Func, {}, {}, FuncName::Log};
    if (name.size() >= 2 && name[0] == 'd') {
        if (auto c = classify_coord(name, name[1], name.substr(2), dims, pos)) {
            info.what = IdentInfo::What::Cov;
            info.cov = Covector::of(*c);
            return info;
        }
    }
    if (auto c = classify_coord(name, name[0], name.substr(1), dims, pos)) {
        info.what = IdentInfo::What::Coord;
        info.coord = *c;
        return info;
    }
    syntax_error("unknown identifier '" + name + "'", pos);
}

// ---------------------------------------------------------------------------
// Parser over exterior-form values

struct Val {
    int degree = 0;
    std::map<CovectorTuple, Expr> terms;  // increasing tuples, not yet canonical

    bool zero() const { return terms.empty(); }
};

Val scalar_val(Expr e) {
    Val v;
    v.degree = 0;
    if (!e.is_zero_const()) v.terms.emplace(CovectorTuple{}, std::move(e));
    return v;
}

Val covector_val(Covector c) {
    Val v;
    v.degree = 1;
    v.terms.emplace(CovectorTuple{c}, Expr::constant(Rational(1)));
    return v;
}

void accumulate(Val& v, CovectorTuple t, Expr e) {
    auto [it, inserted] = v.terms.emplace(std::move(t), e);
    if (!inserted) it->second = it->second + e;
}

Val add_vals(const Val& a, const Val& b, size_t pos) {
    if (a.zero()) return b;
    if (b.zero()) return a;
    if (a.degree != b.degree) syntax_error("sum mixes forms of different degree", pos);
    Val out = a;
    for (const auto& [t, e] : b.terms) accumulate(out, t, e);
    return out;
}

Val neg_val(const Val& a) {
    Val out;
    out.degree = a.degree;
    for (const auto& [t, e] : a.terms) out.terms.emplace(t, -e);
    return out;
}

Val mul_vals(const Val& a, const Val& b) {
    Val out;
    out.degree = a.zero() || b.zero() ? 0 : a.degree + b.degree;
    if (a.zero() || b.zero()) return out;
    for (const auto& [ta, ea] : a.terms)
        for (const auto& [tb, eb] : b.terms) {
            CovectorTuple t = ta;
            t.insert(t.end(), tb.begin(), tb.end());
            int sign = sort_covector_tuple(t);
            if (sign == 0) continue;
            Expr e = ea * eb;
            accumulate(out, std::move(t), sign < 0 ? -e : e);
        }
    return out;
}

struct Parser {
    const std::vector<Token>& toks;
    const Dims& dims;
    size_t at = 0;

    const Token& peek() const { return toks[at]; }
    Token next() { return toks[at++]; }
    bool accept(Token::Type t) {
        if (peek().type != t) return false;
        ++at;
        return true;
    }
    void expect(Token::Type t, const char* what) {
        if (!accept(t)) syntax_error(std::string("expected ") + what, peek().pos);
    }

    Val parse_sum() {
        Val v = parse_term();
        for (;;) {
            size_t pos = peek().pos;
            if (accept(Token::Type::Plus))
                v = add_vals(v, parse_term(), pos);
            else if (accept(Token::Type::Minus))
                v = add_vals(v, neg_val(parse_term()), pos);
            else
                return v;
        }
    }

    Val parse_term() {
        Val v = parse_unary();
        for (;;) {
            size_t pos = peek().pos;
            if (accept(Token::Type::Star)) {
                v = mul_vals(v, parse_unary());
            } else if (accept(Token::Type::Slash)) {
                Val d = parse_unary();
                if (!d.zero() && d.degree != 0)
                    syntax_error("division by a form of positive degree", pos);
                if (d.zero()) syntax_error("division by zero", pos);
                Expr divisor = d.terms.begin()->second;
                Expr inv = divisor.is_const()
                               ? Expr::constant(Rational(1) / divisor.value())
                               : Expr::pow(divisor, -1);
                v = mul_vals(v, scalar_val(inv));
            } else {
                return v;
            }
        }
    }

    Val parse_unary() {
        if (accept(Token::Type::Minus)) return neg_val(parse_unary());
        return parse_power();
    }

    Val parse_power() {
        Val base = parse_atom();
        size_t pos = peek().pos;
        if (!accept(Token::Type::Caret)) return base;
        Val rhs = parse_unary();  // right associative; handles ^-2
        if ((!base.zero() && base.degree > 0) || (!rhs.zero() && rhs.degree > 0))
            return mul_vals(base, rhs);
        // scalar power: exponent must be an integer literal expression
        if (rhs.zero()) return scalar_val(Expr::constant(Rational(1)));  // e^0
        Expr ex = rhs.terms.begin()->second;
        if (!ex.is_const() || !is_integer(ex.value()))
            syntax_error("exponent must be an integer", pos);
        BigInt num = numerator(ex.value());
        if (num > 1000000 || num < -1000000) syntax_error("exponent out of range", pos);
        long long e = num.convert_to<long long>();
        if (base.zero()) {
            if (e <= 0) syntax_error("zero to a non-positive power", pos);
            return scalar_val(Expr());
        }
        return scalar_val(Expr::pow(base.terms.begin()->second, e));
    }

    Val parse_atom() {
        Token t = next();
        switch (t.type) {
            case Token::Type::Int:
                return scalar_val(Expr::constant(Rational(BigInt(t.text))));
            case Token::Type::LParen: {
                Val v = parse_sum();
                expect(Token::Type::RParen, "')'");
                return v;
            }
            case Token::Type::Ident: {
                IdentInfo info = classify_ident(t.text, dims, t.pos);
                switch (info.what) {
                    case IdentInfo::What::Coord:
                        return scalar_val(Expr::coord(info.coord));
                    case IdentInfo::What::Cov:
                        return covector_val(info.cov);
                    case IdentInfo::What::Func: {
                        expect(Token::Type::LParen, "'(' after function name");
                        Val arg = parse_sum();
                        expect(Token::Type::RParen, "')'");
                        if (!arg.zero() && arg.degree != 0)
                            syntax_error("function of a form of positive degree", t.pos);
                        Expr a = arg.zero() ? Expr() : arg.terms.begin()->second;
                        return scalar_val(Expr::func(info.func, std::move(a)));
                    }
                }
                break;
            }
            default:
                break;
        }
        syntax_error("unexpected token '" + t.text + "'", t.pos);
    }
};

ParsedForm finish(Val v) {
    ParsedForm out;
    out.degree = v.zero() ? 0 : v.degree;
    for (auto& [t, e] : v.terms) {
        Expr c = canonical(e);
        if (!c.is_zero_const()) out.terms.emplace(t, std::move(c));
    }
    if (out.terms.empty()) out.degree = 0;
    return out;
}

}  // namespace

Expr ParsedForm::scalar() const {
    if (terms.empty()) return Expr();
    if (degree != 0) fail(Errc::syntax_error, "expected a scalar expression, found a form");
    return terms.begin()->second;
}

DiffForm ParsedForm::to_form(JetSpace space, int required_degree) const {
    int deg = terms.empty() ? (required_degree >= 0 ? required_degree : degree) : degree;
    if (required_degree >= 0 && deg != required_degree)
        fail(Errc::bad_arity, "expected a form of degree " + std::to_string(required_degree) +
                                  ", found degree " + std::to_string(deg));
    DiffForm f(space, deg);
    for (const auto& [t, e] : terms) f.add_term(t, e);
    return f;
}

ParsedForm parse_form(const std::string& text, const Dims& dims) {
    auto toks = lex(text);
    Parser p{toks, dims};
    Val v = p.parse_sum();
    if (p.peek().type != Token::Type::End)
        syntax_error("unexpected trailing input", p.peek().pos);
    return finish(std::move(v));
}

Expr parse_expr(const std::string& text, const Dims& dims) {
    return parse_form(text, dims).scalar();
}

PolyMap parse_polymap(const std::string& text, const Dims& dims) {
    std::string body = text;
    // optional "f:" label prefix
    size_t start = body.find_first_not_of(" \t");
    if (start != std::string::npos && body[start] == 'f') {
        size_t colon = body.find_first_not_of(" \t", start + 1);
        if (colon != std::string::npos && body[colon] == ':') body = body.substr(colon + 1);
    }
    if (body.find_first_not_of(" \t") == std::string::npos)
        fail(Errc::syntax_error, "empty map payload");
    std::vector<Expr> comps;
    std::string cur;
    std::istringstream in(body);
    while (std::getline(in, cur, ';')) comps.push_back(parse_expr(cur, dims));
    return PolyMap(dims.n, dims.m, std::move(comps));
}

// ---------------------------------------------------------------------------
// Printer

namespace {

bool looks_negative(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Neg: return true;
        case Expr::Kind::Const: return e.value() < 0;
        case Expr::Kind::Product:
            return e.kids()[0].is_const() && e.kids()[0].value() < 0;
        default: return false;
    }
}

/// Rendering of -e given that looks_negative(e) holds.
Expr flipped(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Neg: return e.kids()[0];
        case Expr::Kind::Const: return Expr::constant(-e.value());
        case Expr::Kind::Product: {
            std::vector<Expr> kids = e.kids();
            kids[0] = Expr::constant(-kids[0].value());
            return Expr::product(std::move(kids));
        }
        default: return -e;
    }
}

void print_rec(std::ostream& os, const Expr& e);

void print_wrapped(std::ostream& os, const Expr& e, bool wrap) {
    if (wrap) os << '(';
    print_rec(os, e);
    if (wrap) os << ')';
}

void print_rec(std::ostream& os, const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Const:
            os << rational_to_string(e.value());
            break;
        case Expr::Kind::Coord:
            os << e.coord_id().name();
            break;
        case Expr::Kind::Sum: {
            bool first = true;
            for (const Expr& k : e.kids()) {
                if (!first && looks_negative(k)) {
                    os << " - ";
                    print_rec(os, flipped(k));
                } else {
                    if (!first) os << " + ";
                    print_rec(os, k);
                }
                first = false;
            }
            break;
        }
        case Expr::Kind::Product: {
            bool first = true;
            for (const Expr& k : e.kids()) {
                if (!first) os << '*';
                print_wrapped(os, k, k.kind() == Expr::Kind::Sum || k.kind() == Expr::Kind::Neg ||
                                          (k.is_const() && k.value() < 0 && !first));
                first = false;
            }
            break;
        }
        case Expr::Kind::IntPow: {
            const Expr& b = e.kids()[0];
            bool wrap = !(b.kind() == Expr::Kind::Coord || b.kind() == Expr::Kind::Func);
            print_wrapped(os, b, wrap);
            os << '^' << e.exponent();
            break;
        }
        case Expr::Kind::Neg:
            os << '-';
            print_wrapped(os, e.kids()[0],
                          e.kids()[0].kind() == Expr::Kind::Sum);
            break;
        case Expr::Kind::Func:
            os << func_name(e.func_id()) << '(';
            print_rec(os, e.kids()[0]);
            os << ')';
            break;
    }
}

}  // namespace

std::string print_expr(const Expr& e) {
    std::ostringstream os;
    print_rec(os, e);
    return os.str();
}

std::string print_tuple(const CovectorTuple& t) {
    std::ostringstream os;
    bool first = true;
    for (const Covector& c : t) {
        if (!first) os << '^';
        os << c.name();
        first = false;
    }
    return os.str();
}

std::string print_form(const DiffForm& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : f.terms()) {
        Expr coeff = c;
        if (!first) {
            if (looks_negative(coeff)) {
                os << " - ";
                coeff = flipped(coeff);
            } else {
                os << " + ";
            }
        } else if (looks_negative(coeff)) {
            os << "-";
            coeff = flipped(coeff);
        }
        first = false;
        if (t.empty()) {
            print_wrapped(os, coeff, false);
            continue;
        }
        if (coeff.is_one_const()) {
            os << print_tuple(t);
            continue;
        }
        print_wrapped(os, coeff, coeff.kind() == Expr::Kind::Sum);
        os << '*' << print_tuple(t);
    }
    return os.str();
}

}  // namespace vk
