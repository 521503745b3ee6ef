#include "vkernel/expr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vk {

const char* func_name(FuncName f) {
    switch (f) {
        case FuncName::Sin: return "sin";
        case FuncName::Cos: return "cos";
        case FuncName::Exp: return "exp";
        case FuncName::Log: return "log";
    }
    return "?";
}

namespace {
const std::shared_ptr<const Expr::Node>& zero_node() {
    static const auto n = std::make_shared<const Expr::Node>();
    return n;
}
}  // namespace

Expr::Expr() : node_(zero_node()) {}

Expr Expr::make(Node n) { return Expr(std::make_shared<const Node>(std::move(n))); }

Expr Expr::constant(Rational r) {
    Node n;
    n.kind = Kind::Const;
    n.value = std::move(r);
    n.value_d = to_double(n.value);
    return make(std::move(n));
}

Expr Expr::coord(CoordId c) {
    Node n;
    n.kind = Kind::Coord;
    n.coord = c;
    return make(std::move(n));
}

int cmp(const Expr& a, const Expr& b) {
    auto rank = [](Expr::Kind k) { return static_cast<int>(k); };
    if (rank(a.kind()) != rank(b.kind())) return rank(a.kind()) < rank(b.kind()) ? -1 : 1;
    switch (a.kind()) {
        case Expr::Kind::Const: {
            if (a.value() == b.value()) return 0;
            return a.value() < b.value() ? -1 : 1;
        }
        case Expr::Kind::Coord: {
            if (a.coord_id() == b.coord_id()) return 0;
            return a.coord_id() < b.coord_id() ? -1 : 1;
        }
        case Expr::Kind::IntPow: {
            if (int c = cmp(a.kids()[0], b.kids()[0]); c != 0) return c;
            if (a.exponent() == b.exponent()) return 0;
            return a.exponent() < b.exponent() ? -1 : 1;
        }
        case Expr::Kind::Func: {
            if (a.func_id() != b.func_id())
                return static_cast<int>(a.func_id()) < static_cast<int>(b.func_id()) ? -1 : 1;
            return cmp(a.kids()[0], b.kids()[0]);
        }
        case Expr::Kind::Neg:
            return cmp(a.kids()[0], b.kids()[0]);
        case Expr::Kind::Sum:
        case Expr::Kind::Product: {
            const auto& ka = a.kids();
            const auto& kb = b.kids();
            size_t n = std::min(ka.size(), kb.size());
            for (size_t i = 0; i < n; ++i)
                if (int c = cmp(ka[i], kb[i]); c != 0) return c;
            if (ka.size() == kb.size()) return 0;
            return ka.size() < kb.size() ? -1 : 1;
        }
    }
    return 0;
}

Expr Expr::sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    Rational constant_part(0);
    for (auto& t : terms) {
        if (t.kind() == Kind::Sum) {
            for (const auto& k : t.kids()) {
                if (k.is_const())
                    constant_part += k.value();
                else
                    flat.push_back(k);
            }
        } else if (t.is_const()) {
            constant_part += t.value();
        } else {
            flat.push_back(std::move(t));
        }
    }
    std::sort(flat.begin(), flat.end(), [](const Expr& a, const Expr& b) { return cmp(a, b) < 0; });
    if (constant_part != 0) flat.insert(flat.begin(), Expr::constant(constant_part));
    if (flat.empty()) return Expr();
    if (flat.size() == 1) return flat[0];
    Node n;
    n.kind = Kind::Sum;
    n.kids = std::move(flat);
    return make(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    Rational constant_part(1);
    // flatten, folding nested products, constants, and explicit negations
    std::vector<Expr> queue(std::move(factors));
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        const Expr f = queue[qi];
        switch (f.kind()) {
            case Kind::Const:
                constant_part *= f.value();
                break;
            case Kind::Product:
                for (const auto& k : f.kids()) queue.push_back(k);
                break;
            case Kind::Neg:
                constant_part = -constant_part;
                queue.push_back(f.kids()[0]);
                break;
            default:
                flat.push_back(f);
                break;
        }
    }
    if (constant_part == 0) return Expr();
    std::sort(flat.begin(), flat.end(), [](const Expr& a, const Expr& b) { return cmp(a, b) < 0; });
    if (flat.empty()) return Expr::constant(constant_part);
    if (constant_part == -1) {
        // -1 * rest renders as a negation
        if (flat.size() == 1) return Expr::neg(flat[0]);
        Node n;
        n.kind = Kind::Product;
        n.kids = std::move(flat);
        return Expr::neg(make(std::move(n)));
    }
    if (constant_part != 1) flat.insert(flat.begin(), Expr::constant(constant_part));
    if (flat.size() == 1) return flat[0];
    Node n;
    n.kind = Kind::Product;
    n.kids = std::move(flat);
    return make(std::move(n));
}

Expr Expr::pow(Expr base, long long exponent) {
    if (exponent == 0) return Expr::constant(Rational(1));
    if (exponent == 1) return base;
    if (base.is_const()) return Expr::constant(rational_pow(base.value(), exponent));
    if (base.kind() == Kind::IntPow) return Expr::pow(base.kids()[0], base.exponent() * exponent);
    if (base.kind() == Kind::Neg) {
        Expr inner = Expr::pow(base.kids()[0], exponent);
        return (exponent % 2 == 0) ? inner : Expr::neg(inner);
    }
    if (base.kind() == Kind::Product) {
        std::vector<Expr> factors;
        factors.reserve(base.kids().size());
        for (const auto& k : base.kids()) factors.push_back(Expr::pow(k, exponent));
        return Expr::product(std::move(factors));
    }
    Node n;
    n.kind = Kind::IntPow;
    n.kids = {std::move(base)};
    n.expo = exponent;
    return make(std::move(n));
}

Expr Expr::neg(Expr e) {
    if (e.is_const()) return Expr::constant(-e.value());
    if (e.kind() == Kind::Neg) return e.kids()[0];
    if (e.kind() == Kind::Sum) {
        std::vector<Expr> terms;
        terms.reserve(e.kids().size());
        for (const auto& k : e.kids()) terms.push_back(Expr::neg(k));
        return Expr::sum(std::move(terms));
    }
    if (e.kind() == Kind::Product && e.kids()[0].is_const()) {
        std::vector<Expr> kids = e.kids();
        kids[0] = Expr::constant(-kids[0].value());
        return Expr::product(std::move(kids));
    }
    Node n;
    n.kind = Kind::Neg;
    n.kids = {std::move(e)};
    return make(std::move(n));
}

Expr Expr::func(FuncName f, Expr arg) {
    Node n;
    n.kind = Kind::Func;
    n.func = f;
    n.kids = {std::move(arg)};
    return make(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, Expr::neg(b)}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator-(const Expr& a) { return Expr::neg(a); }

Expr diff(const Expr& e, CoordId c) {
    switch (e.kind()) {
        case Expr::Kind::Const:
            return Expr();
        case Expr::Kind::Coord:
            return e.coord_id() == c ? Expr::constant(Rational(1)) : Expr();
        case Expr::Kind::Sum: {
            std::vector<Expr> terms;
            terms.reserve(e.kids().size());
            for (const auto& k : e.kids()) terms.push_back(diff(k, c));
            return Expr::sum(std::move(terms));
        }
        case Expr::Kind::Product: {
            std::vector<Expr> terms;
            for (size_t i = 0; i < e.kids().size(); ++i) {
                Expr d = diff(e.kids()[i], c);
                if (d.is_zero_const()) continue;
                std::vector<Expr> factors;
                factors.reserve(e.kids().size());
                for (size_t j = 0; j < e.kids().size(); ++j)
                    factors.push_back(i == j ? d : e.kids()[j]);
                terms.push_back(Expr::product(std::move(factors)));
            }
            return Expr::sum(std::move(terms));
        }
        case Expr::Kind::IntPow: {
            const Expr& base = e.kids()[0];
            Expr d = diff(base, c);
            if (d.is_zero_const()) return Expr();
            return Expr::product({Expr::integer(e.exponent()),
                                  Expr::pow(base, e.exponent() - 1), d});
        }
        case Expr::Kind::Neg:
            return Expr::neg(diff(e.kids()[0], c));
        case Expr::Kind::Func: {
            const Expr& arg = e.kids()[0];
            Expr d = diff(arg, c);
            if (d.is_zero_const()) return Expr();
            Expr outer;
            switch (e.func_id()) {
                case FuncName::Sin: outer = cos(arg); break;
                case FuncName::Cos: outer = Expr::neg(sin(arg)); break;
                case FuncName::Exp: outer = exp(arg); break;
                case FuncName::Log: outer = Expr::pow(arg, -1); break;
            }
            return Expr::product({outer, d});
        }
    }
    return Expr();
}

Expr substitute(const Expr& e, const std::map<CoordId, Expr>& bindings) {
    switch (e.kind()) {
        case Expr::Kind::Const:
            return e;
        case Expr::Kind::Coord: {
            auto it = bindings.find(e.coord_id());
            return it == bindings.end() ? e : it->second;
        }
        case Expr::Kind::Sum: {
            std::vector<Expr> kids;
            kids.reserve(e.kids().size());
            for (const auto& k : e.kids()) kids.push_back(substitute(k, bindings));
            return Expr::sum(std::move(kids));
        }
        case Expr::Kind::Product: {
            std::vector<Expr> kids;
            kids.reserve(e.kids().size());
            for (const auto& k : e.kids()) kids.push_back(substitute(k, bindings));
            return Expr::product(std::move(kids));
        }
        case Expr::Kind::IntPow:
            return Expr::pow(substitute(e.kids()[0], bindings), e.exponent());
        case Expr::Kind::Neg:
            return Expr::neg(substitute(e.kids()[0], bindings));
        case Expr::Kind::Func:
            return Expr::func(e.func_id(), substitute(e.kids()[0], bindings));
    }
    return e;
}

namespace {
void collect_support(const Expr& e, std::set<CoordId>& out) {
    if (e.kind() == Expr::Kind::Coord) {
        out.insert(e.coord_id());
        return;
    }
    for (const auto& k : e.kids()) collect_support(k, out);
}
}  // namespace

std::set<CoordId> support(const Expr& e) {
    std::set<CoordId> out;
    collect_support(e, out);
    return out;
}

namespace {
double pow_int(double base, long long e) {
    if (e < 0) {
        if (base == 0.0) fail(Errc::eval_domain, "negative power of zero");
        return 1.0 / pow_int(base, -e);
    }
    double acc = 1.0, b = base;
    unsigned long long u = static_cast<unsigned long long>(e);
    while (u > 0) {
        if (u & 1ull) acc *= b;
        b *= b;
        u >>= 1;
    }
    return acc;
}
}  // namespace

double eval(const Expr& e, const Point& p) {
    double v = 0.0;
    switch (e.kind()) {
        case Expr::Kind::Const:
            v = e.node_ref().value_d;
            break;
        case Expr::Kind::Coord:
            v = p.at(e.coord_id());
            break;
        case Expr::Kind::Sum: {
            for (const auto& k : e.kids()) v += eval(k, p);
            break;
        }
        case Expr::Kind::Product: {
            v = 1.0;
            for (const auto& k : e.kids()) v *= eval(k, p);
            break;
        }
        case Expr::Kind::IntPow:
            v = pow_int(eval(e.kids()[0], p), e.exponent());
            break;
        case Expr::Kind::Neg:
            v = -eval(e.kids()[0], p);
            break;
        case Expr::Kind::Func: {
            double a = eval(e.kids()[0], p);
            switch (e.func_id()) {
                case FuncName::Sin: v = std::sin(a); break;
                case FuncName::Cos: v = std::cos(a); break;
                case FuncName::Exp: v = std::exp(a); break;
                case FuncName::Log:
                    if (a <= 0.0) fail(Errc::eval_domain, "log of non-positive value");
                    v = std::log(a);
                    break;
            }
            break;
        }
    }
    if (!std::isfinite(v)) fail(Errc::eval_domain, "non-finite value");
    return v;
}

}  // namespace vk
