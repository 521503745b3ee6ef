#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "vkernel/coord.hpp"
#include "vkernel/rational.hpp"

namespace vk {

enum class FuncName : uint8_t { Sin, Cos, Exp, Log };

const char* func_name(FuncName f);

/// Immutable exact expression tree over jet coordinates.
///
/// Construction goes through the static factories, which keep a light normal
/// form: sums contain no nested sums, products no nested products, constants
/// are folded and sorted to the front, zero summands and unit factors are
/// removed, and operand lists are sorted by the structural order.
class Expr {
public:
    enum class Kind : uint8_t { Const, Coord, Sum, Product, IntPow, Neg, Func };

    struct Node {
        Kind kind = Kind::Const;
        Rational value;           // Const
        double value_d = 0.0;     // Const, cached for evaluation
        CoordId coord{};          // Coord
        std::vector<Expr> kids;   // Sum/Product: >= 2; IntPow/Neg/Func: 1
        long long expo = 0;       // IntPow
        FuncName func = FuncName::Sin;
    };

    /// Default-constructed expression is the constant 0.
    Expr();

    static Expr constant(Rational r);
    static Expr integer(long long v) { return constant(Rational(v)); }
    static Expr coord(CoordId c);
    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr pow(Expr base, long long exponent);
    static Expr neg(Expr e);
    static Expr func(FuncName f, Expr arg);

    Kind kind() const { return node_->kind; }
    const Node& node_ref() const { return *node_; }
    const Rational& value() const { return node_->value; }
    CoordId coord_id() const { return node_->coord; }
    const std::vector<Expr>& kids() const { return node_->kids; }
    long long exponent() const { return node_->expo; }
    FuncName func_id() const { return node_->func; }

    bool is_const() const { return kind() == Kind::Const; }
    bool is_zero_const() const { return is_const() && value() == 0; }
    bool is_one_const() const { return is_const() && value() == 1; }

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Expr make(Node n);

    std::shared_ptr<const Node> node_;
};

/// Total structural order on normalized trees; 0 means structurally identical.
int cmp(const Expr& a, const Expr& b);
inline bool identical(const Expr& a, const Expr& b) { return cmp(a, b) == 0; }

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

inline Expr sin(Expr e) { return Expr::func(FuncName::Sin, std::move(e)); }
inline Expr cos(Expr e) { return Expr::func(FuncName::Cos, std::move(e)); }
inline Expr exp(Expr e) { return Expr::func(FuncName::Exp, std::move(e)); }
inline Expr log(Expr e) { return Expr::func(FuncName::Log, std::move(e)); }

/// Exact partial derivative; every distinct coordinate is independent.
Expr diff(const Expr& e, CoordId c);

/// Simultaneous substitution; unbound coordinates pass through.
Expr substitute(const Expr& e, const std::map<CoordId, Expr>& bindings);

/// All coordinates appearing in the tree, including inside function arguments.
std::set<CoordId> support(const Expr& e);

/// Evaluate at a point. Throws Errc::eval_domain on log of a non-positive
/// argument, a negative power of zero, or a non-finite intermediate.
double eval(const Expr& e, const Point& p);

}  // namespace vk
