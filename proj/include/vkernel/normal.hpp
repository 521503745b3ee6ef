#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "vkernel/expr.hpp"

namespace vk {

/// Generator of the polynomial normal form: a coordinate, or an opaque atom
/// (a function application, or the reciprocal of a non-monomial base).
/// Coordinates order before atoms; coordinates order by (kind, indices).
struct Generator {
    enum class Tag : uint8_t { Coord, Func, Recip };

    Tag tag = Tag::Coord;
    CoordId coord{};
    FuncName func = FuncName::Sin;
    Expr arg;  // Func argument or Recip base, canonical

    static Generator from_coord(CoordId c);
    static Generator from_func(FuncName f, Expr canonical_arg);
    static Generator from_recip(Expr canonical_base);
};

int cmp(const Generator& a, const Generator& b);

/// Sorted list of (generator, exponent); exponents are nonzero and may be
/// negative (reciprocals of single monomials).
using Monomial = std::vector<std::pair<Generator, int>>;

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse polynomial over the generators with exact rational coefficients.
/// This is the ring normal form behind structural equality.
class Poly {
public:
    using Terms = std::map<Monomial, Rational, MonomialLess>;

    Poly() = default;
    static Poly constant(Rational r);
    static Poly generator(Generator g);

    bool empty() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }

    /// The single term (monomial, coefficient) if there is exactly one.
    std::optional<std::pair<Monomial, Rational>> single_term() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly negated() const;
    Poly pow(long long e) const;  // e >= 0

    void add_term(Monomial m, Rational c);

private:
    Terms terms_;
};

/// Expand an expression into the ring normal form. Total: function
/// applications and reciprocals of non-monomial bases become opaque atoms.
Poly to_poly(const Expr& e);

/// Deterministic expression rendering of a normal form (monomials in
/// canonical order).
Expr to_expr(const Poly& p);

/// Ring-canonical form of an expression.
inline Expr canonical(const Expr& e) { return to_expr(to_poly(e)); }

/// True iff the ring normal form is empty (the strongest exact zero test).
inline bool structurally_zero(const Expr& e) { return to_poly(e).empty(); }

/// True iff e is a polynomial over the coordinates (no atoms, no negative
/// exponents).
bool is_polynomial(const Expr& e);

/// Monomial purely in Z/Z2 coordinates, sorted, positive exponents.
using JetMonomial = std::vector<std::pair<CoordId, int>>;

/// Collect coefficients of jet-coordinate monomials. Coefficients are free of
/// Z/Z2 coordinates; multiply-and-sum rebuilds the input exactly.
/// Throws Errc::not_polynomial_in_jets if a jet coordinate sits inside a
/// function argument, a reciprocal base, or under a negative power.
std::map<JetMonomial, Expr> z_normal_form(const Expr& e);

Expr jet_monomial_to_expr(const JetMonomial& m);

// ---------------------------------------------------------------------------
// Zero testing

struct ZeroVerdict {
    enum class Tier : uint8_t { ExactZero, ProbablyZero, NonZero };

    Tier tier = Tier::ExactZero;
    int samples = 0;    // ProbablyZero
    double tol = 0.0;   // ProbablyZero
    Point witness;      // NonZero
    double value = 0.0; // NonZero

    bool is_zero() const { return tier != Tier::NonZero; }
    bool exact() const { return tier == Tier::ExactZero; }
};

const char* tier_name(ZeroVerdict::Tier t);

struct ZeroCfg {
    int trials = 20;
    double tol = 1e-9;
    uint64_t seed = 1;
};

/// Two-tier zero test: exact ring normalization first, then deterministic
/// random sampling in [-1,1]^support. Singular evaluations are redrawn with a
/// hard cap of 10x trials redraws.
ZeroVerdict is_zero(const Expr& e, const ZeroCfg& cfg = {});
ZeroVerdict is_zero(const Expr& e, int trials, double tol, uint64_t seed);

/// Deterministic stream splitter for derived seeds.
uint64_t mix_seed(uint64_t seed, uint64_t salt);

}  // namespace vk
