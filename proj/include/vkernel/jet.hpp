#pragma once

#include <map>
#include <vector>

#include "vkernel/expr.hpp"

namespace vk {

enum class JetOrder : uint8_t { Base, Config, F1, F2 };

const char* jet_order_name(JetOrder o);

/// The spaces U, U x V, F1, F2 with base dimension n and fibre dimension m.
/// Base admits only x, Config adds y, F1 adds z, F2 adds second-order z.
struct JetSpace {
    int n = 1;
    int m = 1;
    JetOrder order = JetOrder::F1;

    static JetSpace make(int n, int m, JetOrder order) {
        if (n < 1 || m < 1) fail(Errc::bad_arity, "space dimensions must be positive");
        return {n, m, order};
    }
    static JetSpace base(int n, int m) { return make(n, m, JetOrder::Base); }
    static JetSpace config(int n, int m) { return make(n, m, JetOrder::Config); }
    static JetSpace f1(int n, int m) { return make(n, m, JetOrder::F1); }
    static JetSpace f2(int n, int m) { return make(n, m, JetOrder::F2); }

    bool admits(CoordId c) const;
    void require(const Expr& e, const char* what) const;  // throws mixed_space

    /// Canonical coordinate enumeration (x, then y, then z, then z2).
    std::vector<CoordId> coords() const;
    int dim() const;

    friend bool operator==(const JetSpace&, const JetSpace&) = default;
};

/// A map U -> V with polynomial components, so prolongation is exact.
struct PolyMap {
    int n = 1;
    int m = 1;
    std::vector<Expr> components;  // m expressions in x coordinates only

    PolyMap(int n_, int m_, std::vector<Expr> comps);
};

/// Total derivative D_k of an expression on F1; the result lives on F2.
/// Rejects input depending on second-order coordinates (never leaves F2).
Expr total_derivative(const Expr& g, int k);

/// Substitution realizing the jet prolongation of f: y -> f(x), z -> Df(x),
/// and for order 2 also z2 -> D^2 f(x).
std::map<CoordId, Expr> prolong(const PolyMap& f, int order);

/// Substitution with a declared target space; throws Errc::mixed_space when a
/// binding value uses a coordinate the target does not admit.
Expr substitute_into(const Expr& e, const std::map<CoordId, Expr>& bindings,
                     const JetSpace& target);

}  // namespace vk
