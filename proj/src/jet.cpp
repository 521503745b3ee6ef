#include "vkernel/jet.hpp"

#include "vkernel/normal.hpp"

namespace vk {

const char* jet_order_name(JetOrder o) {
    switch (o) {
        case JetOrder::Base: return "U";
        case JetOrder::Config: return "UxV";
        case JetOrder::F1: return "F1";
        case JetOrder::F2: return "F2";
    }
    return "?";
}

bool JetSpace::admits(CoordId c) const {
    switch (c.kind) {
        case CoordKind::X:
            return c.a <= n;
        case CoordKind::Y:
            return order != JetOrder::Base && c.a <= m;
        case CoordKind::Z:
            return (order == JetOrder::F1 || order == JetOrder::F2) && c.a <= n && c.b <= m;
        case CoordKind::Z2:
            return order == JetOrder::F2 && c.a <= n && c.b <= n && c.c <= m;
    }
    return false;
}

void JetSpace::require(const Expr& e, const char* what) const {
    for (CoordId c : support(e))
        if (!admits(c))
            fail(Errc::mixed_space, std::string(what) + " uses coordinate " + c.name() +
                                        " outside " + jet_order_name(order) + "(n=" +
                                        std::to_string(n) + ", m=" + std::to_string(m) + ")");
}

std::vector<CoordId> JetSpace::coords() const {
    std::vector<CoordId> out;
    for (int i = 1; i <= n; ++i) out.push_back(CoordId::x(i));
    if (order == JetOrder::Base) return out;
    for (int mu = 1; mu <= m; ++mu) out.push_back(CoordId::y(mu));
    if (order == JetOrder::Config) return out;
    for (int i = 1; i <= n; ++i)
        for (int mu = 1; mu <= m; ++mu) out.push_back(CoordId::z(i, mu));
    if (order == JetOrder::F1) return out;
    for (int k = 1; k <= n; ++k)
        for (int i = k; i <= n; ++i)
            for (int mu = 1; mu <= m; ++mu) out.push_back(CoordId::z2(k, i, mu));
    return out;
}

int JetSpace::dim() const { return static_cast<int>(coords().size()); }

PolyMap::PolyMap(int n_, int m_, std::vector<Expr> comps) : n(n_), m(m_), components(std::move(comps)) {
    if (static_cast<int>(components.size()) != m)
        fail(Errc::bad_arity, "polynomial map needs exactly m components");
    JetSpace base = JetSpace::base(n, m);
    for (const auto& c : components) {
        base.require(c, "map component");
        if (!is_polynomial(c)) fail(Errc::not_polynomial, "map component is not polynomial");
    }
}

Expr total_derivative(const Expr& g, int k) {
    std::vector<Expr> terms;
    terms.push_back(diff(g, CoordId::x(k)));
    for (CoordId c : support(g)) {
        switch (c.kind) {
            case CoordKind::X:
                break;
            case CoordKind::Y:
                terms.push_back(Expr::coord(CoordId::z(k, c.a)) * diff(g, c));
                break;
            case CoordKind::Z:
                terms.push_back(Expr::coord(CoordId::z2(k, c.a, c.b)) * diff(g, c));
                break;
            case CoordKind::Z2:
                fail(Errc::mixed_space,
                     "total derivative of a second-order expression would leave F2");
        }
    }
    return Expr::sum(std::move(terms));
}

std::map<CoordId, Expr> prolong(const PolyMap& f, int order) {
    if (order != 1 && order != 2) fail(Errc::bad_arity, "prolongation order must be 1 or 2");
    std::map<CoordId, Expr> out;
    for (int mu = 1; mu <= f.m; ++mu) {
        const Expr& comp = f.components[mu - 1];
        out.emplace(CoordId::y(mu), comp);
        for (int i = 1; i <= f.n; ++i) {
            Expr di = diff(comp, CoordId::x(i));
            out.emplace(CoordId::z(i, mu), di);
            if (order == 2)
                for (int k = 1; k <= i; ++k)
                    out.emplace(CoordId::z2(k, i, mu), diff(di, CoordId::x(k)));
        }
    }
    return out;
}

Expr substitute_into(const Expr& e, const std::map<CoordId, Expr>& bindings,
                     const JetSpace& target) {
    for (const auto& [c, v] : bindings) target.require(v, ("binding for " + c.name()).c_str());
    return substitute(e, bindings);
}

}  // namespace vk
