#include "vkernel/form.hpp"

#include <algorithm>

namespace vk {

Covector Covector::dx(int i) { return of(CoordId::x(i)); }
Covector Covector::dy(int mu) { return of(CoordId::y(mu)); }
Covector Covector::dz(int i, int mu) { return of(CoordId::z(i, mu)); }
Covector Covector::dz2(int k, int i, int mu) { return of(CoordId::z2(k, i, mu)); }

Covector Covector::of(CoordId c) { return Covector{c.kind, c.a, c.b, c.c}; }

std::string Covector::name() const { return "d" + coord().name(); }

int sort_covector_tuple(CovectorTuple& t) {
    int sign = 1;
    for (size_t i = 1; i < t.size(); ++i) {
        size_t j = i;
        while (j > 0 && t[j] < t[j - 1]) {
            std::swap(t[j], t[j - 1]);
            sign = -sign;
            --j;
        }
    }
    for (size_t i = 1; i < t.size(); ++i)
        if (t[i] == t[i - 1]) return 0;
    return sign;
}

DiffForm::DiffForm(JetSpace space, int degree) : space_(space), degree_(degree) {
    if (degree < 0) fail(Errc::bad_arity, "negative form degree");
}

DiffForm DiffForm::scalar(JetSpace space, const Expr& coefficient) {
    DiffForm f(space, 0);
    f.add_term({}, coefficient);
    return f;
}

void DiffForm::add_term(CovectorTuple tuple, Expr coefficient) {
    if (static_cast<int>(tuple.size()) != degree_)
        fail(Errc::bad_arity, "tuple length does not match form degree");
    int sign = sort_covector_tuple(tuple);
    if (sign == 0) return;
    for (const Covector& cv : tuple)
        if (!space_.admits(cv.coord()))
            fail(Errc::space_mismatch, "covector " + cv.name() + " outside " +
                                           jet_order_name(space_.order) + "(n=" +
                                           std::to_string(space_.n) + ", m=" +
                                           std::to_string(space_.m) + ")");
    space_.require(coefficient, "form coefficient");
    Expr add = sign < 0 ? -coefficient : coefficient;
    auto it = terms_.find(tuple);
    Expr merged = it == terms_.end() ? add : it->second + add;
    merged = canonical(merged);
    if (merged.is_zero_const()) {
        if (it != terms_.end()) terms_.erase(it);
        return;
    }
    if (it == terms_.end())
        terms_.emplace(std::move(tuple), std::move(merged));
    else
        it->second = std::move(merged);
}

Expr DiffForm::coefficient_at(const CovectorTuple& tuple) const {
    auto it = terms_.find(tuple);
    return it == terms_.end() ? Expr() : it->second;
}

DiffForm& DiffForm::operator+=(const DiffForm& o) {
    if (!(space_ == o.space_)) fail(Errc::space_mismatch, "adding forms over different spaces");
    if (degree_ != o.degree_ && !o.is_zero())
        fail(Errc::bad_arity, "adding forms of different degree");
    for (const auto& [t, c] : o.terms_) add_term(t, c);
    return *this;
}

DiffForm operator-(const DiffForm& a, const DiffForm& b) {
    DiffForm out = a;
    out += b.negated();
    return out;
}

DiffForm DiffForm::scaled(const Expr& s) const {
    DiffForm out(space_, degree_);
    for (const auto& [t, c] : terms_) out.add_term(t, s * c);
    return out;
}

DiffForm DiffForm::negated() const {
    DiffForm out(space_, degree_);
    for (const auto& [t, c] : terms_) out.terms_.emplace(t, -c);
    return out;
}

DiffForm DiffForm::lifted_to(JetSpace target) const {
    if (target.n != space_.n || target.m != space_.m)
        fail(Errc::space_mismatch, "lift must keep (n, m)");
    DiffForm out(target, degree_);
    for (const auto& [t, c] : terms_) out.add_term(t, c);
    return out;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
    if (!(a.space() == b.space()))
        fail(Errc::space_mismatch, "wedge of forms over different spaces");
    DiffForm out(a.space(), a.degree() + b.degree());
    for (const auto& [ta, ca] : a.terms())
        for (const auto& [tb, cb] : b.terms()) {
            CovectorTuple t = ta;
            t.insert(t.end(), tb.begin(), tb.end());
            out.add_term(std::move(t), ca * cb);
        }
    return out;
}

DiffForm exterior_d(const DiffForm& a) {
    DiffForm out(a.space(), a.degree() + 1);
    for (const auto& [t, g] : a.terms()) {
        for (CoordId c : support(g)) {
            Expr dg = diff(g, c);
            if (dg.is_zero_const()) continue;
            CovectorTuple tuple = t;
            tuple.insert(tuple.begin(), Covector::of(c));
            out.add_term(std::move(tuple), std::move(dg));
        }
    }
    return out;
}

DiffForm horizontalize(const DiffForm& a) {
    if (a.space().order != JetOrder::F1)
        fail(Errc::mixed_space, "horizontalization expects a form on F1");
    const int n = a.space().n;
    DiffForm out(a.space(), a.degree());
    for (const auto& [t, g] : a.terms()) {
        for (const Covector& cv : t)
            if (cv.kind == CoordKind::Z || cv.kind == CoordKind::Z2)
                fail(Errc::not_horizontal, "form has a vertical covector " + cv.name());
        // expand every dy_mu into z_{j,mu} dx_j
        std::vector<size_t> dy_slots;
        for (size_t i = 0; i < t.size(); ++i)
            if (t[i].kind == CoordKind::Y) dy_slots.push_back(i);
        std::vector<int> choice(dy_slots.size(), 1);
        for (;;) {
            CovectorTuple tuple = t;
            std::vector<Expr> factors{g};
            for (size_t s = 0; s < dy_slots.size(); ++s) {
                int mu = t[dy_slots[s]].a;
                int j = choice[s];
                tuple[dy_slots[s]] = Covector::dx(j);
                factors.push_back(Expr::coord(CoordId::z(j, mu)));
            }
            out.add_term(std::move(tuple), Expr::product(std::move(factors)));
            // next assignment
            size_t s = 0;
            while (s < choice.size() && ++choice[s] > n) choice[s++] = 1;
            if (s == choice.size()) break;
        }
    }
    return out;
}

DiffForm pullback_along_jet(const DiffForm& a, const PolyMap& f) {
    const JetSpace& sp = a.space();
    if (sp.n != f.n || sp.m != f.m) fail(Errc::space_mismatch, "pullback dimensions differ");
    if (sp.order == JetOrder::F2)
        fail(Errc::mixed_space, "pullback along a first jet expects a form on F1 or below");
    JetSpace base = JetSpace::base(f.n, f.m);
    auto bind = prolong(f, 1);
    DiffForm out(base, a.degree());
    for (const auto& [t, g] : a.terms()) {
        Expr coeff = substitute(g, bind);
        // per-slot expansion of each covector into dx components
        std::vector<std::vector<std::pair<int, Expr>>> slots;
        slots.reserve(t.size());
        for (const Covector& cv : t) {
            std::vector<std::pair<int, Expr>> slot;
            switch (cv.kind) {
                case CoordKind::X:
                    slot.emplace_back(cv.a, Expr::constant(Rational(1)));
                    break;
                case CoordKind::Y:
                    for (int j = 1; j <= f.n; ++j) {
                        Expr d = diff(f.components[cv.a - 1], CoordId::x(j));
                        if (!d.is_zero_const()) slot.emplace_back(j, std::move(d));
                    }
                    break;
                case CoordKind::Z:
                    for (int j = 1; j <= f.n; ++j) {
                        Expr d = diff(diff(f.components[cv.b - 1], CoordId::x(cv.a)), CoordId::x(j));
                        if (!d.is_zero_const()) slot.emplace_back(j, std::move(d));
                    }
                    break;
                case CoordKind::Z2:
                    fail(Errc::mixed_space, "unexpected second-order covector in pullback");
            }
            slots.push_back(std::move(slot));
        }
        // cartesian product over slots
        std::vector<size_t> pick(slots.size(), 0);
        bool dead = false;
        for (const auto& s : slots)
            if (s.empty()) dead = true;
        if (dead) continue;
        for (;;) {
            CovectorTuple tuple;
            tuple.reserve(slots.size());
            std::vector<Expr> factors{coeff};
            for (size_t s = 0; s < slots.size(); ++s) {
                tuple.push_back(Covector::dx(slots[s][pick[s]].first));
                factors.push_back(slots[s][pick[s]].second);
            }
            out.add_term(std::move(tuple), Expr::product(std::move(factors)));
            size_t s = 0;
            while (s < pick.size() && ++pick[s] == slots[s].size()) pick[s++] = 0;
            if (s == pick.size()) break;
        }
    }
    return out;
}

bool is_horizontal(const DiffForm& a, Projection target) {
    for (const auto& [t, g] : a.terms())
        for (const Covector& cv : t) {
            if (cv.kind == CoordKind::X) continue;
            if (cv.kind == CoordKind::Y && target != Projection::Pi1) continue;
            return false;
        }
    return true;
}

DiffForm contact_form(JetSpace space, int mu) {
    if (space.order != JetOrder::F1 && space.order != JetOrder::F2)
        fail(Errc::mixed_space, "contact form needs jet coordinates");
    DiffForm out(space, 1);
    out.add_term({Covector::dy(mu)}, Expr::constant(Rational(1)));
    for (int j = 1; j <= space.n; ++j)
        out.add_term({Covector::dx(j)}, -Expr::coord(CoordId::z(j, mu)));
    return out;
}

DiffForm contact_slot_form(JetSpace space, int i, int sigma) {
    DiffForm out = contact_form(space, sigma);
    // dx_{i-1} ^ ... ^ dx_1 prepends innermost-first to keep slot order
    for (int j = i - 1; j >= 1; --j) {
        DiffForm dxj(space, 1);
        dxj.add_term({Covector::dx(j)}, Expr::constant(Rational(1)));
        out = wedge(dxj, out);
    }
    for (int j = i + 1; j <= space.n; ++j) {
        DiffForm dxj(space, 1);
        dxj.add_term({Covector::dx(j)}, Expr::constant(Rational(1)));
        out = wedge(out, dxj);
    }
    return out;
}

DiffForm horizontal_volume(JetSpace space, const Expr& coefficient) {
    CovectorTuple t;
    for (int i = 1; i <= space.n; ++i) t.push_back(Covector::dx(i));
    DiffForm out(space, space.n);
    out.add_term(std::move(t), coefficient);
    return out;
}

bool forms_identical(const DiffForm& a, const DiffForm& b) {
    if (!(a.space() == b.space())) return false;
    for (const auto& [t, c] : a.terms())
        if (!structurally_zero(c - b.coefficient_at(t))) return false;
    for (const auto& [t, c] : b.terms())
        if (a.terms().find(t) == a.terms().end() && !structurally_zero(c)) return false;
    return true;
}

}  // namespace vk
