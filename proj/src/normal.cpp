#include "vkernel/normal.hpp"

#include <algorithm>
#include <cmath>

namespace vk {

Generator Generator::from_coord(CoordId c) {
    Generator g;
    g.tag = Tag::Coord;
    g.coord = c;
    return g;
}

Generator Generator::from_func(FuncName f, Expr canonical_arg) {
    Generator g;
    g.tag = Tag::Func;
    g.func = f;
    g.arg = std::move(canonical_arg);
    return g;
}

Generator Generator::from_recip(Expr canonical_base) {
    Generator g;
    g.tag = Tag::Recip;
    g.arg = std::move(canonical_base);
    return g;
}

int cmp(const Generator& a, const Generator& b) {
    if (a.tag != b.tag) return static_cast<int>(a.tag) < static_cast<int>(b.tag) ? -1 : 1;
    switch (a.tag) {
        case Generator::Tag::Coord:
            if (a.coord == b.coord) return 0;
            return a.coord < b.coord ? -1 : 1;
        case Generator::Tag::Func:
            if (a.func != b.func)
                return static_cast<int>(a.func) < static_cast<int>(b.func) ? -1 : 1;
            return cmp(a.arg, b.arg);
        case Generator::Tag::Recip:
            return cmp(a.arg, b.arg);
    }
    return 0;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        if (int c = cmp(a[i].first, b[i].first); c != 0) return c < 0;
        if (a[i].second != b[i].second) return a[i].second < b[i].second;
    }
    return a.size() < b.size();
}

namespace {

Monomial mul_monomials(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = cmp(a[i].first, b[j].first);
        if (c < 0) {
            out.push_back(a[i++]);
        } else if (c > 0) {
            out.push_back(b[j++]);
        } else {
            int e = a[i].second + b[j].second;
            if (e != 0) out.emplace_back(a[i].first, e);
            ++i;
            ++j;
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return out;
}

Monomial pow_monomial(const Monomial& m, long long e) {
    Monomial out;
    out.reserve(m.size());
    for (const auto& [g, x] : m) {
        long long p = static_cast<long long>(x) * e;
        if (p != 0) out.emplace_back(g, static_cast<int>(p));
    }
    return out;
}

}  // namespace

Poly Poly::constant(Rational r) {
    Poly p;
    if (r != 0) p.terms_.emplace(Monomial{}, std::move(r));
    return p;
}

Poly Poly::generator(Generator g) {
    Poly p;
    p.terms_.emplace(Monomial{{std::move(g), 1}}, Rational(1));
    return p;
}

std::optional<std::pair<Monomial, Rational>> Poly::single_term() const {
    if (terms_.size() != 1) return std::nullopt;
    return *terms_.begin();
}

void Poly::add_term(Monomial m, Rational c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(m), c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) out.add_term(mul_monomials(ma, mb), ca * cb);
    return out;
}

Poly Poly::negated() const {
    Poly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

Poly Poly::pow(long long e) const {
    Poly acc = Poly::constant(Rational(1));
    Poly b = *this;
    unsigned long long u = static_cast<unsigned long long>(e);
    while (u > 0) {
        if (u & 1ull) acc = acc * b;
        if (u >>= 1) b = b * b;
    }
    return acc;
}

Poly to_poly(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Const:
            return Poly::constant(e.value());
        case Expr::Kind::Coord:
            return Poly::generator(Generator::from_coord(e.coord_id()));
        case Expr::Kind::Sum: {
            Poly out;
            for (const auto& k : e.kids()) out += to_poly(k);
            return out;
        }
        case Expr::Kind::Product: {
            Poly out = Poly::constant(Rational(1));
            for (const auto& k : e.kids()) out = out * to_poly(k);
            return out;
        }
        case Expr::Kind::Neg:
            return to_poly(e.kids()[0]).negated();
        case Expr::Kind::Func:
            return Poly::generator(Generator::from_func(e.func_id(), canonical(e.kids()[0])));
        case Expr::Kind::IntPow: {
            Poly base = to_poly(e.kids()[0]);
            long long ex = e.exponent();
            if (ex >= 0) return base.pow(ex);
            if (base.empty()) fail(Errc::eval_domain, "reciprocal of a zero expression");
            if (auto st = base.single_term()) {
                Poly out;
                out.add_term(pow_monomial(st->first, ex), rational_pow(st->second, ex));
                return out;
            }
            Poly recip = Poly::generator(Generator::from_recip(to_expr(base)));
            return recip.pow(-ex);
        }
    }
    return Poly();
}

namespace {
Expr generator_to_expr(const Generator& g, int exponent) {
    Expr base;
    switch (g.tag) {
        case Generator::Tag::Coord:
            base = Expr::coord(g.coord);
            break;
        case Generator::Tag::Func:
            base = Expr::func(g.func, g.arg);
            break;
        case Generator::Tag::Recip:
            base = g.arg;
            exponent = -exponent;
            break;
    }
    return Expr::pow(std::move(base), exponent);
}
}  // namespace

Expr to_expr(const Poly& p) {
    std::vector<Expr> terms;
    terms.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) {
        std::vector<Expr> factors;
        factors.reserve(m.size() + 1);
        factors.push_back(Expr::constant(c));
        for (const auto& [g, e] : m) factors.push_back(generator_to_expr(g, e));
        terms.push_back(Expr::product(std::move(factors)));
    }
    return Expr::sum(std::move(terms));
}

bool is_polynomial(const Expr& e) {
    Poly p = to_poly(e);
    for (const auto& [m, c] : p.terms())
        for (const auto& [g, ex] : m)
            if (g.tag != Generator::Tag::Coord || ex < 0) return false;
    return true;
}

namespace {
bool is_jet_coord(CoordId c) { return c.kind == CoordKind::Z || c.kind == CoordKind::Z2; }

bool touches_jets(const Expr& e) {
    for (CoordId c : support(e))
        if (is_jet_coord(c)) return true;
    return false;
}
}  // namespace

std::map<JetMonomial, Expr> z_normal_form(const Expr& e) {
    Poly p = to_poly(e);
    std::map<JetMonomial, Poly> buckets;
    for (const auto& [m, c] : p.terms()) {
        JetMonomial zpart;
        Monomial rest;
        for (const auto& [g, ex] : m) {
            if (g.tag != Generator::Tag::Coord) {
                if (touches_jets(g.arg))
                    fail(Errc::not_polynomial_in_jets,
                         "jet coordinate inside a non-polynomial subexpression");
                rest.emplace_back(g, ex);
            } else if (is_jet_coord(g.coord)) {
                if (ex < 0)
                    fail(Errc::not_polynomial_in_jets,
                         "jet coordinate under a negative power: " + g.coord.name());
                zpart.emplace_back(g.coord, ex);
            } else {
                rest.emplace_back(g, ex);
            }
        }
        buckets[std::move(zpart)].add_term(std::move(rest), c);
    }
    std::map<JetMonomial, Expr> out;
    for (const auto& [zm, poly] : buckets) {
        if (poly.empty()) continue;
        out.emplace(zm, to_expr(poly));
    }
    return out;
}

Expr jet_monomial_to_expr(const JetMonomial& m) {
    std::vector<Expr> factors;
    factors.reserve(m.size());
    for (const auto& [c, e] : m) factors.push_back(Expr::pow(Expr::coord(c), e));
    return Expr::product(std::move(factors));
}

const char* tier_name(ZeroVerdict::Tier t) {
    switch (t) {
        case ZeroVerdict::Tier::ExactZero: return "ExactZero";
        case ZeroVerdict::Tier::ProbablyZero: return "ProbablyZero";
        case ZeroVerdict::Tier::NonZero: return "NonZero";
    }
    return "?";
}

uint64_t mix_seed(uint64_t seed, uint64_t salt) {
    // splitmix64 step over seed xor salt
    uint64_t z = seed ^ (salt + 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {
// xorshift-style generator with a deterministic cross-platform stream
struct Rng64 {
    uint64_t state;
    explicit Rng64(uint64_t seed) : state(seed ? seed : 0x853C49E6748FEA9Bull) {}
    uint64_t next() {
        state = mix_seed(state, 0xD1B54A32D192ED03ull);
        return state;
    }
    double uniform(double lo, double hi) {
        double u = static_cast<double>(next() >> 11) * 0x1.0p-53;  // [0,1)
        return lo + (hi - lo) * u;
    }
};
}  // namespace

ZeroVerdict is_zero(const Expr& e, const ZeroCfg& cfg) {
    return is_zero(e, cfg.trials, cfg.tol, cfg.seed);
}

ZeroVerdict is_zero(const Expr& e, int trials, double tol, uint64_t seed) {
    if (trials < 1) fail(Errc::bad_arity, "is_zero requires at least one trial");
    if (structurally_zero(e)) {
        ZeroVerdict v;
        v.tier = ZeroVerdict::Tier::ExactZero;
        return v;
    }
    std::set<CoordId> sup = support(e);
    std::vector<CoordId> coords(sup.begin(), sup.end());
    Rng64 rng(mix_seed(seed, 0x5EEDull));
    long long redraws_left = 10ll * trials;
    for (int t = 0; t < trials; ++t) {
        for (;;) {
            Point p;
            for (CoordId c : coords) p.set(c, rng.uniform(-1.0, 1.0));
            double value;
            try {
                value = eval(e, p);
            } catch (const Error& err) {
                if (err.code() != Errc::eval_domain) throw;
                if (--redraws_left < 0)
                    fail(Errc::eval_domain, "sampling exhausted the redraw budget");
                continue;
            }
            if (std::fabs(value) > tol * (1.0 + p.max_abs())) {
                ZeroVerdict v;
                v.tier = ZeroVerdict::Tier::NonZero;
                v.witness = std::move(p);
                v.value = value;
                return v;
            }
            break;
        }
    }
    ZeroVerdict v;
    v.tier = ZeroVerdict::Tier::ProbablyZero;
    v.samples = trials;
    v.tol = tol;
    return v;
}

}  // namespace vk
