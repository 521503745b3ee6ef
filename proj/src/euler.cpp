#include "vkernel/euler.hpp"

#include <algorithm>

namespace vk {

Lagrangian::Lagrangian(int n_, int m_, Expr body_) : n(n_), m(m_), body(std::move(body_)) {
    if (n < 1 || m < 1) fail(Errc::bad_arity, "dimensions must be positive");
    JetSpace::f1(n, m).require(body, "Lagrange function");
}

EulerForm::EulerForm(int n_, int m_, std::vector<Expr> comps)
    : n(n_), m(m_), components(std::move(comps)) {
    if (static_cast<int>(components.size()) != m)
        fail(Errc::bad_arity, "Euler form needs exactly m components");
    JetSpace f2 = JetSpace::f2(n, m);
    for (const Expr& comp : components) {
        f2.require(comp, "Euler component");
        // structural consequence of the definition: jointly affine in the
        // second-order coordinates
        Poly p = to_poly(comp);
        for (const auto& [mono, c] : p.terms()) {
            int z2_degree = 0;
            for (const auto& [g, ex] : mono) {
                if (g.tag == Generator::Tag::Coord && g.coord.kind == CoordKind::Z2)
                    z2_degree += ex;
                else if (g.tag != Generator::Tag::Coord)
                    for (CoordId sc : support(g.arg))
                        if (sc.kind == CoordKind::Z2) z2_degree += 2;
            }
            if (z2_degree > 1)
                fail(Errc::internal, "Euler component is not affine in second-order coordinates");
        }
    }
}

namespace detail {

std::vector<Expr> euler_component_terms(const Lagrangian& L, int mu) {
    std::vector<Expr> terms;
    terms.push_back(diff(L.body, CoordId::y(mu)));
    for (int k = 1; k <= L.n; ++k) {
        Expr lzk = diff(L.body, CoordId::z(k, mu));
        if (lzk.is_zero_const()) continue;
        terms.push_back(-diff(lzk, CoordId::x(k)));
        for (int sigma = 1; sigma <= L.m; ++sigma)
            terms.push_back(-(diff(lzk, CoordId::y(sigma)) * Expr::coord(CoordId::z(k, sigma))));
        for (int i = 1; i <= L.n; ++i)
            for (int sigma = 1; sigma <= L.m; ++sigma)
                terms.push_back(-(diff(lzk, CoordId::z(i, sigma)) *
                                  Expr::coord(CoordId::z2(k, i, sigma))));
    }
    return terms;
}

}  // namespace detail

EulerForm euler(const Lagrangian& L) {
    std::vector<Expr> comps;
    comps.reserve(L.m);
    for (int mu = 1; mu <= L.m; ++mu)
        comps.push_back(canonical(Expr::sum(detail::euler_component_terms(L, mu))));
    return EulerForm(L.n, L.m, std::move(comps));
}

namespace {

using Key = Decomposition::Key;

/// Coefficient lookup treating missing keys as zero; the empty key is f0.
Expr coeff_at(const Decomposition& d, const std::vector<int>& s, const std::vector<int>& sigma) {
    if (s.empty()) return d.f0;
    auto it = d.coeffs.find(Key{s, sigma});
    return it == d.coeffs.end() ? Expr() : it->second;
}

std::vector<std::vector<int>> increasing_tuples(int n, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= n; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

std::vector<std::vector<int>> all_tuples(int m, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(r, 1);
    if (r == 0) {
        out.push_back({});
        return out;
    }
    for (;;) {
        out.push_back(cur);
        int i = 0;
        while (i < r && ++cur[i] > m) cur[i++] = 1;
        if (i == r) break;
    }
    return out;
}

/// Residual of the separated coefficient condition at monomial (s, sigma)
/// for fibre index mu:
///   d coeff(s,sigma)/dy_mu
///   - sum_a d coeff(s, sigma with slot a := mu)/dy_{sigma_a}
///   - sum_{k not in s} d coeff(s+k, sigma with mu at k's slot)/dx_k.
Expr coefficient_residual(const Decomposition& d, int mu, const std::vector<int>& s,
                          const std::vector<int>& sigma) {
    std::vector<Expr> terms;
    terms.push_back(diff(coeff_at(d, s, sigma), CoordId::y(mu)));
    for (size_t a = 0; a < s.size(); ++a) {
        std::vector<int> swapped = sigma;
        swapped[a] = mu;
        terms.push_back(-diff(coeff_at(d, s, swapped), CoordId::y(sigma[a])));
    }
    for (int k = 1; k <= d.n; ++k) {
        if (std::find(s.begin(), s.end(), k) != s.end()) continue;
        size_t pos = 0;
        while (pos < s.size() && s[pos] < k) ++pos;
        std::vector<int> s2 = s;
        std::vector<int> sig2 = sigma;
        s2.insert(s2.begin() + pos, k);
        sig2.insert(sig2.begin() + pos, mu);
        terms.push_back(-diff(coeff_at(d, s2, sig2), CoordId::x(k)));
    }
    return Expr::sum(std::move(terms));
}

std::vector<KernelReport::SymmetryResidual> symmetry_residuals(const Lagrangian& L,
                                                               const ZeroCfg& cfg) {
    std::vector<KernelReport::SymmetryResidual> out;
    uint64_t ordinal = 0;
    // the residual is invariant under i <-> k and under sigma <-> mu
    for (int i = 1; i <= L.n; ++i)
        for (int sigma = 1; sigma <= L.m; ++sigma)
            for (int k = i; k <= L.n; ++k)
                for (int mu = sigma; mu <= L.m; ++mu) {
                    Expr r = diff(diff(L.body, CoordId::z(i, sigma)), CoordId::z(k, mu)) +
                             diff(diff(L.body, CoordId::z(k, sigma)), CoordId::z(i, mu));
                    ZeroCfg c = cfg;
                    c.seed = mix_seed(cfg.seed, ++ordinal);
                    out.push_back({i, sigma, k, mu, canonical(r), is_zero(r, c)});
                }
    return out;
}

Decomposition read_off_decomposition(const Lagrangian& L, const ZeroCfg& cfg) {
    Decomposition d;
    d.n = L.n;
    d.m = L.m;
    for (const auto& [mono, coeff] : z_normal_form(L.body)) {
        if (mono.empty()) {
            d.f0 = coeff;
            continue;
        }
        std::vector<int> s, sigma;
        for (const auto& [c, ex] : mono) {
            if (ex != 1 || c.kind != CoordKind::Z)
                fail(Errc::not_in_kernel_candidate,
                     "not multi-affine in the first-order jet coordinates");
            if (!s.empty() && s.back() == c.a)
                fail(Errc::not_in_kernel_candidate, "repeated column index in a monomial");
            s.push_back(c.a);
            sigma.push_back(c.b);
        }
        d.coeffs.emplace(Key{std::move(s), std::move(sigma)}, coeff);
    }

    // antisymmetry in sigma at a fixed column tuple; violations are flagged
    uint64_t ordinal = 1u << 20;
    for (const auto& [key, coeff] : d.coeffs) {
        const auto& [s, sigma] = key;
        for (size_t a = 0; a < sigma.size(); ++a)
            for (size_t b = a + 1; b < sigma.size(); ++b) {
                ZeroCfg c = cfg;
                c.seed = mix_seed(cfg.seed, ++ordinal);
                if (sigma[a] == sigma[b]) {
                    if (!is_zero(coeff, c).is_zero())
                        fail(Errc::not_in_kernel_candidate,
                             "nonzero coefficient at a repeated fibre index");
                    continue;
                }
                std::vector<int> swapped = sigma;
                std::swap(swapped[a], swapped[b]);
                Expr other = coeff_at(d, s, swapped);
                if (!is_zero(coeff + other, c).is_zero())
                    fail(Errc::not_in_kernel_candidate,
                         "coefficients are not antisymmetric in the fibre indices");
            }
    }
    return d;
}

}  // namespace

KernelReport kernel_check(const Lagrangian& L, const ZeroCfg& cfg) {
    KernelReport rep;
    rep.cond8 = symmetry_residuals(L, cfg);
    rep.cond8_holds = std::all_of(rep.cond8.begin(), rep.cond8.end(),
                                  [](const auto& r) { return r.verdict.is_zero(); });
    if (!rep.cond8_holds) {
        rep.verdict = false;
        return rep;
    }
    Decomposition d = read_off_decomposition(L, cfg);
    uint64_t ordinal = 1u << 21;
    bool all_zero = true;
    for (int r = 0; r <= L.n; ++r)
        for (const auto& s : increasing_tuples(L.n, r))
            for (const auto& sigma : all_tuples(L.m, r))
                for (int mu = 1; mu <= L.m; ++mu) {
                    Expr res = coefficient_residual(d, mu, s, sigma);
                    if (r > 0 && structurally_zero(res)) continue;  // trivially satisfied
                    ZeroCfg c = cfg;
                    c.seed = mix_seed(cfg.seed, ++ordinal);
                    ZeroVerdict v = is_zero(res, c);
                    all_zero = all_zero && v.is_zero();
                    rep.cond9.push_back({mu, s, sigma, canonical(res), v});
                }
    rep.verdict = all_zero;
    return rep;
}

Decomposition decompose(const Lagrangian& L, const ZeroCfg& cfg) {
    for (const auto& r : symmetry_residuals(L, cfg))
        if (!r.verdict.is_zero())
            fail(Errc::not_in_kernel_candidate,
                 "second-derivative symmetry fails at (i=" + std::to_string(r.i) +
                     ", sigma=" + std::to_string(r.sigma) + ", k=" + std::to_string(r.k) +
                     ", mu=" + std::to_string(r.mu) + ")");
    Decomposition d = read_off_decomposition(L, cfg);

    // cross-validate the top coefficients against iterated z-derivatives
    for (const auto& nu : all_tuples(L.m, L.n)) {
        Expr der = L.body;
        std::vector<int> s;
        for (int i = 1; i <= L.n; ++i) {
            der = diff(der, CoordId::z(i, nu[i - 1]));
            s.push_back(i);
        }
        if (!structurally_zero(der - coeff_at(d, s, nu)))
            fail(Errc::internal, "top decomposition coefficient disagrees with the derivative rule");
    }
    return d;
}

DiffForm build_rho(const Decomposition& d) {
    JetSpace cfgspace = JetSpace::config(d.n, d.m);
    DiffForm rho(cfgspace, d.n);
    CovectorTuple all_dx;
    for (int i = 1; i <= d.n; ++i) all_dx.push_back(Covector::dx(i));
    if (!d.f0.is_zero_const()) rho.add_term(all_dx, d.f0);
    for (const auto& [key, coeff] : d.coeffs) {
        const auto& [s, sigma] = key;
        CovectorTuple t = all_dx;
        for (size_t a = 0; a < s.size(); ++a) t[s[a] - 1] = Covector::dy(sigma[a]);
        Rational scale(1);
        scale /= factorial(static_cast<int>(s.size()));
        rho.add_term(std::move(t), Expr::constant(scale) * coeff);
    }
    return rho;
}

DiffForm poincare_potential(const DiffForm& rho) {
    if (rho.space().order != JetOrder::Config)
        fail(Errc::mixed_space, "potential construction expects a form on U x V");
    const int p = rho.degree();
    if (p < 1) fail(Errc::bad_arity, "potential of a 0-form is undefined");
    for (const auto& [t, g] : rho.terms())
        if (!is_polynomial(g))
            fail(Errc::not_polynomial, "coefficient is not polynomial: cannot integrate exactly");
    if (!exterior_d(rho).is_zero()) fail(Errc::not_closed, "form is not closed");

    // radial homotopy about the chart origin: exact on polynomial monomials,
    // each picking up the factor 1/(p + degree)
    DiffForm eta(rho.space(), p - 1);
    for (const auto& [t, g] : rho.terms()) {
        Poly gp = to_poly(g);
        for (const auto& [mono, c] : gp.terms()) {
            int deg = 0;
            for (const auto& [gen, ex] : mono) deg += ex;
            std::vector<Expr> factors;
            factors.reserve(mono.size() + 2);
            Rational scale = c;
            scale /= (p + deg);
            factors.push_back(Expr::constant(scale));
            for (const auto& [gen, ex] : mono) factors.push_back(Expr::pow(Expr::coord(gen.coord), ex));
            Expr base = Expr::product(std::move(factors));
            int sign = 1;
            for (int a = 0; a < p; ++a) {
                CovectorTuple rest;
                rest.reserve(t.size() - 1);
                for (int b = 0; b < p; ++b)
                    if (b != a) rest.push_back(t[b]);
                Expr term = base * Expr::coord(t[a].coord());
                eta.add_term(std::move(rest), sign > 0 ? term : -term);
                sign = -sign;
            }
        }
    }
    return eta;
}

Lagrangian generate_null(const DiffForm& eta) {
    const JetSpace& sp = eta.space();
    if (sp.order != JetOrder::Config)
        fail(Errc::mixed_space, "generator expects a form on U x V");
    if (eta.degree() != sp.n - 1)
        fail(Errc::bad_arity, "generator needs a form of degree n - 1");
    DiffForm d = exterior_d(eta).lifted_to(JetSpace::f1(sp.n, sp.m));
    DiffForm h = horizontalize(d);
    CovectorTuple all_dx;
    for (int i = 1; i <= sp.n; ++i) all_dx.push_back(Covector::dx(i));
    return Lagrangian(sp.n, sp.m, h.coefficient_at(all_dx));
}

Lagrangian divergence_lagrangian(int n, int m, const std::vector<Expr>& f) {
    if (static_cast<int>(f.size()) != n)
        fail(Errc::bad_arity, "divergence needs exactly n component functions");
    JetSpace cfgspace = JetSpace::config(n, m);
    std::vector<Expr> terms;
    terms.reserve(f.size());
    for (int i = 1; i <= n; ++i) {
        cfgspace.require(f[i - 1], "divergence component");
        terms.push_back(total_derivative(f[i - 1], i));
    }
    return Lagrangian(n, m, Expr::sum(std::move(terms)));
}

DiffForm sniatycki_form(const Lagrangian& L) {
    JetSpace f1 = JetSpace::f1(L.n, L.m);
    DiffForm lambda = horizontal_volume(f1, L.body);
    for (int i = 1; i <= L.n; ++i)
        for (int sigma = 1; sigma <= L.m; ++sigma) {
            Expr g = diff(L.body, CoordId::z(i, sigma));
            if (g.is_zero_const()) continue;
            lambda += contact_slot_form(f1, i, sigma).scaled(g);
        }
    return lambda;
}

Lagrangian closed_form_null_1d(int m, const Expr& F) {
    JetSpace::config(1, m).require(F, "generating function");
    std::vector<Expr> terms;
    terms.push_back(diff(F, CoordId::x(1)));
    for (int mu = 1; mu <= m; ++mu)
        terms.push_back(diff(F, CoordId::y(mu)) * Expr::coord(CoordId::z(1, mu)));
    return Lagrangian(1, m, Expr::sum(std::move(terms)));
}

Lagrangian closed_form_null_2d(int m, const std::vector<Expr>& f, const std::vector<Expr>& g) {
    if (f.size() != 2) fail(Errc::bad_arity, "need exactly two base components");
    if (static_cast<int>(g.size()) != m) fail(Errc::bad_arity, "need exactly m fibre components");
    JetSpace cfgspace = JetSpace::config(2, m);
    for (const auto& e : f) cfgspace.require(e, "base component");
    for (const auto& e : g) cfgspace.require(e, "fibre component");
    std::vector<Expr> terms;
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j) {
            if (i == j) continue;
            int eps = (i == 1) ? 1 : -1;  // eps_{12} = 1, eps_{21} = -1
            std::vector<Expr> inner;
            inner.push_back(diff(f[j - 1], CoordId::x(i)));
            for (int mu = 1; mu <= m; ++mu) {
                Expr a = diff(g[mu - 1], CoordId::x(i)) - diff(f[i - 1], CoordId::y(mu));
                inner.push_back(a * Expr::coord(CoordId::z(j, mu)));
                for (int sigma = 1; sigma <= m; ++sigma)
                    inner.push_back(diff(g[mu - 1], CoordId::y(sigma)) *
                                    Expr::coord(CoordId::z(i, sigma)) *
                                    Expr::coord(CoordId::z(j, mu)));
            }
            Expr block = Expr::sum(std::move(inner));
            terms.push_back(eps > 0 ? block : -block);
        }
    return Lagrangian(2, m, Expr::sum(std::move(terms)));
}

}  // namespace vk
