#include "vkernel/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vk {

namespace detail {

Point draw_point(const std::vector<CoordId>& coords, double box, uint64_t seed, uint64_t trial,
                 uint64_t attempt) {
    uint64_t state = mix_seed(mix_seed(seed, trial + 1), attempt + 1);
    Point p;
    for (CoordId c : coords) {
        state = mix_seed(state, 0xD1B54A32D192ED03ull);
        double u = static_cast<double>(state >> 11) * 0x1.0p-53;  // [0,1)
        p.set(c, -box + 2.0 * box * u);
    }
    return p;
}

}  // namespace detail

namespace {

double eval_or_nan(const Expr& e, const Point& p) {
    try {
        return eval(e, p);
    } catch (const Error& err) {
        if (err.code() != Errc::eval_domain) throw;
        return std::numeric_limits<double>::quiet_NaN();
    }
}

constexpr int kMaxAttempts = 10;

}  // namespace

std::vector<Point> sample(const JetSpace& space, const SamplerConfig& cfg) {
    if (cfg.trials < 1 || cfg.box <= 0 || cfg.tol <= 0 || cfg.fd_step <= 0)
        fail(Errc::bad_arity, "invalid sampler configuration");
    std::vector<CoordId> coords = space.coords();
    std::vector<Point> out;
    out.reserve(cfg.trials);
    for (int t = 0; t < cfg.trials; ++t)
        out.push_back(detail::draw_point(coords, cfg.box, cfg.seed, t, 0));
    return out;
}

void eval_batch_serial(const Expr& e, const std::vector<Point>& points, std::vector<double>& out) {
    out.resize(points.size());
    for (size_t i = 0; i < points.size(); ++i) out[i] = eval_or_nan(e, points[i]);
}

void eval_batch_parallel(const Expr& e, const std::vector<Point>& points, std::vector<double>& out) {
    out.resize(points.size());
    const long long count = static_cast<long long>(points.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < count; ++i) out[i] = eval_or_nan(e, points[i]);
}

double finite_diff_check(const Expr& e, CoordId c, const SamplerConfig& cfg) {
    if (cfg.trials < 1 || cfg.fd_step <= 0) fail(Errc::bad_arity, "invalid sampler configuration");
    Expr de = diff(e, c);
    std::set<CoordId> sup = support(e);
    sup.insert(c);
    std::vector<CoordId> coords(sup.begin(), sup.end());
    const double h = cfg.fd_step;

    std::vector<double> errors(cfg.trials, std::numeric_limits<double>::quiet_NaN());
#pragma omp parallel for schedule(static)
    for (int t = 0; t < cfg.trials; ++t) {
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            Point p = detail::draw_point(coords, cfg.box, cfg.seed, t, attempt);
            Point plus = p, minus = p;
            plus.set(c, p.at(c) + h);
            minus.set(c, p.at(c) - h);
            double fp = eval_or_nan(e, plus);
            double fm = eval_or_nan(e, minus);
            double exact = eval_or_nan(de, p);
            if (std::isnan(fp) || std::isnan(fm) || std::isnan(exact)) continue;
            double central = (fp - fm) / (2.0 * h);
            errors[t] = std::fabs(central - exact) / (1.0 + std::fabs(exact));
            break;
        }
    }
    double worst = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
        if (std::isnan(errors[t])) fail(Errc::eval_domain, "sampling exhausted the redraw budget");
        worst = std::max(worst, errors[t]);
    }
    return worst;
}

std::vector<ZeroVerdict> numeric_euler_zero(const Lagrangian& L, const SamplerConfig& cfg) {
    std::vector<CoordId> coords = JetSpace::f2(L.n, L.m).coords();
    std::vector<ZeroVerdict> verdicts;
    verdicts.reserve(L.m);
    for (int mu = 1; mu <= L.m; ++mu) {
        // the raw summands: floating-point addition replaces any symbolic
        // cancellation, so the verdict is independent of the ring normal form
        std::vector<Expr> terms = detail::euler_component_terms(L, mu);
        bool literally_zero = true;
        for (const Expr& t : terms) literally_zero = literally_zero && t.is_zero_const();
        if (literally_zero) {
            ZeroVerdict v;
            v.tier = ZeroVerdict::Tier::ExactZero;
            verdicts.push_back(v);
            continue;
        }
        uint64_t comp_seed = mix_seed(cfg.seed, static_cast<uint64_t>(mu));
        std::vector<double> values(cfg.trials, std::numeric_limits<double>::quiet_NaN());
        std::vector<Point> points(cfg.trials);
#pragma omp parallel for schedule(static)
        for (int t = 0; t < cfg.trials; ++t) {
            for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
                Point p = detail::draw_point(coords, cfg.box, comp_seed, t, attempt);
                double v = 0.0;
                for (const Expr& term : terms) {
                    double tv = eval_or_nan(term, p);
                    if (std::isnan(tv)) {
                        v = tv;
                        break;
                    }
                    v += tv;
                }
                if (std::isnan(v)) continue;
                values[t] = v;
                points[t] = std::move(p);
                break;
            }
        }
        ZeroVerdict verdict;
        verdict.tier = ZeroVerdict::Tier::ProbablyZero;
        verdict.samples = cfg.trials;
        verdict.tol = cfg.tol;
        for (int t = 0; t < cfg.trials; ++t) {
            if (std::isnan(values[t])) fail(Errc::eval_domain, "sampling exhausted the redraw budget");
            if (std::fabs(values[t]) > cfg.tol * (1.0 + points[t].max_abs())) {
                verdict.tier = ZeroVerdict::Tier::NonZero;
                verdict.witness = points[t];
                verdict.value = values[t];
                break;
            }
        }
        verdicts.push_back(std::move(verdict));
    }
    return verdicts;
}

}  // namespace vk
