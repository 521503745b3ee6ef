// vkernel: command-line front end for the Euler-mapping kernel engine.
//
// Exit codes: 0 success, 2 parse/validation error, 3 operation error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vkernel/euler.hpp"
#include "vkernel/oracle.hpp"
#include "vkernel/text.hpp"

using nlohmann::json;
using namespace vk;

namespace {

struct Options {
    int n = 0;
    int m = 0;
    std::string format = "text";
    std::optional<uint64_t> seed;
    int trials = 20;
    double tol = 1e-9;
    std::string payload;
    std::string eta;
};

uint64_t resolve_seed(const Options& opt) {
    if (opt.seed) return *opt.seed;
    if (const char* env = std::getenv("VK_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
            fail(Errc::syntax_error, "VK_SEED is not an integer");
        }
    }
    return 1;
}

json verdict_json(const ZeroVerdict& v) {
    json j;
    j["tier"] = tier_name(v.tier);
    if (v.tier == ZeroVerdict::Tier::ProbablyZero) {
        j["samples"] = v.samples;
        j["tol"] = v.tol;
    }
    if (v.tier == ZeroVerdict::Tier::NonZero) {
        json point = json::object();
        for (const auto& [c, val] : v.witness.values) point[c.name()] = val;
        j["witness"] = {{"point", point}, {"value", v.value}};
    }
    return j;
}

struct Report {
    json j;

    Report(const std::string& command, const Options& opt, uint64_t seed) {
        j["command"] = command;
        j["dims"] = {{"n", opt.n}, {"m", opt.m}};
        j["inputs"] = json::object();
        j["outputs"] = json::object();
        j["seed"] = seed;
    }

    void emit_text_kv(std::ostream& os, const json& value, const std::string& prefix) const {
        if (value.is_object()) {
            for (const auto& [k, v] : value.items())
                emit_text_kv(os, v, prefix.empty() ? k : prefix + "." + k);
        } else if (value.is_array()) {
            int i = 0;
            for (const auto& v : value) emit_text_kv(os, v, prefix + "[" + std::to_string(i++) + "]");
        } else {
            os << prefix << ": "
               << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
    }

    void print(const std::string& format) const {
        if (format == "json") {
            std::cout << j.dump(2) << "\n";
        } else {
            emit_text_kv(std::cout, j, "");
        }
    }
};

ZeroCfg zero_cfg(const Options& opt, uint64_t seed) {
    ZeroCfg cfg;
    cfg.trials = opt.trials;
    cfg.tol = opt.tol;
    cfg.seed = seed;
    return cfg;
}

// ---------------------------------------------------------------------------
// command bodies; parse/validation happens in the caller

int run_euler(const Options& opt, const Lagrangian& L, Report& rep, uint64_t seed) {
    EulerForm ef = euler(L);
    ZeroCfg cfg = zero_cfg(opt, seed);
    json comps = json::array();
    json verdicts = json::array();
    json witnesses = json::array();
    bool all_zero = true;
    for (int mu = 1; mu <= L.m; ++mu) {
        const Expr& comp = ef.components[mu - 1];
        comps.push_back(print_expr(comp));
        ZeroCfg c = cfg;
        c.seed = mix_seed(cfg.seed, mu);
        ZeroVerdict v = is_zero(comp, c);
        verdicts.push_back(tier_name(v.tier));
        if (v.tier == ZeroVerdict::Tier::NonZero)
            witnesses.push_back({{"component", mu}, {"verdict", verdict_json(v)}});
        all_zero = all_zero && v.is_zero();
    }
    rep.j["outputs"]["components"] = comps;
    rep.j["outputs"]["component_verdicts"] = verdicts;
    rep.j["verdict"] = all_zero ? "null" : "nonzero";
    if (!witnesses.empty()) rep.j["witnesses"] = witnesses;
    return 0;
}

int run_kernel_check(const Options& opt, const Lagrangian& L, Report& rep, uint64_t seed) {
    KernelReport kr = kernel_check(L, zero_cfg(opt, seed));
    json cond8 = json::array();
    for (const auto& r : kr.cond8)
        cond8.push_back({{"i", r.i},
                         {"sigma", r.sigma},
                         {"k", r.k},
                         {"mu", r.mu},
                         {"residual", print_expr(r.residual)},
                         {"verdict", verdict_json(r.verdict)}});
    json cond9 = json::array();
    for (const auto& r : kr.cond9)
        cond9.push_back({{"mu", r.mu},
                         {"s", r.s},
                         {"sigma", r.sigma},
                         {"residual", print_expr(r.residual)},
                         {"verdict", verdict_json(r.verdict)}});
    rep.j["residuals"] = {{"symmetry", cond8}, {"coefficients", cond9}};
    rep.j["outputs"]["symmetry_holds"] = kr.cond8_holds;
    rep.j["verdict"] = kr.verdict;
    return 0;
}

json decomposition_json(const Decomposition& d) {
    json coeffs = json::array();
    for (const auto& [key, value] : d.coeffs)
        coeffs.push_back({{"s", key.first}, {"sigma", key.second}, {"value", print_expr(value)}});
    return {{"f0", print_expr(d.f0)}, {"coeffs", coeffs}};
}

int run_decompose(const Options& opt, const Lagrangian& L, Report& rep, uint64_t seed) {
    Decomposition d = decompose(L, zero_cfg(opt, seed));
    json out = decomposition_json(d);
    rep.j["outputs"]["f0"] = out["f0"];
    rep.j["outputs"]["coeffs"] = out["coeffs"];
    return 0;
}

int run_rho(const Options& opt, const Lagrangian& L, Report& rep, uint64_t seed) {
    DiffForm rho = build_rho(decompose(L, zero_cfg(opt, seed)));
    rep.j["outputs"]["rho"] = print_form(rho);
    return 0;
}

int run_potential(const Options&, const DiffForm& rho, Report& rep) {
    DiffForm eta = poincare_potential(rho);
    rep.j["outputs"]["eta"] = print_form(eta);
    return 0;
}

int run_generate(const Options&, const DiffForm& eta, Report& rep) {
    Lagrangian L = generate_null(eta);
    rep.j["outputs"]["lagrangian"] = print_expr(canonical(L.body));
    return 0;
}

int run_divergence(const Options&, int n, int m, const std::vector<Expr>& f, Report& rep) {
    Lagrangian L = divergence_lagrangian(n, m, f);
    rep.j["outputs"]["lagrangian"] = print_expr(canonical(L.body));
    return 0;
}

int run_sniatycki(const Options&, const Lagrangian& L, Report& rep) {
    rep.j["outputs"]["lambda"] = print_form(sniatycki_form(L));
    return 0;
}

int run_verify_roundtrip(const Options& opt, const Lagrangian& L, Report& rep, uint64_t seed) {
    json stages = json::array();
    bool all_ok = true;
    auto stage = [&](const std::string& name, auto&& body) -> bool {
        if (!all_ok) return false;
        try {
            std::string detail = body();
            stages.push_back({{"name", name}, {"ok", true}, {"detail", detail}});
            return true;
        } catch (const Error& err) {
            stages.push_back({{"name", name}, {"ok", false}, {"detail", err.what()}});
            all_ok = false;
            return false;
        }
    };

    ZeroCfg cfg = zero_cfg(opt, seed);
    std::optional<Decomposition> d;
    std::optional<DiffForm> rho, eta;
    std::optional<Lagrangian> back;

    stage("decompose", [&] {
        d = decompose(L, cfg);
        return "f0 plus " + std::to_string(d->coeffs.size()) + " coefficients";
    });
    stage("rho", [&] {
        rho = build_rho(*d);
        return print_form(*rho);
    });
    stage("closed", [&] {
        if (!exterior_d(*rho).is_zero()) fail(Errc::not_closed, "d(rho) is not zero");
        return std::string("d(rho) = 0");
    });
    stage("potential", [&] {
        eta = poincare_potential(*rho);
        if (!forms_identical(exterior_d(*eta), *rho))
            fail(Errc::internal, "d(eta) does not rebuild rho");
        return print_form(*eta);
    });
    stage("generate", [&] {
        back = generate_null(*eta);
        return print_expr(canonical(back->body));
    });
    stage("reproduce", [&] {
        ZeroCfg c = cfg;
        c.seed = mix_seed(cfg.seed, 0xABCDull);
        ZeroVerdict v = is_zero(back->body - L.body, c);
        if (!v.is_zero()) fail(Errc::internal, "regenerated Lagrangian differs from the input");
        return std::string(tier_name(v.tier)) + " difference";
    });
    stage("numeric", [&] {
        SamplerConfig scfg;
        scfg.seed = mix_seed(seed, 0xBEEFull);
        scfg.trials = opt.trials;
        scfg.tol = std::max(opt.tol, 1e-8);
        for (const ZeroVerdict& v : numeric_euler_zero(L, scfg))
            if (!v.is_zero()) fail(Errc::internal, "numeric Euler component is not zero");
        return std::string("all components numerically zero");
    });

    rep.j["outputs"]["stages"] = stages;
    rep.j["verdict"] = all_ok;
    return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic engine for the Euler mapping and its kernel"};
    app.require_subcommand(1);

    Options opt;
    std::string command;

    auto add_common = [&](CLI::App* sub, bool with_payload) {
        sub->add_option("-n", opt.n, "base dimension")->required();
        sub->add_option("-m", opt.m, "fibre dimension")->required();
        sub->add_option("--format", opt.format, "text|json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--seed", opt.seed, "sampling seed (fallback: VK_SEED)");
        sub->add_option("--trials", opt.trials, "sampling trials");
        sub->add_option("--tol", opt.tol, "sampling tolerance");
        if (with_payload) sub->add_option("payload", opt.payload, "expression payload")->required();
        sub->callback([&, sub] { command = sub->get_name(); });
    };

    add_common(app.add_subcommand("euler", "Euler form of a Lagrange function"), true);
    add_common(app.add_subcommand("kernel-check", "test membership in the Euler kernel"), true);
    add_common(app.add_subcommand("decompose", "multi-affine decomposition of a kernel candidate"),
               true);
    add_common(app.add_subcommand("rho", "closed form on U x V presenting a kernel element"), true);
    add_common(app.add_subcommand("potential", "primitive of a closed polynomial form on U x V"),
               true);
    auto* gen_cmd = app.add_subcommand("generate", "kernel element from a potential form");
    add_common(gen_cmd, false);
    gen_cmd->add_option("--eta", opt.eta, "potential form of degree n-1")->required();
    add_common(app.add_subcommand("divergence", "total divergence of n functions on U x V"), true);
    add_common(app.add_subcommand("sniatycki", "canonical preimage of L dx under h"), true);
    add_common(app.add_subcommand("verify-roundtrip",
                                  "decompose, present, integrate, regenerate, compare"),
               true);

    CLI11_PARSE(app, argc, argv);

    uint64_t seed = 0;
    try {
        seed = resolve_seed(opt);
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    Report rep(command, opt, seed);

    // parse phase: grammar, dimensions, payload shape
    Dims dims{opt.n, opt.m};
    std::optional<Lagrangian> L;
    std::optional<DiffForm> form_payload;
    std::vector<Expr> divergence_components;
    try {
        if (opt.n < 1 || opt.m < 1) fail(Errc::bad_arity, "dimensions must be positive");
        if (command == "potential") {
            rep.j["inputs"]["payload"] = opt.payload;
            form_payload = parse_form(opt.payload, dims).to_form(JetSpace::config(opt.n, opt.m),
                                                                 opt.n);
        } else if (command == "generate") {
            rep.j["inputs"]["eta"] = opt.eta;
            form_payload = parse_form(opt.eta, dims).to_form(JetSpace::config(opt.n, opt.m),
                                                             opt.n - 1);
        } else if (command == "divergence") {
            rep.j["inputs"]["payload"] = opt.payload;
            std::string cur;
            std::istringstream in(opt.payload);
            while (std::getline(in, cur, ';')) divergence_components.push_back(parse_expr(cur, dims));
        } else {
            rep.j["inputs"]["payload"] = opt.payload;
            L = Lagrangian(opt.n, opt.m, parse_expr(opt.payload, dims));
        }
    } catch (const Error& err) {
        rep.j["error"] = err.what();
        rep.print(opt.format);
        return 2;
    }

    // operation phase
    try {
        int rc = 0;
        if (command == "euler")
            rc = run_euler(opt, *L, rep, seed);
        else if (command == "kernel-check")
            rc = run_kernel_check(opt, *L, rep, seed);
        else if (command == "decompose")
            rc = run_decompose(opt, *L, rep, seed);
        else if (command == "rho")
            rc = run_rho(opt, *L, rep, seed);
        else if (command == "potential")
            rc = run_potential(opt, *form_payload, rep);
        else if (command == "generate")
            rc = run_generate(opt, *form_payload, rep);
        else if (command == "divergence")
            rc = run_divergence(opt, opt.n, opt.m, divergence_components, rep);
        else if (command == "sniatycki")
            rc = run_sniatycki(opt, *L, rep);
        else if (command == "verify-roundtrip")
            rc = run_verify_roundtrip(opt, *L, rep, seed);
        rep.print(opt.format);
        return rc;
    } catch (const Error& err) {
        rep.j["error"] = err.what();
        rep.print(opt.format);
        return 3;
    }
}
