#pragma once

#include <map>
#include <utility>
#include <vector>

#include "vkernel/form.hpp"

namespace vk {

/// First-order Lagrange function: an expression on F1(n, m).
struct Lagrangian {
    int n = 1;
    int m = 1;
    Expr body;

    Lagrangian(int n_, int m_, Expr body_);  // validates support against F1(n, m)
};

/// Components E_mu of the Euler form in the contact cobasis; expressions on
/// F2, affine in every second-order coordinate (checked at construction).
struct EulerForm {
    int n = 1;
    int m = 1;
    std::vector<Expr> components;  // index mu-1

    EulerForm(int n_, int m_, std::vector<Expr> comps);
};

/// Multi-affine decomposition of a kernel candidate:
///   L = f0 + sum over increasing column tuples s and fibre tuples sigma of
///       coeff(s, sigma) * z_{s1,sigma1} * ... * z_{sr,sigmar},
/// with coefficients free of jet coordinates and antisymmetric in sigma.
struct Decomposition {
    using Key = std::pair<std::vector<int>, std::vector<int>>;  // (s, sigma)

    int n = 1;
    int m = 1;
    Expr f0;
    std::map<Key, Expr> coeffs;  // nonzero, canonical
};

struct KernelReport {
    struct SymmetryResidual {
        int i, sigma, k, mu;  // residual of d2L/dz_{i,sigma}dz_{k,mu} + d2L/dz_{k,sigma}dz_{i,mu}
        Expr residual;
        ZeroVerdict verdict;
    };
    struct CoefficientResidual {
        int mu;
        std::vector<int> s, sigma;  // monomial whose coefficient must vanish
        Expr residual;
        ZeroVerdict verdict;
    };

    std::vector<SymmetryResidual> cond8;
    std::vector<CoefficientResidual> cond9;
    bool cond8_holds = false;
    bool verdict = false;
};

/// The Euler mapping: E_mu(L) = dL/dy_mu - d2L/dx_k dz_{k,mu}
///   - d2L/dy_sigma dz_{k,mu} z_{k,sigma} - d2L/dz_{i,sigma} dz_{k,mu} z_{ki,sigma}.
EulerForm euler(const Lagrangian& L);

namespace detail {
/// The summands of E_mu before any symbolic cancellation; the numeric oracle
/// evaluates these term by term so it never trusts the symbolic collapse.
std::vector<Expr> euler_component_terms(const Lagrangian& L, int mu);
}  // namespace detail

/// Full kernel test: the second-derivative symmetry residuals, and (when they
/// vanish) the separated coefficient conditions on the decomposition.
KernelReport kernel_check(const Lagrangian& L, const ZeroCfg& cfg = {});

/// Read the multi-affine coefficients off the jet normal form and
/// cross-validate the top-degree ones against iterated z-derivatives.
/// Throws Errc::not_in_kernel_candidate when the symmetry conditions fail.
Decomposition decompose(const Lagrangian& L, const ZeroCfg& cfg = {});

/// The unique n-form on U x V whose horizontalization (after lifting to F1)
/// is L dx_1 ^ ... ^ dx_n.
DiffForm build_rho(const Decomposition& d);

/// Primitive of a closed polynomial form on U x V via the radial homotopy
/// about the origin; exact for polynomial coefficients.
/// Throws Errc::not_closed / Errc::not_polynomial.
DiffForm poincare_potential(const DiffForm& rho);

/// L with L dx_1 ^ ... ^ dx_n = h(d eta); always in the kernel.
Lagrangian generate_null(const DiffForm& eta);

/// Total divergence of functions f_i(x, y): L = df_i/dx_i + df_i/dy_sigma z_{i,sigma}.
Lagrangian divergence_lagrangian(int n, int m, const std::vector<Expr>& f);

/// lambda = L dx + dL/dz_{i,sigma} * (dx_1 ^ ... ^ omega_sigma at slot i ^ ... ^ dx_n);
/// its horizontalization is L dx, witnessing surjectivity of h.
DiffForm sniatycki_form(const Lagrangian& L);

/// Closed-form kernel elements in low dimension.
/// n = 1: L = dF/dx + dF/dy_mu z_{1,mu} for a function F(x, y).
Lagrangian closed_form_null_1d(int m, const Expr& F);
/// n = 2: L = eps_{ij} (df_j/dx_i + (dg_mu/dx_i - df_i/dy_mu) z_{j,mu}
///                      + dg_mu/dy_sigma z_{i,sigma} z_{j,mu}).
Lagrangian closed_form_null_2d(int m, const std::vector<Expr>& f, const std::vector<Expr>& g);

}  // namespace vk
