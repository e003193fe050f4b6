#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace cuspidal {

// Real polynomial a*t^4 + b*t^3 + c*t^2 + d*t + e. Lower-degree polynomials
// are represented with leading zeros.
struct Quartic {
    double a = 0, b = 0, c = 0, d = 0, e = 0;

    double operator()(double t) const { return (((a * t + b) * t + c) * t + d) * t + e; }
    double max_abs_coeff() const;
};

struct DerivativeValues {
    double p, dp, d2p, d3p;
};

// P, P', P'', P''' at t in one Horner pass.
DerivativeValues derivative_values(const Quartic& q, double t);

// Real roots with multiplicities. degree_at_infinity counts leading
// coefficients absorbed as roots at infinity (|lead| below the degeneracy
// threshold); complex_pairs counts conjugate pairs excluded from `roots`.
// Invariant: sum(multiplicities) + 2*complex_pairs + degree_at_infinity = 4.
struct RootSet {
    struct Root {
        double value;
        int multiplicity;
    };
    std::vector<Root> roots;  // ascending by value
    int degree_at_infinity = 0;
    int complex_pairs = 0;

    int real_count_with_multiplicity() const {
        int n = 0;
        for (const auto& r : roots) n += r.multiplicity;
        return n;
    }
};

// Companion-matrix eigenvalues, then per-eigenvalue multiplicity estimation
// and Newton polish on the matching derivative, then clustering at
// cluster_tol*(1+|t|). Throws std::runtime_error("degenerate: all-zero
// coefficients") when every coefficient vanishes.
RootSet real_roots(const Quartic& q, double cluster_tol = 1e-6, double lead_tol = 1e-12);

// One quartic per parameter vector u (1 or 2 entries in practice).
struct QuarticFamily {
    std::function<Quartic(std::span<const double>)> coeffs;
    // optional projection of u onto the feasible set, applied after every step
    std::function<void(std::span<double>)> clamp;
};

struct TripleRootOptions {
    double eps_triple = 1e-10;
    double eps_nondeg = 1e-6;
    int max_iter = 80;
};

struct TripleRoot {
    double t = 0;
    std::vector<double> params;
    double res_p = 0, res_dp = 0, res_d2p = 0;  // |P|, |P'|, |P''| at (t, params)
    double d3p = 0;                             // P''' at (t, params)
};

// Damped Gauss-Newton on {P=0, P'=0, P''=0} in the unknowns (t, u). Accepts
// only if the scaled residuals drop below eps_triple and |P'''| stays above
// the eps_nondeg floor; otherwise returns nullopt.
std::optional<TripleRoot> triple_root_refine(const QuarticFamily& family, double t_seed,
                                             std::span<const double> u_seed,
                                             const TripleRootOptions& opt = {});

}  // namespace cuspidal
