#include "cuspidal/quartic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace cuspidal {

double Quartic::max_abs_coeff() const {
    return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d), std::abs(e)});
}

DerivativeValues derivative_values(const Quartic& q, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("derivative_values: t not finite");
    double p = q.a, d1 = 0, d2 = 0, d3 = 0;
    for (double coef : {q.b, q.c, q.d, q.e}) {
        d3 = d3 * t + d2;
        d2 = d2 * t + d1;
        d1 = d1 * t + p;
        p = p * t + coef;
    }
    // repeated Horner accumulates P''/2! and P'''/3!
    return {p, d1, 2.0 * d2, 6.0 * d3};
}

namespace {

using cplx = std::complex<double>;

// values of the deflated polynomial and its derivatives at a complex point
struct CDerivs {
    cplx p, dp, d2p, d3p, d4p;
};

CDerivs ceval(std::span<const double> c, cplx z) {
    // c holds the coefficients highest degree first, length = deg+1
    cplx p = c[0], d1 = 0, d2 = 0, d3 = 0, d4 = 0;
    for (size_t i = 1; i < c.size(); ++i) {
        d4 = d4 * z + d3;
        d3 = d3 * z + d2;
        d2 = d2 * z + d1;
        d1 = d1 * z + p;
        p = p * z + c[i];
    }
    return {p, d1, 2.0 * d2, 6.0 * d3, 24.0 * d4};
}

cplx deriv_of_order(const CDerivs& d, int k) {
    switch (k) {
        case 0: return d.p;
        case 1: return d.dp;
        case 2: return d.d2p;
        case 3: return d.d3p;
        default: return d.d4p;
    }
}

// Multiplicity estimate at z: for P ~ (t - r)^m the ratio P'^2/(P'^2 - P P'')
// equals m exactly. Falls back to a derivative-magnitude ladder when the
// ratio is ill-conditioned.
int estimate_multiplicity(std::span<const double> c, cplx z, double scale) {
    const int deg = static_cast<int>(c.size()) - 1;
    CDerivs d = ceval(c, z);
    cplx num = d.dp * d.dp;
    cplx den = num - d.p * d.d2p;
    if (std::abs(den) > 1e-30 * (std::abs(num) + 1e-300)) {
        double m = (num / den).real();
        if (std::isfinite(m) && m > 0.5 && m < deg + 0.5)
            return std::clamp(static_cast<int>(std::lround(m)), 1, deg);
    }
    double az = std::max(1.0, std::abs(z));
    for (int k = 1; k <= deg; ++k) {
        double mag = std::abs(deriv_of_order(d, k));
        if (mag > 1e-4 * scale * std::pow(az, deg - k)) return k;
    }
    return deg;
}

// Newton on the (m-1)-th derivative, where the m-fold root is simple.
cplx polish(std::span<const double> c, cplx z, int m, int iters = 40) {
    for (int it = 0; it < iters; ++it) {
        CDerivs d = ceval(c, z);
        cplx f = deriv_of_order(d, m - 1);
        cplx df = deriv_of_order(d, m);
        if (std::abs(df) < 1e-300) break;
        cplx step = f / df;
        z -= step;
        if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) break;
    }
    return z;
}

}  // namespace

RootSet real_roots(const Quartic& q, double cluster_tol, double lead_tol) {
    const double coeffs[5] = {q.a, q.b, q.c, q.d, q.e};
    for (double v : coeffs)
        if (!std::isfinite(v)) throw std::invalid_argument("real_roots: non-finite coefficient");
    double scale = q.max_abs_coeff();
    if (scale == 0.0) throw std::runtime_error("degenerate: all-zero coefficients");

    RootSet out;
    int lo = 0;
    while (lo < 4 && std::abs(coeffs[lo]) < lead_tol * scale) {
        ++lo;
        ++out.degree_at_infinity;
    }
    const int deg = 4 - lo;
    if (deg == 0) return out;

    std::span<const double> c(coeffs + lo, deg + 1);

    std::vector<cplx> eig;
    eig.reserve(deg);
    if (deg == 1) {
        eig.emplace_back(-c[1] / c[0], 0.0);
    } else if (deg == 2) {
        // stable quadratic formula
        double A = c[0], B = c[1], C = c[2];
        double disc = B * B - 4 * A * C;
        if (disc >= 0) {
            double sq = std::sqrt(disc);
            double q1 = -0.5 * (B + (B >= 0 ? sq : -sq));
            eig.emplace_back(q1 / A, 0.0);
            eig.emplace_back(std::abs(q1) > 1e-300 ? C / q1 : -B / (2 * A), 0.0);
        } else {
            double re = -B / (2 * A), im = std::sqrt(-disc) / (2 * A);
            eig.emplace_back(re, im);
            eig.emplace_back(re, -im);
        }
    } else {
        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(deg, deg);
        for (int i = 0; i < deg; ++i) M(0, i) = -c[i + 1] / c[0];
        for (int i = 1; i < deg; ++i) M(i, i - 1) = 1.0;
        Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
        for (int i = 0; i < deg; ++i) eig.push_back(es.eigenvalues()(i));
    }

    // polish each eigenvalue on the derivative matching its multiplicity
    std::vector<double> reals;
    int kept = 0;
    for (cplx z : eig) {
        int m = estimate_multiplicity(c, z, scale);
        cplx zp = polish(c, z, m);
        if (!std::isfinite(zp.real()) || !std::isfinite(zp.imag())) zp = z;
        if (std::abs(zp.imag()) <= cluster_tol * (1.0 + std::abs(zp.real()))) {
            reals.push_back(zp.real());
            ++kept;
        }
    }
    out.complex_pairs = (deg - kept) / 2;

    std::sort(reals.begin(), reals.end());
    size_t i = 0;
    while (i < reals.size()) {
        size_t j = i + 1;
        double sum = reals[i];
        while (j < reals.size() &&
               reals[j] - reals[j - 1] <= cluster_tol * (1.0 + std::abs(reals[j]))) {
            sum += reals[j];
            ++j;
        }
        double value = sum / static_cast<double>(j - i);
        // reject Newton escapees that no longer sit on the polynomial
        double pv = 0;
        {
            double acc = c[0];
            for (size_t k = 1; k < c.size(); ++k) acc = acc * value + c[k];
            pv = acc;
        }
        double az = std::max(1.0, std::abs(value));
        if (std::abs(pv) <= 1e-5 * scale * std::pow(az, deg)) {
            out.roots.push_back({value, static_cast<int>(j - i)});
        } else {
            out.complex_pairs += static_cast<int>(j - i) / 2;
        }
        i = j;
    }
    return out;
}

std::optional<TripleRoot> triple_root_refine(const QuarticFamily& family, double t_seed,
                                             std::span<const double> u_seed,
                                             const TripleRootOptions& opt) {
    const int k = static_cast<int>(u_seed.size());
    Eigen::VectorXd x(1 + k);
    x(0) = t_seed;
    for (int j = 0; j < k; ++j) x(1 + j) = u_seed[j];

    auto apply_clamp = [&](Eigen::VectorXd& v) {
        if (family.clamp && k > 0) family.clamp(std::span<double>(v.data() + 1, k));
    };
    apply_clamp(x);

    auto evalF = [&](const Eigen::VectorXd& v, Quartic* qout) -> Eigen::Vector3d {
        Quartic q = family.coeffs(std::span<const double>(v.data() + 1, k));
        if (qout) *qout = q;
        DerivativeValues d = derivative_values(q, v(0));
        return {d.p, d.dp, d.d2p};
    };
    auto scaled_norm = [&](const Eigen::Vector3d& F, const Quartic& q, double t) {
        double S = std::max(q.max_abs_coeff(), 1e-300);
        double at = 1.0 + std::abs(t);
        double s0 = S * at * at * at * at;
        double s1 = 4 * S * at * at * at;
        double s2 = 12 * S * at * at;
        return std::max({std::abs(F(0)) / s0, std::abs(F(1)) / s1, std::abs(F(2)) / s2});
    };

    Quartic q;
    Eigen::Vector3d F = evalF(x, &q);
    double best = scaled_norm(F, q, x(0));
    int stall = 0;

    for (int it = 0; it < opt.max_iter && stall < 6; ++it) {
        DerivativeValues d = derivative_values(q, x(0));
        Eigen::MatrixXd J(3, 1 + k);
        J(0, 0) = d.dp;
        J(1, 0) = d.d2p;
        J(2, 0) = d.d3p;
        for (int j = 0; j < k; ++j) {
            double h = 1e-6 * (1.0 + std::abs(x(1 + j)));
            Eigen::VectorXd xp = x, xm = x;
            xp(1 + j) += h;
            xm(1 + j) -= h;
            Eigen::Vector3d Fp = evalF(xp, nullptr), Fm = evalF(xm, nullptr);
            J.col(1 + j) = (Fp - Fm) / (2 * h);
        }
        Eigen::VectorXd step = J.colPivHouseholderQr().solve(-F);
        if (!step.allFinite()) break;

        double lambda = 1.0;
        bool improved = false;
        for (int ls = 0; ls < 25; ++ls) {
            Eigen::VectorXd xn = x + lambda * step;
            apply_clamp(xn);
            Quartic qn;
            Eigen::Vector3d Fn = evalF(xn, &qn);
            double rn = scaled_norm(Fn, qn, xn(0));
            if (rn < best) {
                x = xn;
                F = Fn;
                q = qn;
                best = rn;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        stall = improved ? 0 : stall + 1;
        if (best < opt.eps_triple * 1e-3) break;
    }

    if (best >= opt.eps_triple) return std::nullopt;
    DerivativeValues d = derivative_values(q, x(0));
    double S = std::max(q.max_abs_coeff(), 1e-300);
    if (std::abs(d.d3p) <= opt.eps_nondeg * S * (1.0 + std::abs(x(0)))) return std::nullopt;

    TripleRoot r;
    r.t = x(0);
    r.params.assign(x.data() + 1, x.data() + 1 + k);
    r.res_p = std::abs(d.p);
    r.res_dp = std::abs(d.dp);
    r.res_d2p = std::abs(d.d2p);
    r.d3p = d.d3p;
    return r;
}

}  // namespace cuspidal
