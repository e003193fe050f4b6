#include "cuspidal/kinematics.hpp"

#include <algorithm>
#include <stdexcept>

namespace cuspidal {

void DesignParams::require_valid() const {
    if (!valid()) throw std::invalid_argument("design params must be three positive reals");
}

double wrap_angle(double a) {
    a = std::fmod(a + M_PI, 2.0 * M_PI);
    if (a <= 0.0) a += 2.0 * M_PI;
    return a - M_PI;
}

double max_reach(const DesignParams& p) {
    double u = 1.0 + p.d3 + p.d4;
    double v = p.r2 + p.d4;
    return std::sqrt(u * u + v * v);
}

Vec3 fk(const DesignParams& p, const JointConfig& q) {
    const double c1 = std::cos(q.theta1), s1 = std::sin(q.theta1);
    const double c2 = std::cos(q.theta2), s2 = std::sin(q.theta2);
    const double c3 = std::cos(q.theta3), s3 = std::sin(q.theta3);
    const double A = p.d3 + p.d4 * c3;  // planar arm extension
    const double B = p.r2 + p.d4 * s3;  // lateral offset
    const double X0 = A * c2 + 1.0;
    return {X0 * c1 - B * s1, X0 * s1 + B * c1, -A * s2};
}

double jacobian_det(const DesignParams& p, double theta2, double theta3) {
    const double c2 = std::cos(theta2);
    const double c3 = std::cos(theta3), s3 = std::sin(theta3);
    const double A = p.d3 + p.d4 * c3;
    const double h = p.r2 * c3 - p.d3 * s3;
    return -p.d4 * A * (h * c2 - s3);
}

Eigen::Matrix3d jacobian_matrix(const DesignParams& p, double theta2, double theta3) {
    const double c2 = std::cos(theta2), s2 = std::sin(theta2);
    const double c3 = std::cos(theta3), s3 = std::sin(theta3);
    const double A = p.d3 + p.d4 * c3;
    const double B = p.r2 + p.d4 * s3;
    const double Ap = -p.d4 * s3;  // dA/dtheta3
    const double Bp = p.d4 * c3;
    Eigen::Matrix3d J;
    J << -B, -A * s2, Ap * c2,        //
        A * c2 + 1.0, 0.0, Bp,        //
        0.0, -A * c2, -Ap * s2;
    return J;
}

double TrigQuadraticForm::residual(double theta3) const {
    const double c = std::cos(theta3), s = std::sin(theta3);
    return m5 * c * c + m4 * s * s + m3 * c * s + m2 * c + m1 * s + m0;
}

double TrigQuadraticForm::d1(double theta3) const {
    const double c = std::cos(theta3), s = std::sin(theta3);
    return 2.0 * (m4 - m5) * c * s + m3 * (c * c - s * s) - m2 * s + m1 * c;
}

double TrigQuadraticForm::d2(double theta3) const {
    const double c = std::cos(theta3), s = std::sin(theta3);
    return 2.0 * (m4 - m5) * (c * c - s * s) - 4.0 * m3 * c * s - m2 * c - m1 * s;
}

TrigQuadraticForm trig_coeffs(const DesignParams& p, const Vec3& t) {
    p.require_valid();
    TrigQuadraticForm f;
    f.R = t.x * t.x + t.y * t.y + t.z * t.z;
    f.L = p.d3 * p.d3 + p.d4 * p.d4 + p.r2 * p.r2;
    const double K = f.R + 1.0 - f.L;
    f.m0 = -(t.x * t.x + t.y * t.y) + p.r2 * p.r2 + 0.25 * K * K;
    f.m1 = p.r2 * p.d4 * (f.L - f.R + 1.0);
    f.m2 = p.d3 * p.d4 * (f.L - f.R - 1.0);
    f.m3 = 2.0 * p.r2 * p.d3 * p.d4 * p.d4;
    f.m4 = p.d4 * p.d4 * (p.r2 * p.r2 + 1.0);
    f.m5 = p.d3 * p.d3 * p.d4 * p.d4;
    return f;
}

Quartic ik_quartic(const TrigQuadraticForm& f) {
    // (1+t^2)^2 * residual(2 atan t) collected in powers of t
    return {f.m5 - f.m2 + f.m0,                 //
            -2.0 * f.m3 + 2.0 * f.m1,           //
            -2.0 * f.m5 + 4.0 * f.m4 + 2.0 * f.m0,
            2.0 * f.m3 + 2.0 * f.m1,            //
            f.m5 + f.m2 + f.m0};
}

Quartic ik_quartic(const DesignParams& p, const Vec3& target) {
    return ik_quartic(trig_coeffs(p, target));
}

std::vector<JointConfig> solve_ik(const DesignParams& p, const Vec3& target,
                                  const RunConfig& cfg) {
    p.require_valid();
    const Quartic q = ik_quartic(p, target);
    RootSet rs;
    try {
        rs = real_roots(q, cfg.cluster_tol, cfg.lead_tol);
    } catch (const std::runtime_error&) {
        throw std::runtime_error("continuum of solutions");
    }

    std::vector<double> theta3s;
    for (const auto& r : rs.roots) theta3s.push_back(2.0 * std::atan(r.value));
    if (rs.degree_at_infinity > 0) theta3s.push_back(M_PI);

    const double pnorm = target.norm();
    const double gate = cfg.eps_ik * (1.0 + pnorm);
    const double R = target.x * target.x + target.y * target.y + target.z * target.z;

    std::vector<JointConfig> out;
    auto push_unique = [&](const JointConfig& c) {
        for (const auto& o : out) {
            double d = std::max({std::abs(wrap_angle(c.theta1 - o.theta1)),
                                 std::abs(wrap_angle(c.theta2 - o.theta2)),
                                 std::abs(wrap_angle(c.theta3 - o.theta3))});
            if (d < 1e-9) return;
        }
        out.push_back(c);
    };

    for (double t3 : theta3s) {
        const double c3 = std::cos(t3), s3 = std::sin(t3);
        const double A = p.d3 + p.d4 * c3;
        const double B = p.r2 + p.d4 * s3;

        std::vector<double> theta2s;
        if (std::abs(A) > 1e-12) {
            const double cc = (R - 1.0 - A * A - B * B) / (2.0 * A);
            const double ss = -target.z / A;
            const double t2 = std::atan2(ss, cc);
            theta2s.push_back(t2);
            // in-plane targets admit the mirrored branch; the residual gate filters
            if (std::abs(target.z) < 1e-7 * (1.0 + pnorm)) theta2s.push_back(-t2);
        } else {
            // arm extension vanishes: theta2 is free along the self-motion circle
            theta2s = {0.0, M_PI};
        }

        for (double t2 : theta2s) {
            const double X0 = A * std::cos(t2) + 1.0;
            const double t1 = std::atan2(target.y, target.x) - std::atan2(B, X0);
            JointConfig c{wrap_angle(t1), wrap_angle(t2), wrap_angle(t3)};
            Vec3 f = fk(p, c);
            const double res = std::sqrt((f.x - target.x) * (f.x - target.x) +
                                         (f.y - target.y) * (f.y - target.y) +
                                         (f.z - target.z) * (f.z - target.z));
            if (res < gate) push_unique(c);
        }
    }
    return out;
}

}  // namespace cuspidal
