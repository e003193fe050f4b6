#pragma once

#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "cuspidal/config.hpp"
#include "cuspidal/quartic.hpp"

namespace cuspidal {

// Normalized link geometry: lengths are multiples of the second link offset,
// which is fixed at 1. The family studied has alpha2 = -90deg, alpha3 = +90deg
// and no third joint offset, so three numbers pin a member.
struct DesignParams {
    double d3 = 0, r2 = 0, d4 = 0;

    bool valid() const {
        return d3 > 0 && r2 > 0 && d4 > 0 && std::isfinite(d3) && std::isfinite(r2) &&
               std::isfinite(d4);
    }
    void require_valid() const;
};

struct JointConfig {
    double theta1 = 0, theta2 = 0, theta3 = 0;  // radians, wrapped to (-pi, pi]
};

struct Vec3 {
    double x = 0, y = 0, z = 0;
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// wrap into (-pi, pi]
double wrap_angle(double a);

// Upper bound on the wrist-point distance from the base axis origin.
double max_reach(const DesignParams& p);

Vec3 fk(const DesignParams& p, const JointConfig& q);

// det of d(x,y,z)/d(theta1,theta2,theta3), evaluated at theta1 = 0 (the value
// is theta1-invariant). Factored closed form:
//   -d4 * (d3 + d4 cos t3) * ((r2 cos t3 - d3 sin t3) cos t2 - sin t3)
double jacobian_det(const DesignParams& p, double theta2, double theta3);

// full 3x3 Jacobian at theta1 = 0, columns ordered (theta1, theta2, theta3)
Eigen::Matrix3d jacobian_matrix(const DesignParams& p, double theta2, double theta3);

// One-variable reduction of the position equations: the residual
//   m5 c^2 + m4 s^2 + m3 c s + m2 c + m1 s + m0,  c = cos t3, s = sin t3,
// vanishes exactly at the theta3 values of inverse-kinematics solutions.
struct TrigQuadraticForm {
    double m0 = 0, m1 = 0, m2 = 0, m3 = 0, m4 = 0, m5 = 0;
    double R = 0;  // squared target distance
    double L = 0;  // d4^2 + d3^2 + r2^2

    double residual(double theta3) const;
    double d1(double theta3) const;  // d residual / d theta3
    double d2(double theta3) const;  // second derivative
};

TrigQuadraticForm trig_coeffs(const DesignParams& p, const Vec3& target);

// Tangent-half-angle image of the trig form, degree 4 in t = tan(theta3/2).
Quartic ik_quartic(const DesignParams& p, const Vec3& target);
Quartic ik_quartic(const TrigQuadraticForm& f);

// All joint configurations reaching `target`. Roots of the quartic are
// collapsed to one configuration per distinct theta3; every returned q passes
// the forward-map residual gate eps_ik*(1+|target|). Unreachable targets give
// an empty list.
std::vector<JointConfig> solve_ik(const DesignParams& p, const Vec3& target,
                                  const RunConfig& cfg = {});

}  // namespace cuspidal
