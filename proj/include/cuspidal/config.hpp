#pragma once

#include <stdexcept>
#include <string>

namespace cuspidal {

// Central knobs for every numerical routine. All tolerances are artifact
// decisions and get echoed into serialized reports so results are auditable.
struct RunConfig {
    // polynomial root machinery
    double cluster_tol = 1e-6;   // roots closer than this (relative) merge into one multiple root
    double lead_tol    = 1e-12;  // |leading coeff| below lead_tol*max|coeff| counts as a root at infinity
    double eps_triple  = 1e-10;  // scaled residual bound accepted for a triple root
    double eps_nondeg  = 1e-6;   // scaled |P'''| lower bound at a triple root

    // kinematics
    double eps_ik = 1e-8;        // forward-map residual gate, scaled by 1+|p|

    // joint-space topology
    double eps_curve = 1e-9;     // contour vertex |det J| bound, scaled by grid max
    double eps_grad  = 1e-4;     // gradient-norm threshold for the genericity test
    double eps_rank  = 1e-6;     // second-singular-value threshold, relative to sigma_max

    // workspace / cusp search
    double eps_axis  = 1e-6;     // discard cusps with rho below eps_axis*reach
    double eps_dedup = 1e-4;     // cusp dedup radius, relative to reach

    // grid resolutions (powers of two)
    int joint_grid       = 256;  // singular-curve tracing / genericity walk
    int aspect_grid      = 256;  // starting resolution for aspect counting
    int aspect_grid_cap  = 4096;
    int section_grid     = 256;  // workspace section raster
    int scan_steps       = 16;   // transition_scan subdivisions

    void validate() const {
        auto pos = [](double v, const char* name) {
            if (!(v > 0.0))
                throw std::invalid_argument(std::string("config: ") + name + " must be > 0");
        };
        pos(cluster_tol, "cluster_tol");
        pos(lead_tol, "lead_tol");
        pos(eps_triple, "eps_triple");
        pos(eps_nondeg, "eps_nondeg");
        pos(eps_ik, "eps_ik");
        pos(eps_curve, "eps_curve");
        pos(eps_grad, "eps_grad");
        pos(eps_rank, "eps_rank");
        pos(eps_axis, "eps_axis");
        pos(eps_dedup, "eps_dedup");
        auto pow2 = [](int v, int lo, int hi, const char* name) {
            if (v < lo || v > hi || (v & (v - 1)) != 0)
                throw std::invalid_argument(std::string("config: ") + name +
                                            " must be a power of two in [" + std::to_string(lo) +
                                            ", " + std::to_string(hi) + "]");
        };
        pow2(joint_grid, 64, 4096, "joint_grid");
        pow2(aspect_grid, 256, aspect_grid_cap, "aspect_grid");
        pow2(aspect_grid_cap, 256, 8192, "aspect_grid_cap");
        pow2(section_grid, 128, 4096, "section_grid");
        if (scan_steps < 8)
            throw std::invalid_argument("config: scan_steps must be >= 8");
    }
};

}  // namespace cuspidal
