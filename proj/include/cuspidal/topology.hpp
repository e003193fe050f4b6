#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cuspidal/config.hpp"
#include "cuspidal/kinematics.hpp"

namespace cuspidal {

// Closed polyline on the (theta2, theta3) torus. Points are wrapped into
// (-pi, pi]; the accumulated deltas are NOT wrapped, so for a closed curve
// they are integer multiples of 2*pi and encode how often the curve winds
// each generator.
struct SingularCurve {
    std::vector<std::array<double, 2>> points;  // (theta2, theta3)
    double dtheta2_total = 0;
    double dtheta3_total = 0;
    bool closed = false;
    bool suspect = false;  // passed through a cell whose saddle stayed ambiguous
};

struct TopologyOptions {
    int resolution = 256;
    double eps_curve = 1e-9;  // scaled by the grid max of |det J|
    // shift of the grid cut, in cells (torus-shift invariance tests use this)
    double shift2 = 0, shift3 = 0;
};

std::vector<SingularCurve> singular_curves(const DesignParams& p, const TopologyOptions& opt = {});

struct AspectMap {
    int resolution = 0;
    std::vector<int32_t> labels;  // resolution^2 cells, 0 = touches the singular set
    int aspect_count = 0;

    int32_t label(int i, int j) const { return labels[static_cast<size_t>(i) * resolution + j]; }
};

struct AspectOptions {
    int start_resolution = 256;
    int max_resolution = 4096;
    double shift2 = 0, shift3 = 0;
};

// Connected components (4-neighbor, torus wrapped) of cells whose four
// corners carry the same nonzero sign of det J. The resolution is doubled
// until two successive counts agree; past max_resolution throws
// std::runtime_error("aspect count unstable").
AspectMap count_aspects(const DesignParams& p, const AspectOptions& opt = {});

struct GenericityResult {
    bool generic = true;
    std::optional<std::array<double, 2>> witness;  // (theta2, theta3) degenerate singular point
};

// A member is non-generic when its singular set has a point with vanishing
// det-J gradient (curve crossings, the degenerate d3 = d4 line) or with a
// rank drop below 2. Closed-form line checks catch the theta3 = const
// branches; traced-curve walks catch everything else.
GenericityResult genericity(const DesignParams& p, const RunConfig& cfg = {});

struct HomotopySignature {
    struct Group {
        int count = 0;  // curves sharing this wrap pair
        int n2 = 0, n3 = 0;
    };
    std::vector<Group> groups;  // sorted by (n2, n3)

    std::string str() const;  // e.g. "2(1,0)" or "1(0,0)+2(1,0)"
    bool operator==(const HomotopySignature&) const = default;
};

// Wrap counts per curve from the accumulated deltas, grouped by (n2, n3).
// Open curves raise "untraceable curve"; non-integer winding raises
// "tracing inconsistency".
HomotopySignature homotopy_class(const std::vector<SingularCurve>& curves);

}  // namespace cuspidal
