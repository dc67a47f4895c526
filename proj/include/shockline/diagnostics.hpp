#pragma once

#include <cstdint>
#include <vector>

#include "shockline/engine.hpp"
#include "shockline/system.hpp"

namespace shockline {

// Piecewise-constant label-valued path with unit jumps at `times`:
// value_before_first on [start, times[0]), then values_after[j] from times[j].
// The two query flavors fix the value at a jump time itself.
struct LabelPath {
    double start = 0.0;
    std::int64_t initial = 0;
    std::vector<double> times;
    std::vector<std::int64_t> values; // value after times[j]

    // Right-continuous in forward time: at a jump time, the new value.
    std::int64_t value_rc(double s) const;
    // Left-continuous in forward time: at a jump time, the old value.
    std::int64_t value_lc(double s) const;
    std::int64_t final_value() const { return values.empty() ? initial : values.back(); }
};

// Influence process of the shock system: I(0)=0, and when a jump of particle
// m+1 is suppressed by particle m while I = m, I steps to m+1. Reads the
// suppression log (which must have been recorded); suppressions outside the
// contiguous chain rooted at the slow pack do not move I.
LabelPath influence_path(const SystemState& shock_system);

// Index process built backward from N(t)=N: scanning suppressions backward,
// when a jump of particle n was suppressed at time s while the process sits
// at n just after s, the value at s becomes n-1. Returned in forward-time
// representation (non-decreasing with unit jumps); query with value_lc to
// honor the backward convention N(s)=n-1 at a jump time s.
LabelPath backward_index_path(const SystemState& system, std::int64_t N, double t);

// x_n(t) == min(x_n^A(t), x_n^B(t)) for every label in [lab_first, lab_last],
// all systems coupled on one clock field. True under correct coupling; a
// false return signals an engine bug.
bool min_identity_check(const SystemState& shock, const SystemState& half_flat,
                        const SystemState& slow_step, std::int64_t lab_first,
                        std::int64_t lab_last);

struct AuxiliaryCheck {
    bool identity_holds;      // x_N(t) == x~_N(t)
    std::int64_t label_at_u;  // N(u)
    std::int64_t increment;   // x~_N(t) - x~_{N(u)}(u)
    std::int64_t position_at_t;
};

// Rebuilds the paper's auxiliary system: at time u the particles N(u)..N are
// densely repacked at x_{N(u)}(u), then evolved to t on the same clock field.
// The tracked particle of the auxiliary system must land exactly on x_N(t),
// and the auxiliary increment has the law of a step-start run of duration
// t-u with N-N(u)+1 particles.
AuxiliaryCheck auxiliary_identity_check(const ClockField& clock, InitKind kind, int M, double alpha,
                                        std::int64_t N, double u, double t);

} // namespace shockline
