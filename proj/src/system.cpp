#include "shockline/system.hpp"

#include <cmath>

namespace shockline {

std::int64_t light_cone_pad(double horizon) {
    double e = 2.718281828459045;
    return static_cast<std::int64_t>(
        std::ceil(horizon + 6.0 * std::sqrt(horizon * std::log(horizon + e)) + 10.0));
}

SystemState make_initial(InitKind kind, int M, double alpha, std::int64_t tracked_label,
                         double horizon) {
    if (!(horizon > 0.0))
        throw std::invalid_argument("make_initial: horizon must be positive");
    bool has_slow = (kind == InitKind::Shock || kind == InitKind::SlowStepB);
    if (has_slow) {
        if (M < 0)
            throw std::invalid_argument("make_initial: M must be >= 0");
        if (M > 0 && !(alpha > 0.0 && alpha <= 1.0))
            throw std::invalid_argument("make_initial: alpha must lie in (0,1]");
    }

    std::int64_t lo;
    switch (kind) {
    case InitKind::Shock:
    case InitKind::SlowStepB:
        lo = -static_cast<std::int64_t>(M) + 1;
        break;
    case InitKind::HalfFlatA:
    case InitKind::Step:
        lo = 1;
        break;
    case InitKind::Flat:
        lo = tracked_label - light_cone_pad(horizon);
        break;
    default:
        throw std::invalid_argument("make_initial: unknown kind");
    }

    if (tracked_label < lo)
        throw std::invalid_argument("make_initial: tracked label " + std::to_string(tracked_label) +
                                    " lies ahead of the instantiated window starting at " +
                                    std::to_string(lo));

    std::size_t count = static_cast<std::size_t>(tracked_label - lo + 1);
    std::vector<std::int64_t> pos(count);
    std::vector<double> rate(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::int64_t n = lo + static_cast<std::int64_t>(i);
        switch (kind) {
        case InitKind::Shock:
            pos[i] = (n >= 1) ? -2 * n : -n;
            rate[i] = (n >= 1) ? 1.0 : alpha;
            break;
        case InitKind::SlowStepB:
            pos[i] = -n;
            rate[i] = (n >= 1) ? 1.0 : alpha;
            break;
        case InitKind::HalfFlatA:
        case InitKind::Flat:
            pos[i] = -2 * n;
            rate[i] = 1.0;
            break;
        case InitKind::Step:
            pos[i] = -n + 1;
            rate[i] = 1.0;
            break;
        }
    }
    return SystemState(lo, std::move(pos), std::move(rate));
}

} // namespace shockline
