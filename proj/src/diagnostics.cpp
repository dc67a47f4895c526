#include "shockline/diagnostics.hpp"

#include <algorithm>
#include <stdexcept>

namespace shockline {

std::int64_t LabelPath::value_rc(double s) const {
    // last jump with time <= s
    auto it = std::upper_bound(times.begin(), times.end(), s);
    if (it == times.begin())
        return initial;
    return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

std::int64_t LabelPath::value_lc(double s) const {
    // last jump with time < s
    auto it = std::lower_bound(times.begin(), times.end(), s);
    if (it == times.begin())
        return initial;
    return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

LabelPath influence_path(const SystemState& shock_system) {
    if (!shock_system.record_suppressions())
        throw std::logic_error("influence_path: suppression log was not recorded");
    LabelPath path;
    path.start = 0.0;
    path.initial = 0;
    std::int64_t current = 0;
    for (const auto& sup : shock_system.suppression_log()) {
        if (sup.label == current + 1) {
            current = sup.label;
            path.times.push_back(sup.time);
            path.values.push_back(current);
        }
    }
    return path;
}

LabelPath backward_index_path(const SystemState& system, std::int64_t N, double t) {
    if (!system.record_suppressions())
        throw std::logic_error("backward_index_path: suppression log was not recorded");
    if (!system.has_label(N))
        throw std::out_of_range("backward_index_path: label not present");
    const auto& log = system.suppression_log();
    // Collect downward steps backward from t, then emit in forward order.
    std::vector<std::pair<double, std::int64_t>> drops; // (time, value at and before that time)
    std::int64_t current = N;
    for (auto it = log.rbegin(); it != log.rend(); ++it) {
        if (it->time > t)
            continue;
        if (it->label == current) {
            current = it->label - 1;
            drops.emplace_back(it->time, current);
        }
    }
    LabelPath path;
    path.start = 0.0;
    path.initial = current;
    for (auto it = drops.rbegin(); it != drops.rend(); ++it) {
        path.times.push_back(it->first);
        // After this jump time the process sits one label higher.
        path.values.push_back(it->second + 1);
    }
    return path;
}

bool min_identity_check(const SystemState& shock, const SystemState& half_flat,
                        const SystemState& slow_step, std::int64_t lab_first,
                        std::int64_t lab_last) {
    if (lab_first < 1)
        throw std::invalid_argument("min_identity_check: labels must be >= 1");
    for (std::int64_t n = lab_first; n <= lab_last; ++n) {
        std::int64_t x = shock.position(n);
        std::int64_t xa = half_flat.position(n);
        std::int64_t xb = slow_step.position(n);
        if (x != std::min(xa, xb))
            return false;
    }
    return true;
}

AuxiliaryCheck auxiliary_identity_check(const ClockField& clock, InitKind kind, int M, double alpha,
                                        std::int64_t N, double u, double t) {
    if (!(0.0 <= u && u <= t))
        throw std::invalid_argument("auxiliary_identity_check: need 0 <= u <= t");
    if (t > clock.horizon())
        throw std::invalid_argument("auxiliary_identity_check: clock horizon too short");

    SystemState init = make_initial(kind, M, alpha, N, clock.horizon());
    init.set_record_suppressions(true);
    CoupledRun run(clock, {init});
    run.advance_to(u);
    SystemState at_u = run.system(0);
    run.advance_to(t);
    const SystemState& at_t = run.system(0);

    LabelPath back = backward_index_path(at_t, N, t);
    // value_lc honors the backward rule's closed end at a drop exactly at u.
    std::int64_t n_u = back.value_lc(u);

    std::int64_t anchor = at_u.position(n_u);
    std::size_t count = static_cast<std::size_t>(N - n_u + 1);
    std::vector<std::int64_t> pos(count);
    std::vector<double> rate(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::int64_t n = n_u + static_cast<std::int64_t>(i);
        pos[i] = anchor - static_cast<std::int64_t>(i);
        rate[i] = at_u.rate(n);
    }
    SystemState aux(n_u, std::move(pos), std::move(rate), u);
    CoupledRun aux_run(clock, {aux}, u);
    aux_run.advance_to(t);

    AuxiliaryCheck out;
    out.label_at_u = n_u;
    out.position_at_t = at_t.position(N);
    std::int64_t aux_final = aux_run.system(0).position(N);
    out.increment = aux_final - anchor;
    out.identity_holds = (aux_final == out.position_at_t);
    return out;
}

} // namespace shockline
