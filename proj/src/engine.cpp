#include "shockline/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace shockline {

CoupledRun::CoupledRun(ClockField clock, std::vector<SystemState> systems, double start_time)
    : clock_(std::move(clock)), systems_(std::move(systems)), time_(start_time) {
    if (systems_.empty())
        throw std::invalid_argument("CoupledRun: no systems");
    lab_lo_ = systems_[0].label_lo();
    std::int64_t hi = systems_[0].label_hi();
    for (const auto& s : systems_) {
        lab_lo_ = std::min(lab_lo_, s.label_lo());
        hi = std::max(hi, s.label_hi());
        if (s.time() != start_time)
            throw std::invalid_argument("CoupledRun: systems must share the start time");
    }
    if (!(start_time >= 0.0) || start_time > clock_.horizon())
        throw std::invalid_argument("CoupledRun: start time outside [0, horizon]");

    std::size_t slots = static_cast<std::size_t>(hi - lab_lo_ + 1);
    cursors_.reserve(slots);
    heap_.resize(slots);
    for (std::size_t s = 0; s < slots; ++s) {
        auto cur = clock_.first(lab_lo_ + static_cast<std::int64_t>(s));
        // Skip events already consumed by the run this state was branched from.
        while (cur.time <= start_time)
            clock_.next(cur);
        heap_[s] = pack_key(cur.time, static_cast<std::uint32_t>(s));
        cursors_.push_back(cur);
    }
    build_heap();
}

void CoupledRun::build_heap() {
    if (heap_.empty())
        return;
    for (std::size_t i = heap_.size(); i-- > 0;)
        sift_down(i);
}

CoupledRun::HeapKey CoupledRun::pack_key(double time, std::uint32_t slot) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(time));
    __builtin_memcpy(&bits, &time, sizeof(bits));
    return (static_cast<HeapKey>(bits) << 64) | slot;
}
double CoupledRun::key_time(HeapKey k) {
    std::uint64_t bits = static_cast<std::uint64_t>(k >> 64);
    double t;
    __builtin_memcpy(&t, &bits, sizeof(t));
    return t;
}
std::uint32_t CoupledRun::key_slot(HeapKey k) { return static_cast<std::uint32_t>(k); }

// 4-ary min-heap: children of i are 4i+1..4i+4.
void CoupledRun::sift_down(std::size_t i) {
    const std::size_t n = heap_.size();
    HeapKey v = heap_[i];
    while (true) {
        std::size_t c = 4 * i + 1;
        if (c >= n)
            break;
        std::size_t last = std::min(c + 4, n);
        std::size_t m = c;
        HeapKey best = heap_[c];
        for (std::size_t j = c + 1; j < last; ++j) {
            HeapKey k = heap_[j];
            m = (k < best) ? j : m;
            best = (k < best) ? k : best;
        }
        if (best >= v)
            break;
        heap_[i] = best;
        i = m;
    }
    heap_[i] = v;
}

namespace {
struct SysView {
    std::int64_t lo;
    std::int64_t hi;
    std::int64_t* pos;
    const double* rate;
    bool record;
    std::vector<Suppression>* log;
};
} // namespace

void CoupledRun::advance_to(double t_end, EventSink* sink) {
    if (t_end < time_)
        throw std::invalid_argument("CoupledRun: cannot advance backwards");
    if (t_end > clock_.horizon())
        throw std::invalid_argument("CoupledRun: t_end beyond clock horizon");

    std::vector<SysView> views;
    views.reserve(systems_.size());
    for (auto& s : systems_)
        views.push_back({s.label_lo(), s.label_hi(), s.raw_positions().data(), s.raw_rates().data(),
                         s.record_suppressions(), &s.raw_log()});

    if (views.size() == 1 && !sink && !validate_) {
        // hot path for plain single-system runs
        auto& v = views[0];
        const HeapKey kend = pack_key(t_end, 0xffffffffu);
        while (!heap_.empty()) {
            const HeapKey top = heap_[0];
            if (top > kend)
                break;
            const std::uint32_t slot = key_slot(top);
            const std::int64_t label = lab_lo_ + slot;
            auto& cur = cursors_[slot];
            if (label >= v.lo && label <= v.hi && cur.mark < v.rate[label - v.lo]) {
                const std::size_t idx = static_cast<std::size_t>(label - v.lo);
                if (label == v.lo || v.pos[idx - 1] > v.pos[idx] + 1)
                    ++v.pos[idx];
                else if (v.record)
                    v.log->push_back({key_time(top), label});
            }
            clock_.next(cur);
            heap_[0] = pack_key(cur.time, slot);
            sift_down(0);
        }
        time_ = t_end;
        for (auto& s : systems_)
            s.set_time(t_end);
        return;
    }

    const HeapKey kend = pack_key(t_end, 0xffffffffu);
    while (!heap_.empty()) {
        const HeapKey top = heap_[0];
        if (top > kend)
            break;
        const std::uint32_t slot = key_slot(top);
        const std::int64_t label = lab_lo_ + slot;
        auto& cur = cursors_[slot];
        const double mark = cur.mark;
        const double t_ev = key_time(top);

        for (std::size_t vi = 0; vi < views.size(); ++vi) {
            auto& v = views[vi];
            if (label < v.lo || label > v.hi)
                continue;
            const std::size_t idx = static_cast<std::size_t>(label - v.lo);
            if (mark >= v.rate[idx])
                continue; // thinned: this attempt does not fire for this rate
            const bool blocked = (label != v.lo) && (v.pos[idx - 1] == v.pos[idx] + 1);
            if (!blocked) {
                ++v.pos[idx];
                if (sink)
                    sink->on_event(vi, t_ev, label, v.pos[idx], true);
            } else {
                if (v.record)
                    v.log->push_back({t_ev, label});
                if (sink)
                    sink->on_event(vi, t_ev, label, v.pos[idx], false);
            }
            if (validate_) {
                bool ok_ahead = (label == v.lo) || v.pos[idx - 1] > v.pos[idx];
                bool ok_behind = (idx + 1 == static_cast<std::size_t>(v.hi - v.lo + 1)) ||
                                 v.pos[idx] > v.pos[idx + 1];
                if (!ok_ahead || !ok_behind)
                    throw std::logic_error("CoupledRun: exclusion order violated");
            }
        }

        clock_.next(cur);
        heap_[0] = pack_key(cur.time, slot);
        sift_down(0);
    }

    time_ = t_end;
    for (auto& s : systems_)
        s.set_time(t_end);
}

} // namespace shockline
