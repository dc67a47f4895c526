#pragma once

#include <cstdint>
#include <vector>

#include "shockline/rng.hpp"
#include "shockline/system.hpp"

namespace shockline {

// Observer for accepted attempts (mark below the particle's rate). `jumped`
// distinguishes a realized jump from a suppression by the particle ahead.
struct EventSink {
    virtual ~EventSink() = default;
    virtual void on_event(std::size_t system_index, double time, std::int64_t label,
                          std::int64_t position, bool jumped) = 0;
};

// Several systems driven by one clock field: the basic coupling. At an event
// (time, label, mark), every system holding that label attempts a right jump
// iff mark < rate(label) there; the jump succeeds iff the target site is
// free in that system. Scheduling is a binary heap over the next pending
// event per label, with streams generated lazily.
//
// A run is deterministic given (clock seed, call sequence); copies are deep
// and independent, so snapshots can be branched and replayed.
class CoupledRun {
  public:
    CoupledRun(ClockField clock, std::vector<SystemState> systems, double start_time = 0.0);

    // Processes all events in (time(), t_end]. Requires t_end <= horizon.
    void advance_to(double t_end, EventSink* sink = nullptr);

    double time() const { return time_; }
    const ClockField& clock() const { return clock_; }

    std::size_t system_count() const { return systems_.size(); }
    const SystemState& system(std::size_t i) const { return systems_.at(i); }
    SystemState& system(std::size_t i) { return systems_.at(i); }

    // Exclusion-order assertion after every update; for validation runs.
    void set_validate(bool on) { validate_ = on; }

  private:
    // (time, slot) packed so that one unsigned compare gives the event order;
    // nonnegative IEEE doubles sort identically to their bit patterns.
    using HeapKey = unsigned __int128;
    static HeapKey pack_key(double time, std::uint32_t slot);
    static double key_time(HeapKey k);
    static std::uint32_t key_slot(HeapKey k);
    void sift_down(std::size_t i);
    void build_heap();

    ClockField clock_;
    std::vector<SystemState> systems_;
    std::int64_t lab_lo_ = 0;
    std::vector<ClockField::Cursor> cursors_; // slot s <-> label lab_lo_ + s
    std::vector<HeapKey> heap_;
    double time_ = 0.0;
    bool validate_ = false;
};

} // namespace shockline
