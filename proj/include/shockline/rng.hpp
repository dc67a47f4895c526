#pragma once

#include <cstdint>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

namespace shockline {

// Philox2x64-10 counter-based generator (Salmon et al., SC 2011).
// A block cipher over a 128-bit counter with a 64-bit key: the output for
// (key, counter) is a pure function, so any event in any stream can be
// regenerated without shared mutable state.
namespace philox {

constexpr std::uint64_t kMult = 0xD2B74407B1CE6E93ull;
constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ull;

struct Block {
    std::uint64_t x0;
    std::uint64_t x1;
};

inline Block rounds10(std::uint64_t c0, std::uint64_t c1, std::uint64_t key) {
    std::uint64_t x0 = c0, x1 = c1, k = key;
    for (int r = 0; r < 10; ++r) {
        __uint128_t prod = static_cast<__uint128_t>(kMult) * x0;
        std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
        std::uint64_t lo = static_cast<std::uint64_t>(prod);
        x0 = hi ^ k ^ x1;
        x1 = lo;
        k += kWeyl;
    }
    return {x0, x1};
}

} // namespace philox

// SplitMix64 finalizer, used to derive per-label sub-keys from (seed, label).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// u in [0,1)
inline double u64_to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// u in (0,1], suitable for -log(u)
inline double u64_to_unit_pos(std::uint64_t x) {
    return (static_cast<double>(x >> 11) + 1.0) * 0x1.0p-53;
}

// Streaming generator satisfying UniformRandomBitGenerator, backed by Philox
// with a fixed key and an incrementing counter. Used for Monte Carlo draws
// that do not need per-event addressing (matrix sampling and the like).
class CounterRng {
  public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix64(seed)), c1_(mix64(stream ^ 0x5bf0'3635'dead'4095ull)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<std::uint64_t>::max(); }

    result_type operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        auto b = philox::rounds10(counter_++, c1_, key_);
        spare_ = b.x1;
        have_spare_ = true;
        return b.x0;
    }

    double uniform() { return u64_to_unit((*this)()); }

  private:
    std::uint64_t key_;
    std::uint64_t c1_;
    std::uint64_t counter_ = 0;
    std::uint64_t spare_ = 0;
    bool have_spare_ = false;
};

// One attempt of a particle's exponential clock: the time and the uniform
// thinning mark deciding whether the attempt counts for a rate-r particle.
struct ClockEvent {
    double time;
    double mark;
};

// Per-label unit-rate Poisson event streams with thinning marks: the single
// randomness source realizing the basic coupling. Event k of label l is a
// pure function of (seed, l, k), so streams regenerate bit-exactly and
// distinct labels use distinct Philox counters.
//
// A scripted mode substitutes explicit event lists; tests use it for hand
// traces and for deliberately decoupled (negative control) runs.
class ClockField {
  public:
    ClockField(std::uint64_t seed, double horizon)
        : seed_(seed), horizon_(horizon), key_(mix64(seed)) {
        if (!(horizon > 0.0))
            throw std::invalid_argument("ClockField: horizon must be positive");
    }

    static ClockField scripted(double horizon, std::map<std::int64_t, std::vector<ClockEvent>> events) {
        ClockField f(1, horizon);
        f.scripted_ = true;
        f.script_ = std::move(events);
        for (auto& [lab, evs] : f.script_) {
            double prev = 0.0;
            for (const auto& e : evs) {
                if (e.time <= prev)
                    throw std::invalid_argument("ClockField: scripted times must be strictly increasing");
                prev = e.time;
            }
        }
        return f;
    }

    struct Cursor {
        std::int64_t label;
        std::uint64_t index;     // next event index
        std::uint64_t label_ctr; // cached philox counter word for the label
        double time;             // time of the pending event
        double mark;             // mark of the pending event
    };

    Cursor first(std::int64_t label) const {
        Cursor c{label, 0, mix64(static_cast<std::uint64_t>(label) ^ seed_), 0.0, 0.0};
        step(c);
        return c;
    }

    // Advances the cursor to the following event of its stream.
    void next(Cursor& c) const { step(c); }

    double horizon() const { return horizon_; }
    std::uint64_t seed() const { return seed_; }

    // All events of a label in [0, horizon]; intended for tests and export.
    std::vector<ClockEvent> materialize(std::int64_t label) const {
        std::vector<ClockEvent> out;
        for (Cursor c = first(label); c.time <= horizon_; next(c))
            out.push_back({c.time, c.mark});
        return out;
    }

  private:
    void step(Cursor& c) const {
        if (scripted_) {
            auto it = script_.find(c.label);
            const auto* evs = (it == script_.end()) ? nullptr : &it->second;
            if (evs == nullptr || c.index >= evs->size()) {
                c.time = std::numeric_limits<double>::infinity();
                c.mark = 0.0;
            } else {
                c.time = (*evs)[c.index].time;
                c.mark = (*evs)[c.index].mark;
            }
            ++c.index;
            return;
        }
        auto b = philox::rounds10(c.index, c.label_ctr, key_);
        c.time += -std::log(u64_to_unit_pos(b.x0));
        c.mark = u64_to_unit(b.x1);
        ++c.index;
    }

    std::uint64_t seed_;
    double horizon_;
    std::uint64_t key_;
    bool scripted_ = false;
    std::map<std::int64_t, std::vector<ClockEvent>> script_;
};

} // namespace shockline
