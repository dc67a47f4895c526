#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace shockline {

// Initial conditions. Labels increase right to left: x_{k+1}(0) < x_k(0).
//
//   Shock      x_n(0) = -2n (n >= 1, rate 1) plus M packed slow particles
//              x_n(0) = -n for 0 >= n >= -M+1 at rate alpha.
//   HalfFlatA  x_n(0) = -2n, n >= 1, all rates 1.
//   SlowStepB  x_n(0) = -n, n >= -M+1; rate alpha for n <= 0, rate 1 for n >= 1.
//   Step       x_n(0) = -n + 1, n >= 1, all rates 1.
//   Flat       x_n(0) = -2n, n in Z, all rates 1 (truncated by light cone).
enum class InitKind { Shock, HalfFlatA, SlowStepB, Step, Flat };

struct Suppression {
    double time;
    std::int64_t label; // the particle whose jump was blocked (by label-1)
};

// Ordered particle positions with labels and jump rates. Particle n occupies
// pos(n); n is blocked exactly when pos(n-1) == pos(n)+1. Only labels <= n
// can ever influence particle n, so a state instantiates the contiguous
// label window [label_lo, label_hi] needed for its tracked particle.
class SystemState {
  public:
    SystemState() = default;

    SystemState(std::int64_t label_lo, std::vector<std::int64_t> positions,
                std::vector<double> rates, double time = 0.0)
        : label_lo_(label_lo), pos_(std::move(positions)), rate_(std::move(rates)), time_(time) {
        if (pos_.size() != rate_.size() || pos_.empty())
            throw std::invalid_argument("SystemState: positions/rates size mismatch or empty");
        for (std::size_t i = 1; i < pos_.size(); ++i)
            if (pos_[i] >= pos_[i - 1])
                throw std::invalid_argument("SystemState: labels must be ordered right to left");
    }

    std::int64_t label_lo() const { return label_lo_; }
    std::int64_t label_hi() const { return label_lo_ + static_cast<std::int64_t>(pos_.size()) - 1; }
    bool has_label(std::int64_t n) const { return n >= label_lo() && n <= label_hi(); }
    std::size_t size() const { return pos_.size(); }

    std::int64_t position(std::int64_t label) const {
        check_label(label);
        return pos_[static_cast<std::size_t>(label - label_lo_)];
    }
    double rate(std::int64_t label) const {
        check_label(label);
        return rate_[static_cast<std::size_t>(label - label_lo_)];
    }

    double time() const { return time_; }

    void set_record_suppressions(bool on) { record_suppressions_ = on; }
    bool record_suppressions() const { return record_suppressions_; }
    const std::vector<Suppression>& suppression_log() const { return suppression_log_; }

    bool identical_to(const SystemState& other) const {
        return label_lo_ == other.label_lo_ && pos_ == other.pos_ && rate_ == other.rate_ &&
               time_ == other.time_;
    }

    // Engine-facing raw access.
    std::vector<std::int64_t>& raw_positions() { return pos_; }
    const std::vector<std::int64_t>& raw_positions() const { return pos_; }
    const std::vector<double>& raw_rates() const { return rate_; }
    std::vector<Suppression>& raw_log() { return suppression_log_; }
    void set_time(double t) { time_ = t; }

  private:
    void check_label(std::int64_t n) const {
        if (!has_label(n))
            throw std::out_of_range("SystemState: label " + std::to_string(n) + " not instantiated");
    }

    std::int64_t label_lo_ = 0;
    std::vector<std::int64_t> pos_;
    std::vector<double> rate_;
    double time_ = 0.0;
    bool record_suppressions_ = false;
    std::vector<Suppression> suppression_log_;
};

// Light-cone pad: influence propagates label-wise no faster than a rate-1
// Poisson front, so truncating `pad(horizon)` labels ahead of the tracked
// particle perturbs it with probability < 1e-8.
std::int64_t light_cone_pad(double horizon);

// Builds the instantiated window of an initial condition for `tracked_label`
// over [0, horizon]. For front-bounded data (everything except Flat) the
// window reaches the physical front; Flat data on Z is truncated by the
// light-cone pad. Throws if the tracked label is not representable.
SystemState make_initial(InitKind kind, int M, double alpha, std::int64_t tracked_label,
                         double horizon);

} // namespace shockline
