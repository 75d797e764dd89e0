#pragma once

#include "spinlab/random.hpp"

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

namespace spinlab {

enum class Trend : int { Up = +1, Down = -1 };

inline Trend opposite(Trend t) noexcept { return t == Trend::Up ? Trend::Down : Trend::Up; }

enum class DwellDistribution { Exponential, FixedDuration };

/// How the first dwell of a trajectory is drawn.
/// Fresh: a full dwell starts at t = 0. Stationary: the process is already
/// running, so the first dwell is a residual life (uniform fraction of the
/// dwell for FixedDuration; unchanged for Exponential).
enum class StartMode { Fresh, Stationary };

struct DwellModel {
  double tau_plus = 1.0;
  double tau_minus = 1.0;
  DwellDistribution distribution = DwellDistribution::Exponential;

  void validate() const;
  double mean(Trend trend) const noexcept { return trend == Trend::Up ? tau_plus : tau_minus; }
  double draw(Trend trend, RandomStream& rng) const;
  /// Long-run fraction of time spent trending up.
  double up_fraction() const noexcept { return tau_plus / (tau_plus + tau_minus); }
  /// Total switching rate 1/tau+ + 1/tau-.
  double switching_rate() const noexcept { return 1.0 / tau_plus + 1.0 / tau_minus; }
};

struct Segment {
  double start;
  Trend trend;
};

class TelegraphTrajectory {
 public:
  /// Checks alternation, strictly increasing starts, first start at 0 and
  /// all starts below duration.
  TelegraphTrajectory(std::vector<Segment> segments, double duration);

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  double duration() const noexcept { return duration_; }
  std::size_t size() const noexcept { return segments_.size(); }
  double segment_end(std::size_t i) const noexcept {
    return i + 1 < segments_.size() ? segments_[i + 1].start : duration_;
  }

  /// Trend at time t; a boundary belongs to the later segment.
  Trend trend_at(double t) const;
  /// Number of switches at times s with 0 < s <= t.
  std::size_t flips_until(double t) const;
  /// Total time with the given trend. time_in(Up) + time_in(Down) == duration.
  double time_in(Trend trend) const;

 private:
  std::vector<Segment> segments_;
  double duration_;
};

TelegraphTrajectory simulate(const DwellModel& model, double duration, Trend initial, RandomStream& rng,
                             StartMode start = StartMode::Fresh);

/// (T+/T, T-/T). The second entry is 1 - first.
std::pair<double, double> empirical_fractions(const TelegraphTrajectory& trajectory);

inline Trend trend_at(const TelegraphTrajectory& trajectory, double t) { return trajectory.trend_at(t); }

/// Up with probability tau+/(tau+ + tau-).
Trend stationary_trend(const DwellModel& model, RandomStream& rng);

/// Columns: start_time,trend (trend as +1 / -1).
void write_csv(const TelegraphTrajectory& trajectory, std::ostream& out);

}  // namespace spinlab
