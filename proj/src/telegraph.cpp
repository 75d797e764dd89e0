#include "spinlab/telegraph.hpp"

#include "spinlab/csv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinlab {

void DwellModel::validate() const {
  if (!(tau_plus > 0) || !(tau_minus > 0) || !std::isfinite(tau_plus) || !std::isfinite(tau_minus))
    throw std::invalid_argument("DwellModel: tau_plus and tau_minus must be positive");
}

double DwellModel::draw(Trend trend, RandomStream& rng) const {
  const double tau = mean(trend);
  if (distribution == DwellDistribution::FixedDuration) return tau;
  // 1 - u lies in (0, 1], so the log is finite.
  return -tau * std::log(1.0 - rng.uniform());
}

TelegraphTrajectory::TelegraphTrajectory(std::vector<Segment> segments, double duration)
    : segments_(std::move(segments)), duration_(duration) {
  if (!(duration_ > 0) || !std::isfinite(duration_))
    throw std::invalid_argument("TelegraphTrajectory: duration must be positive");
  if (segments_.empty()) throw std::invalid_argument("TelegraphTrajectory: no segments");
  if (segments_.front().start != 0.0) throw std::invalid_argument("TelegraphTrajectory: must start at 0");
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    if (!(segments_[i].start > segments_[i - 1].start))
      throw std::invalid_argument("TelegraphTrajectory: start times must increase");
    if (segments_[i].trend == segments_[i - 1].trend)
      throw std::invalid_argument("TelegraphTrajectory: trends must alternate");
  }
  if (!(segments_.back().start < duration_))
    throw std::invalid_argument("TelegraphTrajectory: segment starts past the end");
}

namespace {

std::size_t segment_index(const std::vector<Segment>& segments, double t) {
  // First segment starting strictly after t, minus one: ties go to the later segment.
  auto it = std::upper_bound(segments.begin(), segments.end(), t,
                             [](double v, const Segment& s) { return v < s.start; });
  return std::size_t(it - segments.begin()) - 1;
}

}  // namespace

Trend TelegraphTrajectory::trend_at(double t) const {
  if (!(t >= 0.0 && t <= duration_)) throw std::invalid_argument("trend_at: t outside [0, duration]");
  return segments_[segment_index(segments_, t)].trend;
}

std::size_t TelegraphTrajectory::flips_until(double t) const {
  if (!(t >= 0.0 && t <= duration_)) throw std::invalid_argument("flips_until: t outside [0, duration]");
  return segment_index(segments_, t);
}

double TelegraphTrajectory::time_in(Trend trend) const {
  double up = 0.0;
  for (std::size_t i = 0; i < segments_.size(); ++i)
    if (segments_[i].trend == Trend::Up) up += segment_end(i) - segments_[i].start;
  up = std::min(up, duration_);
  return trend == Trend::Up ? up : duration_ - up;
}

TelegraphTrajectory simulate(const DwellModel& model, double duration, Trend initial, RandomStream& rng,
                             StartMode start) {
  model.validate();
  if (!(duration > 0) || !std::isfinite(duration))
    throw std::invalid_argument("simulate: duration must be positive");
  std::vector<Segment> segments;
  segments.reserve(std::size_t(std::min(1e7, 2.0 * duration / std::min(model.tau_plus, model.tau_minus))) + 2);

  Trend trend = initial;
  double t = 0.0;
  double dwell = model.draw(trend, rng);
  if (start == StartMode::Stationary && model.distribution == DwellDistribution::FixedDuration)
    dwell *= 1.0 - rng.uniform();
  while (true) {
    segments.push_back({t, trend});
    const double next = t + dwell;
    if (!(next < duration) || next == t) break;
    t = next;
    trend = opposite(trend);
    dwell = model.draw(trend, rng);
  }
  return TelegraphTrajectory(std::move(segments), duration);
}

std::pair<double, double> empirical_fractions(const TelegraphTrajectory& trajectory) {
  const double up = trajectory.time_in(Trend::Up) / trajectory.duration();
  return {up, 1.0 - up};
}

Trend stationary_trend(const DwellModel& model, RandomStream& rng) {
  model.validate();
  return rng.uniform() < model.up_fraction() ? Trend::Up : Trend::Down;
}

void write_csv(const TelegraphTrajectory& trajectory, std::ostream& out) {
  CsvWriter csv(out, {"start_time", "trend"});
  for (const auto& s : trajectory.segments()) csv.row(s.start, static_cast<int>(s.trend));
}

}  // namespace spinlab
