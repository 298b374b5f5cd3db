#ifndef PROBEQ_EVENT_HPP
#define PROBEQ_EVENT_HPP

#include <utility>
#include <vector>

#include "probeq/scalar.hpp"

namespace probeq {

/// Half-open subinterval [lo, hi) of [0, 1). Empty iff lo == hi.
struct Interval {
  Scalar lo;
  Scalar hi;

  Scalar length() const { return hi - lo; }
  bool empty() const { return lo == hi; }
  friend bool operator==(const Interval& a, const Interval& b) = default;
};

/// Measurable event: a finite union of half-open intervals kept in
/// canonical form (sorted, pairwise disjoint, no empty or adjacent parts).
/// Construction canonicalizes, so two Events are equal as sets iff their
/// interval lists compare equal.
class Event {
 public:
  Event() = default;

  static Event from_intervals(std::vector<Interval> intervals);
  static Event interval(const Scalar& lo, const Scalar& hi);
  static Event full();

  const std::vector<Interval>& intervals() const { return ivs_; }
  bool empty() const { return ivs_.empty(); }
  Scalar measure() const;

  bool contains_point(const Scalar& p) const;

  friend bool operator==(const Event& a, const Event& b) { return a.ivs_ == b.ivs_; }
  friend bool operator!=(const Event& a, const Event& b) { return !(a == b); }

 private:
  std::vector<Interval> ivs_;
};

Event intersect(const Event& a, const Event& b);
Event event_union(const Event& a, const Event& b);
Event complement(const Event& e);

/// True iff inner is a subset of outer.
bool contains(const Event& outer, const Event& inner);

/// Splits e into (A, B) with A the leftmost part of measure exactly t and
/// B the rest. Requires 0 <= t <= measure(e); cut points stay in Q(sqrt2).
std::pair<Event, Event> split_prefix(const Event& e, const Scalar& t);

}  // namespace probeq

#endif
