#include "probeq/event.hpp"

#include <algorithm>
#include <stdexcept>

namespace probeq {
namespace {

const Scalar kZero(0);
const Scalar kOne(1);

void check_bounds(const Interval& iv) {
  if (iv.lo.sign() < 0 || iv.hi < iv.lo || kOne < iv.hi)
    throw std::invalid_argument("Interval: need 0 <= lo <= hi <= 1");
}

}  // namespace

Event Event::from_intervals(std::vector<Interval> intervals) {
  std::vector<Interval> kept;
  kept.reserve(intervals.size());
  for (auto& iv : intervals) {
    check_bounds(iv);
    if (!iv.empty()) kept.push_back(std::move(iv));
  }
  std::sort(kept.begin(), kept.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  Event out;
  for (auto& iv : kept) {
    if (!out.ivs_.empty() && iv.lo <= out.ivs_.back().hi) {
      // Overlapping or adjacent: merge.
      if (out.ivs_.back().hi < iv.hi) out.ivs_.back().hi = iv.hi;
    } else {
      out.ivs_.push_back(std::move(iv));
    }
  }
  return out;
}

Event Event::interval(const Scalar& lo, const Scalar& hi) {
  return from_intervals({Interval{lo, hi}});
}

Event Event::full() { return interval(kZero, kOne); }

Scalar Event::measure() const {
  Scalar total(0);
  for (const auto& iv : ivs_) total += iv.length();
  return total;
}

bool Event::contains_point(const Scalar& p) const {
  for (const auto& iv : ivs_) {
    if (p < iv.lo) return false;
    if (p < iv.hi) return true;
  }
  return false;
}

Event intersect(const Event& a, const Event& b) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  const auto& xs = a.intervals();
  const auto& ys = b.intervals();
  while (i < xs.size() && j < ys.size()) {
    const Scalar lo = std::max(xs[i].lo, ys[j].lo, [](const Scalar& p, const Scalar& q) { return p < q; });
    const Scalar hi = std::min(xs[i].hi, ys[j].hi, [](const Scalar& p, const Scalar& q) { return p < q; });
    if (lo < hi) out.push_back(Interval{lo, hi});
    if (xs[i].hi < ys[j].hi)
      ++i;
    else
      ++j;
  }
  return Event::from_intervals(std::move(out));
}

Event event_union(const Event& a, const Event& b) {
  std::vector<Interval> all = a.intervals();
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return Event::from_intervals(std::move(all));
}

Event complement(const Event& e) {
  std::vector<Interval> out;
  Scalar cursor(0);
  for (const auto& iv : e.intervals()) {
    if (cursor < iv.lo) out.push_back(Interval{cursor, iv.lo});
    cursor = iv.hi;
  }
  if (cursor < kOne) out.push_back(Interval{cursor, kOne});
  return Event::from_intervals(std::move(out));
}

bool contains(const Event& outer, const Event& inner) {
  return intersect(outer, inner) == inner;
}

std::pair<Event, Event> split_prefix(const Event& e, const Scalar& t) {
  if (t.sign() < 0 || e.measure() < t)
    throw std::invalid_argument("split_prefix: t outside [0, measure(e)]");
  std::vector<Interval> head, tail;
  Scalar remaining = t;
  for (const auto& iv : e.intervals()) {
    if (remaining.sign() == 0) {
      tail.push_back(iv);
      continue;
    }
    const Scalar len = iv.length();
    if (len <= remaining) {
      head.push_back(iv);
      remaining -= len;
    } else {
      const Scalar cut = iv.lo + remaining;
      head.push_back(Interval{iv.lo, cut});
      tail.push_back(Interval{cut, iv.hi});
      remaining = Scalar(0);
    }
  }
  return {Event::from_intervals(std::move(head)), Event::from_intervals(std::move(tail))};
}

}  // namespace probeq
