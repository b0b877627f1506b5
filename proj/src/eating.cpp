#include "bobw/eating.hpp"

#include <algorithm>
#include <set>

#include "bobw/error.hpp"

namespace bobw {

OrdinalProfile ordinal_profile(const Instance& inst) {
  require_valid(inst);
  OrdinalProfile p;
  p.n = inst.n;
  p.m = p.real_m = inst.m;
  for (int i = 0; i < inst.n; ++i) p.rankings.push_back(ordinal_ranking(inst, i));
  return p;
}

OrdinalProfile padded(const OrdinalProfile& p, int target_m) {
  OrdinalProfile out = p;
  for (int g = p.m; g < target_m; ++g)
    for (auto& r : out.rankings) r.push_back(g);
  out.m = std::max(p.m, target_m);
  return out;
}

EatingTrace run_eating(const OrdinalProfile& profile, const Rational& duration) {
  const int n = profile.n, m = profile.m;
  if (duration < 0) throw PreconditionError("eating duration must be nonnegative");
  if (duration * n > m) throw PreconditionError("eating duration exceeds m/n; not enough goods to eat");

  EatingTrace trace;
  trace.n = n;
  trace.m = m;
  trace.real_m = profile.real_m;
  trace.duration = duration;
  trace.segments.assign(n, {});

  std::vector<Rational> remaining(m, Rational(1));
  std::vector<std::size_t> cursor(n, 0);  // position in ranking; goods before it are gone
  std::vector<int> current(n);
  std::vector<int> eaters(m);
  Rational t = 0;
  while (t < duration) {
    std::fill(eaters.begin(), eaters.end(), 0);
    for (int i = 0; i < n; ++i) {
      const auto& r = profile.rankings[i];
      while (cursor[i] < r.size() && remaining[r[cursor[i]]] == 0) ++cursor[i];
      BOBW_ENSURE(cursor[i] < r.size(), "eating: agent ran out of goods");
      current[i] = r[cursor[i]];
      ++eaters[current[i]];
    }
    Rational dt = duration - t;
    for (int g = 0; g < m; ++g)
      if (eaters[g]) dt = std::min(dt, Rational(remaining[g] / eaters[g]));
    const Rational end = t + dt;
    for (int i = 0; i < n; ++i) {
      auto& segs = trace.segments[i];
      if (!segs.empty() && segs.back().good == current[i] && segs.back().end == t)
        segs.back().end = end;
      else
        segs.push_back({current[i], t, end});
    }
    // All goods finishing at this instant retire together.
    for (int g = 0; g < m; ++g)
      if (eaters[g]) remaining[g] -= eaters[g] * dt;
    t = end;
  }
  return trace;
}

EatingTrace run_eating(const Instance& inst, const Rational& duration, Padding pad) {
  OrdinalProfile p = ordinal_profile(inst);
  if (pad == Padding::ToAgents && p.m < p.n) p = padded(p, p.n);
  if (pad == Padding::ToMultipleOfAgents) p = padded(p, (p.m + p.n - 1) / p.n * p.n);
  return run_eating(p, duration);
}

TraceSummary summarize(const EatingTrace& trace) {
  TraceSummary s;
  s.X = zero_matrix(trace.n, trace.m);
  for (int i = 0; i < trace.n; ++i) {
    for (const auto& seg : trace.segments[i]) s.X[i][seg.good] += seg.end - seg.start;
    s.last_goods.push_back(trace.segments[i].empty() ? -1 : trace.segments[i].back().good);
  }
  s.eaten = column_sums(s.X);
  std::set<int> last;
  for (int g : s.last_goods)
    if (g >= 0) last.insert(g);
  s.L.assign(last.begin(), last.end());
  for (int g = 0; g < trace.m; ++g)
    if (s.eaten[g] == 0) s.U.push_back(g);
  s.last_mass = 0;
  for (int i = 0; i < trace.n; ++i)
    for (int g : s.L) s.last_mass += s.X[i][g];
  if (is_integer(s.last_mass)) s.k = s.last_mass.get_num().get_si();
  if (trace.duration == 1) BOBW_ENSURE(s.k.has_value(), "summarize: last consumed mass is not integral");
  return s;
}

Matrix prefix_allocation(const EatingTrace& trace, const Rational& z) {
  if (z < 0 || z > trace.duration) throw PreconditionError("prefix time outside [0, duration]");
  Matrix x = zero_matrix(trace.n, trace.m);
  for (int i = 0; i < trace.n; ++i)
    for (const auto& seg : trace.segments[i]) {
      if (seg.start >= z) break;
      x[i][seg.good] += std::min(seg.end, z) - seg.start;
    }
  return x;
}

std::vector<Rational> event_times(const EatingTrace& trace) {
  std::vector<Rational> times{Rational(0), trace.duration};
  for (const auto& segs : trace.segments)
    for (const auto& seg : segs) {
      times.push_back(seg.start);
      times.push_back(seg.end);
    }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

Matrix strip_dummies(const Matrix& x, int real_m) {
  Matrix out;
  for (const auto& row : x) out.emplace_back(row.begin(), row.begin() + std::min<std::size_t>(real_m, row.size()));
  return out;
}

}  // namespace bobw
