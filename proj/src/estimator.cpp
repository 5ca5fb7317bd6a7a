#include "dtqw/estimator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "dtqw/errors.hpp"

namespace dtqw {

namespace {

struct Charge {
  long long one = 0, two = 0, multi = 0, duration = 1;
};

ResourceEstimate layer(const Circuit& circuit, Charge (*charge)(const GateApplication&)) {
  ResourceEstimate est;
  std::vector<long long> free_at(static_cast<size_t>(circuit.layout().num_wires()), 0);
  for (const auto& g : circuit.gates()) {
    const Charge c = charge(g);
    est.count_1q += c.one;
    est.count_2q += c.two;
    est.count_multi += c.multi;
    const int k = static_cast<int>(g.controls.size());
    ++est.count_by_controls[k];
    est.highest_control = std::max(est.highest_control, k);

    long long start = free_at[static_cast<size_t>(g.target)];
    for (const Control& ctl : g.controls) start = std::max(start, free_at[static_cast<size_t>(ctl.wire)]);
    const long long end = start + c.duration;
    free_at[static_cast<size_t>(g.target)] = end;
    for (const Control& ctl : g.controls) free_at[static_cast<size_t>(ctl.wire)] = end;
    est.depth = std::max(est.depth, end);
  }
  return est;
}

Charge unit_charge(const GateApplication& g) {
  switch (g.controls.size()) {
    case 0: return {1, 0, 0, 1};
    case 1: return {0, 1, 0, 1};
    default: return {0, 0, 1, 1};
  }
}

Charge lowered_charge(const GateApplication& g) {
  const int width = static_cast<int>(g.controls.size()) + 1;
  if (width == 1) return {1, 0, 0, 1};
  if (width == 2) return {0, 1, 0, 1};
  return {0, mct_two_qubit_cost(width), 0, mct_duration(width)};
}

int ceil_log2(int x) { return x <= 1 ? 0 : std::bit_width(static_cast<unsigned>(x - 1)); }

}  // namespace

void NoiseParams::validate() const {
  if (!(p_success_1q > 0.0 && p_success_1q <= 1.0)) throw ValidationError("1q success probability must lie in (0, 1]");
  if (!(p_success_2q > 0.0 && p_success_2q <= 1.0)) throw ValidationError("2q success probability must lie in (0, 1]");
  if (!(t1 > 0.0) || !std::isfinite(t1)) throw ValidationError("t1 must be positive and finite");
}

ResourceEstimate count_resources(const Circuit& circuit) { return layer(circuit, unit_charge); }

long long mct_two_qubit_cost(int width) {
  if (width < 3) throw ValidationError("multi-controlled cost needs width >= 3");
  const long long x = width;
  return 2 * x * x - 6 * x + 5;
}

long long mct_duration(int width) {
  if (width < 3) throw ValidationError("multi-controlled cost needs width >= 3");
  return 8LL * width - 20;
}

ResourceEstimate count_resources_lowered(const Circuit& circuit) { return layer(circuit, lowered_charge); }

ResourceEstimate closed_form_estimate(Scheme scheme, int n, int t) {
  if (scheme != Scheme::Naive && scheme != Scheme::Enhanced)
    throw UnsupportedError(fmt::format("no closed form for {}", scheme_name(scheme)));
  if (n < 3 || n > 30) throw ValidationError("closed form needs 3 <= n <= 30");
  if (t < 1) throw ValidationError("closed form needs t >= 1");

  const int top = scheme == Scheme::Naive ? n + 1 : n;
  long long cost = 0, dur = 0;
  for (int x = 3; x <= top; ++x) {
    cost += mct_two_qubit_cost(x);
    dur += mct_duration(x);
  }
  ResourceEstimate est;
  est.count_1q = 3LL * t;
  est.count_by_controls[0] = est.count_1q;
  if (scheme == Scheme::Enhanced) {
    est.count_2q = t * (cost + 1);
    est.depth = (t + 1) / 2 * (dur + 2) + t / 2 * (dur + 4);
    est.highest_control = n - 1;
    for (int k = 1; k < n; ++k) est.count_by_controls[k] = t;
  } else {
    est.count_2q = 2LL * t * (cost + 2);
    est.depth = t * (2 * dur + 3);
    est.highest_control = n;
    for (int k = 1; k <= n; ++k) est.count_by_controls[k] = 2LL * t;
  }
  return est;
}

IntermediateQuditCost intermediate_qudit_closed_form(int n) {
  if (n < 2 || n > 40) throw ValidationError("intermediate-qudit closed form needs 2 <= N <= 40");
  long long logs = 0, blocks = 0;
  for (int x = 2; x <= n - 1; ++x) {
    logs += ceil_log2(x);
    blocks += 2LL * x - 3;
  }
  const long long half = 1LL << (n - 1), quarter = 1LL << (n - 2);
  return {half * (logs + 1) + 3 * quarter + quarter, half * (blocks + 1) + 2 * quarter + 4 * quarter};
}

double success_probability(const ResourceEstimate& est, const NoiseParams& noise) {
  noise.validate();
  return std::pow(noise.p_success_1q, static_cast<double>(est.count_1q)) *
         std::pow(noise.p_success_2q, static_cast<double>(est.count_2q + est.count_multi)) *
         std::exp(-static_cast<double>(est.depth) / noise.t1);
}

}  // namespace dtqw
