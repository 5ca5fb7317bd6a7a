#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "dtqw/errors.hpp"
#include "dtqw/walk_builder.hpp"

namespace dtqw {

namespace {

void apply_classical(const GateApplication& g, std::vector<int>& digits) {
  for (const Control& c : g.controls)
    if (digits[static_cast<size_t>(c.wire)] != c.level) return;
  int& t = digits[static_cast<size_t>(g.target)];
  t = permute_level(g.kind, t);
}

}  // namespace

const PositionEntry* PositionMapping::find(int position) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), position,
                             [](const PositionEntry& e, int x) { return e.position < x; });
  return it != entries.end() && it->position == position ? &*it : nullptr;
}

PositionMapping derive_position_mapping(Scheme scheme, std::span<const int> dims, int steps,
                                        std::span<const int> initial_position) {
  const int max_steps = derive_max_steps(scheme, dims);
  if (steps < 0 || steps > max_steps + 1)
    throw ValidationError(fmt::format("mapping steps {} outside [0, {}]", steps, max_steps + 1));

  const RegisterLayout layout = make_layout(dims);
  const int coin = *layout.coin_wire();
  const auto& pos = layout.position_wires();

  std::vector<int> start(pos.size(), 0);
  if (!initial_position.empty()) {
    if (initial_position.size() != pos.size()) throw ValidationError("initial position has the wrong number of digits");
    for (size_t j = 0; j < pos.size(); ++j) {
      if (initial_position[j] < 0 || initial_position[j] >= dims[j])
        throw ValidationError("initial position digit out of range");
      start[j] = initial_position[j];
    }
  }

  const Circuit even = build_step(scheme, dims, Parity::Even, std::nullopt);
  const Circuit odd = build_step(scheme, dims, Parity::Odd, std::nullopt);

  PositionMapping mapping;
  mapping.dims.assign(dims.begin(), dims.end());
  mapping.entries.push_back({0, start});
  for (int coin_value : {1, 0}) {
    std::vector<int> digits(static_cast<size_t>(layout.num_wires()), 0);
    for (size_t j = 0; j < pos.size(); ++j) digits[static_cast<size_t>(pos[j])] = start[j];
    digits[static_cast<size_t>(coin)] = coin_value;
    for (int i = 0; i < steps; ++i) {
      const Circuit& step = parity_of_step(i) == Parity::Even ? even : odd;
      for (const auto& g : step.gates()) apply_classical(g, digits);
      if (digits[static_cast<size_t>(coin)] != coin_value) throw std::logic_error("step circuit disturbed the coin");
      std::vector<int> p;
      for (int w : pos) p.push_back(digits[static_cast<size_t>(w)]);
      mapping.entries.push_back({coin_value == 1 ? i + 1 : -(i + 1), std::move(p)});
    }
  }
  std::sort(mapping.entries.begin(), mapping.entries.end(),
            [](const PositionEntry& a, const PositionEntry& b) { return a.position < b.position; });

  std::map<std::vector<int>, std::vector<int>> by_digits;
  for (const auto& e : mapping.entries) by_digits[e.digits].push_back(e.position);
  for (auto& [digits, positions] : by_digits)
    if (positions.size() > 1) mapping.collisions.push_back({digits, positions});
  return mapping;
}

}  // namespace dtqw
