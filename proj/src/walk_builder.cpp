#include "dtqw/walk_builder.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "dtqw/errors.hpp"

namespace dtqw {

namespace {

std::vector<int> binary_dims(int n) {
  if (n < 2) throw ValidationError(fmt::format("binary walks need n >= 2 position qubits, got {}", n));
  return std::vector<int>(static_cast<size_t>(n), 2);
}

long long upper_product(std::span<const int> dims) {
  long long m = 1;
  for (size_t j = 1; j < dims.size(); ++j) m *= dims[j];
  return m;
}

struct Wires {
  int coin;
  std::vector<int> q;
};

Wires wires_of(const RegisterLayout& layout) { return {*layout.coin_wire(), layout.position_wires()}; }

GateKind shift_kind(int k, int d) {
  k = ((k % d) + d) % d;
  if (d == 2 && k == 1) return PauliX{};
  return CyclicShift{k, d};
}

// Controls on the coin (level 1) and on q[from..to) at their top level.
std::vector<Control> ladder_controls(const Circuit& c, const Wires& w, int from, int to) {
  std::vector<Control> controls{{w.coin, 1}};
  for (int j = from; j < to; ++j) controls.push_back({w.q[j], c.layout().dim(w.q[j]) - 1});
  return controls;
}

void add_coin(Circuit& c, const Wires& w, const std::optional<GateKind>& coin) {
  if (coin) c.add(*coin, w.coin);
}

void append_increment(Circuit& c, const Wires& w) {
  const int n = static_cast<int>(w.q.size());
  for (int j = n - 1; j >= 0; --j) c.add(PauliX{}, w.q[j], ladder_controls(c, w, 0, j));
}

void append_decrement(Circuit& c, const Wires& w) {
  const int n = static_cast<int>(w.q.size());
  c.add(PauliX{}, w.coin);
  for (int j = 0; j < n; ++j) c.add(PauliX{}, w.q[j], ladder_controls(c, w, 0, j));
  c.add(PauliX{}, w.coin);
}

// Shift on the upper wires q1.. triggered by the coin and the wires below the target.
void append_upper_ladder(Circuit& c, const Wires& w, bool ascending, bool forward) {
  const int n = static_cast<int>(w.q.size());
  auto one = [&](int j) {
    const int d = c.layout().dim(w.q[j]);
    c.add(shift_kind(forward ? 1 : -1, d), w.q[j], ladder_controls(c, w, 1, j));
  };
  if (ascending) {
    for (int j = 1; j < n; ++j) one(j);
  } else {
    for (int j = n - 1; j >= 1; --j) one(j);
  }
}

GateKind lsb_shift(const Circuit& c, const Wires& w, int k) { return shift_kind(k, c.layout().dim(w.q[0])); }

Circuit ladder_step(std::span<const int> dims, Parity parity, const std::optional<GateKind>& coin) {
  Circuit c(make_layout(dims));
  const Wires w = wires_of(c.layout());
  add_coin(c, w, coin);
  if (parity == Parity::Even) {
    c.add(lsb_shift(c, w, 1), w.q[0]);
    append_upper_ladder(c, w, false, true);
  } else {
    c.add(lsb_shift(c, w, -1), w.q[0]);
    c.add(PauliX{}, w.coin);
    append_upper_ladder(c, w, true, false);
    c.add(PauliX{}, w.coin);
  }
  return c;
}

// Upper-wire shifts that map the midpoint digits onto the all-top-level pattern.
std::vector<int> midpoint_shifts(std::span<const int> dims) {
  std::vector<int> mid = modified_midpoint(dims);
  std::vector<int> shifts;
  for (size_t j = 0; j < mid.size(); ++j) {
    const int d = dims[j + 1];
    shifts.push_back(((d - 1 - mid[j]) % d + d) % d);
  }
  return shifts;
}

void append_upper_shifts(Circuit& c, const Wires& w, const std::vector<int>& shifts, bool undo) {
  for (size_t j = 0; j < shifts.size(); ++j) {
    if (shifts[j] == 0) continue;
    const int d = c.layout().dim(w.q[j + 1]);
    c.add(shift_kind(undo ? -shifts[j] : shifts[j], d), w.q[j + 1]);
  }
}

Circuit modified_step(std::span<const int> dims, Parity parity, const std::optional<GateKind>& coin) {
  Circuit c(make_layout(dims));
  const Wires w = wires_of(c.layout());
  const int n = static_cast<int>(w.q.size());
  const int lsb = c.layout().dim(w.q[0]);
  const std::vector<int> shifts = midpoint_shifts(dims);
  const std::vector<Control> all_upper = ladder_controls(c, w, 1, n);

  add_coin(c, w, coin);
  if (parity == Parity::Even) {
    append_upper_shifts(c, w, shifts, false);
    c.add(PauliX{}, w.coin);
    c.add(lsb_shift(c, w, 2), w.q[0], all_upper);
    append_upper_shifts(c, w, shifts, true);
    c.add(PauliX{}, w.coin);
    c.add(lsb_shift(c, w, 1), w.q[0]);
    append_upper_ladder(c, w, false, true);
  } else {
    c.add(lsb_shift(c, w, lsb - 1), w.q[0]);
    c.add(PauliX{}, w.coin);
    append_upper_ladder(c, w, true, false);
    append_upper_shifts(c, w, shifts, false);
    c.add(PauliX{}, w.coin);
    c.add(lsb_shift(c, w, lsb - 2), w.q[0], all_upper);
    append_upper_shifts(c, w, shifts, true);
  }
  return c;
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::Naive: return "naive";
    case Scheme::Enhanced: return "enhanced";
    case Scheme::QuditDirect: return "qudit-direct";
    case Scheme::QuditModified: return "qudit-modified";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::Naive, Scheme::Enhanced, Scheme::QuditDirect, Scheme::QuditModified})
    if (scheme_name(s) == name) return s;
  throw ValidationError(fmt::format("unknown scheme '{}'", name));
}

void validate_scheme_dims(Scheme scheme, std::span<const int> dims) {
  if (dims.size() < 2) throw ValidationError(fmt::format("{} needs at least 2 position wires", scheme_name(scheme)));
  for (int d : dims)
    if (d < 2 || d > kMaxWireDim) throw ValidationError(fmt::format("wire dimension {} outside [2, {}]", d, kMaxWireDim));
  const bool uniform_upper = std::all_of(dims.begin() + 1, dims.end(), [&](int d) { return d == dims[1]; });
  switch (scheme) {
    case Scheme::Naive:
    case Scheme::Enhanced:
      if (!std::all_of(dims.begin(), dims.end(), [](int d) { return d == 2; }))
        throw ValidationError(fmt::format("{} walks use qubit position wires only", scheme_name(scheme)));
      break;
    case Scheme::QuditDirect:
      if (dims[0] != 2) throw ValidationError("qudit-direct needs a binary q0");
      if (!uniform_upper || dims[1] < 3)
        throw ValidationError("qudit-direct needs equal upper dimensions d >= 3");
      break;
    case Scheme::QuditModified:
      if (dims[0] % 2 != 0) throw ValidationError("qudit-modified needs an even dimension on q0");
      if (!uniform_upper) throw ValidationError("qudit-modified needs equal upper dimensions");
      break;
  }
  std::vector<int> all(dims.begin(), dims.end());
  make_layout(all);
}

int derive_max_steps(Scheme scheme, std::span<const int> dims) {
  validate_scheme_dims(scheme, dims);
  const long long m = upper_product(dims);
  switch (scheme) {
    case Scheme::Naive:
    case Scheme::Enhanced:
    case Scheme::QuditDirect: return static_cast<int>(m - 1);
    case Scheme::QuditModified: return static_cast<int>(dims[0] * m / 2 - 1);
  }
  return 0;
}

std::vector<int> modified_midpoint(std::span<const int> dims) {
  const long long m = upper_product(dims);
  long long u = (m + 1) / 2;
  std::vector<int> digits;
  for (size_t j = 1; j < dims.size(); ++j) {
    digits.push_back(static_cast<int>(u % dims[j]));
    u /= dims[j];
  }
  return digits;
}

Circuit build_increment(int n) {
  Circuit c(make_layout(binary_dims(n)));
  append_increment(c, wires_of(c.layout()));
  return c;
}

Circuit build_decrement(int n) {
  Circuit c(make_layout(binary_dims(n)));
  append_decrement(c, wires_of(c.layout()));
  return c;
}

Circuit build_naive_step(int n, const GateKind& coin) { return build_step(Scheme::Naive, binary_dims(n), Parity::Even, coin); }

Circuit build_enhanced_step(int n, Parity parity, const GateKind& coin) {
  return build_step(Scheme::Enhanced, binary_dims(n), parity, coin);
}

Circuit build_qudit_step_direct(std::span<const int> dims, Parity parity, const GateKind& coin) {
  return build_step(Scheme::QuditDirect, dims, parity, coin);
}

Circuit build_qudit_step_modified(std::span<const int> dims, Parity parity, const GateKind& coin) {
  return build_step(Scheme::QuditModified, dims, parity, coin);
}

Circuit build_step(Scheme scheme, std::span<const int> dims, Parity parity, const std::optional<GateKind>& coin) {
  validate_scheme_dims(scheme, dims);
  if (coin && active_levels(*coin) != 2) throw ValidationError("coin must be a two-level gate");
  if (coin && is_permutation(*coin)) throw ValidationError("coin must not be a permutation gate");
  switch (scheme) {
    case Scheme::Naive: {
      Circuit c(make_layout(dims));
      const Wires w = wires_of(c.layout());
      add_coin(c, w, coin);
      append_increment(c, w);
      append_decrement(c, w);
      return c;
    }
    case Scheme::Enhanced:
    case Scheme::QuditDirect: return ladder_step(dims, parity, coin);
    case Scheme::QuditModified: return modified_step(dims, parity, coin);
  }
  throw ValidationError("unknown scheme");
}

Circuit build_walk(const WalkConfig& config) {
  const int max_steps = derive_max_steps(config.scheme, config.position_dims);
  if (config.steps < 0 || config.steps > max_steps)
    throw ValidationError(fmt::format("steps {} outside [0, {}] for {} on this register", config.steps, max_steps,
                                      scheme_name(config.scheme)));
  Circuit walk(make_layout(config.position_dims));
  for (int i = 0; i < config.steps; ++i)
    walk.append(build_step(config.scheme, config.position_dims, parity_of_step(i), config.coin));
  return walk;
}

}  // namespace dtqw
