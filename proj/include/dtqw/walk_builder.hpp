#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dtqw/core.hpp"

namespace dtqw {

enum class Scheme { Naive, Enhanced, QuditDirect, QuditModified };
enum class Parity { Even, Odd };

std::string_view scheme_name(Scheme scheme);
Scheme parse_scheme(std::string_view name);
inline Parity parity_of_step(int step_index) { return step_index % 2 == 0 ? Parity::Even : Parity::Odd; }

struct WalkConfig {
  Scheme scheme = Scheme::Enhanced;
  std::vector<int> position_dims;
  int steps = 0;
  GateKind coin = Hadamard{};
};

// Throws ValidationError unless `dims` (q0 first) suits the scheme.
void validate_scheme_dims(Scheme scheme, std::span<const int> dims);
int derive_max_steps(Scheme scheme, std::span<const int> dims);

Circuit build_increment(int n);
Circuit build_decrement(int n);
Circuit build_naive_step(int n, const GateKind& coin = Hadamard{});
Circuit build_enhanced_step(int n, Parity parity, const GateKind& coin = Hadamard{});
Circuit build_qudit_step_direct(std::span<const int> dims, Parity parity, const GateKind& coin = Hadamard{});
Circuit build_qudit_step_modified(std::span<const int> dims, Parity parity, const GateKind& coin = Hadamard{});
// Step circuit for the scheme; `coin` empty leaves out the coin gate.
Circuit build_step(Scheme scheme, std::span<const int> dims, Parity parity, const std::optional<GateKind>& coin);
Circuit build_walk(const WalkConfig& config);

// Upper-register digits (q1 first) of the crossing point used by the modified scheme.
std::vector<int> modified_midpoint(std::span<const int> dims);

struct PositionEntry {
  int position = 0;
  std::vector<int> digits;  // q0 first
};

struct Collision {
  std::vector<int> digits;
  std::vector<int> positions;
};

struct PositionMapping {
  std::vector<int> dims;  // position dims, q0 first
  std::vector<PositionEntry> entries;  // ascending position
  std::vector<Collision> collisions;

  const PositionEntry* find(int position) const;
};

// Walks the step circuits classically with the coin gate removed: coin fixed to 1
// gives positions +1, +2, ...; coin fixed to 0 gives -1, -2, ....
// Steps may exceed the scheme maximum by one to expose the boundary collision.
PositionMapping derive_position_mapping(Scheme scheme, std::span<const int> dims, int steps,
                                        std::span<const int> initial_position = {});

}  // namespace dtqw
