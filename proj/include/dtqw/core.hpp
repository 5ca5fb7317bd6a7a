#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace dtqw {

using Complex = std::complex<double>;
using Index = std::uint64_t;

inline constexpr int kMaxWireDim = 16;
// Temporary elevation adds at most two levels on top of a wire's base dimension.
inline constexpr int kMaxElevation = 2;
inline constexpr Index kMaxStateSize = Index{1} << 26;

// Wire 0 is the least significant digit of the mixed-radix index.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  RegisterLayout(std::vector<int> dims, std::optional<int> coin_wire);

  const std::vector<int>& dims() const { return dims_; }
  int dim(int wire) const { return dims_.at(static_cast<size_t>(wire)); }
  int num_wires() const { return static_cast<int>(dims_.size()); }
  std::optional<int> coin_wire() const { return coin_wire_; }
  // Non-coin wires in ascending order; position_wires()[0] is q0.
  const std::vector<int>& position_wires() const { return position_wires_; }
  std::vector<int> position_dims() const;
  Index state_size() const;

  bool operator==(const RegisterLayout&) const = default;

 private:
  std::vector<int> dims_;
  std::optional<int> coin_wire_;
  std::vector<int> position_wires_;
};

// Position wires q0..q_{n-1} followed by (or preceded by) a binary coin wire.
RegisterLayout make_layout(std::span<const int> position_dims, bool coin_last = true);
RegisterLayout plain_layout(std::span<const int> dims);

struct BasisState {
  std::vector<int> digits;
  bool operator==(const BasisState&) const = default;
};

Index basis_index(std::span<const int> dims, std::span<const int> digits);
std::vector<int> basis_digits(std::span<const int> dims, Index index);

// X_d^{+k}: |j> -> |j+k mod d> on levels below d, identity on any level above.
struct CyclicShift {
  int k = 1;
  int d = 2;
  bool operator==(const CyclicShift&) const = default;
};
struct Hadamard {
  bool operator==(const Hadamard&) const = default;
};
// [[cos t, e^{i p1} sin t], [e^{i p2} sin t, -e^{i(p1+p2)} cos t]]
struct GeneralCoin {
  double theta = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  bool operator==(const GeneralCoin&) const = default;
};
struct PauliX {
  bool operator==(const PauliX&) const = default;
};
struct TGate {
  bool operator==(const TGate&) const = default;
};
struct TDagger {
  bool operator==(const TDagger&) const = default;
};

using GateKind = std::variant<CyclicShift, Hadamard, GeneralCoin, PauliX, TGate, TDagger>;

// Number of low levels the gate acts on; 2 for every two-level kind.
int active_levels(const GateKind& kind);
bool is_permutation(const GateKind& kind);
bool is_diagonal(const GateKind& kind);
std::string kind_name(const GateKind& kind);
GateKind inverse(const GateKind& kind);
// Classical action on one level; only valid for permutation and diagonal kinds.
int permute_level(const GateKind& kind, int level);

struct Control {
  int wire = 0;
  int level = 1;
  bool operator==(const Control&) const = default;
};

struct GateApplication {
  GateKind kind;
  int target = 0;
  std::vector<Control> controls;
  bool operator==(const GateApplication&) const = default;
};

// Row-major d x d matrix.
struct SquareMatrix {
  int dim = 0;
  std::vector<Complex> data;

  Complex& operator()(int r, int c) { return data[static_cast<size_t>(r * dim + c)]; }
  Complex operator()(int r, int c) const { return data[static_cast<size_t>(r * dim + c)]; }
};

// Unitary of `kind` embedded in a d-level wire.
SquareMatrix gate_unitary(const GateKind& kind, int d);

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(RegisterLayout layout);

  // Validates the gate against the current effective dimensions.
  Circuit& add(GateApplication gate);
  Circuit& add(GateKind kind, int target, std::vector<Control> controls = {});
  // Appends gates of a circuit on the same layout, merging dimension overrides.
  Circuit& append(const Circuit& other);
  // Elevates a wire to `dim` levels for the duration of the circuit.
  void raise_dim(int wire, int dim);

  const RegisterLayout& layout() const { return layout_; }
  const std::vector<GateApplication>& gates() const { return gates_; }
  const std::map<int, int>& dim_overrides() const { return overrides_; }
  std::vector<int> effective_dims() const;
  int effective_dim(int wire) const;
  size_t size() const { return gates_.size(); }

  bool operator==(const Circuit&) const = default;

 private:
  void validate(const GateApplication& gate) const;

  RegisterLayout layout_;
  std::vector<GateApplication> gates_;
  std::map<int, int> overrides_;
};

std::string ket_string(std::span<const int> digits);

}  // namespace dtqw
