#include "dtqw/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <fmt/format.h>

#include "dtqw/errors.hpp"

namespace dtqw {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

int mod(int a, int m) { return ((a % m) + m) % m; }

void check_state_size(std::span<const int> dims) {
  Index size = 1;
  for (int d : dims) {
    size *= static_cast<Index>(d);
    if (size > kMaxStateSize)
      throw ValidationError(fmt::format("register exceeds the 2^26 state-size cap"));
  }
}

}  // namespace

RegisterLayout::RegisterLayout(std::vector<int> dims, std::optional<int> coin_wire)
    : dims_(std::move(dims)), coin_wire_(coin_wire) {
  if (dims_.empty()) throw ValidationError("register needs at least one wire");
  for (int d : dims_) {
    if (d < 2 || d > kMaxWireDim)
      throw ValidationError(fmt::format("wire dimension {} outside [2, {}]", d, kMaxWireDim));
  }
  if (coin_wire_) {
    if (*coin_wire_ < 0 || *coin_wire_ >= num_wires())
      throw ValidationError(fmt::format("coin wire {} out of range", *coin_wire_));
    if (dims_[static_cast<size_t>(*coin_wire_)] != 2)
      throw ValidationError("coin wire must be binary");
  }
  check_state_size(dims_);
  for (int w = 0; w < num_wires(); ++w) {
    if (!coin_wire_ || w != *coin_wire_) position_wires_.push_back(w);
  }
}

std::vector<int> RegisterLayout::position_dims() const {
  std::vector<int> out;
  for (int w : position_wires_) out.push_back(dim(w));
  return out;
}

Index RegisterLayout::state_size() const {
  Index size = 1;
  for (int d : dims_) size *= static_cast<Index>(d);
  return size;
}

RegisterLayout make_layout(std::span<const int> position_dims, bool coin_last) {
  if (position_dims.empty()) throw ValidationError("walk needs at least one position wire");
  std::vector<int> dims(position_dims.begin(), position_dims.end());
  if (coin_last) {
    dims.push_back(2);
    return RegisterLayout(dims, static_cast<int>(dims.size()) - 1);
  }
  dims.insert(dims.begin(), 2);
  return RegisterLayout(dims, 0);
}

RegisterLayout plain_layout(std::span<const int> dims) {
  return RegisterLayout(std::vector<int>(dims.begin(), dims.end()), std::nullopt);
}

Index basis_index(std::span<const int> dims, std::span<const int> digits) {
  if (dims.size() != digits.size())
    throw ValidationError(fmt::format("expected {} digits, got {}", dims.size(), digits.size()));
  Index index = 0;
  for (size_t w = dims.size(); w-- > 0;) {
    if (digits[w] < 0 || digits[w] >= dims[w])
      throw ValidationError(fmt::format("digit {} on wire {} exceeds dimension {}", digits[w], w, dims[w]));
    index = index * static_cast<Index>(dims[w]) + static_cast<Index>(digits[w]);
  }
  return index;
}

std::vector<int> basis_digits(std::span<const int> dims, Index index) {
  std::vector<int> digits(dims.size());
  for (size_t w = 0; w < dims.size(); ++w) {
    digits[w] = static_cast<int>(index % static_cast<Index>(dims[w]));
    index /= static_cast<Index>(dims[w]);
  }
  if (index != 0) throw ValidationError("basis index out of range");
  return digits;
}

int active_levels(const GateKind& kind) {
  if (const auto* s = std::get_if<CyclicShift>(&kind)) return s->d;
  return 2;
}

bool is_permutation(const GateKind& kind) {
  return std::holds_alternative<CyclicShift>(kind) || std::holds_alternative<PauliX>(kind);
}

bool is_diagonal(const GateKind& kind) {
  return std::holds_alternative<TGate>(kind) || std::holds_alternative<TDagger>(kind);
}

std::string kind_name(const GateKind& kind) {
  return std::visit(Overloaded{
                        [](const CyclicShift&) { return std::string("cyclic_shift"); },
                        [](const Hadamard&) { return std::string("hadamard"); },
                        [](const GeneralCoin&) { return std::string("coin"); },
                        [](const PauliX&) { return std::string("x"); },
                        [](const TGate&) { return std::string("t"); },
                        [](const TDagger&) { return std::string("tdg"); },
                    },
                    kind);
}

GateKind inverse(const GateKind& kind) {
  return std::visit(Overloaded{
                        [](const CyclicShift& s) -> GateKind { return CyclicShift{mod(s.d - s.k, s.d), s.d}; },
                        [](const Hadamard& h) -> GateKind { return h; },
                        [](const GeneralCoin& c) -> GateKind {
                          // The coin matrix is Hermitian only when phi1 == -phi2 (mod 2 pi).
                          if (std::abs(std::remainder(c.phi1 + c.phi2, 2 * std::numbers::pi)) > 1e-15)
                            throw UnsupportedError("inverse of a general coin is not a coin");
                          return c;
                        },
                        [](const PauliX& x) -> GateKind { return x; },
                        [](const TGate&) -> GateKind { return TDagger{}; },
                        [](const TDagger&) -> GateKind { return TGate{}; },
                    },
                    kind);
}

int permute_level(const GateKind& kind, int level) {
  if (const auto* s = std::get_if<CyclicShift>(&kind))
    return level < s->d ? mod(level + s->k, s->d) : level;
  if (std::holds_alternative<PauliX>(kind)) return level < 2 ? 1 - level : level;
  if (is_diagonal(kind)) return level;
  throw ValidationError(fmt::format("{} has no classical action", kind_name(kind)));
}

SquareMatrix gate_unitary(const GateKind& kind, int d) {
  if (d < 2) throw ValidationError("gate dimension must be at least 2");
  if (active_levels(kind) > d)
    throw ValidationError(fmt::format("{} acts on {} levels but wire has {}", kind_name(kind), active_levels(kind), d));
  if (const auto* s = std::get_if<CyclicShift>(&kind); s && s->d < 2)
    throw ValidationError("cyclic shift needs d >= 2");

  SquareMatrix m{d, std::vector<Complex>(static_cast<size_t>(d * d))};
  for (int j = 0; j < d; ++j) m(j, j) = 1.0;

  const double r = std::numbers::sqrt2 / 2;
  std::visit(Overloaded{
                 [&](const CyclicShift& s) {
                   for (int j = 0; j < s.d; ++j) {
                     m(j, j) = 0.0;
                   }
                   for (int j = 0; j < s.d; ++j) m(mod(j + s.k, s.d), j) = 1.0;
                 },
                 [&](const Hadamard&) {
                   m(0, 0) = r;
                   m(0, 1) = r;
                   m(1, 0) = r;
                   m(1, 1) = -r;
                 },
                 [&](const GeneralCoin& c) {
                   const double co = std::cos(c.theta), si = std::sin(c.theta);
                   m(0, 0) = co;
                   m(0, 1) = std::polar(si, c.phi1);
                   m(1, 0) = std::polar(si, c.phi2);
                   m(1, 1) = -std::polar(co, c.phi1 + c.phi2);
                 },
                 [&](const PauliX&) {
                   m(0, 0) = 0.0;
                   m(1, 1) = 0.0;
                   m(0, 1) = 1.0;
                   m(1, 0) = 1.0;
                 },
                 [&](const TGate&) { m(1, 1) = Complex(r, r); },
                 [&](const TDagger&) { m(1, 1) = Complex(r, -r); },
             },
             kind);
  return m;
}

Circuit::Circuit(RegisterLayout layout) : layout_(std::move(layout)) {}

int Circuit::effective_dim(int wire) const {
  auto it = overrides_.find(wire);
  return it == overrides_.end() ? layout_.dim(wire) : it->second;
}

std::vector<int> Circuit::effective_dims() const {
  std::vector<int> dims = layout_.dims();
  for (auto [w, d] : overrides_) dims[static_cast<size_t>(w)] = d;
  return dims;
}

void Circuit::raise_dim(int wire, int dim) {
  if (wire < 0 || wire >= layout_.num_wires()) throw ValidationError(fmt::format("wire {} out of range", wire));
  const int base = layout_.dim(wire);
  if (dim <= base) return;
  if (dim > base + kMaxElevation)
    throw ValidationError(fmt::format("wire {} cannot be elevated from {} to {}", wire, base, dim));
  int& current = overrides_[wire];
  current = std::max(current, dim);
  std::vector<int> dims = effective_dims();
  check_state_size(dims);
}

void Circuit::validate(const GateApplication& g) const {
  const int n = layout_.num_wires();
  if (g.target < 0 || g.target >= n) throw ValidationError(fmt::format("target wire {} out of range", g.target));
  const int levels = active_levels(g.kind);
  if (const auto* s = std::get_if<CyclicShift>(&g.kind); s && s->d < 2)
    throw ValidationError("cyclic shift needs d >= 2");
  if (levels > effective_dim(g.target))
    throw ValidationError(fmt::format("{} on {} levels does not fit wire {} of dimension {}", kind_name(g.kind),
                                      levels, g.target, effective_dim(g.target)));
  if (!std::holds_alternative<CyclicShift>(g.kind) && layout_.dim(g.target) != 2)
    throw ValidationError(fmt::format("{} requires a binary target wire", kind_name(g.kind)));
  std::set<int> seen{g.target};
  for (const Control& c : g.controls) {
    if (c.wire < 0 || c.wire >= n) throw ValidationError(fmt::format("control wire {} out of range", c.wire));
    if (!seen.insert(c.wire).second)
      throw ValidationError(fmt::format("wire {} used twice in one gate", c.wire));
    if (c.level < 0 || c.level >= effective_dim(c.wire))
      throw ValidationError(fmt::format("control level {} invalid on wire {}", c.level, c.wire));
  }
}

Circuit& Circuit::add(GateApplication gate) {
  if (auto* s = std::get_if<CyclicShift>(&gate.kind); s && s->d >= 2) s->k = mod(s->k, s->d);
  validate(gate);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::add(GateKind kind, int target, std::vector<Control> controls) {
  return add(GateApplication{std::move(kind), target, std::move(controls)});
}

Circuit& Circuit::append(const Circuit& other) {
  if (!(other.layout_ == layout_)) throw ValidationError("cannot append circuits on different layouts");
  for (auto [w, d] : other.overrides_) raise_dim(w, d);
  for (const auto& g : other.gates_) add(g);
  return *this;
}

std::string ket_string(std::span<const int> digits) {
  const bool wide = std::any_of(digits.begin(), digits.end(), [](int d) { return d >= 10; });
  std::string out;
  for (size_t i = digits.size(); i-- > 0;) {
    if (wide && !out.empty()) out += '.';
    out += std::to_string(digits[i]);
  }
  return out;
}

}  // namespace dtqw
