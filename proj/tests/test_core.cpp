#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "dtqw/core.hpp"
#include "dtqw/errors.hpp"
#include "dtqw/io.hpp"
#include "oracles.hpp"

using namespace dtqw;

namespace {

bool is_unitary(const SquareMatrix& m, double tol = 1e-12) {
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < m.dim; ++k) s += std::conj(m(k, i)) * m(k, j);
      if (std::abs(s - Complex(i == j ? 1.0 : 0.0)) > tol) return false;
    }
  return true;
}

GateKind random_kind(oracle::Rng& rng, int base_dim) {
  if (base_dim != 2) {
    const int d = rng.uniform(2, base_dim);
    return CyclicShift{rng.uniform(0, d - 1), d};
  }
  switch (rng.uniform(0, 5)) {
    case 0: return CyclicShift{1, 2};
    case 1: return Hadamard{};
    case 2: return GeneralCoin{rng.real(-7, 7), rng.real(-7, 7), rng.real(-7, 7)};
    case 3: return PauliX{};
    case 4: return TGate{};
    default: return TDagger{};
  }
}

}  // namespace

TEST_CASE("layout puts the coin after the position wires") {
  const std::vector<int> pos{2, 2, 2};
  const RegisterLayout l = make_layout(pos);
  CHECK(l.dims() == std::vector<int>{2, 2, 2, 2});
  CHECK(l.coin_wire() == 3);
  CHECK(l.position_wires() == std::vector<int>{0, 1, 2});
  CHECK(l.state_size() == 16);

  const RegisterLayout first = make_layout(pos, false);
  CHECK(first.coin_wire() == 0);
  CHECK(first.position_wires() == std::vector<int>{1, 2, 3});
}

TEST_CASE("layout rejects bad dimensions") {
  CHECK_THROWS_AS(make_layout(std::vector<int>{1, 2}), ValidationError);
  CHECK_THROWS_AS(make_layout(std::vector<int>{17}), ValidationError);
  CHECK_THROWS_AS(make_layout(std::vector<int>{}), ValidationError);
  CHECK_NOTHROW(plain_layout(std::vector<int>(13, 4)));
  CHECK_THROWS_AS(plain_layout(std::vector<int>(14, 4)), ValidationError);
  CHECK_THROWS_AS(make_layout(std::vector<int>(13, 4)), ValidationError);
  CHECK_THROWS_AS(RegisterLayout({2, 3}, 1), ValidationError);
}

TEST_CASE("basis index of a mixed-radix register") {
  const std::vector<int> dims{4, 3, 3, 2};
  const std::vector<int> digits{3, 2, 2, 1};
  CHECK(basis_index(dims, digits) == 71);
  CHECK(oracle::mixed_radix(dims, digits) == 71);
  CHECK(basis_digits(dims, 71) == digits);
  CHECK_THROWS_AS(basis_index(dims, std::vector<int>{4, 0, 0, 0}), ValidationError);
  CHECK_THROWS_AS(basis_digits(dims, 72), ValidationError);
}

TEST_CASE("basis index round trip over random layouts") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> dims(static_cast<size_t>(rng.uniform(1, 6)));
    Index size = 1;
    for (int& d : dims) size *= static_cast<Index>(d = rng.uniform(2, 7));
    for (Index i = 0; i < size; ++i) {
      const std::vector<int> digits = basis_digits(dims, i);
      REQUIRE(basis_index(dims, digits) == i);
      REQUIRE(oracle::mixed_radix(dims, digits) == i);
    }
  }
}

TEST_CASE("cyclic shift acts as modular addition") {
  CHECK(permute_level(CyclicShift{3, 4}, 2) == 1);
  const SquareMatrix m = gate_unitary(CyclicShift{3, 4}, 4);
  CHECK(m(1, 2) == Complex(1.0));
  for (int d = 2; d <= 16; ++d) {
    for (int v = 0; v < d; ++v) {
      CHECK(permute_level(CyclicShift{0, d}, v) == v);
      CHECK(permute_level(CyclicShift{d, d}, v) == v);
    }
  }
}

TEST_CASE("cyclic shift followed by its complement is the identity") {
  for (int d = 2; d <= 16; ++d)
    for (int k = 1; k < d; ++k)
      for (int v = 0; v < d; ++v) {
        REQUIRE(permute_level(CyclicShift{d - k, d}, permute_level(CyclicShift{k, d}, v)) == v);
        REQUIRE(permute_level(inverse(CyclicShift{k, d}), permute_level(CyclicShift{k, d}, v)) == v);
      }
}

TEST_CASE("embedded gates leave elevated levels alone") {
  CHECK(permute_level(CyclicShift{1, 3}, 3) == 3);
  CHECK(permute_level(PauliX{}, 2) == 2);
  const SquareMatrix t = gate_unitary(TGate{}, 4);
  CHECK(t(2, 2) == Complex(1.0));
  CHECK(t(3, 3) == Complex(1.0));
  CHECK(std::abs(t(1, 1) - std::polar(1.0, std::numbers::pi / 4)) < 1e-15);
  CHECK_THROWS_AS(gate_unitary(CyclicShift{1, 5}, 4), ValidationError);
}

TEST_CASE("gate matrices are unitary") {
  for (int d = 2; d <= 18; ++d) {
    CHECK(is_unitary(gate_unitary(Hadamard{}, d)));
    CHECK(is_unitary(gate_unitary(PauliX{}, d)));
    CHECK(is_unitary(gate_unitary(TGate{}, d)));
    CHECK(is_unitary(gate_unitary(TDagger{}, d)));
    for (int k = 0; k < d; ++k) CHECK(is_unitary(gate_unitary(CyclicShift{k, d}, d)));
  }
  oracle::Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const GeneralCoin c{rng.real(-10, 10), rng.real(-10, 10), rng.real(-10, 10)};
    REQUIRE(is_unitary(gate_unitary(c, 2)));
  }
}

TEST_CASE("general coin matrix entries") {
  const GeneralCoin c{0.3, 0.7, -1.1};
  const oracle::Coin o = oracle::general(0.3, 0.7, -1.1);
  const SquareMatrix m = gate_unitary(c, 2);
  CHECK(std::abs(m(0, 0) - o.a) < 1e-15);
  CHECK(std::abs(m(0, 1) - o.b) < 1e-15);
  CHECK(std::abs(m(1, 0) - o.c) < 1e-15);
  CHECK(std::abs(m(1, 1) - o.d) < 1e-15);

  const SquareMatrix h = gate_unitary(Hadamard{}, 2);
  const SquareMatrix g = gate_unitary(GeneralCoin{std::numbers::pi / 4, 0, 0}, 2);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(h.data[i] - g.data[i]) < 1e-15);
}

TEST_CASE("circuit validation") {
  Circuit c(make_layout(std::vector<int>{4, 3}));
  CHECK_NOTHROW(c.add(CyclicShift{1, 4}, 0, {{2, 1}, {1, 2}}));
  CHECK_THROWS_AS(c.add(PauliX{}, 0, {{0, 1}}), ValidationError);
  CHECK_THROWS_AS(c.add(PauliX{}, 2, {{0, 1}, {0, 2}}), ValidationError);
  CHECK_THROWS_AS(c.add(CyclicShift{1, 3}, 0, {{1, 3}}), ValidationError);
  CHECK_THROWS_AS(c.add(CyclicShift{1, 4}, 1), ValidationError);
  CHECK_THROWS_AS(c.add(Hadamard{}, 0), ValidationError);
  CHECK_THROWS_AS(c.add(PauliX{}, 5), ValidationError);
  CHECK(c.size() == 1);

  c.raise_dim(1, 4);
  CHECK_NOTHROW(c.add(CyclicShift{1, 4}, 1, {{0, 3}}));
  CHECK_NOTHROW(c.add(CyclicShift{1, 4}, 0, {{1, 3}}));
  CHECK_THROWS_AS(c.raise_dim(1, 6), ValidationError);
  c.raise_dim(1, 5);
  CHECK(c.effective_dims() == std::vector<int>{4, 5, 2});
}

TEST_CASE("cyclic shift amounts are normalized") {
  Circuit c(plain_layout(std::vector<int>{5}));
  c.add(CyclicShift{-1, 5}, 0);
  c.add(CyclicShift{12, 5}, 0);
  CHECK(std::get<CyclicShift>(c.gates()[0].kind).k == 4);
  CHECK(std::get<CyclicShift>(c.gates()[1].kind).k == 2);
}

TEST_CASE("json circuit format field order") {
  Circuit c(make_layout(std::vector<int>{4}));
  c.add(CyclicShift{1, 4}, 0, {{1, 1}});
  c.add(GeneralCoin{0.1, 0.2, 0.3}, 1);
  c.raise_dim(0, 5);
  CHECK(circuit_to_json(c) ==
        "{\"dims\":[4,2],\"coin_wire\":1,\"gates\":[{\"kind\":\"cyclic_shift\",\"k\":1,\"d\":4,\"target\":0,"
        "\"controls\":[{\"wire\":1,\"level\":1}]},{\"kind\":\"coin\",\"params\":{\"theta\":0.10000000000000001,"
        "\"phi1\":0.20000000000000001,\"phi2\":0.29999999999999999},\"target\":1,\"controls\":[]}],"
        "\"dim_overrides\":{\"0\":5}}\n");
}

TEST_CASE("json round trip over random circuits") {
  oracle::Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> pos(static_cast<size_t>(rng.uniform(1, 4)));
    for (int& d : pos) d = rng.uniform(2, 6);
    Circuit c(make_layout(pos, rng.uniform(0, 1) == 1));
    const int n = c.layout().num_wires();
    if (rng.uniform(0, 2) == 0) {
      const int w = rng.uniform(0, n - 1);
      c.raise_dim(w, c.layout().dim(w) + rng.uniform(1, 2));
    }
    for (int g = 0; g < 12; ++g) {
      const int target = rng.uniform(0, n - 1);
      GateApplication app{random_kind(rng, c.layout().dim(target)), target, {}};
      for (int w = 0; w < n; ++w)
        if (w != target && rng.uniform(0, 2) == 0) app.controls.push_back({w, rng.uniform(0, c.effective_dim(w) - 1)});
      c.add(app);
    }
    const std::string text = circuit_to_json(c);
    const Circuit back = circuit_from_json(text);
    REQUIRE(back == c);
    REQUIRE(circuit_to_json(back) == text);
  }
}

TEST_CASE("malformed json is a validation error") {
  CHECK_THROWS_AS(circuit_from_json("{"), ValidationError);
  CHECK_THROWS_AS(circuit_from_json("{\"dims\":[2],\"coin_wire\":-1,\"gates\":[{\"kind\":\"swap\",\"target\":0}]}"),
                  ValidationError);
  CHECK_THROWS_AS(circuit_from_json("{\"dims\":[2],\"coin_wire\":-1,\"gates\":[{\"kind\":\"x\",\"target\":3}]}"),
                  ValidationError);
}

TEST_CASE("kets print most significant wire first") {
  CHECK(ket_string(std::vector<int>{1, 0, 2}) == "201");
  CHECK(ket_string(std::vector<int>{10, 3}) == "3.10");
}
