// Copyright 2026 The cvrpaoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "cvrpaoa/errors.hpp"
#include "cvrpaoa/rng.hpp"
#include "cvrpaoa/statevector.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cvrpaoa;

namespace {

DenseState random_state(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    DenseState s(n);
    double norm = 0.0;
    for (auto &a : s.amplitudes()) {
        a = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
        norm += std::norm(a);
    }
    for (auto &a : s.amplitudes()) {
        a /= std::sqrt(norm);
    }
    return s;
}

double max_diff(const DenseState &a, const DenseState &b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.amplitudes().size(); ++k) {
        m = std::max(m, std::abs(a.amplitudes()[k] - b.amplitudes()[k]));
    }
    return m;
}

Matrix16 random_unitary(std::uint64_t seed) {
    SplitMix64 rng(seed);
    oracle::M16 h{};
    for (int i = 0; i < 16; ++i) {
        for (int j = i; j < 16; ++j) {
            const Complex v(rng.uniform(-1, 1), i == j ? 0.0 : rng.uniform(-1, 1));
            h[i * 16 + j] = v;
            h[j * 16 + i] = std::conj(v);
        }
    }
    const auto u = oracle::expm(h, Complex(0.0, -1.0));
    Matrix16 m;
    std::copy(u.begin(), u.end(), m.begin());
    return m;
}

Circuit random_classical(int n, int gates, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Circuit c(n);
    for (int k = 0; k < gates; ++k) {
        const Qubit t = rng.uniform_int(0, n - 1);
        std::vector<Qubit> controls;
        std::string states;
        for (int q = 0; q < n && n > 1; ++q) {
            if (q != t && rng.uniform() < 0.3) {
                controls.push_back(q);
                states.push_back(rng.uniform() < 0.5 ? '0' : '1');
            }
        }
        c.add(gates::mcx(controls, states, t));
    }
    return c;
}

std::uint64_t eval_single(const Circuit &c, int n, std::uint64_t label) {
    const DenseState s = apply(DenseState::basis(n, label), c);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
        if (std::abs(s.amplitude(k)) > 0.5) {
            return k;
        }
    }
    return ~std::uint64_t{0};
}

} // namespace

TEST_CASE("basic gates") {
    DenseState s(1);
    s.apply(gates::h(0));
    CHECK(s.amplitude(0).real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(s.amplitude(1).real() == doctest::Approx(std::sqrt(0.5)));

    const DenseState r = random_state(4, 1);
    DenseState t = r;
    t.apply(gates::x(2));
    t.apply(gates::x(2));
    CHECK(max_diff(r, t) < 1e-15);

    auto f = std::make_shared<DiagonalFunction>(2, [](std::uint64_t v) { return 1.0 + v; });
    t.apply(gates::diagonal({0, 3}, 0.0, f));
    CHECK(max_diff(r, t) < 1e-15);

    CHECK(reversible_eval(0b01, Circuit(2).add(gates::cnot(0, 1))) == 0b11);
    CHECK(reversible_eval(0b10, Circuit(2).add(gates::cnot(0, 1))) == 0b10);
}

TEST_CASE("single-qubit rotations match their matrices") {
    const double th = 0.731;
    const DenseState r = random_state(3, 2);
    DenseState s = r;
    s.apply(gates::rx(1, th));
    s.apply(gates::rz(2, th));
    s.apply(gates::phase(0, th));
    const double c = std::cos(th / 2), sn = std::sin(th / 2);
    const Complex i(0.0, 1.0);
    for (std::uint64_t k = 0; k < 8; ++k) {
        const std::uint64_t k0 = k & ~2ULL, k1 = k | 2ULL;
        Complex v = ((k >> 1) & 1U) ? -i * sn * r.amplitude(k0) + c * r.amplitude(k1)
                                    : c * r.amplitude(k0) - i * sn * r.amplitude(k1);
        v *= ((k >> 2) & 1U) ? std::exp(i * th / 2.0) : std::exp(-i * th / 2.0);
        if (k & 1U) {
            v *= std::exp(i * th);
        }
        CHECK(std::abs(s.amplitude(k) - v) < 1e-14);
    }
}

TEST_CASE("diagonal phase and unitary4 follow the little-endian target order") {
    const DenseState r = random_state(6, 3);
    auto f = std::make_shared<DiagonalFunction>(3, [](std::uint64_t v) { return 0.5 * v * v; });
    DenseState s = r;
    s.apply(gates::diagonal({4, 0, 2}, 0.37, f));
    for (std::uint64_t k = 0; k < 64; ++k) {
        const std::uint64_t sub = ((k >> 4) & 1U) | ((k & 1U) << 1) | (((k >> 2) & 1U) << 2);
        const Complex want = r.amplitude(k) * std::exp(Complex(0.0, -0.37 * 0.5 * sub * sub));
        CHECK(std::abs(s.amplitude(k) - want) < 1e-14);
    }

    const Matrix16 m = random_unitary(4);
    const std::array<Qubit, 4> tg{5, 1, 3, 0};
    s = r;
    s.apply(gates::unitary4(tg, m));
    for (std::uint64_t k = 0; k < 64; ++k) {
        int row = 0;
        for (int b = 0; b < 4; ++b) {
            row |= static_cast<int>((k >> tg[b]) & 1U) << b;
        }
        Complex want = 0.0;
        for (int col = 0; col < 16; ++col) {
            std::uint64_t src = k;
            for (int b = 0; b < 4; ++b) {
                src = (src & ~(1ULL << tg[b])) | (static_cast<std::uint64_t>((col >> b) & 1) << tg[b]);
            }
            want += m[row * 16 + col] * r.amplitude(src);
        }
        CHECK(std::abs(s.amplitude(k) - want) < 1e-12);
    }
}

TEST_CASE("invalid gates are rejected") {
    Matrix16 bad{};
    bad[0] = 2.0;
    CHECK_THROWS_AS((void)gates::unitary4({0, 1, 2, 3}, bad), ValidationError);
    DenseState s(3);
    CHECK_THROWS_AS(s.apply(gates::x(3)), ValidationError);
    CHECK_THROWS_AS(s.apply(gates::cnot(1, 1)), ValidationError);
    CHECK_THROWS_AS((void)gates::mcx({0, 1}, "1", 2), ValidationError);
    CHECK_THROWS_AS((void)gates::mcx({0}, "2", 2), ValidationError);
    CHECK_THROWS_AS(DenseState(kMaxDenseQubits + 1), ResourceError);
    CHECK_THROWS_AS((void)reversible_eval(0, Circuit(1).add(gates::h(0))), ValidationError);
}

TEST_CASE("increment") {
    CHECK(reversible_eval(3, build_increment(2)) == 0);
    CHECK(reversible_eval(5, build_increment(3)) == 6);
    for (int n = 1; n <= 6; ++n) {
        const Circuit c = build_increment(n);
        CHECK(c.classical());
        const std::uint64_t size = std::uint64_t{1} << n;
        for (std::uint64_t d = 0; d < size; ++d) {
            CHECK(reversible_eval(d, c) == (d + 1) % size);
        }
    }
}

TEST_CASE("constant adders") {
    CHECK(build_add_const(4, 0).empty());
    CHECK(reversible_eval(2, build_add_const(4, 5)) == 7);
    for (int n = 1; n <= 5; ++n) {
        const std::uint64_t size = std::uint64_t{1} << n;
        for (std::uint64_t k = 0; k < size; ++k) {
            const Circuit add = build_add_const(n, k);
            const Circuit sub = build_sub_const(n, k);
            for (std::uint64_t d = 0; d < size; ++d) {
                CHECK(reversible_eval(d, add) == (d + k) % size);
                CHECK(reversible_eval(d, sub) == (d + size - k) % size);
                CHECK(reversible_eval(reversible_eval(d, add), sub) == d);
            }
        }
    }
    CHECK_THROWS_AS((void)build_add_const(3, 8), ValidationError);
}

TEST_CASE("comparator for Q=9 on five bits") {
    const Qubit target = 5;
    const Circuit c = build_compare_flip(5, 9, target);
    REQUIRE(c.size() == 3);
    const std::vector<std::vector<Qubit>> controls{{4}, {4, 3, 2}, {4, 3, 2, 1}};
    const std::vector<std::uint64_t> states{0b1, 0b110, 0b1010};
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(c.gates()[k].controls == controls[k]);
        CHECK(c.gates()[k].control_states == states[k]);
    }
    for (std::uint64_t d = 0; d < 32; ++d) {
        const std::uint64_t out = reversible_eval(d, c);
        CHECK((out >> target) == (d > 9 ? 1U : 0U));
        CHECK((out & 31U) == d);
    }
    CHECK(build_compare_flip(3, 7, 3).empty());
    for (int kw = 1; kw <= 5; ++kw) {
        for (std::uint64_t q = 0; q < (1ULL << kw); ++q) {
            const Circuit cc = build_compare_flip(kw, q, kw);
            for (std::uint64_t d = 0; d < (1ULL << kw); ++d) {
                CHECK((reversible_eval(d, cc) >> kw) == (d > q ? 1U : 0U));
            }
        }
    }
}

TEST_CASE("basis-path evaluation agrees with dense simulation") {
    for (int n = 1; n <= 12; ++n) {
        const Circuit c = random_classical(n, 3 * n, 100 + n);
        DenseState s(n);
        const std::uint64_t size = std::uint64_t{1} << n;
        for (std::uint64_t k = 0; k < size; ++k) {
            s.amplitudes()[k] = static_cast<double>(k + 1);
        }
        s.apply(c);
        for (std::uint64_t k = 0; k < size; ++k) {
            CHECK(s.amplitude(reversible_eval(k, c)).real() == static_cast<double>(k + 1));
        }
        const Circuit inv = c.adjoint();
        for (std::uint64_t k = 0; k < size; k += 7) {
            CHECK(reversible_eval(reversible_eval(k, c), inv) == k);
        }
    }
    const Circuit c = build_add_const(3, 3);
    for (std::uint64_t d = 0; d < 8; ++d) {
        CHECK(eval_single(c, 3, d) == reversible_eval(d, c));
    }
}

TEST_CASE("adjoint identity and norm preservation") {
    const int n = 7;
    SplitMix64 rng(5);
    Circuit c(n);
    auto f = std::make_shared<DiagonalFunction>(3, [](std::uint64_t v) { return std::sqrt(1.0 + v); });
    for (int k = 0; k < 40; ++k) {
        const Qubit q = rng.uniform_int(0, n - 1);
        switch (k % 8) {
        case 0: c.add(gates::h(q)); break;
        case 1: c.add(gates::rx(q, rng.uniform(0, 6))); break;
        case 2: c.add(gates::rz(q, rng.uniform(0, 6))); break;
        case 3: c.add(gates::controlled_phase({(q + 1) % n, (q + 2) % n}, "01", q, rng.uniform(0, 6))); break;
        case 4: c.add(gates::diagonal({q, (q + 3) % n, (q + 5) % n}, rng.uniform(0, 2), f)); break;
        case 5: c.add(gates::unitary4({q, (q + 1) % n, (q + 2) % n, (q + 4) % n}, random_unitary(k))); break;
        case 6: c.add(gates::toffoli((q + 1) % n, (q + 3) % n, q)); break;
        default: c.add(gates::phase(q, rng.uniform(0, 6))); break;
        }
    }
    const DenseState r = random_state(n, 6);
    const DenseState s = apply(r, c);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(max_diff(apply(s, c.adjoint()), r) < 1e-9);

    const Circuit ctl = c.controlled_by(std::vector<Qubit>{n}, "1");
    DenseState big(n + 1);
    for (std::uint64_t k = 0; k < (1ULL << n); ++k) {
        big.amplitudes()[k] = r.amplitude(k);
    }
    big.apply(ctl);
    for (std::uint64_t k = 0; k < (1ULL << n); ++k) {
        CHECK(std::abs(big.amplitude(k) - r.amplitude(k)) < 1e-15);
    }
}

TEST_CASE("remapping moves every gate") {
    Circuit c(2);
    c.add(gates::cnot(0, 1));
    const std::vector<Qubit> map{3, 1};
    const Circuit m = c.remapped(map, 4);
    CHECK(m.width() == 4);
    CHECK(reversible_eval(0b1000, m) == 0b1010);
}

TEST_CASE("blocked RX sweep equals per-qubit gates") {
    for (int n : {3, 12, 14}) {
        const DenseState r = random_state(n, 7 + n);
        DenseState a = r;
        for (int q = 0; q < n; ++q) {
            a.apply(gates::rx(q, 0.913));
        }
        DenseState b = r;
        apply_rx_all(b.amplitudes(), n, 0.913);
        CHECK(max_diff(a, b) < 1e-12);
    }
}

TEST_CASE("probabilities and marginals") {
    const DenseState z(3);
    const auto p0 = probabilities(z, std::vector<Qubit>{0, 1, 2});
    REQUIRE(p0.size() == 1);
    CHECK(p0.at("000") == 1.0);

    DenseState u(3);
    for (int q = 0; q < 3; ++q) {
        u.apply(gates::h(q));
    }
    const auto pu = probabilities(u, std::vector<Qubit>{0, 1, 2});
    CHECK(pu.size() == 8);
    for (const auto &[k, v] : pu) {
        CHECK(v == doctest::Approx(0.125));
    }

    const DenseState b = DenseState::basis(4, 0b0100);
    const auto pb = probabilities(b, std::vector<Qubit>{0, 2});
    CHECK(pb.at("10") == 1.0);
    const DenseState r = random_state(5, 8);
    double total = 0.0;
    for (double v : marginal(r, std::vector<Qubit>{4, 1, 0})) {
        total += v;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("circuit dump lists one gate per line") {
    Circuit c(3);
    c.add(gates::x(0)).add(gates::mcx({0, 1}, "01", 2)).add(gates::rx(1, 0.5));
    CHECK(c.dump() == "X 0\nTOFFOLI 2 [0 1/01]\nRX 1 0.5\n");
    const auto t = c.tally();
    CHECK(t.at("X") == 1);
    CHECK(t.at("RX") == 1);
}
