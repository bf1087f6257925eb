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
/**
 * @file
 * Dense statevector simulation, the gate set used by the ansatz circuits,
 * the basis-path evaluator for classical-reversible circuits, and the
 * reversible arithmetic builders ([+1], [+k], [-k], [>Q]).
 *
 * Qubit q corresponds to bit q of the amplitude index (little-endian).
 * Registers holding integers (the demand register d) are little-endian too:
 * the first qubit of the register is the least significant bit.
 */
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace cvrpaoa {

using Complex = std::complex<double>;
using Qubit = int;

enum class GateKind {
    H,
    X,
    RX,
    RZ,
    Phase,
    CNOT,
    Toffoli,
    MCX,
    DiagonalPhase,
    FourQubitUnitary,
};

/// 16x16 row-major matrix; index bit k corresponds to targets[k].
using Matrix16 = std::array<Complex, 256>;

/// Real-valued function over the bits of a register subset, used as the
/// exponent of a diagonal phase e^{-i*gamma*f}. Bit k of the argument is the
/// value of targets[k].
class DiagonalFunction {
  public:
    using Callback = std::function<double(std::uint64_t)>;

    /// Tabulates `f` when the register is narrow enough, else keeps the
    /// callback.
    DiagonalFunction(int width, Callback f);

    [[nodiscard]] int width() const { return width_; }
    [[nodiscard]] double operator()(std::uint64_t sub) const {
        return table_.empty() ? f_(sub) : table_[sub];
    }

  private:
    int width_;
    Callback f_;
    std::vector<double> table_;
};

struct Gate {
    GateKind kind = GateKind::X;
    std::vector<Qubit> targets;
    std::vector<Qubit> controls;
    /// Bit k is the required value of controls[k].
    std::uint64_t control_states = 0;
    double angle = 0.0;
    std::shared_ptr<const DiagonalFunction> diagonal;
    std::shared_ptr<const Matrix16> matrix;

    [[nodiscard]] bool classical() const;
    [[nodiscard]] Gate adjoint() const;
};

namespace gates {

Gate h(Qubit q);
Gate x(Qubit q);
Gate rx(Qubit q, double theta);
Gate rz(Qubit q, double theta);
Gate phase(Qubit q, double theta);
Gate cnot(Qubit control, Qubit target);
Gate toffoli(Qubit c0, Qubit c1, Qubit target);
/// Multi-controlled X; `states` is the control-state string with states[k]
/// the required value of controls[k] ('0' or '1').
Gate mcx(std::vector<Qubit> controls, const std::string &states, Qubit target);
/// Phase e^{i*theta} on |1> of `target`, conditioned on the controls.
Gate controlled_phase(std::vector<Qubit> controls, const std::string &states,
                      Qubit target, double theta);
Gate diagonal(std::vector<Qubit> targets, double gamma,
              std::shared_ptr<const DiagonalFunction> f);
/// Throws ValidationError if `m` is not unitary to 1e-12.
Gate unitary4(std::array<Qubit, 4> targets, const Matrix16 &m);

} // namespace gates

/// Ordered gate list over a fixed register width.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(int width) : width_(width) {}

    [[nodiscard]] int width() const { return width_; }
    [[nodiscard]] const std::vector<Gate> &gates() const { return gates_; }
    [[nodiscard]] std::size_t size() const { return gates_.size(); }
    [[nodiscard]] bool empty() const { return gates_.empty(); }

    Circuit &add(Gate g);
    Circuit &append(const Circuit &other);

    [[nodiscard]] Circuit adjoint() const;
    /// Maps local qubit k to mapping[k] in a circuit of width `new_width`.
    [[nodiscard]] Circuit remapped(std::span<const Qubit> mapping,
                                   int new_width) const;
    /// Adds the given controls (with states) to every gate.
    [[nodiscard]] Circuit controlled_by(std::span<const Qubit> controls,
                                        const std::string &states) const;
    [[nodiscard]] bool classical() const;
    /// One gate per line: `KIND targets... [controls.../mask] [params...]`.
    [[nodiscard]] std::string dump() const;

    /// Gate tally keyed by kind name.
    [[nodiscard]] std::map<std::string, std::size_t> tally() const;

  private:
    int width_ = 0;
    std::vector<Gate> gates_;
};

[[nodiscard]] const char *kind_name(GateKind k);

inline constexpr int kMaxDenseQubits = 26;

class DenseState {
  public:
    /// |0...0> on n qubits. Throws ResourceError above kMaxDenseQubits.
    explicit DenseState(int n);
    static DenseState basis(int n, std::uint64_t label);

    [[nodiscard]] int num_qubits() const { return n_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amp_; }
    [[nodiscard]] std::span<Complex> amplitudes() { return amp_; }
    [[nodiscard]] Complex amplitude(std::uint64_t index) const {
        return amp_[index];
    }
    [[nodiscard]] double norm() const;

    void apply(const Gate &g);
    void apply(const Circuit &c);

  private:
    void apply_single(const Gate &g, const std::array<Complex, 4> &m);
    void apply_x(const Gate &g);
    void apply_diagonal(const Gate &g);
    void apply_unitary4(const Gate &g);

    int n_;
    std::vector<Complex> amp_;
};

[[nodiscard]] DenseState apply(DenseState state, const Circuit &c);

/// Propagates a basis label through a classical-reversible circuit. Throws
/// ValidationError on any gate outside {X, CNOT, Toffoli, MCX}.
[[nodiscard]] std::uint64_t reversible_eval(std::uint64_t label,
                                            const Circuit &c);

/// |d> -> |(d+1) mod 2^n> on qubits 0..n-1.
[[nodiscard]] Circuit build_increment(int n);
/// |d> -> |(d+k) mod 2^n>: one [+1] on qubits b..n-1 per set bit b of k.
[[nodiscard]] Circuit build_add_const(int n, std::uint64_t k);
/// Adjoint of build_add_const.
[[nodiscard]] Circuit build_sub_const(int n, std::uint64_t k);
/// Flips `target` iff qubits 0..k_width-1 encode a value greater than q.
/// One MCX per zero bit of q, highest bit first. The circuit width is
/// max(k_width, target + 1).
[[nodiscard]] Circuit build_compare_flip(int k_width, std::uint64_t q,
                                         Qubit target);

/// RX(theta) on every qubit of a 2^n amplitude vector, applied in
/// cache-sized blocks.
void apply_rx_all(std::span<Complex> amplitudes, int n, double theta);

/// Marginal probabilities over `subset`; entry index bit k is subset[k].
[[nodiscard]] std::vector<double> marginal(const DenseState &s,
                                           std::span<const Qubit> subset);
/// Marginal as bitstring -> probability (leftmost character = last subset
/// qubit). Entries at or below `threshold` are dropped.
[[nodiscard]] std::map<std::string, double>
probabilities(const DenseState &s, std::span<const Qubit> subset,
              double threshold = 1e-15);

} // namespace cvrpaoa
