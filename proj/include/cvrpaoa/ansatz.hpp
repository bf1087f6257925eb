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
 * AOA circuit construction over the register layout x, y, a, d, c, r.
 *
 * The decision registers come first, so a circuit over decision qubits
 * embeds into the full layout without remapping.
 */
#pragma once

#include "cvrpaoa/cvrp.hpp"
#include "cvrpaoa/encoding.hpp"
#include "cvrpaoa/statevector.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cvrpaoa {

enum class Mixer { Grover, Ring };
enum class Backend { Gate, Subspace };

[[nodiscard]] Mixer parse_mixer(std::string_view text);
[[nodiscard]] Backend parse_backend(std::string_view text);
[[nodiscard]] const char *mixer_name(Mixer m);
[[nodiscard]] const char *backend_name(Backend b);

/// ceil(log2(Q + max_q + 1)).
[[nodiscard]] int demand_register_width(int capacity, int max_demand);

struct RegisterLayout {
    int n = 0;
    /// Width of d.
    int k = 0;
    int x0 = 0, y0 = 0, a0 = 0, d0 = 0, c0 = 0, r0 = 0;
    int total = 0;

    static RegisterLayout make(int n, int capacity, int max_demand);
    static RegisterLayout make(const Instance &inst);

    [[nodiscard]] Qubit x(int t, int i) const { return x0 + (t - 1) * n + (i - 1); }
    [[nodiscard]] Qubit y(int t) const { return y0 + (t - 2); }
    [[nodiscard]] Qubit a(int t) const { return a0 + (t - 2); }
    [[nodiscard]] Qubit d(int bit) const { return d0 + bit; }
    [[nodiscard]] Qubit c(int i) const { return c0 + (i - 1); }
    /// Scratch for recovering c at step t, 3 <= t <= N-1.
    [[nodiscard]] Qubit r(int t, int i) const { return r0 + (t - 3) * n + (i - 1); }

    [[nodiscard]] int decision_width() const { return n * n + n - 1; }
    [[nodiscard]] int r_width() const { return n > 3 ? (n - 3) * n : 0; }
    [[nodiscard]] std::vector<Qubit> decision_qubits() const;
    [[nodiscard]] std::vector<Qubit> ancilla_qubits() const;
    [[nodiscard]] std::vector<Qubit> d_qubits() const;
};

struct QubitBudget {
    int x = 0, y = 0, a = 0, d = 0, c = 0, r = 0;
    int total = 0;
    /// 2N^2 - ceil(log2(Q+max(q)+1)) - 2 closed form.
    long long closed_form_total = 0;
    bool mismatch = false;
};

[[nodiscard]] QubitBudget qubit_budget(int n, int capacity, int max_demand);

/// Uniform superposition of all N x N permutation matrices on N^2 qubits
/// (local index (t-1)*N + (i-1)).
[[nodiscard]] Circuit build_perm_prep(int n);
/// Permutation preparation plus H on every y qubit, over the decision width.
[[nodiscard]] Circuit build_prep(int n);
/// Classical-reversible circuit writing the depot-visit flags into a.
[[nodiscard]] Circuit build_condition_encoder(const RegisterLayout &layout,
                                              std::span<const int> demands,
                                              int capacity);
[[nodiscard]] Circuit build_condition_encoder(const Instance &inst);
/// Diagonal e^{-i*gamma*cost(x,a)} over the x and a registers.
[[nodiscard]] std::shared_ptr<const DiagonalFunction>
cost_diagonal(const Instance &inst);
[[nodiscard]] std::vector<Qubit> cost_diagonal_targets(const RegisterLayout &l);
[[nodiscard]] Circuit build_phase_separation(const Instance &inst, double gamma);
/// Grover mixer over the decision registers.
[[nodiscard]] Circuit build_grover_mixer(int n, double beta);
/// exp(-i*beta*H_S) for one ring term, targets ordered
/// (x_{i,u}, x_{j,v}, x_{i,v}, x_{j,u}).
[[nodiscard]] Matrix16 ring_term_unitary(double beta);
/// Ring pairs visited in order: i = 1..N with j = i % N + 1.
[[nodiscard]] Circuit build_ring_mixer(int n, double beta);

/// Caches U_S, U_E and the cost diagonal for one instance.
class AnsatzBuilder {
  public:
    explicit AnsatzBuilder(const Instance &inst);

    [[nodiscard]] const RegisterLayout &layout() const { return layout_; }
    [[nodiscard]] const Circuit &prep() const { return prep_; }
    [[nodiscard]] const Circuit &encoder() const { return encoder_; }
    [[nodiscard]] Circuit phase_separation(double gamma) const;
    [[nodiscard]] Circuit mixer(Mixer m, double beta) const;
    /// U_S followed by p rounds of U_P(gamma_j), U_M(beta_j).
    [[nodiscard]] Circuit ansatz(Mixer m, std::span<const double> gammas,
                                 std::span<const double> betas) const;

  private:
    int n_;
    RegisterLayout layout_;
    Circuit prep_;
    Circuit prep_adjoint_;
    Circuit encoder_;
    Circuit encoder_adjoint_;
    std::shared_ptr<const DiagonalFunction> diagonal_;
    std::vector<Qubit> diagonal_targets_;
};

[[nodiscard]] Circuit build_ansatz(const Instance &inst, Mixer m,
                                  std::span<const double> gammas,
                                  std::span<const double> betas);

struct GateCounts {
    std::uint64_t toffoli = 0;
    std::uint64_t cnot = 0;
    std::uint64_t single = 0;

    [[nodiscard]] std::uint64_t total() const { return toffoli + cnot + single; }
    GateCounts &operator+=(const GateCounts &o);
    friend GateCounts operator*(std::uint64_t k, GateCounts g);
    friend bool operator==(const GateCounts &, const GateCounts &) = default;
};

/// Notional counts after decomposition to {Toffoli, CNOT, single-qubit}.
/// Demands are taken at their worst case for the given capacity, so the
/// report only depends on (N, Q, p, mixer).
struct GateCountReport {
    int n = 0;
    int capacity = 0;
    int p = 0;
    Mixer mixer = Mixer::Grover;
    GateCounts prep;
    /// One U_E; each phase separation uses it twice.
    GateCounts encoder;
    GateCounts diagonal;
    GateCounts mixer_layer;
    GateCounts per_layer;
    /// p * per_layer.
    GateCounts layers;
    /// prep + layers.
    GateCounts total;
};

[[nodiscard]] GateCountReport gate_count_report(int n, int capacity, int p,
                                                Mixer mixer = Mixer::Grover);
/// Notional decomposition of a single gate.
[[nodiscard]] GateCounts decomposed_counts(const Gate &g);
[[nodiscard]] GateCounts decomposed_counts(const Circuit &c);

} // namespace cvrpaoa
