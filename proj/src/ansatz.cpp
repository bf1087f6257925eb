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
#include "cvrpaoa/ansatz.hpp"

#include "cvrpaoa/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace cvrpaoa {

Mixer parse_mixer(std::string_view text) {
    if (text == "grover") {
        return Mixer::Grover;
    }
    if (text == "ring") {
        return Mixer::Ring;
    }
    throw ValidationError("unknown mixer '" + std::string(text) +
                          "' (expected grover or ring)");
}

Backend parse_backend(std::string_view text) {
    if (text == "gate") {
        return Backend::Gate;
    }
    if (text == "subspace") {
        return Backend::Subspace;
    }
    throw ValidationError("unknown backend '" + std::string(text) +
                          "' (expected gate or subspace)");
}

const char *mixer_name(Mixer m) { return m == Mixer::Grover ? "grover" : "ring"; }

const char *backend_name(Backend b) {
    return b == Backend::Gate ? "gate" : "subspace";
}

int demand_register_width(int capacity, int max_demand) {
    if (capacity < 1 || max_demand < 0) {
        throw ValidationError("capacity must be positive");
    }
    return static_cast<int>(
        std::bit_width(static_cast<unsigned>(capacity + max_demand)));
}

RegisterLayout RegisterLayout::make(int n, int capacity, int max_demand) {
    if (n < 1) {
        throw ValidationError("layout needs at least one customer");
    }
    RegisterLayout l;
    l.n = n;
    l.k = demand_register_width(capacity, max_demand);
    l.x0 = 0;
    l.y0 = n * n;
    l.a0 = l.y0 + (n - 1);
    l.d0 = l.a0 + (n - 1);
    l.c0 = l.d0 + l.k;
    l.r0 = l.c0 + n;
    l.total = l.r0 + l.r_width();
    return l;
}

RegisterLayout RegisterLayout::make(const Instance &inst) {
    return make(inst.num_customers(), inst.capacity(), inst.max_demand());
}

std::vector<Qubit> RegisterLayout::decision_qubits() const {
    std::vector<Qubit> q(static_cast<std::size_t>(decision_width()));
    std::iota(q.begin(), q.end(), 0);
    return q;
}

std::vector<Qubit> RegisterLayout::ancilla_qubits() const {
    std::vector<Qubit> q(static_cast<std::size_t>(total - a0));
    std::iota(q.begin(), q.end(), a0);
    return q;
}

std::vector<Qubit> RegisterLayout::d_qubits() const {
    std::vector<Qubit> q(static_cast<std::size_t>(k));
    std::iota(q.begin(), q.end(), d0);
    return q;
}

QubitBudget qubit_budget(int n, int capacity, int max_demand) {
    const auto l = RegisterLayout::make(n, capacity, max_demand);
    QubitBudget b;
    b.x = n * n;
    b.y = n - 1;
    b.a = n - 1;
    b.d = l.k;
    b.c = n;
    b.r = l.r_width();
    b.total = b.x + b.y + b.a + b.d + b.c + b.r;
    b.closed_form_total = 2LL * n * n - l.k - 2;
    b.mismatch = b.closed_form_total != b.total;
    return b;
}

namespace {

/// Real rotation by theta in the plane spanned by basis indices 3 and 12.
Matrix16 pair_rotation(double cos_t, Complex off_lower, Complex off_upper) {
    Matrix16 m{};
    for (int s = 0; s < 16; ++s) {
        m[s * 16 + s] = 1.0;
    }
    m[3 * 16 + 3] = cos_t;
    m[12 * 16 + 12] = cos_t;
    m[12 * 16 + 3] = off_lower;
    m[3 * 16 + 12] = off_upper;
    return m;
}

} // namespace

Circuit build_perm_prep(int n) {
    if (n < 1) {
        throw ValidationError("permutation preparation needs N >= 1");
    }
    const auto idx = [n](int t, int i) { return (t - 1) * n + (i - 1); };
    Circuit c(n * n);
    for (int k = 1; k <= n; ++k) {
        c.add(gates::x(idx(k, k)));
    }
    // Row k starts on column k; each earlier row j trades places with it
    // with probability 1/(k-j+1) given no earlier row did.
    for (int k = 2; k <= n; ++k) {
        for (int j = 1; j < k; ++j) {
            const double s = 1.0 / std::sqrt(static_cast<double>(k - j + 1));
            const double co = std::sqrt(1.0 - s * s);
            const Matrix16 m = pair_rotation(co, s, -s);
            for (int u = 1; u < k; ++u) {
                c.add(gates::unitary4(
                    {idx(j, u), idx(k, k), idx(j, k), idx(k, u)}, m));
            }
        }
    }
    return c;
}

Circuit build_prep(int n) {
    const auto layout = bit_layout(n);
    Circuit c = build_perm_prep(n);
    Circuit out(layout.width());
    out.append(c);
    for (int t = 2; t <= n; ++t) {
        out.add(gates::h(layout.y_index(t)));
    }
    return out;
}

namespace {

Circuit encoder_impl(const RegisterLayout &l, std::span<const int> demands,
                     std::uint64_t threshold) {
    const int n = l.n;
    if (static_cast<int>(demands.size()) != n) {
        throw ValidationError("demand vector does not match the layout");
    }
    std::vector<Qubit> d = l.d_qubits();
    Circuit c(l.total);
    const auto add_controlled = [&](const Circuit &local,
                                    std::vector<Qubit> controls,
                                    const std::string &states) {
        c.append(local.remapped(d, l.total).controlled_by(controls, states));
    };
    for (int t = 1; t <= n; ++t) {
        for (int i = 1; i <= n; ++i) {
            add_controlled(build_add_const(l.k, demands[i - 1]), {l.x(t, i)},
                           "1");
        }
        if (t >= 2) {
            c.add(gates::cnot(l.y(t), l.a(t)));
            std::vector<Qubit> map = d;
            map.push_back(l.a(t));
            const Circuit cmp = build_compare_flip(l.k, threshold, l.k);
            const std::vector<Qubit> ctl{l.y(t)};
            c.append(cmp.remapped(map, l.total).controlled_by(ctl, "0"));
        }
        if (t >= 2 && t <= n - 1) {
            for (int i = 1; i <= n; ++i) {
                add_controlled(build_sub_const(l.k, demands[i - 1]),
                               {l.c(i), l.a(t)}, "11");
            }
            for (int i = 1; i <= n; ++i) {
                if (t == 2) {
                    c.add(gates::toffoli(l.x(1, i), l.a(2), l.c(i)));
                } else {
                    c.add(gates::toffoli(l.c(i), l.a(t), l.r(t, i)));
                    c.add(gates::cnot(l.r(t, i), l.c(i)));
                }
            }
        }
        if (t < n) {
            for (int i = 1; i <= n; ++i) {
                c.add(gates::cnot(l.x(t, i), l.c(i)));
            }
        }
    }
    return c;
}

} // namespace

Circuit build_condition_encoder(const RegisterLayout &layout,
                                std::span<const int> demands, int capacity) {
    const std::uint64_t limit = std::uint64_t{1} << layout.k;
    if (capacity < 1 || static_cast<std::uint64_t>(capacity) >= limit) {
        throw ValidationError("capacity does not fit the demand register");
    }
    for (int q : demands) {
        if (q < 0 || q > capacity) {
            throw ValidationError("demand outside [0, capacity]");
        }
    }
    int max_q = demands.empty() ? 0 : *std::max_element(demands.begin(), demands.end());
    if (demand_register_width(capacity, max_q) > layout.k) {
        throw ValidationError("demand register too narrow for Q + max(q)");
    }
    return encoder_impl(layout, demands, static_cast<std::uint64_t>(capacity));
}

Circuit build_condition_encoder(const Instance &inst) {
    return build_condition_encoder(RegisterLayout::make(inst), inst.demands(),
                                   inst.capacity());
}

std::vector<Qubit> cost_diagonal_targets(const RegisterLayout &l) {
    std::vector<Qubit> t;
    for (int q = 0; q < l.n * l.n; ++q) {
        t.push_back(l.x0 + q);
    }
    for (int s = 2; s <= l.n; ++s) {
        t.push_back(l.a(s));
    }
    return t;
}

std::shared_ptr<const DiagonalFunction> cost_diagonal(const Instance &inst) {
    const int n = inst.num_customers();
    const int nx = n * n;
    const DistanceMatrix w = inst.distance();
    return std::make_shared<const DiagonalFunction>(
        nx + n - 1, [n, nx, w](std::uint64_t sub) {
            Bits x(static_cast<std::size_t>(nx));
            Bits a(static_cast<std::size_t>(n - 1));
            for (int k = 0; k < nx; ++k) {
                x[k] = (sub >> k) & 1U;
            }
            for (int k = 0; k < n - 1; ++k) {
                a[k] = (sub >> (nx + k)) & 1U;
            }
            return cost_polynomial(x, a, w, n);
        });
}

Circuit build_phase_separation(const Instance &inst, double gamma) {
    return AnsatzBuilder(inst).phase_separation(gamma);
}

Circuit build_grover_mixer(int n, double beta) {
    const Circuit prep = build_prep(n);
    const int width = prep.width();
    Circuit c(width);
    c.append(prep.adjoint());
    std::vector<Qubit> controls;
    for (int q = 1; q < width; ++q) {
        controls.push_back(q);
    }
    c.add(gates::x(0));
    c.add(gates::controlled_phase(controls, std::string(controls.size(), '0'),
                                  0, -beta));
    c.add(gates::x(0));
    c.append(prep);
    return c;
}

Matrix16 ring_term_unitary(double beta) {
    using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
    Eigen::Matrix2cd sp;
    sp << 0.0, 2.0, 0.0, 0.0;  // X + iY
    const Eigen::Matrix2cd sm = sp.adjoint();
    // Qubit k of the term is bit k of the basis index, so the first factor
    // of the Kronecker product is the last target.
    const auto kron4 = [](const Eigen::Matrix2cd &q0, const Eigen::Matrix2cd &q1,
                          const Eigen::Matrix2cd &q2, const Eigen::Matrix2cd &q3) {
        Mat m = Mat::Ones(1, 1);
        for (const auto *f : {&q3, &q2, &q1, &q0}) {
            Mat next(m.rows() * 2, m.cols() * 2);
            for (Eigen::Index r = 0; r < m.rows(); ++r) {
                for (Eigen::Index c = 0; c < m.cols(); ++c) {
                    next.block(r * 2, c * 2, 2, 2) = m(r, c) * (*f);
                }
            }
            m = std::move(next);
        }
        return m;
    };
    const Mat h = kron4(sp, sp, sm, sm) + kron4(sm, sm, sp, sp);
    Eigen::SelfAdjointEigenSolver<Mat> eig(h);
    const Mat &v = eig.eigenvectors();
    Eigen::VectorXcd phases(16);
    for (int k = 0; k < 16; ++k) {
        phases[k] = std::polar(1.0, -beta * eig.eigenvalues()[k]);
    }
    const Mat u = v * phases.asDiagonal() * v.adjoint();
    Matrix16 out{};
    for (int r = 0; r < 16; ++r) {
        for (int c = 0; c < 16; ++c) {
            out[r * 16 + c] = u(r, c);
        }
    }
    return out;
}

Circuit build_ring_mixer(int n, double beta) {
    if (n < 2) {
        throw ValidationError("ring mixer needs N >= 2");
    }
    const auto layout = bit_layout(n);
    const Matrix16 m = ring_term_unitary(beta);
    Circuit c(layout.width());
    for (int i = 1; i <= n; ++i) {
        const int j = i % n + 1;
        for (int u = 1; u <= n; ++u) {
            for (int v = u + 1; v <= n; ++v) {
                c.add(gates::unitary4({layout.x_index(i, u), layout.x_index(j, v),
                                       layout.x_index(i, v), layout.x_index(j, u)},
                                      m));
            }
        }
    }
    for (int t = 2; t <= n; ++t) {
        c.add(gates::rx(layout.y_index(t), 2.0 * beta));
    }
    return c;
}

AnsatzBuilder::AnsatzBuilder(const Instance &inst)
    : n_(inst.num_customers()), layout_(RegisterLayout::make(inst)) {
    if (n_ < 2) {
        throw ValidationError("the ansatz needs N >= 2");
    }
    prep_ = build_prep(n_);
    prep_adjoint_ = prep_.adjoint();
    encoder_ = build_condition_encoder(inst);
    encoder_adjoint_ = encoder_.adjoint();
    diagonal_ = cost_diagonal(inst);
    diagonal_targets_ = cost_diagonal_targets(layout_);
}

Circuit AnsatzBuilder::phase_separation(double gamma) const {
    Circuit c(layout_.total);
    c.append(encoder_);
    c.add(gates::diagonal(diagonal_targets_, gamma, diagonal_));
    c.append(encoder_adjoint_);
    return c;
}

Circuit AnsatzBuilder::mixer(Mixer m, double beta) const {
    if (m == Mixer::Ring) {
        return build_ring_mixer(n_, beta);
    }
    const int width = prep_.width();
    Circuit c(width);
    c.append(prep_adjoint_);
    std::vector<Qubit> controls;
    for (int q = 1; q < width; ++q) {
        controls.push_back(q);
    }
    c.add(gates::x(0));
    c.add(gates::controlled_phase(controls, std::string(controls.size(), '0'),
                                  0, -beta));
    c.add(gates::x(0));
    c.append(prep_);
    return c;
}

Circuit AnsatzBuilder::ansatz(Mixer m, std::span<const double> gammas,
                              std::span<const double> betas) const {
    if (gammas.size() != betas.size()) {
        throw ValidationError("gamma and beta vectors differ in length");
    }
    if (gammas.empty()) {
        throw ValidationError("ansatz depth must be at least 1");
    }
    Circuit c(layout_.total);
    c.append(prep_);
    for (std::size_t j = 0; j < gammas.size(); ++j) {
        c.append(phase_separation(gammas[j]));
        c.append(mixer(m, betas[j]));
    }
    return c;
}

Circuit build_ansatz(const Instance &inst, Mixer m, std::span<const double> gammas,
                     std::span<const double> betas) {
    return AnsatzBuilder(inst).ansatz(m, gammas, betas);
}

GateCounts &GateCounts::operator+=(const GateCounts &o) {
    toffoli += o.toffoli;
    cnot += o.cnot;
    single += o.single;
    return *this;
}

GateCounts operator*(std::uint64_t k, GateCounts g) {
    g.toffoli *= k;
    g.cnot *= k;
    g.single *= k;
    return g;
}

namespace {

// Pauli expansion of a 4-body term: 8 weight-4 strings, each a CNOT ladder
// around one RZ with basis changes on every qubit.
constexpr GateCounts kFourQubitTerm{0, 8 * 6, 8 * (1 + 8)};

std::uint64_t zero_controls(const Gate &g) {
    const auto m = static_cast<unsigned>(g.controls.size());
    const std::uint64_t mask =
        m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
    return m - static_cast<unsigned>(std::popcount(g.control_states & mask));
}

/// Pauli strings of a product of k binary variables, CNOT-ladder each.
GateCounts monomial_counts(int k) {
    GateCounts g;
    std::uint64_t binom = 1;
    for (int s = 1; s <= k; ++s) {
        binom = binom * static_cast<std::uint64_t>(k - s + 1) / static_cast<std::uint64_t>(s);
        g.cnot += binom * 2 * static_cast<std::uint64_t>(s - 1);
        g.single += binom;
    }
    return g;
}

} // namespace

GateCounts decomposed_counts(const Gate &g) {
    GateCounts out;
    const std::uint64_t m = g.controls.size();
    out.single += 2 * zero_controls(g);
    switch (g.kind) {
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::Toffoli:
    case GateKind::MCX:
        if (m == 0) {
            out.single += 1;
        } else if (m == 1) {
            out.cnot += 1;
        } else {
            out.toffoli += 2 * (m - 2) + 1;
        }
        break;
    case GateKind::H:
    case GateKind::RX:
    case GateKind::RZ:
    case GateKind::Phase:
        if (m == 0) {
            out.single += 1;
        } else {
            // Compute the control conjunction into one ancilla, then a
            // controlled rotation (2 CNOT + 3 single).
            out.toffoli += m >= 2 ? 2 * (2 * (m - 2) + 1) : 0;
            out.cnot += 2;
            out.single += 3;
        }
        break;
    case GateKind::FourQubitUnitary:
        out += kFourQubitTerm;
        if (m > 0) {
            out.toffoli += 2 * (2 * (m - 1) + 1);
        }
        break;
    case GateKind::DiagonalPhase:
        // Counted from the cost polynomial by gate_count_report.
        break;
    }
    return out;
}

GateCounts decomposed_counts(const Circuit &c) {
    GateCounts out;
    for (const auto &g : c.gates()) {
        out += decomposed_counts(g);
    }
    return out;
}

GateCountReport gate_count_report(int n, int capacity, int p, Mixer mixer) {
    if (n < 2 || capacity < 1 || p < 0) {
        throw ValidationError("gate count report needs N >= 2, Q >= 1, p >= 0");
    }
    GateCountReport r;
    r.n = n;
    r.capacity = capacity;
    r.p = p;
    r.mixer = mixer;

    // Worst-case demands: every adder uses all low bits and the comparator
    // uses its full width.
    const int low = static_cast<int>(std::bit_width(static_cast<unsigned>(capacity)));
    const int envelope = (1 << low) - 1;
    const auto layout = RegisterLayout::make(n, capacity, capacity);
    const std::vector<int> demands(static_cast<std::size_t>(n), envelope);
    r.prep = decomposed_counts(build_prep(n));
    r.encoder = decomposed_counts(encoder_impl(layout, demands, 0));

    // Cost polynomial: first and last legs (degree 1), depot legs x*a
    // (degree 2), and (1-a_t) x_{t-1,i} x_{t,j} for i != j (degrees 2, 3).
    const auto nn = static_cast<std::uint64_t>(n);
    r.diagonal += (2 * nn) * monomial_counts(1);
    r.diagonal += (2 * nn * (nn - 1)) * monomial_counts(2);
    const std::uint64_t pairs = (nn - 1) * nn * (nn - 1);
    r.diagonal += pairs * monomial_counts(2);
    r.diagonal += pairs * monomial_counts(3);

    r.mixer_layer = mixer == Mixer::Grover
                        ? decomposed_counts(build_grover_mixer(n, 1.0))
                        : decomposed_counts(build_ring_mixer(n, 1.0));
    r.per_layer = 2 * r.encoder;
    r.per_layer += r.diagonal;
    r.per_layer += r.mixer_layer;
    r.layers = static_cast<std::uint64_t>(p) * r.per_layer;
    r.total = r.prep;
    r.total += r.layers;
    return r;
}

} // namespace cvrpaoa
