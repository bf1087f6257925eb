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
#include "cvrpaoa/statevector.hpp"

#include "cvrpaoa/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace cvrpaoa {

namespace {

constexpr int kMaxTabulatedWidth = 22;

std::uint64_t parse_states(const std::string &states, std::size_t count) {
    if (states.size() != count) {
        throw ValidationError("control-state string length must match the "
                              "number of controls");
    }
    std::uint64_t mask = 0;
    for (std::size_t k = 0; k < count; ++k) {
        if (states[k] == '1') {
            mask |= std::uint64_t{1} << k;
        } else if (states[k] != '0') {
            throw ValidationError("control states must be '0' or '1'");
        }
    }
    return mask;
}

Gate single(GateKind kind, Qubit q, double angle = 0.0) {
    Gate g;
    g.kind = kind;
    g.targets = {q};
    g.angle = angle;
    return g;
}

GateKind x_kind_for(std::size_t controls) {
    switch (controls) {
    case 0:
        return GateKind::X;
    case 1:
        return GateKind::CNOT;
    case 2:
        return GateKind::Toffoli;
    default:
        return GateKind::MCX;
    }
}

bool is_x_family(GateKind k) {
    return k == GateKind::X || k == GateKind::CNOT || k == GateKind::Toffoli ||
           k == GateKind::MCX;
}

/// Spreads the bits of k over the positions not listed in `sorted`.
inline std::uint64_t insert_zeros(std::uint64_t k,
                                  std::span<const int> sorted) {
    for (int p : sorted) {
        const std::uint64_t low = k & ((std::uint64_t{1} << p) - 1);
        k = ((k >> p) << (p + 1)) | low;
    }
    return k;
}

void check_unitary(const Matrix16 &m) {
    for (int r = 0; r < 16; ++r) {
        for (int c = 0; c < 16; ++c) {
            Complex acc = 0.0;
            for (int k = 0; k < 16; ++k) {
                acc += m[r * 16 + k] * std::conj(m[c * 16 + k]);
            }
            const Complex expect = r == c ? 1.0 : 0.0;
            if (std::abs(acc - expect) > 1e-12) {
                throw ValidationError("FourQubitUnitary matrix is not unitary");
            }
        }
    }
}

} // namespace

DiagonalFunction::DiagonalFunction(int width, Callback f)
    : width_(width), f_(std::move(f)) {
    if (width < 0 || width > 63) {
        throw ValidationError("diagonal register width out of range");
    }
    if (width <= kMaxTabulatedWidth) {
        table_.resize(std::size_t{1} << width);
        for (std::uint64_t s = 0; s < table_.size(); ++s) {
            table_[s] = f_(s);
        }
    }
}

bool Gate::classical() const { return is_x_family(kind); }

Gate Gate::adjoint() const {
    Gate g = *this;
    switch (kind) {
    case GateKind::RX:
    case GateKind::RZ:
    case GateKind::Phase:
    case GateKind::DiagonalPhase:
        g.angle = -angle;
        break;
    case GateKind::FourQubitUnitary: {
        auto m = std::make_shared<Matrix16>();
        for (int r = 0; r < 16; ++r) {
            for (int c = 0; c < 16; ++c) {
                (*m)[r * 16 + c] = std::conj((*matrix)[c * 16 + r]);
            }
        }
        g.matrix = std::move(m);
        break;
    }
    default:
        break;
    }
    return g;
}

namespace gates {

Gate h(Qubit q) { return single(GateKind::H, q); }
Gate x(Qubit q) { return single(GateKind::X, q); }
Gate rx(Qubit q, double theta) { return single(GateKind::RX, q, theta); }
Gate rz(Qubit q, double theta) { return single(GateKind::RZ, q, theta); }
Gate phase(Qubit q, double theta) { return single(GateKind::Phase, q, theta); }

Gate cnot(Qubit control, Qubit target) {
    return mcx({control}, "1", target);
}

Gate toffoli(Qubit c0, Qubit c1, Qubit target) {
    return mcx({c0, c1}, "11", target);
}

Gate mcx(std::vector<Qubit> controls, const std::string &states, Qubit target) {
    Gate g;
    g.control_states = parse_states(states, controls.size());
    g.kind = x_kind_for(controls.size());
    g.controls = std::move(controls);
    g.targets = {target};
    return g;
}

Gate controlled_phase(std::vector<Qubit> controls, const std::string &states,
                      Qubit target, double theta) {
    Gate g = phase(target, theta);
    g.control_states = parse_states(states, controls.size());
    g.controls = std::move(controls);
    return g;
}

Gate diagonal(std::vector<Qubit> targets, double gamma,
              std::shared_ptr<const DiagonalFunction> f) {
    if (!f || f->width() != static_cast<int>(targets.size())) {
        throw ValidationError("diagonal function width must match its targets");
    }
    Gate g;
    g.kind = GateKind::DiagonalPhase;
    g.targets = std::move(targets);
    g.angle = gamma;
    g.diagonal = std::move(f);
    return g;
}

Gate unitary4(std::array<Qubit, 4> targets, const Matrix16 &m) {
    check_unitary(m);
    Gate g;
    g.kind = GateKind::FourQubitUnitary;
    g.targets.assign(targets.begin(), targets.end());
    g.matrix = std::make_shared<const Matrix16>(m);
    return g;
}

} // namespace gates

const char *kind_name(GateKind k) {
    switch (k) {
    case GateKind::H:
        return "H";
    case GateKind::X:
        return "X";
    case GateKind::RX:
        return "RX";
    case GateKind::RZ:
        return "RZ";
    case GateKind::Phase:
        return "PHASE";
    case GateKind::CNOT:
        return "CNOT";
    case GateKind::Toffoli:
        return "TOFFOLI";
    case GateKind::MCX:
        return "MCX";
    case GateKind::DiagonalPhase:
        return "DIAG";
    case GateKind::FourQubitUnitary:
        return "U4";
    }
    return "?";
}

Circuit &Circuit::add(Gate g) {
    for (Qubit q : g.targets) {
        width_ = std::max(width_, q + 1);
    }
    for (Qubit q : g.controls) {
        width_ = std::max(width_, q + 1);
    }
    gates_.push_back(std::move(g));
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    width_ = std::max(width_, other.width_);
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

Circuit Circuit::adjoint() const {
    Circuit out(width_);
    out.gates_.reserve(gates_.size());
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        out.gates_.push_back(it->adjoint());
    }
    return out;
}

Circuit Circuit::remapped(std::span<const Qubit> mapping, int new_width) const {
    const auto map = [&](Qubit q) {
        if (q < 0 || static_cast<std::size_t>(q) >= mapping.size()) {
            throw ValidationError("qubit mapping does not cover the circuit");
        }
        return mapping[q];
    };
    Circuit out(new_width);
    for (Gate g : gates_) {
        for (auto &q : g.targets) {
            q = map(q);
        }
        for (auto &q : g.controls) {
            q = map(q);
        }
        out.add(std::move(g));
    }
    return out;
}

Circuit Circuit::controlled_by(std::span<const Qubit> controls,
                               const std::string &states) const {
    const std::uint64_t extra = parse_states(states, controls.size());
    Circuit out(width_);
    for (Gate g : gates_) {
        const std::size_t base = g.controls.size();
        if (base + controls.size() > 64) {
            throw ValidationError("too many controls");
        }
        g.controls.insert(g.controls.end(), controls.begin(), controls.end());
        g.control_states |= extra << base;
        if (is_x_family(g.kind)) {
            g.kind = x_kind_for(g.controls.size());
        }
        out.add(std::move(g));
    }
    return out;
}

bool Circuit::classical() const {
    return std::all_of(gates_.begin(), gates_.end(),
                       [](const Gate &g) { return g.classical(); });
}

std::string Circuit::dump() const {
    std::ostringstream os;
    os << std::setprecision(17);
    for (const auto &g : gates_) {
        os << kind_name(g.kind);
        for (Qubit q : g.targets) {
            os << ' ' << q;
        }
        if (!g.controls.empty()) {
            os << " [";
            for (std::size_t k = 0; k < g.controls.size(); ++k) {
                os << (k ? " " : "") << g.controls[k];
            }
            os << '/';
            for (std::size_t k = 0; k < g.controls.size(); ++k) {
                os << ((g.control_states >> k) & 1U);
            }
            os << ']';
        }
        switch (g.kind) {
        case GateKind::RX:
        case GateKind::RZ:
        case GateKind::Phase:
        case GateKind::DiagonalPhase:
            os << ' ' << g.angle;
            break;
        case GateKind::FourQubitUnitary:
            for (int k = 0; k < 256; ++k) {
                const Complex v = (*g.matrix)[k];
                if (std::abs(v) > 1e-15) {
                    os << ' ' << k / 16 << ',' << k % 16 << ':' << v.real()
                       << ',' << v.imag();
                }
            }
            break;
        default:
            break;
        }
        os << '\n';
    }
    return os.str();
}

std::map<std::string, std::size_t> Circuit::tally() const {
    std::map<std::string, std::size_t> t;
    for (const auto &g : gates_) {
        ++t[kind_name(g.kind)];
    }
    return t;
}

DenseState::DenseState(int n) : n_(n) {
    if (n < 0) {
        throw ValidationError("qubit count must be non-negative");
    }
    if (n > kMaxDenseQubits) {
        throw ResourceError("dense simulation of " + std::to_string(n) +
                            " qubits exceeds the limit of " +
                            std::to_string(kMaxDenseQubits));
    }
    amp_.assign(std::size_t{1} << n, Complex{0.0, 0.0});
    amp_[0] = 1.0;
}

DenseState DenseState::basis(int n, std::uint64_t label) {
    DenseState s(n);
    if (label >= s.amp_.size()) {
        throw ValidationError("basis label out of range");
    }
    s.amp_[0] = 0.0;
    s.amp_[label] = 1.0;
    return s;
}

double DenseState::norm() const {
    double acc = 0.0;
    for (const auto &a : amp_) {
        acc += std::norm(a);
    }
    return std::sqrt(acc);
}

namespace {

void validate_gate(const Gate &g, int n) {
    std::uint64_t used = 0;
    const auto claim = [&](Qubit q) {
        if (q < 0 || q >= n) {
            throw ValidationError("qubit index " + std::to_string(q) +
                                  " out of range for width " +
                                  std::to_string(n));
        }
        const std::uint64_t bit = std::uint64_t{1} << q;
        if (used & bit) {
            throw ValidationError("gate uses qubit " + std::to_string(q) +
                                  " more than once");
        }
        used |= bit;
    };
    for (Qubit q : g.targets) {
        claim(q);
    }
    for (Qubit q : g.controls) {
        claim(q);
    }
}

struct ControlMask {
    std::uint64_t mask = 0;
    std::uint64_t value = 0;
};

ControlMask control_mask(const Gate &g) {
    ControlMask cm;
    for (std::size_t k = 0; k < g.controls.size(); ++k) {
        const std::uint64_t bit = std::uint64_t{1} << g.controls[k];
        cm.mask |= bit;
        if ((g.control_states >> k) & 1U) {
            cm.value |= bit;
        }
    }
    return cm;
}

std::vector<int> fixed_positions(const Gate &g) {
    std::vector<int> pos(g.targets.begin(), g.targets.end());
    pos.insert(pos.end(), g.controls.begin(), g.controls.end());
    std::sort(pos.begin(), pos.end());
    return pos;
}

} // namespace

void DenseState::apply(const Gate &g) {
    validate_gate(g, n_);
    const double half = g.angle / 2.0;
    switch (g.kind) {
    case GateKind::H: {
        const double r = 1.0 / std::numbers::sqrt2;
        apply_single(g, {Complex{r}, Complex{r}, Complex{r}, Complex{-r}});
        break;
    }
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::Toffoli:
    case GateKind::MCX:
        apply_x(g);
        break;
    case GateKind::RX: {
        const Complex c{std::cos(half), 0.0};
        const Complex s{0.0, -std::sin(half)};
        apply_single(g, {c, s, s, c});
        break;
    }
    case GateKind::RZ:
        apply_single(g, {std::polar(1.0, -half), Complex{0.0}, Complex{0.0},
                         std::polar(1.0, half)});
        break;
    case GateKind::Phase:
        apply_single(g, {Complex{1.0}, Complex{0.0}, Complex{0.0},
                         std::polar(1.0, g.angle)});
        break;
    case GateKind::DiagonalPhase:
        apply_diagonal(g);
        break;
    case GateKind::FourQubitUnitary:
        apply_unitary4(g);
        break;
    }
}

void DenseState::apply(const Circuit &c) {
    if (c.width() > n_) {
        throw ValidationError("circuit is wider than the state");
    }
    for (const auto &g : c.gates()) {
        apply(g);
    }
}

void DenseState::apply_single(const Gate &g, const std::array<Complex, 4> &m) {
    const auto cm = control_mask(g);
    const auto pos = fixed_positions(g);
    const std::uint64_t tbit = std::uint64_t{1} << g.targets[0];
    const std::uint64_t count = std::uint64_t{1} << (n_ - pos.size());
    for (std::uint64_t k = 0; k < count; ++k) {
        const std::uint64_t i0 = insert_zeros(k, pos) | cm.value;
        const std::uint64_t i1 = i0 | tbit;
        const Complex a0 = amp_[i0];
        const Complex a1 = amp_[i1];
        amp_[i0] = m[0] * a0 + m[1] * a1;
        amp_[i1] = m[2] * a0 + m[3] * a1;
    }
}

void DenseState::apply_x(const Gate &g) {
    const auto cm = control_mask(g);
    const auto pos = fixed_positions(g);
    const std::uint64_t tbit = std::uint64_t{1} << g.targets[0];
    const std::uint64_t count = std::uint64_t{1} << (n_ - pos.size());
    for (std::uint64_t k = 0; k < count; ++k) {
        const std::uint64_t i0 = insert_zeros(k, pos) | cm.value;
        std::swap(amp_[i0], amp_[i0 | tbit]);
    }
}

void DenseState::apply_diagonal(const Gate &g) {
    const auto cm = control_mask(g);
    const auto &f = *g.diagonal;
    const std::size_t w = g.targets.size();
    for (std::uint64_t i = 0; i < amp_.size(); ++i) {
        if ((i & cm.mask) != cm.value || amp_[i] == Complex{0.0, 0.0}) {
            continue;
        }
        std::uint64_t sub = 0;
        for (std::size_t k = 0; k < w; ++k) {
            sub |= ((i >> g.targets[k]) & 1U) << k;
        }
        amp_[i] *= std::polar(1.0, -g.angle * f(sub));
    }
}

void DenseState::apply_unitary4(const Gate &g) {
    const auto cm = control_mask(g);
    const auto pos = fixed_positions(g);
    const auto &m = *g.matrix;
    std::array<std::uint64_t, 16> offset{};
    for (std::uint64_t s = 0; s < 16; ++s) {
        std::uint64_t off = 0;
        for (int k = 0; k < 4; ++k) {
            if ((s >> k) & 1U) {
                off |= std::uint64_t{1} << g.targets[k];
            }
        }
        offset[s] = off;
    }
    const std::uint64_t count = std::uint64_t{1} << (n_ - pos.size());
    std::array<Complex, 16> in{};
    for (std::uint64_t k = 0; k < count; ++k) {
        const std::uint64_t base = insert_zeros(k, pos) | cm.value;
        for (int s = 0; s < 16; ++s) {
            in[s] = amp_[base | offset[s]];
        }
        for (int r = 0; r < 16; ++r) {
            Complex acc = 0.0;
            for (int c = 0; c < 16; ++c) {
                acc += m[r * 16 + c] * in[c];
            }
            amp_[base | offset[r]] = acc;
        }
    }
}

DenseState apply(DenseState state, const Circuit &c) {
    state.apply(c);
    return state;
}

std::uint64_t reversible_eval(std::uint64_t label, const Circuit &c) {
    for (const auto &g : c.gates()) {
        if (!g.classical()) {
            throw ValidationError(std::string("gate ") + kind_name(g.kind) +
                                  " is not classical-reversible");
        }
        validate_gate(g, 64);
        const auto cm = control_mask(g);
        if ((label & cm.mask) == cm.value) {
            label ^= std::uint64_t{1} << g.targets[0];
        }
    }
    return label;
}

Circuit build_increment(int n) {
    if (n < 1) {
        throw ValidationError("increment needs n >= 1");
    }
    Circuit c(n);
    for (int j = n - 1; j >= 0; --j) {
        std::vector<Qubit> controls(static_cast<std::size_t>(j));
        for (int k = 0; k < j; ++k) {
            controls[k] = k;
        }
        c.add(gates::mcx(std::move(controls), std::string(j, '1'), j));
    }
    return c;
}

Circuit build_add_const(int n, std::uint64_t k) {
    if (n < 1 || n > 63) {
        throw ValidationError("adder width out of range");
    }
    if (k >= (std::uint64_t{1} << n)) {
        throw ValidationError("constant " + std::to_string(k) +
                              " does not fit in " + std::to_string(n) +
                              " qubits");
    }
    Circuit c(n);
    for (int b = 0; b < n; ++b) {
        if (((k >> b) & 1U) == 0) {
            continue;
        }
        std::vector<Qubit> upper;
        for (int q = b; q < n; ++q) {
            upper.push_back(q);
        }
        c.append(build_increment(n - b).remapped(upper, n));
    }
    return c;
}

Circuit build_sub_const(int n, std::uint64_t k) {
    return build_add_const(n, k).adjoint();
}

Circuit build_compare_flip(int k_width, std::uint64_t q, Qubit target) {
    if (k_width < 1 || k_width > 63) {
        throw ValidationError("comparator width out of range");
    }
    if (q >= (std::uint64_t{1} << k_width)) {
        throw ValidationError("threshold does not fit in the register");
    }
    if (target < k_width) {
        throw ValidationError("comparator target overlaps the register");
    }
    Circuit c(std::max(k_width, target + 1));
    for (int i = k_width - 1; i >= 0; --i) {
        if ((q >> i) & 1U) {
            continue;
        }
        std::vector<Qubit> controls;
        std::string states;
        for (int b = k_width - 1; b > i; --b) {
            controls.push_back(b);
            states.push_back(((q >> b) & 1U) ? '1' : '0');
        }
        controls.push_back(i);
        states.push_back('1');
        c.add(gates::mcx(std::move(controls), states, target));
    }
    return c;
}

namespace {

// RX with cos/sin split so the kernel stays in real arithmetic.
void rx_in_block(Complex *buf, int first, int last, double c, double s,
                 std::size_t size) {
    for (int q = first; q < last; ++q) {
        const std::size_t half = std::size_t{1} << q;
        for (std::size_t base = 0; base < size; base += 2 * half) {
            Complex *lo = buf + base;
            Complex *hi = lo + half;
            for (std::size_t i = 0; i < half; ++i) {
                const double r0 = lo[i].real(), i0 = lo[i].imag();
                const double r1 = hi[i].real(), i1 = hi[i].imag();
                lo[i] = Complex{c * r0 + s * i1, c * i0 - s * r1};
                hi[i] = Complex{c * r1 + s * i0, c * i1 - s * r0};
            }
        }
    }
}

} // namespace

void apply_rx_all(std::span<Complex> amplitudes, int n, double theta) {
    if (n < 0 || amplitudes.size() != (std::size_t{1} << n)) {
        throw ValidationError("amplitude vector does not hold 2^n entries");
    }
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    constexpr int kLow = 12;
    constexpr int kLane = 3;
    const int low = std::min(n, kLow);
    const std::size_t block = std::size_t{1} << low;
    for (std::size_t b = 0; b < amplitudes.size(); b += block) {
        rx_in_block(amplitudes.data() + b, 0, low, c, s, block);
    }
    const int high = n - low;
    if (high == 0) {
        return;
    }
    // Gather 2^high rows of 2^kLane contiguous lanes, mix in cache, scatter.
    const std::size_t lanes = std::size_t{1} << kLane;
    const std::size_t rows = std::size_t{1} << high;
    std::vector<Complex> buf(rows * lanes);
    for (std::size_t lo = 0; lo < block; lo += lanes) {
        for (std::size_t h = 0; h < rows; ++h) {
            const Complex *src = amplitudes.data() + (h << low) + lo;
            std::copy(src, src + lanes, buf.data() + h * lanes);
        }
        rx_in_block(buf.data(), kLane, kLane + high, c, s, buf.size());
        for (std::size_t h = 0; h < rows; ++h) {
            Complex *dst = amplitudes.data() + (h << low) + lo;
            std::copy(buf.data() + h * lanes, buf.data() + (h + 1) * lanes, dst);
        }
    }
}

std::vector<double> marginal(const DenseState &s,
                             std::span<const Qubit> subset) {
    for (Qubit q : subset) {
        if (q < 0 || q >= s.num_qubits()) {
            throw ValidationError("subset qubit out of range");
        }
    }
    if (subset.size() > 30) {
        throw ResourceError("marginal over more than 30 qubits");
    }
    std::vector<double> out(std::size_t{1} << subset.size(), 0.0);
    const auto amps = s.amplitudes();
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) {
            continue;
        }
        std::uint64_t sub = 0;
        for (std::size_t k = 0; k < subset.size(); ++k) {
            sub |= ((i >> subset[k]) & 1U) << k;
        }
        out[sub] += p;
    }
    return out;
}

std::map<std::string, double> probabilities(const DenseState &s,
                                            std::span<const Qubit> subset,
                                            double threshold) {
    const auto m = marginal(s, subset);
    std::map<std::string, double> out;
    const std::size_t w = subset.size();
    for (std::uint64_t sub = 0; sub < m.size(); ++sub) {
        if (m[sub] <= threshold) {
            continue;
        }
        std::string key(w, '0');
        for (std::size_t k = 0; k < w; ++k) {
            key[w - 1 - k] = ((sub >> k) & 1U) ? '1' : '0';
        }
        out.emplace(std::move(key), m[sub]);
    }
    return out;
}

} // namespace cvrpaoa
