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
#include "cvrpaoa/encoding.hpp"

#include "cvrpaoa/errors.hpp"

#include <algorithm>
#include <numeric>

namespace cvrpaoa {

void Encoding::validate() const {
    const int n = size();
    if (n < 1) {
        throw ValidationError("encoding needs at least one time step");
    }
    std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int c : order) {
        if (c < 1 || c > n || seen[c]++ != 0) {
            throw ValidationError("x is not a permutation matrix");
        }
    }
    if (static_cast<int>(returns.size()) != n - 1) {
        throw ValidationError("y must have N-1 bits");
    }
    for (auto b : returns) {
        if (b > 1) {
            throw ValidationError("y bits must be 0 or 1");
        }
    }
}

DecisionLayout bit_layout(int n) {
    if (n < 1) {
        throw ValidationError("layout needs N >= 1");
    }
    return DecisionLayout{n};
}

Bits decision_bits(const Encoding &enc) {
    const int n = enc.size();
    const auto lay = bit_layout(n);
    Bits bits(static_cast<std::size_t>(lay.width()), 0);
    for (int t = 1; t <= n; ++t) {
        bits[lay.x_index(t, enc.customer_at(t))] = 1;
    }
    for (int t = 2; t <= n; ++t) {
        bits[lay.y_index(t)] = enc.returns[t - 2];
    }
    return bits;
}

std::string to_bitstring(std::span<const std::uint8_t> bits) {
    std::string s(bits.size(), '0');
    for (std::size_t k = 0; k < bits.size(); ++k) {
        s[bits.size() - 1 - k] = bits[k] ? '1' : '0';
    }
    return s;
}

std::string to_bitstring(const Encoding &enc) {
    return to_bitstring(decision_bits(enc));
}

Bits from_bitstring(std::string_view text) {
    Bits bits(text.size());
    for (std::size_t k = 0; k < text.size(); ++k) {
        const char ch = text[text.size() - 1 - k];
        if (ch != '0' && ch != '1') {
            throw ValidationError("bitstring may only contain 0 and 1");
        }
        bits[k] = ch == '1';
    }
    return bits;
}

bool is_feasible_bits(std::span<const std::uint8_t> bits, int n) {
    const auto lay = bit_layout(n);
    if (static_cast<int>(bits.size()) != lay.width()) {
        return false;
    }
    for (int t = 1; t <= n; ++t) {
        int row = 0;
        int col = 0;
        for (int i = 1; i <= n; ++i) {
            row += bits[lay.x_index(t, i)];
            col += bits[lay.x_index(i, t)];
        }
        if (row != 1 || col != 1) {
            return false;
        }
    }
    return true;
}

Encoding encoding_from_bits(std::span<const std::uint8_t> bits, int n) {
    const auto lay = bit_layout(n);
    if (static_cast<int>(bits.size()) != lay.width()) {
        throw ValidationError("decision bits have the wrong width");
    }
    if (!is_feasible_bits(bits, n)) {
        throw ValidationError("x is not a permutation matrix");
    }
    Encoding enc;
    for (int t = 1; t <= n; ++t) {
        for (int i = 1; i <= n; ++i) {
            if (bits[lay.x_index(t, i)]) {
                enc.order.push_back(i);
            }
        }
    }
    for (int t = 2; t <= n; ++t) {
        enc.returns.push_back(bits[lay.y_index(t)]);
    }
    return enc;
}

Solution decode(const Encoding &enc, std::span<const int> demands,
                int capacity) {
    enc.validate();
    const int n = enc.size();
    if (static_cast<int>(demands.size()) != n) {
        throw ValidationError("demand count does not match the encoding");
    }
    std::vector<Edge> s;
    int i = enc.customer_at(1);
    s.emplace_back(0, i);
    int load = demands[i - 1];
    for (int t = 2; t <= n; ++t) {
        const int j = enc.customer_at(t);
        if (load + demands[j - 1] <= capacity && !enc.y(t)) {
            s.emplace_back(i, j);
            load += demands[j - 1];
        } else {
            s.emplace_back(i, 0);
            s.emplace_back(0, j);
            load = demands[j - 1];
        }
        i = j;
    }
    s.emplace_back(i, 0);
    return Solution(std::move(s));
}

double route_cost(const Encoding &enc, const Instance &inst) {
    return solution_cost(decode(enc, inst.demands(), inst.capacity()),
                         inst.distance());
}

ConditionTrace condition_trace(const Encoding &enc,
                               std::span<const int> demands, int capacity) {
    enc.validate();
    const int n = enc.size();
    if (static_cast<int>(demands.size()) != n) {
        throw ValidationError("demand count does not match the encoding");
    }
    ConditionTrace tr;
    tr.a.assign(static_cast<std::size_t>(n - 1), 0);
    std::vector<std::uint8_t> c(static_cast<std::size_t>(n) + 1, 0);
    int d = 0;
    for (int t = 1; t <= n; ++t) {
        const int cur = enc.customer_at(t);
        d += demands[cur - 1];
        if (t != 1) {
            std::uint8_t at = 0;
            if (d > capacity && !enc.y(t)) {
                at = 1;
            }
            if (enc.y(t)) {
                at = 1;
            }
            tr.a[t - 2] = at;
            if (t != n && at) {
                for (int i = 1; i <= n; ++i) {
                    if (c[i]) {
                        d -= demands[i - 1];
                    }
                }
                std::fill(c.begin(), c.end(), 0);
            }
        }
        if (t != n) {
            c[cur] = 1;
        }
        tr.d_values.push_back(d);
        std::vector<int> logged;
        for (int i = 1; i <= n; ++i) {
            if (c[i]) {
                logged.push_back(i);
            }
        }
        tr.c_sets.push_back(std::move(logged));
    }
    return tr;
}

double cost_polynomial(std::span<const std::uint8_t> x_bits,
                       std::span<const std::uint8_t> a_bits,
                       const DistanceMatrix &w, int n) {
    const auto x = [&](int t, int i) -> double {
        return x_bits[(t - 1) * n + (i - 1)];
    };
    double total = 0.0;
    for (int i = 1; i <= n; ++i) {
        total += w(0, i) * x(1, i) + w(i, 0) * x(n, i);
    }
    for (int t = 2; t <= n; ++t) {
        const double at = a_bits[t - 2];
        double chain = 0.0;
        double legs = 0.0;
        for (int i = 1; i <= n; ++i) {
            legs += w(i, 0) * x(t - 1, i) + w(0, i) * x(t, i);
            for (int j = 1; j <= n; ++j) {
                if (i != j) {
                    chain += w(i, j) * x(t - 1, i) * x(t, j);
                }
            }
        }
        total += (1.0 - at) * chain + at * legs;
    }
    return total;
}

double reformulated_cost(std::span<const std::uint8_t> x_bits,
                         std::span<const std::uint8_t> a_bits,
                         const Instance &inst) {
    const int n = inst.num_customers();
    if (static_cast<int>(x_bits.size()) != n * n ||
        static_cast<int>(a_bits.size()) != n - 1) {
        throw ValidationError("x needs N*N bits and a needs N-1 bits");
    }
    Bits padded(x_bits.begin(), x_bits.end());
    padded.resize(static_cast<std::size_t>(n * n + n - 1), 0);
    if (!is_feasible_bits(padded, n)) {
        throw ValidationError("x is not a permutation matrix");
    }
    for (auto b : a_bits) {
        if (b > 1) {
            throw ValidationError("a bits must be 0 or 1");
        }
    }
    return cost_polynomial(x_bits, a_bits, inst.distance(), n);
}

FeasibleSet::FeasibleSet(int n) : n_(n) {
    if (n < 1) {
        throw ValidationError("feasible set needs N >= 1");
    }
    if (n > kMaxEnumerationCustomers) {
        throw ResourceError("feasible set of N=" + std::to_string(n) +
                            " exceeds the enumeration limit");
    }
    y_count_ = std::size_t{1} << (n - 1);
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    do {
        perms_.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
}

Encoding FeasibleSet::at(std::size_t index) const {
    Encoding enc;
    enc.order = perms_[index / y_count_];
    const std::size_t y = index % y_count_;
    enc.returns.resize(static_cast<std::size_t>(n_ - 1));
    for (int t = 2; t <= n_; ++t) {
        enc.returns[t - 2] = static_cast<std::uint8_t>((y >> (n_ - t)) & 1U);
    }
    return enc;
}

std::size_t FeasibleSet::permutation_rank(std::span<const int> order) {
    const std::size_t n = order.size();
    std::size_t rank = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t smaller = 0;
        for (std::size_t j = k + 1; j < n; ++j) {
            smaller += order[j] < order[k];
        }
        rank = rank * (n - k) + smaller;
    }
    return rank;
}

std::size_t FeasibleSet::index_of(const Encoding &enc) const {
    enc.validate();
    if (enc.size() != n_) {
        throw ValidationError("encoding size does not match the feasible set");
    }
    std::size_t y = 0;
    for (int t = 2; t <= n_; ++t) {
        y = (y << 1) | enc.returns[t - 2];
    }
    return permutation_rank(enc.order) * y_count_ + y;
}

FeasibleSet enumerate_feasible(int n) { return FeasibleSet(n); }

} // namespace cvrpaoa
