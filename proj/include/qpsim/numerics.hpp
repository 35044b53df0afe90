// Copyright 2026 The qpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qpsim {

using cplx = std::complex<double>;

/// Default absolute tolerance used for unitarity, hermiticity and trace checks.
inline constexpr double kTol = 1e-10;

/// Thrown for malformed inputs: dimension mismatches, invalid circuits, bad frame parameters.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Dense row-major complex matrix.
class CMatrix {
   public:
    CMatrix() = default;
    CMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    }
    CMatrix(size_t rows, size_t cols, std::vector<cplx> data);
    CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static CMatrix identity(size_t dim);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }

    cplx &operator()(size_t r, size_t c) {
        return data_[r * cols_ + c];
    }
    const cplx &operator()(size_t r, size_t c) const {
        return data_[r * cols_ + c];
    }

    std::span<const cplx> data() const {
        return data_;
    }
    std::span<cplx> data() {
        return data_;
    }

    CMatrix adjoint() const;
    CMatrix operator*(const CMatrix &other) const;
    CMatrix operator+(const CMatrix &other) const;
    CMatrix operator-(const CMatrix &other) const;
    CMatrix operator*(cplx scale) const;
    CMatrix &operator+=(const CMatrix &other);

    bool operator==(const CMatrix &other) const = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Ordered list of distinct wire indices. The order fixes the tensor-leg order of a gate matrix,
/// with the first listed wire as the most significant leg.
using WireSupport = std::vector<uint32_t>;

CMatrix kron(const CMatrix &a, const CMatrix &b);

/// Tr[A B] without forming the product.
cplx trace_inner(const CMatrix &a, const CMatrix &b);

cplx trace(const CMatrix &a);

/// Largest absolute entry of a - b.
double max_abs_diff(const CMatrix &a, const CMatrix &b);

bool is_unitary(const CMatrix &u, double tol = kTol);
bool is_hermitian(const CMatrix &a, double tol = kTol);

/// True if a = e^{i phi} b for some phase, to within tol elementwise.
bool equal_up_to_phase(const CMatrix &a, const CMatrix &b, double tol);

/// Returns the d^N x d^N operator acting as `g` on `support` (in listed order) and as identity on
/// every other wire. Wire 0 is the most significant tensor leg of the result.
CMatrix embed_gate(const CMatrix &g, const WireSupport &support, size_t total_wires, size_t d = 2);

/// Haar-random dim x dim unitary: complex Ginibre matrix, Gram-Schmidt orthonormalised column by
/// column, which leaves the implied triangular factor with a positive real diagonal.
CMatrix haar_unitary(size_t dim, std::mt19937_64 &rng);

/// Integer power d^k.
size_t ipow(size_t d, size_t k);

/// Deterministic generator for substream `stream` of a user seed.
std::mt19937_64 make_rng(uint64_t seed, uint64_t stream = 0);

}  // namespace qpsim
