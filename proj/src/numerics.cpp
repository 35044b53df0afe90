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

#include "qpsim/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace qpsim {

CMatrix::CMatrix(size_t rows, size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw ValidationError("CMatrix: entry count does not match rows*cols");
    }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw ValidationError("CMatrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

CMatrix CMatrix::identity(size_t dim) {
    CMatrix m(dim, dim);
    for (size_t k = 0; k < dim; k++) {
        m(k, k) = 1.0;
    }
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

CMatrix CMatrix::operator*(const CMatrix &other) const {
    if (cols_ != other.rows_) {
        throw ValidationError("CMatrix product: inner dimensions differ");
    }
    CMatrix out(rows_, other.cols_);
    for (size_t r = 0; r < rows_; r++) {
        cplx *dst = &out.data_[r * other.cols_];
        for (size_t k = 0; k < cols_; k++) {
            cplx a = (*this)(r, k);
            if (a == cplx{}) {
                continue;
            }
            const cplx *src = &other.data_[k * other.cols_];
            for (size_t c = 0; c < other.cols_; c++) {
                dst[c] += a * src[c];
            }
        }
    }
    return out;
}

CMatrix CMatrix::operator+(const CMatrix &other) const {
    CMatrix out = *this;
    out += other;
    return out;
}

CMatrix &CMatrix::operator+=(const CMatrix &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw ValidationError("CMatrix sum: dimension mismatch");
    }
    for (size_t k = 0; k < data_.size(); k++) {
        data_[k] += other.data_[k];
    }
    return *this;
}

CMatrix CMatrix::operator-(const CMatrix &other) const {
    return *this + other * cplx{-1.0};
}

CMatrix CMatrix::operator*(cplx scale) const {
    CMatrix out = *this;
    for (auto &v : out.data_) {
        v *= scale;
    }
    return out;
}

size_t ipow(size_t d, size_t k) {
    size_t r = 1;
    while (k--) {
        r *= d;
    }
    return r;
}

CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t k = 0; k < a.cols(); k++) {
            cplx v = a(i, k);
            for (size_t j = 0; j < b.rows(); j++) {
                for (size_t l = 0; l < b.cols(); l++) {
                    out(i * b.rows() + j, k * b.cols() + l) = v * b(j, l);
                }
            }
        }
    }
    return out;
}

cplx trace_inner(const CMatrix &a, const CMatrix &b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
        throw ValidationError("trace_inner: operands must be square with equal dimensions");
    }
    cplx acc{};
    size_t n = a.rows();
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            acc += a(i, j) * b(j, i);
        }
    }
    return acc;
}

cplx trace(const CMatrix &a) {
    if (!a.is_square()) {
        throw ValidationError("trace: matrix is not square");
    }
    cplx acc{};
    for (size_t k = 0; k < a.rows(); k++) {
        acc += a(k, k);
    }
    return acc;
}

double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError("max_abs_diff: dimension mismatch");
    }
    double m = 0;
    auto da = a.data();
    auto db = b.data();
    for (size_t k = 0; k < da.size(); k++) {
        m = std::max(m, std::abs(da[k] - db[k]));
    }
    return m;
}

bool is_unitary(const CMatrix &u, double tol) {
    if (!u.is_square()) {
        return false;
    }
    return max_abs_diff(u.adjoint() * u, CMatrix::identity(u.rows())) < tol;
}

bool is_hermitian(const CMatrix &a, double tol) {
    return a.is_square() && max_abs_diff(a, a.adjoint()) < tol;
}

bool equal_up_to_phase(const CMatrix &a, const CMatrix &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    // Align on the largest entry of b to fix the relative phase.
    auto da = a.data();
    auto db = b.data();
    size_t best = 0;
    for (size_t k = 1; k < db.size(); k++) {
        if (std::abs(db[k]) > std::abs(db[best])) {
            best = k;
        }
    }
    if (db.empty() || std::abs(db[best]) < tol) {
        return max_abs_diff(a, b) < tol;
    }
    if (std::abs(da[best]) < tol) {
        return false;
    }
    cplx phase = da[best] / db[best];
    phase /= std::abs(phase);
    return max_abs_diff(a, b * phase) < tol;
}

CMatrix embed_gate(const CMatrix &g, const WireSupport &support, size_t total_wires, size_t d) {
    size_t k = support.size();
    size_t gdim = ipow(d, k);
    if (!g.is_square() || g.rows() != gdim) {
        throw ValidationError("embed_gate: gate dimension does not match support size");
    }
    for (size_t a = 0; a < k; a++) {
        if (support[a] >= total_wires) {
            throw ValidationError("embed_gate: support wire out of range");
        }
        for (size_t b = a + 1; b < k; b++) {
            if (support[a] == support[b]) {
                throw ValidationError("embed_gate: duplicate wire in support");
            }
        }
    }
    size_t dim = ipow(d, total_wires);
    // place[j] is the place value of support wire j in the full index.
    std::vector<size_t> place(k);
    for (size_t j = 0; j < k; j++) {
        place[j] = ipow(d, total_wires - 1 - support[j]);
    }
    auto sub_index = [&](size_t full) {
        size_t s = 0;
        for (size_t j = 0; j < k; j++) {
            s = s * d + (full / place[j]) % d;
        }
        return s;
    };
    auto with_sub = [&](size_t full, size_t sub) {
        for (size_t j = k; j-- > 0;) {
            size_t digit = (full / place[j]) % d;
            full -= digit * place[j];
            full += (sub % d) * place[j];
            sub /= d;
        }
        return full;
    };
    CMatrix out(dim, dim);
    for (size_t c = 0; c < dim; c++) {
        size_t cs = sub_index(c);
        for (size_t rs = 0; rs < gdim; rs++) {
            cplx v = g(rs, cs);
            if (v != cplx{}) {
                out(with_sub(c, rs), c) = v;
            }
        }
    }
    return out;
}

CMatrix haar_unitary(size_t dim, std::mt19937_64 &rng) {
    if (dim == 0) {
        throw ValidationError("haar_unitary: dimension must be positive");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix z(dim, dim);
    for (size_t r = 0; r < dim; r++) {
        for (size_t c = 0; c < dim; c++) {
            double re = normal(rng);
            double im = normal(rng);
            z(r, c) = {re, im};
        }
    }
    // Modified Gram-Schmidt with one re-orthogonalisation pass per column.
    for (size_t c = 0; c < dim; c++) {
        for (int pass = 0; pass < 2; pass++) {
            for (size_t p = 0; p < c; p++) {
                cplx dot{};
                for (size_t r = 0; r < dim; r++) {
                    dot += std::conj(z(r, p)) * z(r, c);
                }
                for (size_t r = 0; r < dim; r++) {
                    z(r, c) -= dot * z(r, p);
                }
            }
        }
        double norm = 0;
        for (size_t r = 0; r < dim; r++) {
            norm += std::norm(z(r, c));
        }
        norm = std::sqrt(norm);
        for (size_t r = 0; r < dim; r++) {
            z(r, c) /= norm;
        }
    }
    return z;
}

std::mt19937_64 make_rng(uint64_t seed, uint64_t stream) {
    std::seed_seq seq{
        static_cast<uint32_t>(seed),
        static_cast<uint32_t>(seed >> 32),
        static_cast<uint32_t>(stream),
        static_cast<uint32_t>(stream >> 32),
        0x51706d63u};
    return std::mt19937_64(seq);
}

}  // namespace qpsim
