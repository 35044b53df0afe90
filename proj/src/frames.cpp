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

#include "qpsim/frames.hpp"

#include <algorithm>
#include <cmath>

namespace qpsim {

namespace {

constexpr double kDualityGate = 1e-9;
const cplx I{0.0, 1.0};

void require_dual(const FramePair &fp) {
    double err = check_duality(fp);
    if (!(err < kDualityGate)) {
        throw ValidationError("frame fails duality check (reconstruction error " + std::to_string(err) + ")");
    }
}

}  // namespace

std::string_view frame_kind_name(FrameKind kind) {
    return kind == FrameKind::wigner ? "wigner" : "rotated_pauli";
}

FrameKind parse_frame_kind(std::string_view name) {
    if (name == "wigner") {
        return FrameKind::wigner;
    }
    if (name == "rotated_pauli" || name == "pauli") {
        return FrameKind::rotated_pauli;
    }
    throw ValidationError("unknown frame kind '" + std::string(name) + "'");
}

const CMatrix &pauli(size_t a) {
    static const std::array<CMatrix, 4> basis{
        CMatrix{{1, 0}, {0, 1}},
        CMatrix{{0, 1}, {1, 0}},
        CMatrix{{0, -I}, {I, 0}},
        CMatrix{{1, 0}, {0, -1}},
    };
    return basis.at(a);
}

CMatrix displacement(int p, int q, int d) {
    if (d != 2) {
        throw ValidationError("displacement: only d = 2 is supported");
    }
    p = ((p % 2) + 2) % 2;
    q = ((q % 2) + 2) % 2;
    CMatrix m = CMatrix::identity(2);
    if (p) {
        m = pauli(3) * m;
    }
    if (q) {
        m = m * pauli(1);
    }
    if (p && q) {
        m = m * I;
    }
    return m;
}

FramePair FramePair::from_operators(
    FrameKind kind, std::vector<double> params, std::vector<CMatrix> f_ops, std::vector<CMatrix> g_ops) {
    if (f_ops.size() != kPointsPerQubit || g_ops.size() != kPointsPerQubit) {
        throw ValidationError("frame must have exactly four operators per side");
    }
    FramePair fp{kind, std::move(params), std::move(f_ops), std::move(g_ops), {}, {}};
    for (size_t lam = 0; lam < kPointsPerQubit; lam++) {
        for (size_t a = 0; a < 4; a++) {
            cplx f = trace_inner(pauli(a), fp.f_ops[lam]);
            cplx g = trace_inner(pauli(a), fp.g_ops[lam]) * 0.5;
            if (std::abs(f.imag()) > kTol || std::abs(g.imag()) > kTol) {
                throw ValidationError("frame-consistency error: frame operators must be Hermitian");
            }
            fp.f_coef[lam * 4 + a] = f.real();
            fp.g_coef[a * 4 + lam] = g.real();
        }
    }
    return fp;
}

FramePair make_wigner_frame(const std::vector<double> &g) {
    if (g.size() != kPointsPerQubit) {
        throw ValidationError("wigner frame needs four g-values");
    }
    if (std::abs(g[0] - 1.0) > 1e-12) {
        throw ValidationError("wigner frame requires g(0,0) = 1");
    }
    for (double v : g) {
        if (!(v >= kWignerGMin && v <= kWignerGMax)) {
            throw ValidationError("wigner g-value out of bounds [1e-3, 1e3]");
        }
    }
    // F0 = (1/d^2) Σ D(λ)/g(λ), G0 = (1/d) Σ g(λ) D(−λ).
    CMatrix f0(2, 2);
    CMatrix g0(2, 2);
    std::array<CMatrix, 4> disp;
    for (int p = 0; p < 2; p++) {
        for (int q = 0; q < 2; q++) {
            size_t lam = 2 * p + q;
            disp[lam] = displacement(p, q);
            f0 += disp[lam] * cplx{0.25 / g[lam]};
            g0 += displacement(-p, -q) * cplx{0.5 * g[lam]};
        }
    }
    std::vector<CMatrix> f_ops;
    std::vector<CMatrix> g_ops;
    for (size_t lam = 0; lam < kPointsPerQubit; lam++) {
        CMatrix dag = disp[lam].adjoint();
        f_ops.push_back(disp[lam] * f0 * dag);
        g_ops.push_back(disp[lam] * g0 * dag);
    }
    FramePair fp = FramePair::from_operators(FrameKind::wigner, g, std::move(f_ops), std::move(g_ops));
    require_dual(fp);
    return fp;
}

FramePair make_pauli_frame(const std::array<double, 3> &theta) {
    for (double t : theta) {
        if (!std::isfinite(t)) {
            throw ValidationError("rotated pauli angles must be finite");
        }
    }
    double tx = theta[0];
    double sy = std::sin(theta[1]);
    double cy = std::cos(theta[1]);
    double sz = std::sin(theta[2]);
    double cz = std::cos(theta[2]);
    cplx em = std::polar(1.0, -tx);
    cplx ep = std::polar(1.0, tx);
    std::vector<CMatrix> d(4);
    d[0] = CMatrix::identity(2);
    d[1] = CMatrix{{-sy, em * cy}, {ep * cy, sy}};
    d[2] = CMatrix{{cy * cz, em * (sy * cz + I * sz)}, {ep * (sy * cz - I * sz), -cy * cz}};
    // D(1,1) = i D(1,0) D(0,1), the rotated image of iZX = -Y.
    d[3] = d[2] * d[1] * I;
    std::vector<CMatrix> f_ops;
    for (const auto &m : d) {
        f_ops.push_back(m * cplx{0.5});
    }
    FramePair fp = FramePair::from_operators(
        FrameKind::rotated_pauli, {theta[0], theta[1], theta[2]}, std::move(f_ops), std::move(d));
    require_dual(fp);
    return fp;
}

FramePair reference_frame(FrameKind kind) {
    if (kind == FrameKind::wigner) {
        return make_wigner_frame({1.0, 1.0, 1.0, 1.0});
    }
    return make_pauli_frame({0.0, 0.0, 0.0});
}

FramePair frame_from_params(FrameKind kind, const std::vector<double> &params) {
    if (kind == FrameKind::wigner) {
        return make_wigner_frame(params);
    }
    if (params.size() != 3) {
        throw ValidationError("rotated pauli frame needs three angles");
    }
    return make_pauli_frame({params[0], params[1], params[2]});
}

double check_duality(const FramePair &fp) {
    double err = 0;
    for (int p = 0; p < 2; p++) {
        for (int q = 0; q < 2; q++) {
            CMatrix b = displacement(p, q);
            CMatrix rebuilt(2, 2);
            for (size_t lam = 0; lam < fp.f_ops.size(); lam++) {
                rebuilt += fp.g_ops[lam] * trace_inner(fp.f_ops[lam], b);
            }
            err = std::max(err, max_abs_diff(rebuilt, b));
        }
    }
    return err;
}

std::array<double, kFreeParams> to_free_params(const FramePair &fp) {
    if (fp.kind == FrameKind::wigner) {
        return {std::log(fp.params[1]), std::log(fp.params[2]), std::log(fp.params[3])};
    }
    return {fp.params[0], fp.params[1], fp.params[2]};
}

FramePair from_free_params(FrameKind kind, const std::array<double, kFreeParams> &u) {
    if (kind == FrameKind::wigner) {
        std::vector<double> g{1.0};
        for (double v : u) {
            g.push_back(std::clamp(std::exp(v), kWignerGMin, kWignerGMax));
        }
        return make_wigner_frame(g);
    }
    return make_pauli_frame(u);
}

}  // namespace qpsim
