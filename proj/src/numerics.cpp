// Copyright 2026 The hamsim Authors
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

#include "hamsim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hamsim::numerics {

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_) {
            throw PreconditionError("ragged matrix literal");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ComplexMatrix ComplexMatrix::identity(size_t n) {
    ComplexMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double> &values) {
    ComplexMatrix m(values.size(), values.size());
    for (size_t i = 0; i < values.size(); i++) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx> &values) {
    ComplexMatrix m(values.size(), values.size());
    for (size_t i = 0; i < values.size(); i++) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (size_t i = 0; i < rows_; i++) {
        for (size_t j = 0; j < cols_; j++) {
            r(j, i) = std::conj((*this)(i, j));
        }
    }
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (size_t i = 0; i < rows_; i++) {
        for (size_t j = 0; j < cols_; j++) {
            r(j, i) = (*this)(i, j);
        }
    }
    return r;
}

ComplexMatrix ComplexMatrix::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) {
        throw PreconditionError("block out of range");
    }
    ComplexMatrix b(nr, nc);
    for (size_t i = 0; i < nr; i++) {
        std::copy_n(row_ptr(r0 + i) + c0, nc, b.row_ptr(i));
    }
    return b;
}

void ComplexMatrix::set_block(size_t r0, size_t c0, const ComplexMatrix &b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
        throw PreconditionError("block out of range");
    }
    for (size_t i = 0; i < b.rows(); i++) {
        std::copy_n(b.row_ptr(i), b.cols(), row_ptr(r0 + i) + c0);
    }
}

double ComplexMatrix::max_abs() const {
    double m = 0;
    for (const auto &z : data_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

double ComplexMatrix::frobenius() const {
    double s = 0;
    for (const auto &z : data_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](cplx z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

static void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw PreconditionError("matrix shape mismatch");
    }
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o) {
    require_same_shape(*this, o);
    for (size_t i = 0; i < data_.size(); i++) {
        data_[i] += o.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o) {
    require_same_shape(*this, o);
    for (size_t i = 0; i < data_.size(); i++) {
        data_[i] -= o.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx s) {
    for (auto &z : data_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(ComplexMatrix a, cplx s) {
    a *= s;
    return a;
}

ComplexMatrix operator*(cplx s, ComplexMatrix a) {
    a *= s;
    return a;
}

// Real arithmetic on interleaved storage; std::complex multiply goes through
// the NaN-checking slow path without -ffast-math.
static void gemm_kernel(cplx s, const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out) {
    const size_t n = a.rows(), inner = a.cols(), m = b.cols();
    for (size_t i = 0; i < n; i++) {
        double *o = reinterpret_cast<double *>(out.row_ptr(i));
        const cplx *arow = a.row_ptr(i);
        for (size_t k = 0; k < inner; k++) {
            cplx av = arow[k] * s;
            double ar = av.real(), ai = av.imag();
            if (ar == 0 && ai == 0) {
                continue;
            }
            const double *brow = reinterpret_cast<const double *>(b.row_ptr(k));
            for (size_t j = 0; j < m; j++) {
                double br = brow[2 * j], bi = brow[2 * j + 1];
                o[2 * j] += ar * br - ai * bi;
                o[2 * j + 1] += ar * bi + ai * br;
            }
        }
    }
}

void matmul_into(const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out) {
    if (a.cols() != b.rows()) {
        throw PreconditionError("matmul inner dimension mismatch");
    }
    if (out.rows() != a.rows() || out.cols() != b.cols()) {
        out = ComplexMatrix(a.rows(), b.cols());
    } else {
        std::fill(out.data().begin(), out.data().end(), cplx(0));
    }
    gemm_kernel(1.0, a, b, out);
}

void matmul_acc(cplx s, const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out) {
    if (a.cols() != b.rows() || out.rows() != a.rows() || out.cols() != b.cols()) {
        throw PreconditionError("matmul dimension mismatch");
    }
    gemm_kernel(s, a, b, out);
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out;
    matmul_into(a, b, out);
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            cplx s = a(i, j);
            if (s == cplx(0)) {
                continue;
            }
            for (size_t k = 0; k < b.rows(); k++) {
                for (size_t l = 0; l < b.cols(); l++) {
                    r(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
                }
            }
        }
    }
    return r;
}

std::vector<cplx> apply(const ComplexMatrix &a, const std::vector<cplx> &v) {
    if (a.cols() != v.size()) {
        throw PreconditionError("matrix-vector dimension mismatch");
    }
    std::vector<cplx> r(a.rows());
    for (size_t i = 0; i < a.rows(); i++) {
        cplx s = 0;
        const cplx *row = a.row_ptr(i);
        for (size_t k = 0; k < a.cols(); k++) {
            s += row[k] * v[k];
        }
        r[i] = s;
    }
    return r;
}

double max_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b);
    double m = 0;
    for (size_t i = 0; i < a.data().size(); i++) {
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    }
    return m;
}

double hermiticity_defect(const ComplexMatrix &h) {
    if (!h.is_square()) {
        throw PreconditionError("hermiticity check needs a square matrix");
    }
    double m = 0;
    for (size_t i = 0; i < h.rows(); i++) {
        for (size_t j = i; j < h.cols(); j++) {
            m = std::max(m, std::abs(h(i, j) - std::conj(h(j, i))));
        }
    }
    return m;
}

double unitarity_defect(const ComplexMatrix &u) {
    ComplexMatrix g = u.adjoint() * u;
    return max_diff(g, ComplexMatrix::identity(g.rows()));
}

ComplexMatrix EigenDecomposition::reconstruct() const {
    std::vector<cplx> f(eigenvalues.begin(), eigenvalues.end());
    return spectral_apply(*this, f);
}

EigenDecomposition hermitian_eig(const ComplexMatrix &h) {
    if (!h.is_square()) {
        throw PreconditionError("hermitian_eig: non-square input");
    }
    double scale = h.max_abs();
    double asym = hermiticity_defect(h);
    if (asym > 1e-12 * scale) {
        std::ostringstream ss;
        ss << "hermitian_eig: input not Hermitian, max|H-H^dagger| = " << asym << " vs max|H| = " << scale;
        throw PreconditionError(ss.str());
    }
    const size_t n = h.rows();
    ComplexMatrix a = h;
    ComplexMatrix v = ComplexMatrix::identity(n);
    for (size_t i = 0; i < n; i++) {
        a(i, i) = a(i, i).real();
    }

    auto off_mass = [&]() {
        double s = 0;
        for (size_t i = 0; i < n; i++) {
            for (size_t j = 0; j < n; j++) {
                if (i != j) {
                    s += std::norm(a(i, j));
                }
            }
        }
        return s;
    };
    double fro2 = h.frobenius() * h.frobenius();
    double target = 1e-28 * fro2;
    double prev = off_mass();
    // Cyclic sweeps; roundoff can stall the off-diagonal mass just above the
    // target at large N, so also stop when a sweep stops making progress.
    for (int sweep = 0; sweep < 100 && prev > target; sweep++) {
        for (size_t p = 0; p + 1 < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                cplx g = a(p, q);
                double ag = std::abs(g);
                if (ag == 0 || ag < 1e-300) {
                    continue;
                }
                cplx ph = g / ag;
                double app = a(p, p).real(), aqq = a(q, q).real();
                double theta = (aqq - app) / (2 * ag);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                cplx phc = std::conj(ph);
                // J on (p,q): [[c, s], [-s conj(ph), c conj(ph)]].
                for (size_t k = 0; k < n; k++) {
                    cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * phc * akq;
                    a(k, q) = s * akp + c * phc * akq;
                }
                for (size_t k = 0; k < n; k++) {
                    cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * ph * aqk;
                    a(q, k) = s * apk + c * ph * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = app - t * ag;
                a(q, q) = aqq + t * ag;
                for (size_t k = 0; k < n; k++) {
                    cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * phc * vkq;
                    v(k, q) = s * vkp + c * phc * vkq;
                }
            }
        }
        double cur = off_mass();
        if (cur >= prev && sweep > 2) {
            break;
        }
        prev = cur;
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        return a(x, x).real() < a(y, y).real();
    });
    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (size_t j = 0; j < n; j++) {
        out.eigenvalues[j] = a(order[j], order[j]).real();
        for (size_t k = 0; k < n; k++) {
            out.eigenvectors(k, j) = v(k, order[j]);
        }
    }
    return out;
}

ComplexMatrix spectral_apply(const EigenDecomposition &eig, const std::vector<cplx> &f) {
    const ComplexMatrix &v = eig.eigenvectors;
    const size_t n = v.rows();
    ComplexMatrix vf(n, n);
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            vf(i, j) = v(i, j) * f[j];
        }
    }
    return vf * v.adjoint();
}

double spectral_norm(const ComplexMatrix &m) {
    if (m.empty()) {
        return 0;
    }
    if (m.is_square() && hermiticity_defect(m) <= 1e-12 * m.max_abs()) {
        auto e = hermitian_eig(m);
        return std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
    }
    ComplexMatrix g = m.adjoint() * m;
    // Symmetrize away roundoff so the eigensolver's Hermitian check passes.
    ComplexMatrix gs = g;
    for (size_t i = 0; i < g.rows(); i++) {
        for (size_t j = 0; j < g.cols(); j++) {
            gs(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
        }
    }
    auto e = hermitian_eig(gs);
    return std::sqrt(std::max(0.0, e.eigenvalues.back()));
}

NormBounds compute_norms(const ComplexMatrix &h) {
    if (!h.is_square()) {
        throw PreconditionError("compute_norms: non-square input");
    }
    NormBounds nb;
    nb.max_norm = h.max_abs();
    for (size_t k = 0; k < h.cols(); k++) {
        double s1 = 0, s2 = 0;
        for (size_t i = 0; i < h.rows(); i++) {
            double a = std::abs(h(i, k));
            s1 += a;
            s2 += a * a;
        }
        nb.induced_one = std::max(nb.induced_one, s1);
        nb.one_to_two = std::max(nb.one_to_two, std::sqrt(s2));
    }
    nb.spectral = spectral_norm(h);
    return nb;
}

ComplexMatrix expm_i(const EigenDecomposition &eig, double t) {
    std::vector<cplx> f(eig.eigenvalues.size());
    for (size_t i = 0; i < f.size(); i++) {
        f[i] = std::polar(1.0, -eig.eigenvalues[i] * t);
    }
    return spectral_apply(eig, f);
}

ComplexMatrix expm_i(const ComplexMatrix &h, double t) {
    if (t == 0) {
        hermitian_eig(h);
        return ComplexMatrix::identity(h.rows());
    }
    return expm_i(hermitian_eig(h), t);
}

ComplexMatrix chebyshev_apply(const ComplexMatrix &h, int k) {
    if (!h.is_square()) {
        throw PreconditionError("chebyshev_apply: non-square input");
    }
    if (k < 0) {
        throw PreconditionError("chebyshev_apply: negative degree");
    }
    double nrm = spectral_norm(h);
    if (nrm > 1 + 1e-9) {
        std::ostringstream ss;
        ss << "chebyshev_apply: ||H|| = " << nrm << " exceeds 1";
        throw PreconditionError(ss.str());
    }
    ComplexMatrix prev = ComplexMatrix::identity(h.rows());
    if (k == 0) {
        return prev;
    }
    ComplexMatrix cur = h;
    for (int j = 1; j < k; j++) {
        ComplexMatrix next = -1.0 * prev;
        matmul_acc(2.0, h, cur, next);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<double> bessel_j(int k_max, double tau) {
    if (k_max < 0 || !(tau >= 0)) {
        throw PreconditionError("bessel_j: need k_max >= 0 and tau >= 0");
    }
    std::vector<double> out(k_max + 1, 0.0);
    if (tau == 0) {
        out[0] = 1;
        return out;
    }
    int top = std::max(k_max, static_cast<int>(std::ceil(tau)));
    int start = top + 20 + static_cast<int>(std::sqrt(40.0 * (top + 1)));
    start += start & 1;
    std::vector<double> j(start + 2, 0.0);
    j[start + 1] = 0;
    j[start] = 1e-30;
    for (int k = start; k >= 1; k--) {
        j[k - 1] = (2.0 * k / tau) * j[k] - j[k + 1];
        if (std::abs(j[k - 1]) > 1e250) {
            for (int r = k - 1; r <= start + 1; r++) {
                j[r] *= 1e-250;
            }
        }
    }
    double norm = j[0];
    for (int k = 2; k <= start; k += 2) {
        norm += 2 * j[k];
    }
    for (int k = 0; k <= k_max; k++) {
        out[k] = j[k] / norm;
    }
    return out;
}

ComplexMatrix complete_isometry(const ComplexMatrix &v) {
    const size_t d = v.rows(), n = v.cols();
    if (n > d) {
        throw PreconditionError("complete_isometry: more columns than rows");
    }
    std::vector<std::vector<cplx>> cols;
    cols.reserve(d);
    for (size_t j = 0; j < n; j++) {
        std::vector<cplx> c(d);
        for (size_t i = 0; i < d; i++) {
            c[i] = v(i, j);
        }
        cols.push_back(std::move(c));
    }
    auto project_out = [&](std::vector<cplx> &x) {
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &c : cols) {
                cplx ov = 0;
                for (size_t i = 0; i < d; i++) {
                    ov += std::conj(c[i]) * x[i];
                }
                for (size_t i = 0; i < d; i++) {
                    x[i] -= ov * c[i];
                }
            }
        }
    };
    for (size_t e = 0; e < d && cols.size() < d; e++) {
        std::vector<cplx> x(d, 0.0);
        x[e] = 1;
        project_out(x);
        double nrm = 0;
        for (const auto &z : x) {
            nrm += std::norm(z);
        }
        nrm = std::sqrt(nrm);
        if (nrm < 1e-6) {
            continue;
        }
        for (auto &z : x) {
            z /= nrm;
        }
        cols.push_back(std::move(x));
    }
    if (cols.size() != d) {
        throw PreconditionError("complete_isometry: input columns not orthonormal");
    }
    ComplexMatrix u(d, d);
    for (size_t j = 0; j < d; j++) {
        for (size_t i = 0; i < d; i++) {
            u(i, j) = cols[j][i];
        }
    }
    return u;
}

uint64_t SplitMix64::next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

uint64_t SplitMix64::below(uint64_t n) {
    return n ? next() % n : 0;
}

double SplitMix64::normal() {
    double u1 = uniform(), u2 = uniform();
    if (u1 < 1e-300) {
        u1 = 1e-300;
    }
    return std::sqrt(-2 * std::log(u1)) * std::cos(2 * M_PI * u2);
}

ComplexMatrix random_hermitian(size_t n, SplitMix64 &rng, double scale) {
    ComplexMatrix h(n, n);
    for (size_t i = 0; i < n; i++) {
        h(i, i) = scale * (2 * rng.uniform() - 1);
        for (size_t j = i + 1; j < n; j++) {
            cplx z(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
            h(i, j) = scale * z;
            h(j, i) = scale * std::conj(z);
        }
    }
    return h;
}

ComplexMatrix random_unitary(size_t n, SplitMix64 &rng) {
    ComplexMatrix g(n, n);
    for (auto &z : g.data()) {
        z = cplx(rng.normal(), rng.normal());
    }
    // Modified Gram-Schmidt on columns.
    for (size_t j = 0; j < n; j++) {
        for (int pass = 0; pass < 2; pass++) {
            for (size_t k = 0; k < j; k++) {
                cplx ov = 0;
                for (size_t i = 0; i < n; i++) {
                    ov += std::conj(g(i, k)) * g(i, j);
                }
                for (size_t i = 0; i < n; i++) {
                    g(i, j) -= ov * g(i, k);
                }
            }
        }
        double nrm = 0;
        for (size_t i = 0; i < n; i++) {
            nrm += std::norm(g(i, j));
        }
        nrm = std::sqrt(nrm);
        for (size_t i = 0; i < n; i++) {
            g(i, j) /= nrm;
        }
    }
    return g;
}

std::string describe(const ComplexMatrix &m, int precision) {
    std::ostringstream ss;
    ss.precision(precision);
    for (size_t i = 0; i < m.rows(); i++) {
        for (size_t j = 0; j < m.cols(); j++) {
            ss << (j ? " " : "") << m(i, j);
        }
        ss << "\n";
    }
    return ss.str();
}

}  // namespace hamsim::numerics
