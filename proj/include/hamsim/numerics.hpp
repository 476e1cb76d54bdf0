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

#ifndef HAMSIM_NUMERICS_HPP
#define HAMSIM_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamsim {

using cplx = std::complex<double>;

/// Raised when an operation's precondition does not hold.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace numerics {

/// Dense row-major complex matrix.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(size_t rows, size_t cols);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(size_t n);
    static ComplexMatrix diagonal(const std::vector<double> &values);
    static ComplexMatrix diagonal(const std::vector<cplx> &values);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }
    bool empty() const {
        return data_.empty();
    }

    cplx &operator()(size_t r, size_t c) {
        return data_[r * cols_ + c];
    }
    const cplx &operator()(size_t r, size_t c) const {
        return data_[r * cols_ + c];
    }
    cplx *row_ptr(size_t r) {
        return data_.data() + r * cols_;
    }
    const cplx *row_ptr(size_t r) const {
        return data_.data() + r * cols_;
    }
    std::vector<cplx> &data() {
        return data_;
    }
    const std::vector<cplx> &data() const {
        return data_;
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix block(size_t r0, size_t c0, size_t nr, size_t nc) const;
    void set_block(size_t r0, size_t c0, const ComplexMatrix &b);

    double max_abs() const;
    double frobenius() const;
    bool all_finite() const;

    ComplexMatrix &operator+=(const ComplexMatrix &o);
    ComplexMatrix &operator-=(const ComplexMatrix &o);
    ComplexMatrix &operator*=(cplx s);

    bool operator==(const ComplexMatrix &o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

/// out = a * b, reusing out's storage.
void matmul_into(const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out);
/// out += s * a * b.
void matmul_acc(cplx s, const ComplexMatrix &a, const ComplexMatrix &b, ComplexMatrix &out);
/// Kronecker product, first factor is the slow index.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
std::vector<cplx> apply(const ComplexMatrix &a, const std::vector<cplx> &v);

/// max |a - b| entrywise.
double max_diff(const ComplexMatrix &a, const ComplexMatrix &b);
/// max |H - H^dagger| entrywise.
double hermiticity_defect(const ComplexMatrix &h);
/// max |U^dagger U - I| entrywise.
double unitarity_defect(const ComplexMatrix &u);

struct NormBounds {
    double max_norm = 0;
    double spectral = 0;
    double induced_one = 0;
    double one_to_two = 0;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    ComplexMatrix reconstruct() const;
};

/// Cyclic complex Jacobi. Rejects input with max|H-H^dagger| > 1e-12 max|H|.
EigenDecomposition hermitian_eig(const ComplexMatrix &h);

/// Largest singular value (largest |eigenvalue| when Hermitian).
double spectral_norm(const ComplexMatrix &m);
NormBounds compute_norms(const ComplexMatrix &h);

/// exp(-i H t).
ComplexMatrix expm_i(const ComplexMatrix &h, double t);
/// exp(-i H t) from a precomputed decomposition.
ComplexMatrix expm_i(const EigenDecomposition &eig, double t);
/// V f(lambda) V^dagger.
ComplexMatrix spectral_apply(const EigenDecomposition &eig, const std::vector<cplx> &f);

/// T_k(H) by three-term recurrence; requires ||H|| <= 1.
ComplexMatrix chebyshev_apply(const ComplexMatrix &h, int k);

/// J_0..J_kmax at tau via Miller downward recurrence.
std::vector<double> bessel_j(int k_max, double tau);

/// Orthonormal completion of the columns of v (rows >= cols) to a square unitary.
ComplexMatrix complete_isometry(const ComplexMatrix &v);

/// splitmix64 generator.
class SplitMix64 {
   public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {
    }
    uint64_t next();
    /// Uniform in [0, 1).
    double uniform();
    /// Uniform integer in [0, n).
    uint64_t below(uint64_t n);
    double normal();

   private:
    uint64_t state_;
};

ComplexMatrix random_hermitian(size_t n, SplitMix64 &rng, double scale = 1.0);
ComplexMatrix random_unitary(size_t n, SplitMix64 &rng);

std::string describe(const ComplexMatrix &m, int precision = 6);

}  // namespace numerics
}  // namespace hamsim

#endif
