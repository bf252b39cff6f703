// Copyright 2026 The qpowerflow Authors
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
#include <initializer_list>
#include <cstddef>
#include <span>
#include <vector>

namespace qpf {

using complex = std::complex<double>;

/// Row-major dense matrix. Sizes in this project never exceed 2^16 entries per side.
template <typename T>
class Matrix {
   public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    }

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t k = 0; k < n; k++) {
            m(k, k) = T(1);
        }
        return m;
    }

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    T &operator()(size_t r, size_t c) {
        return data_[r * cols_ + c];
    }
    const T &operator()(size_t r, size_t c) const {
        return data_[r * cols_ + c];
    }
    std::span<const T> data() const {
        return data_;
    }

    bool operator==(const Matrix &) const = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<complex>;

RealMatrix make_real(std::initializer_list<std::initializer_list<double>> rows);
ComplexMatrix to_complex(const RealMatrix &m);

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
RealMatrix operator*(const RealMatrix &a, const RealMatrix &b);
std::vector<double> operator*(const RealMatrix &a, std::span<const double> x);
ComplexMatrix adjoint(const ComplexMatrix &m);

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b);
double frobenius_distance(const RealMatrix &a, const RealMatrix &b);
double norm2(std::span<const double> v);
double norm2(std::span<const complex> v);
double norm_inf(std::span<const double> v);

/// Square matrix equal to its conjugate transpose within 1e-12.
class HermitianMatrix {
   public:
    /// Throws ValidationError naming the worst-offending entry pair.
    explicit HermitianMatrix(ComplexMatrix entries);
    explicit HermitianMatrix(const RealMatrix &entries);

    size_t dim() const {
        return entries_.rows();
    }
    const ComplexMatrix &entries() const {
        return entries_;
    }

   private:
    ComplexMatrix entries_;
};

/// Square matrix with U^dagger U = I within 1e-10.
class UnitaryMatrix {
   public:
    explicit UnitaryMatrix(ComplexMatrix entries);

    size_t dim() const {
        return entries_.rows();
    }
    const ComplexMatrix &entries() const {
        return entries_;
    }
    UnitaryMatrix adjoint() const;

   private:
    struct Unchecked {};
    UnitaryMatrix(ComplexMatrix entries, Unchecked) : entries_(std::move(entries)) {
    }
    ComplexMatrix entries_;
};

struct EigenDecomposition {
    /// Ascending.
    std::vector<double> eigenvalues;
    /// Column k is the eigenvector of eigenvalues[k]; first nonzero component positive.
    RealMatrix eigenvectors;

    RealMatrix reconstruct() const;
    std::vector<double> eigenvector(size_t k) const;
};

/// Cyclic Jacobi eigensolver. Inputs must be real symmetric (imaginary parts below 1e-12).
EigenDecomposition eigh(const HermitianMatrix &m);

/// exp(i t m), built from the eigendecomposition of m.
UnitaryMatrix expm_hermitian(const HermitianMatrix &m, double t);

/// Gaussian elimination with partial pivoting. Throws SingularMatrixError when a pivot is <= 1e-12.
std::vector<double> solve_direct(const RealMatrix &m, std::span<const double> rhs);

}  // namespace qpf
