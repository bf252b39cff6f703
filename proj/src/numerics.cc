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

#include "qpf/numerics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qpf/error.h"

namespace qpf {

namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kUnitaryTolerance = 1e-10;
constexpr double kPivotTolerance = 1e-12;

void require_square(size_t rows, size_t cols, const char *what) {
    if (rows != cols || rows == 0) {
        std::ostringstream ss;
        ss << what << ": expected a non-empty square matrix, got " << rows << "x" << cols;
        throw ValidationError(ss.str());
    }
}

}  // namespace

RealMatrix make_real(std::initializer_list<std::initializer_list<double>> rows) {
    size_t n = rows.size();
    size_t m = n == 0 ? 0 : rows.begin()->size();
    RealMatrix out(n, m);
    size_t r = 0;
    for (const auto &row : rows) {
        if (row.size() != m) {
            throw ValidationError("make_real: ragged rows");
        }
        size_t c = 0;
        for (double v : row) {
            out(r, c++) = v;
        }
        r++;
    }
    return out;
}

ComplexMatrix to_complex(const RealMatrix &m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            out(r, c) = m(r, c);
        }
    }
    return out;
}

template <typename T>
static Matrix<T> multiply(const Matrix<T> &a, const Matrix<T> &b) {
    if (a.cols() != b.rows()) {
        throw ValidationError("matrix product: inner dimensions differ");
    }
    Matrix<T> out(a.rows(), b.cols());
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t k = 0; k < a.cols(); k++) {
            T av = a(r, k);
            for (size_t c = 0; c < b.cols(); c++) {
                out(r, c) += av * b(k, c);
            }
        }
    }
    return out;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    return multiply(a, b);
}

RealMatrix operator*(const RealMatrix &a, const RealMatrix &b) {
    return multiply(a, b);
}

std::vector<double> operator*(const RealMatrix &a, std::span<const double> x) {
    if (a.cols() != x.size()) {
        throw ValidationError("matrix-vector product: dimensions differ");
    }
    std::vector<double> out(a.rows(), 0.0);
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t c = 0; c < a.cols(); c++) {
            out[r] += a(r, c) * x[c];
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix &m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            out(c, r) = std::conj(m(r, c));
        }
    }
    return out;
}

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError("frobenius_distance: shapes differ");
    }
    double acc = 0;
    for (size_t k = 0; k < a.data().size(); k++) {
        acc += std::norm(a.data()[k] - b.data()[k]);
    }
    return std::sqrt(acc);
}

double frobenius_distance(const RealMatrix &a, const RealMatrix &b) {
    return frobenius_distance(to_complex(a), to_complex(b));
}

double norm2(std::span<const double> v) {
    double acc = 0;
    for (double x : v) {
        acc += x * x;
    }
    return std::sqrt(acc);
}

double norm2(std::span<const complex> v) {
    double acc = 0;
    for (const auto &x : v) {
        acc += std::norm(x);
    }
    return std::sqrt(acc);
}

double norm_inf(std::span<const double> v) {
    double best = 0;
    for (double x : v) {
        best = std::max(best, std::abs(x));
    }
    return best;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
    require_square(entries_.rows(), entries_.cols(), "HermitianMatrix");
    double worst = 0;
    size_t worst_r = 0;
    size_t worst_c = 0;
    for (size_t r = 0; r < dim(); r++) {
        for (size_t c = r; c < dim(); c++) {
            double gap = std::abs(entries_(r, c) - std::conj(entries_(c, r)));
            if (gap > worst) {
                worst = gap;
                worst_r = r;
                worst_c = c;
            }
        }
    }
    if (worst > kHermitianTolerance) {
        std::ostringstream ss;
        ss << "matrix is not Hermitian: entries (" << worst_r << "," << worst_c << ") and (" << worst_c << ","
           << worst_r << ") differ from conjugate symmetry by " << worst;
        throw ValidationError(ss.str());
    }
}

HermitianMatrix::HermitianMatrix(const RealMatrix &entries) : HermitianMatrix(to_complex(entries)) {
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
    require_square(entries_.rows(), entries_.cols(), "UnitaryMatrix");
    double gap = frobenius_distance(qpf::adjoint(entries_) * entries_, ComplexMatrix::identity(dim()));
    if (gap > kUnitaryTolerance) {
        std::ostringstream ss;
        ss << "matrix is not unitary: ||U^dagger U - I||_F = " << gap;
        throw ValidationError(ss.str());
    }
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    return UnitaryMatrix(qpf::adjoint(entries_), Unchecked{});
}

RealMatrix EigenDecomposition::reconstruct() const {
    size_t n = eigenvalues.size();
    RealMatrix out(n, n);
    for (size_t k = 0; k < n; k++) {
        for (size_t r = 0; r < n; r++) {
            for (size_t c = 0; c < n; c++) {
                out(r, c) += eigenvalues[k] * eigenvectors(r, k) * eigenvectors(c, k);
            }
        }
    }
    return out;
}

std::vector<double> EigenDecomposition::eigenvector(size_t k) const {
    std::vector<double> v(eigenvectors.rows());
    for (size_t r = 0; r < v.size(); r++) {
        v[r] = eigenvectors(r, k);
    }
    return v;
}

EigenDecomposition eigh(const HermitianMatrix &m) {
    size_t n = m.dim();
    RealMatrix a(n, n);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            if (std::abs(m.entries()(r, c).imag()) > kHermitianTolerance) {
                throw ValidationError("eigh: complex Hermitian input is not supported; entries must be real");
            }
            a(r, c) = m.entries()(r, c).real();
        }
    }
    RealMatrix v = RealMatrix::identity(n);

    double scale = 0;
    for (double x : a.data()) {
        scale = std::max(scale, std::abs(x));
    }
    for (int sweep = 0; sweep < 100; sweep++) {
        double off = 0;
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                off += a(p, q) * a(p, q);
            }
        }
        if (off <= 1e-32 * (1 + scale * scale)) {
            break;
        }
        for (size_t p = 0; p < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                double apq = a(p, q);
                if (apq == 0) {
                    continue;
                }
                double theta = (a(q, q) - a(p, p)) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                for (size_t k = 0; k < n; k++) {
                    double akp = a(k, p);
                    double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (size_t k = 0; k < n; k++) {
                    double apk = a(p, k);
                    double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                for (size_t k = 0; k < n; k++) {
                    double vkp = v(k, p);
                    double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return a(x, x) < a(y, y); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = RealMatrix(n, n);
    for (size_t k = 0; k < n; k++) {
        size_t src = order[k];
        out.eigenvalues[k] = a(src, src);
        double sign = 1;
        for (size_t r = 0; r < n; r++) {
            if (std::abs(v(r, src)) > 1e-12) {
                sign = v(r, src) < 0 ? -1 : 1;
                break;
            }
        }
        for (size_t r = 0; r < n; r++) {
            out.eigenvectors(r, k) = sign * v(r, src);
        }
    }
    return out;
}

UnitaryMatrix expm_hermitian(const HermitianMatrix &m, double t) {
    EigenDecomposition eig = eigh(m);
    size_t n = m.dim();
    ComplexMatrix out(n, n);
    for (size_t k = 0; k < n; k++) {
        complex phase = std::polar(1.0, eig.eigenvalues[k] * t);
        for (size_t r = 0; r < n; r++) {
            complex left = phase * eig.eigenvectors(r, k);
            for (size_t c = 0; c < n; c++) {
                out(r, c) += left * eig.eigenvectors(c, k);
            }
        }
    }
    return UnitaryMatrix(std::move(out));
}

std::vector<double> solve_direct(const RealMatrix &m, std::span<const double> rhs) {
    require_square(m.rows(), m.cols(), "solve_direct");
    size_t n = m.rows();
    if (rhs.size() != n) {
        throw ValidationError("solve_direct: right-hand side length does not match matrix");
    }
    RealMatrix a = m;
    std::vector<double> b(rhs.begin(), rhs.end());
    for (size_t col = 0; col < n; col++) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; r++) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) {
                pivot = r;
            }
        }
        if (std::abs(a(pivot, col)) <= kPivotTolerance) {
            std::ostringstream ss;
            ss << "solve_direct: matrix is singular (pivot " << col << " has magnitude " << std::abs(a(pivot, col))
               << ")";
            throw SingularMatrixError(ss.str(), col);
        }
        if (pivot != col) {
            for (size_t c = 0; c < n; c++) {
                std::swap(a(pivot, c), a(col, c));
            }
            std::swap(b[pivot], b[col]);
        }
        for (size_t r = col + 1; r < n; r++) {
            double f = a(r, col) / a(col, col);
            if (f == 0) {
                continue;
            }
            for (size_t c = col; c < n; c++) {
                a(r, c) -= f * a(col, c);
            }
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (size_t c = i + 1; c < n; c++) {
            acc -= a(i, c) * x[c];
        }
        x[i] = acc / a(i, i);
    }
    return x;
}

}  // namespace qpf
