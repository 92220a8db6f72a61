#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cert {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using IntVector = std::vector<mpz_class>;

// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static IntMatrix identity(size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    mpz_class& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const mpz_class& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transpose() const;
    IntVector column(size_t j) const;
    bool operator==(const IntMatrix& o) const = default;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, const IntVector& x);

struct HermiteForm {
    IntMatrix h;  // column echelon form, positive pivots
    IntMatrix u;  // unimodular, h = m * u
    std::vector<size_t> pivot_rows;  // pivot row of column j, for j < rank
    size_t rank() const { return pivot_rows.size(); }
};

HermiteForm hermite_normal_form(const IntMatrix& m);

// Integer x with m x = b, re-verified by exact multiplication; nullopt when no
// integer solution exists.
std::optional<IntVector> solve_in_image(const IntMatrix& m, const IntVector& b);

// Basis of {x in Z^cols : m x = 0}, as columns.
IntMatrix integer_kernel(const IntMatrix& m);

// Nonzero diagonal of the Smith form (reporting only).
std::vector<mpz_class> smith_invariants(const IntMatrix& m);

mpz_class determinant(const IntMatrix& m);

std::string to_string(const IntVector& v);

}  // namespace cert
