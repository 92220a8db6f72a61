#include "cert/zlattice.hpp"

#include <sstream>

namespace cert {

IntMatrix IntMatrix::identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    size_t c = rows.empty() ? 0 : rows[0].size();
    IntMatrix m(rows.size(), c);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw DimensionMismatch("ragged rows");
        for (size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntVector IntMatrix::column(size_t j) const {
    IntVector v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product dimensions");
    IntMatrix r(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

IntVector operator*(const IntMatrix& a, const IntVector& x) {
    if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector dimensions");
    IntVector r(a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (x[j] != 0) r[i] += a(i, j) * x[j];
    return r;
}

namespace {

// column operation on (h, u): [cj ck] <- [cj ck] * [[p, q], [r, s]]
void combine(IntMatrix& m, size_t j, size_t k, const mpz_class& p, const mpz_class& q, const mpz_class& r,
             const mpz_class& s) {
    for (size_t i = 0; i < m.rows(); ++i) {
        mpz_class a = m(i, j), b = m(i, k);
        m(i, j) = a * p + b * r;
        m(i, k) = a * q + b * s;
    }
}

void negate_col(IntMatrix& m, size_t j) {
    for (size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
}

// c_j <- c_j - f * c_k
void sub_col(IntMatrix& m, size_t j, size_t k, const mpz_class& f) {
    for (size_t i = 0; i < m.rows(); ++i) m(i, j) -= f * m(i, k);
}

}  // namespace

HermiteForm hermite_normal_form(const IntMatrix& m) {
    HermiteForm out{m, IntMatrix::identity(m.cols()), {}};
    IntMatrix& h = out.h;
    IntMatrix& u = out.u;
    size_t k = 0;
    for (size_t i = 0; i < h.rows() && k < h.cols(); ++i) {
        // gather the gcd of row i (columns k..) into column k
        for (size_t j = k + 1; j < h.cols(); ++j) {
            if (h(i, j) == 0) continue;
            mpz_class a = h(i, k), b = h(i, j), g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            // [ck cj] * [[x, -b/g], [y, a/g]] has determinant 1
            mpz_class bg = b / g, ag = a / g;
            combine(h, k, j, x, -bg, y, ag);
            combine(u, k, j, x, -bg, y, ag);
        }
        if (h(i, k) == 0) continue;
        if (h(i, k) < 0) {
            negate_col(h, k);
            negate_col(u, k);
        }
        // reduce earlier columns of this row into [0, pivot)
        for (size_t j = 0; j < k; ++j) {
            mpz_class f;
            mpz_fdiv_q(f.get_mpz_t(), h(i, j).get_mpz_t(), h(i, k).get_mpz_t());
            if (f != 0) {
                sub_col(h, j, k, f);
                sub_col(u, j, k, f);
            }
        }
        out.pivot_rows.push_back(i);
        ++k;
    }
    return out;
}

std::optional<IntVector> solve_in_image(const IntMatrix& m, const IntVector& b) {
    if (b.size() != m.rows()) throw DimensionMismatch("right-hand side length differs from row count");
    HermiteForm hf = hermite_normal_form(m);
    IntVector y(m.cols());
    for (size_t j = 0; j < hf.rank(); ++j) {
        size_t r = hf.pivot_rows[j];
        mpz_class rest = b[r];
        for (size_t l = 0; l < j; ++l) rest -= hf.h(r, l) * y[l];
        if (!mpz_divisible_p(rest.get_mpz_t(), hf.h(r, j).get_mpz_t())) return std::nullopt;
        mpz_divexact(y[j].get_mpz_t(), rest.get_mpz_t(), hf.h(r, j).get_mpz_t());
    }
    if (hf.h * y != b) return std::nullopt;
    IntVector x = hf.u * y;
    if (m * x != b) throw std::logic_error("solve_in_image: witness failed exact re-verification");
    return x;
}

IntMatrix integer_kernel(const IntMatrix& m) {
    HermiteForm hf = hermite_normal_form(m);
    size_t nullity = m.cols() - hf.rank();
    IntMatrix k(m.cols(), nullity);
    for (size_t j = 0; j < nullity; ++j)
        for (size_t i = 0; i < m.cols(); ++i) k(i, j) = hf.u(i, hf.rank() + j);
    return k;
}

std::vector<mpz_class> smith_invariants(const IntMatrix& m) {
    // alternate column and row Hermite reductions until diagonal, then fix
    // divisibility with gcd/lcm swaps
    IntMatrix a = m;
    for (int iter = 0; iter < 64; ++iter) {
        a = hermite_normal_form(a).h;
        a = hermite_normal_form(a.transpose()).h;
        a = a.transpose();
        bool diagonal = true;
        for (size_t i = 0; i < a.rows() && diagonal; ++i)
            for (size_t j = 0; j < a.cols(); ++j)
                if (i != j && a(i, j) != 0) {
                    diagonal = false;
                    break;
                }
        if (diagonal) break;
    }
    std::vector<mpz_class> d;
    for (size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
        if (a(i, i) != 0) d.push_back(abs(a(i, i)));
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i + 1; j < d.size(); ++j) {
            mpz_class g, l;
            mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
            l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    return d;
}

mpz_class determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
    // fraction-free (Bareiss) elimination
    IntMatrix a = m;
    size_t n = a.rows();
    if (n == 0) return 1;
    mpz_class sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::string to_string(const IntVector& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].get_str();
    os << ")";
    return os.str();
}

}  // namespace cert
