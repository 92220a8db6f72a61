#pragma once

#include "cert/complex_box.hpp"

#include <stdexcept>

namespace cert {

struct NotCertifiedSL2 : std::logic_error {
    NotCertifiedSL2() : std::logic_error("matrix is not certified to contain a determinant-one matrix") {}
};

// 2x2 matrix of complex boxes, row-major. The determinant enclosure is
// recomputed whenever entries change, so it always contains ad - bc.
class Matrix2 {
public:
    Matrix2() : Matrix2(Box::from_int(1, default_precision), Box::from_int(0, default_precision),
                        Box::from_int(0, default_precision), Box::from_int(1, default_precision)) {}
    Matrix2(Box a, Box b, Box c, Box d, bool sl2 = false)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), sl2_(sl2) {
        det_ = a_ * d_ - b_ * c_;
    }
    static Matrix2 identity(mpfr_prec_t prec) {
        return Matrix2(Box::from_int(1, prec), Box::from_int(0, prec), Box::from_int(0, prec), Box::from_int(1, prec),
                       true);
    }

    const Box& a() const { return a_; }
    const Box& b() const { return b_; }
    const Box& c() const { return c_; }
    const Box& d() const { return d_; }
    const Box& det_hint() const { return det_; }
    const Box& entry(int i, int j) const { return i == 0 ? (j == 0 ? a_ : b_) : (j == 0 ? c_ : d_); }

    // Only callers that know the enclosed exact matrix has det 1 set this.
    bool certified_sl2() const { return sl2_; }
    Matrix2 with_sl2_flag(bool f) const {
        Matrix2 m = *this;
        m.sl2_ = f;
        return m;
    }
    mpfr_prec_t prec() const { return a_.prec(); }

private:
    Box a_, b_, c_, d_;
    Box det_;
    bool sl2_ = false;
};

// product of two SL2-certified matrices stays certified
Matrix2 operator*(const Matrix2& m, const Matrix2& n);
Matrix2 operator-(const Matrix2& m);
Matrix2 sl2_inverse(const Matrix2& m);  // adjugate; throws NotCertifiedSL2
Box trace(const Matrix2& m);
Matrix2 sub_identity(const Matrix2& m);
Matrix2 scale(const Box& s, const Matrix2& m);

bool contains_identity(const Matrix2& m);
bool contains_minus_identity(const Matrix2& m);
// some entry box excludes the corresponding entry of the identity
bool excludes_identity(const Matrix2& m);
mpq_class diameter(const Matrix2& m);
Matrix2 widen_to_precision(const Matrix2& m, mpfr_prec_t p);

}  // namespace cert
