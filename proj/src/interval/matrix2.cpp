#include "cert/matrix2.hpp"

namespace cert {

Matrix2 operator*(const Matrix2& m, const Matrix2& n) {
    return Matrix2(m.a() * n.a() + m.b() * n.c(), m.a() * n.b() + m.b() * n.d(), m.c() * n.a() + m.d() * n.c(),
                   m.c() * n.b() + m.d() * n.d(), m.certified_sl2() && n.certified_sl2());
}

Matrix2 operator-(const Matrix2& m) { return Matrix2(-m.a(), -m.b(), -m.c(), -m.d(), m.certified_sl2()); }

Matrix2 sl2_inverse(const Matrix2& m) {
    if (!m.certified_sl2()) throw NotCertifiedSL2();
    return Matrix2(m.d(), -m.b(), -m.c(), m.a(), true);
}

Box trace(const Matrix2& m) { return m.a() + m.d(); }

Matrix2 sub_identity(const Matrix2& m) {
    Box one = Box::from_int(1, m.prec());
    return Matrix2(m.a() - one, m.b(), m.c(), m.d() - one);
}

Matrix2 scale(const Box& s, const Matrix2& m) {
    return Matrix2(s * m.a(), s * m.b(), s * m.c(), s * m.d());
}

bool contains_identity(const Matrix2& m) {
    return m.a().contains(1, 0) && m.b().contains(0, 0) && m.c().contains(0, 0) && m.d().contains(1, 0);
}

bool contains_minus_identity(const Matrix2& m) {
    return m.a().contains(-1, 0) && m.b().contains(0, 0) && m.c().contains(0, 0) && m.d().contains(-1, 0);
}

bool excludes_identity(const Matrix2& m) { return !contains_identity(m); }

mpq_class diameter(const Matrix2& m) {
    mpq_class r = diameter(m.a());
    for (const Box* e : {&m.b(), &m.c(), &m.d()}) {
        mpq_class d = diameter(*e);
        if (d > r) r = d;
    }
    return r;
}

Matrix2 widen_to_precision(const Matrix2& m, mpfr_prec_t p) {
    return Matrix2(widen_to_precision(m.a(), p), widen_to_precision(m.b(), p), widen_to_precision(m.c(), p),
                   widen_to_precision(m.d(), p), m.certified_sl2());
}

}  // namespace cert
