#include "cert/zlattice.hpp"

#include <doctest.h>

#include <random>

using namespace cert;

namespace {

IntVector vec(std::initializer_list<long> v) {
    IntVector r;
    for (long x : v) r.emplace_back(x);
    return r;
}

bool is_column_echelon(const HermiteForm& hf) {
    const IntMatrix& h = hf.h;
    for (size_t j = 0; j < hf.rank(); ++j) {
        size_t r = hf.pivot_rows[j];
        if (h(r, j) <= 0) return false;
        for (size_t i = 0; i < r; ++i)
            if (h(i, j) != 0) return false;
        for (size_t l = j + 1; l < h.cols(); ++l)
            if (h(r, l) != 0) return false;
        if (j > 0 && hf.pivot_rows[j - 1] >= r) return false;
    }
    for (size_t j = hf.rank(); j < h.cols(); ++j)
        for (size_t i = 0; i < h.rows(); ++i)
            if (h(i, j) != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("hermite form of the identity") {
    HermiteForm hf = hermite_normal_form(IntMatrix::identity(3));
    CHECK(hf.h == IntMatrix::identity(3));
    CHECK(hf.u == IntMatrix::identity(3));
}

TEST_CASE("hermite form of [[2,4],[0,2]]") {
    IntMatrix m = IntMatrix::from_rows({{2, 4}, {0, 2}});
    HermiteForm hf = hermite_normal_form(m);
    CHECK(hf.h == IntMatrix::from_rows({{2, 0}, {0, 2}}));
    CHECK(m * hf.u == hf.h);
    CHECK(abs(determinant(hf.u)) == 1);
}

TEST_CASE("hermite form of the zero matrix") {
    IntMatrix z(2, 3);
    HermiteForm hf = hermite_normal_form(z);
    CHECK(hf.h == z);
    CHECK(hf.rank() == 0);
    CHECK(abs(determinant(hf.u)) == 1);
}

TEST_CASE("solve_in_image examples") {
    IntMatrix two = IntMatrix::from_rows({{2, 0}, {0, 2}});
    auto x = solve_in_image(two, vec({2, 2}));
    REQUIRE(x);
    CHECK(*x == vec({1, 1}));
    CHECK_FALSE(solve_in_image(two, vec({1, 0})));
    auto y = solve_in_image(IntMatrix::from_rows({{1, 2}, {3, 4}}), vec({5, 11}));
    REQUIRE(y);
    CHECK(*y == vec({1, 2}));
    CHECK_THROWS_AS(solve_in_image(two, vec({1, 2, 3})), DimensionMismatch);
}

TEST_CASE("random hermite forms are echelon with unimodular transform") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> e(-6, 6);
    for (int k = 0; k < 200; ++k) {
        size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        IntMatrix m(r, c);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) m(i, j) = (rng() % 3 == 0) ? 0 : e(rng);
        HermiteForm hf = hermite_normal_form(m);
        CHECK(m * hf.u == hf.h);
        CHECK(abs(determinant(hf.u)) == 1);
        CHECK(is_column_echelon(hf));
        IntMatrix ker = integer_kernel(m);
        CHECK(ker.cols() == c - hf.rank());
        IntMatrix mk = m * ker;
        CHECK(mk == IntMatrix(r, ker.cols()));
    }
}

TEST_CASE("solve_in_image agrees with brute force on 3x4 systems") {
    std::mt19937_64 rng(22);
    std::uniform_int_distribution<long> e(-3, 3), xs(-4, 4);
    int found_by_both = 0;
    for (int k = 0; k < 40; ++k) {
        IntMatrix m(3, 4);
        long a[3][4];
        for (size_t i = 0; i < 3; ++i)
            for (size_t j = 0; j < 4; ++j) m(i, j) = a[i][j] = e(rng);
        long b[3];
        if (k % 2 == 0) {
            long x0[4] = {xs(rng), xs(rng), xs(rng), xs(rng)};
            for (int i = 0; i < 3; ++i) b[i] = a[i][0] * x0[0] + a[i][1] * x0[1] + a[i][2] * x0[2] + a[i][3] * x0[3];
        } else {
            for (long& v : b) v = e(rng) * 3 + 1;
        }
        bool brute = false;
        for (long x0 = -10; x0 <= 10 && !brute; ++x0)
            for (long x1 = -10; x1 <= 10 && !brute; ++x1)
                for (long x2 = -10; x2 <= 10 && !brute; ++x2)
                    for (long x3 = -10; x3 <= 10 && !brute; ++x3) {
                        bool ok = true;
                        for (int i = 0; i < 3 && ok; ++i)
                            ok = a[i][0] * x0 + a[i][1] * x1 + a[i][2] * x2 + a[i][3] * x3 == b[i];
                        brute = ok;
                    }
        auto x = solve_in_image(m, vec({b[0], b[1], b[2]}));
        if (brute) CHECK(x.has_value());
        if (!x) CHECK_FALSE(brute);
        if (x) CHECK(m * *x == vec({b[0], b[1], b[2]}));
        if (x && brute) ++found_by_both;
    }
    CHECK(found_by_both > 10);
}

TEST_CASE("smith invariants and determinant") {
    IntMatrix m = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    auto d = smith_invariants(m);
    REQUIRE(d.size() == 3);
    CHECK(d[0] == 2);
    CHECK(d[1] == 6);
    CHECK(d[2] == 12);
    CHECK(abs(determinant(m)) == 144);
    CHECK(determinant(IntMatrix::from_rows({{0, 1}, {1, 0}})) == -1);
}
