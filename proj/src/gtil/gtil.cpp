#include "cert/gtil.hpp"

#include "cert/elementary.hpp"
#include "cert/interval_json.hpp"

namespace cert {

namespace {

Interval two_pi(mpfr_prec_t p) { return mul_2si(pi_interval(p), 1); }

bool meets_negative_ray(const Box& x) { return !x.re.positive() && x.im.contains_zero(); }

// g . i for a real matrix: (b + ia) / (d + ic)
Box image_of_i(const Matrix2& g) {
    Box den(g.d().re, g.c().re);
    if (!den.excludes_zero()) throw BranchCutUncertain("bottom row of the matrix box meets (0, 0)");
    return Box(g.b().re, g.a().re) / den;
}

// e^{it}(cos t - z sin t): the argument whose principal arg corrects t
Box correction(const Interval& t, const Box& z) {
    Interval c = cos(t), s = sin(t);
    Box r = Box(c, sin(t)) * (Box::real(c) - s * z);
    if (meets_negative_ray(r)) throw BranchCutUncertain("correction term meets the branch ray of arg");
    return r;
}

mpz_class ceil_q(const mpq_class& q) {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

}  // namespace

GtilElement gtil_identity(mpfr_prec_t prec) { return {Matrix2::identity(prec), Interval::from_int(0, prec)}; }

GtilElement gtil_rotation(const Interval& t) {
    Interval c = cos(t), s = sin(t);
    return {Matrix2(Box::real(c), Box::real(s), Box::real(-s), Box::real(c), true), t};
}

GtilElement gtil_translation(const Interval& x, const Interval& y) {
    if (!y.positive()) throw std::invalid_argument("translation needs y > 0");
    Interval r = sqrt_pos(y);
    mpfr_prec_t p = r.prec();
    return {Matrix2(Box::real(r), Box::real(x / r), Box::from_int(0, p), Box::real(Interval::from_int(1, p) / r), true),
            Interval::from_int(0, p)};
}

GtilElement gtil_shift(const GtilElement& x, long k) {
    return {x.g, x.t + Interval::from_int(k, x.t.prec()) * two_pi(x.t.prec())};
}

Matrix2 real_part(const Matrix2& m) {
    std::array<Box, 4> e;
    int i = 0;
    for (const Box* b : {&m.a(), &m.b(), &m.c(), &m.d()}) {
        if (!b->im.contains_zero()) throw std::invalid_argument("matrix entry is not real");
        e[i++] = Box::real(b->re);
    }
    return Matrix2(e[0], e[1], e[2], e[3], m.certified_sl2());
}

GtilElement lift_element(const Matrix2& m) {
    Matrix2 g = real_part(m);
    const Interval& c = g.c().re;
    const Interval& d = g.d().re;
    Box w(d, -c);  // d - ic
    if (!w.excludes_zero()) throw BranchRayAmbiguity("bottom row box meets (0, 0)");
    if (!meets_negative_ray(w)) return {g, arg_principal(w)};
    // touching the ray from above only: the arg range closes at pi
    if (d.negative() && mpfr_sgn(c.hi().get()) <= 0) {
        Interval pi = pi_interval(w.prec());
        if (c.is_point()) return {g, pi};
        // smallest angle is at the corner nearest the imaginary axis
        Box corner(Interval::from_reals(d.hi(), d.hi(), d.prec()), -Interval::from_reals(c.lo(), c.lo(), c.prec()));
        return {g, hull(arg_principal(corner), pi)};
    }
    throw BranchRayAmbiguity("(d - ic) box meets the negative real axis");
}

GtilElement gtil_mul(const GtilElement& x, const GtilElement& y) {
    Box r = correction(x.t, image_of_i(y.g));
    return {x.g * y.g, x.t + y.t - arg_principal(r)};
}

GtilElement gtil_inverse(const GtilElement& x) {
    Matrix2 inv = sl2_inverse(x.g);
    Box r = correction(x.t, image_of_i(inv));
    return {inv, arg_principal(r) - x.t};
}

ObstructionCocycle relator_obstruction(const std::vector<GtilElement>& lifts, const Presentation& pres) {
    if (static_cast<int>(lifts.size()) != pres.rank()) throw std::invalid_argument("one lift per generator is needed");
    mpfr_prec_t prec = lifts.empty() ? default_precision : lifts.front().g.prec();
    std::vector<std::optional<GtilElement>> inverses(lifts.size());
    ObstructionCocycle out;
    out.presentation = pres;
    for (size_t i = 0; i < pres.relators.size(); ++i) {
        GtilElement acc = gtil_identity(prec);
        for (int l : pres.relators[i].letters) {
            int s = generator_of(l);
            if (l > 0) {
                acc = gtil_mul(acc, lifts[s]);
            } else {
                if (!inverses[s]) inverses[s] = gtil_inverse(lifts[s]);
                acc = gtil_mul(acc, *inverses[s]);
            }
        }
        std::string name = "relator " + std::to_string(i);
        if (!contains_identity(acc.g) || contains_minus_identity(acc.g))
            throw CentralValueAmbiguous(name + " does not evaluate to a box containing I and excluding -I");
        Interval q = acc.t / two_pi(acc.t.prec());
        mpz_class lo = ceil_q(q.lo_q()), hi = floor_q(q.hi_q());
        if (lo != hi) throw CentralValueAmbiguous(name + ": angle interval does not pin down one multiple of 2 pi");
        if (!lo.fits_slong_p()) throw CentralValueAmbiguous(name + ": central value out of range");
        out.m.push_back(lo.get_si());
        out.t.push_back(acc.t);
    }
    return out;
}

namespace {

std::vector<GtilElement> lift_generators(const ApproxHolonomy& rho) {
    std::vector<GtilElement> lifts;
    for (const Matrix2& g : rho.images) lifts.push_back(lift_element(g));
    return lifts;
}

}  // namespace

ObstructionCocycle relator_obstruction(const ApproxHolonomy& rho, const Presentation& pres) {
    return relator_obstruction(lift_generators(rho), pres);
}

IntMatrix exponent_matrix(const Presentation& pres) {
    IntMatrix e(pres.relators.size(), pres.rank());
    for (size_t i = 0; i < pres.relators.size(); ++i) {
        auto s = exponent_sums(pres.relators[i], pres.rank());
        for (int j = 0; j < pres.rank(); ++j) e(i, j) = s[j];
    }
    return e;
}

bool coboundary_holds(const Presentation& pres, const std::vector<long>& m, const IntVector& alpha) {
    if (m.size() != pres.relators.size() || static_cast<int>(alpha.size()) != pres.rank()) return false;
    IntMatrix e = exponent_matrix(pres);
    for (size_t i = 0; i < m.size(); ++i) {
        mpz_class s = 0;
        for (int j = 0; j < pres.rank(); ++j) s += e(i, j) * alpha[j];
        if (s != m[i]) return false;
    }
    return true;
}

std::string to_string(LiftVerdict v) {
    switch (v) {
        case LiftVerdict::exists: return "LiftExists";
        case LiftVerdict::obstructed: return "Obstructed";
        case LiftVerdict::unknown: return "Unknown";
    }
    return "?";
}

LiftResult lift_representation(const std::vector<GtilElement>& lifts, const Presentation& pres) {
    LiftResult r;
    try {
        r.cocycle = relator_obstruction(lifts, pres);
    } catch (const CentralValueAmbiguous& e) {
        r.reason = e.what();
        return r;
    } catch (const BranchCutUncertain& e) {
        r.reason = e.what();
        return r;
    }
    if (pres.relators.empty()) {
        r.verdict = LiftVerdict::exists;
        r.alpha.assign(pres.rank(), 0);
        return r;
    }
    IntVector m(r.cocycle->m.begin(), r.cocycle->m.end());
    auto alpha = solve_in_image(exponent_matrix(pres), m);
    if (!alpha) {
        r.verdict = LiftVerdict::obstructed;
        return r;
    }
    if (!coboundary_holds(pres, r.cocycle->m, *alpha)) throw std::logic_error("coboundary solution failed its recheck");
    r.verdict = LiftVerdict::exists;
    r.alpha = *alpha;
    return r;
}

LiftResult lift_representation(const ApproxHolonomy& rho, const Presentation& pres) {
    std::vector<GtilElement> lifts;
    try {
        lifts = lift_generators(rho);
    } catch (const BranchRayAmbiguity& e) {
        LiftResult r;
        r.reason = e.what();
        return r;
    }
    return lift_representation(lifts, pres);
}

LiftResult lift_representation(const HolonomyAt& rho_at, const Presentation& pres, mpfr_prec_t prec) {
    LiftResult r = lift_representation(rho_at(prec), pres);
    if (r.verdict != LiftVerdict::unknown) return r;
    return lift_representation(rho_at(2 * prec), pres);
}

json lift_result_to_json(const LiftResult& r) {
    json j = {{"verdict", to_string(r.verdict)}};
    if (r.cocycle) j["cocycle"] = r.cocycle->m;
    if (r.verdict == LiftVerdict::exists) {
        json a = json::array();
        for (const mpz_class& x : r.alpha) a.push_back(x.get_str());
        j["coboundary"] = a;
    }
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
}

}  // namespace cert
