#include "cert/gluing.hpp"

#include "cert/elementary.hpp"
#include "cert/interval_json.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace cert {

namespace {

// corner parameter carried by a tet edge: 0 -> z, 1 -> z', 2 -> z''
int corner_type(int i, int j) {
    if (i > j) std::swap(i, j);
    if ((i == 0 && j == 1) || (i == 2 && j == 3)) return 0;
    if ((i == 0 && j == 2) || (i == 1 && j == 3)) return 1;
    return 2;
}

long flow(long a, long b) {
    if (a > 0 && b < 0) return std::min(a, -b);
    if (a < 0 && b > 0) return -std::min(-a, b);
    return 0;
}

std::vector<std::array<long, 3>> curve_corner_counts(const Triangulation& T, const CornerWeights& w) {
    std::vector<std::array<long, 3>> counts(T.size(), {0, 0, 0});
    for (int t = 0; t < T.size(); ++t)
        for (int v = 0; v < 4; ++v)
            for (int f = 0; f < 4; ++f)
                for (int g = f + 1; g < 4; ++g) {
                    if (f == v || g == v) continue;
                    int u = 6 - v - f - g;
                    long fl = flow(w[t][v][f], w[t][v][g]);
                    if (fl == 0) continue;
                    counts[t][corner_type(v, u)] += -parity4(v, u, f, g) * fl;
                }
    return counts;
}

}  // namespace

PeripheralRow row_from_corner_counts(const std::vector<std::array<long, 3>>& counts) {
    // log z' = -log(1 - z), log z'' = log(1 - z) - log z + pi i
    PeripheralRow r;
    r.a.assign(counts.size(), 0);
    r.b.assign(counts.size(), 0);
    for (size_t t = 0; t < counts.size(); ++t) {
        r.a[t] = counts[t][0] - counts[t][2];
        r.b[t] = -counts[t][1] + counts[t][2];
        r.c += counts[t][2];
    }
    return r;
}

GluingSystem build_gluing_system(const Triangulation& T, std::optional<Slope> filling, GluingForm form) {
    if (T.kind() != TriangulationKind::ideal || T.vertex_count() != 1) throw NotIdealTriangulation();
    if (!T.peripheral()) throw MissingPeripheralData();
    GluingSystem sys;
    sys.n = T.size();
    sys.form = form;
    sys.filling = filling;
    for (int e = 0; e < T.edge_count(); ++e) {
        std::vector<std::array<long, 3>> counts(T.size(), {0, 0, 0});
        for (const EdgeSlot& s : T.slots_of_edge(e))
            ++counts[s.tet][corner_type(edge_vertices[s.edge][0], edge_vertices[s.edge][1])];
        PeripheralRow r = row_from_corner_counts(counts);
        sys.equations.push_back({r.a, r.b, 2 - r.c, EquationKind::edge});
    }
    sys.meridian = row_from_corner_counts(curve_corner_counts(T, T.peripheral()->meridian));
    sys.longitude = row_from_corner_counts(curve_corner_counts(T, T.peripheral()->longitude));
    GluingEquation last;
    if (filling) {
        long p = filling->p, q = filling->q;
        last.kind = EquationKind::filling;
        for (int t = 0; t < sys.n; ++t) {
            last.a.push_back(p * sys.meridian.a[t] + q * sys.longitude.a[t]);
            last.b.push_back(p * sys.meridian.b[t] + q * sys.longitude.b[t]);
        }
        last.c = 2 - (p * sys.meridian.c + q * sys.longitude.c);
    } else {
        // complete structure: log H(meridian) = 0 replaces the redundant last
        // edge equation, so the system is square
        sys.equations.pop_back();
        last = {sys.meridian.a, sys.meridian.b, -sys.meridian.c, EquationKind::cusp};
    }
    sys.equations.push_back(std::move(last));
    return sys;
}

ShapeBox shapes_from_json(const json& j, mpfr_prec_t prec) {
    const json& arr = j.is_object() ? j.at("shapes") : j;
    ShapeBox out;
    for (const json& s : arr) {
        // [re, im] decimal strings, or a {"re", "im"} box
        if (s.is_array() && s.size() == 2 && s[0].is_string())
            out.push_back(Box(Interval::from_strings(s[0], s[0], prec), Interval::from_strings(s[1], s[1], prec)));
        else
            out.push_back(box_from_json(s, prec));
    }
    return out;
}

json shapes_to_json(const ShapeBox& s) {
    json arr = json::array();
    for (const Box& b : s) arr.push_back(box_to_json(b));
    return arr;
}

namespace {

Box power(const Box& x, long k) {
    Box r = Box::from_int(1, x.prec()), base = x;
    while (k > 0) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

Box one_minus(const Box& z) { return Box::from_int(1, z.prec()) - z; }

Box pi_i(mpfr_prec_t p) { return Box(Interval::from_int(0, p), pi_interval(p)); }

// the positive and negative parts of the monomial prod z^a (1-z)^b
std::pair<Box, Box> monomial_parts(const std::vector<long>& a, const std::vector<long>& b, const ShapeBox& z) {
    mpfr_prec_t p = z.front().prec();
    Box pos = Box::from_int(1, p), neg = Box::from_int(1, p);
    for (size_t i = 0; i < z.size(); ++i) {
        Box w = one_minus(z[i]);
        if (a[i] > 0) pos = pos * power(z[i], a[i]);
        if (a[i] < 0) neg = neg * power(z[i], -a[i]);
        if (b[i] > 0) pos = pos * power(w, b[i]);
        if (b[i] < 0) neg = neg * power(w, -b[i]);
    }
    return {pos, neg};
}

using BoxMatrix = std::vector<std::vector<Box>>;

// square system: a filled system drops its last edge equation
std::vector<const GluingEquation*> square_system(const GluingSystem& sys) {
    std::vector<const GluingEquation*> eqs;
    const bool drop = static_cast<int>(sys.equations.size()) == sys.n + 1;
    int edges = 0;
    for (const auto& e : sys.equations)
        if (e.kind == EquationKind::edge) ++edges;
    int seen = 0;
    for (const auto& e : sys.equations) {
        if (drop && e.kind == EquationKind::edge && ++seen == edges) continue;
        eqs.push_back(&e);
    }
    if (static_cast<int>(eqs.size()) != sys.n) throw std::invalid_argument("gluing system is not square");
    return eqs;
}

BoxMatrix jacobian(const GluingSystem& sys, const std::vector<const GluingEquation*>& eqs, const ShapeBox& z) {
    const int n = sys.n;
    mpfr_prec_t p = z.front().prec();
    BoxMatrix J(eqs.size(), std::vector<Box>(n, Box::from_int(0, p)));
    for (size_t r = 0; r < eqs.size(); ++r) {
        const GluingEquation& e = *eqs[r];
        if (sys.form == GluingForm::logarithmic) {
            for (int i = 0; i < n; ++i) {
                if (e.a[i]) J[r][i] = J[r][i] + Interval::from_int(e.a[i], p) * (Box::from_int(1, p) / z[i]);
                if (e.b[i]) J[r][i] = J[r][i] - Interval::from_int(e.b[i], p) * (Box::from_int(1, p) / one_minus(z[i]));
            }
            continue;
        }
        // d/dz_i of prod+ - (-1)^c prod-, factor by factor
        long sgn = (e.c % 2 == 0) ? 1 : -1;
        for (int i = 0; i < n; ++i) {
            if (!e.a[i] && !e.b[i]) continue;
            for (int part = 0; part < 2; ++part) {
                long ea = part == 0 ? std::max(e.a[i], 0L) : std::max(-e.a[i], 0L);
                long eb = part == 0 ? std::max(e.b[i], 0L) : std::max(-e.b[i], 0L);
                if (!ea && !eb) continue;
                Box rest = Box::from_int(1, p);
                for (int k = 0; k < n; ++k) {
                    if (k == i) continue;
                    long ka = part == 0 ? std::max(e.a[k], 0L) : std::max(-e.a[k], 0L);
                    long kb = part == 0 ? std::max(e.b[k], 0L) : std::max(-e.b[k], 0L);
                    if (ka) rest = rest * power(z[k], ka);
                    if (kb) rest = rest * power(one_minus(z[k]), kb);
                }
                Box w = one_minus(z[i]);
                Box d = Box::from_int(0, p);
                if (ea) d = d + Interval::from_int(ea, p) * (power(z[i], ea - 1) * power(w, eb));
                if (eb) d = d - Interval::from_int(eb, p) * (power(z[i], ea) * power(w, eb - 1));
                Box term = rest * d;
                J[r][i] = part == 0 ? J[r][i] + term : J[r][i] - Interval::from_int(sgn, p) * term;
            }
        }
    }
    return J;
}

Box mid(const Box& x) { return mid_point(x); }

// Gaussian elimination with partial pivoting on midpoints; returns
// approximate solutions of A X = B (columns of B).
BoxMatrix solve_mid(BoxMatrix A, BoxMatrix B) {
    const size_t n = A.size();
    for (auto& row : A)
        for (auto& x : row) x = mid(x);
    for (auto& row : B)
        for (auto& x : row) x = mid(x);
    auto size_of = [](const Box& x) {
        double r = x.re.mid_double(), i = x.im.mid_double();
        return std::abs(r) + std::abs(i);
    };
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        for (size_t i = k + 1; i < n; ++i)
            if (size_of(A[i][k]) > size_of(A[piv][k])) piv = i;
        if (!A[piv][k].excludes_zero() || size_of(A[piv][k]) == 0) throw SingularIntervalJacobian();
        std::swap(A[k], A[piv]);
        std::swap(B[k], B[piv]);
        for (size_t i = k + 1; i < n; ++i) {
            Box f = mid(A[i][k] / A[k][k]);
            for (size_t j = k; j < n; ++j) A[i][j] = mid(A[i][j] - f * A[k][j]);
            for (size_t j = 0; j < B[i].size(); ++j) B[i][j] = mid(B[i][j] - f * B[k][j]);
        }
    }
    for (size_t k = n; k-- > 0;)
        for (size_t j = 0; j < B[k].size(); ++j) {
            Box s = B[k][j];
            for (size_t l = k + 1; l < n; ++l) s = mid(s - A[k][l] * B[l][j]);
            B[k][j] = mid(s / A[k][k]);
        }
    return B;
}

std::vector<Box> residuals(const GluingSystem& sys, const std::vector<const GluingEquation*>& eqs, const ShapeBox& z) {
    std::vector<Box> out;
    for (const auto* e : eqs) out.push_back(residual(sys, *e, z));
    return out;
}

bool real_mode(const GluingSystem& sys, const ShapeBox& z) {
    if (sys.form != GluingForm::rectangular) return false;
    for (const Box& b : z)
        if (!b.is_real()) return false;
    return true;
}

// K(X) = x - Y f(x) + (I - Y J(X)) (X - x)
ShapeBox krawczyk_operator(const GluingSystem& sys, const std::vector<const GluingEquation*>& eqs, const ShapeBox& x,
                           const BoxMatrix& Y, const ShapeBox& X) {
    const int n = sys.n;
    mpfr_prec_t p = X.front().prec();
    std::vector<Box> f = residuals(sys, eqs, x);
    BoxMatrix J = jacobian(sys, eqs, X);
    ShapeBox K;
    for (int i = 0; i < n; ++i) {
        Box k = x[i];
        for (int j = 0; j < n; ++j) k = k - Y[i][j] * f[j];
        for (int l = 0; l < n; ++l) {
            Box m = Box::from_int(i == l ? 1 : 0, p);
            for (int j = 0; j < n; ++j) m = m - Y[i][j] * J[j][l];
            k = k + m * (X[l] - x[l]);
        }
        K.push_back(k);
    }
    return K;
}

bool inside(const ShapeBox& K, const ShapeBox& X, bool real) {
    for (size_t i = 0; i < K.size(); ++i) {
        if (real) {
            if (!K[i].is_real() || !interior(K[i].re, X[i].re)) return false;
        } else if (!interior(K[i], X[i])) {
            return false;
        }
    }
    return true;
}

// box x +- r (1 + |x|), real-only in real mode
ShapeBox inflate(const ShapeBox& x, const mpq_class& r, bool real) {
    ShapeBox X;
    for (const Box& b : x) {
        mpfr_prec_t p = b.prec();
        double m = std::abs(b.re.mid_double()) + std::abs(b.im.mid_double());
        mpq_class rad = r * (1 + static_cast<long>(std::ceil(m)));
        Interval d = Interval::symmetric(rad, p);
        X.push_back(real ? Box(b.re + d, Interval::from_int(0, p)) : Box(b.re + d, b.im + d));
    }
    return X;
}

// radius of a box vector, as the largest half-width
mpq_class radius(const ShapeBox& X) {
    mpq_class r = 0;
    for (const Box& b : X) r = std::max<mpq_class>(r, diameter(b) / 2);
    return r;
}

long log2_size(const std::vector<Box>& v) {
    long e = std::numeric_limits<long>::min();
    for (const Box& b : v)
        for (const Interval* x : {&b.re, &b.im}) {
            Interval m = magnitude(*x);
            if (mpfr_zero_p(m.hi().get())) continue;
            e = std::max<long>(e, mpfr_get_exp(m.hi().get()));
        }
    return e;
}

BoxMatrix mid_inverse(const BoxMatrix& J) {
    const size_t n = J.size();
    mpfr_prec_t p = J[0][0].prec();
    BoxMatrix I(n, std::vector<Box>(n, Box::from_int(0, p)));
    for (size_t i = 0; i < n; ++i) I[i][i] = Box::from_int(1, p);
    return solve_mid(J, I);
}

}  // namespace

Box residual(const GluingSystem& sys, const GluingEquation& eq, const ShapeBox& z) {
    mpfr_prec_t p = z.front().prec();
    if (sys.form == GluingForm::logarithmic) {
        Box s = Box::from_int(0, p);
        for (int i = 0; i < sys.n; ++i) {
            if (eq.a[i]) s = s + Interval::from_int(eq.a[i], p) * log(z[i]);
            if (eq.b[i]) s = s + Interval::from_int(eq.b[i], p) * log(one_minus(z[i]));
        }
        return s - Interval::from_int(eq.c, p) * pi_i(p);
    }
    auto [pos, neg] = monomial_parts(eq.a, eq.b, z);
    return eq.c % 2 == 0 ? pos - neg : pos + neg;
}

KrawczykResult krawczyk_certify(const GluingSystem& sys, const ShapeBox& initial, mpfr_prec_t prec) {
    if (static_cast<int>(initial.size()) != sys.n) throw std::invalid_argument("one initial shape per tetrahedron is needed");
    const auto eqs = square_system(sys);
    const bool real = real_mode(sys, initial);
    ShapeBox x;
    for (const Box& b : initial) x.push_back(mid(widen_to_precision(b, prec)));
    const ShapeBox seed = x;
    KrawczykResult out;

    // floating Newton refinement at the working precision
    auto drift_ok = [&] {
        for (int i = 0; i < sys.n; ++i) {
            std::complex<double> a(x[i].re.mid_double(), x[i].im.mid_double()),
                s(seed[i].re.mid_double(), seed[i].im.mid_double());
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
            if (std::abs(a - s) > 0.1 * (1 + std::abs(s))) return false;
        }
        return true;
    };
    try {
        for (int it = 0; it < 200; ++it) {
            std::vector<Box> f = residuals(sys, eqs, x);
            BoxMatrix rhs;
            for (const Box& v : f) rhs.push_back({v});
            BoxMatrix d = solve_mid(jacobian(sys, eqs, x), rhs);
            std::vector<Box> step;
            for (int i = 0; i < sys.n; ++i) {
                step.push_back(d[i][0]);
                x[i] = mid(x[i] - d[i][0]);
            }
            ++out.newton_steps;
            if (!drift_ok()) throw NoContraction("Newton refinement left the neighborhood of the seed");
            long e = log2_size(step);
            if (e < -static_cast<long>(prec) + 8) break;
        }
    } catch (const DomainViolation&) {
        throw NoContraction("Newton refinement met a logarithm branch cut");
    } catch (const DivisorContainsZero&) {
        throw NoContraction("Newton refinement met a degenerate shape");
    }

    BoxMatrix Y;
    try {
        Y = mid_inverse(jacobian(sys, eqs, x));
    } catch (const DivisorContainsZero&) {
        throw SingularIntervalJacobian();
    }
    mpq_class r = mpq_class(1) / (mpz_class(1) << static_cast<unsigned long>(prec > 16 ? prec - 16 : 1));
    for (int attempt = 0; attempt < 8; ++attempt, r *= 1024) {
        ShapeBox X = inflate(x, r, real);
        ShapeBox K;
        try {
            K = krawczyk_operator(sys, eqs, x, Y, X);
        } catch (const DomainViolation&) {
            throw NoContraction("candidate box meets a logarithm branch cut");
        } catch (const DivisorContainsZero&) {
            continue;
        }
        if (!inside(K, X, real)) continue;
        out.box = X;
        out.contracted = K;
        // tighten: intersect with the image and re-verify on a slightly
        // inflated hull of it
        for (int k = 0; k < 4; ++k) {
            mpq_class rk = radius(out.contracted) * 2;
            rk += mpq_class(1) / (mpz_class(1) << static_cast<unsigned long>(prec));
            ShapeBox T;
            for (size_t i = 0; i < x.size(); ++i) {
                Interval d = Interval::symmetric(rk, prec);
                const Box& c = out.contracted[i];
                Box m = mid(c);
                T.push_back(real ? Box(m.re + d, Interval::from_int(0, prec)) : Box(m.re + d, m.im + d));
            }
            ShapeBox KT;
            try {
                KT = krawczyk_operator(sys, eqs, x, Y, T);
            } catch (const std::domain_error&) {
                break;
            }
            if (!inside(KT, T, real) || radius(T) >= radius(out.box)) break;
            out.box = T;
            out.contracted = KT;
        }
        return out;
    }
    throw NoContraction("Krawczyk inclusion failed");
}

std::optional<ShapeBox> krawczyk_image(const GluingSystem& sys, const ShapeBox& box) {
    if (static_cast<int>(box.size()) != sys.n) return std::nullopt;
    const auto eqs = square_system(sys);
    const bool real = real_mode(sys, box);
    try {
        ShapeBox x;
        for (const Box& b : box) x.push_back(mid(b));
        BoxMatrix Y = mid_inverse(jacobian(sys, eqs, x));
        ShapeBox k = krawczyk_operator(sys, eqs, x, Y, box);
        if (!inside(k, box, real)) return std::nullopt;
        return k;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

bool krawczyk_contracts(const GluingSystem& sys, const ShapeBox& box) { return krawczyk_image(sys, box).has_value(); }

CertifiedStructure certify_hyperbolic_structure(const GluingSystem& sys, const ShapeBox& box) {
    if (static_cast<int>(box.size()) != sys.n) throw std::invalid_argument("one shape per tetrahedron is needed");
    for (int i = 0; i < sys.n; ++i)
        if (!box[i].im.positive()) throw NonPositiveImaginaryPart(i);
    return {box};
}

Box peripheral_holonomy(const GluingSystem& sys, const Slope& s, const ShapeBox& z) {
    std::vector<long> a, b;
    for (int t = 0; t < sys.n; ++t) {
        a.push_back(s.p * sys.meridian.a[t] + s.q * sys.longitude.a[t]);
        b.push_back(s.p * sys.meridian.b[t] + s.q * sys.longitude.b[t]);
    }
    long c = s.p * sys.meridian.c + s.q * sys.longitude.c;
    auto [pos, neg] = monomial_parts(a, b, z);
    Box h = pos / neg;
    return c % 2 == 0 ? h : -h;
}

void check_hyperbolicity_witness(const Interval& tr2) {
    if (!tr2.above(4)) throw HyperbolicityWitnessFailed();
}

CertifiedRealStructure certify_real_structure(const GluingSystem& sys, const ShapeBox& seed, const Slope& witness,
                                              mpfr_prec_t prec, const TraceHook& hook) {
    if (sys.form != GluingForm::rectangular) throw std::invalid_argument("real shapes need the rectangular form");
    for (int i = 0; i < static_cast<int>(seed.size()); ++i) {
        if (!seed[i].is_real()) throw std::invalid_argument("real certification needs real seeds");
        if (seed[i].re.contains(0) || seed[i].re.contains(1)) throw DegenerateShape(i);
    }
    KrawczykResult k = krawczyk_certify(sys, seed, prec);
    for (int i = 0; i < sys.n; ++i)
        if (k.box[i].re.contains(0) || k.box[i].re.contains(1)) throw DegenerateShape(i);
    Interval tr2;
    if (hook) {
        tr2 = hook(k.box, witness);
    } else {
        Box h = peripheral_holonomy(sys, witness, k.box);
        Box t = h + Box::from_int(2, prec) + Box::from_int(1, prec) / h;
        tr2 = t.re;
    }
    check_hyperbolicity_witness(tr2);
    return {k.box, witness, tr2};
}

}  // namespace cert
