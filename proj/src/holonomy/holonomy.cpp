#include "cert/holonomy.hpp"

#include "cert/elementary.hpp"
#include "cert/interval_json.hpp"

namespace cert {

namespace {

using Point = std::optional<Box>;  // nullopt is infinity

// ideal vertices of a tet with shape z, by local vertex index
std::array<Point, 4> placement(const Box& z) {
    mpfr_prec_t p = z.prec();
    return {Point(), Point(Box::from_int(0, p)), Point(Box::from_int(1, p)), Point(z)};
}

// Moebius map sending (p1, p2, p3) to (0, infinity, 1)
Matrix2 to_standard(const Point& p1, const Point& p2, const Point& p3, mpfr_prec_t prec) {
    Box one = Box::from_int(1, prec), zero = Box::from_int(0, prec);
    if (!p1) return Matrix2(zero, *p3 - *p2, one, -*p2);
    if (!p2) return Matrix2(one, -*p1, zero, *p3 - *p1);
    if (!p3) return Matrix2(one, -*p1, one, -*p2);
    Box u = *p3 - *p2, v = *p3 - *p1;
    return Matrix2(u, -(*p1 * u), v, -(*p2 * v));
}

Matrix2 adjugate(const Matrix2& m) { return Matrix2(m.d(), -m.b(), -m.c(), m.a()); }

// Map placing the neighbour across face `f` of tet `t` next to t.
Matrix2 crossing_matrix(const ShapeBox& z, const Triangulation& T, int t, int f) {
    const Gluing& g = T.gluing(t, f);
    mpfr_prec_t prec = z[t].prec();
    auto pt = placement(z[t]), pu = placement(z[g.tet]);
    std::array<int, 3> k{};
    int n = 0;
    for (int v = 0; v < 4; ++v)
        if (v != f) k[n++] = v;
    Matrix2 ft = to_standard(pt[k[0]], pt[k[1]], pt[k[2]], prec);
    Matrix2 fu = to_standard(pu[g.perm[k[0]]], pu[g.perm[k[1]]], pu[g.perm[k[2]]], prec);
    return adjugate(ft) * fu;
}

// sign rule: the first entry whose box excludes 0 gets a positive real part,
// or a positive imaginary part when its real part straddles 0
bool needs_flip(const Matrix2& m) {
    for (const Box* e : {&m.a(), &m.b(), &m.c(), &m.d()}) {
        if (e->re.positive() || e->re.negative()) return e->re.negative();
        if (e->im.positive() || e->im.negative()) return e->im.negative();
    }
    throw PrecisionCollapse("no entry of the matrix is bounded away from 0");
}

Matrix2 normalize_sl2(const Matrix2& m) {
    Box det = m.a() * m.d() - m.b() * m.c();
    Box s;
    try {
        if (det.is_real() && det.re.positive())
            s = Box::real(sqrt_pos(det.re));
        else
            s = sqrt(det);
        Matrix2 r(m.a() / s, m.b() / s, m.c() / s, m.d() / s, true);
        return needs_flip(r) ? -r : r;
    } catch (const std::domain_error&) {
        throw PrecisionCollapse("determinant box meets 0");
    }
}

}  // namespace

Matrix2 develop_path(const ShapeBox& shapes, const Triangulation& T, const FacePath& path) {
    if (static_cast<int>(shapes.size()) != T.size()) throw std::invalid_argument("one shape per tetrahedron is needed");
    mpfr_prec_t prec = shapes.front().prec();
    if (path.empty()) return Matrix2::identity(prec);
    Matrix2 g = Matrix2::identity(prec).with_sl2_flag(false);
    int at = path.front().tet;
    for (const FaceCrossing& c : path) {
        if (c.tet != at || c.face < 0 || c.face > 3) throw PathNotClosed("face path does not chain");
        g = g * crossing_matrix(shapes, T, c.tet, c.face);
        at = T.gluing(c.tet, c.face).tet;
    }
    if (at != path.front().tet) throw PathNotClosed("face path does not return to its start");
    return normalize_sl2(g);
}

ApproxHolonomy develop_holonomy(const ShapeBox& shapes, const Triangulation& T, const std::vector<FacePath>& paths,
                                const std::vector<std::string>& names) {
    if (paths.size() != names.size()) throw std::invalid_argument("one path per generator is needed");
    ApproxHolonomy rho;
    rho.generators = names;
    rho.provenance = HolonomyProvenance::developed;
    rho.precision = shapes.front().prec();
    const int base = paths.empty() || paths.front().empty() ? 0 : paths.front().front().tet;
    for (const FacePath& p : paths) {
        if (!p.empty() && p.front().tet != base) throw PathNotClosed("generator paths must share a base tetrahedron");
        rho.images.push_back(develop_path(shapes, T, p));
    }
    return rho;
}

ApproxHolonomy develop_holonomy(const CertifiedStructure& s, const Triangulation& T, const DualSpinePresentation& d) {
    ApproxHolonomy rho = develop_holonomy(s.shapes, T, d.paths, d.presentation.generators);
    rho.relators = d.presentation.relators;
    choose_lift_signs(rho, d.presentation);
    return rho;
}

std::vector<int> choose_lift_signs(ApproxHolonomy& rho, const Presentation& pres) {
    const int n = rho.images.size(), m = pres.relators.size();
    // rows over F_2: exponent parities | relator currently -I
    std::vector<std::vector<int>> rows;
    for (const Word& r : pres.relators) {
        Matrix2 v = evaluate_word(rho, r);
        bool plus = contains_identity(v), minus = contains_minus_identity(v);
        if (plus == minus) throw PrecisionCollapse("relator box does not separate +I from -I");
        std::vector<int> row(n + 1);
        auto e = exponent_sums(r, n);
        for (int i = 0; i < n; ++i) row[i] = static_cast<int>(((e[i] % 2) + 2) % 2);
        row[n] = minus ? 1 : 0;
        rows.push_back(row);
    }
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int p = r;
        while (p < m && !rows[p][c]) ++p;
        if (p == m) continue;
        std::swap(rows[p], rows[r]);
        for (int i = 0; i < m; ++i)
            if (i != r && rows[i][c])
                for (int k = 0; k <= n; ++k) rows[i][k] ^= rows[r][k];
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < m; ++i)
        if (rows[i][n]) throw LiftSignsUnsolvable();
    std::vector<int> flips(n, 1);
    for (int i = 0; i < r; ++i)
        if (rows[i][n]) flips[pivot_col[i]] = -1;
    for (int i = 0; i < n; ++i)
        if (flips[i] < 0) rho.images[i] = -rho.images[i];
    return flips;
}

Matrix2 evaluate_word(const ApproxHolonomy& rho, const Word& w) {
    Matrix2 m = Matrix2::identity(rho.images.empty() ? rho.precision : rho.images.front().prec());
    for (int l : w.letters) {
        const Matrix2& g = rho.images.at(generator_of(l));
        m = m * (l > 0 ? g : sl2_inverse(g));
    }
    return m;
}

ValidationReport validate_holonomy(const ApproxHolonomy& rho, const Presentation& pres, int first, int second) {
    ValidationReport rep;
    rep.first = first;
    rep.second = second;
    for (const Word& r : pres.relators) {
        Matrix2 v = evaluate_word(rho, r);
        bool ok = contains_identity(v) || contains_minus_identity(v);
        rep.relator_ok.push_back(ok);
        rep.relators_consistent = rep.relators_consistent && ok;
    }
    const Matrix2& a = rho.images.at(first);
    const Matrix2& b = rho.images.at(second);
    rep.commutator_trace = trace(a * b * sl2_inverse(a) * sl2_inverse(b));
    rep.jorgensen_ok = !rep.commutator_trace.contains(2, 0);
    return rep;
}

std::optional<std::pair<int, int>> find_jorgensen_pair(const ApproxHolonomy& rho) {
    const int n = rho.images.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Matrix2& a = rho.images[i];
            const Matrix2& b = rho.images[j];
            if (!trace(a * b * sl2_inverse(a) * sl2_inverse(b)).contains(2, 0)) return std::pair{i, j};
        }
    return std::nullopt;
}

std::string to_string(WordVerdict v) {
    switch (v) {
        case WordVerdict::proven_trivial: return "ProvenTrivial";
        case WordVerdict::proven_nontrivial: return "ProvenNontrivial";
        case WordVerdict::unknown: return "Unknown";
    }
    return "?";
}

Interval jorgensen_quantity(const Matrix2& s, const Matrix2& w) {
    mpfr_prec_t p = w.prec();
    Box t = trace(w);
    Box c = trace(s * w * sl2_inverse(s) * sl2_inverse(w));
    return modulus(t * t - Box::from_int(4, p)) + modulus(c - Box::from_int(2, p));
}

WordVerdict decide_word(const ApproxHolonomy& rho, const Word& w, int first, int second) {
    Matrix2 m = evaluate_word(rho, w);
    if (excludes_identity(m)) return WordVerdict::proven_nontrivial;
    for (int s : {first, second})
        if (!jorgensen_quantity(rho.images.at(s), m).below(1)) return WordVerdict::unknown;
    return WordVerdict::proven_trivial;
}

LadderVerdict decide_word_ladder(const HolonomyAt& rho_at, const Word& w, const std::vector<mpfr_prec_t>& ladder,
                                 int first, int second) {
    LadderVerdict out;
    for (mpfr_prec_t p : ladder) {
        out.precision = p;
        out.verdict = decide_word(rho_at(p), w, first, second);
        if (out.verdict != WordVerdict::unknown) break;
    }
    return out;
}

const std::vector<mpfr_prec_t>& default_ladder() {
    static const std::vector<mpfr_prec_t> l{100, 200, 400, 1000};
    return l;
}

ApproxHolonomy holonomy_from_json(const json& j, std::optional<mpfr_prec_t> prec) {
    ApproxHolonomy rho;
    rho.generators = j.at("generators").get<std::vector<std::string>>();
    const json& pj = j.at("precision");
    mpfr_prec_t stored = pj.is_string() ? std::stol(pj.get<std::string>()) : pj.get<long>();
    rho.precision = prec.value_or(stored);
    if (rho.precision < 2) throw std::invalid_argument("precision must be at least 2 bits");
    // read at the stored precision, then round outward
    for (const auto& g : rho.generators) {
        const json& m = j.at("matrices").at(g);
        std::array<Box, 4> e;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) e[2 * r + c] = box_from_json(m.at(r).at(c), std::max(stored, rho.precision));
        Matrix2 mat(e[0], e[1], e[2], e[3]);
        if (!mat.det_hint().contains(1, 0)) throw std::invalid_argument("matrix for " + g + " is not in SL2");
        rho.images.push_back(widen_to_precision(mat.with_sl2_flag(true), rho.precision));
    }
    if (j.contains("relators"))
        for (const json& r : j.at("relators")) rho.relators.push_back(word_from_json(r, rho.generators));
    return rho;
}

json holonomy_to_json(const ApproxHolonomy& rho) {
    json mats = json::object();
    for (size_t i = 0; i < rho.generators.size(); ++i) {
        const Matrix2& m = rho.images[i];
        mats[rho.generators[i]] = {{box_to_json(m.a()), box_to_json(m.b())}, {box_to_json(m.c()), box_to_json(m.d())}};
    }
    json j = {{"generators", rho.generators}, {"matrices", mats}, {"precision", rho.precision}};
    if (!rho.relators.empty()) {
        json rel = json::array();
        for (const Word& w : rho.relators) rel.push_back(word_to_string(w, rho.generators));
        j["relators"] = rel;
    }
    j["provenance"] = rho.provenance == HolonomyProvenance::developed ? "developed" : "ingested";
    return j;
}

ApproxHolonomy at_precision(const ApproxHolonomy& rho, mpfr_prec_t prec) {
    ApproxHolonomy r = rho;
    r.precision = prec;
    for (Matrix2& m : r.images) m = widen_to_precision(m, prec);
    return r;
}

}  // namespace cert
