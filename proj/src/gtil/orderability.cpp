#include "cert/gtil.hpp"

#include "cert/interval_json.hpp"

namespace cert {

namespace {

json slope_json(const Slope& s) { return json::array({s.p, s.q}); }

Slope slope_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("slope must be [p, q]");
    return {j.at(0).get<long>(), j.at(1).get<long>()};
}

Word peripheral_word(const DualSpinePresentation& d, const Slope& s) {
    if (!d.meridian || !d.longitude) throw std::invalid_argument("triangulation carries no peripheral curves");
    return free_reduce(power(*d.meridian, s.p) * power(*d.longitude, s.q));
}

Interval witness_trace_squared(const GluingSystem& sys, const ShapeBox& z, const Slope& witness) {
    mpfr_prec_t p = z.front().prec();
    Box h = peripheral_holonomy(sys, witness, z);
    Box t = h + Box::from_int(2, p) + Box::from_int(1, p) / h;
    return t.re;
}

// everything derived from the shapes; shared by certify and verify
struct Derived {
    GluingSystem sys;
    DualSpinePresentation spine;
    ApproxHolonomy rho;
    Interval trace_squared;
    ShapeBox image;  // Krawczyk image of the shapes, pins the exact box
};

Derived derive(const Triangulation& T, const Slope& filling, const ShapeBox& shapes, const Slope& witness,
               const std::function<void(const std::string&)>& stage) {
    Derived d;
    stage("structure");
    d.sys = build_gluing_system(T, filling, GluingForm::rectangular);
    if (static_cast<int>(shapes.size()) != d.sys.n) throw std::invalid_argument("one shape per tetrahedron is needed");
    for (int i = 0; i < d.sys.n; ++i) {
        if (!shapes[i].is_real()) throw std::invalid_argument("shape " + std::to_string(i) + " is not real");
        if (shapes[i].re.contains(0) || shapes[i].re.contains(1)) throw DegenerateShape(i);
    }
    auto image = krawczyk_image(d.sys, shapes);
    if (!image) throw NoContraction("stored shape box does not contract");
    d.image = std::move(*image);
    stage("witness");
    d.trace_squared = witness_trace_squared(d.sys, shapes, witness);
    check_hyperbolicity_witness(d.trace_squared);
    stage("presentation");
    d.spine = dual_spine_presentation(T, filling);
    stage("holonomy");
    d.rho = develop_holonomy(shapes, T, d.spine.paths, d.spine.presentation.generators);
    d.rho.relators = d.spine.presentation.relators;
    for (Matrix2& m : d.rho.images) m = real_part(m);
    return d;
}

}  // namespace

json certify_orderable(const Triangulation& T, const Slope& filling, const CertifiedRealStructure& s) {
    std::string stage = "input";
    auto at = [&](const std::string& st) { stage = st; };
    try {
        Derived d = derive(T, filling, s.shapes, s.witness, at);
        const Presentation& pres = d.spine.presentation;
        std::vector<int> signs = choose_lift_signs(d.rho, pres);
        at("filling");
        Word fill = pres.relators.back();
        if (!contains_identity(evaluate_word(d.rho, fill))) throw std::runtime_error("filling relator is not the identity");
        at("nontrivial");
        Box tr = trace(evaluate_word(d.rho, peripheral_word(d.spine, s.witness)));
        if (!(tr.re * tr.re).above(4)) throw std::runtime_error("witness word is not provably hyperbolic");
        at("obstruction");
        ObstructionCocycle c = relator_obstruction(d.rho, pres);
        at("coboundary");
        IntVector m(c.m.begin(), c.m.end());
        auto alpha = solve_in_image(exponent_matrix(pres), m);
        if (!alpha) throw std::runtime_error("obstruction cocycle is not a coboundary");
        if (!coboundary_holds(pres, c.m, *alpha)) throw std::logic_error("coboundary recheck failed");
        json a = json::array();
        for (const mpz_class& x : *alpha) a.push_back(x.get_str());
        return {{"kind", "orderability"},
                {"triangulation", triangulation_to_json(T)},
                {"filling", slope_json(filling)},
                {"witness", slope_json(s.witness)},
                {"precision", s.shapes.front().prec()},
                {"shapes", shapes_to_json(s.shapes)},
                {"image", shapes_to_json(d.image)},
                {"trace_squared", interval_to_json(d.trace_squared)},
                {"presentation", presentation_to_json(pres)},
                {"lift_signs", signs},
                {"evaluation_order", "left-to-right"},
                {"cocycle", c.m},
                {"coboundary", a}};
    } catch (const OrderabilityFailure&) {
        throw;
    } catch (const std::exception& e) {
        throw OrderabilityFailure(stage, e.what());
    }
}

CertificateCheck verify_orderable(const json& cert) {
    CertificateCheck out;
    out.stage = "input";
    auto at = [&](const std::string& st) { out.stage = st; };
    try {
        if (cert.at("kind") != "orderability") throw std::invalid_argument("not an orderability certificate");
        if (cert.at("evaluation_order") != "left-to-right") throw std::invalid_argument("unknown evaluation order");
        Triangulation T = triangulation_from_json(cert.at("triangulation"));
        if (triangulation_to_json(T) != cert.at("triangulation"))
            throw std::invalid_argument("triangulation is not in canonical form");
        Slope filling = slope_from(cert.at("filling"));
        Slope witness = slope_from(cert.at("witness"));
        mpfr_prec_t prec = cert.at("precision").get<long>();
        if (prec < 2) throw std::invalid_argument("bad precision");
        ShapeBox shapes = shapes_from_json(cert.at("shapes"), prec);
        // decimals that round to the same box are still a different file
        if (shapes_to_json(shapes) != cert.at("shapes")) throw std::invalid_argument("shapes are not in canonical form");
        Presentation stored = presentation_from_json(cert.at("presentation"));
        std::vector<int> signs = cert.at("lift_signs").get<std::vector<int>>();
        std::vector<long> m = cert.at("cocycle").get<std::vector<long>>();
        IntVector alpha;
        for (const json& x : cert.at("coboundary")) alpha.emplace_back(x.get<std::string>());

        Derived d = derive(T, filling, shapes, witness, at);
        if (shapes_to_json(d.image) != cert.at("image"))
            throw std::runtime_error("stored Krawczyk image differs from the recomputed one");
        at("witness");
        if (interval_to_json(d.trace_squared) != cert.at("trace_squared"))
            throw std::runtime_error("stored trace does not match the shapes");
        at("presentation");
        const Presentation& pres = d.spine.presentation;
        if (stored.generators != pres.generators || stored.relators != pres.relators)
            throw std::runtime_error("stored presentation differs from the triangulation's");
        at("lift_signs");
        if (static_cast<int>(signs.size()) != pres.rank()) throw std::runtime_error("wrong number of lift signs");
        for (int i = 0; i < pres.rank(); ++i) {
            if (signs[i] != 1 && signs[i] != -1) throw std::runtime_error("lift signs must be +1 or -1");
            if (signs[i] < 0) d.rho.images[i] = -d.rho.images[i];
        }
        for (const Word& r : pres.relators) {
            Matrix2 v = evaluate_word(d.rho, r);
            if (!contains_identity(v) || contains_minus_identity(v))
                throw std::runtime_error("a relator is not +I under the stored signs");
        }
        ApproxHolonomy fresh = d.rho;
        for (int i = 0; i < pres.rank(); ++i)
            if (signs[i] < 0) fresh.images[i] = -fresh.images[i];
        if (choose_lift_signs(fresh, pres) != signs) throw std::runtime_error("lift signs are not the canonical choice");
        at("filling");
        if (!contains_identity(evaluate_word(d.rho, pres.relators.back())))
            throw std::runtime_error("filling relator is not the identity");
        at("nontrivial");
        Box tr = trace(evaluate_word(d.rho, peripheral_word(d.spine, witness)));
        if (!(tr.re * tr.re).above(4)) throw std::runtime_error("witness word is not provably hyperbolic");
        at("obstruction");
        ObstructionCocycle c = relator_obstruction(d.rho, pres);
        if (c.m != m) throw std::runtime_error("stored cocycle differs from the evaluated one");
        at("coboundary");
        if (!coboundary_holds(pres, m, alpha)) throw std::runtime_error("coboundary check failed in exact arithmetic");
        IntVector mm(m.begin(), m.end());
        if (solve_in_image(exponent_matrix(pres), mm) != alpha)
            throw std::runtime_error("coboundary is not the canonical solution");
        out.ok = true;
        out.stage.clear();
    } catch (const std::exception& e) {
        out.detail = e.what();
    }
    return out;
}

}  // namespace cert
