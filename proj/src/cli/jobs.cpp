#include "common.hpp"

namespace cert::cli {

using namespace detail;

namespace {

json mid_shapes(const ShapeBox& s) {
    json out = json::array();
    for (const Box& b : s) out.push_back(json::array({b.re.mid_double(), b.im.mid_double()}));
    return out;
}

int tree_exit(TreeVerdict v) {
    switch (v) {
        case TreeVerdict::verified: return exit_proved;
        case TreeVerdict::refuted: return exit_refuted;
        case TreeVerdict::unknown: break;
    }
    return exit_unknown;
}

json decisions_json(const TreeReport& r, const std::vector<std::string>& gens) {
    json out = json::array();
    for (const DecidedWord& d : r.decisions)
        out.push_back({{"word", word_to_string(d.word, gens)},
                       {"verdict", to_string(d.result.verdict)},
                       {"precision", d.result.precision}});
    return out;
}

Outcome check_tree(const std::string& task, const NonorderingTree& t, const LoadedHolonomy& h,
                   std::optional<GeneratorPair> pair, const Ladder& ladder) {
    if (pair) check_pair(*pair, h.base.presentation().rank());
    TreeReport r = verify_tree(t, h.at(), {ladder, pair});
    Outcome o;
    o.code = tree_exit(r.verdict);
    o.report = {{"task", task},
                {"verdict", to_string(r.verdict)},
                {"vertices", t.vertex_count},
                {"leaves", t.leaves.size()},
                {"words_decided", r.words_decided},
                {"max_precision_used", r.max_precision_used}};
    if (!r.reason.empty()) o.report["reason"] = r.reason;
    if (r.verdict != TreeVerdict::verified) return o;
    o.certificate = json{{"kind", "tree"},
                         {"tree", tree_to_json(t)},
                         {"holonomy", h.canonical},
                         {"jorgensen_pair", pair_json(*r.jorgensen_pair)},
                         {"ladder", ladder},
                         {"decisions", decisions_json(r, t.presentation.generators)},
                         {"verdict", to_string(r.verdict)}};
    return o;
}

}  // namespace

Outcome analyze_job(const json& tri) {
    Triangulation T = triangulation_from_json(tri);
    json chi = json::array();
    for (int v = 0; v < T.vertex_count(); ++v) chi.push_back(T.link_euler_characteristic(v));
    Outcome o;
    o.code = exit_proved;
    o.report = {{"task", "analyze-tri"},
                {"type", T.kind() == TriangulationKind::closed ? "closed" : "ideal"},
                {"tetrahedra", T.size()},
                {"edges", T.edge_count()},
                {"faces", T.face_count()},
                {"vertices", T.vertex_count()},
                {"link_euler_characteristics", chi},
                {"peripheral", T.peripheral().has_value()}};
    return o;
}

Outcome certify_shapes_job(const ShapesInput& in, const Ladder& ladder) {
    check_ladder(ladder);
    Triangulation T = triangulation_from_json(in.triangulation);
    ResolvedShapes rs = resolve_shapes(in);
    bool real = rs.witness.has_value();
    if (real && !rs.filling) throw InputError("a real structure needs a filling");
    GluingForm form = real ? GluingForm::rectangular : GluingForm::logarithmic;
    GluingSystem sys = build_gluing_system(T, rs.filling, form);

    Outcome o;
    o.report = {{"task", "certify-shapes"}, {"real", real}};
    std::string last;
    for (mpfr_prec_t p : ladder) {
        ShapeBox seed = shapes_from_json(rs.seed, p);
        if (static_cast<int>(seed.size()) != sys.n) throw InputError("one seed shape per tetrahedron is needed");
        try {
            ShapeBox box;
            json cert = {{"kind", "shapes"},
                         {"triangulation", triangulation_to_json(T)},
                         {"filling", rs.filling ? slope_json(*rs.filling) : json()},
                         {"form", real ? "rectangular" : "logarithmic"},
                         {"precision", p}};
            if (real) {
                CertifiedRealStructure s = certify_real_structure(sys, seed, *rs.witness, p);
                box = s.shapes;
                cert["witness"] = slope_json(s.witness);
                cert["trace_squared"] = interval_to_json(s.trace_squared);
            } else {
                box = certify_hyperbolic_structure(sys, krawczyk_certify(sys, seed, p).box).shapes;
            }
            auto image = krawczyk_image(sys, box);
            if (!image) throw std::logic_error("certified box does not replay");
            cert["box"] = shapes_to_json(box);
            cert["image"] = shapes_to_json(*image);
            o.code = exit_proved;
            o.report["verdict"] = "Certified";
            o.report["precision"] = p;
            o.report["shapes"] = mid_shapes(box);
            o.certificate = std::move(cert);
            return o;
        } catch (const std::runtime_error& e) {
            last = e.what();
        }
    }
    o.report["verdict"] = "Unknown";
    o.report["reason"] = last;
    return o;
}

Outcome word_job(const json& holonomy, const std::string& text, std::optional<GeneratorPair> pair,
                 const Ladder& ladder) {
    check_ladder(ladder);
    LoadedHolonomy h = load_holonomy(holonomy, ladder.back());
    const Presentation pres = h.base.presentation();
    Word w = parse_word(text, pres.generators);
    HolonomyAt at = h.at();
    mpfr_prec_t top = ladder.back();
    if (pair) check_pair(*pair, pres.rank());
    auto pr = pair ? pair : find_jorgensen_pair(at(top));

    Outcome o;
    o.report = {{"task", "word"}, {"word", word_to_string(w, pres.generators)}};
    auto unknown = [&](const std::string& why) {
        o.report["verdict"] = to_string(WordVerdict::unknown);
        o.report["reason"] = why;
        return o;
    };
    if (!pr) return unknown("no generator pair passes the Jorgensen precondition");
    ValidationReport val = validate_holonomy(at(top), pres, pr->first, pr->second);
    if (!val.relators_consistent) return unknown("holonomy does not satisfy the relators");
    if (!val.jorgensen_ok) return unknown("Jorgensen precondition failed");

    LadderVerdict v = decide_word_ladder(at, w, ladder, pr->first, pr->second);
    o.report["verdict"] = to_string(v.verdict);
    o.report["precision"] = v.precision;
    if (v.verdict == WordVerdict::unknown) return unknown("undecided at every precision of the ladder");
    o.code = v.verdict == WordVerdict::proven_trivial ? exit_proved : exit_refuted;
    o.certificate = json{{"kind", "word"},
                         {"holonomy", h.canonical},
                         {"word", word_to_string(w, pres.generators)},
                         {"jorgensen_pair", pair_json(*pr)},
                         {"ladder", ladder},
                         {"verdict", to_string(v.verdict)},
                         {"precision", v.precision},
                         {"evaluation", matrix_to_json(evaluate_word(at(v.precision), w))}};
    return o;
}

Outcome tree_job(const json& tree, const json& holonomy, std::optional<GeneratorPair> pair, const Ladder& ladder) {
    check_ladder(ladder);
    NonorderingTree t = tree_from_json(tree);
    return check_tree("verify-tree", t, load_holonomy(holonomy, ladder.back()), pair, ladder);
}

Outcome find_tree_job(const json& holonomy, const FindParams& params, std::optional<GeneratorPair> pair,
                      const Ladder& ladder, json* tree_out) {
    check_ladder(ladder);
    LoadedHolonomy h = load_holonomy(holonomy, ladder.back());
    Presentation pres = h.base.presentation();
    if (pres.relators.empty()) throw InputError("the holonomy file carries no relators");
    FindStats stats;
    NonorderingTree t;
    try {
        t = find_tree(pres, float_matrices(h.base), params, &stats);
    } catch (const std::runtime_error& e) {
        if (!dynamic_cast<const BallTooSmall*>(&e) && !dynamic_cast<const SearchTimeout*>(&e)) throw;
        Outcome o;
        o.code = exit_refuted;
        o.report = {{"task", "find-tree"}, {"verdict", "NotFound"}, {"reason", e.what()}};
        return o;
    }
    if (tree_out) *tree_out = tree_to_json(t);
    Outcome o = check_tree("find-tree", t, h, pair, ladder);
    o.report["ball_size"] = stats.ball_size;
    o.report["search_nodes"] = stats.nodes;
    return o;
}

Outcome foliar_job(const json& tri) {
    Triangulation T = triangulation_from_json(tri);
    OrientationSearch s = first_acyclic(T, [&](const EdgeOrientation& mu) { return is_foliar(T, mu).foliar(); });
    Outcome o;
    o.report = {{"task", "foliar-search"}, {"acyclic_checked", s.checked}, {"found", s.found.has_value()}};
    if (!s.found) {
        o.code = exit_refuted;
        o.report["verdict"] = "NotFound";
        return o;
    }
    FoliarVerdict v = is_foliar(T, *s.found);
    EdgeClassification c = classify_edges(T, *s.found);
    o.code = exit_proved;
    o.report["verdict"] = "Foliar";
    o.report["orientation"] = orientation_to_json(*s.found);
    o.certificate = json{{"kind", "foliar"},
                         {"triangulation", triangulation_to_json(T)},
                         {"orientation", orientation_to_json(*s.found)},
                         {"face_classes", v.face_classes},
                         {"mixed", c.mixed}};
    return o;
}

Outcome euler_job(const json& tri, const std::optional<json>& orientation) {
    Triangulation T = triangulation_from_json(tri);
    Outcome o;
    o.report = {{"task", "euler-class"}};
    EdgeOrientation mu;
    if (orientation) {
        mu = orientation_from_json(*orientation, T.edge_count());
    } else {
        OrientationSearch s = first_acyclic(T, [&](const EdgeOrientation& m) { return is_foliar(T, m).foliar(); });
        if (!s.found) {
            o.code = exit_refuted;
            o.report["verdict"] = "NoFoliarOrientation";
            return o;
        }
        mu = *s.found;
    }
    o.report["orientation"] = orientation_to_json(mu);
    EulerClassResult r;
    try {
        r = euler_class(T, mu);
    } catch (const NotFoliarError& e) {
        o.code = exit_refuted;
        o.report["verdict"] = "NotFoliar";
        o.report["reason"] = e.what();
        return o;
    }
    o.code = r.is_zero ? exit_proved : exit_refuted;
    o.report["verdict"] = r.is_zero ? "Zero" : "Nonzero";
    o.report["cochain"] = rationals_json(r.cochain);
    o.certificate = json{{"kind", "euler"},
                         {"triangulation", triangulation_to_json(T)},
                         {"orientation", orientation_to_json(mu)},
                         {"cochain", rationals_json(r.cochain)},
                         {"is_zero", r.is_zero},
                         {"witness", r.witness ? integers_json(*r.witness) : json()}};
    return o;
}

Outcome persistent_job(const json& tri, const std::optional<json>& orientation) {
    Triangulation T = triangulation_from_json(tri);
    if (T.kind() != TriangulationKind::ideal) throw InputError("persistence needs an ideal triangulation");
    if (!T.peripheral()) throw MissingPeripheralData();
    Outcome o;
    o.report = {{"task", "persistent"}};
    AnnuliResult annuli;
    std::optional<EdgeOrientation> found;
    if (orientation) {
        EdgeOrientation mu = orientation_from_json(*orientation, T.edge_count());
        if (persistently_foliar(T, mu, &annuli)) found = mu;
        o.report["acyclic_checked"] = is_acyclic(T, mu) ? 1 : 0;
    } else {
        OrientationSearch s =
            first_acyclic(T, [&](const EdgeOrientation& mu) { return persistently_foliar(T, mu, &annuli); });
        found = s.found;
        o.report["acyclic_checked"] = s.checked;
    }
    std::optional<Slope> longitude;
    try {
        longitude = homological_longitude(T);
        o.report["homological_longitude"] = slope_json(*longitude);
    } catch (const NotRationalHomologySolidTorus&) {
        o.report["homological_longitude"] = nullptr;
    }
    if (!found) {
        o.code = exit_refuted;
        o.report["verdict"] = "NotFound";
        return o;
    }
    o.code = exit_proved;
    o.report["verdict"] = "PersistentlyFoliar";
    o.report["orientation"] = orientation_to_json(*found);
    o.report["degeneracy"] = slope_json(*annuli.degeneracy);
    if (longitude) o.report["degeneracy_is_longitude"] = *longitude == *annuli.degeneracy;
    o.certificate = json{{"kind", "persistent"},
                         {"triangulation", triangulation_to_json(T)},
                         {"orientation", orientation_to_json(*found)},
                         {"annulus_classes", annulus_classes(annuli)},
                         {"degeneracy", slope_json(*annuli.degeneracy)}};
    return o;
}

Outcome lift_holonomy_job(const json& holonomy, const Ladder& ladder) {
    check_ladder(ladder);
    LoadedHolonomy h = load_real_holonomy(holonomy, ladder.back());
    Presentation pres = h.base.presentation();
    if (pres.relators.empty()) throw InputError("the holonomy file carries no relators");
    HolonomyAt at = h.at();
    LiftResult r;
    mpfr_prec_t used = 0;
    for (mpfr_prec_t p : ladder) {
        used = p;
        r = lift_representation(at(p), pres);
        if (r.verdict != LiftVerdict::unknown) break;
    }
    Outcome o;
    o.report = lift_result_to_json(r);
    o.report["task"] = "lift-rep";
    o.report["precision"] = used;
    if (r.verdict == LiftVerdict::unknown) return o;
    o.code = r.verdict == LiftVerdict::exists ? exit_proved : exit_refuted;
    json angles = json::array();
    for (const Interval& t : r.cocycle->t) angles.push_back(interval_to_json(t));
    json cert = {{"kind", "lift"},
                 {"holonomy", h.canonical},
                 {"ladder", ladder},
                 {"precision", used},
                 {"evaluation_order", "left-to-right"},
                 {"generator_lifts", generator_lifts(at(used))},
                 {"relator_angles", angles},
                 {"cocycle", r.cocycle->m},
                 {"verdict", to_string(r.verdict)},
                 {"coboundary", r.verdict == LiftVerdict::exists ? integers_json(r.alpha) : json()}};
    o.certificate = std::move(cert);
    return o;
}

Outcome orderability_job(const ShapesInput& in, const Ladder& ladder) {
    check_ladder(ladder);
    Triangulation T = triangulation_from_json(in.triangulation);
    ResolvedShapes rs = resolve_shapes(in);
    if (!rs.filling || !rs.witness) throw InputError("orderability needs a filling and a witness slope");
    GluingSystem sys = build_gluing_system(T, *rs.filling, GluingForm::rectangular);
    Outcome o;
    o.report = {{"task", "lift-rep"}, {"filling", slope_json(*rs.filling)}};
    std::string last;
    for (mpfr_prec_t p : ladder) {
        ShapeBox seed = shapes_from_json(rs.seed, p);
        CertifiedRealStructure s;
        try {
            s = certify_real_structure(sys, seed, *rs.witness, p);
        } catch (const std::runtime_error& e) {
            last = e.what();
            continue;
        }
        try {
            json cert = certify_orderable(T, *rs.filling, s);
            o.code = exit_proved;
            o.report["verdict"] = to_string(LiftVerdict::exists);
            o.report["precision"] = p;
            o.report["cocycle"] = cert["cocycle"];
            o.report["coboundary"] = cert["coboundary"];
            o.certificate = std::move(cert);
            return o;
        } catch (const OrderabilityFailure& e) {
            if (e.stage == "coboundary") {
                o.code = exit_refuted;
                o.report["verdict"] = to_string(LiftVerdict::obstructed);
                o.report["precision"] = p;
                o.report["reason"] = e.what();
                return o;
            }
            last = e.what();
        }
    }
    o.report["verdict"] = to_string(LiftVerdict::unknown);
    o.report["reason"] = last;
    return o;
}

}  // namespace cert::cli
