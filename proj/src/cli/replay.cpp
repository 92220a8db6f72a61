#include "common.hpp"

namespace cert::cli {

using namespace detail;

namespace {

struct Mismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Mismatch(what);
}

Triangulation canonical_triangulation(const json& j) {
    Triangulation T = triangulation_from_json(j);
    require(triangulation_to_json(T) == j, "triangulation is not in canonical form");
    return T;
}

EdgeOrientation canonical_orientation(const json& j, const Triangulation& T) {
    EdgeOrientation mu = orientation_from_json(j, T.edge_count());
    require(orientation_to_json(mu) == j, "orientation is not in canonical form");
    return mu;
}

LoadedHolonomy canonical_holonomy(const json& j, const Ladder& ladder) {
    LoadedHolonomy h = load_holonomy(j, ladder.back());
    require(h.canonical == j, "holonomy is not in canonical form");
    return h;
}

mpfr_prec_t precision_of(const json& j) {
    long p = j.get<long>();
    if (p < 2) throw std::invalid_argument("bad precision");
    return p;
}

void replay_shapes(const json& c, std::string& stage) {
    stage = "structure";
    Triangulation T = canonical_triangulation(c.at("triangulation"));
    std::optional<Slope> filling;
    if (!c.at("filling").is_null()) filling = slope_from_json(c["filling"]);
    const std::string form_name = c.at("form").get<std::string>();
    if (form_name != "rectangular" && form_name != "logarithmic") throw std::invalid_argument("unknown form");
    GluingForm form = form_name == "rectangular" ? GluingForm::rectangular : GluingForm::logarithmic;
    GluingSystem sys = build_gluing_system(T, filling, form);
    mpfr_prec_t prec = precision_of(c.at("precision"));

    stage = "box";
    ShapeBox box = shapes_from_json(c.at("box"), prec);
    require(static_cast<int>(box.size()) == sys.n, "one shape per tetrahedron is needed");
    require(shapes_to_json(box) == c["box"], "box is not in canonical form");

    stage = "contraction";
    auto image = krawczyk_image(sys, box);
    require(image.has_value(), "Krawczyk image does not lie inside the box");
    require(shapes_to_json(*image) == c.at("image"), "stored Krawczyk image differs from the recomputed one");

    if (c.contains("witness")) {
        stage = "witness";
        require(form == GluingForm::rectangular && filling.has_value(), "a real structure needs a filled rectangular system");
        for (int i = 0; i < sys.n; ++i) {
            require(box[i].is_real(), "shape " + std::to_string(i) + " is not real");
            if (box[i].re.contains(0) || box[i].re.contains(1)) throw DegenerateShape(i);
        }
        Slope witness = slope_from_json(c["witness"]);
        Box h = peripheral_holonomy(sys, witness, box);
        Interval tr2 = (h + Box::from_int(2, prec) + Box::from_int(1, prec) / h).re;
        require(interval_to_json(tr2) == c.at("trace_squared"), "stored trace does not match the box");
        check_hyperbolicity_witness(tr2);
    } else {
        stage = "geometry";
        require(!c.contains("trace_squared"), "trace given without a witness");
        certify_hyperbolic_structure(sys, box);
    }
}

void check_validation(const ApproxHolonomy& top, const GeneratorPair& pair) {
    ValidationReport v = validate_holonomy(top, top.presentation(), pair.first, pair.second);
    require(v.relators_consistent, "holonomy does not satisfy the relators");
    require(v.jorgensen_ok, "Jorgensen precondition fails for the recorded pair");
}

void replay_word(const json& c, std::string& stage) {
    stage = "holonomy";
    Ladder ladder = ladder_from_json(c.at("ladder"));
    LoadedHolonomy h = canonical_holonomy(c.at("holonomy"), ladder);
    const Presentation pres = h.base.presentation();
    stage = "word";
    const std::string& text = c.at("word").get_ref<const std::string&>();
    Word w = parse_word(text, pres.generators);
    require(word_to_string(w, pres.generators) == text, "word is not in canonical form");
    GeneratorPair pair = pair_from_json(c.at("jorgensen_pair"), pres.rank());
    HolonomyAt at = h.at();

    stage = "validation";
    check_validation(at(ladder.back()), pair);

    stage = "decision";
    LadderVerdict v = decide_word_ladder(at, w, ladder, pair.first, pair.second);
    require(v.verdict != WordVerdict::unknown, "word is undecided");
    require(to_string(v.verdict) == c.at("verdict"), "stored verdict differs from the replayed one");
    require(c.at("precision") == v.precision, "stored precision differs from the replayed one");

    stage = "evaluation";
    require(matrix_to_json(evaluate_word(at(v.precision), w)) == c.at("evaluation"),
            "stored evaluation differs from the replayed one");
}

void replay_tree(const json& c, std::string& stage) {
    stage = "holonomy";
    Ladder ladder = ladder_from_json(c.at("ladder"));
    LoadedHolonomy h = canonical_holonomy(c.at("holonomy"), ladder);

    stage = "tree";
    NonorderingTree t = tree_from_json(c.at("tree"));
    require(tree_to_json(t) == c["tree"], "tree is not in canonical form");
    if (auto err = tree_structure_error(t)) throw Mismatch(*err);
    const std::vector<std::string>& gens = t.presentation.generators;
    require(gens == h.base.generators, "holonomy generators do not match the tree's presentation");
    GeneratorPair pair = pair_from_json(c.at("jorgensen_pair"), t.presentation.rank());
    HolonomyAt at = h.at();

    stage = "validation";
    ApproxHolonomy top = at(ladder.back());
    ValidationReport v = validate_holonomy(top, t.presentation, pair.first, pair.second);
    require(v.passed(), "holonomy fails validation against the tree's presentation");

    stage = "decisions";
    std::vector<std::pair<Word, WordVerdict>> expected;
    for (size_t i = 0; i < t.edges.size(); ++i) {
        require(!free_reduce(t.edges[i].label).empty(), "edge label " + std::to_string(i) + " is trivial");
        expected.emplace_back(t.edges[i].label, WordVerdict::proven_nontrivial);
    }
    for (size_t i = 0; i < t.leaves.size(); ++i) {
        Word w = expand_leaf(t, t.leaves[i]);
        require(!w.empty(), "leaf label " + std::to_string(i) + " is freely trivial");
        expected.emplace_back(w, WordVerdict::proven_trivial);
    }
    const json& recorded = c.at("decisions");
    require(recorded.is_array() && recorded.size() == expected.size(), "wrong number of recorded decisions");
    for (size_t i = 0; i < expected.size(); ++i) {
        const json& d = recorded[i];
        std::string name = "decision " + std::to_string(i);
        require(d.at("word") == word_to_string(expected[i].first, gens), name + " names the wrong word");
        LadderVerdict lv = decide_word_ladder(at, expected[i].first, ladder, pair.first, pair.second);
        require(lv.verdict == expected[i].second, name + " does not replay as " + to_string(expected[i].second));
        require(d.at("verdict") == to_string(lv.verdict), name + " records the wrong verdict");
        require(d.at("precision") == lv.precision, name + " records the wrong precision");
    }
    stage = "verdict";
    require(c.at("verdict") == to_string(TreeVerdict::verified), "certificate does not claim Verified");
}

void replay_foliar(const json& c, std::string& stage) {
    stage = "structure";
    Triangulation T = canonical_triangulation(c.at("triangulation"));
    stage = "orientation";
    EdgeOrientation mu = canonical_orientation(c.at("orientation"), T);
    stage = "foliar";
    FoliarVerdict v = is_foliar(T, mu);
    require(v.foliar(), std::string("orientation is not foliar: ") + to_string(v.failure));
    require(c.at("face_classes") == v.face_classes, "stored face class count differs");
    require(c.at("mixed") == json(classify_edges(T, mu).mixed), "stored mixed counts differ");
}

void replay_euler(const json& c, std::string& stage) {
    stage = "structure";
    Triangulation T = canonical_triangulation(c.at("triangulation"));
    stage = "orientation";
    EdgeOrientation mu = canonical_orientation(c.at("orientation"), T);
    stage = "cochain";
    EulerClassResult r = euler_class(T, mu);
    require(rationals_json(r.cochain) == c.at("cochain"), "stored cochain differs from the recomputed one");
    require(c.at("is_zero") == r.is_zero, "stored verdict differs from the recomputed one");
    stage = "coboundary";
    if (!r.is_zero) {
        require(c.at("witness").is_null(), "a nonzero class cannot carry a witness");
        return;
    }
    IntVector alpha = integers_from_json(c.at("witness"));
    require(static_cast<int>(alpha.size()) == T.face_count(), "witness needs one value per face");
    for (int e = 0; e < T.edge_count(); ++e) {
        mpz_class s = 0;
        for (int f = 0; f < T.face_count(); ++f) s += r.coboundary(e, f) * alpha[f];
        require(mpq_class(s) == r.cochain[e], "coboundary of the witness differs from the cochain at edge " + std::to_string(e));
    }
    require(integers_json(*r.witness) == c["witness"], "witness is not the canonical solution");
}

void replay_persistent(const json& c, std::string& stage) {
    stage = "structure";
    Triangulation T = canonical_triangulation(c.at("triangulation"));
    require(T.kind() == TriangulationKind::ideal && T.peripheral().has_value(), "needs an ideal triangulation with peripheral data");
    stage = "orientation";
    EdgeOrientation mu = canonical_orientation(c.at("orientation"), T);
    require(is_acyclic(T, mu), "orientation is not acyclic");
    require(!classify_edges(T, mu).has_sink(), "orientation has a sink edge");
    stage = "annuli";
    AnnuliResult a = cusp_annuli(T, mu);
    require(annulus_classes(a) == c.at("annulus_classes"), "stored annulus classes differ");
    require(a.persistent, "some annulus is inessential or the annuli are not parallel");
    require(slope_json(*a.degeneracy) == c.at("degeneracy"), "stored degeneracy slope differs");
}

void replay_lift(const json& c, std::string& stage) {
    stage = "holonomy";
    Ladder ladder = ladder_from_json(c.at("ladder"));
    LoadedHolonomy h = load_real_holonomy(c.at("holonomy"), ladder.back());
    require(h.canonical == c["holonomy"], "holonomy is not a canonical real representation");
    Presentation pres = h.base.presentation();
    require(!pres.relators.empty(), "holonomy carries no relators");
    require(c.at("evaluation_order") == "left-to-right", "unknown evaluation order");
    mpfr_prec_t prec = precision_of(c.at("precision"));
    require(std::find(ladder.begin(), ladder.end(), prec) != ladder.end(), "precision is not a rung of the ladder");

    stage = "obstruction";
    ApproxHolonomy rho = at_precision(h.base, prec);
    LiftResult r = lift_representation(rho, pres);
    require(r.verdict != LiftVerdict::unknown, "obstruction is undecided: " + r.reason);
    require(generator_lifts(rho) == c.at("generator_lifts"), "stored generator lifts differ");
    json angles = json::array();
    for (const Interval& t : r.cocycle->t) angles.push_back(interval_to_json(t));
    require(angles == c.at("relator_angles"), "stored relator angles differ");
    require(c.at("cocycle") == json(r.cocycle->m), "stored cocycle differs");
    require(c.at("verdict") == to_string(r.verdict), "stored verdict differs");

    stage = "coboundary";
    if (r.verdict == LiftVerdict::obstructed) {
        require(c.at("coboundary").is_null(), "an obstructed lift cannot carry a coboundary");
        return;
    }
    IntVector alpha = integers_from_json(c.at("coboundary"));
    require(coboundary_holds(pres, r.cocycle->m, alpha), "coboundary check failed in exact arithmetic");
    require(integers_json(r.alpha) == c["coboundary"], "coboundary is not the canonical solution");
}

}  // namespace

CertificateCheck verify_certificate(const json& c) {
    CertificateCheck out;
    out.stage = "input";
    try {
        if (!c.is_object()) throw std::invalid_argument("certificate must be a JSON object");
        const std::string kind = c.at("kind").get<std::string>();
        if (kind == "orderability") return verify_orderable(c);
        if (kind == "shapes")
            replay_shapes(c, out.stage);
        else if (kind == "word")
            replay_word(c, out.stage);
        else if (kind == "tree")
            replay_tree(c, out.stage);
        else if (kind == "foliar")
            replay_foliar(c, out.stage);
        else if (kind == "euler")
            replay_euler(c, out.stage);
        else if (kind == "persistent")
            replay_persistent(c, out.stage);
        else if (kind == "lift")
            replay_lift(c, out.stage);
        else
            throw std::invalid_argument("unknown certificate kind '" + kind + "'");
        out.ok = true;
        out.stage.clear();
    } catch (const std::exception& e) {
        out.detail = e.what();
    }
    return out;
}

const std::vector<std::string>& witness_fields(const std::string& kind) {
    static const std::map<std::string, std::vector<std::string>> fields{
        {"shapes", {"box", "image", "trace_squared"}},
        {"word", {"holonomy", "word", "evaluation"}},
        {"tree", {"tree", "holonomy", "decisions"}},
        {"foliar", {"orientation", "mixed"}},
        {"euler", {"orientation", "cochain", "witness"}},
        {"persistent", {"orientation", "annulus_classes", "degeneracy"}},
        {"lift", {"holonomy", "generator_lifts", "relator_angles", "cocycle", "coboundary"}},
        {"orderability", {"shapes", "image", "trace_squared", "lift_signs", "cocycle", "coboundary"}},
    };
    auto it = fields.find(kind);
    if (it == fields.end()) throw std::invalid_argument("unknown certificate kind '" + kind + "'");
    return it->second;
}

}  // namespace cert::cli
