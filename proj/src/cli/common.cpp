#include "common.hpp"

#include "cert/gtil.hpp"

#include <fstream>

namespace cert::cli {

Ladder parse_ladder(const std::string& text) {
    Ladder out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
            throw InputError("ladder entry '" + item + "' is not an integer");
        }
        if (used != item.size()) throw InputError("ladder entry '" + item + "' is not an integer");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    detail::check_ladder(out);
    return out;
}

Slope parse_slope(const std::string& text) {
    size_t comma = text.find(',');
    if (comma == std::string::npos) throw InputError("slope must be written p,q");
    try {
        size_t a = 0, b = 0;
        long p = std::stol(text.substr(0, comma), &a);
        long q = std::stol(text.substr(comma + 1), &b);
        if (a != comma || b != text.size() - comma - 1) throw InputError("");
        return {p, q};
    } catch (const std::exception&) {
        throw InputError("slope must be written p,q, got '" + text + "'");
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace cert::cli

namespace cert::cli::detail {

json slope_json(const Slope& s) { return json::array({s.p, s.q}); }

Slope slope_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw std::invalid_argument("slope must be [p, q]");
    return {j[0].get<long>(), j[1].get<long>()};
}

json pair_json(const GeneratorPair& p) { return json::array({p.first, p.second}); }

void check_pair(const GeneratorPair& p, int rank) {
    if (p.first < 0 || p.second < 0 || p.first >= rank || p.second >= rank || p.first == p.second)
        throw InputError("generator pair must name two distinct generators");
}

GeneratorPair pair_from_json(const json& j, int rank) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("generator pair must be [i, j]");
    GeneratorPair p{j[0].get<int>(), j[1].get<int>()};
    check_pair(p, rank);
    return p;
}

void check_ladder(const Ladder& l) {
    if (l.empty()) throw InputError("precision ladder is empty");
    for (size_t i = 0; i < l.size(); ++i) {
        if (l[i] < 2) throw InputError("precisions must be at least 2 bits");
        if (i > 0 && l[i] <= l[i - 1]) throw InputError("precision ladder must be strictly increasing");
    }
}

Ladder ladder_from_json(const json& j) {
    Ladder l = j.get<Ladder>();
    check_ladder(l);
    return l;
}

json integers_json(const IntVector& v) {
    json a = json::array();
    for (const mpz_class& x : v) a.push_back(x.get_str());
    return a;
}

IntVector integers_from_json(const json& j) {
    IntVector v;
    for (const json& x : j) {
        const std::string& s = x.get_ref<const std::string&>();
        mpz_class z;
        if (s.empty() || z.set_str(s, 10) != 0) throw std::invalid_argument("bad integer '" + s + "'");
        v.push_back(z);
    }
    return v;
}

json rationals_json(const std::vector<mpq_class>& v) {
    json a = json::array();
    for (const mpq_class& x : v) a.push_back(x.get_str());
    return a;
}

HolonomyAt LoadedHolonomy::at() const {
    auto cache = std::make_shared<std::map<mpfr_prec_t, ApproxHolonomy>>();
    ApproxHolonomy b = base;
    return [cache, b](mpfr_prec_t p) {
        auto it = cache->find(p);
        if (it == cache->end()) it = cache->emplace(p, at_precision(b, p)).first;
        return it->second;
    };
}

LoadedHolonomy load_holonomy(const json& j, mpfr_prec_t pin) {
    LoadedHolonomy h;
    h.base = at_precision(holonomy_from_json(j), pin);
    h.canonical = holonomy_to_json(h.base);
    return h;
}

LoadedHolonomy load_real_holonomy(const json& j, mpfr_prec_t pin) {
    LoadedHolonomy h;
    h.base = at_precision(holonomy_from_json(j), pin);
    for (Matrix2& m : h.base.images) m = real_part(m);
    h.canonical = holonomy_to_json(h.base);
    return h;
}

json generator_lifts(const ApproxHolonomy& rho) {
    json out = json::array();
    for (const Matrix2& m : rho.images) {
        GtilElement e = lift_element(m);
        out.push_back({{"matrix", matrix_to_json(e.g)}, {"angle", interval_to_json(e.t)}});
    }
    return out;
}

OrientationSearch first_acyclic(const Triangulation& T, const std::function<bool(const EdgeOrientation&)>& pred) {
    OrientationSearch s;
    enumerate_acyclic(T, [&](const EdgeOrientation& mu) {
        ++s.checked;
        if (!pred(mu)) return true;
        s.found = mu;
        return false;
    });
    return s;
}

bool persistently_foliar(const Triangulation& T, const EdgeOrientation& mu, AnnuliResult* annuli) {
    if (!is_acyclic(T, mu) || classify_edges(T, mu).has_sink()) return false;
    AnnuliResult a = cusp_annuli(T, mu);
    bool ok = a.persistent;
    if (annuli) *annuli = std::move(a);
    return ok;
}

json annulus_classes(const AnnuliResult& a) {
    json out = json::array();
    for (const VerticalAnnulus& v : a.annuli) out.push_back(json::array({v.homology[0], v.homology[1]}));
    return out;
}

ResolvedShapes resolve_shapes(const ShapesInput& in) {
    ResolvedShapes r{json(), in.filling, in.witness};
    if (in.seed) {
        r.seed = *in.seed;
        if (r.seed.is_object()) {
            if (!r.filling && r.seed.contains("filling")) r.filling = slope_from_json(r.seed["filling"]);
            if (!r.witness && r.seed.contains("witness")) r.witness = slope_from_json(r.seed["witness"]);
        }
    } else if (in.triangulation.is_object() && in.triangulation.contains("shapes")) {
        r.seed = in.triangulation["shapes"];
    } else {
        throw InputError("no seed shapes: pass --shapes or use a triangulation file that carries them");
    }
    return r;
}

}  // namespace cert::cli::detail
