#pragma once

// Helpers shared by the job runners and the certificate replayers.

#include "cert/cli.hpp"
#include "cert/interval_json.hpp"

#include <map>
#include <memory>

namespace cert::cli::detail {

json slope_json(const Slope& s);
Slope slope_from_json(const json& j);
json pair_json(const GeneratorPair& p);
GeneratorPair pair_from_json(const json& j, int rank);
void check_pair(const GeneratorPair& p, int rank);
Ladder ladder_from_json(const json& j);
void check_ladder(const Ladder& l);

json integers_json(const IntVector& v);
IntVector integers_from_json(const json& j);
json rationals_json(const std::vector<mpq_class>& v);

// Holonomy rounded to a pinned precision (the top of the ladder it is used
// with), with the canonical serialization that certificates embed and a
// per-precision cache. Pinning makes the embedded precision part of the
// checked data.
struct LoadedHolonomy {
    ApproxHolonomy base;
    json canonical;
    HolonomyAt at() const;
};
LoadedHolonomy load_holonomy(const json& j, mpfr_prec_t pin);
// the same with every entry replaced by its real part; rejects boxes that
// miss the real axis
LoadedHolonomy load_real_holonomy(const json& j, mpfr_prec_t pin);
// per generator, the lifted matrix box and rotation angle
json generator_lifts(const ApproxHolonomy& rho);

// first orientation satisfying pred, and how many acyclic ones were looked at
struct OrientationSearch {
    std::optional<EdgeOrientation> found;
    size_t checked = 0;
};
OrientationSearch first_acyclic(const Triangulation& T, const std::function<bool(const EdgeOrientation&)>& pred);

bool persistently_foliar(const Triangulation& T, const EdgeOrientation& mu, AnnuliResult* annuli = nullptr);
json annulus_classes(const AnnuliResult& a);

// filling and witness default to the seed file's own entries
struct ResolvedShapes {
    json seed;
    std::optional<Slope> filling, witness;
};
ResolvedShapes resolve_shapes(const ShapesInput& in);

}  // namespace cert::cli::detail
